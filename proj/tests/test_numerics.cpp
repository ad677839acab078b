#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "mlev/errors.hpp"
#include "mlev/numerics.hpp"

using namespace mlev;

namespace {
const double kPi = 3.14159265358979323846;
}

TEST_CASE("neumaier sum recovers catastrophic cancellation") {
    NeumaierSum s;
    s.add(1.0);
    s.add(1e100);
    s.add(1.0);
    s.add(-1e100);
    CHECK(s.value() == 2.0);
}

TEST_CASE("neumaier sum is order independent on a hard sequence") {
    std::vector<double> xs;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> mag(-30.0, 30.0);
    for (int i = 0; i < 2000; ++i)
        xs.push_back(std::copysign(std::pow(10.0, mag(rng)), mag(rng)));
    NeumaierSum fwd;
    for (double x : xs)
        fwd.add(x);
    NeumaierSum rev;
    for (auto it = xs.rbegin(); it != xs.rend(); ++it)
        rev.add(*it);
    CHECK(fwd.value() == doctest::Approx(rev.value()).epsilon(1e-15));
}

TEST_CASE("gk15 integrates smooth references") {
    auto r1 = integrate_gk15([](double x) { return std::exp(-x * x); }, 0.0, 9.0);
    CHECK(r1.value == doctest::Approx(std::sqrt(kPi) / 2.0).epsilon(1e-13));

    // int_0^9 u^4 e^{-u^2} du is 3 sqrt(pi)/8 to well past double precision.
    auto r2 = integrate_gk15(
        [](double u) { return u * u * u * u * std::exp(-u * u); }, 0.0, 9.0);
    CHECK(r2.value == doctest::Approx(0.6646701940895685).epsilon(1e-13));

    auto r3 = integrate_gk15([](double x) { return std::sin(x); }, 0.0, kPi);
    CHECK(r3.value == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(r3.evals >= 15);
}

TEST_CASE("gk15 handles a sharply peaked integrand") {
    // Narrow Gaussian off the midpoint: the first panel cannot resolve it,
    // so the answer is only right if the refinement loop works.
    auto r = integrate_gk15(
        [](double x) {
            double d = (x - 0.3) / 0.01;
            return std::exp(-d * d);
        },
        0.0, 1.0, {1e-12, 0.0, 2'000'000});
    CHECK(r.value == doctest::Approx(0.01 * std::sqrt(kPi)).epsilon(1e-10));
    CHECK(r.evals > 15);
}

TEST_CASE("gk15 oscillatory cross-check against the sphere shape function") {
    // int_0^inf u^2 j1(2u)^2 e^{-u^2} du has the closed value sqrt(pi) K(2) / 16.
    auto r = integrate_gk15(
        [](double u) {
            double j = sph_bessel_j1(2.0 * u);
            return u * u * j * j * std::exp(-u * u);
        },
        0.0, 9.0, {1e-12, 0.0, 2'000'000});
    CHECK(r.value == doctest::Approx(0.05843264765455972).epsilon(1e-11));
}

TEST_CASE("gk15 throws on an exhausted budget") {
    QuadratureOptions opt;
    opt.rel_tol = 1e-16;
    opt.abs_tol = 0.0;
    opt.max_evals = 200;
    CHECK_THROWS_AS(integrate_gk15([](double x) { return std::exp(-x * x); },
                                   0.0, 9.0, opt),
                    NumericalError);
}

TEST_CASE("gk15 interval conventions") {
    auto one = [](double) { return 1.0; };
    CHECK(integrate_gk15(one, 1.0, 1.0).value == 0.0);
    // Reversed bounds negate, as for the Riemann integral.
    CHECK(integrate_gk15(one, 2.0, 1.0).value == doctest::Approx(-1.0));
    CHECK_THROWS_AS(integrate_gk15(one, 0.0,
                                   std::numeric_limits<double>::infinity()),
                    ValidationError);
}

TEST_CASE("spherical bessel j1 frozen values") {
    CHECK(sph_bessel_j1(1e-3) ==
          doctest::Approx(0.0003333333000000012).epsilon(1e-15));
    CHECK(sph_bessel_j1(0.3) ==
          doctest::Approx(0.09910288804064188).epsilon(1e-15));
    CHECK(sph_bessel_j1(0.6) ==
          doctest::Approx(0.19289195680341217).epsilon(1e-15));
    CHECK(sph_bessel_j1(1.0) ==
          doctest::Approx(0.3011686789397568).epsilon(1e-15));
    CHECK(sph_bessel_j1(2.0) ==
          doctest::Approx(0.4353977749799916).epsilon(1e-15));
    CHECK(sph_bessel_j1(10.0) ==
          doctest::Approx(0.07846694179875155).epsilon(1e-14));
    CHECK(sph_bessel_j1(100.0) ==
          doctest::Approx(-0.008673825286987815).epsilon(1e-13));
    CHECK(sph_bessel_j1(0.0) == 0.0);
    // Odd function.
    CHECK(sph_bessel_j1(-2.0) == -sph_bessel_j1(2.0));
}

TEST_CASE("spherical bessel j1 matches the library across the series switch") {
    for (double x : {1e-4, 0.01, 0.1, 0.3, 0.59, 0.6, 0.61, 0.8, 1.5, 3.0, 4.5})
        CHECK(sph_bessel_j1(x) ==
              doctest::Approx(std::sph_bessel(1, x)).epsilon(2e-15));
    // First zero.
    CHECK(std::abs(sph_bessel_j1(4.493409457909064)) < 1e-15);
}

TEST_CASE("normal quantile frozen values") {
    struct Case {
        double p, z;
    };
    const Case cases[] = {
        {1e-9, -5.9978070150076865},
        {0.001, -3.090232306167813},
        {0.025, -1.9599639845400545},
        {0.3, -0.5244005127080409},
        {0.5, 0.0},
        {0.7, 0.5244005127080407},
        {0.9, 1.2815515655446004},
        {0.95, 1.6448536269514722},
        {0.975, 1.959963984540054},
        {0.99, 2.3263478740408408},
        {0.999999, 4.753424308817087},
    };
    for (const auto& c : cases) {
        if (c.z == 0.0)
            CHECK(normal_quantile(c.p) == 0.0);
        else
            CHECK(normal_quantile(c.p) == doctest::Approx(c.z).epsilon(1e-14));
    }
    // Far tail keeps 15 digits too.
    CHECK(normal_quantile(1.0 - 1e-9) ==
          doctest::Approx(5.997807019601637).epsilon(1e-14));
    CHECK(normal_quantile(0.2) == doctest::Approx(-normal_quantile(0.8)).epsilon(1e-15));
    CHECK_THROWS_AS(normal_quantile(0.0), ValidationError);
    CHECK_THROWS_AS(normal_quantile(1.0), ValidationError);
}

TEST_CASE("student t quantile frozen values") {
    CHECK(student_t_quantile(0.95, 5) ==
          doctest::Approx(2.0150483733330233).epsilon(1e-8));
    CHECK(student_t_quantile(0.975, 2) ==
          doctest::Approx(4.302652729696142).epsilon(1e-8));
    CHECK(student_t_quantile(0.9, 7) ==
          doctest::Approx(1.4149239276488585).epsilon(1e-8));
    CHECK(student_t_quantile(0.995, 12) ==
          doctest::Approx(3.0545395893929017).epsilon(1e-8));
    CHECK(student_t_quantile(0.9, 197) ==
          doctest::Approx(1.2858636942627895).epsilon(1e-8));
    CHECK_THROWS_AS(student_t_quantile(0.9, 0), ValidationError);
}

TEST_CASE("golden section maximum in log abscissa") {
    // Peak of x exp(-ln(x)^2) at ln x = 1/2.
    auto f = [](double x) {
        double l = std::log(x);
        return x * std::exp(-l * l);
    };
    GoldenResult r = golden_max_log(f, 1e-3, 1e3);
    // The abscissa is limited by the flatness of f at the peak (~sqrt(eps));
    // the peak value itself is quadratically insensitive and much tighter.
    CHECK(std::abs(std::log(r.x) - 0.5) < 1e-7);
    CHECK(r.fx == doctest::Approx(f(std::exp(0.5))).epsilon(1e-12));
    CHECK_THROWS_AS(golden_max_log(f, -1.0, 1.0), ValidationError);
    CHECK_THROWS_AS(golden_max_log(f, 2.0, 1.0), ValidationError);
}
