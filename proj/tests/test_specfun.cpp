#include "coulomb/specfun.hpp"
#include "coulomb/errors.hpp"
#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace coulomb;
using Catch::Matchers::WithinRel;
using Catch::Matchers::WithinAbs;

TEST_CASE("gamma matches known values", "[specfun]") {
    CHECK_THAT(gamma_fn(5.0).real(), WithinRel(24.0, 1e-14));
    CHECK_THAT(gamma_fn(0.5).real(), WithinRel(std::sqrt(std::numbers::pi), 1e-14));
    CHECK_THAT(gamma_fn(-0.5).real(), WithinRel(-2.0 * std::sqrt(std::numbers::pi), 1e-14));
    CHECK_THAT(log_gamma(100.0).real(), WithinRel(359.13420536957539878, 1e-14));
    CHECK(rgamma(0.0) == 0.0);
    CHECK(rgamma(-3.0) == 0.0);
    CHECK_THAT(rgamma(-0.5), WithinRel(-1.0 / (2.0 * std::sqrt(std::numbers::pi)), 1e-14));
}

TEST_CASE("digamma agrees with the long-double reference", "[specfun]") {
    for (double x : {0.1, 0.5, 1.0, 1.5, 2.25, 7.0, 33.3, 250.0, -0.5, -1.3, -4.75, -10.01}) {
        INFO("x = " << x);
        const double want = static_cast<double>(testoracle::digamma(x));
        CHECK_THAT(digamma(x).real(), WithinRel(want, 1e-13) || WithinAbs(want, 1e-14));
    }
    CHECK_THAT(digamma(1.0).real(), WithinRel(-0.57721566490153286061, 1e-15));
}

TEST_CASE("digamma has poles at non-positive integers", "[specfun]") {
    CHECK_THROWS_AS(digamma(0.0), PoleError);
    CHECK_THROWS_AS(digamma(-3.0), PoleError);
}

TEST_CASE("kummer M against direct summation", "[specfun]") {
    CHECK_THAT(kummer_m(0.5, 1.5, -2.0).real(), WithinRel(0.5981440066613041014657, 1e-14));
    for (auto [a, b, z] : {std::tuple{-2.5, 2.0, 3.0}, {0.3, 2.0, 8.0}, {1.7, 3.0, -6.0}, {-0.61, 2.0, 0.25}}) {
        INFO(a << " " << b << " " << z);
        const double want = static_cast<double>(testoracle::kummer(a, b, z));
        CHECK_THAT(kummer_m(a, b, z).real(), WithinRel(want, 1e-12));
    }
}

TEST_CASE("whittaker W reference values", "[specfun]") {
    CHECK_THAT(whittaker_w(1.5, 0.5, 2.0).real(), WithinRel(0.62815348554626851357, 1e-11));
    CHECK_THAT(whittaker_w(7.5, 0.5, 0.01).real(), WithinRel(-698.03189546570682195, 1e-11));
    CHECK_THAT(whittaker_w(0.3, 0.5, 0.5).real(), WithinRel(0.79234596490881136452, 1e-11));
}

TEST_CASE("W at integer tau reduces to an elementary function", "[specfun]") {
    for (double z : {0.05, 0.5, 2.0, 9.0, 30.0}) {
        CHECK_THAT(whittaker_w(1.0, 0.5, z).real(), WithinRel(z * std::exp(-z / 2), 1e-12));
    }
    // W_{2,1/2}(z) = z (z - 2) e^{-z/2}
    for (double z : {0.3, 1.0, 5.0}) {
        CHECK_THAT(whittaker_w(2.0, 0.5, z).real(), WithinRel(z * (z - 2) * std::exp(-z / 2), 1e-12));
    }
}

TEST_CASE("whittaker M against the series definition", "[specfun]") {
    for (double tau : {0.6, 1.3, 2.7}) {
        for (double z : {0.1, 1.0, 4.0}) {
            const double want = static_cast<double>(testoracle::whittaker_m(tau, 0.5, z));
            CHECK_THAT(whittaker_m(tau, 0.5, z).real(), WithinRel(want, 1e-12));
        }
    }
}

TEST_CASE("W solves the Whittaker equation", "[specfun]") {
    for (double tau : {0.61, 1.5, 3.2}) {
        const double z0 = 0.8, z1 = 4.0;
        WhittakerPair a = whittaker_w_pair(tau, 0.5, z0);
        auto f = [tau](testoracle::ld z) { return 0.25L - tau / z; };
        auto [y, dy] = testoracle::rk4_linear(f, z0, a.value, a.derivative, z1, 4000);
        WhittakerPair b = whittaker_w_pair(tau, 0.5, z1);
        INFO("tau = " << tau);
        CHECK_THAT(b.value, WithinRel(static_cast<double>(y), 1e-9));
        CHECK_THAT(b.derivative, WithinRel(static_cast<double>(dy), 1e-9));
    }
}

TEST_CASE("W derivative matches a central difference", "[specfun]") {
    for (double tau : {0.4, 1.7, 5.5}) {
        for (double z : {0.02, 0.7, 6.0}) {
            const double h = 1e-5 * z;
            const double fd = (whittaker_w(tau, 0.5, z + h).real() - whittaker_w(tau, 0.5, z - h).real()) / (2 * h);
            CHECK_THAT(whittaker_w_pair(tau, 0.5, z).derivative, WithinRel(fd, 1e-7));
        }
    }
}

TEST_CASE("W decays like e^{-z/2} z^tau", "[specfun]") {
    const double tau = 1.3, z = 80.0;
    const double ratio = whittaker_w(tau, 0.5, z).real() / (std::exp(-z / 2) * std::pow(z, tau));
    CHECK_THAT(ratio, WithinAbs(1.0, 0.01));
}

TEST_CASE("airy values and zeros", "[specfun]") {
    CHECK_THAT(airy_ai(-3.0).real(), WithinRel(-0.37881429367765807435, 1e-12));
    CHECK_THAT(airy_ai(0.0).real(), WithinRel(0.35502805388781723926, 1e-13));
    const double a[] = {-2.3381074104597670385, -4.0879494441309706166, -5.5205598280955510591,
                        -6.7867080900717589988, -7.9441335871208531231, -9.0226508533409803802,
                        -10.040174341558085931, -11.008524303733262893};
    const double ap[] = {-1.018792971647471089, -3.2481975821798365379, -4.8200992111787356394,
                         -6.1633073556394865476, -7.3721772550477701771, -8.4884867340197221329,
                         -9.5354490524335474707, -10.527660396957407282};
    for (int n = 1; n <= 8; ++n) {
        CHECK_THAT(airy_zero(n, AiryKind::Ai), WithinRel(a[n - 1], 1e-12));
        CHECK_THAT(airy_zero(n, AiryKind::AiPrime), WithinRel(ap[n - 1], 1e-12));
        CHECK(std::abs(airy_ai(a[n - 1]).real()) < 1e-12);
    }
}

TEST_CASE("complex gamma reflects the real one", "[specfun]") {
    CHECK_THAT(gamma_c({4.5, 0.0}).real(), WithinRel(gamma_fn(4.5).real(), 1e-13));
    // |Gamma(i y)|^2 = pi / (y sinh(pi y))
    const double y = 0.7;
    CHECK_THAT(std::norm(gamma_c({0.0, y})), WithinRel(std::numbers::pi / (y * std::sinh(std::numbers::pi * y)), 1e-12));
}
