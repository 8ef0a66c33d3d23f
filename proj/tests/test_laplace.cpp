#include "coulomb/laplace.hpp"
#include "coulomb/errors.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace coulomb;
using Catch::Matchers::WithinRel;

TEST_CASE("Airy spectrum from the zeros", "[laplace]") {
    PhysParams p;
    auto lv = airy_spectrum_1d(p, 4);
    REQUIRE(lv.size() == 4);
    // ell = 2^{-1/3}; E = -a' ell, -a ell alternating
    const double ell = std::cbrt(0.5);
    CHECK_THAT(lv[0].energy, WithinRel(1.018792971647471089 * ell, 1e-12));
    CHECK_THAT(lv[1].energy, WithinRel(2.3381074104597670385 * ell, 1e-12));
    CHECK_THAT(lv[2].energy, WithinRel(3.2481975821798365379 * ell, 1e-12));
    CHECK(lv[0].parity == ParityKind::Even);
    CHECK(lv[1].parity == ParityKind::Odd);
    CHECK(lv[3].parity_index == 2);
}

TEST_CASE("Airy levels scale with the parameters", "[laplace]") {
    PhysParams p{0.5, 2.0, 3.0};
    const double ell = std::cbrt(p.hbar * p.hbar / (2 * p.mass * p.kappa));
    CHECK_THAT(airy_spectrum_1d(p, 1)[0].energy, WithinRel(1.018792971647471089 * p.kappa * ell, 1e-12));
}

TEST_CASE("even and odd levels interlace", "[laplace]") {
    auto lv = airy_spectrum_1d(PhysParams{}, 40);
    for (std::size_t k = 1; k < lv.size(); ++k) {
        CHECK(lv[k].energy > lv[k - 1].energy);
        CHECK(lv[k].parity != lv[k - 1].parity);
    }
}

TEST_CASE("asymptotic law", "[laplace]") {
    PhysParams p;
    CHECK_THAT(airy_asymptotic(p, 1), WithinRel(0.5 * std::pow(3 * std::numbers::pi / 4, 2.0 / 3.0), 1e-14));
    for (int n = 1; n < 50; ++n) CHECK(airy_asymptotic(p, n + 1) > airy_asymptotic(p, n));
}

TEST_CASE("counting conventions for the asymptotic law", "[laplace]") {
    PhysParams p;
    const std::vector<int> ns{10, 20, 40, 80};
    auto even = check_convention(p, CountingConvention::EvenClass, ns);
    CHECK(even.below_one_percent);
    for (std::size_t k = 1; k < ns.size(); ++k) CHECK(even.rel_err[k] < even.rel_err[k - 1]);
    auto overall = check_convention(p, CountingConvention::Overall, ns);
    CHECK_FALSE(overall.below_one_percent);
    auto odd = check_convention(p, CountingConvention::OddClass, ns);
    CHECK_FALSE(odd.below_one_percent);
}

TEST_CASE("self-adjointness table", "[laplace]") {
    CHECK(query(Potential::Coulomb, Domain::R1Punctured).deficiency_index == 2);
    CHECK(query(Potential::Coulomb, Domain::R2Punctured).deficiency_index == 1);
    CHECK(query(Potential::Coulomb, Domain::R3Punctured).deficiency_index == 1);
    CHECK(query(Potential::Coulomb, Domain::R3).deficiency_index == 0);
    auto v2 = query(Potential::Logarithmic, Domain::R2);
    CHECK(v2.essentially_self_adjoint == true);
    CHECK(v2.spectrum.find("empty essential") != std::string::npos);
    CHECK(query(parse_potential("V1"), parse_domain("R")).essentially_self_adjoint == true);
    CHECK_THROWS_AS(query(Potential::Linear, Domain::R3), DomainError);
    CHECK(selfadjointness_report().size() == 7);
}
