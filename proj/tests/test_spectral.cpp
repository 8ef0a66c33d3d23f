#include "coulomb/spectral.hpp"
#include "coulomb/errors.hpp"
#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace coulomb;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const cplx I1(0.0, 1.0);

Unitary2 example1() { return Unitary2(I1 * Mat2::Identity()); }
Unitary2 example2() { return Unitary2((Mat2() << -1.0, 0.0, 0.0, 1.0).finished()); }
Unitary2 example3() {
    const double r2 = 1.0 / std::sqrt(2.0);
    return Unitary2((Mat2() << I1 * r2, -I1 * r2, I1 * r2, I1 * r2).finished());
}

std::vector<double> taus(const std::vector<EigenRecord>& recs) {
    std::vector<double> out;
    for (const auto& r : recs) out.push_back(r.tau);
    return out;
}

}  // namespace

TEST_CASE("tau and energy are inverse maps", "[spectral]") {
    PhysParams p;
    CHECK_THAT(energy_of_tau(p, 1.0).energy, WithinRel(-0.5, 1e-15));
    CHECK_THAT(energy_of_tau(p, 2.0).energy, WithinRel(-0.125, 1e-15));
    CHECK_THAT(energy_of_tau(p, tau_of_energy(p, -0.3141).tau).energy, WithinRel(-0.3141, 1e-14));
    CHECK_THROWS_AS(tau_of_energy(p, 0.0), DomainError);
    CHECK_THROWS_AS(energy_of_tau(p, -1.0), DomainError);
    PhysParams q{0.7, 2.3, 1.9};
    const TauEnergy te = tau_of_energy(q, -0.42);
    CHECK_THAT(te.tau * te.tau, WithinRel(-q.mass * q.kappa * q.kappa / (2 * q.hbar * q.hbar * -0.42), 1e-12));
}

TEST_CASE("omega agrees with the reference digamma", "[spectral]") {
    for (PhysParams p : {PhysParams{}, PhysParams{0.8, 1.7, 0.6}}) {
        testoracle::Units u{p.hbar, p.mass, p.kappa};
        for (double tau : {0.2, 0.9, 1.29, 2.5, 4.01, 7.7}) {
            const double e = energy_of_tau(p, tau).energy;
            const double want = static_cast<double>(testoracle::omega_tau(u, tau));
            CHECK_THAT(omega(p, e).omega, WithinRel(want, 1e-11) || WithinAbs(want, 1e-11));
        }
    }
}

TEST_CASE("omega is finite at E = -0.3 and has poles at the Dirichlet energies", "[spectral]") {
    PhysParams p;
    OmegaValue w = omega(p, -0.3);
    CHECK(std::isfinite(w.omega));
    CHECK(w.nearest_pole_tau == 1);
    CHECK_THROWS_AS(omega(p, -0.5), PoleError);
    CHECK_THROWS_AS(omega(p, energy_of_tau(p, 3.0 + 1e-10).energy), PoleError);
}

TEST_CASE("omega changes sign on every interval between poles", "[spectral]") {
    PhysParams p;
    for (int n = 1; n <= 10; ++n) {
        bool below = false, above = false;
        for (int k = 1; k <= 99; ++k) {
            const double w = omega(p, energy_of_tau(p, n + 0.01 * k).energy).omega;
            below |= w < -1.0;
            above |= w > -1.0;
        }
        INFO("interval " << n);
        CHECK((below && above));
    }
}

TEST_CASE("root of omega = 0 in (1, 2)", "[spectral]") {
    // Frozen from the test-side bisection; see oracles.hpp.
    const double golden = 1.6670259659327377;
    testoracle::Units u;
    CHECK_THAT(static_cast<double>(testoracle::omega_root(u, 0.0L, 1)), WithinAbs(golden, 1e-14));
    PhysParams p;
    CHECK(std::abs(omega(p, energy_of_tau(p, golden).energy).omega) < 1e-10);
}

TEST_CASE("boundary data of the decaying solution", "[spectral]") {
    PhysParams p;
    BoundaryData bd = w_boundary_data(p, energy_of_tau(p, 1.5).energy, Side::Plus);
    CHECK_THAT(bd.phi_plus.real(), WithinRel(-0.28209479177387814, 1e-13));
    CHECK(bd.phi_minus == 0.0);
    CHECK(bd.phitilde_minus == 0.0);
    BoundaryData d1 = w_boundary_data(p, -0.5, Side::Minus);
    CHECK(std::abs(d1.phi_minus) < 1e-15);
    CHECK(d1.phi_plus == 0.0);
    // Off the poles phitilde = omega phi.
    const double e = energy_of_tau(p, 0.77).energy;
    BoundaryData r = w_boundary_data(p, e, Side::Plus);
    CHECK_THAT(r.phitilde_plus.real(), WithinRel(omega(p, e).omega * r.phi_plus.real(), 1e-12));
}

TEST_CASE("eigencondition matrix vanishes where expected", "[spectral]") {
    PhysParams p;
    testoracle::Units u;
    Mat2 md = eigencondition_matrix_tau(named_extension(NamedExtension::Dirichlet), p, 2.0);
    CHECK(md.norm() < 1e-14);
    const double t1 = static_cast<double>(testoracle::omega_root(u, -1.0L, 2));
    Mat2 m1 = eigencondition_matrix(example1(), p, energy_of_tau(p, t1).energy);
    Eigen::JacobiSVD<Mat2> s1(m1);
    CHECK(s1.singularValues()(0) < 1e-12 * eigencondition_scale(example1(), p, t1));
    const double t2 = static_cast<double>(testoracle::omega_root(u, 0.0L, 2));
    Mat2 m2 = eigencondition_matrix(example2(), p, energy_of_tau(p, t2).energy);
    Eigen::JacobiSVD<Mat2> s2(m2);
    CHECK(s2.singularValues()(1) < 1e-12 * eigencondition_scale(example2(), p, t2));
    CHECK(s2.singularValues()(0) > 1e-3 * eigencondition_scale(example2(), p, t2));
}

TEST_CASE("Dirichlet 1D spectrum", "[spectral]") {
    PhysParams p;
    auto recs = solve_spectrum_1d(named_extension(NamedExtension::Dirichlet), p, 3.5);
    REQUIRE(recs.size() == 3);
    const double want[] = {-0.5, -0.125, -1.0 / 18.0};
    for (int k = 0; k < 3; ++k) {
        CHECK_THAT(recs[k].energy, WithinRel(want[k], 1e-12));
        CHECK(recs[k].multiplicity == 2);
    }
    auto six = solve_spectrum_1d(named_extension(NamedExtension::Dirichlet), p, 6.5);
    REQUIRE(six.size() == 6);
    for (int n = 1; n <= 6; ++n) CHECK_THAT(six[n - 1].energy, WithinRel(-0.5 / (n * n), 1e-10));
}

TEST_CASE("Example 1 levels are omega = -1 roots of multiplicity two", "[spectral]") {
    PhysParams p;
    testoracle::Units u;
    auto recs = solve_spectrum_1d(example1(), p, 5.0);
    REQUIRE(recs.size() == 5);
    for (int n = 0; n < 5; ++n) {
        CHECK_THAT(recs[n].tau, WithinAbs(static_cast<double>(testoracle::omega_root(u, -1.0L, n)), 1e-9));
        CHECK(recs[n].multiplicity == 2);
    }
}

TEST_CASE("Example 2 levels: omega = 0 roots and the Dirichlet energies", "[spectral]") {
    PhysParams p;
    testoracle::Units u;
    auto recs = solve_spectrum_1d(example2(), p, 4.5);
    std::vector<double> want;
    for (int n = 0; n < 4; ++n) want.push_back(static_cast<double>(testoracle::omega_root(u, 0.0L, n)));
    for (int n = 1; n <= 4; ++n) want.push_back(n);
    std::sort(want.begin(), want.end());
    auto got = taus(recs);
    REQUIRE(got.size() == want.size());
    for (std::size_t k = 0; k < got.size(); ++k) {
        CHECK_THAT(got[k], WithinAbs(want[k], 1e-9));
        CHECK(recs[k].multiplicity == 1);
        // omega-root states live on x > 0, the Dirichlet ones on x < 0
        const bool integer = std::abs(want[k] - std::round(want[k])) < 1e-12;
        const auto& c = recs[k].basis.at(0);
        CHECK(std::abs(integer ? c[1] : c[0]) < 1e-10);
    }
}

TEST_CASE("Example 3 levels sit at omega = -sqrt2 +- 1, each simple", "[spectral]") {
    PhysParams p;
    testoracle::Units u;
    auto recs = solve_spectrum_1d(example3(), p, 4.0);
    std::vector<double> want;
    for (int n = 0; n < 4; ++n) {
        want.push_back(static_cast<double>(testoracle::omega_root(u, -std::sqrt(2.0L) - 1, n)));
        want.push_back(static_cast<double>(testoracle::omega_root(u, -std::sqrt(2.0L) + 1, n)));
    }
    std::sort(want.begin(), want.end());
    auto got = taus(recs);
    REQUIRE(got.size() == want.size());
    for (std::size_t k = 0; k < got.size(); ++k) {
        CHECK_THAT(got[k], WithinAbs(want[k], 1e-9));
        CHECK(recs[k].multiplicity == 1);
    }
}

TEST_CASE("eigenvectors satisfy the boundary condition for random extensions", "[spectral]") {
    PhysParams p;
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 20; ++trial) {
        Mat2 z;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) z(i, j) = cplx(g(rng), g(rng));
        Eigen::HouseholderQR<Mat2> qr(z);
        Unitary2 u(qr.householderQ() * Mat2::Identity());
        for (const EigenRecord& rec : solve_spectrum_1d(u, p, 4.0)) {
            CHECK((rec.multiplicity == 1 || rec.multiplicity == 2));
            for (const auto& c : rec.basis) {
                Mat2 m = eigencondition_matrix_tau(u, p, rec.tau);
                const double scale = eigencondition_scale(u, p, rec.tau);
                CHECK((m * Vec2(c[0], c[1])).norm() <= 1e-8 * scale);
            }
        }
    }
}

TEST_CASE("3D Dirichlet spectrum", "[spectral]") {
    PhysParams p;
    auto recs = dirichlet_spectrum_3d(p, 4);
    REQUIRE(recs.size() == 4);
    for (int n = 1; n <= 4; ++n) {
        CHECK_THAT(recs[n - 1].energy, WithinRel(-0.5 / (n * n), 1e-14));
        CHECK(recs[n - 1].multiplicity == n * n);
        int sum = 0;
        for (const auto& ch : recs[n - 1].channels) sum += ch.degeneracy;
        CHECK(sum == n * n);
    }
    for (int n = 1; n <= 50; ++n) {
        int s = 0;
        for (int l = 0; l < n; ++l) s += 2 * l + 1;
        CHECK(s == n * n);
    }
}

TEST_CASE("1D and 3D Dirichlet energies coincide", "[spectral]") {
    PhysParams p{1.3, 0.9, 2.1};
    auto one = solve_spectrum_1d(named_extension(NamedExtension::Dirichlet), p, 5.5);
    auto three = dirichlet_spectrum_3d(p, 5);
    REQUIRE(one.size() == three.size());
    for (std::size_t k = 0; k < one.size(); ++k) CHECK_THAT(one[k].energy, WithinRel(three[k].energy, 1e-10));
}

TEST_CASE("eigenfunction values", "[spectral]") {
    PhysParams p;
    auto recs = solve_spectrum_1d(named_extension(NamedExtension::Dirichlet), p, 1.5);
    const EigenRecord& g = recs.at(0);
    CHECK(eigenfunction_eval(g, {0.0, 1.0}, -0.7) == cplx(0.0));
    CHECK_THAT(eigenfunction_eval(g, {0.0, 1.0}, 1.0).real(), WithinRel(2.0 * std::exp(-1.0), 1e-12));
    CHECK_THAT(eigenfunction_eval(g, {1.0, 0.0}, -1.0).real(), WithinRel(2.0 * std::exp(-1.0), 1e-12));
    CHECK(std::abs(eigenfunction_eval(g, {0.0, 1.0}, 30.0)) < 1e-9 * std::abs(eigenfunction_eval(g, {0.0, 1.0}, 1.0)));
}

TEST_CASE("Dirichlet Green's function: support and symmetry", "[spectral]") {
    PhysParams p;
    CHECK(greens_dirichlet(p, -0.3, 1.0, -1.0) == 0.0);
    for (double e : {-0.3, -0.7, -0.09}) {
        for (auto [x, y] : {std::pair{0.3, 2.0}, {1.5, 0.2}, {-0.4, -3.0}, {4.0, 7.5}}) {
            CHECK_THAT(greens_dirichlet(p, e, x, y), WithinRel(greens_dirichlet(p, e, y, x), 1e-10));
        }
    }
    CHECK_THROWS_AS(greens_dirichlet(p, -0.5 * (1 + 1e-10), 1.0, 2.0), EigenvalueHit);
}

TEST_CASE("Green's function blows up near a Dirichlet level", "[spectral]") {
    PhysParams p;
    const double xs[] = {0.5, 1.0, 2.0, 3.5};
    double prev = 0.0;
    for (double d : {1e-2, 1e-3, 1e-4, 1e-5}) {
        const double e = energy_of_tau(p, 1.0 + d).energy;
        double norm = 0.0;
        for (double x : xs)
            for (double y : xs) norm = std::max(norm, std::abs(greens_dirichlet(p, e, x, y)));
        CHECK(norm > 5.0 * prev);
        prev = norm;
    }
}

TEST_CASE("Green's function inverts H - E", "[spectral]") {
    // (H - E) applied by finite differences to the quadrature image of u.
    PhysParams p;
    for (double e : {-0.3, -0.7}) {
        auto u = [](double y) { return testoracle::bump(y, 0.5, 3.0); };
        auto v = [&](double x) {
            auto f = [&](double y) { return greens_dirichlet(p, e, x, y) * u(y); };
            return testoracle::integrate(f, 0.5, x, 40) + testoracle::integrate(f, x, 3.0, 40);
        };
        const double h = 2e-3;
        for (double x : {1.0, 1.75, 2.5}) {
            const double lap = (v(x + h) - 2 * v(x) + v(x - h)) / (h * h);
            const double hv = -0.5 * lap - v(x) / std::abs(x) - e * v(x);
            CHECK_THAT(hv, WithinRel(u(x), 1e-4));
        }
    }
}
