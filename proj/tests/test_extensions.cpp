#include "coulomb/extensions.hpp"
#include "coulomb/errors.hpp"
#include "coulomb/spectral.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace coulomb;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const cplx I1(0.0, 1.0);
}

TEST_CASE("Unitary2 validates its input", "[extensions]") {
    Mat2 m = Mat2::Identity();
    m(0, 1) = 0.1;
    CHECK_THROWS_AS(Unitary2(m), DomainError);
    m(0, 1) = NAN;
    CHECK_THROWS_AS(Unitary2(m), DomainError);
    CHECK_NOTHROW(Unitary2(I1 * Mat2::Identity()));
}

TEST_CASE("parametrized unitaries", "[extensions]") {
    Unitary2 u = unitary_from_params(std::numbers::pi / 2, 1.0, 0.0);
    CHECK((u.matrix() - I1 * Mat2::Identity()).norm() < 1e-15);
    CHECK_THROWS_AS(unitary_from_params(0.0, 1.0, 1.0), NormalizationError);
    CHECK(std::abs(u.matrix().determinant() - std::exp(I1 * std::numbers::pi)) < 1e-14);
}

TEST_CASE("named extensions", "[extensions]") {
    CHECK(named_extension(NamedExtension::Dirichlet).matrix().isApprox(Mat2::Identity()));
    CHECK(parse_named_extension("dirichlet") == NamedExtension::Dirichlet);
    CHECK_THROWS_AS(parse_named_extension("robin"), DomainError);
    for (auto n : {NamedExtension::Dirichlet, NamedExtension::NeumannLike, NamedExtension::Periodic,
                   NamedExtension::Antiperiodic}) {
        CHECK(parse_named_extension(to_string(n)) == n);
    }
}

TEST_CASE("Cayley forms of the standard matrices", "[extensions]") {
    BCForm d = cayley_to_bc(named_extension(NamedExtension::Dirichlet));
    CHECK_FALSE(d.a_from_i_minus_u.has_value());
    REQUIRE(d.a_from_i_plus_u.has_value());
    CHECK(d.a_from_i_plus_u->norm() < 1e-14);

    BCForm e1 = cayley_to_bc(Unitary2(I1 * Mat2::Identity()));
    REQUIRE(e1.a_from_i_minus_u.has_value());
    // A = -i (1 - i)^{-1} (1 + i) I = I
    CHECK((*e1.a_from_i_minus_u - Mat2::Identity()).norm() < 1e-14);

    BCForm c3 = cayley_to_bc(Unitary2((Mat2() << -1.0, 0.0, 0.0, 1.0).finished()));
    CHECK(c3.case_tag == BCCase::DoublyDegenerate);
}

TEST_CASE("domain basis spans the boundary-condition null space", "[extensions]") {
    const double r2 = 1.0 / std::sqrt(2.0);
    Unitary2 u((Mat2() << I1 * r2, -I1 * r2, I1 * r2, I1 * r2).finished());
    Eigen::Matrix<cplx, 4, 2> n = domain_basis(u);
    for (int k = 0; k < 2; ++k) {
        BoundaryData bd = BoundaryData::from_vector(n.col(k));
        CHECK(bc_residual(u, bd).norm() < 1e-14);
    }
    CHECK((n.adjoint() * n - Mat2::Identity()).norm() < 1e-13);
}

TEST_CASE("3D boundary condition", "[extensions]") {
    CHECK(bc_3d(2.0, 2.0, 1.0));
    CHECK_FALSE(bc_3d(2.0, 1.0, 1.0));
    CHECK(bc_3d(std::nullopt, 1.0, 0.0));
    CHECK(bc_3d(0.0, 0.0, 3.0));
}

TEST_CASE("lateral limits of the decaying solution reproduce the boundary pair", "[extensions]") {
    PhysParams p;
    for (double tau : {0.6124, 1.37, 2.5}) {
        const TauEnergy te = energy_of_tau(p, tau);
        const double s = te.scale;
        RegularizedPair d = w_boundary_pair(p, tau);
        for (int side : {1, -1}) {
            auto phi = [&](double x) { return cplx(whittaker_w(tau, 0.5, s * std::abs(x)).real()); };
            auto dphi = [&](double x) {
                return cplx((x > 0 ? s : -s) * whittaker_w_pair(tau, 0.5, s * std::abs(x)).derivative);
            };
            LimitEstimate lim = lateral_limits_1d(phi, dphi, p, side);
            INFO("tau = " << tau << " side = " << side);
            CHECK_THAT(lim.phi.real(), WithinAbs(d.d0, 1e-6));
            CHECK_THAT(lim.phitilde.real(), WithinAbs(side * d.d1, 1e-5 * (1 + std::abs(d.d1))));
        }
    }
}
