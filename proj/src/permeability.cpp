#include "coulomb/permeability.hpp"

#include "coulomb/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace coulomb {
namespace {

const cplx kI(0.0, 1.0);
constexpr double kZeroEntry = 1e-10;

}  // namespace

std::string to_string(Verdict v) { return v == Verdict::Permeable ? "Permeable" : "Impermeable"; }

std::string to_string(PermeabilityCase c) {
    switch (c) {
        case PermeabilityCase::Case1:
            return "Case1";
        case PermeabilityCase::Case2:
            return "Case2";
        case PermeabilityCase::Case3:
            return "Case3";
    }
    return "";
}

double current_at_origin(const BoundaryData& bd) {
    return (bd.phitilde_plus * std::conj(bd.phi_plus)).imag();
}

double current_at_origin_minus(const BoundaryData& bd) {
    return (bd.phitilde_minus * std::conj(bd.phi_minus)).imag();
}

CurrentExtremum max_current(const Unitary2& u) {
    Eigen::Matrix<cplx, 4, 2> n = domain_basis(u);
    Eigen::RowVector2cd n1 = n.row(0);  // phi(0+)
    Eigen::RowVector2cd n3 = n.row(2);  // phitilde(0+)
    // j(N c) = c^dagger J c with J = (n1^dagger n3 - n3^dagger n1) / 2i.
    Mat2 j = (n1.adjoint() * n3 - n3.adjoint() * n1) / (2.0 * kI);
    j = 0.5 * (j + j.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Mat2> es(j);
    int k = std::abs(es.eigenvalues()(0)) >= std::abs(es.eigenvalues()(1)) ? 0 : 1;
    Vec2 c = es.eigenvectors().col(k);
    BoundaryData bd = BoundaryData::from_vector(n * c);
    return {current_at_origin(bd), bd};
}

PermeabilityVerdict classify_extension(const Unitary2& u) {
    BCForm bc = cayley_to_bc(u);
    PermeabilityVerdict out{Verdict::Impermeable, PermeabilityCase::Case3, 0.0, std::nullopt, 0.0};
    switch (bc.case_tag) {
        case BCCase::AMatrixFromIMinusU:
            out.case_tag = PermeabilityCase::Case1;
            out.coupling = (*bc.a_matrix)(0, 1);
            break;
        case BCCase::AMatrixFromIPlusU:
            out.case_tag = PermeabilityCase::Case2;
            out.coupling = (*bc.a_matrix)(0, 1);
            break;
        case BCCase::DoublyDegenerate:
            out.case_tag = PermeabilityCase::Case3;
            out.coupling = bc.uv_params->second;
            break;
    }
    if (std::abs(out.coupling) > kZeroEntry) {
        out.verdict = Verdict::Permeable;
        CurrentExtremum w = max_current(u);
        if (std::abs(w.current) <= 1e-10) {
            throw ConvergenceError("classify_extension: no witness with nonzero current found");
        }
        out.witness = w.data;
        out.witness_current = w.current;
    }
    return out;
}

Table1Value table1_current(const Mat2& a_plus, const BoundaryData& bd) {
    const double uu = a_plus(0, 0).real();
    const double vv = a_plus(1, 1).real();
    const cplx z = a_plus(0, 1);
    const cplx phip = bd.phi_plus, phim = bd.phi_minus;
    if (std::abs(z) <= kZeroEntry) return {Table1Row::ZeroCoupling, 0.0};
    if (std::abs(uu) <= kZeroEntry) {
        return {Table1Row::UZero, (-(1.0 / z) * phip * std::conj(phim)).imag()};
    }
    if (std::abs(vv) <= kZeroEntry) {
        return {Table1Row::VZero, ((1.0 / std::conj(z)) * phim * std::conj(phip)).imag()};
    }
    return {Table1Row::General, (-(z / uu) * bd.phitilde_minus * std::conj(phip)).imag()};
}

double case3_current(double u, cplx v, const BoundaryData& bd) {
    if (std::abs(1.0 + u) <= kZeroEntry) return 0.0;  // U = diag(1, -1): decoupled
    const cplx phip = bd.phi_plus;
    const cplx r = v / (1.0 + u);
    cplx total = r * bd.phitilde_minus * std::conj(phip) - kI * r * bd.phi_minus * std::conj(phip) +
                 kI * ((1.0 - u) / (1.0 + u)) * std::norm(phip);
    return total.imag();
}

BoundaryData eigenstate_boundary_data(const PhysParams& params, double energy,
                                      const std::array<cplx, 2>& c) {
    RegularizedPair d = w_boundary_pair(params, tau_of_energy(params, energy).tau);
    BoundaryData left{0.0, d.d0, 0.0, -d.d1};
    BoundaryData right{d.d0, 0.0, d.d1, 0.0};
    return left * c[0] + right * c[1];
}

double j0_for_eigenstate(const Unitary2& u, const PhysParams& params, double energy,
                         const std::array<cplx, 2>& c) {
    const double tau = tau_of_energy(params, energy).tau;
    Mat2 m = eigencondition_matrix_tau(u, params, tau);
    Vec2 cv(c[0], c[1]);
    double cn = cv.norm();
    if (!(cn > 0.0)) throw DomainError("j0_for_eigenstate: coefficient vector is zero");
    double residual = (m * cv).norm();
    double scale = eigencondition_scale(u, params, tau);
    if (residual > 1e-8 * scale * cn) {
        throw NotAnEigenpair("j0_for_eigenstate: ||M(E) c|| = " + std::to_string(residual / (scale * cn)) +
                             " relative, above 1e-8");
    }
    return current_at_origin(eigenstate_boundary_data(params, energy, c));
}

}  // namespace coulomb
