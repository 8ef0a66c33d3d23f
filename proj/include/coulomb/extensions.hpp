#pragma once

#include "coulomb/specfun.hpp"

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>

namespace coulomb {

using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;

struct PhysParams {
    double hbar = 1.0;
    double mass = 1.0;
    double kappa = 1.0;

    // p = 2 m kappa / hbar^2
    double p() const { return 2.0 * mass * kappa / (hbar * hbar); }
    // Throws DomainError unless all three are finite and positive.
    void validate() const;
};

class Unitary2 {
public:
    // Throws DomainError if m is not unitary to 1e-12.
    explicit Unitary2(const Mat2& m);
    const Mat2& matrix() const { return m_; }
    cplx operator()(int i, int j) const { return m_(i, j); }

private:
    Mat2 m_;
};

// e^{i theta} ((a, -conj b), (b, conj a)); NormalizationError unless |a|^2+|b|^2 = 1 to 1e-10.
Unitary2 unitary_from_params(double theta, cplx a, cplx b);

enum class NamedExtension { Dirichlet, NeumannLike, Periodic, Antiperiodic };
Unitary2 named_extension(NamedExtension name);
// Accepts dirichlet, neumann, neumann-like, periodic, antiperiodic.
NamedExtension parse_named_extension(const std::string& name);
std::string to_string(NamedExtension name);

struct OneD {
    Unitary2 u;
};
struct TwoD {
    double theta;  // normalized to [0, 2 pi)
};
struct ThreeD {
    std::optional<double> lambda;  // nullopt stands for lambda = infinity
};

struct ExtensionSpec {
    std::variant<OneD, TwoD, ThreeD> variant;

    static ExtensionSpec one_d(const Unitary2& u) { return {OneD{u}}; }
    static ExtensionSpec two_d(double theta);
    static ExtensionSpec three_d(std::optional<double> lambda) { return {ThreeD{lambda}}; }
    int dimension() const { return static_cast<int>(variant.index()) + 1; }
};

// Regularized lateral limits at the origin.
struct BoundaryData {
    cplx phi_plus = 0.0;
    cplx phi_minus = 0.0;
    cplx phitilde_plus = 0.0;
    cplx phitilde_minus = 0.0;

    BoundaryData operator+(const BoundaryData& o) const {
        return {phi_plus + o.phi_plus, phi_minus + o.phi_minus, phitilde_plus + o.phitilde_plus,
                phitilde_minus + o.phitilde_minus};
    }
    BoundaryData operator*(cplx c) const {
        return {c * phi_plus, c * phi_minus, c * phitilde_plus, c * phitilde_minus};
    }
    Eigen::Vector4cd as_vector() const {
        return {phi_plus, phi_minus, phitilde_plus, phitilde_minus};
    }
    static BoundaryData from_vector(const Eigen::Vector4cd& v) { return {v(0), v(1), v(2), v(3)}; }
    bool finite() const;
};

enum class BCCase { AMatrixFromIMinusU, AMatrixFromIPlusU, DoublyDegenerate };
std::string to_string(BCCase c);

struct BCForm {
    BCCase case_tag;
    // Canonical self-adjoint A for the case (I-U based when available).
    std::optional<Mat2> a_matrix;
    // Both Cayley forms, when the corresponding factor is invertible.
    std::optional<Mat2> a_from_i_minus_u;  // -i (I-U)^{-1} (I+U)
    std::optional<Mat2> a_from_i_plus_u;   //  i (I+U)^{-1} (I-U)
    std::optional<std::pair<double, cplx>> uv_params;
};

// Smallest singular value > 1e-10 * largest (and the matrix is not zero).
bool numerically_invertible(const Mat2& m);

BCForm cayley_to_bc(const Unitary2& u);
// Inverse of A = -i (I-U)^{-1} (I+U): U = (A + iI)(A - iI)^{-1}.
Unitary2 unitary_from_cayley(const Mat2& a);

// r = (I-U)(phitilde+, phitilde-)^T + i(I+U)(-phi+, phi-)^T
Vec2 bc_residual(const Unitary2& u, const BoundaryData& bd);
// The same linear map as a 2x4 matrix acting on (phi+, phi-, phitilde+, phitilde-).
Eigen::Matrix<cplx, 2, 4> boundary_condition_matrix(const Unitary2& u);
// Orthonormal basis (4x2) of the null space of boundary_condition_matrix(u).
Eigen::Matrix<cplx, 4, 2> domain_basis(const Unitary2& u);
// Singular values of boundary_condition_matrix(u), descending.
Eigen::Vector2d boundary_condition_singular_values(const Unitary2& u);

// psi(0+) = lambda psitilde(0+), lambda = nullopt meaning infinity.
bool bc_3d(std::optional<double> lambda, cplx psi0, cplx psitilde0);

// Numerical extraction of the regularized lateral limits from a function and
// its derivative near the origin. side = +1 or -1. The 1D convention
// phi' + s p phi ln(s kappa x) is used; the 3D variant uses phi' + p phi ln(kappa r).
struct LimitEstimate {
    cplx phi;
    cplx phitilde;
    double abs_err;
};
using ComplexFn = std::function<cplx(double)>;
LimitEstimate lateral_limits_1d(const ComplexFn& phi, const ComplexFn& dphi,
                                const PhysParams& params, int side);
LimitEstimate radial_limits_3d(const ComplexFn& phi, const ComplexFn& dphi,
                               const PhysParams& params);

}  // namespace coulomb
