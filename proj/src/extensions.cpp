#include "coulomb/extensions.hpp"

#include "coulomb/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace coulomb {
namespace {

const cplx kI(0.0, 1.0);

Eigen::Vector2d singular_values(const Mat2& m) {
    Eigen::JacobiSVD<Mat2> svd(m);
    return svd.singularValues();
}

}  // namespace

void PhysParams::validate() const {
    auto ok = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!ok(hbar) || !ok(mass) || !ok(kappa)) {
        throw DomainError("PhysParams: hbar, mass and kappa must be finite and positive");
    }
}

Unitary2::Unitary2(const Mat2& m) : m_(m) {
    if (!m.allFinite()) throw DomainError("Unitary2: entries must be finite");
    double dev = (m * m.adjoint() - Mat2::Identity()).cwiseAbs().maxCoeff();
    if (dev > 1e-12) throw DomainError("Unitary2: matrix is not unitary to 1e-12");
}

Unitary2 unitary_from_params(double theta, cplx a, cplx b) {
    double norm = std::norm(a) + std::norm(b);
    if (!std::isfinite(theta) || !(std::abs(norm - 1.0) <= 1e-10)) {
        throw NormalizationError("unitary_from_params: |a|^2 + |b|^2 must equal 1");
    }
    // Renormalize the residual so the result meets the 1e-12 unitarity test.
    double s = 1.0 / std::sqrt(norm);
    a *= s;
    b *= s;
    Mat2 m;
    m << a, -std::conj(b), b, std::conj(a);
    return Unitary2(std::exp(kI * theta) * m);
}

Unitary2 named_extension(NamedExtension name) {
    Mat2 m;
    switch (name) {
        case NamedExtension::Dirichlet:
            m = Mat2::Identity();
            break;
        case NamedExtension::NeumannLike:
            m = -Mat2::Identity();
            break;
        case NamedExtension::Periodic:
            m << 0.0, 1.0, 1.0, 0.0;
            break;
        case NamedExtension::Antiperiodic:
            m << 0.0, -1.0, -1.0, 0.0;
            break;
    }
    return Unitary2(m);
}

NamedExtension parse_named_extension(const std::string& name) {
    std::string s = name;
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "dirichlet") return NamedExtension::Dirichlet;
    if (s == "neumann" || s == "neumann-like" || s == "neumannlike") return NamedExtension::NeumannLike;
    if (s == "periodic") return NamedExtension::Periodic;
    if (s == "antiperiodic") return NamedExtension::Antiperiodic;
    throw DomainError("unknown named extension: " + name);
}

std::string to_string(NamedExtension name) {
    switch (name) {
        case NamedExtension::Dirichlet:
            return "dirichlet";
        case NamedExtension::NeumannLike:
            return "neumann";
        case NamedExtension::Periodic:
            return "periodic";
        case NamedExtension::Antiperiodic:
            return "antiperiodic";
    }
    return "";
}

ExtensionSpec ExtensionSpec::two_d(double theta) {
    if (!std::isfinite(theta)) throw DomainError("theta must be finite");
    const double two_pi = 2.0 * std::numbers::pi;
    double t = std::fmod(theta, two_pi);
    if (t < 0.0) t += two_pi;
    if (t >= two_pi) t = 0.0;
    return {TwoD{t}};
}

bool BoundaryData::finite() const {
    return as_vector().allFinite();
}

std::string to_string(BCCase c) {
    switch (c) {
        case BCCase::AMatrixFromIMinusU:
            return "AMatrixFromIMinusU";
        case BCCase::AMatrixFromIPlusU:
            return "AMatrixFromIPlusU";
        case BCCase::DoublyDegenerate:
            return "DoublyDegenerate";
    }
    return "";
}

bool numerically_invertible(const Mat2& m) {
    Eigen::Vector2d s = singular_values(m);
    return s(0) > 0.0 && s(1) > 1e-10 * s(0);
}

BCForm cayley_to_bc(const Unitary2& u) {
    const Mat2 I = Mat2::Identity();
    const Mat2& U = u.matrix();
    BCForm out{BCCase::DoublyDegenerate, std::nullopt, std::nullopt, std::nullopt, std::nullopt};
    const Mat2 minus = I - U;
    const Mat2 plus = I + U;
    if (numerically_invertible(minus)) {
        Mat2 a = -kI * minus.partialPivLu().solve(plus);
        a = 0.5 * (a + a.adjoint()).eval();
        out.a_from_i_minus_u = a;
    }
    if (numerically_invertible(plus)) {
        Mat2 a = kI * plus.partialPivLu().solve(minus);
        a = 0.5 * (a + a.adjoint()).eval();
        out.a_from_i_plus_u = a;
    }
    if (out.a_from_i_minus_u) {
        out.case_tag = BCCase::AMatrixFromIMinusU;
        out.a_matrix = out.a_from_i_minus_u;
    } else if (out.a_from_i_plus_u) {
        out.case_tag = BCCase::AMatrixFromIPlusU;
        out.a_matrix = out.a_from_i_plus_u;
    } else {
        // Eigenvalues {1, -1}: U is Hermitian, traceless: ((-u, v), (conj v, u)).
        double uu = 0.5 * (U(1, 1) - U(0, 0)).real();
        cplx v = 0.5 * (U(0, 1) + std::conj(U(1, 0)));
        out.uv_params = std::make_pair(uu, v);
    }
    return out;
}

Unitary2 unitary_from_cayley(const Mat2& a) {
    const Mat2 I = Mat2::Identity();
    Mat2 u = (a + kI * I) * (a - kI * I).inverse();
    return Unitary2(u);
}

Eigen::Matrix<cplx, 2, 4> boundary_condition_matrix(const Unitary2& u) {
    const Mat2 I = Mat2::Identity();
    const Mat2 minus = I - u.matrix();
    const Mat2 plus = kI * (I + u.matrix());
    Eigen::Matrix<cplx, 2, 4> r;
    r.col(0) = -plus.col(0);  // phi+
    r.col(1) = plus.col(1);   // phi-
    r.col(2) = minus.col(0);  // phitilde+
    r.col(3) = minus.col(1);  // phitilde-
    return r;
}

Vec2 bc_residual(const Unitary2& u, const BoundaryData& bd) {
    const Mat2 I = Mat2::Identity();
    Vec2 tilde(bd.phitilde_plus, bd.phitilde_minus);
    Vec2 phi(-bd.phi_plus, bd.phi_minus);
    return (I - u.matrix()) * tilde + kI * (I + u.matrix()) * phi;
}

Eigen::Matrix<cplx, 4, 2> domain_basis(const Unitary2& u) {
    Eigen::Matrix<cplx, 2, 4> r = boundary_condition_matrix(u);
    Eigen::JacobiSVD<Eigen::Matrix<cplx, 2, 4>> svd(r, Eigen::ComputeFullV);
    return svd.matrixV().rightCols<2>();
}

Eigen::Vector2d boundary_condition_singular_values(const Unitary2& u) {
    Eigen::JacobiSVD<Eigen::Matrix<cplx, 2, 4>> svd(boundary_condition_matrix(u));
    return svd.singularValues();
}

bool bc_3d(std::optional<double> lambda, cplx psi0, cplx psitilde0) {
    if (!lambda) {
        double scale = std::max(std::abs(psi0), std::abs(psitilde0));
        return std::abs(psitilde0) <= 1e-10 * scale || scale == 0.0;
    }
    cplx rhs = *lambda * psitilde0;
    double scale = std::max(std::abs(psi0), std::abs(rhs));
    if (scale == 0.0) return true;
    return std::abs(psi0 - rhs) <= 1e-10 * scale;
}

namespace {

LimitEstimate extrapolate_limits(const ComplexFn& phi, const ComplexFn& dphi, double p,
                                 double kappa, int side, bool radial) {
    if (side != 1 && side != -1) throw DomainError("side must be +1 or -1");
    // Approach the origin geometrically; the regularized quantities converge
    // like x ln^2 x, so the last two samples bound the error.
    cplx last_phi = 0.0, last_tilde = 0.0, prev_phi = 0.0, prev_tilde = 0.0;
    for (int k = 6; k <= 12; ++k) {
        double r = std::pow(10.0, -k) / kappa;
        double x = side * r;
        cplx f = phi(x);
        cplx df = dphi(x);
        cplx tilde = radial ? df + p * f * std::log(kappa * r)
                            : df + static_cast<double>(side) * p * f * std::log(kappa * r);
        prev_phi = last_phi;
        prev_tilde = last_tilde;
        last_phi = f;
        last_tilde = tilde;
    }
    double err = std::max(std::abs(last_phi - prev_phi), std::abs(last_tilde - prev_tilde));
    return {last_phi, last_tilde, err};
}

}  // namespace

LimitEstimate lateral_limits_1d(const ComplexFn& phi, const ComplexFn& dphi,
                                const PhysParams& params, int side) {
    params.validate();
    return extrapolate_limits(phi, dphi, params.p(), params.kappa, side, false);
}

LimitEstimate radial_limits_3d(const ComplexFn& phi, const ComplexFn& dphi,
                               const PhysParams& params) {
    params.validate();
    return extrapolate_limits(phi, dphi, params.p(), params.kappa, 1, true);
}

}  // namespace coulomb
