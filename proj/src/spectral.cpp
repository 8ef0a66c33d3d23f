#include "coulomb/spectral.hpp"

#include "coulomb/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace coulomb {
namespace {

const cplx kI(0.0, 1.0);
constexpr double kEulerPsi1 = -0.57721566490153286061;  // psi(1)
constexpr double kMultiplicityThreshold = 1e-8;

bool near_positive_integer(double tau, double tol) {
    double n = std::round(tau);
    return n >= 1.0 && std::abs(tau - n) <= tol;
}

double spectral_norm(const Mat2& m) {
    Eigen::JacobiSVD<Mat2> svd(m);
    return svd.singularValues()(0);
}

// Number of negative eigenvalues of a 2x2 Hermitian matrix.
int inertia(const Mat2& h) {
    double a = h(0, 0).real(), d = h(1, 1).real();
    double mid = 0.5 * (a + d);
    double rad = std::hypot(0.5 * (a - d), std::abs(h(0, 1)));
    return static_cast<int>(mid - rad < 0.0) + static_cast<int>(mid + rad < 0.0);
}

struct Hermitianizer {
    Mat2 b, c, p_adj;

    explicit Hermitianizer(const Unitary2& u) {
        const Mat2 I = Mat2::Identity();
        b = I - u.matrix();
        c = kI * (I + u.matrix());
        // P = cos(phi) B + sin(phi) C is invertible unless e^{2 i phi} is an
        // eigenvalue of U; take the best-conditioned of a fixed set of angles.
        double best = -1.0;
        for (int k = 0; k < 16; ++k) {
            double phi = std::numbers::pi * k / 16.0;
            Mat2 p = std::cos(phi) * b + std::sin(phi) * c;
            Eigen::JacobiSVD<Mat2> svd(p);
            double smin = svd.singularValues()(1);
            if (smin > best + 1e-12) {
                best = smin;
                p_adj = p.adjoint();
            }
        }
    }

    // P^dagger (-d1 B + d0 C) is Hermitian because B^dagger C is.
    Mat2 operator()(const RegularizedPair& d) const {
        Mat2 h = p_adj * (-d.d1 * b + d.d0 * c);
        return 0.5 * (h + h.adjoint());
    }
};

}  // namespace

TauEnergy tau_of_energy(const PhysParams& params, double energy) {
    params.validate();
    if (!(energy < 0.0) || !std::isfinite(energy)) throw DomainError("energy must be negative");
    const double q = 2.0 * params.mass * energy / (params.hbar * params.hbar);
    const double scale = std::sqrt(-4.0 * q);
    return {energy, params.p() / scale, scale};
}

TauEnergy energy_of_tau(const PhysParams& params, double tau) {
    params.validate();
    if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("tau must be positive");
    const double scale = params.p() / tau;
    const double q = -0.25 * scale * scale;
    return {q * params.hbar * params.hbar / (2.0 * params.mass), tau, scale};
}

OmegaValue omega(const PhysParams& params, double energy) {
    TauEnergy te = tau_of_energy(params, energy);
    const double tau = te.tau;
    if (near_positive_integer(tau, 1e-8)) {
        throw PoleError("omega: tau is within 1e-8 of a positive integer");
    }
    const double p = params.p();
    const double lg = std::log(params.hbar * params.hbar * tau / (2.0 * params.mass));
    const double w = p * (lg + 2.0 * kEulerPsi1 - digamma(1.0 - tau).real()) - 0.5 * te.scale;
    return {energy, w, std::max(1, static_cast<int>(std::lround(tau)))};
}

RegularizedPair w_boundary_pair(const PhysParams& params, double tau) {
    params.validate();
    if (!(tau > 0.0) || tau > 160.0) throw DomainError("tau must lie in (0, 160]");
    const double p = params.p();
    const double scale = p / tau;
    const double g = gamma_fn(tau).real();
    // 1/Gamma(1-tau) = sin(pi tau) Gamma(tau) / pi, and
    // psi(1-tau)/Gamma(1-tau) = psi(tau)/Gamma(1-tau) + cos(pi tau) Gamma(tau).
    const double d0 = sin_pi(tau) * g / std::numbers::pi;
    const double lg = std::log(params.hbar * params.hbar * tau / (2.0 * params.mass));
    const double psi_term = digamma(tau).real() * d0 + cos_pi(tau) * g;
    const double d1 = p * ((lg + 2.0 * kEulerPsi1) * d0 - psi_term) - 0.5 * scale * d0;
    return {d0, d1};
}

BoundaryData w_boundary_data(const PhysParams& params, double energy, Side side) {
    TauEnergy te = tau_of_energy(params, energy);
    RegularizedPair d = w_boundary_pair(params, te.tau);
    BoundaryData bd;
    if (side == Side::Plus) {
        bd.phi_plus = d.d0;
        bd.phitilde_plus = d.d1;
    } else {
        bd.phi_minus = d.d0;
        bd.phitilde_minus = -d.d1;
    }
    return bd;
}

Mat2 eigencondition_matrix_tau(const Unitary2& u, const PhysParams& params, double tau) {
    RegularizedPair d = w_boundary_pair(params, tau);
    BoundaryData left{0.0, d.d0, 0.0, -d.d1};
    BoundaryData right{d.d0, 0.0, d.d1, 0.0};
    Mat2 m;
    m.col(0) = bc_residual(u, left);
    m.col(1) = bc_residual(u, right);
    return m;
}

Mat2 eigencondition_matrix(const Unitary2& u, const PhysParams& params, double energy) {
    return eigencondition_matrix_tau(u, params, tau_of_energy(params, energy).tau);
}

double eigencondition_scale(const Unitary2& u, const PhysParams& params, double tau) {
    // M vanishes identically at Dirichlet-type roots, so its own norm cannot
    // serve as the reference; use the norms of its two building blocks.
    const Mat2 I = Mat2::Identity();
    RegularizedPair d = w_boundary_pair(params, tau);
    return (spectral_norm(I - u.matrix()) + spectral_norm(I + u.matrix())) *
           std::max(std::abs(d.d0), std::abs(d.d1));
}

namespace {

std::vector<double> scan_grid(double tau_max) {
    std::vector<double> grid;
    // Logarithmic sweep of the deep-binding end of (0, 1).
    for (double t = 1e-6; t < 0.05; t *= std::pow(10.0, 1.0 / 60.0)) grid.push_back(t);
    for (int k = 0;; ++k) {
        double t = 0.05 + (k + 0.37) * 1e-3;
        if (t >= 1.0) break;
        grid.push_back(t);
    }
    for (int n = 1; n < tau_max + 1; ++n) {
        for (int k = 0; k < 1000; ++k) {
            double t = n + (k + 0.37) * 1e-3;
            if (t > tau_max) break;
            grid.push_back(t);
        }
    }
    grid.push_back(tau_max + 1e-7);
    return grid;
}

}  // namespace

std::vector<EigenRecord> solve_spectrum_1d(const Unitary2& u, const PhysParams& params,
                                           double tau_max) {
    params.validate();
    if (!(tau_max >= 1.0) || tau_max > 150.0) throw DomainError("tau_max must lie in [1, 150]");

    Hermitianizer herm(u);
    auto inertia_at = [&](double tau) { return inertia(herm(w_boundary_pair(params, tau))); };

    std::vector<double> roots;
    std::function<void(double, int, double, int, int)> refine =
        [&](double a, int ia, double b, int ib, int depth) {
            if (ia == ib) return;
            if (b - a <= 1e-14 * std::max(1.0, b) || depth > 200) {
                roots.push_back(0.5 * (a + b));
                return;
            }
            double m = 0.5 * (a + b);
            int im = inertia_at(m);
            refine(a, ia, m, im, depth + 1);
            refine(m, im, b, ib, depth + 1);
        };

    std::vector<double> grid = scan_grid(tau_max);
    int prev = inertia_at(grid.front());
    for (std::size_t k = 1; k < grid.size(); ++k) {
        int cur = inertia_at(grid[k]);
        if (cur != prev) refine(grid[k - 1], prev, grid[k], cur, 0);
        prev = cur;
    }
    std::sort(roots.begin(), roots.end());

    std::vector<EigenRecord> out;
    for (double tau : roots) {
        if (tau > tau_max * (1.0 + 1e-10)) continue;
        if (!out.empty() && std::abs(tau - out.back().tau) <= 1e-9 * tau) continue;
        // Dirichlet-type roots sit at integers; evaluate there exactly when the
        // bisection has landed on one.
        double n = std::round(tau);
        if (n >= 1.0 && std::abs(tau - n) <= 1e-10 * n) tau = n;

        Mat2 m = eigencondition_matrix_tau(u, params, tau);
        double scale = eigencondition_scale(u, params, tau);
        Eigen::JacobiSVD<Mat2> svd(m, Eigen::ComputeFullV);
        Eigen::Vector2d s = svd.singularValues();
        int mult = 0;
        for (int k = 0; k < 2; ++k) mult += s(k) < kMultiplicityThreshold * scale ? 1 : 0;
        if (mult == 0) {
            throw BracketError("solve_spectrum_1d: inertia change at tau=" + std::to_string(tau) +
                               " does not refine to a null vector of M(E)");
        }
        TauEnergy te = energy_of_tau(params, tau);
        EigenRecord rec{te.energy, tau, te.scale, mult, {}, {}, ExtensionSpec::one_d(u)};
        for (int k = 2 - mult; k < 2; ++k) {
            Vec2 v = svd.matrixV().col(k);
            rec.basis.push_back({v(0), v(1)});
        }
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<EigenRecord> dirichlet_spectrum_3d(const PhysParams& params, int n_max) {
    params.validate();
    if (n_max < 1) throw DomainError("n_max must be >= 1");
    std::vector<EigenRecord> out;
    for (int n = 1; n <= n_max; ++n) {
        TauEnergy te = energy_of_tau(params, n);
        EigenRecord rec{te.energy, te.tau, te.scale, 0, {}, {}, ExtensionSpec::three_d(0.0)};
        for (int l = 0; l < n; ++l) {
            rec.channels.push_back({l, 2 * l + 1});
            rec.multiplicity += 2 * l + 1;
        }
        if (rec.multiplicity != n * n) throw ConvergenceError("3D multiplicity mismatch");
        out.push_back(std::move(rec));
    }
    return out;
}

cplx eigenfunction_eval(const EigenRecord& rec, const std::array<cplx, 2>& c, double x) {
    if (!(std::abs(c[0]) + std::abs(c[1]) > 0.0)) throw DomainError("coefficient vector is zero");
    if (x == 0.0 || !std::isfinite(x)) throw DomainError("x must be finite and nonzero");
    const cplx coef = x < 0.0 ? c[0] : c[1];
    if (coef == 0.0) return 0.0;
    return coef * whittaker_w(rec.tau, 0.5, rec.scale * std::abs(x)).real();
}

double greens_dirichlet(const PhysParams& params, double energy, double x, double y) {
    if (x == 0.0 || y == 0.0 || !std::isfinite(x) || !std::isfinite(y)) {
        throw DomainError("greens_dirichlet: x and y must be finite and nonzero");
    }
    TauEnergy te = tau_of_energy(params, energy);
    if (near_positive_integer(te.tau, 1e-8)) {
        throw EigenvalueHit("greens_dirichlet: energy is a Dirichlet eigenvalue");
    }
    if ((x < 0.0) != (y < 0.0)) return 0.0;
    const double lo = std::min(std::abs(x), std::abs(y));
    const double hi = std::max(std::abs(x), std::abs(y));
    const double pref = 2.0 * params.mass / (params.hbar * params.hbar) *
                        gamma_fn(1.0 - te.tau).real() / te.scale;
    return pref * whittaker_m(te.tau, 0.5, te.scale * lo).real() *
           whittaker_w(te.tau, 0.5, te.scale * hi).real();
}

}  // namespace coulomb
