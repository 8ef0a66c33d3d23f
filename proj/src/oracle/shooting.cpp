#include "coulomb/oracle.hpp"

#include "coulomb/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace coulomb::oracle {
namespace {

using kernels::Isa;
using kernels::ShootGrid;
using kernels::ShootState;

constexpr double kRichardsonTol = 1e-6;
constexpr int kLanes = 4;

// Grid uniform in x = ln r + r/c with n intervals on [eps, L]: logarithmic
// near the origin, spacing c h far out. With u = r'^{1/2} v (r' = dr/dx) the
// radial equation u'' = [(nu^2 - 1/4)/r^2 - p/r - q] u becomes
// v'' = [w - q b] v with b = r'^2 and
// w = r'^2 ((nu^2 - 1/4)/r^2 - p/r) - r'''/(2 r') + (3/4) (r''/r')^2.
struct LogGrid {
    std::vector<double> r, rp, w, b;
    double h;
};

LogGrid make_log_grid(double nu, double p, double eps, double L, int n, double c) {
    LogGrid g;
    auto x_of = [c](double r) { return std::log(r) + r / c; };
    const double x0 = x_of(eps);
    g.h = (x_of(L) - x0) / n;
    g.r.resize(n + 1);
    g.rp.resize(n + 1);
    g.w.resize(n + 1);
    g.b.resize(n + 1);
    double r = eps;
    for (int i = 0; i <= n; ++i) {
        const double x = x0 + i * g.h;
        for (int it = 0; it < 100; ++it) {
            const double dr = (x_of(r) - x) / (1.0 / r + 1.0 / c);
            r = std::max(0.5 * r, r - dr);
            if (std::abs(dr) <= 1e-16 * r) break;
        }
        if (i == 0) r = eps;
        if (i == n) r = L;
        const double s = r + c;
        const double k = c * c / (s * s);  // d r' / dr
        const double r1 = r * c / s;
        const double r2 = r1 * k;
        const double r3 = r1 * (k * k - 2.0 * r1 * c * c / (s * s * s));
        g.r[i] = r;
        g.rp[i] = r1;
        g.w[i] = r1 * r1 * ((nu * nu - 0.25) / (r * r) - p / r) - 0.5 * r3 / r1 +
                 0.75 * (r2 / r1) * (r2 / r1);
        g.b[i] = r1 * r1;
    }
    return g;
}

// Local solutions at small r for q = 2mE/hbar^2. f has data (0, 1), g has
// data (1, 0) in the regularized sense with ln(kappa r).
struct LocalPair {
    double g, f;
};

LocalPair local_pair(double p, double kappa, double q, double r) {
    const double lr = std::log(kappa * r);
    const double f = r - 0.5 * p * r * r + (0.5 * p * p - q) / 6.0 * r * r * r;
    const double delta = 0.5 * (-2.5 * p * p - q);
    const double g = 1.0 + r * (p - p * lr) + r * r * (0.5 * p * p * lr + delta);
    return {g, f};
}

double regular_solution(double nu, double p, double q, double r) {
    const double c1 = -p / (1.0 + 2.0 * nu);
    const double c2 = (-p * c1 - q) / (2.0 * (2.0 + 2.0 * nu));
    return std::pow(r, nu + 0.5) * (1.0 + r * (c1 + r * c2));
}

struct StartPair {
    double v0, v1;
};

// Grid values at points 0 and 1 of the discrete solutions matching g and f.
// Near eps, g/sqrt(r') is dominated by e^{-(x - x0)/2}, the decaying mode of
// the leading coefficient 1/4. That part is seeded with the exact discrete
// mode rho^{-i}; the remainder, O(r) relative, is seeded with continuum
// values. Any O(h r) slip in the dominant part would reappear as an O(1)
// error in phitilde, since the f component is O(eps) relative there.
struct LocalStart {
    StartPair g, f;
};

LocalStart local_start(const LogGrid& grid, double p, double kappa, double q) {
    const double r0 = grid.r[0], r1 = grid.r[1];
    const double s0 = 1.0 / std::sqrt(grid.rp[0]), s1 = 1.0 / std::sqrt(grid.rp[1]);
    const double d = 0.125 * grid.h * grid.h;
    const double rho_inv = 1.0 + d - std::sqrt(d * (2.0 + d));
    LocalPair l0 = local_pair(p, kappa, q, r0);
    LocalPair l1 = local_pair(p, kappa, q, r1);
    LocalStart out;
    out.g = {s0 * l0.g, s0 * rho_inv + (s1 * l1.g - s0 * std::exp(-0.5 * grid.h))};
    out.f = {s0 * l0.f, s1 * l1.f};
    return out;
}

double channel_nu(int dim, int l) {
    if (dim == 1) {
        if (l != 0) throw DomainError("dim 1 has no angular momentum");
        return 0.5;
    }
    if (l < 0 && dim == 3) throw DomainError("l must be >= 0 in 3D");
    return dim == 2 ? std::abs(l) : l + 0.5;
}

double default_eps(const PhysParams& params) {
    return 1e-6 * params.hbar * params.hbar / (params.mass * params.kappa);
}

// Outer cutoff: the classical turning point at e_hi plus forty decay lengths.
double default_L(const PhysParams& params, double e_hi) {
    const double turning = params.kappa / std::abs(e_hi);
    const double decay = std::sqrt(2.0 * params.mass * std::abs(e_hi)) / params.hbar;
    return turning + 40.0 / decay;
}

using CountFn = std::function<void(const double*, std::int64_t*, int)>;

// Energies where the Sturm count steps up, located by 5-way multisection.
std::vector<double> count_transitions(const CountFn& count, double e_lo, double e_hi) {
    std::int64_t c[kLanes];
    double ends[2] = {e_lo, e_hi};
    std::int64_t cend[2];
    count(ends, cend, 2);
    std::vector<double> out;
    for (std::int64_t j = cend[0]; j < cend[1]; ++j) {
        double a = e_lo, b = e_hi;
        for (int pass = 0; pass < 80; ++pass) {
            if (b - a <= 1e-14 * std::max(std::abs(a), std::abs(b))) break;
            double e[kLanes];
            for (int k = 0; k < kLanes; ++k) e[k] = a + (b - a) * (k + 1) / (kLanes + 1.0);
            count(e, c, kLanes);
            double na = a, nb = b;
            for (int k = 0; k < kLanes; ++k) {
                if (c[k] <= j) na = e[k];
            }
            for (int k = kLanes - 1; k >= 0; --k) {
                if (c[k] > j) nb = e[k];
            }
            // Counts can flicker only at rounding level; the bracket is done.
            if (nb < na) break;
            a = na;
            b = nb;
        }
        out.push_back(0.5 * (a + b));
    }
    return out;
}

std::vector<LevelEstimate> richardson(const std::array<std::vector<double>, 3>& e,
                                      const std::array<std::vector<int>, 3>& mult) {
    if (e[0].size() != e[1].size() || e[1].size() != e[2].size()) {
        throw GridError("shooting: level count differs between grids (" +
                        std::to_string(e[0].size()) + ", " + std::to_string(e[1].size()) + ", " +
                        std::to_string(e[2].size()) + ")");
    }
    std::vector<LevelEstimate> out;
    for (std::size_t k = 0; k < e[0].size(); ++k) {
        if (mult[0][k] != mult[1][k] || mult[1][k] != mult[2][k]) {
            throw GridError("shooting: multiplicity differs between grids");
        }
        const double r1 = (4.0 * e[1][k] - e[0][k]) / 3.0;
        const double r2 = (4.0 * e[2][k] - e[1][k]) / 3.0;
        if (std::abs(r2 - r1) > kRichardsonTol * std::abs(r2)) {
            throw GridError("shooting: Richardson estimates disagree at level " +
                            std::to_string(k) + " (" + std::to_string(r1) + " vs " +
                            std::to_string(r2) + ")");
        }
        out.push_back({r2, mult[0][k], {e[0][k], e[1][k], e[2][k]}});
    }
    return out;
}

void check_bracket(double e_lo, double e_hi) {
    if (!(e_lo < e_hi) || !(e_hi < 0.0) || !std::isfinite(e_lo)) {
        throw DomainError("shooting: need e_lo < e_hi < 0");
    }
}

std::vector<double> halfline_on_grid(const PhysParams& params, double nu, bool limit_circle,
                                     RobinData bc, double eps, double L, double c, int n,
                                     double e_lo, double e_hi, Isa isa) {
    const double p = params.p();
    const double k2 = 2.0 * params.mass / (params.hbar * params.hbar);
    LogGrid g = make_log_grid(nu, p, eps, L, n, c);
    ShootGrid sg{g.w.data(), g.b.data(), g.w.size(), g.h * g.h};

    auto start = [&](double q) {
        if (!limit_circle) {
            return StartPair{regular_solution(nu, p, q, g.r[0]) / std::sqrt(g.rp[0]),
                             regular_solution(nu, p, q, g.r[1]) / std::sqrt(g.rp[1])};
        }
        LocalStart ls = local_start(g, p, params.kappa, q);
        return StartPair{bc.phi0 * ls.g.v0 + bc.phitilde0 * ls.f.v0,
                         bc.phi0 * ls.g.v1 + bc.phitilde0 * ls.f.v1};
    };
    CountFn count = [&](const double* energies, std::int64_t* nodes, int m) {
        double lam[kLanes] = {};
        ShootState st[kLanes];
        bool flip[kLanes] = {};
        for (int k = 0; k < m; ++k) {
            lam[k] = k2 * energies[k];
            StartPair sp = start(lam[k]);
            st[k].v_prev = sp.v0;
            st[k].v_cur = sp.v1;
            flip[k] = sp.v0 * sp.v1 < 0.0;
        }
        kernels::shoot(sg, lam, st, m, isa);
        for (int k = 0; k < m; ++k) nodes[k] = st[k].nodes + (flip[k] ? 1 : 0);
    };
    return count_transitions(count, e_lo, e_hi);
}

int steps_for(double eps, double L, double c, double log_step) {
    if (!(eps > 0.0) || !(L > eps)) throw DomainError("shooting: need 0 < eps < L");
    if (!(log_step > 0.0)) throw DomainError("shooting: log step must be positive");
    return static_cast<int>(std::ceil((std::log(L / eps) + (L - eps) / c) / log_step));
}

// Crossover length of the grid map: the shorter of 1/p and the decay length
// at the deepest energy considered.
double map_length(const PhysParams& params, double e_lo) {
    const double decay = std::sqrt(2.0 * params.mass * std::abs(e_lo)) / params.hbar;
    return 1.0 / std::max(params.p(), decay);
}

// Decaying solution shot inward from L to a matching index m with r_m ~ c,
// split there against the discrete solutions started from the local pair
// (g, f) at eps. The split uses Casoratians y_m z_{m+1} - y_{m+1} z_m, which
// are exact invariants of the recurrence; matching near the origin instead
// would read phitilde off a subdominant component.
struct InwardGrid {
    LogGrid g;
    std::vector<double> w_rev, b_rev;
    int m;
};

InwardGrid make_inward(const PhysParams& params, double eps, double L, double c, int n) {
    if (n < 8) throw DomainError("shooting: grid too coarse");
    InwardGrid ig{make_log_grid(0.5, params.p(), eps, L, n, c), {}, {}, 0};
    ig.w_rev.assign(ig.g.w.rbegin(), ig.g.w.rend());
    ig.b_rev.assign(ig.g.b.rbegin(), ig.g.b.rend());
    int m = 2;
    while (m < n - 3 && ig.g.r[m] < c) ++m;
    ig.m = m;
    return ig;
}

void fit_inward(const PhysParams& params, const InwardGrid& ig, const double* energies,
                RobinData* out, int count, Isa isa) {
    const int n = static_cast<int>(ig.g.r.size()) - 1;
    const int m = ig.m;
    const double k2 = 2.0 * params.mass / (params.hbar * params.hbar);
    const double h2 = ig.g.h * ig.g.h;

    double lam[kLanes] = {};
    ShootState dec[kLanes];
    // Lanes 2k and 2k+1 carry g and f for energy k.
    double lam2[2 * kLanes] = {};
    ShootState loc[2 * kLanes];
    for (int k = 0; k < count; ++k) {
        lam[k] = k2 * energies[k];
        dec[k] = ShootState{0.0, 1.0, 0, 0};
        LocalStart ls = local_start(ig.g, params.p(), params.kappa, lam[k]);
        lam2[2 * k] = lam2[2 * k + 1] = lam[k];
        loc[2 * k] = ShootState{ls.g.v0, ls.g.v1, 0, 0};
        loc[2 * k + 1] = ShootState{ls.f.v0, ls.f.v1, 0, 0};
    }
    // Outward over points 0 .. m+1 ends with (v_m, v_{m+1}); inward over
    // points n .. m ends with (v_{m+1}, v_m).
    ShootGrid outward{ig.g.w.data(), ig.g.b.data(), static_cast<std::size_t>(m + 2), h2};
    kernels::shoot(outward, lam2, loc, 2 * count, isa);
    ShootGrid inward{ig.w_rev.data(), ig.b_rev.data(), static_cast<std::size_t>(n - m + 1), h2};
    kernels::shoot(inward, lam, dec, count, isa);

    for (int k = 0; k < count; ++k) {
        const ShootState& g = loc[2 * k];
        const ShootState& f = loc[2 * k + 1];
        if (g.rescales != 0 || f.rescales != 0) {
            throw ConvergenceError("shooting: local solutions overflowed before matching");
        }
        const double dm = dec[k].v_cur, dm1 = dec[k].v_prev;
        const double gm = g.v_prev, gm1 = g.v_cur, fm = f.v_prev, fm1 = f.v_cur;
        const double cgf = gm * fm1 - gm1 * fm;
        const double phi = (dm * fm1 - dm1 * fm) / cgf;
        const double phit = (gm * dm1 - gm1 * dm) / cgf;
        const double nrm = std::hypot(phi, phit);
        out[k] = {phi / nrm, phit / nrm};
    }
}

int inertia(const Mat2& h) {
    const double a = h(0, 0).real(), d = h(1, 1).real();
    const double mid = 0.5 * (a + d);
    const double rad = std::hypot(0.5 * (a - d), std::abs(h(0, 1)));
    return static_cast<int>(mid - rad < 0.0) + static_cast<int>(mid + rad < 0.0);
}

}  // namespace

HalflineReport shoot_halfline(const PhysParams& params, int l, int dim, RobinData bc, double e_lo,
                              double e_hi, const ShootOptions& opt) {
    params.validate();
    check_bracket(e_lo, e_hi);
    if (dim < 1 || dim > 3) throw DomainError("dim must be 1, 2 or 3");
    if (!(std::hypot(bc.phi0, bc.phitilde0) > 0.0)) throw DomainError("boundary data is zero");
    const double nu = channel_nu(dim, l);
    const bool lc = std::abs(nu - 0.5) < 1e-12;
    const double eps = opt.eps > 0.0 ? opt.eps : default_eps(params);
    const double L = opt.L > 0.0 ? opt.L : default_L(params, e_hi);
    const double c = map_length(params, e_lo);
    const int n0 = steps_for(eps, L, c, opt.log_step);

    std::array<std::vector<double>, 3> e;
    std::array<std::vector<int>, 3> mult;
    for (int k = 0; k < 3; ++k) {
        e[k] = halfline_on_grid(params, nu, lc, bc, eps, L, c, n0 << k, e_lo, e_hi, opt.isa);
        mult[k].assign(e[k].size(), 1);
    }
    return {richardson(e, mult), eps, L, n0};
}

std::vector<double> shoot_eigenvalues_halfline(const PhysParams& params, int l, int dim,
                                               RobinData bc, double eps, double L, double e_lo,
                                               double e_hi) {
    ShootOptions opt;
    opt.eps = eps;
    opt.L = L;
    std::vector<double> out;
    for (const LevelEstimate& lv : shoot_halfline(params, l, dim, bc, e_lo, e_hi, opt).levels) {
        out.push_back(lv.energy);
    }
    return out;
}

RobinData decaying_solution_data(const PhysParams& params, double energy, double eps, double L,
                                 int n, Isa isa) {
    params.validate();
    if (!(energy < 0.0)) throw DomainError("energy must be negative");
    InwardGrid ig = make_inward(params, eps, L, map_length(params, energy), n);
    RobinData out;
    fit_inward(params, ig, &energy, &out, 1, isa);
    return out;
}

CoupledReport shoot_coupled_1d(const Unitary2& u, const PhysParams& params, double e_lo,
                               double e_hi, const ShootOptions& opt) {
    params.validate();
    check_bracket(e_lo, e_hi);
    const double eps = opt.eps > 0.0 ? opt.eps : default_eps(params);
    const double L = opt.L > 0.0 ? opt.L : default_L(params, e_hi);
    const double c = map_length(params, e_lo);
    const int n0 = steps_for(eps, L, c, opt.log_step);

    const cplx i1(0.0, 1.0);
    const Mat2 I = Mat2::Identity();
    const Mat2 B = I - u.matrix();
    const Mat2 C = i1 * (I + u.matrix());
    Mat2 p_adj;
    double best = -1.0;
    for (int k = 0; k < 16; ++k) {
        const double a = std::numbers::pi * k / 16.0;
        Mat2 pm = std::cos(a) * B + std::sin(a) * C;
        const double smin = Eigen::JacobiSVD<Mat2>(pm).singularValues()(1);
        if (smin > best + 1e-12) {
            best = smin;
            p_adj = pm.adjoint();
        }
    }
    // Decaying data (phi, phitilde) on x > 0 mirrors to (phi, -phitilde) on x < 0.
    auto herm = [&](RobinData d) {
        Mat2 h = p_adj * (-d.phitilde0 * B + d.phi0 * C);
        return Mat2(0.5 * (h + h.adjoint()));
    };

    // Scan uniformly in 1/sqrt(-E), which is proportional to tau.
    const double th_lo = 1.0 / std::sqrt(-e_lo), th_hi = 1.0 / std::sqrt(-e_hi);
    const double tau_span =
        params.p() * params.hbar / (2.0 * std::sqrt(2.0 * params.mass)) * (th_hi - th_lo);
    const int n_scan = std::max(400, static_cast<int>(std::ceil(tau_span / 2e-3)));

    std::array<std::vector<double>, 3> levels;
    std::array<std::vector<int>, 3> mults;
    for (int gi = 0; gi < 3; ++gi) {
        InwardGrid ig = make_inward(params, eps, L, c, n0 << gi);
        auto inertia_batch = [&](const double* en, int* out, int m) {
            RobinData d[kLanes];
            fit_inward(params, ig, en, d, m, opt.isa);
            for (int k = 0; k < m; ++k) out[k] = inertia(herm(d[k]));
        };
        std::vector<double> grid(n_scan + 1);
        for (int k = 0; k <= n_scan; ++k) {
            const double th = th_lo + (th_hi - th_lo) * k / n_scan;
            grid[k] = -1.0 / (th * th);
        }
        grid.front() = e_lo;
        grid.back() = e_hi;
        std::vector<int> in(grid.size());
        for (std::size_t k = 0; k < grid.size(); k += kLanes) {
            int m = static_cast<int>(std::min<std::size_t>(kLanes, grid.size() - k));
            inertia_batch(grid.data() + k, in.data() + k, m);
        }
        for (std::size_t k = 1; k < grid.size(); ++k) {
            if (in[k] == in[k - 1]) continue;
            double a = grid[k - 1], b = grid[k];
            int ia = in[k - 1], ib = in[k];
            for (int pass = 0; pass < 80 && b - a > 1e-14 * std::abs(a); ++pass) {
                double e[kLanes];
                int c[kLanes];
                for (int j = 0; j < kLanes; ++j) e[j] = a + (b - a) * (j + 1) / (kLanes + 1.0);
                inertia_batch(e, c, kLanes);
                // Keep the first subinterval over which the inertia moves.
                double na = a, nb = b;
                int ina = ia, inb = ib;
                double prev_e = a;
                int prev_c = ia;
                bool found = false;
                for (int j = 0; j <= kLanes; ++j) {
                    double ej = j < kLanes ? e[j] : b;
                    int cj = j < kLanes ? c[j] : ib;
                    if (cj != prev_c) {
                        na = prev_e;
                        ina = prev_c;
                        nb = ej;
                        inb = cj;
                        found = true;
                        break;
                    }
                    prev_e = ej;
                    prev_c = cj;
                }
                if (!found) break;
                a = na;
                b = nb;
                ia = ina;
                ib = inb;
            }
            levels[gi].push_back(0.5 * (a + b));
            mults[gi].push_back(std::abs(ib - ia));
        }
    }
    return {richardson(levels, mults), eps, L};
}

std::vector<LevelEstimate> shoot_linear_potential(const PhysParams& params, Parity parity,
                                                  int n_levels, Isa isa) {
    params.validate();
    if (n_levels < 1) throw DomainError("n_levels must be >= 1");
    const double k2 = 2.0 * params.mass / (params.hbar * params.hbar);
    const double slope = k2 * params.kappa;
    const double ell = std::cbrt(params.hbar * params.hbar / (2.0 * params.mass * params.kappa));
    const double unit = params.kappa * ell;

    // Upper energy from the semiclassical zero estimate with margin.
    const double e_hi =
        unit * (std::pow(1.5 * std::numbers::pi * (n_levels + 0.5), 2.0 / 3.0) + 2.0);
    const double L = e_hi / params.kappa + 15.0 * ell;
    const double h0 = ell / (40.0 * std::sqrt(1.0 + e_hi / unit));
    const int n0 = static_cast<int>(std::ceil(L / h0));

    std::array<std::vector<double>, 3> e;
    std::array<std::vector<int>, 3> mult;
    for (int gi = 0; gi < 3; ++gi) {
        const int n = n0 << gi;
        const double h = L / n;
        std::vector<double> w(n + 1), b(n + 1, 1.0);
        for (int i = 0; i <= n; ++i) w[i] = slope * i * h;
        ShootGrid sg{w.data(), b.data(), w.size(), h * h};
        CountFn count = [&](const double* energies, std::int64_t* nodes, int m) {
            double lam[kLanes] = {};
            ShootState st[kLanes];
            for (int k = 0; k < m; ++k) {
                lam[k] = k2 * energies[k];
                // Taylor start for phi'' = f phi with f = slope x - lam.
                const double f0 = -lam[k], f1 = slope;
                if (parity == Parity::Even) {
                    st[k].v_prev = 1.0;
                    st[k].v_cur = 1.0 + h * h * f0 / 2.0 + h * h * h * f1 / 6.0 +
                                  h * h * h * h * f0 * f0 / 24.0;
                } else {
                    st[k].v_prev = 0.0;
                    st[k].v_cur = h + f0 * h * h * h / 6.0 + f1 * h * h * h * h / 12.0;
                }
            }
            kernels::shoot(sg, lam, st, m, isa);
            for (int k = 0; k < m; ++k) nodes[k] = st[k].nodes;
        };
        std::vector<double> all = count_transitions(count, 0.0, e_hi);
        if (static_cast<int>(all.size()) < n_levels) {
            throw BracketError("shoot_linear_potential: energy window holds too few levels");
        }
        all.resize(n_levels);
        e[gi] = all;
        mult[gi].assign(n_levels, 1);
    }
    return richardson(e, mult);
}

}  // namespace coulomb::oracle
