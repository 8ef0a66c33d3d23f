#include "coulomb/oracle.hpp"

#include "coulomb/errors.hpp"

#include <cmath>
#include <functional>
#include <numbers>

namespace coulomb::oracle {
namespace {

constexpr int kWindows = 8;
constexpr double kFraction = 0.1;

struct GaussLegendre {
    std::vector<double> x, w;  // on [-1, 1]
};

const GaussLegendre& gauss_legendre_24() {
    static const GaussLegendre gl = [] {
        const int n = 24;
        GaussLegendre g;
        g.x.resize(n);
        g.w.resize(n);
        for (int i = 0; i < n; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            g.x[i] = x;
            g.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        return g;
    }();
    return gl;
}

double integrate(const std::function<double(double)>& f, double a, double b) {
    const GaussLegendre& gl = gauss_legendre_24();
    const double c = 0.5 * (a + b), hw = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < gl.x.size(); ++i) s += gl.w[i] * f(c + hw * gl.x[i]);
    return hw * s;
}

Trend classify(const std::vector<double>& inc, double baseline, const std::string& what) {
    bool all_large = true, all_small = true, decreasing = true;
    for (int k = kWindows - 4; k < kWindows; ++k) {
        if (!(inc[k] >= kFraction * baseline)) all_large = false;
        if (!(inc[k] < kFraction * baseline)) all_small = false;
        if (k > kWindows - 4 && !(inc[k] < inc[k - 1])) decreasing = false;
    }
    if (all_large) return Trend::Divergent;
    if (all_small && decreasing) return Trend::Convergent;
    throw InconclusiveError("integrability: no clear trend for " + what);
}

struct Solutions {
    cplx s, tau;
    double mu;
    cplx m(double r) const { return detail::whittaker_m_complex(tau, mu, s * r).value; }
    cplx w_small(double r) const {
        return detail::whittaker_w_log_series(tau, static_cast<int>(std::lround(2 * mu)), s * r)
            .value;
    }
    cplx w_large(double r) const { return detail::whittaker_w_asymptotic(tau, mu, s * r).value; }
};

std::vector<IntegralTrend> trends_at(const PhysParams& params, cplx energy, double mu) {
    const double k2 = 2.0 * params.mass / (params.hbar * params.hbar);
    cplx s = std::sqrt(-4.0 * k2 * energy);
    if (s.real() < 0.0) s = -s;
    Solutions sol{s, params.p() / s, mu};

    std::vector<IntegralTrend> out;
    const double c0 = 0.5 / std::abs(s);
    const double c_inf = 40.0 / std::abs(s);
    const double delta = 5.0 / s.real();
    for (char which : {'M', 'W'}) {
        // Near the origin, decade windows integrated in t = ln r.
        auto near = [&](double r) {
            cplx u = which == 'M' ? sol.m(r) : sol.w_small(r);
            return std::norm(u);
        };
        std::vector<double> inc;
        for (int k = 1; k <= kWindows; ++k) {
            const double ta = std::log(c0) - k * std::log(10.0);
            const double tb = ta + std::log(10.0);
            inc.push_back(integrate([&](double t) { return near(std::exp(t)) * std::exp(t); }, ta, tb));
        }
        std::string tag = std::string(1, which) + " near 0, mu=" + std::to_string(mu);
        out.push_back({which, true, inc[0], inc, classify(inc, inc[0], tag)});

        auto far = [&](double r) {
            cplx u = which == 'M' ? sol.m(r) : sol.w_large(r);
            return std::norm(u);
        };
        inc.clear();
        for (int k = 1; k <= kWindows; ++k) {
            const double a = c_inf + (k - 1) * delta;
            inc.push_back(integrate(far, a, a + delta));
        }
        tag = std::string(1, which) + " near infinity, mu=" + std::to_string(mu);
        out.push_back({which, false, inc[0], inc, classify(inc, inc[0], tag)});
    }
    return out;
}

bool both_convergent(const std::vector<IntegralTrend>& t, bool at_origin) {
    int n = 0;
    for (const IntegralTrend& it : t) {
        if (it.at_origin == at_origin && it.trend == Trend::Convergent) ++n;
    }
    return n == 2;
}

}  // namespace

ChannelEvidence integrability_evidence(const PhysParams& params, int dim, int l) {
    params.validate();
    if (dim < 1 || dim > 3) throw DomainError("dim must be 1, 2 or 3");
    if (dim == 1 && l != 0) throw DomainError("dim 1 has no angular momentum");
    if (dim == 3 && l < 0) throw DomainError("l must be >= 0 in 3D");
    const double mu = dim == 1 ? 0.5 : dim == 2 ? std::abs(l) : l + 0.5;

    ChannelEvidence ev{dim, l, mu, cplx(0.0, 1.0), {}, {}, false, false, 0};
    const double k2 = 2.0 * params.mass / (params.hbar * params.hbar);
    cplx s = std::sqrt(-4.0 * k2 * ev.energy);
    if (s.real() < 0.0) s = -s;
    ev.tau = params.p() / s;
    ev.trends = trends_at(params, ev.energy, mu);
    ev.limit_circle_at_origin = both_convergent(ev.trends, true);
    ev.limit_circle_at_infinity = both_convergent(ev.trends, false);

    // The conjugate energy must give the same picture.
    std::vector<IntegralTrend> conj = trends_at(params, std::conj(ev.energy), mu);
    if (both_convergent(conj, true) != ev.limit_circle_at_origin ||
        both_convergent(conj, false) != ev.limit_circle_at_infinity) {
        throw InconclusiveError("integrability: E = i and E = -i disagree");
    }
    ev.index_contribution =
        static_cast<int>(ev.limit_circle_at_origin) + static_cast<int>(ev.limit_circle_at_infinity);
    return ev;
}

DeficiencySummary deficiency_index(const PhysParams& params, int dim, bool origin_removed) {
    DeficiencySummary out{dim, origin_removed, true, 0, {}};
    if (dim == 1) {
        // Two half-lines with the same radial equation.
        ChannelEvidence ev = integrability_evidence(params, 1, 0);
        out.index = 2 * ev.index_contribution;
        out.channels.push_back(ev);
    } else if (dim == 2) {
        for (int l = -3; l <= 3; ++l) {
            ChannelEvidence ev = integrability_evidence(params, 2, l);
            out.index += ev.index_contribution;
            out.channels.push_back(ev);
        }
    } else if (dim == 3) {
        for (int l = 0; l <= 3; ++l) {
            ChannelEvidence ev = integrability_evidence(params, 3, l);
            out.index += (2 * l + 1) * ev.index_contribution;
            out.channels.push_back(ev);
        }
        if (!origin_removed) {
            // With the origin kept the operator is essentially self-adjoint on
            // its natural domain; no channel computation applies.
            out.computed = false;
            out.index = 0;
        }
    } else {
        throw DomainError("dim must be 1, 2 or 3");
    }
    return out;
}

}  // namespace coulomb::oracle
