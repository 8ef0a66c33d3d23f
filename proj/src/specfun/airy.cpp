#include "coulomb/specfun.hpp"

#include "coulomb/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

namespace coulomb {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = 2.220446049250313e-16;
constexpr double kAsym = 9.0;

struct AiryValue {
    double ai;
    double aip;
    double err_ai;
    double err_aip;
};

// Sums sum_k (-1)^k c_k / x^k for the u_k and v_k sequences, truncated at
// the smallest term. sign_alt selects (-1)^k; odd/even restrict the index.
struct UVSums {
    double u_all, v_all;        // alternating over all k
    double u_even, u_odd;       // for the oscillatory forms: (-1)^k u_{2k}, (-1)^k u_{2k+1}
    double v_even, v_odd;
    double tail;
};

UVSums uv_sums(double zeta) {
    UVSums s{1.0, 1.0, 1.0, 0.0, 1.0, 0.0, 0.0};
    double u = 1.0;
    double xk = 1.0;
    double prev = 1.0;
    for (int k = 1; k < 200; ++k) {
        u *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / ((2.0 * k - 1.0) * 216.0 * k);
        double v = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * u;
        xk /= zeta;
        double tu = u * xk, tv = v * xk;
        double mag = std::max(std::abs(tu), std::abs(tv));
        if (mag > prev) break;
        prev = mag;
        double alt = (k % 2 == 0) ? 1.0 : -1.0;
        s.u_all += alt * tu;
        s.v_all += alt * tv;
        int half = k / 2;
        double alt_half = (half % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 0) {
            s.u_even += alt_half * tu;
            s.v_even += alt_half * tv;
        } else {
            s.u_odd += alt_half * tu;
            s.v_odd += alt_half * tv;
        }
        if (mag < 1e-18) break;
    }
    s.tail = prev;
    return s;
}

AiryValue asymptotic_positive(double t) {
    double zeta = 2.0 / 3.0 * t * std::sqrt(t);
    UVSums s = uv_sums(zeta);
    double q = std::pow(t, 0.25);
    double e = std::exp(-zeta) / (2.0 * std::sqrt(kPi));
    double ai = e / q * s.u_all;
    double aip = -e * q * s.v_all;
    double rel = s.tail + 16.0 * kEps;
    return {ai, aip, std::abs(ai) * rel, std::abs(aip) * rel};
}

AiryValue asymptotic_negative(double t) {
    double x = -t;
    double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    UVSums s = uv_sums(zeta);
    double q = std::pow(x, 0.25);
    double ph = zeta - 0.25 * kPi;
    double c = std::cos(ph), sn = std::sin(ph);
    double ai = (c * s.u_even + sn * s.u_odd) / (std::sqrt(kPi) * q);
    double aip = q / std::sqrt(kPi) * (sn * s.v_even - c * s.v_odd);
    // Phase error grows with zeta through the rounding of zeta itself.
    double rel = s.tail + 16.0 * kEps * (1.0 + zeta);
    return {ai, aip, rel / (std::sqrt(kPi) * q), rel * q / std::sqrt(kPi)};
}

// Taylor continuation of y'' = t y from (t0, y, y') to t1.
AiryValue taylor_walk(double t0, double y, double dy, double t1, double seed_rel) {
    double tc = t0;
    int steps = 0;
    double peak = std::max(std::abs(y), std::abs(dy));
    while (tc != t1) {
        double h = t1 - tc;
        if (std::abs(h) > 0.5) h = std::copysign(0.5, h);
        double bm1 = 0.0, b0 = y, b1 = dy * h;
        double val = b0 + b1, der = b1;
        for (int k = 0; k < 200; ++k) {
            double next = h * h * (tc * b0 + h * bm1) / ((k + 2.0) * (k + 1.0));
            val += next;
            der += (k + 2.0) * next;
            bm1 = b0;
            b0 = b1;
            b1 = next;
            if (k > 4 && std::abs(next) < 1e-19 * (std::abs(val) + std::abs(der)) &&
                std::abs(b0) < 1e-17 * (std::abs(val) + std::abs(der)))
                break;
        }
        y = val;
        dy = der / h;
        tc = (std::abs(t1 - (tc + h)) < 1e-15) ? t1 : tc + h;
        ++steps;
        peak = std::max({peak, std::abs(y), std::abs(dy)});
    }
    double err = peak * (seed_rel + 4.0 * kEps * (steps + 2));
    return {y, dy, err, err};
}

AiryValue airy_eval(double t) {
    if (!std::isfinite(t)) throw DomainError("airy: argument must be finite");
    if (t >= kAsym) return asymptotic_positive(t);
    if (t <= -kAsym) return asymptotic_negative(t);
    if (t <= 0.0) {
        const double ai0 = 1.0 / (std::pow(3.0, 2.0 / 3.0) * gamma_fn(2.0 / 3.0).real());
        const double aip0 = -1.0 / (std::pow(3.0, 1.0 / 3.0) * gamma_fn(1.0 / 3.0).real());
        if (t == 0.0) return {ai0, aip0, 4.0 * kEps * ai0, 4.0 * kEps * std::abs(aip0)};
        return taylor_walk(0.0, ai0, aip0, t, 4.0 * kEps);
    }
    // Ai is the growing solution inward, so walking down from the asymptotic
    // region is stable.
    AiryValue seed = asymptotic_positive(kAsym);
    double rel = seed.err_ai / std::abs(seed.ai);
    return taylor_walk(kAsym, seed.ai, seed.aip, t, rel);
}

double zero_guess(int n, AiryKind which) {
    if (which == AiryKind::Ai) {
        double t = 3.0 * kPi / 8.0 * (4.0 * n - 1.0);
        double t2 = 1.0 / (t * t);
        return -std::pow(t, 2.0 / 3.0) * (1.0 + 5.0 / 48.0 * t2 - 5.0 / 36.0 * t2 * t2);
    }
    double t = 3.0 * kPi / 8.0 * (4.0 * n - 3.0);
    double t2 = 1.0 / (t * t);
    return -std::pow(t, 2.0 / 3.0) * (1.0 - 7.0 / 48.0 * t2 + 35.0 / 288.0 * t2 * t2);
}

}  // namespace

SpecFunResult airy_ai(double t) {
    AiryValue v = airy_eval(t);
    return {v.ai, v.err_ai};
}

SpecFunResult airy_ai_prime(double t) {
    AiryValue v = airy_eval(t);
    return {v.aip, v.err_aip};
}

double airy_zero(int n, AiryKind which) {
    if (n < 1) throw DomainError("airy_zero: n must be >= 1");
    auto f = [which](double t) {
        AiryValue v = airy_eval(t);
        return which == AiryKind::Ai ? v.ai : v.aip;
    };
    double guess = zero_guess(n, which);
    double half = 0.25 * kPi / std::sqrt(std::abs(guess));
    double lo = 0.0, hi = 0.0, flo = 0.0, fhi = 0.0;
    bool bracketed = false;
    for (int attempt = 0; attempt < 4 && !bracketed; ++attempt) {
        lo = guess - half;
        hi = std::min(guess + half, -1e-3);
        flo = f(lo);
        fhi = f(hi);
        bracketed = (flo < 0.0) != (fhi < 0.0);
        half *= 1.5;
    }
    if (!bracketed) throw ConvergenceError("airy_zero: failed to bracket the zero");
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (hi - lo <= 2.0 * kEps * std::abs(mid)) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace coulomb
