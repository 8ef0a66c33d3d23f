#include "coulomb/specfun.hpp"

#include "coulomb/errors.hpp"

#include <cmath>
#include <numbers>

namespace coulomb {
namespace {

constexpr double kEps = 2.220446049250313e-16;
constexpr double kSwitch = 30.0;
constexpr double kTarget = 1e-13;

bool nonpositive_integer(cplx z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

// Terms of sum_k (p)_k (q)_k / k! * x^k, truncated at the smallest term.
struct AsymSum {
    cplx value;
    double last_term;
};

AsymSum asymptotic_sum(cplx p, cplx q, cplx x) {
    cplx sum = 1.0, term = 1.0;
    double prev = 1.0;
    for (int k = 0; k < 400; ++k) {
        cplx next = term * (p + static_cast<double>(k)) * (q + static_cast<double>(k)) * x /
                    static_cast<double>(k + 1);
        double mag = std::abs(next);
        if (mag == 0.0) return {sum, 0.0};
        if (mag > prev && k > 0) return {sum, prev};
        sum += next;
        term = next;
        prev = mag;
        if (mag < 1e-17 * std::abs(sum)) return {sum, mag};
    }
    return {sum, prev};
}

}  // namespace

namespace detail {

Series kummer_series(cplx a, cplx b, cplx z) {
    cplx sum = 1.0, term = 1.0;
    double sumabs = 1.0;
    int quiet = 0;
    for (int k = 0; k < 20000; ++k) {
        cplx ak = a + static_cast<double>(k);
        if (ak == 0.0) return {sum, kEps * sumabs * 4.0, true};
        term *= ak / (b + static_cast<double>(k)) * z / static_cast<double>(k + 1);
        sum += term;
        double mag = std::abs(term);
        sumabs += mag;
        if (!std::isfinite(sumabs)) return {sum, HUGE_VAL, false};
        // Past the hump the ratio is below 1; require a few quiet terms.
        double ratio = std::abs(ak * z) / (std::abs(b + static_cast<double>(k)) * (k + 1));
        if (mag <= 1e-17 * std::abs(sum) && ratio < 0.9) {
            if (++quiet >= 3) {
                double err = kEps * sumabs * (4.0 + std::sqrt(static_cast<double>(k))) + mag;
                return {sum, err, true};
            }
        } else {
            quiet = 0;
        }
    }
    return {sum, HUGE_VAL, false};
}

// DLMF 13.7.2 with the exponential factor of the recessive part chosen by the
// half plane of z.
Series kummer_asymptotic(cplx a, cplx b, cplx z) {
    const cplx i(0.0, 1.0);
    cplx gb = gamma_c(b);
    AsymSum s1 = asymptotic_sum(b - a, 1.0 - a, 1.0 / z);
    AsymSum s2 = asymptotic_sum(a, a - b + 1.0, -1.0 / z);
    cplx phase;
    if (z.imag() > 0.0) {
        phase = std::exp(i * std::numbers::pi * a);
    } else if (z.imag() < 0.0) {
        phase = std::exp(-i * std::numbers::pi * a);
    } else {
        phase = std::cos(std::numbers::pi * a);
    }
    cplx t1 = gb * rgamma_c(a) * std::exp(z) * std::pow(z, a - b);
    cplx t2 = gb * rgamma_c(b - a) * phase * std::pow(z, -a);
    cplx value = t1 * s1.value + t2 * s2.value;
    double err = std::abs(t1) * s1.last_term + std::abs(t2) * s2.last_term +
                 kEps * 16.0 * (std::abs(t1 * s1.value) + std::abs(t2 * s2.value)) *
                     (1.0 + std::abs(a) + std::abs(b));
    bool ok = std::isfinite(value.real()) && std::isfinite(value.imag());
    return {value, err, ok};
}

}  // namespace detail

SpecFunResult kummer_m(cplx a, cplx b, cplx z) {
    if (nonpositive_integer(b)) throw PoleError("kummer_m: b is a nonpositive integer");
    if (z == 0.0) return {1.0, 0.0};

    // Kummer's transformation keeps the argument in the right half plane.
    cplx factor = 1.0;
    if (z.real() < 0.0) {
        factor = std::exp(z);
        a = b - a;
        z = -z;
    }

    double az = std::abs(z);
    bool polynomial = nonpositive_integer(a);
    double cancel = az - z.real();
    if (az <= kSwitch || polynomial || (cancel < 9.0 && az < 650.0)) {
        detail::Series s = detail::kummer_series(a, b, z);
        if (!s.converged) throw ConvergenceError("kummer_m: power series did not converge");
        if (s.abs_err > kTarget * std::abs(s.value) && az > kSwitch && !polynomial) {
            detail::Series t = detail::kummer_asymptotic(a, b, z);
            if (t.converged && t.abs_err < s.abs_err) s = t;
        }
        return {factor * s.value, std::abs(factor) * s.abs_err};
    }

    detail::Series t = detail::kummer_asymptotic(a, b, z);
    if (!t.converged || t.abs_err > 1e-10 * std::abs(t.value)) {
        if (cancel < 25.0 && az < 650.0) {
            detail::Series s = detail::kummer_series(a, b, z);
            if (s.converged && (!t.converged || s.abs_err < t.abs_err)) t = s;
        }
    }
    if (!t.converged || !(t.abs_err <= 1e-6 * std::abs(t.value))) {
        throw ConvergenceError("kummer_m: neither series nor asymptotic expansion converged");
    }
    return {factor * t.value, std::abs(factor) * t.abs_err};
}

}  // namespace coulomb
