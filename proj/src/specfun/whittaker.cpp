#include "coulomb/specfun.hpp"

#include "coulomb/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace coulomb {
namespace {

constexpr double kEps = 2.220446049250313e-16;
constexpr double kAsymSwitch = 30.0;
constexpr double kSmallZ = 2.0;

bool near_integer(double x, double tol) { return std::abs(x - std::round(x)) <= tol; }

// Real large-z expansion of W together with its derivative.
struct AsymReal {
    double log_prefactor;  // W = exp(log_prefactor) * (s, ds)
    double s;
    double ds;
    double rel_err;
};

AsymReal asymptotic_real(double tau, double mu, double z) {
    const double p = 0.5 + mu - tau;
    const double q = 0.5 - mu - tau;
    double term = 1.0, sum = 1.0, dsum = 0.0;
    double prev = 1.0, last = 0.0;
    for (int k = 0; k < 400; ++k) {
        double next = -term * (p + k) * (q + k) / ((k + 1) * z);
        double mag = std::abs(next);
        if (mag == 0.0) {
            last = 0.0;
            break;
        }
        if (k > 0 && mag > prev) {
            last = prev;
            break;
        }
        sum += next;
        dsum += -(k + 1) * next / z;
        term = next;
        prev = mag;
        last = mag;
        if (mag < 1e-18 * std::abs(sum)) break;
    }
    // d/dz [e^{-z/2} z^tau S] = e^{-z/2} z^tau [(-1/2 + tau/z) S + S']
    double ds = (-0.5 + tau / z) * sum + dsum;
    double rel = last / std::max(std::abs(sum), 1e-300);
    return {-0.5 * z + tau * std::log(z), sum, ds, rel};
}

}  // namespace

namespace detail {

Series whittaker_w_asymptotic(cplx tau, double mu, cplx z) {
    const cplx p = 0.5 + mu - tau;
    const cplx q = 0.5 - mu - tau;
    cplx term = 1.0, sum = 1.0;
    double prev = 1.0, last = 0.0;
    for (int k = 0; k < 400; ++k) {
        cplx next = -term * (p + static_cast<double>(k)) * (q + static_cast<double>(k)) /
                    (static_cast<double>(k + 1) * z);
        double mag = std::abs(next);
        if (mag == 0.0) {
            last = 0.0;
            break;
        }
        if (k > 0 && mag > prev) {
            last = prev;
            break;
        }
        sum += next;
        term = next;
        prev = mag;
        last = mag;
        if (mag < 1e-18 * std::abs(sum)) break;
    }
    cplx pref = std::exp(-0.5 * z + tau * std::log(z));
    cplx value = pref * sum;
    double err = std::abs(pref) * (last + 8.0 * kEps * std::abs(sum));
    return {value, err, std::isfinite(std::abs(value))};
}

Series whittaker_w_log_series(cplx tau, int n, cplx z) {
    const double mu = 0.5 * n;
    const cplx a = mu - tau + 0.5;
    cplx u = 0.0;
    double uabs = 0.0;

    bool a_nonpos_int = a.imag() == 0.0 && a.real() <= 0.0 && a.real() == std::round(a.real());
    if (a_nonpos_int) {
        // U(-m, b, z) = (-1)^m (b)_m M(-m, b, z), a polynomial.
        const int m = static_cast<int>(-a.real());
        const double b = n + 1.0;
        double poch = 1.0;
        for (int k = 0; k < m; ++k) poch *= (b + k);
        cplx term = 1.0, sum = 1.0;
        double sabs = 1.0;
        for (int k = 0; k < m; ++k) {
            term *= (static_cast<double>(k - m)) / ((b + k) * (k + 1.0)) * z;
            sum += term;
            sabs += std::abs(term);
        }
        double sign = (m % 2 == 0) ? 1.0 : -1.0;
        u = sign * poch * sum;
        uabs = poch * sabs;
    } else {
        // Finite principal part, present for n >= 1.
        if (n >= 1) {
            double fact = 1.0;  // (n-1)!
            for (int k = 2; k <= n - 1; ++k) fact *= k;
            cplx rga = rgamma_c(a);
            cplx term = std::pow(z, -static_cast<double>(n));
            cplx part = term;
            double pabs = std::abs(term);
            for (int k = 0; k < n - 1; ++k) {
                term *= (a - static_cast<double>(n) + static_cast<double>(k)) /
                        ((1.0 - n + k) * (k + 1.0)) * z;
                part += term;
                pabs += std::abs(term);
            }
            u += fact * rga * part;
            uabs += fact * std::abs(rga) * pabs;
        }
        // Logarithmic series.
        cplx rg = rgamma_c(a - static_cast<double>(n));
        if (rg != 0.0) {
            double nfact = 1.0;
            for (int k = 2; k <= n; ++k) nfact *= k;
            const double sign = (n % 2 == 0) ? -1.0 : 1.0;  // (-1)^{n+1}
            const double euler = 0.57721566490153286061;
            cplx lz = std::log(z);
            cplx psi_a = digamma_c(a);
            double psi_1k = -euler;  // psi(1 + k)
            double psi_nk = -euler;  // psi(n + 1 + k)
            for (int j = 1; j <= n; ++j) psi_nk += 1.0 / j;
            cplx term = 1.0, sum = 0.0;
            double sabs = 0.0;
            int quiet = 0;
            for (int k = 0; k < 2000; ++k) {
                cplx bracket = lz + psi_a - psi_1k - psi_nk;
                cplx contrib = term * bracket;
                sum += contrib;
                sabs += std::abs(contrib);
                cplx ak = a + static_cast<double>(k);
                if (std::abs(contrib) <= 1e-18 * std::abs(sum) && k > 2) {
                    if (++quiet >= 3) break;
                } else {
                    quiet = 0;
                }
                term *= ak / ((n + 1.0 + k) * (k + 1.0)) * z;
                psi_a += 1.0 / ak;
                psi_1k += 1.0 / (k + 1.0);
                psi_nk += 1.0 / (n + 1.0 + k);
            }
            u += sign / nfact * rg * sum;
            uabs += std::abs(rg) / nfact * sabs;
        }
    }
    cplx pref = std::exp(-0.5 * z) * std::pow(z, mu + 0.5);
    cplx value = pref * u;
    double err = std::abs(pref) * uabs * kEps * 32.0;
    return {value, err, std::isfinite(std::abs(value))};
}

WhittakerPair whittaker_w_ode(double tau, double mu, double z) {
    double z0 = 40.0;
    AsymReal seed = asymptotic_real(tau, mu, z0);
    while (seed.rel_err > 1e-15 && z0 < 4000.0) {
        z0 *= 1.25;
        seed = asymptotic_real(tau, mu, z0);
    }
    if (seed.rel_err > 1e-10) throw ConvergenceError("whittaker_w: asymptotic seed failed");
    seed.rel_err += 8.0 * kEps;
    if (z >= z0) {
        AsymReal at = asymptotic_real(tau, mu, z);
        double pf = std::exp(at.log_prefactor);
        return {pf * at.s, pf * at.ds, pf * std::abs(at.s) * (at.rel_err + 8.0 * kEps)};
    }

    const double c = mu * mu - 0.25;
    double zc = z0;
    double y = seed.s, dy = seed.ds;
    double log_scale = seed.log_prefactor;
    double peak = std::abs(y);
    int steps = 0;
    while (zc > z) {
        double h = -std::min({1.5, 0.5 * zc, zc - z});
        if (zc + h - z < 1e-14 * z) h = z - zc;
        const double A = 0.25 * zc * zc - tau * zc + c;
        const double B = 0.5 * zc - tau;
        const double zc2 = zc * zc;
        // b_k = a_k h^k for the Taylor coefficients a_k of W about zc.
        double bm2 = 0.0, bm1 = 0.0;
        double b0 = y, b1 = dy * h;
        double val = b0 + b1, der = b1;
        int quiet = 0;
        for (int k = 0; k < 600; ++k) {
            double next = (h * h * (A * b0 + B * h * bm1 + 0.25 * h * h * bm2) -
                           2.0 * zc * (k + 1.0) * k * h * b1 - k * (k - 1.0) * h * h * b0) /
                          (zc2 * (k + 2.0) * (k + 1.0));
            val += next;
            der += (k + 2.0) * next;
            bm2 = bm1;
            bm1 = b0;
            b0 = b1;
            b1 = next;
            double scale = std::abs(val) + std::abs(der);
            if (std::abs(next) * (k + 3.0) <= 1e-19 * scale && k > 4) {
                if (++quiet >= 3) break;
            } else {
                quiet = 0;
            }
        }
        y = val;
        dy = der / h;
        zc += h;
        ++steps;
        double mag = std::max(std::abs(y), std::abs(dy));
        if (mag > 1e100) {
            y *= 1e-100;
            dy *= 1e-100;
            peak *= 1e-100;
            log_scale += 100.0 * std::log(10.0);
        }
        peak = std::max(peak, std::abs(y));
    }
    double pf = std::exp(log_scale);
    double err = pf * peak * (seed.rel_err + 4.0 * kEps * (steps + 4));
    return {pf * y, pf * dy, err};
}

Series whittaker_m_complex(cplx tau, double mu, cplx z) {
    const cplx a = mu - tau + 0.5;
    const double b = 1.0 + 2.0 * mu;
    SpecFunResult m = kummer_m(a, b, z);
    cplx pref = std::exp(-0.5 * z) * std::pow(z, mu + 0.5);
    return {pref * m.value, std::abs(pref) * m.abs_err_estimate, true};
}

}  // namespace detail

SpecFunResult whittaker_m(double tau, double mu, double z) {
    if (!(z > 0.0)) throw DomainError("whittaker_m: z must be positive");
    double b = 1.0 + 2.0 * mu;
    if (b <= 0.0 && b == std::round(b)) throw PoleError("whittaker_m: 1+2mu is a nonpositive integer");
    double a = mu - tau + 0.5;
    bool polynomial = a <= 0.0 && a == std::round(a);
    if (z > 650.0 && !polynomial) {
        // Dominant term only; the recessive part is below double precision here.
        double p = 0.5 - mu + tau;
        double q = 0.5 + mu + tau;
        double term = 1.0, sum = 1.0, prev = 1.0, last = 0.0;
        for (int k = 0; k < 400; ++k) {
            double next = term * (p + k) * (q + k) / ((k + 1) * z);
            if (std::abs(next) > prev && k > 0) break;
            sum += next;
            term = next;
            prev = last = std::abs(next);
            if (last < 1e-18 * std::abs(sum)) break;
        }
        double lg = 0.5 * z - tau * std::log(z);
        double v = gamma_fn(b).real() * rgamma(a) * std::exp(lg) * sum;
        if (!std::isfinite(v)) throw ConvergenceError("whittaker_m: overflow");
        return {v, std::abs(v) * (last + 1e-14)};
    }
    SpecFunResult m = kummer_m(a, b, z);
    if (std::abs(m.value.imag()) > 1e-12 * std::max(std::abs(m.value), 1e-300)) {
        throw ConvergenceError("whittaker_m: imaginary residue on real axis");
    }
    double pref = std::exp(-0.5 * z) * std::pow(z, mu + 0.5);
    return {pref * m.value.real(), pref * m.abs_err_estimate};
}

WhittakerPair whittaker_w_pair(double tau, double mu, double z) {
    if (!(z > 0.0)) throw DomainError("whittaker_w: z must be positive");
    return detail::whittaker_w_ode(tau, std::abs(mu), z);
}

SpecFunResult whittaker_w(double tau, double mu, double z) {
    if (!(z > 0.0)) throw DomainError("whittaker_w: z must be positive");
    mu = std::abs(mu);

    if (z >= kAsymSwitch) {
        detail::Series s = detail::whittaker_w_asymptotic(tau, mu, z);
        if (s.converged && s.abs_err <= 1e-14 * std::abs(s.value)) {
            return {s.value.real(), s.abs_err};
        }
    }

    if (z <= kSmallZ) {
        const double two_mu = 2.0 * mu;
        if (near_integer(two_mu, 1e-12)) {
            detail::Series s =
                detail::whittaker_w_log_series(tau, static_cast<int>(std::round(two_mu)), z);
            if (std::abs(s.value.imag()) > 1e-12 * std::max(std::abs(s.value), 1e-300)) {
                throw ConvergenceError("whittaker_w: imaginary residue on real axis");
            }
            if (s.converged) return {s.value.real(), s.abs_err};
        } else if (!near_integer(two_mu, 1e-3)) {
            // W = Gamma(-2mu)/Gamma(1/2-mu-tau) M_{tau,mu} + Gamma(2mu)/Gamma(1/2+mu-tau) M_{tau,-mu}
            SpecFunResult mp = whittaker_m(tau, mu, z);
            SpecFunResult mm = whittaker_m(tau, -mu, z);
            double c1 = gamma_fn(-two_mu).real() * rgamma(0.5 - mu - tau);
            double c2 = gamma_fn(two_mu).real() * rgamma(0.5 + mu - tau);
            double v = c1 * mp.real() + c2 * mm.real();
            double err = std::abs(c1) * mp.abs_err_estimate + std::abs(c2) * mm.abs_err_estimate +
                         kEps * 16.0 * (std::abs(c1 * mp.real()) + std::abs(c2 * mm.real()));
            return {v, err};
        }
    }

    WhittakerPair w = detail::whittaker_w_ode(tau, mu, z);
    return {w.value, w.abs_err_estimate};
}

}  // namespace coulomb
