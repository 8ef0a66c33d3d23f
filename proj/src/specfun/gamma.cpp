#include "coulomb/specfun.hpp"

#include "coulomb/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace coulomb {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = 2.220446049250313e-16;

// B_{2k} for k = 1..8
constexpr double kBernoulli[] = {1.0 / 6.0,         -1.0 / 30.0,  1.0 / 42.0,
                                 -1.0 / 30.0,       5.0 / 66.0,   -691.0 / 2730.0,
                                 7.0 / 6.0,         -3617.0 / 510.0};

bool is_nonpositive_integer(cplx z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

cplx sin_pi_c(cplx z) {
    double x = z.real(), y = z.imag();
    double n = std::round(x);
    double r = x - n;
    double sign = std::fmod(n, 2.0) == 0.0 ? 1.0 : -1.0;
    double s = sign * std::sin(kPi * r);
    double c = sign * std::cos(kPi * r);
    return {s * std::cosh(kPi * y), c * std::sinh(kPi * y)};
}

cplx cos_pi_c(cplx z) {
    double x = z.real(), y = z.imag();
    double n = std::round(x);
    double r = x - n;
    double sign = std::fmod(n, 2.0) == 0.0 ? 1.0 : -1.0;
    double s = sign * std::sin(kPi * r);
    double c = sign * std::cos(kPi * r);
    return {c * std::cosh(kPi * y), -s * std::sinh(kPi * y)};
}

// Stirling series for |w| >= 15, Re w > 0.
cplx stirling(cplx w) {
    cplx sum = (w - 0.5) * std::log(w) - w + 0.5 * std::log(2.0 * kPi);
    cplx winv = 1.0 / w;
    cplx wpow = winv;
    cplx winv2 = winv * winv;
    for (int k = 1; k <= 8; ++k) {
        sum += kBernoulli[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * wpow;
        wpow *= winv2;
    }
    return sum;
}

// ln Gamma for Re z >= 0.5 (any branch; only exp() of it is used by callers
// that need the value, and log_gamma() for real x > 0 is real).
cplx log_gamma_right(cplx z) {
    int shift = 0;
    if (z.real() < 15.0) shift = static_cast<int>(std::ceil(15.0 - z.real()));
    cplx prod = 1.0;
    cplx logprod = 0.0;
    for (int k = 0; k < shift; ++k) {
        prod *= (z + static_cast<double>(k));
        if (std::abs(prod) > 1e200) {
            logprod += std::log(prod);
            prod = 1.0;
        }
    }
    logprod += std::log(prod);
    return stirling(z + static_cast<double>(shift)) - logprod;
}

cplx digamma_right(cplx z) {
    cplx acc = 0.0;
    while (z.real() < 10.0) {
        acc -= 1.0 / z;
        z += 1.0;
    }
    cplx winv = 1.0 / z;
    cplx winv2 = winv * winv;
    cplx wpow = winv2;
    cplx sum = std::log(z) - 0.5 * winv;
    for (int k = 1; k <= 8; ++k) {
        sum -= kBernoulli[k - 1] / (2.0 * k) * wpow;
        wpow *= winv2;
    }
    return acc + sum;
}

void check_real_residue(cplx v, const char* name) {
    if (std::abs(v.imag()) > 1e-12 * std::max(std::abs(v), 1e-300)) {
        throw ConvergenceError(std::string(name) + ": imaginary residue on real axis");
    }
}

}  // namespace

double sin_pi(double x) { return sin_pi_c(cplx(x, 0.0)).real(); }
double cos_pi(double x) { return cos_pi_c(cplx(x, 0.0)).real(); }

cplx log_gamma_c(cplx z) {
    if (is_nonpositive_integer(z)) throw PoleError("log_gamma: pole at nonpositive integer");
    if (z.real() < 0.5) {
        return std::log(kPi) - std::log(sin_pi_c(z)) - log_gamma_right(1.0 - z);
    }
    return log_gamma_right(z);
}

cplx gamma_c(cplx z) {
    if (is_nonpositive_integer(z)) throw PoleError("gamma: pole at nonpositive integer");
    if (z.real() < 0.5) {
        return kPi / (sin_pi_c(z) * std::exp(log_gamma_right(1.0 - z)));
    }
    return std::exp(log_gamma_right(z));
}

cplx rgamma_c(cplx z) {
    if (is_nonpositive_integer(z)) return 0.0;
    if (z.real() < 0.5) {
        return sin_pi_c(z) * std::exp(log_gamma_right(1.0 - z)) / kPi;
    }
    return std::exp(-log_gamma_right(z));
}

cplx digamma_c(cplx z) {
    if (is_nonpositive_integer(z)) throw PoleError("digamma: pole at nonpositive integer");
    if (z.real() < 0.5) {
        return digamma_right(1.0 - z) - kPi * cos_pi_c(z) / sin_pi_c(z);
    }
    return digamma_right(z);
}

SpecFunResult gamma_fn(double x) {
    cplx v = gamma_c(cplx(x, 0.0));
    check_real_residue(v, "gamma_fn");
    double lg = std::abs(std::log(std::abs(v.real())));
    return {cplx(v.real(), 0.0), std::abs(v.real()) * kEps * (40.0 + lg)};
}

double rgamma(double x) {
    cplx v = rgamma_c(cplx(x, 0.0));
    check_real_residue(v, "rgamma");
    return v.real();
}

SpecFunResult log_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive");
    cplx v = log_gamma_c(cplx(x, 0.0));
    check_real_residue(v, "log_gamma");
    return {cplx(v.real(), 0.0), kEps * (40.0 + 4.0 * std::abs(v.real()))};
}

SpecFunResult digamma(double x) {
    cplx v = digamma_c(cplx(x, 0.0));
    check_real_residue(v, "digamma");
    double scale = std::abs(std::log(std::abs(x) + 1.0)) + 4.0;
    if (x < 0.5) scale += kPi * std::abs(cos_pi(x) / sin_pi(x)) + 1.0 / std::abs(x);
    return {cplx(v.real(), 0.0), kEps * 20.0 * scale};
}

}  // namespace coulomb
