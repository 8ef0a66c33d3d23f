#pragma once

#include <complex>

namespace coulomb {

using cplx = std::complex<double>;

struct SpecFunResult {
    cplx value;
    double abs_err_estimate = 0.0;

    double real() const { return value.real(); }
};

// Confluent hypergeometric M(a, b, z) = 1F1(a; b; z).
SpecFunResult kummer_m(cplx a, cplx b, cplx z);

// Whittaker functions, real parameters, z > 0.
SpecFunResult whittaker_m(double tau, double mu, double z);
SpecFunResult whittaker_w(double tau, double mu, double z);

struct WhittakerPair {
    double value;
    double derivative;
    double abs_err_estimate;
};
// W and dW/dz together.
WhittakerPair whittaker_w_pair(double tau, double mu, double z);

SpecFunResult gamma_fn(double x);
SpecFunResult log_gamma(double x);
SpecFunResult digamma(double x);

// 1/Gamma(x); zero at the poles instead of throwing.
double rgamma(double x);
// sin(pi x), cos(pi x) with exact argument reduction.
double sin_pi(double x);
double cos_pi(double x);

SpecFunResult airy_ai(double t);
SpecFunResult airy_ai_prime(double t);

enum class AiryKind { Ai, AiPrime };
double airy_zero(int n, AiryKind which);

// Complex kernels; the real entry points above route through these.
cplx gamma_c(cplx z);
cplx rgamma_c(cplx z);
cplx log_gamma_c(cplx z);
cplx digamma_c(cplx z);

namespace detail {

struct Series {
    cplx value;
    double abs_err;
    bool converged;
};

Series kummer_series(cplx a, cplx b, cplx z);
Series kummer_asymptotic(cplx a, cplx b, cplx z);

// e^{-z/2} z^tau sum_k (1/2+mu-tau)_k (1/2-mu-tau)_k / k! (-z)^{-k}, optimally truncated.
Series whittaker_w_asymptotic(cplx tau, double mu, cplx z);
// Logarithmic small-z expansion, valid for integer n = 2 mu >= 0.
Series whittaker_w_log_series(cplx tau, int two_mu, cplx z);
// Inward Taylor continuation of the Whittaker ODE from the asymptotic region.
WhittakerPair whittaker_w_ode(double tau, double mu, double z);
// Complex Whittaker M for the deficiency-vector evaluations.
Series whittaker_m_complex(cplx tau, double mu, cplx z);

}  // namespace detail

}  // namespace coulomb
