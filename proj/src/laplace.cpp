#include "coulomb/laplace.hpp"

#include "coulomb/errors.hpp"

#include <cmath>
#include <numbers>

namespace coulomb {

std::string to_string(ParityKind p) { return p == ParityKind::Even ? "even" : "odd"; }

std::vector<ParityEigen> airy_spectrum_1d(const PhysParams& params, int n_max) {
    params.validate();
    if (n_max < 1) throw DomainError("n_max must be >= 1");
    const double ell = std::cbrt(params.hbar * params.hbar / (2.0 * params.mass * params.kappa));
    const double unit = params.kappa * ell;
    std::vector<ParityEigen> out;
    // a'_k and a_k interlace, so levels alternate even, odd, even, ...
    for (int n = 1; n <= n_max; ++n) {
        const int k = (n + 1) / 2;
        const bool even = n % 2 == 1;
        const double z = airy_zero(k, even ? AiryKind::AiPrime : AiryKind::Ai);
        out.push_back({-z * unit, even ? ParityKind::Even : ParityKind::Odd, n, k, 1});
        if (out.size() > 1 && !(out.back().energy > out[out.size() - 2].energy)) {
            throw ConvergenceError("airy_spectrum_1d: zeros failed to interlace");
        }
    }
    return out;
}

double airy_asymptotic(const PhysParams& params, int n) {
    params.validate();
    if (n < 1) throw DomainError("n must be >= 1");
    const double h2 = params.hbar * params.hbar;
    const double inner = params.mass * params.kappa / h2 * 0.75 * std::numbers::pi * (4.0 * n - 3.0);
    return h2 / (2.0 * params.mass) * std::pow(inner, 2.0 / 3.0);
}

std::string to_string(CountingConvention c) {
    switch (c) {
        case CountingConvention::Overall:
            return "overall";
        case CountingConvention::EvenClass:
            return "even-class";
        case CountingConvention::OddClass:
            return "odd-class";
    }
    return "";
}

ConventionCheck check_convention(const PhysParams& params, CountingConvention c,
                                 const std::vector<int>& ns) {
    ConventionCheck out{c, ns, {}, {}, {}, true};
    int n_top = 0;
    for (int n : ns) {
        if (n < 1) throw DomainError("n must be >= 1");
        n_top = std::max(n_top, c == CountingConvention::Overall ? n : 2 * n);
    }
    std::vector<ParityEigen> levels = airy_spectrum_1d(params, n_top);
    for (int n : ns) {
        double exact = 0.0;
        switch (c) {
            case CountingConvention::Overall:
                exact = levels[n - 1].energy;
                break;
            case CountingConvention::EvenClass:
                exact = levels[2 * n - 2].energy;
                break;
            case CountingConvention::OddClass:
                exact = levels[2 * n - 1].energy;
                break;
        }
        const double asym = airy_asymptotic(params, n);
        const double err = std::abs(asym - exact) / exact;
        out.exact.push_back(exact);
        out.asymptotic.push_back(asym);
        out.rel_err.push_back(err);
        if (n >= 20 && !(err < 0.01)) out.below_one_percent = false;
    }
    return out;
}

std::string to_string(Potential v) {
    switch (v) {
        case Potential::Linear:
            return "kappa|x|";
        case Potential::Logarithmic:
            return "kappa*ln|x|";
        case Potential::InverseDistance:
            return "-kappa/|x|";
        case Potential::Coulomb:
            return "coulomb";
    }
    return "";
}

std::string to_string(Domain d) {
    switch (d) {
        case Domain::R1:
            return "R";
        case Domain::R2:
            return "R2";
        case Domain::R3:
            return "R3";
        case Domain::R1Punctured:
            return "R\\{0}";
        case Domain::R2Punctured:
            return "R2\\{0}";
        case Domain::R3Punctured:
            return "R3\\{0}";
    }
    return "";
}

Potential parse_potential(const std::string& s) {
    if (s == "V1" || s == "linear" || s == "kappa|x|") return Potential::Linear;
    if (s == "V2" || s == "log" || s == "kappa*ln|x|") return Potential::Logarithmic;
    if (s == "V3" || s == "-kappa/|x|") return Potential::InverseDistance;
    if (s == "VC" || s == "coulomb") return Potential::Coulomb;
    throw DomainError("unknown potential '" + s + "'");
}

Domain parse_domain(const std::string& s) {
    if (s == "R" || s == "R1") return Domain::R1;
    if (s == "R2") return Domain::R2;
    if (s == "R3") return Domain::R3;
    if (s == "R\\{0}" || s == "R1\\{0}" || s == "R-0" || s == "R1-0") return Domain::R1Punctured;
    if (s == "R2\\{0}" || s == "R2-0") return Domain::R2Punctured;
    if (s == "R3\\{0}" || s == "R3-0") return Domain::R3Punctured;
    throw DomainError("unknown domain '" + s + "'");
}

std::vector<SelfAdjointnessRow> selfadjointness_report() {
    return {
        {Potential::Linear, Domain::R1, true, std::nullopt, "purely discrete"},
        {Potential::Logarithmic, Domain::R2, true, std::nullopt, "empty essential spectrum"},
        {Potential::InverseDistance, Domain::R3, true, std::nullopt,
         "nonempty discrete and essential spectra"},
        {Potential::Coulomb, Domain::R3, true, 0, ""},
        {Potential::Coulomb, Domain::R3Punctured, false, 1, ""},
        {Potential::Coulomb, Domain::R2Punctured, false, 1, ""},
        {Potential::Coulomb, Domain::R1Punctured, false, 2, ""},
    };
}

SelfAdjointnessRow query(Potential v, Domain d) {
    for (const SelfAdjointnessRow& row : selfadjointness_report()) {
        if (row.potential == v && row.domain == d) return row;
    }
    throw DomainError("no entry for " + to_string(v) + " on " + to_string(d));
}

}  // namespace coulomb
