#pragma once

#include "coulomb/extensions.hpp"

#include <optional>
#include <string>
#include <vector>

namespace coulomb {

// Levels of -(hbar^2/2m) phi'' + kappa |x| phi = E phi on the whole line.
enum class ParityKind { Even, Odd };
std::string to_string(ParityKind p);

struct ParityEigen {
    double energy;
    ParityKind parity;
    int index;         // overall ordering, from 1
    int parity_index;  // k-th level of its parity class, from 1
    int multiplicity = 1;
};

// Even levels sit at -a'_k kappa ell, odd levels at -a_k kappa ell, with
// ell = (hbar^2 / (2 m kappa))^{1/3}. Returns the lowest n_max levels.
std::vector<ParityEigen> airy_spectrum_1d(const PhysParams& params, int n_max);

// E_n ~ (hbar^2/2m) [(m kappa/hbar^2)(3 pi/4)(4n - 3)]^{2/3}
double airy_asymptotic(const PhysParams& params, int n);

// Which levels the n of the asymptotic law is taken to count.
enum class CountingConvention { Overall, EvenClass, OddClass };
std::string to_string(CountingConvention c);

struct ConventionCheck {
    CountingConvention convention;
    std::vector<int> ns;
    std::vector<double> exact;
    std::vector<double> asymptotic;
    std::vector<double> rel_err;
    bool below_one_percent;  // for every n >= 20 in ns
};
ConventionCheck check_convention(const PhysParams& params, CountingConvention c,
                                 const std::vector<int>& ns);

// Static self-adjointness table.
enum class Potential { Linear, Logarithmic, InverseDistance, Coulomb };
enum class Domain { R1, R2, R3, R1Punctured, R2Punctured, R3Punctured };
std::string to_string(Potential v);
std::string to_string(Domain d);
Potential parse_potential(const std::string& s);
Domain parse_domain(const std::string& s);

struct SelfAdjointnessRow {
    Potential potential;
    Domain domain;
    std::optional<bool> essentially_self_adjoint;
    std::optional<int> deficiency_index;
    std::string spectrum;  // empty when the table says nothing
};

std::vector<SelfAdjointnessRow> selfadjointness_report();
// DomainError if the pair is not in the table.
SelfAdjointnessRow query(Potential v, Domain d);

}  // namespace coulomb
