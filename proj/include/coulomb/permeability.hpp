#pragma once

#include "coulomb/spectral.hpp"

#include <optional>
#include <string>

namespace coulomb {

enum class Verdict { Impermeable, Permeable };
enum class PermeabilityCase { Case1, Case2, Case3 };
std::string to_string(Verdict v);
std::string to_string(PermeabilityCase c);

struct PermeabilityVerdict {
    Verdict verdict;
    PermeabilityCase case_tag;
    // Coupling entry that decides the verdict: z of the Cayley matrix (cases
    // 1, 2) or v of the degenerate form (case 3).
    cplx coupling;
    std::optional<BoundaryData> witness;
    double witness_current = 0.0;
};

// Im(phitilde(0+) conj phi(0+))
double current_at_origin(const BoundaryData& bd);
// The same expression evaluated on the minus side.
double current_at_origin_minus(const BoundaryData& bd);

PermeabilityVerdict classify_extension(const Unitary2& u);

// Largest |j(0)| over unit-norm elements of the extension's boundary-data
// space, and the element attaining it.
struct CurrentExtremum {
    double current;
    BoundaryData data;
};
CurrentExtremum max_current(const Unitary2& u);

// Current through the closed-form rows for invertible I+U, with
// A' = i (I+U)^{-1} (I-U) = ((u, z), (conj z, v)). The row is picked by the
// zero pattern of u, v (threshold 1e-10), never by dividing by a small entry.
enum class Table1Row { ZeroCoupling, UZero, VZero, General };
struct Table1Value {
    Table1Row row;
    double current;
};
Table1Value table1_current(const Mat2& a_plus, const BoundaryData& bd);

// Current for the degenerate case U = ((-u, v), (conj v, u)), u != -1.
double case3_current(double u, cplx v, const BoundaryData& bd);

// Boundary data of c_minus Theta(-x) W + c_plus Theta(x) W at energy E.
BoundaryData eigenstate_boundary_data(const PhysParams& params, double energy,
                                      const std::array<cplx, 2>& c);

// NotAnEigenpair unless ||M(E) c|| <= 1e-8 * scale * ||c||.
double j0_for_eigenstate(const Unitary2& u, const PhysParams& params, double energy,
                         const std::array<cplx, 2>& c);

}  // namespace coulomb
