#pragma once

#include "coulomb/extensions.hpp"
#include "coulomb/kernels.hpp"

#include <array>
#include <vector>

namespace coulomb::oracle {

// Regularized data (phi(0+), phitilde(0+)) fixing one half-line's condition at
// the origin, up to scale. Dirichlet is (0, 1).
struct RobinData {
    double phi0;
    double phitilde0;
};
constexpr RobinData kDirichlet{0.0, 1.0};

struct ShootOptions {
    double eps = 0.0;       // inner cutoff; 0 selects 1e-6 hbar^2/(m kappa)
    double L = 0.0;         // outer cutoff; 0 selects it from the bracket
    double log_step = 0.02; // coarse step in t = ln r
    kernels::Isa isa = kernels::active_isa();
};

struct LevelEstimate {
    double energy;                    // Richardson-extrapolated
    int multiplicity;
    std::array<double, 3> per_grid;   // steps h, h/2, h/4
};

struct HalflineReport {
    std::vector<LevelEstimate> levels;
    double eps;
    double L;
    int n_coarse;
};

// Radial channel: dim 3 uses l(l+1)/r^2, dim 2 uses (l^2 - 1/4)/r^2, dim 1 is
// the half-line x > 0 (l must be 0). The condition at eps applies only to
// channels that are limit circle at the origin (dim 1, 3 with l = 0); other
// channels start from the regular solution.
HalflineReport shoot_halfline(const PhysParams& params, int l, int dim, RobinData bc,
                              double e_lo, double e_hi, const ShootOptions& opt = {});

std::vector<double> shoot_eigenvalues_halfline(const PhysParams& params, int l, int dim,
                                               RobinData bc, double eps, double L, double e_lo,
                                               double e_hi);

// Whole-line problem with the coupling U at the origin: shoots the decaying
// solution inward on each half-line, reads off its regularized data and scans
// the 2x2 boundary condition in E.
struct CoupledReport {
    std::vector<LevelEstimate> levels;
    double eps;
    double L;
};
CoupledReport shoot_coupled_1d(const Unitary2& u, const PhysParams& params, double e_lo,
                               double e_hi, const ShootOptions& opt = {});

// Regularized data (phi0, phitilde0) of the solution decaying at infinity, on
// a single grid with n intervals. Used by tests of the fitting step.
RobinData decaying_solution_data(const PhysParams& params, double energy, double eps, double L,
                                 int n, kernels::Isa isa = kernels::active_isa());

// Lowest n_levels of -(hbar^2/2m) phi'' + kappa x phi = E phi on x > 0 with
// phi'(0) = 0 (even) or phi(0) = 0 (odd).
enum class Parity { Even, Odd };
std::vector<LevelEstimate> shoot_linear_potential(const PhysParams& params, Parity parity,
                                                  int n_levels,
                                                  kernels::Isa isa = kernels::active_isa());

// Numerical limit-point / limit-circle evidence for (h - E) phi = 0 at E = +-i.
enum class Trend { Convergent, Divergent };
struct IntegralTrend {
    char solution;           // 'M' or 'W'
    bool at_origin;          // else at infinity
    double baseline;         // integral over the first window
    std::vector<double> increments;
    Trend trend;
};
struct ChannelEvidence {
    int dim;
    int l;
    double mu;
    cplx energy;
    cplx tau;
    std::vector<IntegralTrend> trends;
    bool limit_circle_at_origin;
    bool limit_circle_at_infinity;
    int index_contribution;
};
// InconclusiveError if an increment sequence is neither clearly convergent
// nor clearly divergent over the last four windows.
ChannelEvidence integrability_evidence(const PhysParams& params, int dim, int l);

struct DeficiencySummary {
    int dim;
    bool origin_removed;
    bool computed;  // false for the 3D operator with the origin kept
    int index;
    std::vector<ChannelEvidence> channels;
};
DeficiencySummary deficiency_index(const PhysParams& params, int dim, bool origin_removed = true);

}  // namespace coulomb::oracle
