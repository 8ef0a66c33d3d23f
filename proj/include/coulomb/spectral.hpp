#pragma once

#include "coulomb/extensions.hpp"

#include <array>
#include <vector>

namespace coulomb {

struct TauEnergy {
    double energy;
    double tau;
    double scale;  // (-4q)^{1/2} = 2 sqrt(-2 m E) / hbar
};

TauEnergy tau_of_energy(const PhysParams& params, double energy);
TauEnergy energy_of_tau(const PhysParams& params, double tau);

struct OmegaValue {
    double energy;
    double omega;
    int nearest_pole_tau;
};

// omega(E) = p [ln(hbar^2 tau / 2m) + 2 psi(1) - psi(1 - tau)] - (-4q)^{1/2} / 2
// PoleError when tau is within 1e-8 of a positive integer.
OmegaValue omega(const PhysParams& params, double energy);

// (1/Gamma(1-tau), omega/Gamma(1-tau)) with the pole of omega cancelled
// analytically, so the pair is smooth through integer tau.
struct RegularizedPair {
    double d0;
    double d1;
};
RegularizedPair w_boundary_pair(const PhysParams& params, double tau);

enum class Side { Plus, Minus };
// Boundary data of Theta(+-x) W_{tau,1/2}(scale |x|).
BoundaryData w_boundary_data(const PhysParams& params, double energy, Side side);

// M(E): column 0 acts on the coefficient of Theta(-x) W, column 1 on Theta(+x) W.
Mat2 eigencondition_matrix(const Unitary2& u, const PhysParams& params, double energy);
Mat2 eigencondition_matrix_tau(const Unitary2& u, const PhysParams& params, double tau);
// Normalization used for the singular-value thresholds of M.
double eigencondition_scale(const Unitary2& u, const PhysParams& params, double tau);

struct ChannelDescriptor {
    int l;
    int degeneracy;  // 2l + 1
};

struct EigenRecord {
    double energy;
    double tau;
    double scale;
    int multiplicity;
    // 1D: null vectors c = (c_minus, c_plus) of M(E), orthonormal.
    std::vector<std::array<cplx, 2>> basis;
    // 3D: contributing angular channels.
    std::vector<ChannelDescriptor> channels;
    ExtensionSpec extension;
};

std::vector<EigenRecord> solve_spectrum_1d(const Unitary2& u, const PhysParams& params,
                                           double tau_max);
std::vector<EigenRecord> dirichlet_spectrum_3d(const PhysParams& params, int n_max);

// c_minus Theta(-x) W(scale |x|) + c_plus Theta(x) W(scale x).
cplx eigenfunction_eval(const EigenRecord& rec, const std::array<cplx, 2>& c, double x);

// Resolvent kernel of the Dirichlet extension; zero for x y < 0.
double greens_dirichlet(const PhysParams& params, double energy, double x, double y);

}  // namespace coulomb
