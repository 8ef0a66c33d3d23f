#pragma once

#include <cstddef>
#include <cstdint>

// Multi-shift three-term recurrence used by the shooting oracles:
//
//   v[i+1] = (2 + h2 * (w[i] - lambda * b[i])) * v[i] - v[i-1],  i = 1 .. n-2
//
// evaluated for several shifts lambda at once. Each lane also counts sign
// changes and rescales by 1e-150 when |v| exceeds 1e150, so the scalar and
// vector paths produce bitwise-identical states.

namespace coulomb::kernels {

struct ShootGrid {
    const double* w = nullptr;
    const double* b = nullptr;
    std::size_t n = 0;  // number of grid points, n >= 2
    double h2 = 0.0;
};

struct ShootState {
    double v_prev = 0.0;  // on entry v[0], on exit v[n-2]
    double v_cur = 0.0;   // on entry v[1], on exit v[n-1]
    std::int64_t rescales = 0;
    std::int64_t nodes = 0;  // sign changes among v[1] .. v[n-1]
};

enum class Isa { Scalar, Avx2 };

void shoot_scalar(const ShootGrid& grid, const double* lambda, ShootState* states,
                  std::size_t count);
// Processes lanes in groups of four; leftover lanes go through the scalar path.
void shoot_avx2(const ShootGrid& grid, const double* lambda, ShootState* states,
                std::size_t count);

bool isa_available(Isa isa);
// Best available ISA, unless COULOMB_FORCE_SCALAR is set in the environment.
Isa active_isa();
const char* isa_name(Isa isa);

void shoot(const ShootGrid& grid, const double* lambda, ShootState* states, std::size_t count,
           Isa isa);
void shoot(const ShootGrid& grid, const double* lambda, ShootState* states, std::size_t count);

}  // namespace coulomb::kernels
