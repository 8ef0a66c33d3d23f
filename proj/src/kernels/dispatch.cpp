#include "coulomb/kernels.hpp"

#include <cstdlib>

namespace coulomb::kernels {

bool isa_available(Isa isa) {
    switch (isa) {
        case Isa::Scalar:
            return true;
        case Isa::Avx2:
#if defined(COULOMB_BUILD_AVX2)
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
    }
    return false;
}

Isa active_isa() {
    static const Isa chosen = [] {
        const char* force = std::getenv("COULOMB_FORCE_SCALAR");
        if (force != nullptr && force[0] != '\0' && force[0] != '0') return Isa::Scalar;
        return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
    }();
    return chosen;
}

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void shoot(const ShootGrid& grid, const double* lambda, ShootState* states, std::size_t count,
           Isa isa) {
#if defined(COULOMB_BUILD_AVX2)
    if (isa == Isa::Avx2 && isa_available(Isa::Avx2)) {
        shoot_avx2(grid, lambda, states, count);
        return;
    }
#else
    (void)isa;
#endif
    shoot_scalar(grid, lambda, states, count);
}

void shoot(const ShootGrid& grid, const double* lambda, ShootState* states, std::size_t count) {
    shoot(grid, lambda, states, count, active_isa());
}

}  // namespace coulomb::kernels
