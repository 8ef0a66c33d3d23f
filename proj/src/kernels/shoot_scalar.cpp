#include "coulomb/kernels.hpp"

#include <cmath>

namespace coulomb::kernels {

void shoot_scalar(const ShootGrid& grid, const double* lambda, ShootState* states,
                  std::size_t count) {
    const double* w = grid.w;
    const double* b = grid.b;
    const double h2 = grid.h2;
    for (std::size_t lane = 0; lane < count; ++lane) {
        const double lam = lambda[lane];
        double vp = states[lane].v_prev;
        double v = states[lane].v_cur;
        std::int64_t nodes = states[lane].nodes;
        std::int64_t rescales = states[lane].rescales;
        for (std::size_t i = 1; i + 1 < grid.n; ++i) {
            double g = w[i] - lam * b[i];
            double c = 2.0 + h2 * g;
            double vn = c * v - vp;
            if (vn * v < 0.0) ++nodes;
            if (std::fabs(vn) > 1e150) {
                vn *= 1e-150;
                v *= 1e-150;
                ++rescales;
            }
            vp = v;
            v = vn;
        }
        states[lane].v_prev = vp;
        states[lane].v_cur = v;
        states[lane].nodes = nodes;
        states[lane].rescales = rescales;
    }
}

}  // namespace coulomb::kernels
