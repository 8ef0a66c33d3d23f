#include "coulomb/kernels.hpp"

#include <immintrin.h>

namespace coulomb::kernels {

void shoot_avx2(const ShootGrid& grid, const double* lambda, ShootState* states,
                std::size_t count) {
    const std::size_t full = count / 4 * 4;
    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d h2 = _mm256_set1_pd(grid.h2);
    const __m256d zero = _mm256_setzero_pd();
    const __m256d big = _mm256_set1_pd(1e150);
    const __m256d shrink = _mm256_set1_pd(1e-150);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d absmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));

    for (std::size_t lane = 0; lane < full; lane += 4) {
        const __m256d lam = _mm256_loadu_pd(lambda + lane);
        __m256d vp = _mm256_setr_pd(states[lane].v_prev, states[lane + 1].v_prev,
                                    states[lane + 2].v_prev, states[lane + 3].v_prev);
        __m256d v = _mm256_setr_pd(states[lane].v_cur, states[lane + 1].v_cur,
                                   states[lane + 2].v_cur, states[lane + 3].v_cur);
        __m256i nodes = _mm256_setzero_si256();
        __m256i rescales = _mm256_setzero_si256();
        for (std::size_t i = 1; i + 1 < grid.n; ++i) {
            const __m256d wi = _mm256_set1_pd(grid.w[i]);
            const __m256d bi = _mm256_set1_pd(grid.b[i]);
            __m256d g = _mm256_sub_pd(wi, _mm256_mul_pd(lam, bi));
            __m256d c = _mm256_add_pd(two, _mm256_mul_pd(h2, g));
            __m256d vn = _mm256_sub_pd(_mm256_mul_pd(c, v), vp);
            __m256d sign_change = _mm256_cmp_pd(_mm256_mul_pd(vn, v), zero, _CMP_LT_OQ);
            nodes = _mm256_sub_epi64(nodes, _mm256_castpd_si256(sign_change));
            __m256d over = _mm256_cmp_pd(_mm256_and_pd(vn, absmask), big, _CMP_GT_OQ);
            __m256d factor = _mm256_blendv_pd(one, shrink, over);
            vn = _mm256_blendv_pd(vn, _mm256_mul_pd(vn, factor), over);
            v = _mm256_blendv_pd(v, _mm256_mul_pd(v, factor), over);
            rescales = _mm256_sub_epi64(rescales, _mm256_castpd_si256(over));
            vp = v;
            v = vn;
        }
        alignas(32) double out_vp[4], out_v[4];
        alignas(32) long long out_nodes[4], out_rescales[4];
        _mm256_store_pd(out_vp, vp);
        _mm256_store_pd(out_v, v);
        _mm256_store_si256(reinterpret_cast<__m256i*>(out_nodes), nodes);
        _mm256_store_si256(reinterpret_cast<__m256i*>(out_rescales), rescales);
        for (int k = 0; k < 4; ++k) {
            states[lane + k].v_prev = out_vp[k];
            states[lane + k].v_cur = out_v[k];
            states[lane + k].nodes += out_nodes[k];
            states[lane + k].rescales += out_rescales[k];
        }
    }
    if (full < count) shoot_scalar(grid, lambda + full, states + full, count - full);
}

}  // namespace coulomb::kernels
