#include "coulomb/kernels.hpp"
#include "coulomb/oracle.hpp"
#include "coulomb/spectral.hpp"

#include <catch_amalgamated.hpp>

#include <cstring>
#include <random>
#include <vector>

using namespace coulomb;
using namespace coulomb::kernels;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

struct RandomGrid {
    std::vector<double> w, b;
    ShootGrid grid;
    RandomGrid(std::mt19937_64& rng, std::size_t n, double amp) : w(n), b(n) {
        std::normal_distribution<double> g;
        for (std::size_t i = 0; i < n; ++i) {
            w[i] = amp * g(rng);
            b[i] = 0.5 + std::abs(g(rng));
        }
        grid = {w.data(), b.data(), n, 0.01};
    }
};

}  // namespace

TEST_CASE("scalar kernel follows the three-term recurrence", "[simd]") {
    const std::vector<double> w{0.0, 1.0, 2.0, 3.0}, b{1.0, 1.0, 1.0, 1.0};
    ShootGrid g{w.data(), b.data(), 4, 0.25};
    const double lam = 0.5;
    ShootState s{1.0, 2.0, 0, 0};
    shoot_scalar(g, &lam, &s, 1);
    double vp = 1.0, v = 2.0;
    for (int i = 1; i <= 2; ++i) {
        double vn = (2.0 + 0.25 * (w[i] - lam)) * v - vp;
        vp = v;
        v = vn;
    }
    CHECK(s.v_prev == vp);
    CHECK(s.v_cur == v);
}

TEST_CASE("AVX2 kernel is bitwise identical to the scalar kernel", "[simd]") {
    if (!isa_available(Isa::Avx2)) SKIP("AVX2 not available on this host");
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> lam_dist(-200.0, 200.0);
    for (std::size_t count : {1u, 3u, 4u, 5u, 8u, 13u}) {
        for (double amp : {1.0, 50.0, 3000.0}) {
            RandomGrid rg(rng, 777, amp);
            std::vector<double> lam(count);
            std::vector<ShootState> a(count), b(count);
            for (std::size_t k = 0; k < count; ++k) {
                lam[k] = lam_dist(rng);
                a[k] = b[k] = {1e-3 * (k + 1), 2e-3 * (k + 1), 0, 0};
            }
            shoot(rg.grid, lam.data(), a.data(), count, Isa::Scalar);
            shoot(rg.grid, lam.data(), b.data(), count, Isa::Avx2);
            for (std::size_t k = 0; k < count; ++k) {
                INFO("count " << count << " amp " << amp << " lane " << k);
                CHECK(same_bits(a[k].v_prev, b[k].v_prev));
                CHECK(same_bits(a[k].v_cur, b[k].v_cur));
                CHECK(a[k].nodes == b[k].nodes);
                CHECK(a[k].rescales == b[k].rescales);
            }
        }
    }
}

TEST_CASE("rescaling triggers identically on both paths", "[simd]") {
    std::vector<double> w(400, 40.0), b(400, 1.0);
    ShootGrid g{w.data(), b.data(), w.size(), 1.0};
    const double lam[4] = {0.0, 1.0, -3.0, 5.0};
    ShootState s[4] = {};
    for (auto& st : s) st = {1.0, 1.5, 0, 0};
    shoot(g, lam, s, 4, Isa::Scalar);
    CHECK(s[0].rescales > 0);
    if (!isa_available(Isa::Avx2)) return;
    ShootState t[4] = {};
    for (auto& st : t) st = {1.0, 1.5, 0, 0};
    shoot(g, lam, t, 4, Isa::Avx2);
    for (int k = 0; k < 4; ++k) {
        CHECK(s[k].rescales == t[k].rescales);
        CHECK(same_bits(s[k].v_cur, t[k].v_cur));
    }
}

TEST_CASE("oracle results do not depend on the instruction set", "[simd]") {
    if (!isa_available(Isa::Avx2)) SKIP("AVX2 not available on this host");
    PhysParams p;
    oracle::ShootOptions sc, vx;
    sc.isa = Isa::Scalar;
    vx.isa = Isa::Avx2;
    const double lo = energy_of_tau(p, 0.5).energy, hi = energy_of_tau(p, 2.5).energy;
    auto a = oracle::shoot_halfline(p, 0, 3, oracle::kDirichlet, lo, hi, sc);
    auto b = oracle::shoot_halfline(p, 0, 3, oracle::kDirichlet, lo, hi, vx);
    REQUIRE(a.levels.size() == b.levels.size());
    for (std::size_t k = 0; k < a.levels.size(); ++k) CHECK(same_bits(a.levels[k].energy, b.levels[k].energy));
    auto ea = oracle::shoot_linear_potential(p, oracle::Parity::Odd, 3, Isa::Scalar);
    auto eb = oracle::shoot_linear_potential(p, oracle::Parity::Odd, 3, Isa::Avx2);
    for (std::size_t k = 0; k < ea.size(); ++k) CHECK(same_bits(ea[k].energy, eb[k].energy));
}
