#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "risioi/rng.hpp"

using risioi::rng::Philox4x64;

// Golden vectors frozen from the reference Philox4x64-10 implementation
// (numpy.random.Philox raw output for the same key/counter).
TEST_CASE("philox4x64-10 golden vectors") {
    SUBCASE("key (0,0), counter 0") {
        Philox4x64 g(0, 0);
        CHECK(g.next_u64() == 0x02f4ba6408e4d89bULL);
        CHECK(g.next_u64() == 0x3dd62b0b9ca8c5b2ULL);
        CHECK(g.next_u64() == 0x1c8667a55d902e79ULL);
        CHECK(g.next_u64() == 0x907d7a052fd5b4dcULL);
        // second block: counter auto-increments
        CHECK(g.next_u64() == 0x809bf322883987c3ULL);
        CHECK(g.next_u64() == 0x471128b9e807f7ddULL);
        CHECK(g.next_u64() == 0xf250ba0dbec065b7ULL);
        CHECK(g.next_u64() == 0xfc6ed66767a457bcULL);
    }
    SUBCASE("golden-ratio key") {
        Philox4x64 g(0x9E3779B97F4A7C15ULL, 0xBB67AE8584CAA73BULL);
        CHECK(g.next_u64() == 0xfa033c62a6049001ULL);
        CHECK(g.next_u64() == 0x003beb58330ab297ULL);
        CHECK(g.next_u64() == 0xd45d9d1ed2e72102ULL);
        CHECK(g.next_u64() == 0xba38a9f383a1e7e2ULL);
    }
    SUBCASE("seed 7, stream 0") {
        Philox4x64 g(7, 0);
        CHECK(g.next_u64() == 0xdf4034b829e9fba4ULL);
        CHECK(g.next_u64() == 0x4b9d10cdf8e64087ULL);
    }
    SUBCASE("block function at an advanced counter") {
        // second block of the seed-7 stream: counter (2,0,0,0)
        const auto out = Philox4x64::generate({2, 0, 0, 0}, {7, 0});
        CHECK(out[0] == 0x15352da77ecee8e6ULL);
        CHECK(out[1] == 0xb256888327f72bccULL);
        CHECK(out[2] == 0x4bde1757d950a392ULL);
        CHECK(out[3] == 0x9edd26e855c94201ULL);
    }
}

TEST_CASE("uniform doubles follow the (x >> 11) * 2^-53 convention") {
    Philox4x64 g(0, 0);
    CHECK(g.next_uniform() == doctest::Approx(0.011546754286331562).epsilon(1e-16));
    CHECK(g.next_uniform() == doctest::Approx(0.24154919656271812).epsilon(1e-16));
    CHECK(g.next_uniform() == doctest::Approx(0.11142585551493822).epsilon(1e-16));
    CHECK(g.next_uniform() == doctest::Approx(0.5644146216071337).epsilon(1e-16));
    Philox4x64 h(123, 5);
    for (int i = 0; i < 10000; ++i) {
        const double u = h.next_uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const double up = h.next_uniform_pos();
        CHECK(up > 0.0);
        CHECK(up <= 1.0);
    }
}

TEST_CASE("streams are reproducible and distinct") {
    Philox4x64 a(42, 3), b(42, 3), c(42, 4), d(43, 3);
    bool same_c = true, same_d = true;
    for (int i = 0; i < 64; ++i) {
        const auto va = a.next_u64();
        CHECK(va == b.next_u64());
        same_c &= (va == c.next_u64());
        same_d &= (va == d.next_u64());
    }
    CHECK_FALSE(same_c);
    CHECK_FALSE(same_d);
}

TEST_CASE("normal and unit-vector samplers have the right moments") {
    Philox4x64 g(99, 0);
    const int n = 200000;
    double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = g.next_normal();
        s1 += x;
        s2 += x * x;
        s3 += x * x * x;
        s4 += x * x * x * x;
    }
    CHECK(std::fabs(s1 / n) < 4.0 / std::sqrt(static_cast<double>(n)));
    CHECK(s2 / n == doctest::Approx(1.0).epsilon(0.02));
    CHECK(std::fabs(s3 / n) < 0.03);
    CHECK(s4 / n == doctest::Approx(3.0).epsilon(0.05));

    double c1 = 0.0, c2 = 0.0, r2max = 0.0, r2min = 2.0;
    for (int i = 0; i < n; ++i) {
        const auto [cx, sx] = g.next_unit_vector();
        c1 += cx;
        c2 += sx;
        const double r2 = cx * cx + sx * sx;
        r2max = std::max(r2max, r2);
        r2min = std::min(r2min, r2);
    }
    CHECK(std::fabs(c1 / n) < 0.01);
    CHECK(std::fabs(c2 / n) < 0.01);
    CHECK(r2max == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r2min == doctest::Approx(1.0).epsilon(1e-12));
}
