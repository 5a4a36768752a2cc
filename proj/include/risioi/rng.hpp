// Philox4x64-10 counter-based generator. Keyed by (seed, stream): every
// stream is an independent 2^256-long sequence, so parallel chunks draw from
// disjoint substreams without jump-ahead bookkeeping. Matches the reference
// implementation bit-for-bit (golden vectors in tests/test_rng.cpp).

#ifndef RISIOI_RNG_HPP
#define RISIOI_RNG_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <utility>

namespace risioi::rng {

class Philox4x64 {
public:
    explicit Philox4x64(std::uint64_t seed, std::uint64_t stream = 0)
        : key_{seed, stream} {}

    std::uint64_t next_u64() {
        if (pos_ == 4) {
            // counter is bumped before each block (reference-generator order)
            increment_counter();
            block_ = generate(counter_, key_);
            pos_ = 0;
        }
        return block_[pos_++];
    }

    // Uniform on [0,1), 53-bit mantissa.
    double next_uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform on (0,1]; safe under log().
    double next_uniform_pos() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // Standard normal via the Marsaglia polar method; pairs are consumed
    // alternately. Rejection is deterministic within a stream.
    double next_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * next_uniform() - 1.0;
            v = 2.0 * next_uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

    // Uniformly distributed point on the unit circle, no trigonometry.
    std::pair<double, double> next_unit_vector() {
        double u, v, s;
        do {
            u = 2.0 * next_uniform() - 1.0;
            v = 2.0 * next_uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double inv = 1.0 / std::sqrt(s);
        return {u * inv, v * inv};
    }

    static std::array<std::uint64_t, 4> generate(const std::array<std::uint64_t, 4>& counter,
                                                 const std::array<std::uint64_t, 2>& key) {
        std::array<std::uint64_t, 4> x = counter;
        std::array<std::uint64_t, 2> k = key;
        for (int round = 0; round < 10; ++round) {
            const auto [hi0, lo0] = mulhilo(kM0, x[0]);
            const auto [hi1, lo1] = mulhilo(kM1, x[2]);
            x = {hi1 ^ x[1] ^ k[0], lo1, hi0 ^ x[3] ^ k[1], lo0};
            k[0] += kW0;
            k[1] += kW1;
        }
        return x;
    }

private:
    static constexpr std::uint64_t kM0 = 0xD2E7470EE14C6C93ULL;
    static constexpr std::uint64_t kM1 = 0xCA5A826395121157ULL;
    static constexpr std::uint64_t kW0 = 0x9E3779B97F4A7C15ULL;
    static constexpr std::uint64_t kW1 = 0xBB67AE8584CAA73BULL;

    static std::pair<std::uint64_t, std::uint64_t> mulhilo(std::uint64_t a, std::uint64_t b) {
        const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
        return {static_cast<std::uint64_t>(p >> 64), static_cast<std::uint64_t>(p)};
    }

    void increment_counter() {
        for (int i = 0; i < 4; ++i) {
            if (++counter_[i] != 0) break;
        }
    }

    std::array<std::uint64_t, 2> key_;
    std::array<std::uint64_t, 4> counter_{};
    std::array<std::uint64_t, 4> block_{};
    int pos_ = 4;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace risioi::rng

#endif
