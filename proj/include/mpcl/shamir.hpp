#pragma once

#include <random>
#include <span>
#include <vector>

#include "mpcl/field.hpp"

namespace mpcl {

// One party's evaluation of the sharing polynomial at point party_index.
struct Share {
    int party_index = 0;  // in [1, n]
    Fe value;
};

// Uniform field elements from a seeded 64-bit generator, by rejection on
// the prime's bit length. Deterministic for a fixed seed and field.
class FieldRng {
  public:
    FieldRng(uint64_t seed, Fe prime) : rng_(seed), p_(prime.v) {
        bits_ = 0;
        for (u128 t = p_ - 1; t != 0; t >>= 1) ++bits_;
    }

    Fe next() {
        const u128 mask = bits_ >= 128 ? ~u128(0) : ((u128(1) << bits_) - 1);
        for (;;) {
            u128 x = (u128(rng_()) << 64) | rng_();
            x &= mask;
            if (x < p_) return Fe{x};
        }
    }

    uint64_t next_u64() { return rng_(); }
    bool next_bit() { return rng_() & 1; }

  private:
    std::mt19937_64 rng_;
    u128 p_;
    unsigned bits_;
};

// Coefficients low-to-high; evaluation by Horner.
Fe poly_eval(const Field& f, std::span<const Fe> coeffs, Fe x);

// Degree-t polynomial with free coefficient = secret, evaluated at
// x = 1..n. Requires n > 2 and t < n/2.
std::vector<Share> share_secret(const Field& f, Fe secret, int n, int t,
                                FieldRng& rng);

// Lagrange coefficients at x = 0 for the given evaluation points.
std::vector<Fe> lagrange_at_zero(const Field& f, std::span<const int> points);

// Interpolates the free coefficient from >= t+1 shares with distinct
// party indices.
Fe reconstruct(const Field& f, std::span<const Share> shares, int t);

}  // namespace mpcl
