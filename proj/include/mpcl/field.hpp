#pragma once

#include <cstdint>
#include <string>

namespace mpcl {

// Field element: residue in [0, prime). Plain value type; all arithmetic
// goes through Field so the modulus is explicit.
using u128 = unsigned __int128;

struct Fe {
    u128 v = 0;

    friend bool operator==(const Fe&, const Fe&) = default;
};

Fe fe_from_u64(uint64_t x);
uint64_t fe_low64(Fe x);
std::string fe_to_string(Fe x);
Fe fe_from_string(const std::string& s);

// Parameters selected from the widest private integer declared by a
// program plus the statistical security margin used by masked protocols.
struct FieldParams {
    unsigned data_bitlen = 32;
    unsigned kappa = 48;
    unsigned field_bitlen = 81;
    Fe prime;

    bool operator==(const FieldParams&) const = default;
};

// field_bitlen = data_bitlen + kappa + 1 when any statistically secure
// operation (comparison, private indexing) is present, else data_bitlen + 1.
// The prime is the smallest prime >= 2^field_bitlen.
FieldParams select_field_params(unsigned max_data_bitlen, bool uses_comparison,
                                unsigned kappa);

bool is_prime_u128(u128 n);
u128 next_prime_geq(u128 n);

// Arithmetic context for one prime. Multiplication uses hardware division
// below 64 bits and Barrett reduction above (primes here reach ~82 bits, so
// products need up to 164 bits of headroom).
class Field {
  public:
    Field() = default;
    explicit Field(Fe prime);
    explicit Field(const FieldParams& fp) : Field(fp.prime) {}

    Fe prime() const { return Fe{p_}; }

    Fe reduce(u128 x) const { return Fe{x % p_}; }
    Fe add(Fe a, Fe b) const {
        u128 s = a.v + b.v;
        if (s >= p_) s -= p_;
        return Fe{s};
    }
    Fe sub(Fe a, Fe b) const {
        return Fe{a.v >= b.v ? a.v - b.v : a.v + p_ - b.v};
    }
    Fe neg(Fe a) const { return Fe{a.v == 0 ? 0 : p_ - a.v}; }
    Fe mul(Fe a, Fe b) const;
    // Throws std::domain_error on inverse of zero.
    Fe inv(Fe a) const;
    Fe pow(Fe a, u128 e) const;

    // Signed embedding: values >= prime/2 read as negative (centered lift).
    Fe from_signed(long long x) const;
    long long to_signed(Fe x) const;

    bool operator==(const Field& o) const { return p_ == o.p_; }

  private:
    u128 p_ = 0;
    // Barrett state for p > 2^64: mu = floor(2^192 / p), as 128-bit value.
    u128 mu_ = 0;
    bool barrett_ = false;

    u128 barrett_mul(u128 a, u128 b) const;
};

}  // namespace mpcl
