#include "mpcl/field.hpp"

#include <array>
#include <stdexcept>

namespace mpcl {

Fe fe_from_u64(uint64_t x) { return Fe{u128(x)}; }
uint64_t fe_low64(Fe x) { return uint64_t(x.v); }

std::string fe_to_string(Fe x) {
    if (x.v == 0) return "0";
    std::string out;
    u128 v = x.v;
    while (v != 0) {
        out.push_back(char('0' + int(v % 10)));
        v /= 10;
    }
    return {out.rbegin(), out.rend()};
}

Fe fe_from_string(const std::string& s) {
    u128 v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') throw std::invalid_argument("bad digit");
        v = v * 10 + u128(c - '0');
    }
    return Fe{v};
}

namespace {

// mulmod for the primality test; slow path is fine here.
u128 mr_mulmod(u128 a, u128 b, u128 m) {
    if (m <= u128(1) << 64) return (a % m) * (b % m) % m;
    // split b into 32-bit chunks: a*b = ((a*b3 << 32) + ... ) mod m
    u128 r = 0;
    for (int shift = 96; shift >= 0; shift -= 32) {
        r = (r << 32) % m;
        u128 chunk = (b >> shift) & 0xffffffffu;
        r = (r + a % m * chunk) % m;
    }
    return r;
}

u128 mr_powmod(u128 a, u128 e, u128 m) {
    u128 r = 1 % m;
    a %= m;
    while (e != 0) {
        if (e & 1) r = mr_mulmod(r, a, m);
        a = mr_mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime_u128(u128 n) {
    if (n < 2) return false;
    for (u128 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    u128 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Deterministic witness set, valid for n < 3.3e24 (covers fields up to
    // 81 bits; data bitlength is capped at 32 elsewhere).
    for (u128 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        u128 x = mr_powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mr_mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

u128 next_prime_geq(u128 n) {
    if (n <= 2) return 2;
    if ((n & 1) == 0) ++n;
    while (!is_prime_u128(n)) n += 2;
    return n;
}

FieldParams select_field_params(unsigned max_data_bitlen, bool uses_comparison,
                                unsigned kappa) {
    if (max_data_bitlen < 1) throw std::invalid_argument("data bitlen < 1");
    FieldParams fp;
    fp.data_bitlen = max_data_bitlen;
    fp.kappa = kappa;
    fp.field_bitlen =
        uses_comparison ? max_data_bitlen + kappa + 1 : max_data_bitlen + 1;
    if (fp.field_bitlen > 120) throw std::invalid_argument("field too large");
    fp.prime = Fe{next_prime_geq(u128(1) << fp.field_bitlen)};
    return fp;
}

Field::Field(Fe prime) : p_(prime.v) {
    if (p_ < 2) throw std::invalid_argument("modulus < 2");
    barrett_ = p_ > (u128(1) << 64);
    if (barrett_) {
        // mu = floor(2^192 / p) by binary long division; p > 2^64 keeps the
        // quotient within 128 bits.
        u128 rem = 1, q = 0;
        for (int i = 0; i < 192; ++i) {
            rem <<= 1;
            q <<= 1;
            if (rem >= p_) {
                rem -= p_;
                q |= 1;
            }
        }
        mu_ = q;
    }
}

u128 Field::barrett_mul(u128 a, u128 b) const {
    using u64 = uint64_t;
    const u64 a0 = u64(a), a1 = u64(a >> 64);
    const u64 b0 = u64(b), b1 = u64(b >> 64);
    // x = a*b < p^2 < 2^164, as three 64-bit limbs
    u128 t = u128(a0) * b0;
    const u64 x0 = u64(t);
    u128 mid = u128(a1) * b0 + u128(a0) * b1 + u64(t >> 64);
    const u64 x1 = u64(mid);
    const u64 x2 = u64(mid >> 64) + a1 * b1;  // a1,b1 < 2^32

    // qhat = floor(x * mu / 2^192); product accumulated limb by limb
    const u64 m0 = u64(mu_), m1 = u64(mu_ >> 64);
    t = u128(x0) * m0;
    u64 carry = u64(t >> 64);
    t = u128(x1) * m0 + carry;
    u64 l1 = u64(t);
    u64 c1 = u64(t >> 64);
    t = u128(x0) * m1 + l1;
    u64 c1b = u64(t >> 64);
    t = u128(x2) * m0 + c1;
    u64 l2 = u64(t);
    u64 c2 = u64(t >> 64);
    t = u128(x1) * m1 + l2 + c1b;
    u64 c2b = u64(t >> 64);
    t = u128(x2) * m1 + c2 + c2b;
    u128 qhat = t;  // limbs 3..4 of the 320-bit product

    // r = x - qhat*p, exact in 128-bit wrapping arithmetic since r < 2p
    u128 xlo = (u128(x1) << 64) | x0;
    u128 r = xlo - qhat * p_;
    while (r >= p_) r -= p_;
    return r;
}

Fe Field::mul(Fe a, Fe b) const {
    if (!barrett_) return Fe{(a.v * b.v) % p_};
    return Fe{barrett_mul(a.v, b.v)};
}

Fe Field::pow(Fe a, u128 e) const {
    Fe r{1 % p_};
    while (e != 0) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

Fe Field::inv(Fe a) const {
    if (a.v == 0) throw std::domain_error("inverse of zero");
    return pow(a, p_ - 2);
}

Fe Field::from_signed(long long x) const {
    if (x >= 0) return Fe{u128(x) % p_};
    u128 m = u128(-(x + 1)) + 1;  // |x| without overflow at LLONG_MIN
    return neg(Fe{m % p_});
}

long long Field::to_signed(Fe x) const {
    if (x.v * 2 >= p_) {
        u128 m = p_ - x.v;
        return -(long long)(m);
    }
    return (long long)x.v;
}

}  // namespace mpcl
