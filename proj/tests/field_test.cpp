#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <random>

#include "mpcl/field.hpp"

using namespace mpcl;
using boost::multiprecision::uint256_t;

namespace {

uint256_t to256(u128 x) {
    return (uint256_t(uint64_t(x >> 64)) << 64) | uint64_t(x);
}

u128 from256(uint256_t x) {
    return (u128(uint64_t(x >> 64)) << 64) | uint64_t(x & 0xffffffffffffffffULL);
}

}  // namespace

TEST_CASE("field parameter selection matches the experimental settings") {
    auto a = select_field_params(32, true, 48);
    CHECK(a.field_bitlen == 81);
    CHECK(is_prime_u128(a.prime.v));
    CHECK(a.prime.v >= (u128(1) << 81));

    auto b = select_field_params(32, false, 48);
    CHECK(b.field_bitlen == 33);
    CHECK(b.prime.v >= (u128(1) << 33));

    auto c = select_field_params(1, false, 0);
    CHECK(c.field_bitlen == 2);
    CHECK(c.prime.v == 5);  // smallest prime >= 4

    // determinism
    auto a2 = select_field_params(32, true, 48);
    CHECK(a2.prime == a.prime);
}

TEST_CASE("basic modular arithmetic") {
    Field f5(Fe{5});
    CHECK(f5.add(Fe{3}, Fe{4}).v == 2);

    Field f11(Fe{11});
    CHECK(f11.mul(Fe{7}, f11.inv(Fe{7})).v == 1);
    CHECK(f11.sub(Fe{0}, Fe{1}).v == 10);
    CHECK_THROWS(f11.inv(Fe{0}));
}

TEST_CASE("centered signed embedding") {
    Field f(select_field_params(8, false, 0).prime);
    CHECK(f.to_signed(f.from_signed(-5)) == -5);
    CHECK(f.to_signed(f.from_signed(127)) == 127);
    CHECK(f.to_signed(f.from_signed(0)) == 0);
}

TEST_CASE("multiplication agrees with a wide-integer oracle") {
    std::mt19937_64 rng(7);
    for (u128 pbits : {u128(33), u128(63), u128(64), u128(81)}) {
        u128 p = next_prime_geq(u128(1) << unsigned(pbits));
        Field f(Fe{p});
        uint256_t P = to256(p);
        for (int i = 0; i < 2000; ++i) {
            u128 a = ((u128(rng()) << 64) | rng()) % p;
            u128 b = ((u128(rng()) << 64) | rng()) % p;
            u128 got = f.mul(Fe{a}, Fe{b}).v;
            u128 want = from256(to256(a) * to256(b) % P);
            REQUIRE(got == want);
        }
    }
}

TEST_CASE("closure and field axioms on random triples") {
    auto fp = select_field_params(32, true, 48);
    Field f(fp);
    std::mt19937_64 rng(3);
    auto rnd = [&] { return Fe{((u128(rng()) << 64) | rng()) % fp.prime.v}; };
    for (int i = 0; i < 500; ++i) {
        Fe a = rnd(), b = rnd(), c = rnd();
        CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
        CHECK(f.add(a, f.neg(a)).v == 0);
        CHECK(f.mul(a, b).v < fp.prime.v);
        if (a.v != 0) CHECK(f.mul(a, f.inv(a)).v == 1);
    }
}

TEST_CASE("decimal round trip") {
    Fe x{(u128(0x1234567890abcdefULL) << 64) | 0xfedcba0987654321ULL};
    CHECK(fe_from_string(fe_to_string(x)) == x);
    CHECK(fe_to_string(Fe{0}) == "0");
}
