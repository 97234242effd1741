#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>

#include "mpcl/shamir.hpp"

using namespace mpcl;

TEST_CASE("shares are polynomial evaluations: 5 + 3x mod 11") {
    Field f(Fe{11});
    std::vector<Fe> coeffs = {Fe{5}, Fe{3}};
    CHECK(poly_eval(f, coeffs, Fe{1}).v == 8);
    CHECK(poly_eval(f, coeffs, Fe{2}).v == 0);
    CHECK(poly_eval(f, coeffs, Fe{3}).v == 3);

    // zero polynomial shares a zero secret as all zeros
    std::vector<Fe> zero = {Fe{0}, Fe{0}};
    for (int i = 1; i <= 3; ++i) CHECK(poly_eval(f, zero, Fe{u128(i)}).v == 0);
}

TEST_CASE("hand Lagrange reconstruction: (1->8, 2->0) gives 5") {
    Field f(Fe{11});
    std::vector<Share> shares = {{1, Fe{8}}, {2, Fe{0}}};
    CHECK(reconstruct(f, shares, 1).v == 5);  // 2*8 - 1*0 mod 11

    // constant polynomial: all shares equal the secret
    std::vector<Share> c = {{1, Fe{7}}, {2, Fe{7}}, {3, Fe{7}}};
    CHECK(reconstruct(f, c, 1).v == 7);
}

TEST_CASE("reconstruct rejects bad inputs") {
    Field f(Fe{11});
    std::vector<Share> one = {{1, Fe{8}}};
    CHECK_THROWS(reconstruct(f, one, 1));
    std::vector<Share> dup = {{1, Fe{8}}, {1, Fe{8}}};
    CHECK_THROWS(reconstruct(f, dup, 1));
}

TEST_CASE("share rejects t >= n/2") {
    Field f(Fe{11});
    FieldRng rng(1, f.prime());
    CHECK_THROWS(share_secret(f, Fe{5}, 4, 2, rng));
    CHECK_THROWS(share_secret(f, Fe{5}, 2, 1, rng));
}

TEST_CASE("round trip over random secrets and all (t+1)-subsets") {
    auto fp = select_field_params(32, true, 48);
    Field f(fp);
    FieldRng rng(42, fp.prime);
    const int n = 5, t = 2;
    for (int iter = 0; iter < 100; ++iter) {
        Fe secret = rng.next();
        auto shares = share_secret(f, secret, n, t, rng);
        // every (t+1)-subset agrees
        std::vector<int> idx(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) idx[size_t(i)] = i;
        std::vector<bool> pick(size_t(n), false);
        std::fill(pick.begin(), pick.begin() + t + 1, true);
        do {
            std::vector<Share> sub;
            for (int i = 0; i < n; ++i)
                if (pick[size_t(i)]) sub.push_back(shares[size_t(i)]);
            REQUIRE(reconstruct(f, sub, t) == secret);
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
}

TEST_CASE("any t shares of a fixed secret look uniform (chi-squared proxy)") {
    // small field so the histogram fills quickly
    Field f(Fe{11});
    FieldRng rng(9, f.prime());
    const int trials = 11000;
    std::map<u128, int> hist;
    for (int i = 0; i < trials; ++i) {
        auto shares = share_secret(f, Fe{4}, 3, 1, rng);
        hist[shares[0].value.v]++;
    }
    double expected = trials / 11.0;
    double chi2 = 0;
    for (u128 v = 0; v < 11; ++v) {
        double d = hist[v] - expected;
        chi2 += d * d / expected;
    }
    // 10 dof, far beyond the 0.999 quantile (29.6)
    CHECK(chi2 < 40.0);
}
