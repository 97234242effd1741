#include "mpcl/shamir.hpp"

#include <set>
#include <stdexcept>

namespace mpcl {

Fe poly_eval(const Field& f, std::span<const Fe> coeffs, Fe x) {
    Fe acc{0};
    for (size_t i = coeffs.size(); i-- > 0;)
        acc = f.add(f.mul(acc, x), coeffs[i]);
    return acc;
}

std::vector<Share> share_secret(const Field& f, Fe secret, int n, int t,
                                FieldRng& rng) {
    if (n <= 2) throw std::invalid_argument("need n > 2 parties");
    if (t < 1 || 2 * t >= n) throw std::invalid_argument("need 1 <= t < n/2");
    std::vector<Fe> coeffs(size_t(t) + 1);
    coeffs[0] = secret;
    for (int i = 1; i <= t; ++i) coeffs[size_t(i)] = rng.next();
    std::vector<Share> out(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i)
        out[size_t(i - 1)] = Share{i, poly_eval(f, coeffs, Fe{u128(i)})};
    return out;
}

std::vector<Fe> lagrange_at_zero(const Field& f, std::span<const int> points) {
    std::vector<Fe> out(points.size());
    for (size_t i = 0; i < points.size(); ++i) {
        Fe num{1}, den{1};
        Fe xi = f.reduce(u128(points[i]));
        for (size_t j = 0; j < points.size(); ++j) {
            if (j == i) continue;
            Fe xj = f.reduce(u128(points[j]));
            num = f.mul(num, f.neg(xj));        // (0 - x_j)
            den = f.mul(den, f.sub(xi, xj));    // (x_i - x_j)
        }
        out[i] = f.mul(num, f.inv(den));
    }
    return out;
}

Fe reconstruct(const Field& f, std::span<const Share> shares, int t) {
    if (shares.size() < size_t(t) + 1)
        throw std::invalid_argument("not enough shares to reconstruct");
    std::set<int> seen;
    std::vector<int> points;
    points.reserve(shares.size());
    for (const Share& s : shares) {
        if (s.party_index <= 0 || !seen.insert(s.party_index).second)
            throw std::invalid_argument("duplicate or invalid party index");
        points.push_back(s.party_index);
    }
    auto lambda = lagrange_at_zero(f, points);
    Fe acc{0};
    for (size_t i = 0; i < shares.size(); ++i)
        acc = f.add(acc, f.mul(lambda[i], shares[i].value));
    return acc;
}

}  // namespace mpcl
