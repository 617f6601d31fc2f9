#pragma once

// Slow reference computations used only by the tests.

#include <cstdint>
#include <random>
#include <vector>

#include "ffseq/gf.hpp"
#include "ffseq/poly.hpp"

namespace oracle {

// Product of two field elements by schoolbook multiplication of their
// coordinate vectors followed by reduction modulo the field's modulus.
inline std::uint32_t naive_mul(const ffseq::Field& F, std::uint32_t a, std::uint32_t b) {
    const std::uint32_t p = F.p(), k = F.k();
    std::vector<std::uint32_t> ca(k), cb(k), prod(2 * k, 0);
    for (std::uint32_t i = 0; i < k; ++i) {
        ca[i] = a % p;
        a /= p;
        cb[i] = b % p;
        b /= p;
    }
    for (std::uint32_t i = 0; i < k; ++i)
        for (std::uint32_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
    const auto& m = F.modulus();
    for (std::uint32_t d = 2 * k - 1; d >= k; --d) {
        const std::uint32_t c = prod[d];
        if (!c) continue;
        for (std::uint32_t j = 0; j <= k; ++j) prod[d - k + j] = (prod[d - k + j] + (p - c) * m[j]) % p;
    }
    std::uint32_t idx = 0;
    for (std::uint32_t i = k; i-- > 0;) idx = idx * p + prod[i];
    return idx;
}

inline ffseq::Poly random_poly(const ffseq::Field& F, std::mt19937_64& rng, int max_deg) {
    std::uniform_int_distribution<int> deg(-1, max_deg);
    std::uniform_int_distribution<std::uint32_t> coef(0, F.q() - 1);
    const int d = deg(rng);
    std::vector<ffseq::Elem> c;
    for (int i = 0; i <= d; ++i) c.push_back(ffseq::Elem{coef(rng)});
    return ffseq::Poly(std::move(c));
}

inline ffseq::Poly poly_pow(const ffseq::Field& F, const ffseq::Poly& f, std::size_t e) {
    ffseq::Poly r = ffseq::Poly::constant(F.one());
    for (std::size_t i = 0; i < e; ++i) r = ffseq::mul(F, r, f);
    return r;
}

}  // namespace oracle

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

// Star discrepancy by direct enumeration of every corner of the grid of
// point coordinates and 1, counting both closed and open boxes each time.
inline boost::multiprecision::cpp_rational star_discrepancy_naive(
    const std::vector<std::vector<boost::multiprecision::cpp_rational>>& pts) {
    using boost::multiprecision::cpp_rational;
    const std::size_t N = pts.size(), s = pts[0].size();
    std::vector<std::vector<cpp_rational>> axes(s);
    for (std::size_t i = 0; i < s; ++i) {
        for (const auto& p : pts) axes[i].push_back(p[i]);
        axes[i].push_back(cpp_rational(1));
    }
    cpp_rational best(0);
    std::vector<std::size_t> idx(s, 0);
    for (;;) {
        cpp_rational vol(1);
        for (std::size_t i = 0; i < s; ++i) vol *= axes[i][idx[i]];
        std::size_t closed = 0, open = 0;
        for (const auto& p : pts) {
            bool c = true, o = true;
            for (std::size_t i = 0; i < s; ++i) {
                c = c && p[i] <= axes[i][idx[i]];
                o = o && p[i] < axes[i][idx[i]];
            }
            closed += c;
            open += o;
        }
        best = std::max(best, cpp_rational(closed, N) - vol);
        best = std::max(best, vol - cpp_rational(open, N));
        std::size_t i = 0;
        while (i < s && ++idx[i] == axes[i].size()) idx[i++] = 0;
        if (i == s) break;
    }
    return best;
}

}  // namespace oracle
