#include "doctest.h"

#include <random>

#include "ffseq/poly.hpp"
#include "oracles.hpp"

using namespace ffseq;

namespace {
Poly P(std::initializer_list<std::uint32_t> c) {
    std::vector<Elem> v;
    for (auto x : c) v.push_back(Elem{x});
    return Poly(std::move(v));
}
}  // namespace

TEST_CASE("poly arithmetic over F_2") {
    auto F = Field::create(2, 1);
    CHECK(mul(*F, P({1, 1}), P({1, 1, 1})) == P({1, 0, 0, 1}));
    auto [q, r] = divmod(*F, P({0, 0, 0, 1}), P({1, 1, 1}));
    CHECK(q == P({1, 1}));
    CHECK(r == P({1}));
    CHECK(add(*F, P({1, 0, 1}), Poly{}) == P({1, 0, 1}));
    CHECK(add(*F, P({1, 1}), P({0, 1})) == P({1}));
    CHECK(Poly{}.degree() == -1);
    CHECK(P({0, 0, 0}).is_zero());
    CHECK_THROWS_AS(divmod(*F, P({1}), Poly{}), std::domain_error);
    CHECK(eval(*F, P({1, 1, 1}), Elem{1}) == Elem{1});
}

TEST_CASE("divmod property") {
    for (auto [p, k] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
        auto F = Field::create(p, k);
        std::mt19937_64 rng(p + 10 * k);
        for (int it = 0; it < 300; ++it) {
            Poly a = oracle::random_poly(*F, rng, 12), b = oracle::random_poly(*F, rng, 6);
            if (b.is_zero()) continue;
            auto [qq, rr] = divmod(*F, a, b);
            CHECK(rr.degree() < b.degree());
            CHECK(add(*F, mul(*F, qq, b), rr) == a);
        }
    }
}

TEST_CASE("irreducible enumeration") {
    auto F2 = Field::create(2, 1);
    auto l3 = irreducible_enumerate(*F2, 3);
    REQUIRE(l3.size() == 3);
    CHECK(l3[0] == P({0, 1}));
    CHECK(l3[1] == P({1, 1}));
    CHECK(l3[2] == P({1, 1, 1}));
    auto l5 = irreducible_enumerate(*F2, 5);
    CHECK(l5[3] == P({1, 1, 0, 1}));
    CHECK(l5[4] == P({1, 0, 1, 1}));
    auto l = irreducible_enumerate(*Field::create(3, 1), 3);
    CHECK(l[0] == P({0, 1}));
    CHECK(l[1] == P({1, 1}));
    CHECK(l[2] == P({2, 1}));

    CHECK(irreducible_count(*F2, 2) == 1);
    CHECK(irreducible_count(*F2, 4) == 3);
    CHECK(irreducible_count(*Field::create(3, 1), 1) == 3);
    CHECK(irreducible_count(*F2, 20) == 52377);
}

TEST_CASE("enumeration agrees with the counting formula and trial division") {
    for (auto [p, k] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
        auto F = Field::create(p, k);
        const std::uint32_t maxe = F->q() <= 3 ? 6 : 4;
        std::size_t total = 0;
        for (std::uint32_t e = 1; e <= maxe; ++e) total += irreducible_count(*F, e);
        auto list = irreducible_enumerate(*F, total);
        std::vector<std::size_t> per_degree(maxe + 1, 0);
        for (std::size_t i = 0; i < list.size(); ++i) {
            const auto& f = list[i];
            ++per_degree[static_cast<std::size_t>(f.degree())];
            CHECK(f.is_monic());
            if (i > 0) CHECK(list[i - 1].degree() <= f.degree());
            // no enumerated polynomial of lower degree divides it
            for (std::size_t j = 0; j < i && list[j].degree() < f.degree(); ++j)
                REQUIRE_FALSE(mod(*F, f, list[j]).is_zero());
        }
        for (std::uint32_t e = 1; e <= maxe; ++e) CHECK(per_degree[e] == irreducible_count(*F, e));
    }
}

TEST_CASE("padic expansion examples") {
    auto F = Field::create(2, 1);
    auto d = padic_expansion(*F, P({0, 0, 0, 1}), P({1, 1, 1}), 2);
    REQUIRE(d.size() == 2);
    CHECK(d[0] == P({1}));
    CHECK(d[1] == P({1, 1}));

    for (std::size_t r = 0; r < 6; ++r) {
        auto e = padic_expansion(*F, Poly::monomial(F->one(), r), P({0, 1}), 8);
        for (std::size_t k = 0; k < 8; ++k) CHECK(e[k] == (k == r ? P({1}) : Poly{}));
    }
    for (const auto& b : padic_expansion(*F, Poly{}, P({1, 1}), 4)) CHECK(b.is_zero());
    CHECK_THROWS_AS(padic_expansion(*F, P({1}), P({1, 0, 1}), 2), std::invalid_argument);  // (x+1)^2
    CHECK_THROWS_AS(padic_expansion(*Field::create(3, 1), P({1}), P({1, 2}), 2), std::invalid_argument);
}

TEST_CASE("padic reconstruction property") {
    for (auto [p, k] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
        auto F = Field::create(p, k);
        auto irr = irreducible_enumerate(*F, 8);
        std::mt19937_64 rng(7 * p + k);
        for (int it = 0; it < 120; ++it) {
            Poly f = oracle::random_poly(*F, rng, 24);
            const Poly& pi = irr[static_cast<std::size_t>(it) % irr.size()];
            const std::size_t K = 1 + static_cast<std::size_t>(it % 9);
            auto digits = padic_expansion(*F, f, pi, K);
            REQUIRE(digits.size() == K);
            Poly sum, pk = Poly::constant(F->one());
            for (const auto& b : digits) {
                CHECK(b.degree() < pi.degree());
                sum = add(*F, sum, mul(*F, b, pk));
                pk = mul(*F, pk, pi);
            }
            CHECK(mod(*F, sub(*F, f, sum), pk).is_zero());
            if (static_cast<int>(K) * pi.degree() > f.degree()) CHECK(sum == f);
        }
    }
}

TEST_CASE("poly serialization") {
    auto F = Field::create(3, 1);
    Poly f = P({2, 0, 1});
    CHECK(to_string(f) == "2 2 0 1");
    CHECK(to_string(Poly{}) == "-1");
    CHECK(parse_poly(*F, "2 2 0 1") == f);
    CHECK(parse_poly(*F, "-1").is_zero());
    CHECK(pretty(P({1, 1, 1})) == "x^2+x+1");
}
