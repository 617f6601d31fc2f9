#include "doctest.h"

#include <sstream>

#include "ffseq/construct.hpp"

using namespace ffseq;

namespace {

FunctionFieldPtr rational(std::uint32_t p, std::uint32_t k = 1) {
    return make_function_field(FieldKind::rational, Field::create(p, k));
}
FunctionFieldPtr elliptic() { return make_function_field(FieldKind::elliptic_f2, Field::create(2, 1)); }

// Places x and x^2+x+1 over F_2, so e = (1, 2).
SeqSpec mixed_spec(Mode mode) {
    auto F = rational(2);
    auto pl = F->places(3);
    return SeqSpec::make(F, {pl[0], pl[2]}, mode);
}

}  // namespace

TEST_CASE("SeqSpec validation") {
    auto F = rational(2);
    auto pl = F->places(3);
    auto spec = SeqSpec::make(F, {pl[0], pl[2]}, Mode::plain);
    CHECK(spec.e == std::vector<std::uint32_t>{1, 2});
    CHECK(spec.v == 2);
    CHECK(spec.u == 0);
    CHECK(SeqSpec::first_places(elliptic(), 2, Mode::plain).u == 1);
    CHECK_THROWS_AS(SeqSpec::make(F, {pl[0], pl[0]}, Mode::plain), std::invalid_argument);
    CHECK_THROWS_AS(SeqSpec::make(F, {F->infinite_place()}, Mode::plain), std::invalid_argument);
    auto other = rational(3)->places(3);
    CHECK_THROWS_AS(SeqSpec::make(F, {other[2]}, Mode::plain), std::invalid_argument);
}

TEST_CASE("li_decompose") {
    auto d = li_decompose(7, 0, 2, 2);
    CHECK(d.l == std::vector<int>{1, 1});
    CHECK(d.w1 == 1);
    auto d2 = li_decompose(5, 0, 1, 1);
    CHECK(d2.l == std::vector<int>{5});
    CHECK(d2.w1 == 0);
    auto d3 = li_decompose(2, 1, 3, 2);
    CHECK(d3.l == std::vector<int>{0, 0, 0});
    CHECK(d3.w1 == 1);
    CHECK_THROWS_AS(li_decompose(1, 1, 2, 1), std::invalid_argument);

    // the cascade reassembles r - g with every remainder in range
    for (int g : {0, 1, 3})
        for (std::size_t s = 1; s <= 4; ++s)
            for (std::uint32_t v : {1u, 2u, 6u})
                for (int r = g + 1; r < g + 200; ++r) {
                    auto dec = li_decompose(r, g, s, v);
                    long long w = dec.w1;
                    CHECK(w >= 0);
                    CHECK(w < static_cast<long long>(v));
                    for (std::size_t j = 1; j <= s; ++j) {
                        CHECK(dec.l[j - 1] >= 0);
                        w += static_cast<long long>(j) * v * dec.l[j - 1];
                        if (j < s) CHECK(w < static_cast<long long>(j + 1) * v);
                    }
                    CHECK(w == r - g);
                }
}

TEST_CASE("divisor_pair") {
    auto spec = mixed_spec(Mode::finite_row);
    auto [D, Dp] = divisor_pair(spec, 7);
    CHECK(D.coefficient(spec.field->infinite_place()) == 7);
    CHECK(D.coefficient(spec.places[0]) == -4);
    CHECK(D.coefficient(spec.places[1]) == -1);
    CHECK(D.degree() == 1);
    CHECK(Dp.degree() == 0);

    auto E = elliptic();
    auto es = SeqSpec::make(E, {E->places(1)[0]}, Mode::finite_row);
    auto [D3, D3p] = divisor_pair(es, 3);
    CHECK(D3.coefficient(E->infinite_place()) == 4);
    CHECK(D3.coefficient(es.places[0]) == -2);
    CHECK(D3.degree() == 2);
    CHECK(D3p.degree() == 1);

    // r = g + 1 with v > 1: no correction term
    auto [Dz, Dzp] = divisor_pair(spec, 1);
    CHECK(Dz.terms().size() == 1);
    CHECK(Dz.coefficient(spec.field->infinite_place()) == 1);
    // with v = 1 the cascade ends in l_1 = 1
    auto one = SeqSpec::first_places(rational(2), 2, Mode::finite_row);
    CHECK(li_decompose(1, 0, 2, 1).l == std::vector<int>{1, 0});
    CHECK(divisor_pair(one, 1).first.coefficient(one.places[0]) == -1);

    for (auto sp : {mixed_spec(Mode::finite_row), SeqSpec::first_places(E, 3, Mode::finite_row),
                    SeqSpec::first_places(rational(3), 3, Mode::finite_row)}) {
        const int g = sp.field->genus();
        for (int r = g + 1; r < 60; ++r) {
            auto [A, B] = divisor_pair(sp, r);
            CHECK(A.degree() >= 2 * g);
            CHECK(B.degree() == A.degree() - 1);
            CHECK(A.degree() == 2 * g + li_decompose(r, g, sp.dimension(), sp.v).w1);
        }
    }
}

TEST_CASE("select_yr") {
    auto R = rational(3);
    auto plain = SeqSpec::first_places(R, 2, Mode::plain);
    for (int r = 0; r < 10; ++r) CHECK(select_yr(plain, r) == R->from_poly(Poly::monomial(Elem{1}, r)));

    auto F2 = rational(2);
    auto fr = SeqSpec::make(F2, {F2->places(1)[0]}, Mode::finite_row);
    CHECK(select_yr(fr, 2) == F2->from_poly(Poly::monomial(Elem{1}, 2)));

    auto E = elliptic();
    auto ep = SeqSpec::first_places(E, 2, Mode::plain);
    CHECK(select_yr(ep, 1) == E->x());
    CHECK(select_yr(ep, 0) == E->one());
}

TEST_CASE("identity and Pascal matrices") {
    auto F = rational(2);
    auto pl = F->places(2);
    auto id = build_matrices(SeqSpec::make(F, {pl[0]}, Mode::plain), 8, 8)[0];
    for (std::size_t j = 0; j < 8; ++j)
        for (std::size_t r = 0; r < 8; ++r) CHECK(id(j, r).idx == (j == r ? 1u : 0u));

    auto pascal = build_matrices(SeqSpec::make(F, {pl[1]}, Mode::plain), 12, 12)[0];
    std::vector<std::vector<unsigned>> binom(12, std::vector<unsigned>(12, 0));
    for (std::size_t r = 0; r < 12; ++r) {
        binom[r][0] = 1;
        for (std::size_t j = 1; j <= r; ++j) binom[r][j] = (binom[r - 1][j - 1] + binom[r - 1][j]) % 2;
    }
    for (std::size_t j = 0; j < 12; ++j)
        for (std::size_t r = 0; r < 12; ++r) CHECK(pascal(j, r).idx == binom[r][j]);
}

TEST_CASE("serial and parallel builds agree; prefix stability") {
    std::vector<SeqSpec> specs{mixed_spec(Mode::plain), mixed_spec(Mode::finite_row),
                               SeqSpec::first_places(rational(3), 3, Mode::finite_row),
                               SeqSpec::first_places(rational(2, 2), 2, Mode::plain),
                               SeqSpec::first_places(elliptic(), 3, Mode::plain),
                               SeqSpec::first_places(elliptic(), 3, Mode::finite_row)};
    for (const auto& spec : specs) {
        auto big = build_matrices(spec, 24, 30);
        CHECK(big == build_matrices_serial(spec, 24, 30));
        auto small = build_matrices(spec, 13, 17);
        for (std::size_t i = 0; i < big.size(); ++i) CHECK(big[i].leading(13, 17) == small[i]);
    }
}

TEST_CASE("column blocks are the residue coordinates") {
    for (auto spec : {mixed_spec(Mode::finite_row), SeqSpec::first_places(elliptic(), 3, Mode::plain)}) {
        const std::size_t J = 12;
        auto mats = build_matrices(spec, J, 10);
        for (int r = 0; r < 10; ++r) {
            const FFElement y = select_yr(spec, r);
            for (std::size_t i = 0; i < spec.dimension(); ++i) {
                const std::uint32_t e = spec.e[i];
                auto beta = spec.field->local_expansion(y, spec.places[i], J / e);
                for (std::size_t k = 0; k < J / e; ++k) {
                    auto v = vector_decompose(beta[k].coeffs(), e);
                    for (std::uint32_t t = 0; t < e; ++t) CHECK(mats[i](k * e + t, static_cast<std::size_t>(r)) == v[t]);
                }
            }
        }
    }
}

TEST_CASE("finite-row construction: valuation witness and row lengths") {
    std::vector<SeqSpec> specs{mixed_spec(Mode::finite_row), SeqSpec::first_places(rational(2), 3, Mode::finite_row),
                               SeqSpec::first_places(rational(5), 3, Mode::finite_row),
                               SeqSpec::first_places(elliptic(), 2, Mode::finite_row),
                               SeqSpec::first_places(elliptic(), 3, Mode::finite_row)};
    for (const auto& spec : specs) {
        const FunctionField& F = *spec.field;
        const int g = F.genus();
        for (int r = g + 1; r < 40; ++r) {
            const FFElement y = select_yr(spec, r);
            CHECK(F.pole_order(y) == F.nr_index(r));
            auto [D, Dp] = divisor_pair(spec, r);
            for (std::size_t i = 0; i < spec.dimension(); ++i)
                CHECK(F.valuation(y, spec.places[i]) >= -D.coefficient(spec.places[i]));
        }
        const std::size_t J = 24;
        auto mats = build_matrices(spec, J, 90);
        for (std::size_t i = 0; i < mats.size(); ++i)
            for (std::size_t d = 1; d <= J; ++d)
                CHECK(static_cast<std::int64_t>(mats[i].row_length(d)) <=
                      row_length_bound(g, spec.dimension(), spec.v, i + 1, d));
    }
}

TEST_CASE("plain mode rows are not finite-row") {
    // x^r expanded at x+1 fills every row: the plain matrices have full-length rows.
    auto spec = SeqSpec::first_places(rational(2), 2, Mode::plain);
    auto m = build_matrices(spec, 4, 40);
    CHECK(m[1].row_length(1) == 40);
}

TEST_CASE("matrix dump round trip") {
    auto spec = mixed_spec(Mode::finite_row);
    auto mats = build_matrices(spec, 6, 9);
    std::ostringstream os;
    write_matrices(os, spec, mats);
    const std::string text = os.str();
    CHECK(text.rfind("2 2 6 9 finite_row\nmatrix 1 1\n", 0) == 0);
    std::istringstream is(text);
    auto dump = read_matrices(is);
    CHECK(dump.q == 2);
    CHECK(dump.e == std::vector<std::uint32_t>{1, 2});
    CHECK(dump.matrices == mats);
    std::string broken = text;
    broken.replace(broken.find("rowlens: ") + 9, 1, "7");
    std::istringstream bad(broken);
    CHECK_THROWS(read_matrices(bad));
}
