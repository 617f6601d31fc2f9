#include "ffseq/bounds.hpp"

#include <stdexcept>

namespace ffseq {

namespace {

using boost::multiprecision::cpp_int;

Decimal factorial(std::uint32_t s) {
    Decimal f = 1;
    for (std::uint32_t i = 2; i <= s; ++i) f *= i;
    return f;
}

Decimal power(const Decimal& x, std::uint64_t k) {
    Decimal r = 1;
    for (std::uint64_t i = 0; i < k; ++i) r *= x;
    return r;
}

void check_base(std::uint32_t b, std::uint32_t s) {
    if (b < 2) throw std::invalid_argument("base must be at least 2");
    if (s < 1) throw std::invalid_argument("dimension must be at least 1");
}

}  // namespace

bool decimal_close(const Decimal& a, const Decimal& b) {
    using boost::multiprecision::abs;
    const Decimal scale = abs(b) > 1 ? Decimal(abs(b)) : Decimal(1);
    return abs(a - b) <= Decimal("1e-40") * scale;
}

Decimal c_fk(std::uint32_t b, std::uint32_t s, std::uint32_t t) {
    check_base(b, s);
    const Decimal lb = boost::multiprecision::log(Decimal(b));
    const Decimal head = power(Decimal(b), t) / factorial(s);
    const Decimal tail = power(Decimal(b - 1) / (2 * lb), s);
    if (b % 2 == 0) {
        const Decimal b2 = Decimal(b) * b;
        return head * (b2 / (2 * (b2 - 1))) * tail;
    }
    return head * Decimal(1) / 2 * tail;
}

Decimal c_fk_lower(std::uint32_t b, std::uint32_t s, std::uint32_t t) {
    check_base(b, s);
    const Decimal lb = boost::multiprecision::log(Decimal(b));
    return power(Decimal(b), t) / factorial(s) / 2 * power(Decimal(b - 1) / (2 * lb), s);
}

TezConstant c_tez(std::uint32_t b, std::uint32_t u, const std::vector<std::uint32_t>& e) {
    const auto s = static_cast<std::uint32_t>(e.size());
    check_base(b, s);
    const Decimal lb = boost::multiprecision::log(Decimal(b));
    const Decimal head = power(Decimal(b), u) / factorial(s);
    TezConstant out{head, head};
    Decimal prod_e = 1;
    std::uint64_t sum_e = 0;
    for (auto ei : e) {
        if (ei == 0) throw std::invalid_argument("e_i must be positive");
        const cpp_int half = boost::multiprecision::pow(cpp_int(b), ei) / 2;
        out.value *= Decimal(half) / (Decimal(ei) * lb);
        prod_e *= ei;
        sum_e += ei;
    }
    out.estimate *= power(Decimal(b), sum_e) / (power(2 * lb, s) * prod_e);
    return out;
}

ConditionResult compare_condition(std::uint32_t q, const std::vector<std::uint32_t>& e) {
    const auto s = static_cast<std::uint32_t>(e.size());
    check_base(q, s);
    cpp_int prod = 1;
    for (auto ei : e) {
        if (ei == 0) throw std::invalid_argument("e_i must be positive");
        prod *= ei;
    }
    ConditionResult out;
    out.ratio_lower_bound = Decimal(prod) / 2 * power(Decimal(q - 1) / q, s);
    // prod e_i > 2 (q/(q-1))^s  <=>  prod e_i (q-1)^s > 2 q^s
    out.tez_better = prod * boost::multiprecision::pow(cpp_int(q - 1), s) > 2 * boost::multiprecision::pow(cpp_int(q), s);
    return out;
}

Decimal bound_eval(const Decimal& c, const Decimal& N, std::uint32_t s) {
    if (N < 2) throw std::invalid_argument("bound_eval needs N >= 2");
    return c * power(boost::multiprecision::log(N), s) / N;
}

DegreeProduct degree_product_demo(const FunctionField& F, std::uint32_t s, const Decimal& epsilon) {
    const std::uint32_t q = F.constants().q();
    if (s < 2) throw std::invalid_argument("degree_product_demo needs s >= 2");
    if (!(epsilon > 0 && epsilon < Decimal(1) / q)) throw std::invalid_argument("epsilon must lie in (0, 1/q)");
    DegreeProduct out;
    out.lhs = 1;
    for (const auto& P : F.places(s)) out.lhs *= P.degree;
    const Decimal exponent = (Decimal(1) / q - epsilon) * s;
    const Decimal logq_s = boost::multiprecision::log(Decimal(s)) / boost::multiprecision::log(Decimal(q));
    out.rhs = boost::multiprecision::pow(logq_s, exponent);
    out.lhs_exceeds = Decimal(out.lhs) > out.rhs;
    return out;
}

}  // namespace ffseq
