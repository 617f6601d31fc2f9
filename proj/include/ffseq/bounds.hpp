#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "ffseq/funcfield.hpp"

namespace ffseq {

/// 100 significant decimal digits.
using Decimal = boost::multiprecision::cpp_dec_float_100;

/// Comparison tolerance: 1e-40 relative to max(1, |b|).
bool decimal_close(const Decimal& a, const Decimal& b);

/// Leading constant for (t,s)-sequences in base b.
Decimal c_fk(std::uint32_t b, std::uint32_t s, std::uint32_t t);

/// (b^t / s!) (1/2) ((b-1) / (2 log b))^s, a lower bound for c_fk.
Decimal c_fk_lower(std::uint32_t b, std::uint32_t s, std::uint32_t t);

struct TezConstant {
    Decimal value;     // (b^u/s!) prod floor(b^e_i / 2) / (e_i log b)
    Decimal estimate;  // (b^u/s!) b^(sum e_i) / ((2 log b)^s prod e_i)
};

/// Leading constant for (u,e,s)-sequences in base b; s = e.size().
TezConstant c_tez(std::uint32_t b, std::uint32_t u, const std::vector<std::uint32_t>& e);

struct ConditionResult {
    Decimal ratio_lower_bound;  // (1/2) ((q-1)/q)^s prod e_i
    bool tez_better = false;    // prod e_i > 2 (q/(q-1))^s, decided on integers
};

ConditionResult compare_condition(std::uint32_t q, const std::vector<std::uint32_t>& e);

/// Leading term c N^-1 (log N)^s only.
Decimal bound_eval(const Decimal& c, const Decimal& N, std::uint32_t s);

struct DegreeProduct {
    boost::multiprecision::cpp_int lhs;  // prod of deg P_i over the first s places
    Decimal rhs;                         // (log_q s)^((1/q - eps) s)
    bool lhs_exceeds = false;
};

DegreeProduct degree_product_demo(const FunctionField& F, std::uint32_t s, const Decimal& epsilon);

}  // namespace ffseq
