#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ffseq/gf.hpp"

namespace ffseq {

/// Dense univariate polynomial over some F_q; coefficients constant-first,
/// never with trailing zeros. The zero polynomial has degree -1.
class Poly {
  public:
    Poly() = default;
    explicit Poly(std::vector<Elem> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly constant(Elem c) { return Poly({c}); }
    static Poly monomial(Elem c, std::size_t deg);
    /// x - a
    static Poly linear(const Field& F, Elem a);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Elem>& coeffs() const { return c_; }
    Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Elem{0}; }
    Elem lead() const { return c_.empty() ? Elem{0} : c_.back(); }
    bool is_monic() const { return !c_.empty() && c_.back().idx == 1; }

    friend bool operator==(const Poly&, const Poly&) = default;

  private:
    void trim() {
        while (!c_.empty() && c_.back().idx == 0) c_.pop_back();
    }
    std::vector<Elem> c_;
};

Poly add(const Field& F, const Poly& a, const Poly& b);
Poly sub(const Field& F, const Poly& a, const Poly& b);
Poly neg(const Field& F, const Poly& a);
Poly scale(const Field& F, const Poly& a, Elem c);
Poly mul(const Field& F, const Poly& a, const Poly& b);
/// (quotient, remainder) with deg(remainder) < deg(b); throws std::domain_error if b is zero.
std::pair<Poly, Poly> divmod(const Field& F, const Poly& a, const Poly& b);
Poly mod(const Field& F, const Poly& a, const Poly& b);
Elem eval(const Field& F, const Poly& f, Elem x);
Poly make_monic(const Field& F, const Poly& a);
/// Monic gcd (zero if both inputs are zero).
Poly gcd(const Field& F, const Poly& a, const Poly& b);
/// Largest k with p^k | f; f must be nonzero.
int multiplicity(const Field& F, const Poly& f, const Poly& p);

/// Trial division by every monic irreducible of degree <= deg(f)/2.
bool is_irreducible(const Field& F, const Poly& f);

/// All monic irreducibles of degree exactly e, in canonical order
/// (lexicographic in the coefficients read from degree e-1 down to 0).
std::vector<Poly> irreducibles_of_degree(const Field& F, std::uint32_t e);

/// The first `count` monic irreducibles, by degree, then canonical order.
std::vector<Poly> irreducible_enumerate(const Field& F, std::size_t count);

/// Number of monic irreducibles of degree exactly e, by the necklace formula.
std::uint64_t irreducible_count(const Field& F, std::uint32_t e);

/// Digits beta_0..beta_{K-1}, each of degree < deg(p), with
/// f = sum beta_k p^k (mod p^K). Throws std::invalid_argument unless p is
/// monic irreducible.
std::vector<Poly> padic_expansion(const Field& F, const Poly& f, const Poly& p, std::size_t K);

namespace detail {
std::vector<Poly> padic_expansion_unchecked(const Field& F, Poly f, const Poly& p, std::size_t K);
}

/// "deg c_0 c_1 ... c_deg" with coefficient indices; the zero polynomial is "-1".
std::string to_string(const Poly& f);
Poly parse_poly(const Field& F, const std::string& text);
/// Human-readable form such as "x^2+x+1" (coefficients as indices).
std::string pretty(const Poly& f);

}  // namespace ffseq
