#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace ffseq {

/// Element of a finite field, stored as its canonical enumeration index.
/// The index reads the polynomial-basis coordinates as base-p digits
/// (constant coordinate is the least significant digit).
struct Elem {
    std::uint32_t idx = 0;

    friend constexpr bool operator==(Elem, Elem) = default;
    friend constexpr auto operator<=>(Elem, Elem) = default;
};

namespace detail {

struct LogTables {
    std::vector<std::uint32_t> exp;  // length 2(order-1), so exp[log a + log b] needs no reduction
    std::vector<std::uint32_t> log;  // log[0] unused
};

}  // namespace detail

/// The finite field F_q, q = p^k, realised as F_p[t]/(modulus) where modulus
/// is the lexicographically least monic irreducible of degree k.
///
/// Immutable after construction; every member function is const and
/// thread-safe.
class Field {
  public:
    static constexpr std::uint32_t kMaxOrder = 1u << 16;

    Field(std::uint32_t p, std::uint32_t k);

    static std::shared_ptr<const Field> create(std::uint32_t p, std::uint32_t k);

    std::uint32_t p() const { return p_; }
    std::uint32_t k() const { return k_; }
    std::uint32_t q() const { return q_; }

    /// k+1 coefficients over F_p, constant term first; leading coefficient is 1.
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    Elem zero() const { return Elem{0}; }
    Elem one() const { return Elem{1}; }
    Elem element(std::uint32_t index) const;

    bool is_zero(Elem a) const { return a.idx == 0; }

    Elem add(Elem a, Elem b) const {
        if (p_ == 2) return Elem{a.idx ^ b.idx};
        if (!add_table_.empty()) return Elem{add_table_[a.idx * q_ + b.idx]};
        return add_digitwise(a, b);
    }
    Elem neg(Elem a) const { return Elem{neg_[a.idx]}; }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const {
        if (a.idx == 0 || b.idx == 0) return Elem{0};
        return Elem{tables_.exp[tables_.log[a.idx] + tables_.log[b.idx]]};
    }
    /// Throws std::domain_error for a == 0.
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t e) const;

    /// Polynomial-basis coordinates (k residues mod p), constant first.
    std::vector<std::uint32_t> coords(Elem a) const;
    Elem from_coords(std::span<const std::uint32_t> c) const;

    /// The digit bijection Z_q -> F_q of the digital method (same map for every digit position).
    Elem psi(std::uint32_t z) const { return element(z); }
    std::uint32_t lambda_inv(Elem y) const { return y.idx; }

    friend bool operator==(const Field& a, const Field& b) { return a.p_ == b.p_ && a.k_ == b.k_; }

  private:
    Elem add_digitwise(Elem a, Elem b) const;

    std::uint32_t p_;
    std::uint32_t k_;
    std::uint32_t q_;
    std::vector<std::uint32_t> modulus_;
    detail::LogTables tables_;
    std::vector<std::uint32_t> neg_;
    std::vector<std::uint32_t> add_table_;  // only for q <= 256, p odd
};

using FieldPtr = std::shared_ptr<const Field>;

/// An element bundled with its field. Arithmetic between elements of
/// different fields throws std::invalid_argument.
class FieldElement {
  public:
    FieldElement(FieldPtr field, Elem value);

    const Field& field() const { return *field_; }
    const FieldPtr& field_ptr() const { return field_; }
    Elem value() const { return value_; }
    std::uint32_t index() const { return value_.idx; }

    FieldElement inverse() const;

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
    FieldElement operator-() const;

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return *a.field_ == *b.field_ && a.value_ == b.value_;
    }

  private:
    static const FieldPtr& common(const FieldElement& a, const FieldElement& b);

    FieldPtr field_;
    Elem value_;
};

/// F_{q^e} = F_q[w]/(modulus) over an arbitrary base field F_q. Elements are
/// indexed by reading their coordinates (base-field indices) as base-q digits.
/// Used for residue fields of places of degree e.
class ExtensionField {
  public:
    /// modulus: e+1 base-field coefficients, constant first, monic and irreducible.
    ExtensionField(FieldPtr base, std::vector<Elem> modulus);

    const Field& base() const { return *base_; }
    const FieldPtr& base_ptr() const { return base_; }
    std::uint32_t degree() const { return e_; }
    std::uint32_t order() const { return order_; }
    const std::vector<Elem>& modulus() const { return modulus_; }

    Elem zero() const { return Elem{0}; }
    Elem one() const { return Elem{1}; }
    /// Image of the base element c under the inclusion F_q -> F_{q^e}.
    Elem embed(Elem c) const { return c; }
    /// The class of w.
    Elem generator() const;

    Elem add(Elem a, Elem b) const;
    Elem neg(Elem a) const;
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const {
        if (a.idx == 0 || b.idx == 0) return Elem{0};
        return Elem{tables_.exp[tables_.log[a.idx] + tables_.log[b.idx]]};
    }
    Elem inv(Elem a) const;
    Elem pow(Elem a, std::uint64_t e) const;

    std::vector<Elem> coords(Elem a) const;
    Elem from_coords(std::span<const Elem> c) const;

  private:
    FieldPtr base_;
    std::vector<Elem> modulus_;
    std::uint32_t e_;
    std::uint32_t order_;
    detail::LogTables tables_;
};

/// Coordinates of a residue of degree < e in the monomial basis
/// (1, w, ..., w^{e-1}), constant first, padded with zeros to length e.
/// Throws std::invalid_argument if the residue has degree >= e.
std::vector<Elem> vector_decompose(std::span<const Elem> residue, std::uint32_t e);

bool is_prime(std::uint64_t n);

}  // namespace ffseq
