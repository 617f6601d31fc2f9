#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "ffseq/gf.hpp"
#include "ffseq/poly.hpp"

namespace ffseq {

enum class FieldKind { rational, elliptic_f2 };

std::string to_string(FieldKind kind);
FieldKind parse_field_kind(const std::string& name);

/// Residue-field data of a finite place: F_{q^e} = F_q[w]/(mu) together with
/// the images of x and y and the coordinate map for the residue basis.
struct ResidueInfo {
    std::shared_ptr<const ExtensionField> field;
    Elem xbar;
    Elem ybar;     // elliptic only
    bool inert = false;  // elliptic place of degree 2*deg(pi)
    /// Inverse of the matrix whose column j holds the coordinates of the j-th
    /// residue basis vector (xbar^j, then xbar^j * ybar for inert places).
    std::vector<Elem> basis_inverse;  // e x e, row-major
};

/// A place of the function field. Id 0 is P_inf; finite places get
/// 1 + their position in the canonical enumeration.
struct Place {
    int id = 0;
    std::uint32_t degree = 1;
    bool infinite = false;
    /// The monic irreducible pi(x) of F_q[x] lying under the place; also the
    /// local parameter used for expansions at finite places.
    Poly below;
    std::shared_ptr<const ResidueInfo> residue;  // filled for elliptic finite places

    /// "deg:data" (rational: polynomial, elliptic: residue coordinates, or "inf").
    std::string to_string() const;

    friend bool operator==(const Place& a, const Place& b) { return a.id == b.id; }
};

/// (a(x) + b(x) y) / den(x) in canonical reduced form; b = 0 in the rational field.
struct FFElement {
    Poly a;
    Poly b;
    Poly den;

    bool is_zero() const { return a.is_zero() && b.is_zero(); }
    friend bool operator==(const FFElement&, const FFElement&) = default;
};

inline constexpr int kInfiniteValuation = std::numeric_limits<int>::max();

class Divisor {
  public:
    Divisor() = default;

    /// Adds n*P to the divisor.
    Divisor& add(const Place& P, int n);
    int coefficient(const Place& P) const;
    std::int64_t degree() const;
    const std::map<int, std::pair<Place, int>>& terms() const { return terms_; }
    std::string to_string() const;

    friend bool operator==(const Divisor& a, const Divisor& b);

  private:
    std::map<int, std::pair<Place, int>> terms_;  // keyed by place id, zero coefficients dropped
};

namespace detail {
struct LocalSeries;
}

/// A global function field with full constant field F_q and a distinguished
/// rational place P_inf. Instances are immutable; queries are thread-safe.
class FunctionField {
  public:
    virtual ~FunctionField();

    FieldKind kind() const { return kind_; }
    const Field& constants() const { return *fq_; }
    const FieldPtr& constants_ptr() const { return fq_; }
    int genus() const { return genus_; }
    /// Gap numbers of P_inf.
    const std::vector<int>& gap_numbers() const { return gaps_; }
    const Place& infinite_place() const { return p_inf_; }

    /// First `count` places other than P_inf in canonical order.
    std::vector<Place> places(std::size_t count) const;

    /// r-th element of N_0 minus the gap numbers.
    int nr_index(int r) const;

    /// Standard basis of L(n P_inf), by strictly increasing pole order.
    virtual std::vector<FFElement> monomial_basis(int n) const = 0;

    /// -nu_{P_inf}(f); -infinity (as INT_MIN) for f = 0.
    virtual int pole_order(const FFElement& f) const = 0;

    /// Normalized valuation; kInfiniteValuation for f = 0.
    virtual int valuation(const FFElement& f, const Place& P) const = 0;

    /// Residue digits beta_0..beta_{K-1} at P, each given by its coordinates
    /// (constant first) in the residue basis of P. Throws if f has a pole at P.
    virtual std::vector<Poly> local_expansion(const FFElement& f, const Place& P, std::size_t K) const = 0;

    /// Echelon basis of L(D) for D = n P_inf - sum c_i P_i (n >= 0, c_i >= 0),
    /// by strictly increasing pole order; each pivot pole order occurs in
    /// exactly one element, whose leading coefficient is 1.
    virtual std::vector<FFElement> rr_basis(const Divisor& D) const;

    // Element arithmetic.
    FFElement from_poly(const Poly& a) const;
    FFElement one() const { return from_poly(Poly::constant(fq_->one())); }
    FFElement x() const { return from_poly(Poly({fq_->zero(), fq_->one()})); }
    FFElement add(const FFElement& f, const FFElement& g) const;
    FFElement sub(const FFElement& f, const FFElement& g) const;
    FFElement scale(const FFElement& f, Elem c) const;
    virtual FFElement mul(const FFElement& f, const FFElement& g) const = 0;
    /// Throws std::domain_error for f = 0.
    virtual FFElement inv(const FFElement& f) const = 0;

    std::string to_string(const FFElement& f) const;

  protected:
    friend std::vector<FFElement> rr_basis_by_linear_algebra(const FunctionField& F, const Divisor& D);

    FunctionField(FieldKind kind, FieldPtr fq, int genus, std::vector<int> gaps);

    virtual std::vector<Place> enumerate_places(std::size_t count) const = 0;
    FFElement reduce(FFElement f) const;
    /// Checks the supported divisor shape; returns (n, [(P_i, c_i)]).
    std::pair<int, std::vector<std::pair<Place, int>>> split_divisor(const Divisor& D) const;

    FieldPtr fq_;
    Place p_inf_;

  private:
    FieldKind kind_;
    int genus_;
    std::vector<int> gaps_;
    mutable std::mutex cache_mutex_;
    mutable std::vector<Place> place_cache_;
};

using FunctionFieldPtr = std::shared_ptr<const FunctionField>;

/// Creates the rational field F_q(x) or the genus-1 field of y^2 + y = x^3 over F_2.
FunctionFieldPtr make_function_field(FieldKind kind, FieldPtr fq);

/// Riemann-Roch basis computed by linear algebra on expansions of the
/// monomial basis of L(n P_inf), independent of any closed form.
std::vector<FFElement> rr_basis_by_linear_algebra(const FunctionField& F, const Divisor& D);

/// Local expansion computed through truncated Laurent series in the local
/// parameter over the residue field (works for both field kinds; the
/// rational field normally uses p-adic division instead).
std::vector<Poly> local_expansion_by_series(const FunctionField& F, const FFElement& f, const Place& P,
                                            std::size_t K);

}  // namespace ffseq
