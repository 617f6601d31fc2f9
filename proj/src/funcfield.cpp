#include "ffseq/funcfield.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "ffseq/linalg.hpp"
#include "laurent.hpp"

namespace ffseq {

using detail::Laurent;

namespace {
Poly mul_poly(const Field& F, const Poly& a, const Poly& b) { return ffseq::mul(F, a, b); }
}  // namespace

std::string to_string(FieldKind kind) { return kind == FieldKind::rational ? "rational" : "elliptic"; }

FieldKind parse_field_kind(const std::string& name) {
    if (name == "rational") return FieldKind::rational;
    if (name == "elliptic" || name == "elliptic_f2") return FieldKind::elliptic_f2;
    throw std::invalid_argument("unknown field kind: " + name);
}

std::string Place::to_string() const {
    std::string out = std::to_string(degree) + ":";
    if (infinite) return out + "inf";
    if (!residue) return out + ffseq::to_string(below);
    out += std::to_string(residue->xbar.idx) + "," + std::to_string(residue->ybar.idx);
    if (degree > 1) out += ";mu=" + ffseq::to_string(Poly(residue->field->modulus()));
    return out;
}

// ---------------------------------------------------------------------------

Divisor& Divisor::add(const Place& P, int n) {
    auto it = terms_.find(P.id);
    if (it == terms_.end()) {
        if (n != 0) terms_.emplace(P.id, std::make_pair(P, n));
        return *this;
    }
    it->second.second += n;
    if (it->second.second == 0) terms_.erase(it);
    return *this;
}

int Divisor::coefficient(const Place& P) const {
    auto it = terms_.find(P.id);
    return it == terms_.end() ? 0 : it->second.second;
}

std::int64_t Divisor::degree() const {
    std::int64_t d = 0;
    for (const auto& [id, term] : terms_) d += static_cast<std::int64_t>(term.second) * term.first.degree;
    return d;
}

std::string Divisor::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [id, term] : terms_) {
        if (!first) os << ' ';
        os << (term.second < 0 ? "-" : (first ? "" : "+")) << std::abs(term.second) << "[" << term.first.to_string()
           << "]";
        first = false;
    }
    return os.str();
}

bool operator==(const Divisor& a, const Divisor& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (const auto& [id, term] : a.terms_) {
        auto it = b.terms_.find(id);
        if (it == b.terms_.end() || it->second.second != term.second) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

FunctionField::FunctionField(FieldKind kind, FieldPtr fq, int genus, std::vector<int> gaps)
    : fq_(std::move(fq)), kind_(kind), genus_(genus), gaps_(std::move(gaps)) {
    p_inf_.id = 0;
    p_inf_.degree = 1;
    p_inf_.infinite = true;
}

FunctionField::~FunctionField() = default;

std::vector<Place> FunctionField::places(std::size_t count) const {
    std::lock_guard lock(cache_mutex_);
    if (place_cache_.size() < count) place_cache_ = enumerate_places(std::max(count, 2 * place_cache_.size()));
    return {place_cache_.begin(), place_cache_.begin() + static_cast<std::ptrdiff_t>(count)};
}

int FunctionField::nr_index(int r) const {
    if (r < 0) throw std::invalid_argument("n_r needs r >= 0");
    int n = -1;
    for (int i = 0; i <= r; ++i) {
        ++n;
        while (std::find(gaps_.begin(), gaps_.end(), n) != gaps_.end()) ++n;
    }
    return n;
}

FFElement FunctionField::from_poly(const Poly& a) const { return reduce({a, Poly{}, Poly::constant(fq_->one())}); }

FFElement FunctionField::reduce(FFElement f) const {
    const Field& F = *fq_;
    if (f.den.is_zero()) throw std::domain_error("zero denominator");
    if (f.is_zero()) return {Poly{}, Poly{}, Poly::constant(F.one())};
    Poly g = gcd(F, gcd(F, f.a, f.b), f.den);
    if (g.degree() > 0) {
        f.a = divmod(F, f.a, g).first;
        f.b = divmod(F, f.b, g).first;
        f.den = divmod(F, f.den, g).first;
    }
    const Elem s = F.inv(f.den.lead());
    return {ffseq::scale(F, f.a, s), ffseq::scale(F, f.b, s), ffseq::scale(F, f.den, s)};
}

FFElement FunctionField::add(const FFElement& f, const FFElement& g) const {
    const Field& F = *fq_;
    if (f.den == g.den) return reduce({ffseq::add(F, f.a, g.a), ffseq::add(F, f.b, g.b), f.den});
    return reduce({ffseq::add(F, mul_poly(F, f.a, g.den), mul_poly(F, g.a, f.den)),
                   ffseq::add(F, mul_poly(F, f.b, g.den), mul_poly(F, g.b, f.den)), mul_poly(F, f.den, g.den)});
}

FFElement FunctionField::sub(const FFElement& f, const FFElement& g) const {
    return add(f, scale(g, fq_->neg(fq_->one())));
}

FFElement FunctionField::scale(const FFElement& f, Elem c) const {
    if (c.idx == 0) return reduce({Poly{}, Poly{}, f.den});
    return {ffseq::scale(*fq_, f.a, c), ffseq::scale(*fq_, f.b, c), f.den};
}

std::string FunctionField::to_string(const FFElement& f) const {
    std::string num = pretty(f.a);
    if (!f.b.is_zero()) num = (f.a.is_zero() ? "" : num + " + ") + "(" + pretty(f.b) + ")y";
    if (f.den.degree() <= 0) return num;
    return "(" + num + ")/(" + pretty(f.den) + ")";
}

std::pair<int, std::vector<std::pair<Place, int>>> FunctionField::split_divisor(const Divisor& D) const {
    int n = 0;
    std::vector<std::pair<Place, int>> finite;
    for (const auto& [id, term] : D.terms()) {
        const auto& [P, coef] = term;
        if (P.infinite) {
            if (coef < 0) throw std::invalid_argument("unsupported divisor: negative coefficient at P_inf");
            n = coef;
            continue;
        }
        if (coef > 0) throw std::invalid_argument("unsupported divisor: positive coefficient at a finite place");
        const auto known = places(static_cast<std::size_t>(P.id));
        if (P.id < 1 || known.back().to_string() != P.to_string())
            throw std::invalid_argument("divisor place does not belong to this field");
        finite.emplace_back(P, -coef);
    }
    return {n, finite};
}

std::vector<FFElement> FunctionField::rr_basis(const Divisor& D) const { return rr_basis_by_linear_algebra(*this, D); }

// ---------------------------------------------------------------------------

std::vector<FFElement> rr_basis_by_linear_algebra(const FunctionField& FF, const Divisor& D) {
    const auto [n, finite] = FF.split_divisor(D);
    const Field& F = FF.constants();
    const auto monomials = FF.monomial_basis(n);
    std::size_t ncons = 0;
    for (const auto& [P, c] : finite) ncons += static_cast<std::size_t>(c) * P.degree;

    DenseMatrix A(monomials.size(), ncons);
    for (std::size_t j = 0; j < monomials.size(); ++j) {
        std::size_t col = 0;
        for (const auto& [P, c] : finite) {
            if (c == 0) continue;
            for (const auto& digit : FF.local_expansion(monomials[j], P, static_cast<std::size_t>(c)))
                for (Elem v : vector_decompose(digit.coeffs(), P.degree)) A(j, col++) = v;
        }
    }
    DenseMatrix ker = left_kernel(F, A);
    // Echelonize with the highest pole order as pivot.
    std::vector<std::size_t> order(monomials.size());
    for (std::size_t j = 0; j < order.size(); ++j) order[j] = order.size() - 1 - j;
    const auto pivots = rref(F, ker, order);

    std::vector<std::pair<std::size_t, FFElement>> out;
    for (std::size_t k = 0; k < pivots.size(); ++k) {
        FFElement f = FF.from_poly(Poly{});
        for (std::size_t j = 0; j < monomials.size(); ++j)
            if (ker(k, j).idx) f = FF.add(f, FF.scale(monomials[j], ker(k, j)));
        out.emplace_back(pivots[k], std::move(f));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<FFElement> basis;
    for (auto& [p, f] : out) basis.push_back(std::move(f));
    return basis;
}

// ---------------------------------------------------------------------------
// Series machinery shared by both field kinds.

namespace detail {

struct LocalSeries {
    std::shared_ptr<const ResidueInfo> residue;
    const ExtensionField* K = nullptr;
    int W = 0;  // relative precision of every stored series
    bool has_y = false;
    Laurent X, Y;
    std::vector<Laurent> xpow;    // X^j
    std::vector<Laurent> xpow_y;  // X^j * Y
};

}  // namespace detail

namespace {

using detail::LocalSeries;

std::shared_ptr<const ResidueInfo> trivial_residue(const FieldPtr& fq, const Poly& below) {
    auto info = std::make_shared<ResidueInfo>();
    std::vector<Elem> mu = below.is_zero() ? std::vector<Elem>{fq->zero(), fq->one()} : below.coeffs();
    info->field = std::make_shared<const ExtensionField>(fq, mu);
    info->xbar = info->field->generator();
    const std::size_t e = mu.size() - 1;
    info->basis_inverse.assign(e * e, fq->zero());
    for (std::size_t i = 0; i < e; ++i) info->basis_inverse[i * e + i] = fq->one();
    return info;
}

bool same_coeffs(const Laurent& a, const Laurent& b) { return a.order == b.order && a.c == b.c; }

std::shared_ptr<const LocalSeries> build_local_series(FieldKind kind, const FieldPtr& fq, const Place& P, int W,
                                                      int max_power) {
    auto ls = std::make_shared<LocalSeries>();
    ls->W = W;
    ls->has_y = kind == FieldKind::elliptic_f2;
    ls->residue = P.residue ? P.residue : trivial_residue(fq, P.infinite ? Poly{} : P.below);
    const ExtensionField& K = *ls->residue->field;
    ls->K = &K;

    if (P.infinite) {
        if (kind == FieldKind::rational) {
            ls->X = Laurent::monomial(-1, W);  // x = 1/z
        } else {
            // With u = x/y and v = 1/y the curve reads v = u^3 + v^2, so
            // v = u^3 V with V = 1 + u^3 V^2, x = u^-2 / V and y = u^-3 / V.
            Laurent V = Laurent::constant(K.one(), W);
            const Laurent u3 = Laurent::monomial(3, W);
            const Laurent one = Laurent::constant(K.one(), W);
            for (int it = 0; it <= W; ++it) {
                Laurent next = add(K, one, mul(K, u3, mul(K, V, V)));
                if (same_coeffs(next, V)) break;
                V = std::move(next);
            }
            Laurent Vinv = detail::inverse(K, V);
            ls->X = Vinv;
            ls->X.order = -2;
            ls->Y = Vinv;
            ls->Y.order = -3;
        }
    } else {
        const Elem xbar = ls->residue->xbar;
        const Field& F = *fq;
        if (P.below.degree() == 1) {
            ls->X = Laurent::constant(xbar, W);
            if (W > 1) ls->X.c[1] = K.one();  // x = a + z
        } else {
            // Solve pi(X) = z by Newton steps fixing one coefficient at a time.
            Poly dpi;
            {
                std::vector<Elem> d;
                for (std::size_t j = 1; j < P.below.coeffs().size(); ++j) {
                    Elem c{0};
                    for (std::size_t t = 0; t < j; ++t) c = F.add(c, P.below.coeffs()[j]);
                    d.push_back(c);
                }
                dpi = Poly(std::move(d));
            }
            Elem deriv{0};
            for (std::size_t j = dpi.coeffs().size(); j-- > 0;) deriv = K.add(K.mul(deriv, xbar), K.embed(dpi.coeffs()[j]));
            const Elem dinv = K.inv(deriv);
            Laurent X = Laurent::constant(xbar, W);
            const Laurent z = Laurent::monomial(1, W);
            for (int k = 1; k < W; ++k) {
                std::vector<Laurent> pw{Laurent::constant(K.one(), W), X};
                for (int j = 2; j <= P.below.degree(); ++j) pw.push_back(mul(K, pw.back(), X));
                Laurent err = sub(K, detail::eval_poly(K, P.below, pw, W), z);
                X.c[static_cast<std::size_t>(k)] = K.sub(X.c[static_cast<std::size_t>(k)], K.mul(detail::coeff_at(err, k), dinv));
            }
            ls->X = std::move(X);
        }
        if (ls->has_y) {
            // y = x^3 + y^2 in characteristic 2; each pass doubles the precision.
            const Laurent x3 = mul(K, ls->X, mul(K, ls->X, ls->X));
            Laurent Y = Laurent::constant(ls->residue->ybar, W);
            for (int it = 0; it < 64; ++it) {
                Laurent next = add(K, x3, mul(K, Y, Y));
                if (same_coeffs(next, Y)) break;
                Y = std::move(next);
            }
            ls->Y = std::move(Y);
        }
    }

    ls->xpow.push_back(Laurent::constant(K.one(), W));
    for (int j = 1; j <= max_power; ++j) ls->xpow.push_back(mul(K, ls->xpow.back(), ls->X));
    if (ls->has_y)
        for (int j = 0; j <= max_power; ++j) ls->xpow_y.push_back(mul(K, ls->xpow[static_cast<std::size_t>(j)], ls->Y));
    return ls;
}

Laurent eval_poly_times_y(const LocalSeries& ls, const Poly& b) {
    const ExtensionField& K = *ls.K;
    Laurent acc;
    bool first = true;
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) {
        const Elem c = b.coeffs()[j];
        if (c.idx == 0) continue;
        Laurent term = detail::scale(K, ls.xpow_y[j], K.embed(c));
        acc = first ? std::move(term) : add(K, acc, term);
        first = false;
    }
    return acc;
}

Laurent series_of(const LocalSeries& ls, const FFElement& f) {
    const ExtensionField& K = *ls.K;
    Laurent N = detail::eval_poly(K, f.a, ls.xpow, ls.W);
    if (!f.b.is_zero()) {
        Laurent by = eval_poly_times_y(ls, f.b);
        N = f.a.is_zero() ? by : add(K, N, by);
    }
    if (f.den.degree() <= 0) return N;
    return mul(K, N, detail::inverse(K, detail::eval_poly(K, f.den, ls.xpow, ls.W)));
}

int max_degree(const FFElement& f) { return std::max({f.a.degree(), f.b.degree(), f.den.degree(), 0}); }

// Digits of a series with nonnegative order at place P: coordinates of each
// residue in the residue basis, with representatives subtracted at each step
// for places of degree > 1.
std::vector<Poly> extract_digits(const LocalSeries& ls, Laurent S, const Place& P, std::size_t Kdig,
                                 const Field& F) {
    const ExtensionField& K = *ls.K;
    std::vector<Poly> digits;
    digits.reserve(Kdig);
    if (P.degree == 1) {
        for (std::size_t k = 0; k < Kdig; ++k) digits.push_back(Poly::constant(detail::coeff_at(S, static_cast<int>(k))));
        return digits;
    }
    const std::size_t e = P.degree;
    const std::size_t d = static_cast<std::size_t>(P.below.degree());
    std::vector<const Laurent*> reps;
    for (std::size_t j = 0; j < d; ++j) reps.push_back(&ls.xpow[j]);
    if (ls.residue->inert)
        for (std::size_t j = 0; j < d; ++j) reps.push_back(&ls.xpow_y[j]);
    const auto& Binv = ls.residue->basis_inverse;
    for (std::size_t k = 0; k < Kdig; ++k) {
        const Elem beta = detail::coeff_at(S, static_cast<int>(k));
        const auto coords = K.coords(beta);
        std::vector<Elem> c(e);
        for (std::size_t i = 0; i < e; ++i) {
            Elem acc{0};
            for (std::size_t j = 0; j < e; ++j) acc = F.add(acc, F.mul(Binv[i * e + j], coords[j]));
            c[i] = acc;
        }
        Laurent rep;
        bool first = true;
        for (std::size_t i = 0; i < e; ++i) {
            if (c[i].idx == 0) continue;
            Laurent term = detail::scale(K, *reps[i], K.embed(c[i]));
            rep = first ? std::move(term) : add(K, rep, term);
            first = false;
        }
        if (!first) {
            rep.order += static_cast<int>(k);
            S = sub(K, S, rep);
        }
        digits.emplace_back(std::move(c));
    }
    return digits;
}

}  // namespace

std::vector<Poly> local_expansion_by_series(const FunctionField& FF, const FFElement& f, const Place& P,
                                            std::size_t Kdig) {
    if (Kdig == 0) throw std::invalid_argument("expansion precision must be positive");
    if (f.is_zero()) return std::vector<Poly>(Kdig);
    const Field& F = FF.constants();
    int extra = 0;
    if (P.infinite)
        extra = std::max(FF.pole_order({f.a, f.b, Poly::constant(F.one())}), 0) + 2 * std::max(f.den.degree(), 0);
    else if (f.den.degree() > 0)
        extra = multiplicity(F, f.den, P.below);
    int W = static_cast<int>(Kdig) + extra + 1;
    for (;;) {
        auto ls = build_local_series(FF.kind(), FF.constants_ptr(), P, W, max_degree(f) + static_cast<int>(P.degree));
        Laurent S = detail::normalized(series_of(*ls, f));
        if (!S.c.empty() && S.order < 0) throw std::invalid_argument("element has a pole at the place");
        if (S.precision() >= static_cast<int>(Kdig)) return extract_digits(*ls, std::move(S), P, Kdig, F);
        W *= 2;
    }
}

// ---------------------------------------------------------------------------

namespace {

class RationalField final : public FunctionField {
  public:
    explicit RationalField(FieldPtr fq) : FunctionField(FieldKind::rational, std::move(fq), 0, {}) {}

    std::vector<FFElement> monomial_basis(int n) const override {
        std::vector<FFElement> out;
        for (int j = 0; j <= n; ++j) out.push_back(from_poly(Poly::monomial(fq_->one(), static_cast<std::size_t>(j))));
        return out;
    }

    int pole_order(const FFElement& f) const override {
        if (f.is_zero()) return INT_MIN;
        return f.a.degree() - f.den.degree();
    }

    int valuation(const FFElement& f, const Place& P) const override {
        if (f.is_zero()) return kInfiniteValuation;
        if (P.infinite) return -pole_order(f);
        return multiplicity(*fq_, f.a, P.below) - multiplicity(*fq_, f.den, P.below);
    }

    std::vector<Poly> local_expansion(const FFElement& f, const Place& P, std::size_t K) const override {
        if (K == 0) throw std::invalid_argument("expansion precision must be positive");
        const Field& F = *fq_;
        if (f.is_zero()) return std::vector<Poly>(K);
        if (P.infinite) {
            // z = 1/x: f = z^(deg den - deg a) * rev(a)(z) / rev(den)(z).
            const int shift = f.den.degree() - f.a.degree();
            if (shift < 0) throw std::invalid_argument("element has a pole at the place");
            std::vector<Elem> num(f.a.coeffs().rbegin(), f.a.coeffs().rend());
            std::vector<Elem> den(f.den.coeffs().rbegin(), f.den.coeffs().rend());
            num.resize(K + 1);
            den.resize(K + 1);
            std::vector<Elem> series(K);
            const Elem d0inv = F.inv(den[0]);
            for (std::size_t k = 0; k < K; ++k) {
                Elem acc = num[k];
                for (std::size_t j = 1; j <= k; ++j) acc = F.sub(acc, F.mul(den[j], series[k - j]));
                series[k] = F.mul(acc, d0inv);
            }
            std::vector<Poly> digits(K);
            for (std::size_t k = static_cast<std::size_t>(shift); k < K; ++k)
                digits[k] = Poly::constant(series[k - static_cast<std::size_t>(shift)]);
            return digits;
        }
        if (f.den.degree() <= 0) return detail::padic_expansion_unchecked(F, f.a, P.below, K);
        if (mod(F, f.den, P.below).is_zero()) throw std::invalid_argument("element has a pole at the place");
        // a / den mod pi^K via the inverse of den modulo pi^K.
        Poly modulus = Poly::constant(F.one());
        for (std::size_t k = 0; k < K; ++k) modulus = ffseq::mul(F, modulus, P.below);
        const Poly inv_den = inverse_mod(f.den, modulus);
        return detail::padic_expansion_unchecked(F, mod(F, ffseq::mul(F, f.a, inv_den), modulus), P.below, K);
    }

    std::vector<FFElement> rr_basis(const Divisor& D) const override {
        // L(n P_inf - sum c_i P_i) = G * F_q[x]_{<= n - deg G} with G = prod pi_i^c_i;
        // the reduced echelon element with pivot x^k is x^k - (x^k mod G).
        const auto [n, finite] = split_divisor(D);
        const Field& F = *fq_;
        Poly G = Poly::constant(F.one());
        for (const auto& [P, c] : finite)
            for (int i = 0; i < c; ++i) G = ffseq::mul(F, G, P.below);
        std::vector<FFElement> out;
        for (int k = G.degree(); k <= n; ++k) {
            const Poly xk = Poly::monomial(F.one(), static_cast<std::size_t>(k));
            out.push_back(from_poly(ffseq::sub(F, xk, mod(F, xk, G))));
        }
        return out;
    }

    FFElement mul(const FFElement& f, const FFElement& g) const override {
        return reduce({mul_poly(*fq_, f.a, g.a), Poly{}, mul_poly(*fq_, f.den, g.den)});
    }

    FFElement inv(const FFElement& f) const override {
        if (f.is_zero()) throw std::domain_error("inverse of zero");
        return reduce({f.den, Poly{}, f.a});
    }

  protected:
    std::vector<Place> enumerate_places(std::size_t count) const override {
        std::vector<Place> out;
        int id = 1;
        for (auto& pi : irreducible_enumerate(*fq_, count)) {
            Place P;
            P.id = id++;
            P.degree = static_cast<std::uint32_t>(pi.degree());
            P.below = std::move(pi);
            out.push_back(std::move(P));
        }
        return out;
    }

  private:
    Poly inverse_mod(const Poly& a, const Poly& m) const {
        const Field& F = *fq_;
        // Extended Euclid: track s with s*a = r (mod m).
        Poly r0 = m, r1 = mod(F, a, m), s0{}, s1 = Poly::constant(F.one());
        while (!r1.is_zero()) {
            auto [q, r] = divmod(F, r0, r1);
            Poly s = ffseq::sub(F, s0, ffseq::mul(F, q, s1));
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s);
        }
        if (r0.degree() != 0) throw std::domain_error("not invertible modulo");
        return mod(F, ffseq::scale(F, s0, F.inv(r0.lead())), m);
    }
};

class EllipticF2Field final : public FunctionField {
  public:
    explicit EllipticF2Field(FieldPtr fq) : FunctionField(FieldKind::elliptic_f2, std::move(fq), 1, {1}) {}

    std::vector<FFElement> monomial_basis(int n) const override {
        std::vector<FFElement> out;
        for (int o = 0; o <= n; ++o) {
            if (o % 2 == 0)
                out.push_back(from_poly(Poly::monomial(fq_->one(), static_cast<std::size_t>(o / 2))));
            else if (o >= 3)
                out.push_back(
                    {Poly{}, Poly::monomial(fq_->one(), static_cast<std::size_t>((o - 3) / 2)), Poly::constant(fq_->one())});
        }
        return out;
    }

    int pole_order(const FFElement& f) const override {
        if (f.is_zero()) return INT_MIN;
        int num = f.b.is_zero() ? 2 * f.a.degree()
                                : std::max(f.a.is_zero() ? INT_MIN : 2 * f.a.degree(), 2 * f.b.degree() + 3);
        return num - 2 * f.den.degree();
    }

    int valuation(const FFElement& f, const Place& P) const override {
        if (f.is_zero()) return kInfiniteValuation;
        if (P.infinite) return -pole_order(f);
        const FFElement num{f.a, f.b, Poly::constant(fq_->one())};
        // Degree of the zero divisor of num equals its pole order at P_inf.
        const int W = std::max(pole_order(num), 0) / static_cast<int>(P.degree) + 2;
        auto ls = local_series(P, W, max_degree(num));
        const Laurent S = detail::normalized(series_of(*ls, num));
        if (S.c.empty()) throw std::logic_error("valuation bound exceeded");
        return S.order - (f.den.degree() > 0 ? multiplicity(*fq_, f.den, P.below) : 0);
    }

    std::vector<Poly> local_expansion(const FFElement& f, const Place& P, std::size_t Kdig) const override {
        if (Kdig == 0) throw std::invalid_argument("expansion precision must be positive");
        if (f.is_zero()) return std::vector<Poly>(Kdig);
        if (P.infinite) return local_expansion_by_series(*this, f, P, Kdig);
        const int kc = f.den.degree() > 0 ? multiplicity(*fq_, f.den, P.below) : 0;
        int W = static_cast<int>(Kdig) + kc + 1;
        for (;;) {
            auto ls = local_series(P, W, max_degree(f) + static_cast<int>(P.degree));
            Laurent S = detail::normalized(series_of(*ls, f));
            if (!S.c.empty() && S.order < 0) throw std::invalid_argument("element has a pole at the place");
            if (S.precision() >= static_cast<int>(Kdig)) return extract_digits(*ls, std::move(S), P, Kdig, *fq_);
            W *= 2;
        }
    }

    FFElement mul(const FFElement& f, const FFElement& g) const override {
        const Field& F = *fq_;
        // y^2 = y + x^3 in characteristic 2.
        const Poly x3 = Poly::monomial(F.one(), 3);
        const Poly bb = mul_poly(F, f.b, g.b);
        Poly a = ffseq::add(F, mul_poly(F, f.a, g.a), mul_poly(F, bb, x3));
        Poly b = ffseq::add(F, ffseq::add(F, mul_poly(F, f.a, g.b), mul_poly(F, f.b, g.a)), bb);
        return reduce({std::move(a), std::move(b), mul_poly(F, f.den, g.den)});
    }

    FFElement inv(const FFElement& f) const override {
        if (f.is_zero()) throw std::domain_error("inverse of zero");
        const Field& F = *fq_;
        // (a + b y)(a + b + b y) = a^2 + a b + b^2 x^3.
        const Poly x3 = Poly::monomial(F.one(), 3);
        const Poly norm = ffseq::add(F, ffseq::add(F, mul_poly(F, f.a, f.a), mul_poly(F, f.a, f.b)),
                                     mul_poly(F, mul_poly(F, f.b, f.b), x3));
        return reduce({mul_poly(F, f.den, ffseq::add(F, f.a, f.b)), mul_poly(F, f.den, f.b), norm});
    }

  protected:
    std::vector<Place> enumerate_places(std::size_t count) const override {
        // Places of degree e lie over pi of degree e (split, two places) or
        // e/2 (inert, one place); the curve is unramified at every finite place.
        struct Candidate {
            std::uint32_t degree;
            int pi_degree;
            std::size_t pi_rank;
            std::uint32_t ybar;
            Place place;
        };
        const Field& F = *fq_;
        std::vector<Place> out;
        std::vector<std::vector<Poly>> irr(1);
        for (std::uint32_t e = 1; out.size() < count; ++e) {
            if (e > 16) throw std::length_error("place enumeration beyond residue degree 16");
            irr.push_back(irreducibles_of_degree(F, e));
            std::vector<Candidate> cands;
            for (std::size_t rank = 0; rank < irr[e].size(); ++rank)
                for (auto& P : split_places(irr[e][rank]))
                    cands.push_back({e, static_cast<int>(e), rank, P.residue->ybar.idx, std::move(P)});
            if (e % 2 == 0)
                for (std::size_t rank = 0; rank < irr[e / 2].size(); ++rank)
                    if (auto P = inert_place(irr[e / 2][rank], e))
                        cands.push_back({e, static_cast<int>(e / 2), rank, P->residue->ybar.idx, std::move(*P)});
            std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
                return std::tie(a.pi_degree, a.pi_rank, a.ybar) < std::tie(b.pi_degree, b.pi_rank, b.ybar);
            });
            for (auto& c : cands) {
                c.place.id = static_cast<int>(out.size()) + 1;
                out.push_back(std::move(c.place));
            }
        }
        out.resize(count);
        return out;
    }

  private:
    std::vector<Elem> roots_of_artin_schreier(const ExtensionField& K, Elem c) const {
        std::vector<Elem> roots;
        for (std::uint32_t i = 0; i < K.order(); ++i)
            if (K.add(K.mul(Elem{i}, Elem{i}), Elem{i}) == c) roots.push_back(Elem{i});
        return roots;
    }

    std::vector<Place> split_places(const Poly& pi) const {
        auto K = std::make_shared<const ExtensionField>(fq_, pi.coeffs());
        const Elem xbar = K->generator();
        const auto roots = roots_of_artin_schreier(*K, K->pow(xbar, 3));
        std::vector<Place> out;
        if (roots.empty()) return out;
        const std::size_t e = static_cast<std::size_t>(pi.degree());
        for (Elem yb : roots) {
            auto info = std::make_shared<ResidueInfo>();
            info->field = K;
            info->xbar = xbar;
            info->ybar = yb;
            info->basis_inverse.assign(e * e, fq_->zero());
            for (std::size_t i = 0; i < e; ++i) info->basis_inverse[i * e + i] = fq_->one();
            Place P;
            P.degree = static_cast<std::uint32_t>(e);
            P.below = pi;
            P.residue = std::move(info);
            out.push_back(std::move(P));
        }
        return out;
    }

    std::optional<Place> inert_place(const Poly& pi, std::uint32_t e) const {
        {
            // Inert exactly when y^2 + y = xbar^3 has no root over F_q[x]/(pi).
            ExtensionField small(fq_, pi.coeffs());
            if (!roots_of_artin_schreier(small, small.pow(small.generator(), 3)).empty()) return std::nullopt;
        }
        const Field& F = *fq_;
        const Poly mu = irreducibles_of_degree(F, e).front();
        auto K = std::make_shared<const ExtensionField>(fq_, mu.coeffs());
        std::optional<Elem> xbar;
        for (std::uint32_t i = 0; i < K->order() && !xbar; ++i) {
            Elem acc{0};
            for (std::size_t j = pi.coeffs().size(); j-- > 0;) acc = K->add(K->mul(acc, Elem{i}), K->embed(pi.coeffs()[j]));
            if (acc.idx == 0) xbar = Elem{i};
        }
        const auto roots = roots_of_artin_schreier(*K, K->pow(*xbar, 3));
        if (roots.empty()) throw std::logic_error("inert place without residue point");
        auto info = std::make_shared<ResidueInfo>();
        info->field = K;
        info->xbar = *xbar;
        info->ybar = roots.front();
        info->inert = true;
        // Residue basis: xbar^j, then xbar^j * ybar.
        const std::size_t d = static_cast<std::size_t>(pi.degree());
        DenseMatrix B(e, e);
        for (std::size_t j = 0; j < e; ++j) {
            Elem v = K->pow(*xbar, j % d);
            if (j >= d) v = K->mul(v, info->ybar);
            const auto c = K->coords(v);
            for (std::size_t i = 0; i < e; ++i) B(i, j) = c[i];
        }
        info->basis_inverse = inverse(F, B).data;
        Place P;
        P.degree = e;
        P.below = pi;
        P.residue = std::move(info);
        return P;
    }

    std::shared_ptr<const LocalSeries> local_series(const Place& P, int W, int max_power) const {
        std::lock_guard lock(series_mutex_);
        auto& slot = series_cache_[P.id];
        if (slot && slot->W >= W && static_cast<int>(slot->xpow.size()) > max_power) return slot;
        const int w = slot ? std::max(W, slot->W) : W;
        const int mp = slot ? std::max(max_power, static_cast<int>(slot->xpow.size()) - 1) : max_power;
        slot = build_local_series(kind(), fq_, P, w, mp);
        return slot;
    }

    mutable std::mutex series_mutex_;
    mutable std::map<int, std::shared_ptr<const LocalSeries>> series_cache_;
};

}  // namespace

FunctionFieldPtr make_function_field(FieldKind kind, FieldPtr fq) {
    if (!fq) throw std::invalid_argument("null constant field");
    if (kind == FieldKind::rational) return std::make_shared<const RationalField>(std::move(fq));
    if (fq->q() != 2) throw std::invalid_argument("the elliptic field y^2 + y = x^3 is provided over F_2 only");
    return std::make_shared<const EllipticF2Field>(std::move(fq));
}

}  // namespace ffseq
