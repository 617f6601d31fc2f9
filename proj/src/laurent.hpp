#pragma once

// Truncated Laurent series over a residue field F_{q^e}. Internal to the
// function-field layer.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "ffseq/gf.hpp"
#include "ffseq/poly.hpp"

namespace ffseq::detail {

/// sum_k c[k] t^(order+k), known modulo t^(order + c.size()).
struct Laurent {
    int order = 0;
    std::vector<Elem> c;

    int precision() const { return order + static_cast<int>(c.size()); }

    static Laurent constant(Elem a, int rel_prec) {
        Laurent s;
        s.c.assign(static_cast<std::size_t>(rel_prec), Elem{0});
        if (rel_prec > 0) s.c[0] = a;
        return s;
    }
    /// t^k with the given relative precision.
    static Laurent monomial(int k, int rel_prec) {
        Laurent s = constant(Elem{1}, rel_prec);
        s.order = k;
        return s;
    }
};

inline Laurent normalized(Laurent a) {
    std::size_t lead = 0;
    while (lead < a.c.size() && a.c[lead].idx == 0) ++lead;
    a.order += static_cast<int>(lead);
    a.c.erase(a.c.begin(), a.c.begin() + static_cast<std::ptrdiff_t>(lead));
    return a;
}

inline bool known_zero(const Laurent& a) {
    return std::all_of(a.c.begin(), a.c.end(), [](Elem e) { return e.idx == 0; });
}

inline Elem coeff_at(const Laurent& a, int exponent) {
    if (exponent >= a.precision()) throw std::logic_error("series coefficient beyond known precision");
    if (exponent < a.order) return Elem{0};
    return a.c[static_cast<std::size_t>(exponent - a.order)];
}

inline Laurent add(const ExtensionField& K, const Laurent& a, const Laurent& b) {
    const int prec = std::min(a.precision(), b.precision());
    const int order = std::min(a.order, b.order);
    Laurent r;
    r.order = order;
    r.c.resize(static_cast<std::size_t>(std::max(0, prec - order)));
    for (int k = order; k < prec; ++k) r.c[static_cast<std::size_t>(k - order)] = K.add(coeff_at(a, k), coeff_at(b, k));
    return r;
}

inline Laurent scale(const ExtensionField& K, Laurent a, Elem s) {
    for (auto& v : a.c) v = K.mul(v, s);
    return a;
}

inline Laurent sub(const ExtensionField& K, const Laurent& a, const Laurent& b) {
    return add(K, a, scale(K, b, K.neg(K.one())));
}

inline Laurent mul(const ExtensionField& K, const Laurent& x, const Laurent& y) {
    Laurent a = normalized(x), b = normalized(y);
    if (a.c.empty() || b.c.empty()) {
        // A factor known only to vanish mod t^k: the product vanishes mod
        // t^(k + order of the other factor).
        Laurent r;
        r.order = a.order + b.order;
        return r;
    }
    const std::size_t n = std::min(a.c.size(), b.c.size());
    Laurent r;
    r.order = a.order + b.order;
    r.c.assign(n, Elem{0});
    for (std::size_t i = 0; i < n; ++i) {
        if (a.c[i].idx == 0) continue;
        for (std::size_t j = 0; i + j < n; ++j) r.c[i + j] = K.add(r.c[i + j], K.mul(a.c[i], b.c[j]));
    }
    return r;
}

inline Laurent inverse(const ExtensionField& K, const Laurent& x) {
    Laurent a = normalized(x);
    if (a.c.empty()) throw std::domain_error("inverse of a series that is zero to working precision");
    const std::size_t n = a.c.size();
    Laurent r;
    r.order = -a.order;
    r.c.assign(n, Elem{0});
    const Elem lead_inv = K.inv(a.c[0]);
    r.c[0] = lead_inv;
    for (std::size_t k = 1; k < n; ++k) {
        Elem acc{0};
        for (std::size_t j = 1; j <= k; ++j) acc = K.add(acc, K.mul(a.c[j], r.c[k - j]));
        r.c[k] = K.neg(K.mul(acc, lead_inv));
    }
    return r;
}

/// sum_j f_j X^j for base-field coefficients f_j, given X^0..X^deg(f).
inline Laurent eval_poly(const ExtensionField& K, const Poly& f, const std::vector<Laurent>& xpow, int rel_prec) {
    if (f.degree() >= static_cast<int>(xpow.size())) throw std::logic_error("series power table too short");
    Laurent acc = Laurent::constant(Elem{0}, rel_prec);
    acc.order = 0;
    bool first = true;
    for (std::size_t j = 0; j < f.coeffs().size(); ++j) {
        const Elem cj = f.coeffs()[j];
        if (cj.idx == 0) continue;
        Laurent term = scale(K, xpow[j], K.embed(cj));
        acc = first ? term : add(K, acc, term);
        first = false;
    }
    if (first) {
        // Zero polynomial: zero to every practical precision.
        acc.order = 0;
        acc.c.assign(static_cast<std::size_t>(rel_prec), Elem{0});
    }
    return acc;
}

}  // namespace ffseq::detail
