#include "ffseq/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ffseq {

Poly Poly::monomial(Elem c, std::size_t deg) {
    std::vector<Elem> v(deg + 1);
    v[deg] = c;
    return Poly(std::move(v));
}

Poly Poly::linear(const Field& F, Elem a) { return Poly({F.neg(a), F.one()}); }

Poly add(const Field& F, const Poly& a, const Poly& b) {
    std::vector<Elem> c(std::max(a.coeffs().size(), b.coeffs().size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = F.add(a.coeff(i), b.coeff(i));
    return Poly(std::move(c));
}

Poly sub(const Field& F, const Poly& a, const Poly& b) {
    std::vector<Elem> c(std::max(a.coeffs().size(), b.coeffs().size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = F.sub(a.coeff(i), b.coeff(i));
    return Poly(std::move(c));
}

Poly neg(const Field& F, const Poly& a) {
    std::vector<Elem> c(a.coeffs());
    for (auto& v : c) v = F.neg(v);
    return Poly(std::move(c));
}

Poly scale(const Field& F, const Poly& a, Elem s) {
    if (s.idx == 0) return {};
    std::vector<Elem> c(a.coeffs());
    for (auto& v : c) v = F.mul(v, s);
    return Poly(std::move(c));
}

Poly mul(const Field& F, const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    const auto& x = a.coeffs();
    const auto& y = b.coeffs();
    std::vector<Elem> c(x.size() + y.size() - 1);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].idx == 0) continue;
        for (std::size_t j = 0; j < y.size(); ++j) c[i + j] = F.add(c[i + j], F.mul(x[i], y[j]));
    }
    return Poly(std::move(c));
}

std::pair<Poly, Poly> divmod(const Field& F, const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly{}, a};
    std::vector<Elem> r(a.coeffs());
    const auto& d = b.coeffs();
    const std::size_t db = d.size() - 1;
    const Elem lead_inv = F.inv(d.back());
    std::vector<Elem> q(r.size() - db);
    for (std::size_t i = r.size(); i-- > db;) {
        if (r[i].idx == 0) continue;
        const Elem c = F.mul(r[i], lead_inv);
        q[i - db] = c;
        for (std::size_t j = 0; j <= db; ++j) r[i - db + j] = F.sub(r[i - db + j], F.mul(c, d[j]));
    }
    r.resize(db);
    return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly mod(const Field& F, const Poly& a, const Poly& b) { return divmod(F, a, b).second; }

Elem eval(const Field& F, const Poly& f, Elem x) {
    Elem acc{0};
    const auto& c = f.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) acc = F.add(F.mul(acc, x), c[i]);
    return acc;
}

Poly make_monic(const Field& F, const Poly& a) {
    if (a.is_zero()) return a;
    return scale(F, a, F.inv(a.lead()));
}

Poly gcd(const Field& F, const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = mod(F, x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return make_monic(F, x);
}

int multiplicity(const Field& F, const Poly& f, const Poly& p) {
    if (f.is_zero()) throw std::invalid_argument("multiplicity of the zero polynomial");
    int k = 0;
    Poly g = f;
    for (;;) {
        auto [quo, rem] = divmod(F, g, p);
        if (!rem.is_zero()) return k;
        g = std::move(quo);
        ++k;
    }
}

namespace {

Poly monic_from_index(std::uint64_t n, std::uint32_t q, std::uint32_t e) {
    std::vector<Elem> c(e + 1);
    for (std::uint32_t j = 0; j < e; ++j) {
        c[j] = Elem{static_cast<std::uint32_t>(n % q)};
        n /= q;
    }
    c[e] = Elem{1};
    return Poly(std::move(c));
}

std::uint64_t checked_pow(std::uint64_t b, std::uint32_t e) {
    std::uint64_t r = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
        if (r > (std::uint64_t{1} << 62) / b) throw std::overflow_error("q^e exceeds 64-bit range");
        r *= b;
    }
    return r;
}

bool passes_trial_division(const Field& F, const Poly& f, const std::vector<std::vector<Poly>>& by_degree) {
    const int d = f.degree();
    for (int k = 1; 2 * k <= d && k < static_cast<int>(by_degree.size()); ++k)
        for (const auto& g : by_degree[k])
            if (mod(F, f, g).is_zero()) return false;
    return true;
}

// by_degree[k] holds all monic irreducibles of degree k, for k = 1..max_deg.
std::vector<std::vector<Poly>> irreducibles_up_to(const Field& F, std::uint32_t max_deg) {
    std::vector<std::vector<Poly>> by_degree(max_deg + 1);
    for (std::uint32_t e = 1; e <= max_deg; ++e) {
        const std::uint64_t n = checked_pow(F.q(), e);
        for (std::uint64_t i = 0; i < n; ++i) {
            Poly f = monic_from_index(i, F.q(), e);
            if (e > 1 && f.coeff(0).idx == 0) continue;
            if (passes_trial_division(F, f, by_degree)) by_degree[e].push_back(std::move(f));
        }
    }
    return by_degree;
}

}  // namespace

bool is_irreducible(const Field& F, const Poly& f) {
    if (f.degree() < 1) return false;
    if (f.degree() == 1) return true;
    const auto by_degree = irreducibles_up_to(F, static_cast<std::uint32_t>(f.degree() / 2));
    return passes_trial_division(F, f, by_degree);
}

std::vector<Poly> irreducibles_of_degree(const Field& F, std::uint32_t e) {
    if (e == 0) return {};
    auto lower = irreducibles_up_to(F, e / 2);
    std::vector<Poly> out;
    const std::uint64_t n = checked_pow(F.q(), e);
    for (std::uint64_t i = 0; i < n; ++i) {
        Poly f = monic_from_index(i, F.q(), e);
        if (e > 1 && f.coeff(0).idx == 0) continue;
        if (passes_trial_division(F, f, lower)) out.push_back(std::move(f));
    }
    return out;
}

std::vector<Poly> irreducible_enumerate(const Field& F, std::size_t count) {
    std::vector<Poly> out;
    std::vector<std::vector<Poly>> by_degree(1);
    for (std::uint32_t e = 1; out.size() < count; ++e) {
        by_degree.emplace_back();
        const std::uint64_t n = checked_pow(F.q(), e);
        for (std::uint64_t i = 0; i < n; ++i) {
            Poly f = monic_from_index(i, F.q(), e);
            if (e > 1 && f.coeff(0).idx == 0) continue;
            if (!passes_trial_division(F, f, by_degree)) continue;
            by_degree[e].push_back(f);
            if (out.size() < count) out.push_back(std::move(f));
        }
    }
    return out;
}

namespace {
int mobius(std::uint32_t n) {
    int result = 1;
    for (std::uint32_t d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        n /= d;
        if (n % d == 0) return 0;
        result = -result;
    }
    if (n > 1) result = -result;
    return result;
}
}  // namespace

std::uint64_t irreducible_count(const Field& F, std::uint32_t e) {
    if (e == 0) throw std::invalid_argument("degree must be positive");
    // sum_{d|e} mu(d) q^{e/d}, accumulated in signed 128-bit to absorb the negative terms.
    __int128 total = 0;
    for (std::uint32_t d = 1; d <= e; ++d) {
        if (e % d) continue;
        const int m = mobius(d);
        if (m) total += m * static_cast<__int128>(checked_pow(F.q(), e / d));
    }
    return static_cast<std::uint64_t>(total / e);
}

namespace detail {
std::vector<Poly> padic_expansion_unchecked(const Field& F, Poly f, const Poly& p, std::size_t K) {
    std::vector<Poly> digits;
    digits.reserve(K);
    for (std::size_t k = 0; k < K; ++k) {
        if (f.is_zero()) {
            digits.resize(K);
            break;
        }
        auto [quo, rem] = divmod(F, f, p);
        digits.push_back(std::move(rem));
        f = std::move(quo);
    }
    return digits;
}
}  // namespace detail

std::vector<Poly> padic_expansion(const Field& F, const Poly& f, const Poly& p, std::size_t K) {
    if (K == 0) throw std::invalid_argument("expansion precision must be positive");
    if (!p.is_monic()) throw std::invalid_argument("p-adic expansion needs a monic modulus");
    if (!is_irreducible(F, p)) throw std::invalid_argument("p-adic expansion needs an irreducible modulus");
    return detail::padic_expansion_unchecked(F, f, p, K);
}

std::string to_string(const Poly& f) {
    std::ostringstream os;
    os << f.degree();
    for (auto c : f.coeffs()) os << ' ' << c.idx;
    return os.str();
}

Poly parse_poly(const Field& F, const std::string& text) {
    std::istringstream is(text);
    long deg = 0;
    if (!(is >> deg) || deg < -1) throw std::invalid_argument("malformed polynomial: " + text);
    std::vector<Elem> c;
    for (long i = 0; i <= deg; ++i) {
        std::uint32_t v = 0;
        if (!(is >> v)) throw std::invalid_argument("malformed polynomial: " + text);
        c.push_back(F.element(v));
    }
    std::string rest;
    if (is >> rest) throw std::invalid_argument("trailing data in polynomial: " + text);
    Poly p(std::move(c));
    if (p.degree() != deg) throw std::invalid_argument("polynomial degree does not match its coefficients");
    return p;
}

std::string pretty(const Poly& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (int i = f.degree(); i >= 0; --i) {
        const auto c = f.coeff(static_cast<std::size_t>(i)).idx;
        if (!c) continue;
        if (!out.empty()) out += '+';
        if (c != 1 || i == 0) out += std::to_string(c);
        if (i >= 1) out += 'x';
        if (i > 1) out += '^' + std::to_string(i);
    }
    return out;
}

}  // namespace ffseq
