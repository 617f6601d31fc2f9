#include "ffseq/gf.hpp"

#include <stdexcept>
#include <string>

namespace ffseq {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

// Builds exp/log tables for a field of the given order from a reference
// multiplication on indices. Searches generators in index order, so the
// tables are deterministic.
template <class Mul>
detail::LogTables build_log_tables(std::uint32_t order, Mul mul) {
    detail::LogTables t;
    t.log.assign(order, 0);
    const std::uint32_t n = order - 1;
    t.exp.assign(2 * static_cast<std::size_t>(n), 0);
    if (n == 1) {
        t.exp = {1, 1};
        return t;
    }
    auto power = [&](std::uint32_t a, std::uint64_t e) {
        std::uint32_t r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    };
    const auto factors = prime_factors(n);
    std::uint32_t gen = 0;
    for (std::uint32_t c = 2; c < order && !gen; ++c) {
        bool primitive = true;
        for (auto f : factors)
            if (power(c, n / f) == 1) {
                primitive = false;
                break;
            }
        if (primitive) gen = c;
    }
    if (!gen) throw std::logic_error("no primitive element found; modulus not irreducible");
    std::uint32_t x = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        t.exp[i] = t.exp[i + n] = x;
        t.log[x] = i;
        x = mul(x, gen);
    }
    return t;
}

// Digit-vector helpers over F_p used during table construction only.
std::vector<std::uint32_t> to_digits(std::uint32_t idx, std::uint32_t base, std::uint32_t len) {
    std::vector<std::uint32_t> d(len);
    for (auto& v : d) {
        v = idx % base;
        idx /= base;
    }
    return d;
}

std::uint32_t from_digits(const std::vector<std::uint32_t>& d, std::uint32_t base) {
    std::uint32_t idx = 0;
    for (auto it = d.rbegin(); it != d.rend(); ++it) idx = idx * base + *it;
    return idx;
}

// Remainder of a modulo the monic polynomial m, all over F_p.
std::vector<std::uint32_t> mod_fp(std::vector<std::uint32_t> a, const std::vector<std::uint32_t>& m,
                                  std::uint32_t p) {
    const std::size_t dm = m.size() - 1;
    for (std::size_t i = a.size(); i-- > dm;) {
        const std::uint32_t c = a[i];
        if (!c) continue;
        for (std::size_t j = 0; j <= dm; ++j) a[i - dm + j] = (a[i - dm + j] + (p - c) * m[j]) % p;
    }
    a.resize(dm);
    return a;
}

bool divides_fp(const std::vector<std::uint32_t>& d, const std::vector<std::uint32_t>& a, std::uint32_t p) {
    for (auto c : mod_fp(a, d, p))
        if (c) return false;
    return true;
}

std::vector<std::uint32_t> canonical_modulus(std::uint32_t p, std::uint32_t k) {
    // Monic polynomials of degree k; lexicographic order over the coefficient
    // vector read from degree k-1 down to 0 equals numeric order of the index.
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < k; ++i) count *= p;
    for (std::uint64_t n = 0; n < count; ++n) {
        auto f = to_digits(static_cast<std::uint32_t>(n), p, k);
        f.push_back(1);
        if (k == 1) return f;
        if (f[0] == 0) continue;  // divisible by t
        bool irreducible = true;
        for (std::uint32_t dd = 1; dd <= k / 2 && irreducible; ++dd) {
            std::uint64_t cnt = 1;
            for (std::uint32_t i = 0; i < dd; ++i) cnt *= p;
            for (std::uint64_t c = 0; c < cnt; ++c) {
                auto g = to_digits(static_cast<std::uint32_t>(c), p, dd);
                g.push_back(1);
                if (divides_fp(g, f, p)) {
                    irreducible = false;
                    break;
                }
            }
        }
        if (irreducible) return f;
    }
    throw std::logic_error("no irreducible polynomial found");
}

}  // namespace

Field::Field(std::uint32_t p, std::uint32_t k) : p_(p), k_(k) {
    if (!is_prime(p)) throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
    if (k == 0) throw std::invalid_argument("extension degree must be at least 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        q *= p;
        if (q > kMaxOrder) throw std::invalid_argument("field order exceeds 2^16");
    }
    q_ = static_cast<std::uint32_t>(q);
    modulus_ = canonical_modulus(p, k);

    auto slow_mul = [this](std::uint32_t a, std::uint32_t b) {
        auto da = to_digits(a, p_, k_), db = to_digits(b, p_, k_);
        std::vector<std::uint32_t> prod(2 * k_ - 1, 0);
        for (std::uint32_t i = 0; i < k_; ++i)
            for (std::uint32_t j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
        return from_digits(mod_fp(std::move(prod), modulus_, p_), p_);
    };
    tables_ = build_log_tables(q_, slow_mul);

    neg_.resize(q_);
    for (std::uint32_t a = 0; a < q_; ++a) {
        auto d = to_digits(a, p_, k_);
        for (auto& c : d) c = (p_ - c) % p_;
        neg_[a] = from_digits(d, p_);
    }
    if (p_ != 2 && q_ <= 256) {
        add_table_.resize(static_cast<std::size_t>(q_) * q_);
        for (std::uint32_t a = 0; a < q_; ++a)
            for (std::uint32_t b = 0; b < q_; ++b) add_table_[a * q_ + b] = add_digitwise(Elem{a}, Elem{b}).idx;
    }
}

std::shared_ptr<const Field> Field::create(std::uint32_t p, std::uint32_t k) {
    return std::make_shared<const Field>(p, k);
}

Elem Field::element(std::uint32_t index) const {
    if (index >= q_)
        throw std::out_of_range("index " + std::to_string(index) + " outside F_" + std::to_string(q_));
    return Elem{index};
}

Elem Field::add_digitwise(Elem a, Elem b) const {
    if (k_ == 1) return Elem{(a.idx + b.idx) % p_};
    std::uint32_t x = a.idx, y = b.idx, r = 0, scale = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
        r += ((x % p_ + y % p_) % p_) * scale;
        x /= p_;
        y /= p_;
        scale *= p_;
    }
    return Elem{r};
}

Elem Field::inv(Elem a) const {
    if (a.idx == 0) throw std::domain_error("inverse of zero");
    const std::uint32_t n = q_ - 1;
    return Elem{tables_.exp[(n - tables_.log[a.idx]) % n]};
}

Elem Field::pow(Elem a, std::uint64_t e) const {
    if (e == 0) return one();
    if (a.idx == 0) return zero();
    const std::uint64_t n = q_ - 1;
    return Elem{tables_.exp[(static_cast<std::uint64_t>(tables_.log[a.idx]) * (e % n)) % n]};
}

std::vector<std::uint32_t> Field::coords(Elem a) const { return to_digits(a.idx, p_, k_); }

Elem Field::from_coords(std::span<const std::uint32_t> c) const {
    if (c.size() != k_) throw std::invalid_argument("coordinate vector has wrong length");
    std::uint32_t idx = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
        if (c[i] >= p_) throw std::invalid_argument("coordinate out of range");
        idx = idx * p_ + c[i];
    }
    return Elem{idx};
}

// ---------------------------------------------------------------------------

FieldElement::FieldElement(FieldPtr field, Elem value) : field_(std::move(field)), value_(value) {
    if (!field_) throw std::invalid_argument("null field");
    field_->element(value.idx);
}

const FieldPtr& FieldElement::common(const FieldElement& a, const FieldElement& b) {
    if (!(*a.field_ == *b.field_)) throw std::invalid_argument("field elements from different fields");
    return a.field_;
}

FieldElement FieldElement::inverse() const { return {field_, field_->inv(value_)}; }

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    const auto& f = FieldElement::common(a, b);
    return {f, f->add(a.value_, b.value_)};
}
FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    const auto& f = FieldElement::common(a, b);
    return {f, f->sub(a.value_, b.value_)};
}
FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    const auto& f = FieldElement::common(a, b);
    return {f, f->mul(a.value_, b.value_)};
}
FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    const auto& f = FieldElement::common(a, b);
    return {f, f->div(a.value_, b.value_)};
}
FieldElement FieldElement::operator-() const { return {field_, field_->neg(value_)}; }

// ---------------------------------------------------------------------------

ExtensionField::ExtensionField(FieldPtr base, std::vector<Elem> modulus)
    : base_(std::move(base)), modulus_(std::move(modulus)) {
    if (modulus_.size() < 2 || modulus_.back() != base_->one())
        throw std::invalid_argument("extension modulus must be monic of degree >= 1");
    e_ = static_cast<std::uint32_t>(modulus_.size() - 1);
    std::uint64_t order = 1;
    for (std::uint32_t i = 0; i < e_; ++i) {
        order *= base_->q();
        if (order > Field::kMaxOrder) throw std::invalid_argument("extension field order exceeds 2^16");
    }
    order_ = static_cast<std::uint32_t>(order);
    const Field& F = *base_;
    auto slow_mul = [&](std::uint32_t a, std::uint32_t b) {
        auto da = to_digits(a, F.q(), e_), db = to_digits(b, F.q(), e_);
        std::vector<Elem> prod(2 * e_ - 1);
        for (std::uint32_t i = 0; i < e_; ++i)
            for (std::uint32_t j = 0; j < e_; ++j)
                prod[i + j] = F.add(prod[i + j], F.mul(Elem{da[i]}, Elem{db[j]}));
        for (std::size_t i = prod.size(); i-- > e_;) {
            const Elem c = prod[i];
            if (c.idx == 0) continue;
            for (std::uint32_t j = 0; j <= e_; ++j)
                prod[i - e_ + j] = F.sub(prod[i - e_ + j], F.mul(c, modulus_[j]));
        }
        std::uint32_t idx = 0;
        for (std::size_t i = e_; i-- > 0;) idx = idx * F.q() + prod[i].idx;
        return idx;
    };
    tables_ = build_log_tables(order_, slow_mul);
}

Elem ExtensionField::generator() const {
    if (e_ == 1) return base_->neg(modulus_[0]);
    return Elem{base_->q()};
}

Elem ExtensionField::add(Elem a, Elem b) const {
    if (base_->p() == 2) return Elem{a.idx ^ b.idx};
    const std::uint32_t q = base_->q();
    std::uint32_t x = a.idx, y = b.idx, r = 0, scale = 1;
    for (std::uint32_t i = 0; i < e_; ++i) {
        r += base_->add(Elem{x % q}, Elem{y % q}).idx * scale;
        x /= q;
        y /= q;
        scale *= q;
    }
    return Elem{r};
}

Elem ExtensionField::neg(Elem a) const {
    if (base_->p() == 2) return a;
    const std::uint32_t q = base_->q();
    std::uint32_t x = a.idx, r = 0, scale = 1;
    for (std::uint32_t i = 0; i < e_; ++i) {
        r += base_->neg(Elem{x % q}).idx * scale;
        x /= q;
        scale *= q;
    }
    return Elem{r};
}

Elem ExtensionField::inv(Elem a) const {
    if (a.idx == 0) throw std::domain_error("inverse of zero");
    const std::uint32_t n = order_ - 1;
    return Elem{tables_.exp[(n - tables_.log[a.idx]) % n]};
}

Elem ExtensionField::pow(Elem a, std::uint64_t e) const {
    if (e == 0) return one();
    if (a.idx == 0) return zero();
    const std::uint64_t n = order_ - 1;
    return Elem{tables_.exp[(static_cast<std::uint64_t>(tables_.log[a.idx]) * (e % n)) % n]};
}

std::vector<Elem> ExtensionField::coords(Elem a) const {
    std::vector<Elem> c(e_);
    std::uint32_t x = a.idx;
    for (auto& v : c) {
        v = Elem{x % base_->q()};
        x /= base_->q();
    }
    return c;
}

Elem ExtensionField::from_coords(std::span<const Elem> c) const {
    if (c.size() != e_) throw std::invalid_argument("coordinate vector has wrong length");
    std::uint32_t idx = 0;
    for (std::size_t i = c.size(); i-- > 0;) idx = idx * base_->q() + base_->element(c[i].idx).idx;
    return Elem{idx};
}

// ---------------------------------------------------------------------------

std::vector<Elem> vector_decompose(std::span<const Elem> residue, std::uint32_t e) {
    if (e == 0) throw std::invalid_argument("extension degree must be positive");
    std::size_t len = residue.size();
    while (len > 0 && residue[len - 1].idx == 0) --len;
    if (len > e) throw std::invalid_argument("residue degree is not below the extension degree");
    std::vector<Elem> out(e);
    for (std::size_t i = 0; i < len; ++i) out[i] = residue[i];
    return out;
}

}  // namespace ffseq
