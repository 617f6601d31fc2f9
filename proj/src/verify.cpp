#include "ffseq/verify.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace ffseq {

std::string VerifyReport::to_string() const {
    if (skipped) return "SKIP";
    if (pass) return "PASS";
    std::ostringstream os;
    os << "FAIL";
    if (m >= 0) os << " m=" << m;
    if (!d.empty()) {
        os << " d=(";
        for (std::size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
        os << ')';
    }
    if (block >= 0) os << " k=" << block;
    if (!interval.empty()) os << " interval=" << interval;
    if (!note.empty()) os << ' ' << note;
    return os.str();
}

namespace {

// Rows inserted one at a time; each stored row is monic at its pivot and
// zero at the pivots of the rows before it.
class RowBasis {
  public:
    RowBasis(const Field& F, std::size_t width) : F_(&F), width_(width) {}

    bool add(std::vector<Elem> v) {
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            const Elem c = v[pivots_[k]];
            if (!c.idx) continue;
            const Elem f = F_->neg(c);
            const auto& row = rows_[k];
            for (std::size_t j = pivots_[k]; j < width_; ++j)
                if (row[j].idx) v[j] = F_->add(v[j], F_->mul(f, row[j]));
        }
        std::size_t piv = 0;
        while (piv < width_ && !v[piv].idx) ++piv;
        if (piv == width_) return false;
        const Elem inv = F_->inv(v[piv]);
        for (std::size_t j = piv; j < width_; ++j) v[j] = F_->mul(v[j], inv);
        rows_.push_back(std::move(v));
        pivots_.push_back(piv);
        return true;
    }

  private:
    const Field* F_;
    std::size_t width_;
    std::vector<std::vector<Elem>> rows_;
    std::vector<std::size_t> pivots_;
};

std::vector<Elem> matrix_row(const GenMatrix& C, std::size_t j, std::size_t width) {
    std::vector<Elem> v(width);
    for (std::size_t r = 0; r < width; ++r) v[r] = C(j, r);
    return v;
}

struct RankSearch {
    const Field& F;
    const std::vector<GenMatrix>& mats;
    const std::vector<std::uint32_t>& e;
    std::size_t width;
    int limit;
    bool stop_at_first;
    std::vector<std::uint32_t> d;
    std::optional<std::vector<std::uint32_t>> first;
    int min_dependent_sum = -1;

    // Visits d-vectors in lexicographic order: d_i = 0 subtree, then each
    // positive multiple of e_i with its subtree.
    bool dfs(std::size_t i, const RowBasis& basis, int sum) {
        if (i == mats.size()) return true;
        if (!dfs(i + 1, basis, sum)) return false;
        RowBasis b = basis;
        for (std::uint32_t di = e[i]; sum + static_cast<int>(di) <= limit; di += e[i]) {
            bool independent = true;
            for (std::uint32_t j = di - e[i]; j < di && independent; ++j) independent = b.add(matrix_row(mats[i], j, width));
            d[i] = di;
            if (!independent) {
                const int total = sum + static_cast<int>(di);
                if (!first) first = d;
                if (min_dependent_sum < 0 || total < min_dependent_sum) min_dependent_sum = total;
                d[i] = 0;
                if (stop_at_first) return false;
                break;  // larger d_i stay dependent
            }
            if (!dfs(i + 1, b, sum + static_cast<int>(di))) return false;
        }
        d[i] = 0;
        return true;
    }

    void run() {
        d.assign(mats.size(), 0);
        RowBasis b(F, width);
        dfs(0, b, 0);
    }
};

void check_dims(const std::vector<GenMatrix>& mats, const std::vector<std::uint32_t>& e, std::size_t rows,
                std::size_t cols) {
    if (mats.empty()) throw std::invalid_argument("no matrices");
    if (e.size() != mats.size()) throw std::invalid_argument("e-vector length differs from the number of matrices");
    for (auto ei : e)
        if (ei == 0) throw std::invalid_argument("e_i must be positive");
    for (const auto& C : mats)
        if (C.rows() < rows || C.cols() < cols) throw std::invalid_argument("matrices too small for the check");
}

std::optional<std::vector<std::uint32_t>> first_dependent(const Field& F, const std::vector<GenMatrix>& mats,
                                                          const std::vector<std::uint32_t>& e, int m, int limit) {
    RankSearch rs{F, mats, e, static_cast<std::size_t>(m), limit, true, {}, {}, -1};
    rs.run();
    return rs.first;
}

std::string range_text(int u, const std::vector<std::uint32_t>& e, const std::string& m_part) {
    std::ostringstream os;
    os << "u=" << u << " e=(";
    for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
    os << ") " << m_part;
    return os.str();
}

std::uint64_t ipow(std::uint64_t b, std::size_t k) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < k; ++i) r *= b;
    return r;
}

void enumerate_d(const std::vector<std::uint32_t>& e, int lo, int hi, std::vector<std::uint32_t>& d, std::size_t i,
                 int sum, std::vector<std::vector<std::uint32_t>>& out) {
    if (i == e.size()) {
        if (sum >= lo) out.push_back(d);
        return;
    }
    for (std::uint32_t di = 0; sum + static_cast<int>(di) <= hi; di += e[i]) {
        d[i] = di;
        enumerate_d(e, lo, hi, d, i + 1, sum + static_cast<int>(di), out);
    }
    d[i] = 0;
}

}  // namespace

VerifyReport net_rank_check(const Field& F, const std::vector<GenMatrix>& mats, int u,
                            const std::vector<std::uint32_t>& e, int m) {
    if (u < 0 || u > m) throw std::invalid_argument("need 0 <= u <= m");
    check_dims(mats, e, static_cast<std::size_t>(m - u), static_cast<std::size_t>(m));
    VerifyReport rep;
    rep.property = "net_rank";
    rep.range = range_text(u, e, "m=" + std::to_string(m));
    if (auto d = first_dependent(F, mats, e, m, m - u)) {
        rep.pass = false;
        rep.m = m;
        rep.d = *d;
    }
    return rep;
}

namespace {

VerifyReport seq_rank_impl(const Field& F, const std::vector<GenMatrix>& mats, int u,
                           const std::vector<std::uint32_t>& e, int M, bool parallel) {
    if (u < 0) throw std::invalid_argument("u must be nonnegative");
    if (M > u) check_dims(mats, e, static_cast<std::size_t>(M - u), static_cast<std::size_t>(M));
    VerifyReport rep;
    rep.property = "seq_rank";
    rep.range = range_text(u, e, "m<=" + std::to_string(M));
    const int lo = u + 1;
    const int count = std::max(0, M - u);
    std::vector<std::optional<std::vector<std::uint32_t>>> found(static_cast<std::size_t>(count));
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (int k = count - 1; k >= 0; --k) found[static_cast<std::size_t>(k)] = first_dependent(F, mats, e, lo + k, k + 1);
    } else {
        for (int k = 0; k < count; ++k) {
            found[static_cast<std::size_t>(k)] = first_dependent(F, mats, e, lo + k, k + 1);
            if (found[static_cast<std::size_t>(k)]) break;
        }
    }
    for (int k = 0; k < count; ++k)
        if (found[static_cast<std::size_t>(k)]) {
            rep.pass = false;
            rep.m = lo + k;
            rep.d = *found[static_cast<std::size_t>(k)];
            break;
        }
    return rep;
}

}  // namespace

VerifyReport seq_rank_check(const Field& F, const std::vector<GenMatrix>& mats, int u,
                            const std::vector<std::uint32_t>& e, int M) {
    return seq_rank_impl(F, mats, u, e, M, true);
}

VerifyReport seq_rank_check_serial(const Field& F, const std::vector<GenMatrix>& mats, int u,
                                   const std::vector<std::uint32_t>& e, int M) {
    return seq_rank_impl(F, mats, u, e, M, false);
}

VerifyReport geometric_net_check(const DigitPointSet& pts, int u, int m, const std::vector<std::uint32_t>& e,
                                 VolumeRule rule) {
    if (u < 0 || u > m) throw std::invalid_argument("need 0 <= u <= m");
    if (e.size() != pts.dimension()) throw std::invalid_argument("e-vector length differs from the dimension");
    for (auto ei : e)
        if (ei == 0) throw std::invalid_argument("e_i must be positive");
    const std::uint32_t q = pts.q();
    const std::uint64_t expected_total = ipow(q, static_cast<std::size_t>(m));
    if (pts.size() != expected_total) throw std::invalid_argument("a net check needs exactly q^m points");
    if (pts.digits_per_coord() < static_cast<std::size_t>(m)) throw std::invalid_argument("points carry fewer than m digits");

    VerifyReport rep;
    rep.property = rule == VolumeRule::at_least ? "geometric_net" : "geometric_net_equal_volume";
    rep.range = range_text(u, e, "m=" + std::to_string(m));
    std::vector<std::vector<std::uint32_t>> dvecs;
    std::vector<std::uint32_t> d(e.size(), 0);
    enumerate_d(e, rule == VolumeRule::exactly ? m - u : 0, m - u, d, 0, 0, dvecs);

    const std::size_t s = pts.dimension();
    std::vector<std::uint32_t> counts;
    for (const auto& dv : dvecs) {
        const int sum = std::accumulate(dv.begin(), dv.end(), 0);
        counts.assign(ipow(q, static_cast<std::size_t>(sum)), 0);
        for (std::size_t n = 0; n < pts.size(); ++n) {
            std::uint64_t key = 0;
            for (std::size_t i = 0; i < s; ++i) {
                const std::uint32_t* dig = pts.coord(n, i);
                for (std::uint32_t j = 0; j < dv[i]; ++j) key = key * q + dig[j];
            }
            ++counts[key];
        }
        const std::uint64_t want = ipow(q, static_cast<std::size_t>(m - sum));
        for (std::uint64_t key = 0; key < counts.size(); ++key) {
            if (counts[key] == want) continue;
            rep.pass = false;
            rep.m = m;
            rep.d = dv;
            // decode the mixed-radix key back into per-coordinate a_i
            std::vector<std::uint64_t> a(s);
            std::uint64_t rest = key;
            for (std::size_t i = s; i-- > 0;) {
                const std::uint64_t base = ipow(q, dv[i]);
                a[i] = rest % base;
                rest /= base;
            }
            std::ostringstream os;
            for (std::size_t i = 0; i < s; ++i) {
                const std::uint64_t den = ipow(q, dv[i]);
                os << (i ? "x" : "") << '[' << a[i] << '/' << den << ',' << a[i] + 1 << '/' << den << ')';
            }
            rep.interval = os.str();
            rep.note = "count=" + std::to_string(counts[key]) + " expected=" + std::to_string(want);
            return rep;
        }
    }
    return rep;
}

VerifyReport sequence_block_check(const Field& F, const std::vector<GenMatrix>& mats, int u,
                                  const std::vector<std::uint32_t>& e, int M, std::uint64_t Kmax) {
    if (u < 0) throw std::invalid_argument("u must be nonnegative");
    if (mats.empty()) throw std::invalid_argument("no matrices");
    VerifyReport rep;
    rep.property = "sequence_blocks";
    rep.range = range_text(u, e, "m<=" + std::to_string(M) + " k<=" + std::to_string(Kmax));
    if (M <= u) return rep;
    if (mats[0].rows() < static_cast<std::size_t>(M)) throw std::invalid_argument("matrices have fewer than M rows");
    // the largest index used must fit in R digits
    {
        std::uint64_t last = (Kmax + 1) * ipow(F.q(), static_cast<std::size_t>(M)) - 1;
        std::size_t len = 0;
        for (; last; last /= F.q()) ++len;
        if (len > mats[0].cols()) throw std::invalid_argument("not enough columns for (Kmax+1) q^M indices");
    }
    struct Job {
        int m;
        std::uint64_t k;
    };
    std::vector<Job> jobs;
    for (int m = u + 1; m <= M; ++m)
        for (std::uint64_t k = 0; k <= Kmax; ++k) jobs.push_back({m, k});
    std::vector<VerifyReport> results(jobs.size());
    const long long nj = static_cast<long long>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long long t = 0; t < nj; ++t) {
        const Job& job = jobs[static_cast<std::size_t>(t)];
        const auto pts = generate_block_serial(F, mats, job.k, static_cast<std::size_t>(job.m));
        results[static_cast<std::size_t>(t)] = geometric_net_check(pts, u, job.m, e);
    }
    for (std::size_t t = 0; t < jobs.size(); ++t)
        if (!results[t].pass) {
            rep.pass = false;
            rep.m = results[t].m;
            rep.d = results[t].d;
            rep.block = static_cast<std::int64_t>(jobs[t].k);
            rep.interval = results[t].interval;
            rep.note = results[t].note;
            break;
        }
    return rep;
}

MinimalT minimal_t(const Field& F, const std::vector<GenMatrix>& mats, int M) {
    if (M < 0) throw std::invalid_argument("M must be nonnegative");
    const std::vector<std::uint32_t> ones(mats.size(), 1);
    check_dims(mats, ones, static_cast<std::size_t>(M), static_cast<std::size_t>(M));
    std::vector<int> tm(static_cast<std::size_t>(M) + 1, 0);
#pragma omp parallel for schedule(dynamic, 1)
    for (int m = M; m >= 1; --m) {
        RankSearch rs{F, mats, ones, static_cast<std::size_t>(m), m, false, {}, {}, -1};
        rs.run();
        const int full = rs.min_dependent_sum < 0 ? m : rs.min_dependent_sum - 1;
        tm[static_cast<std::size_t>(m)] = m - full;
    }
    MinimalT out;
    out.M = M;
    out.t = *std::max_element(tm.begin(), tm.end());
    out.report = seq_rank_check(F, mats, out.t, ones, M);
    out.report.property = "minimal_t";
    out.report.range = "t=" + std::to_string(out.t) + " observed up to M=" + std::to_string(M);
    return out;
}

int t_from_ue(int u, const std::vector<std::uint32_t>& e, std::optional<int> m) {
    if (u < 0) throw std::invalid_argument("u must be nonnegative");
    long long t = u;
    for (auto ei : e) {
        if (ei == 0) throw std::invalid_argument("e_i must be positive");
        t += ei - 1;
    }
    if (m) {
        if (u > *m) throw std::invalid_argument("u must not exceed m");
        t = std::min<long long>(t, *m);
    }
    return static_cast<int>(t);
}

VerifyReport row_length_audit(const std::vector<GenMatrix>& mats, int g, std::uint32_t v, std::size_t s) {
    VerifyReport rep;
    rep.property = "row_lengths";
    rep.range = "g=" + std::to_string(g) + " v=" + std::to_string(v) + " s=" + std::to_string(s);
    for (std::size_t i = 0; i < mats.size(); ++i) {
        const auto lens = mats[i].row_lengths();
        for (std::size_t d = 1; d <= lens.size(); ++d) {
            const auto bound = row_length_bound(g, s, v, i + 1, d);
            if (static_cast<std::int64_t>(lens[d - 1]) > bound) {
                rep.pass = false;
                rep.note = "matrix=" + std::to_string(i + 1) + " row=" + std::to_string(d) +
                           " length=" + std::to_string(lens[d - 1]) + " bound=" + std::to_string(bound);
                return rep;
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------

RationalPointSet RationalPointSet::from_digits(const DigitPointSet& pts) {
    RationalPointSet out;
    out.s = pts.dimension();
    const std::size_t m = pts.digits_per_coord();
    if (m * std::bit_width(pts.q()) > 62) throw std::overflow_error("q^m too large for exact coordinates");
    out.den = ipow(pts.q(), m);
    out.num.reserve(pts.size() * out.s);
    for (std::size_t n = 0; n < pts.size(); ++n)
        for (std::size_t i = 0; i < out.s; ++i) {
            std::uint64_t v = 0;
            const std::uint32_t* d = pts.coord(n, i);
            for (std::size_t j = 0; j < m; ++j) v = v * pts.q() + d[j];
            out.num.push_back(v);
        }
    return out;
}

namespace {

using i128 = __int128;

// Sweep over the first coordinate; for each candidate t_1 the remaining
// coordinates are handled with a prefix-count table over the rank grid.
class StarSweep {
  public:
    explicit StarSweep(const RationalPointSet& pts) : s_(pts.s), N_(pts.size()) {
        if (s_ < 1 || s_ > 3) throw std::invalid_argument("exact star discrepancy supports s <= 3");
        if (N_ == 0) throw std::invalid_argument("empty point set");
        if (pts.num.size() != N_ * s_) throw std::invalid_argument("malformed point set");
        std::uint64_t g = pts.den;
        for (auto x : pts.num) {
            if (x >= pts.den) throw std::invalid_argument("coordinates must lie in [0,1)");
            g = std::gcd(g, x);
        }
        Q_ = pts.den / g;
        const int bits = std::bit_width(static_cast<std::uint64_t>(N_)) + static_cast<int>(s_) * std::bit_width(Q_);
        if (bits > 124) throw std::overflow_error("coordinates too fine for exact evaluation");
        Qs_ = 1;
        for (std::size_t i = 0; i < s_; ++i) Qs_ *= Q_;
        grid_.resize(s_);
        for (std::size_t i = 0; i < s_; ++i) {
            auto& gi = grid_[i];
            for (std::size_t n = 0; n < N_; ++n) gi.push_back(pts.num[n * s_ + i] / g);
            gi.push_back(Q_);
            std::sort(gi.begin(), gi.end());
            gi.erase(std::unique(gi.begin(), gi.end()), gi.end());
        }
        rank_.resize(N_ * s_);
        for (std::size_t n = 0; n < N_; ++n)
            for (std::size_t i = 0; i < s_; ++i) {
                const auto& gi = grid_[i];
                rank_[n * s_ + i] = static_cast<std::uint32_t>(
                    std::lower_bound(gi.begin(), gi.end(), pts.num[n * s_ + i] / g) - gi.begin());
            }
        n2_ = s_ >= 2 ? grid_[1].size() : 1;
        n3_ = s_ >= 3 ? grid_[2].size() : 1;
    }

    std::size_t first_axis() const { return grid_[0].size(); }

    /// Largest numerator over the common denominator N Q^s for t_1 = grid_[0][a].
    i128 evaluate(std::size_t a) const {
        std::vector<std::uint32_t> table(n2_ * n3_, 0);
        i128 best = 0;
        const i128 N = static_cast<i128>(N_);
        for (int pass = 0; pass < 2; ++pass) {
            // pass 0: x_1 < t_1 (open box), pass 1: x_1 <= t_1 (closed box)
            std::fill(table.begin(), table.end(), 0);
            for (std::size_t n = 0; n < N_; ++n) {
                const std::uint32_t r1 = rank_[n * s_];
                if (r1 < a || (pass == 1 && r1 == a)) {
                    const std::size_t r2 = s_ >= 2 ? rank_[n * s_ + 1] : 0;
                    const std::size_t r3 = s_ >= 3 ? rank_[n * s_ + 2] : 0;
                    ++table[r2 * n3_ + r3];
                }
            }
            for (std::size_t j2 = 0; j2 < n2_; ++j2)
                for (std::size_t j3 = 0; j3 < n3_; ++j3) {
                    std::uint32_t v = table[j2 * n3_ + j3];
                    if (j2) v += table[(j2 - 1) * n3_ + j3];
                    if (j3) v += table[j2 * n3_ + j3 - 1];
                    if (j2 && j3) v -= table[(j2 - 1) * n3_ + j3 - 1];
                    table[j2 * n3_ + j3] = v;
                }
            const i128 t1 = static_cast<i128>(grid_[0][a]);
            for (std::size_t j2 = 0; j2 < n2_; ++j2)
                for (std::size_t j3 = 0; j3 < n3_; ++j3) {
                    i128 vol = t1;
                    if (s_ >= 2) vol *= static_cast<i128>(grid_[1][j2]);
                    if (s_ >= 3) vol *= static_cast<i128>(grid_[2][j3]);
                    i128 cand;
                    if (pass == 0) {
                        // open box: points strictly below t in every coordinate
                        std::uint32_t open = 0;
                        if ((s_ < 2 || j2 > 0) && (s_ < 3 || j3 > 0))
                            open = table[(s_ >= 2 ? j2 - 1 : 0) * n3_ + (s_ >= 3 ? j3 - 1 : 0)];
                        cand = N * vol - static_cast<i128>(open) * Qs_;
                    } else {
                        cand = static_cast<i128>(table[j2 * n3_ + j3]) * Qs_ - N * vol;
                    }
                    best = std::max(best, cand);
                }
        }
        return best;
    }

    Rational result(i128 best) const {
        using boost::multiprecision::cpp_int;
        return Rational(cpp_int(best), cpp_int(static_cast<i128>(N_) * Qs_));
    }

  private:
    std::size_t s_;
    std::size_t N_;
    std::uint64_t Q_ = 1;
    i128 Qs_ = 1;
    std::vector<std::vector<std::uint64_t>> grid_;
    std::vector<std::uint32_t> rank_;
    std::size_t n2_ = 1, n3_ = 1;
};

}  // namespace

Rational star_discrepancy_exact_serial(const RationalPointSet& pts) {
    StarSweep sweep(pts);
    i128 best = 0;
    for (std::size_t a = 0; a < sweep.first_axis(); ++a) best = std::max(best, sweep.evaluate(a));
    return sweep.result(best);
}

Rational star_discrepancy_exact(const RationalPointSet& pts) {
    StarSweep sweep(pts);
    i128 best = 0;
    std::mutex mu;
    const long long n = static_cast<long long>(sweep.first_axis());
#pragma omp parallel
    {
        i128 local = 0;
#pragma omp for schedule(dynamic, 4)
        for (long long a = 0; a < n; ++a) local = std::max(local, sweep.evaluate(static_cast<std::size_t>(a)));
        std::lock_guard lock(mu);
        best = std::max(best, local);
    }
    return sweep.result(best);
}

// ---------------------------------------------------------------------------

EqualityRuleWitness find_equality_rule_witness(int m, std::uint64_t seed) {
    if (m < 3) throw std::invalid_argument("the witness needs m >= 3");
    auto F2 = Field::create(2, 1);
    const std::vector<std::uint32_t> e{2, 3};
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution bit(0.5);
    EqualityRuleWitness w;
    for (w.tries = 1; w.tries <= 100000; ++w.tries) {
        std::vector<GenMatrix> mats(2, GenMatrix(static_cast<std::size_t>(m), static_cast<std::size_t>(m)));
        for (auto& C : mats)
            for (std::size_t j = 0; j < C.rows(); ++j)
                for (std::size_t r = 0; r < C.cols(); ++r) C(j, r) = Elem{bit(rng) ? 1u : 0u};
        auto pts = generate_block_serial(*F2, mats, 0, static_cast<std::size_t>(m));
        if (!geometric_net_check(pts, m - 3, m, e, VolumeRule::exactly).pass) continue;
        if (geometric_net_check(pts, m - 2, m, e, VolumeRule::exactly).pass) continue;
        w.matrices = std::move(mats);
        w.points = std::move(pts);
        return w;
    }
    throw std::runtime_error("no witness found");
}

}  // namespace ffseq
