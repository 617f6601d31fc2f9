#include "ffseq/construct.hpp"

#include <exception>
#include <istream>
#include <mutex>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ffseq {

std::string to_string(Mode mode) { return mode == Mode::plain ? "plain" : "finite_row"; }

Mode parse_mode(const std::string& name) {
    if (name == "plain") return Mode::plain;
    if (name == "finite_row" || name == "finite-row") return Mode::finite_row;
    throw std::invalid_argument("unknown mode: " + name);
}

SeqSpec SeqSpec::make(FunctionFieldPtr field, std::vector<Place> places, Mode mode) {
    if (!field) throw std::invalid_argument("null function field");
    if (places.empty()) throw std::invalid_argument("need at least one place");
    std::set<int> seen;
    for (const auto& P : places) {
        if (P.infinite) throw std::invalid_argument("P_inf cannot be one of P_1..P_s");
        if (!seen.insert(P.id).second) throw std::invalid_argument("places must be distinct: " + P.to_string());
    }
    const auto known = field->places(static_cast<std::size_t>(*seen.rbegin()));
    for (const auto& P : places)
        if (known[static_cast<std::size_t>(P.id - 1)].to_string() != P.to_string())
            throw std::invalid_argument("place does not belong to the field: " + P.to_string());
    SeqSpec spec;
    spec.field = std::move(field);
    spec.mode = mode;
    spec.u = spec.field->genus();
    for (const auto& P : places) {
        spec.e.push_back(P.degree);
        spec.v = std::lcm(spec.v, P.degree);
    }
    spec.places = std::move(places);
    return spec;
}

SeqSpec SeqSpec::first_places(FunctionFieldPtr field, std::size_t s, Mode mode) {
    if (!field) throw std::invalid_argument("null function field");
    auto pl = field->places(s);
    return make(std::move(field), std::move(pl), mode);
}

std::size_t GenMatrix::row_length(std::size_t d) const {
    if (d == 0 || d > rows_) throw std::out_of_range("row index");
    for (std::size_t r = cols_; r-- > 0;)
        if ((*this)(d - 1, r).idx) return r + 1;
    return 0;
}

std::vector<std::size_t> GenMatrix::row_lengths() const {
    std::vector<std::size_t> out(rows_, 0);
    for (std::size_t r = 0; r < cols_; ++r)
        for (std::size_t j = 0; j < rows_; ++j)
            if ((*this)(j, r).idx) out[j] = r + 1;
    return out;
}

GenMatrix GenMatrix::leading(std::size_t rows, std::size_t cols) const {
    if (rows > rows_ || cols > cols_) throw std::out_of_range("leading block exceeds matrix");
    GenMatrix out(rows, cols);
    for (std::size_t r = 0; r < cols; ++r)
        for (std::size_t j = 0; j < rows; ++j) out(j, r) = (*this)(j, r);
    return out;
}

LiDecomposition li_decompose(int r, int g, std::size_t s, std::uint32_t v) {
    if (r <= g) throw std::invalid_argument("li_decompose needs r > g");
    if (s == 0 || v == 0) throw std::invalid_argument("li_decompose needs s, v >= 1");
    LiDecomposition out;
    out.l.assign(s, 0);
    long long w = r - g;
    for (std::size_t j = s; j >= 1; --j) {
        const long long m = static_cast<long long>(j) * v;
        out.l[j - 1] = static_cast<int>(w / m);
        w %= m;
    }
    out.w1 = static_cast<int>(w);
    return out;
}

std::pair<Divisor, Divisor> divisor_pair(const SeqSpec& spec, int r) {
    const int g = spec.field->genus();
    const auto dec = li_decompose(r, g, spec.dimension(), spec.v);
    Divisor D, Dp;
    D.add(spec.field->infinite_place(), spec.field->nr_index(r));
    Dp.add(spec.field->infinite_place(), spec.field->nr_index(r - 1));
    int tail = 0;
    std::vector<int> c(spec.dimension());
    for (std::size_t i = spec.dimension(); i-- > 0;) {
        tail += dec.l[i];
        c[i] = tail * static_cast<int>(spec.v / spec.e[i]);
    }
    for (std::size_t i = 0; i < spec.dimension(); ++i) {
        D.add(spec.places[i], -c[i]);
        Dp.add(spec.places[i], -c[i]);
    }
    return {D, Dp};
}

FFElement select_yr(const SeqSpec& spec, int r) {
    if (r < 0) throw std::invalid_argument("column index must be nonnegative");
    const FunctionField& F = *spec.field;
    const int nr = F.nr_index(r);
    if (spec.mode == Mode::plain || r <= F.genus()) return F.monomial_basis(nr).back();
    const auto basis = F.rr_basis(divisor_pair(spec, r).first);
    if (basis.empty() || F.pole_order(basis.back()) != nr)
        throw std::logic_error("L(D_r) has no element of pole order n_r");
    return basis.back();
}

std::vector<std::vector<Elem>> build_column(const SeqSpec& spec, int r, std::size_t J) {
    const FFElement y = select_yr(spec, r);
    std::vector<std::vector<Elem>> cols;
    cols.reserve(spec.dimension());
    for (std::size_t i = 0; i < spec.dimension(); ++i) {
        const std::uint32_t e = spec.e[i];
        const std::size_t K = (J + e - 1) / e;
        std::vector<Elem> col;
        col.reserve(K * e);
        for (const auto& beta : spec.field->local_expansion(y, spec.places[i], K)) {
            const auto v = vector_decompose(beta.coeffs(), e);
            col.insert(col.end(), v.begin(), v.end());
        }
        col.resize(J);
        cols.push_back(std::move(col));
    }
    return cols;
}

namespace {

void store_column(std::vector<GenMatrix>& mats, std::size_t r, const std::vector<std::vector<Elem>>& cols) {
    for (std::size_t i = 0; i < mats.size(); ++i)
        for (std::size_t j = 0; j < cols[i].size(); ++j) mats[i](j, r) = cols[i][j];
}

}  // namespace

std::vector<GenMatrix> build_matrices_serial(const SeqSpec& spec, std::size_t J, std::size_t R) {
    if (J == 0 || R == 0) throw std::invalid_argument("J and R must be positive");
    std::vector<GenMatrix> mats(spec.dimension(), GenMatrix(J, R));
    for (std::size_t r = 0; r < R; ++r) store_column(mats, r, build_column(spec, static_cast<int>(r), J));
    return mats;
}

std::vector<GenMatrix> build_matrices(const SeqSpec& spec, std::size_t J, std::size_t R) {
    if (J == 0 || R == 0) throw std::invalid_argument("J and R must be positive");
    std::vector<GenMatrix> mats(spec.dimension(), GenMatrix(J, R));
    std::exception_ptr err;
    std::mutex err_mutex;
    const long long n = static_cast<long long>(R);
    // high columns cost more, so hand them out first
#pragma omp parallel for schedule(dynamic, 1)
    for (long long k = 0; k < n; ++k) {
        const std::size_t r = static_cast<std::size_t>(n - 1 - k);
        try {
            store_column(mats, r, build_column(spec, static_cast<int>(r), J));
        } catch (...) {
            std::lock_guard lock(err_mutex);
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    return mats;
}

std::int64_t row_length_bound(int g, std::size_t s, std::uint32_t v, std::size_t i, std::size_t d) {
    if (d == 0 || i == 0) throw std::invalid_argument("row and coordinate indices are 1-based");
    return g + static_cast<std::int64_t>(s) * v * static_cast<std::int64_t>((d - 1) / v) +
           static_cast<std::int64_t>(i) * v;
}

void write_matrices(std::ostream& os, const SeqSpec& spec, const std::vector<GenMatrix>& mats) {
    if (mats.empty()) throw std::invalid_argument("no matrices to write");
    const std::size_t J = mats[0].rows(), R = mats[0].cols();
    os << spec.field->constants().q() << ' ' << mats.size() << ' ' << J << ' ' << R << ' ' << to_string(spec.mode)
       << '\n';
    for (std::size_t i = 0; i < mats.size(); ++i) {
        os << "matrix " << i + 1 << ' ' << spec.e[i] << '\n';
        for (std::size_t j = 0; j < J; ++j) {
            for (std::size_t r = 0; r < R; ++r) os << (r ? " " : "") << mats[i](j, r).idx;
            os << '\n';
        }
        os << "rowlens:";
        for (auto l : mats[i].row_lengths()) os << ' ' << l;
        os << '\n';
    }
}

MatrixDump read_matrices(std::istream& is) {
    MatrixDump dump;
    std::size_t s = 0;
    std::string mode;
    if (!(is >> dump.q >> s >> dump.J >> dump.R >> mode)) throw std::runtime_error("bad matrix dump header");
    dump.mode = parse_mode(mode);
    for (std::size_t i = 0; i < s; ++i) {
        std::string tag;
        std::size_t idx = 0;
        std::uint32_t e = 0;
        if (!(is >> tag >> idx >> e) || tag != "matrix" || idx != i + 1)
            throw std::runtime_error("bad matrix block header");
        dump.e.push_back(e);
        GenMatrix m(dump.J, dump.R);
        for (std::size_t j = 0; j < dump.J; ++j)
            for (std::size_t r = 0; r < dump.R; ++r) {
                std::uint32_t x = 0;
                if (!(is >> x) || x >= dump.q) throw std::runtime_error("bad matrix entry");
                m(j, r) = Elem{x};
            }
        if (!(is >> tag) || tag != "rowlens:") throw std::runtime_error("missing rowlens line");
        const auto expect = m.row_lengths();
        for (std::size_t j = 0; j < dump.J; ++j) {
            std::size_t l = 0;
            if (!(is >> l) || l != expect[j]) throw std::runtime_error("rowlens do not match the entries");
        }
        dump.matrices.push_back(std::move(m));
    }
    return dump;
}

}  // namespace ffseq
