#include "ffseq/digital.hpp"

#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace ffseq {

namespace {

double digits_value(const std::uint32_t* d, std::size_t m, std::uint32_t q) {
    double v = 0.0;
    for (std::size_t j = m; j-- > 0;) v = (v + d[j]) / q;
    return v;
}

std::uint64_t checked_pow(std::uint64_t q, std::size_t m) {
    std::uint64_t r = 1;
    for (std::size_t j = 0; j < m; ++j) {
        if (r > (std::uint64_t{1} << 62) / q) throw std::overflow_error("q^m exceeds 2^62");
        r *= q;
    }
    return r;
}

void check_shapes(const std::vector<GenMatrix>& mats, std::size_t m) {
    if (mats.empty()) throw std::invalid_argument("no generating matrices");
    for (const auto& C : mats) {
        if (C.rows() != mats[0].rows() || C.cols() != mats[0].cols())
            throw std::invalid_argument("generating matrices differ in shape");
    }
    if (m > mats[0].rows()) throw std::invalid_argument("more output digits than matrix rows");
}

// Writes the m digits of every coordinate of x_n into out (s*m entries).
void point_digits(const Field& F, const std::vector<GenMatrix>& mats, std::uint64_t n, std::size_t m,
                  std::vector<Elem>& a, std::uint32_t* out) {
    const std::size_t R = mats[0].cols();
    const std::uint32_t q = F.q();
    a.assign(R, Elem{0});
    std::size_t len = 0;
    for (std::uint64_t t = n; t; t /= q) {
        if (len == R) throw std::out_of_range("index n needs more digits than the matrices have columns");
        a[len++] = F.psi(static_cast<std::uint32_t>(t % q));
    }
    for (std::size_t i = 0; i < mats.size(); ++i) {
        const GenMatrix& C = mats[i];
        for (std::size_t j = 0; j < m; ++j) {
            Elem y{0};
            for (std::size_t r = 0; r < len; ++r)
                if (a[r].idx) y = F.add(y, F.mul(C(j, r), a[r]));
            out[i * m + j] = F.lambda_inv(y);
        }
    }
}

}  // namespace

double DigitPoint::value(std::size_t i) const { return digits_value(digits.at(i).data(), digits[i].size(), q); }

double DigitPointSet::value(std::size_t n, std::size_t i) const { return digits_value(coord(n, i), m_, q_); }

DigitPoint DigitPointSet::point(std::size_t n) const {
    DigitPoint p;
    p.q = q_;
    for (std::size_t i = 0; i < s_; ++i) p.digits.emplace_back(coord(n, i), coord(n, i) + m_);
    return p;
}

DigitPoint generate_point(const Field& F, const std::vector<GenMatrix>& mats, std::uint64_t n, std::size_t m) {
    check_shapes(mats, m);
    std::vector<Elem> a;
    std::vector<std::uint32_t> buf(mats.size() * m);
    point_digits(F, mats, n, m, a, buf.data());
    DigitPoint p;
    p.q = F.q();
    for (std::size_t i = 0; i < mats.size(); ++i) p.digits.emplace_back(buf.begin() + i * m, buf.begin() + (i + 1) * m);
    return p;
}

DigitPointSet generate_block_serial(const Field& F, const std::vector<GenMatrix>& mats, std::uint64_t k,
                                    std::size_t m) {
    check_shapes(mats, m);
    const std::uint64_t size = checked_pow(F.q(), m);
    DigitPointSet out(F.q(), mats.size(), m, size);
    std::vector<Elem> a;
    for (std::uint64_t t = 0; t < size; ++t)
        point_digits(F, mats, k * size + t, m, a, &out.digit(static_cast<std::size_t>(t), 0, 0));
    return out;
}

DigitPointSet generate_block(const Field& F, const std::vector<GenMatrix>& mats, std::uint64_t k, std::size_t m) {
    check_shapes(mats, m);
    const std::uint64_t size = checked_pow(F.q(), m);
    // the last index decides whether the block fits
    if (size > 0) {
        std::vector<Elem> a;
        std::vector<std::uint32_t> probe(mats.size() * m);
        point_digits(F, mats, (k + 1) * size - 1, m, a, probe.data());
    }
    DigitPointSet out(F.q(), mats.size(), m, size);
    const long long n = static_cast<long long>(size);
#pragma omp parallel
    {
        std::vector<Elem> a;
#pragma omp for schedule(static)
        for (long long t = 0; t < n; ++t)
            point_digits(F, mats, k * size + static_cast<std::uint64_t>(t), m, a,
                         &out.digit(static_cast<std::size_t>(t), 0, 0));
    }
    return out;
}

DigitPointSet generate_first(const Field& F, const std::vector<GenMatrix>& mats, std::uint64_t N, std::size_t m) {
    check_shapes(mats, m);
    DigitPointSet out(F.q(), mats.size(), m, static_cast<std::size_t>(N));
    std::vector<Elem> a;
    for (std::uint64_t n = 0; n < N; ++n) point_digits(F, mats, n, m, a, &out.digit(static_cast<std::size_t>(n), 0, 0));
    return out;
}

void write_points(std::ostream& os, const DigitPointSet& pts, PointFormat format, int precision) {
    static constexpr char kAlphabet[] = "0123456789abcdefghijklmnopqrstuvwxyz";
    const auto flags = os.flags();
    const auto prec = os.precision();
    if (format == PointFormat::floats) os << std::setprecision(precision);
    for (std::size_t n = 0; n < pts.size(); ++n) {
        for (std::size_t i = 0; i < pts.dimension(); ++i) {
            if (i) os << ' ';
            if (format == PointFormat::floats) {
                os << pts.value(n, i);
                continue;
            }
            const std::uint32_t* d = pts.coord(n, i);
            for (std::size_t j = 0; j < pts.digits_per_coord(); ++j) {
                if (pts.q() <= 36) {
                    os << kAlphabet[d[j]];
                } else {
                    if (j) os << '.';
                    os << d[j];
                }
            }
        }
        os << '\n';
    }
    os.flags(flags);
    os.precision(prec);
}

}  // namespace ffseq
