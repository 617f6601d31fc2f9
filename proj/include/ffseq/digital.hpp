#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "ffseq/construct.hpp"
#include "ffseq/gf.hpp"

namespace ffseq {

/// One point of the digital method: m base-q digits per coordinate.
struct DigitPoint {
    std::uint32_t q = 2;
    std::vector<std::vector<std::uint32_t>> digits;  // digits[i][j] = digit j+1 of coordinate i

    double value(std::size_t i) const;
};

/// Points n = first, first+1, ... stored as flat digit arrays.
class DigitPointSet {
  public:
    DigitPointSet() = default;
    DigitPointSet(std::uint32_t q, std::size_t s, std::size_t m, std::size_t count)
        : q_(q), s_(s), m_(m), count_(count), digits_(count * s * m) {}

    std::uint32_t q() const { return q_; }
    std::size_t dimension() const { return s_; }
    std::size_t digits_per_coord() const { return m_; }
    std::size_t size() const { return count_; }

    std::uint32_t digit(std::size_t n, std::size_t i, std::size_t j) const { return digits_[(n * s_ + i) * m_ + j]; }
    std::uint32_t& digit(std::size_t n, std::size_t i, std::size_t j) { return digits_[(n * s_ + i) * m_ + j]; }
    const std::uint32_t* coord(std::size_t n, std::size_t i) const { return digits_.data() + (n * s_ + i) * m_; }

    /// Floating approximation of coordinate i of point n.
    double value(std::size_t n, std::size_t i) const;
    DigitPoint point(std::size_t n) const;

    friend bool operator==(const DigitPointSet&, const DigitPointSet&) = default;

  private:
    std::uint32_t q_ = 2;
    std::size_t s_ = 0;
    std::size_t m_ = 0;
    std::size_t count_ = 0;
    std::vector<std::uint32_t> digits_;
};

/// x_n truncated to m digits.
DigitPoint generate_point(const Field& F, const std::vector<GenMatrix>& mats, std::uint64_t n, std::size_t m);

/// The q^m points k q^m <= n < (k+1) q^m, in order of n.
DigitPointSet generate_block(const Field& F, const std::vector<GenMatrix>& mats, std::uint64_t k, std::size_t m);
DigitPointSet generate_block_serial(const Field& F, const std::vector<GenMatrix>& mats, std::uint64_t k, std::size_t m);

/// x_0 .. x_{N-1}, m digits each.
DigitPointSet generate_first(const Field& F, const std::vector<GenMatrix>& mats, std::uint64_t N, std::size_t m);

enum class PointFormat { floats, digits };

/// One point per line, coordinates separated by spaces. Digit strings use
/// 0-9a-z for q <= 36 and '.'-separated decimal digits otherwise.
void write_points(std::ostream& os, const DigitPointSet& pts, PointFormat format, int precision = 17);

}  // namespace ffseq
