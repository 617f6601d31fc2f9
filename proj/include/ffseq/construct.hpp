#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ffseq/funcfield.hpp"

namespace ffseq {

enum class Mode { plain, finite_row };

std::string to_string(Mode mode);
Mode parse_mode(const std::string& name);

/// Construction parameters: P_1..P_s with e_i = deg P_i, v = lcm(e_i), u = g.
struct SeqSpec {
    FunctionFieldPtr field;
    std::vector<Place> places;
    std::vector<std::uint32_t> e;
    std::uint32_t v = 1;
    int u = 0;
    Mode mode = Mode::plain;

    /// Validates the places (distinct, finite, from this field) and derives e, v, u.
    static SeqSpec make(FunctionFieldPtr field, std::vector<Place> places, Mode mode);
    /// Uses the first s places of the canonical enumeration.
    static SeqSpec first_places(FunctionFieldPtr field, std::size_t s, Mode mode);

    std::size_t dimension() const { return places.size(); }
};

/// J x R matrix over F_q stored column by column.
class GenMatrix {
  public:
    GenMatrix() = default;
    GenMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Elem operator()(std::size_t j, std::size_t r) const { return data_[r * rows_ + j]; }
    Elem& operator()(std::size_t j, std::size_t r) { return data_[r * rows_ + j]; }
    const Elem* column(std::size_t r) const { return data_.data() + r * rows_; }

    /// Length of row d (1-based): index of the last nonzero entry, 0 for a zero row.
    std::size_t row_length(std::size_t d) const;
    std::vector<std::size_t> row_lengths() const;

    /// Leading rows x cols submatrix.
    GenMatrix leading(std::size_t rows, std::size_t cols) const;

    friend bool operator==(const GenMatrix&, const GenMatrix&) = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Elem> data_;
};

struct LiDecomposition {
    std::vector<int> l;  // l[i-1] = l_i
    int w1 = 0;
};

/// r - g = s v l_s + w_s, w_s = (s-1) v l_{s-1} + w_{s-1}, ..., w_2 = v l_1 + w_1.
/// Requires r > g.
LiDecomposition li_decompose(int r, int g, std::size_t s, std::uint32_t v);

/// (D_r, D'_r) of the finite-row construction; requires r > g.
std::pair<Divisor, Divisor> divisor_pair(const SeqSpec& spec, int r);

/// The element y_r used for column r.
FFElement select_yr(const SeqSpec& spec, int r);

/// Column r of every C^(i), each truncated to J entries.
std::vector<std::vector<Elem>> build_column(const SeqSpec& spec, int r, std::size_t J);

/// Generating matrices C^(1..s), J x R. Columns are built in parallel.
std::vector<GenMatrix> build_matrices(const SeqSpec& spec, std::size_t J, std::size_t R);
/// Same result, one column at a time.
std::vector<GenMatrix> build_matrices_serial(const SeqSpec& spec, std::size_t J, std::size_t R);

/// g + s v floor((d-1)/v) + i v, for 1-based row d and coordinate i.
std::int64_t row_length_bound(int g, std::size_t s, std::uint32_t v, std::size_t i, std::size_t d);

/// Text dump: "q s J R mode", then per matrix "matrix i e_i", J rows and "rowlens: ...".
void write_matrices(std::ostream& os, const SeqSpec& spec, const std::vector<GenMatrix>& mats);

struct MatrixDump {
    std::uint32_t q = 0;
    std::size_t J = 0, R = 0;
    Mode mode = Mode::plain;
    std::vector<std::uint32_t> e;
    std::vector<GenMatrix> matrices;
};
MatrixDump read_matrices(std::istream& is);

}  // namespace ffseq
