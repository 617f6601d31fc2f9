#include "ffseq/linalg.hpp"

#include <numeric>
#include <stdexcept>
#include <utility>

namespace ffseq {

std::size_t rank(const Field& F, DenseMatrix m) {
    std::size_t r = 0;
    for (std::size_t col = 0; col < m.cols && r < m.rows; ++col) {
        std::size_t piv = r;
        while (piv < m.rows && m(piv, col).idx == 0) ++piv;
        if (piv == m.rows) continue;
        if (piv != r)
            for (std::size_t j = col; j < m.cols; ++j) std::swap(m(piv, j), m(r, j));
        const Elem inv = F.inv(m(r, col));
        for (std::size_t i = r + 1; i < m.rows; ++i) {
            if (m(i, col).idx == 0) continue;
            const Elem f = F.neg(F.mul(m(i, col), inv));
            for (std::size_t j = col; j < m.cols; ++j) m(i, j) = F.add(m(i, j), F.mul(f, m(r, j)));
        }
        ++r;
    }
    return r;
}

std::vector<std::size_t> rref(const Field& F, DenseMatrix& m, const std::vector<std::size_t>& column_order) {
    std::vector<std::size_t> order = column_order;
    if (order.empty()) {
        order.resize(m.cols);
        std::iota(order.begin(), order.end(), 0);
    }
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t col : order) {
        if (r == m.rows) break;
        std::size_t piv = r;
        while (piv < m.rows && m(piv, col).idx == 0) ++piv;
        if (piv == m.rows) continue;
        if (piv != r)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(piv, j), m(r, j));
        const Elem inv = F.inv(m(r, col));
        for (std::size_t j = 0; j < m.cols; ++j) m(r, j) = F.mul(m(r, j), inv);
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r || m(i, col).idx == 0) continue;
            const Elem f = F.neg(m(i, col));
            for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = F.add(m(i, j), F.mul(f, m(r, j)));
        }
        pivots.push_back(col);
        ++r;
    }
    return pivots;
}

DenseMatrix left_kernel(const Field& F, const DenseMatrix& m) {
    // Row-reduce [m | I]; rows whose m-part vanishes carry kernel vectors.
    DenseMatrix aug(m.rows, m.cols + m.rows);
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) aug(i, j) = m(i, j);
        aug(i, m.cols + i) = F.one();
    }
    std::vector<std::size_t> pivots;
    if (m.cols > 0) {
        std::vector<std::size_t> order(m.cols);
        std::iota(order.begin(), order.end(), 0);
        pivots = rref(F, aug, order);
    }
    const std::size_t dim = m.rows - pivots.size();
    DenseMatrix ker(dim, m.rows);
    for (std::size_t k = 0; k < dim; ++k)
        for (std::size_t j = 0; j < m.rows; ++j) ker(k, j) = aug(pivots.size() + k, m.cols + j);
    return ker;
}

DenseMatrix inverse(const Field& F, const DenseMatrix& m) {
    if (m.rows != m.cols) throw std::invalid_argument("inverse of a non-square matrix");
    const std::size_t n = m.rows;
    DenseMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = F.one();
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    if (rref(F, aug, order).size() != n) throw std::domain_error("singular matrix");
    DenseMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
    return out;
}

}  // namespace ffseq
