#include "crx/exactfield.hpp"

#include <set>
#include <utility>

namespace crx {

Matrix Matrix::from_rows(const std::vector<std::vector<Scalar>>& rs) {
    Matrix m(rs.size(), rs.empty() ? 0 : rs[0].size());
    for (std::size_t i = 0; i < m.rows; ++i) {
        if (rs[i].size() != m.cols) throw FieldError("ragged rows");
        for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = rs[i][j];
    }
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    t.row_labels = col_labels;
    t.col_labels = row_labels;
    return t;
}

Matrix Matrix::submatrix(const std::vector<std::size_t>& r, const std::vector<std::size_t>& c) const {
    Matrix s(r.size(), c.size());
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = 0; j < c.size(); ++j) s.at(i, j) = at(r[i], c[j]);
    if (!row_labels.empty())
        for (auto i : r) s.row_labels.push_back(row_labels[i]);
    if (!col_labels.empty())
        for (auto j : c) s.col_labels.push_back(col_labels[j]);
    return s;
}

bool Matrix::is_zero() const {
    for (auto& x : a)
        if (!x.is_zero()) return false;
    return true;
}

void Matrix::check_labels() const {
    std::set<std::string> r(row_labels.begin(), row_labels.end()), c(col_labels.begin(), col_labels.end());
    if (r.size() != row_labels.size() || c.size() != col_labels.size()) throw FieldError("duplicate basis label");
    if ((!row_labels.empty() && row_labels.size() != rows) || (!col_labels.empty() && col_labels.size() != cols))
        throw FieldError("label count does not match matrix shape");
}

Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols != y.rows) throw FieldError("matrix shapes do not compose");
    Matrix r(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const Scalar& xik = x.at(i, k);
            if (xik.is_zero()) continue;
            for (std::size_t j = 0; j < y.cols; ++j)
                if (!y.at(k, j).is_zero()) r.at(i, j) += xik * y.at(k, j);
        }
    r.row_labels = x.row_labels;
    r.col_labels = y.col_labels;
    return r;
}

Scalar det(const Matrix& m) {
    if (m.rows != m.cols) throw FieldError("determinant of a non-square matrix");
    std::size_t n = m.rows;
    if (n == 0) return Scalar(1);
    std::vector<std::vector<Scalar>> a(n, std::vector<Scalar>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m.at(i, j);
    // Bareiss: after step k every entry is a (k+1)-minor, divided exactly by the previous pivot.
    Scalar prev(1);
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k].is_zero()) {
            std::size_t p = k + 1;
            while (p < n && a[p][k].is_zero()) ++p;
            if (p == n) return Scalar();
            std::swap(a[k], a[p]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                a[i][j] /= prev;
            }
            a[i][k] = Scalar();
        }
        prev = a[k][k];
    }
    Scalar d = a[n - 1][n - 1];
    return negate ? -d : d;
}

RankInfo rank_and_pivots(const Matrix& m) {
    std::vector<std::vector<Scalar>> a(m.rows, std::vector<Scalar>(m.cols));
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) a[i][j] = m.at(i, j);
    std::vector<std::size_t> origin(m.rows);
    for (std::size_t i = 0; i < m.rows; ++i) origin[i] = i;
    RankInfo info;
    Scalar prev(1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t p = r;
        while (p < m.rows && a[p][c].is_zero()) ++p;
        if (p == m.rows) continue;
        std::swap(a[r], a[p]);
        std::swap(origin[r], origin[p]);
        for (std::size_t i = r + 1; i < m.rows; ++i) {
            for (std::size_t j = c + 1; j < m.cols; ++j) {
                a[i][j] = a[i][j] * a[r][c] - a[i][c] * a[r][j];
                a[i][j] /= prev;
            }
            a[i][c] = Scalar();
        }
        prev = a[r][c];
        info.pivot_rows.push_back(origin[r]);
        info.pivot_cols.push_back(c);
        ++r;
    }
    info.rank = r;
    return info;
}

std::vector<std::vector<Scalar>> nullspace(const Matrix& m) {
    std::vector<std::vector<Scalar>> a(m.rows, std::vector<Scalar>(m.cols));
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) a[i][j] = m.at(i, j);
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t p = r;
        while (p < m.rows && a[p][c].is_zero()) ++p;
        if (p == m.rows) continue;
        std::swap(a[r], a[p]);
        Scalar inv = a[r][c].inv();
        for (std::size_t j = c; j < m.cols; ++j) a[r][j] *= inv;
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            Scalar f = a[i][c];
            for (std::size_t j = c; j < m.cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    std::vector<std::vector<Scalar>> basis;
    std::vector<bool> is_pivot(m.cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    for (std::size_t fc = 0; fc < m.cols; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<Scalar> v(m.cols);
        v[fc] = Scalar(1);
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][fc];
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace crx
