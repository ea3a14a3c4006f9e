#include "entwine/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace ent {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace

Matrix::Matrix(const Field& f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(f)) {}

Matrix Matrix::identity(const Field& f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(f);
    return m;
}

Matrix Matrix::from_ints(const Field& f, std::size_t rows, std::size_t cols,
                         std::initializer_list<long> entries) {
    require(entries.size() == rows * cols, "from_ints: entry count mismatch");
    Matrix m(f, rows, cols);
    std::size_t k = 0;
    for (long v : entries) m.data_[k++] = Scalar(f, v);
    return m;
}

Matrix Matrix::unit(const Field& f, std::size_t n, std::size_t i) {
    Matrix m(f, n, 1);
    m(i, 0) = Scalar::one(f);
    return m;
}

Matrix Matrix::row(const Field& f, const std::vector<Scalar>& entries) {
    Matrix m(f, 1, entries.size());
    m.data_ = entries;
    return m;
}

Matrix Matrix::column(const Field& f, const std::vector<Scalar>& entries) {
    Matrix m(f, entries.size(), 1);
    m.data_ = entries;
    return m;
}

Matrix Matrix::col(std::size_t j) const { return block(0, j, rows_, 1); }

Matrix Matrix::cols_range(std::size_t j0, std::size_t n) const { return block(0, j0, rows_, n); }

Matrix Matrix::rows_range(std::size_t i0, std::size_t n) const { return block(i0, 0, n, cols_); }

Matrix Matrix::block(std::size_t i0, std::size_t j0, std::size_t nr, std::size_t nc) const {
    require(i0 + nr <= rows_ && j0 + nc <= cols_, "block out of range");
    Matrix b(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
    return b;
}

void Matrix::set_block(std::size_t i0, std::size_t j0, const Matrix& b) {
    require(i0 + b.rows_ <= rows_ && j0 + b.cols_ <= cols_, "set_block out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
        for (std::size_t j = 0; j < b.cols_; ++j) (*this)(i0 + i, j0 + j) = b(i, j);
}

Matrix Matrix::transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool Matrix::is_zero() const {
    for (const auto& s : data_)
        if (!s.is_zero()) return false;
    return true;
}

Matrix Matrix::reshaped(std::size_t rows, std::size_t cols) const {
    require(rows * cols == data_.size(), "reshape size mismatch");
    Matrix m(field_, rows, cols);
    m.data_ = data_;
    return m;
}

Matrix Matrix::vectorized() const { return reshaped(rows_ * cols_, 1); }

Matrix& Matrix::operator+=(const Matrix& o) {
    require(rows_ == o.rows_ && cols_ == o.cols_, "matrix sum shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    require(rows_ == o.rows_ && cols_ == o.cols_, "matrix difference shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
}

Matrix& Matrix::operator*=(const Scalar& s) {
    for (auto& x : data_) x *= s;
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    require(a.cols_ == b.rows_, "matrix product shape mismatch");
    Matrix c(a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Scalar& x = a(i, k);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                const Scalar& y = b(k, j);
                if (!y.is_zero()) c(i, j) += x * y;
            }
        }
    }
    return c;
}

Matrix Matrix::operator-() const {
    Matrix m = *this;
    for (auto& x : m.data_) x = -x;
    return m;
}

bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string Matrix::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j).str();
    }
    os << "]";
    return os.str();
}

Matrix hstack(const std::vector<Matrix>& ms, const Field& f, std::size_t rows) {
    std::size_t cols = 0;
    for (const auto& m : ms) {
        require(m.rows() == rows, "hstack row mismatch");
        cols += m.cols();
    }
    Matrix out(f, rows, cols);
    std::size_t j = 0;
    for (const auto& m : ms) {
        out.set_block(0, j, m);
        j += m.cols();
    }
    return out;
}

Matrix vstack(const std::vector<Matrix>& ms, const Field& f, std::size_t cols) {
    std::size_t rows = 0;
    for (const auto& m : ms) {
        require(m.cols() == cols, "vstack column mismatch");
        rows += m.rows();
    }
    Matrix out(f, rows, cols);
    std::size_t i = 0;
    for (const auto& m : ms) {
        out.set_block(i, 0, m);
        i += m.rows();
    }
    return out;
}

Matrix hstack(const Matrix& a, const Matrix& b) { return hstack({a, b}, a.field(), a.rows()); }

Matrix vstack(const Matrix& a, const Matrix& b) { return vstack({a, b}, a.field(), a.cols()); }

Rref rref(const Matrix& m) {
    Rref r{m, {}};
    Matrix& a = r.form;
    const std::size_t rows = a.rows(), cols = a.cols();
    std::size_t prow = 0;
    for (std::size_t c = 0; c < cols && prow < rows; ++c) {
        std::size_t piv = prow;
        while (piv < rows && a(piv, c).is_zero()) ++piv;
        if (piv == rows) continue;
        if (piv != prow)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a(piv, j), a(prow, j));
        Scalar inv = a(prow, c).inverse();
        for (std::size_t j = c; j < cols; ++j) a(prow, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == prow || a(i, c).is_zero()) continue;
            Scalar fct = a(i, c);
            for (std::size_t j = c; j < cols; ++j)
                if (!a(prow, j).is_zero()) a(i, j) -= fct * a(prow, j);
        }
        r.pivots.push_back(c);
        ++prow;
    }
    return r;
}

std::size_t rank(const Matrix& m) { return rref(m).rank(); }

Matrix kernel_basis(const Matrix& m) {
    const Field& f = m.field();
    Rref r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : r.pivots) is_pivot[p] = true;
    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (!is_pivot[j]) free.push_back(j);
    Matrix k(f, m.cols(), free.size());
    for (std::size_t t = 0; t < free.size(); ++t) {
        std::size_t fj = free[t];
        k(fj, t) = Scalar::one(f);
        for (std::size_t i = 0; i < r.pivots.size(); ++i) k(r.pivots[i], t) = -r.form(i, fj);
    }
    return k;
}

std::optional<AffineSolution> solve_affine(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || b.cols() != 1) throw std::invalid_argument("solve_affine: dimension mismatch");
    const Field& f = a.field();
    Matrix aug = hstack(a, b);
    Rref r = rref(aug);
    if (!r.pivots.empty() && r.pivots.back() == a.cols()) return std::nullopt;
    Matrix x(f, a.cols(), 1);
    for (std::size_t i = 0; i < r.pivots.size(); ++i) x(r.pivots[i], 0) = r.form(i, a.cols());
    return AffineSolution{x, kernel_basis(a)};
}

Matrix kron(const Matrix& a, const Matrix& b) {
    const Field& f = a.field();
    Matrix c(f, a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Scalar& x = a(i, j);
            if (x.is_zero()) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    if (!b(k, l).is_zero()) c(i * b.rows() + k, j * b.cols() + l) = x * b(k, l);
        }
    return c;
}

Matrix kron(std::initializer_list<Matrix> factors) {
    require(factors.size() > 0, "kron of no factors");
    auto it = factors.begin();
    Matrix acc = *it++;
    for (; it != factors.end(); ++it) acc = kron(acc, *it);
    return acc;
}

Quotient quotient_projection(const Field& f, std::size_t ambient, const Matrix& relations) {
    require(relations.rows() == ambient || relations.cols() == 0, "relations must have ambient rows");
    Matrix rel = relations.cols() == 0 ? Matrix(f, ambient, 0) : relations;
    Rref r = rref(rel.transpose());
    std::vector<bool> is_pivot(ambient, false);
    for (auto p : r.pivots) is_pivot[p] = true;
    Quotient q;
    for (std::size_t j = 0; j < ambient; ++j)
        if (!is_pivot[j]) q.complement.push_back(j);
    q.projection = Matrix(f, q.complement.size(), ambient);
    q.section = Matrix(f, ambient, q.complement.size());
    for (std::size_t t = 0; t < q.complement.size(); ++t) {
        std::size_t j = q.complement[t];
        q.projection(t, j) = Scalar::one(f);
        q.section(j, t) = Scalar::one(f);
        // v ~ v - v[p] row_p for each RREF row with pivot p.
        for (std::size_t i = 0; i < r.pivots.size(); ++i) q.projection(t, r.pivots[i]) = -r.form(i, j);
    }
    return q;
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    const std::size_t n = m.rows();
    Rref r = rref(hstack(m, Matrix::identity(m.field(), n)));
    if (r.rank() < n || (n > 0 && r.pivots[n - 1] != n - 1)) return std::nullopt;
    return r.form.block(0, n, n, n);
}

std::optional<Matrix> left_inverse(const Matrix& m) {
    const std::size_t r = m.cols();
    Rref t = rref(m.transpose());
    if (t.rank() < r) return std::nullopt;
    // Rows of m at the pivot positions form an invertible r x r block.
    Matrix sub(m.field(), r, r), sel(m.field(), r, m.rows());
    for (std::size_t i = 0; i < r; ++i) {
        sub.set_block(i, 0, m.rows_range(t.pivots[i], 1));
        sel(i, t.pivots[i]) = Scalar::one(m.field());
    }
    return *inverse(sub) * sel;
}

Matrix column_basis(const Matrix& m) {
    Rref r = rref(m);
    Matrix b(m.field(), m.rows(), r.rank());
    for (std::size_t t = 0; t < r.rank(); ++t) b.set_block(0, t, m.col(r.pivots[t]));
    return b;
}

std::optional<Matrix> span_coordinates(const Matrix& basis, const Matrix& v) {
    auto sol = solve_affine(basis, v);
    if (!sol) return std::nullopt;
    return sol->particular;
}

}  // namespace ent
