#pragma once

#include "entwine/scalar.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace ent {

// Dense row-major matrix over an exact field. Zero-sized shapes are valid.
class Matrix {
public:
    Matrix() = default;
    Matrix(const Field& f, std::size_t rows, std::size_t cols);

    static Matrix identity(const Field& f, std::size_t n);
    static Matrix from_ints(const Field& f, std::size_t rows, std::size_t cols,
                            std::initializer_list<long> entries);
    static Matrix unit(const Field& f, std::size_t n, std::size_t i);  // n x 1
    static Matrix row(const Field& f, const std::vector<Scalar>& entries);
    static Matrix column(const Field& f, const std::vector<Scalar>& entries);

    const Field& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    const std::vector<Scalar>& data() const { return data_; }

    Matrix col(std::size_t j) const;
    Matrix cols_range(std::size_t j0, std::size_t n) const;
    Matrix rows_range(std::size_t i0, std::size_t n) const;
    Matrix block(std::size_t i0, std::size_t j0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t i0, std::size_t j0, const Matrix& b);
    Matrix transpose() const;
    bool is_zero() const;
    // Reshape a rows*cols column vector (row-major) into a matrix, and back.
    Matrix reshaped(std::size_t rows, std::size_t cols) const;
    Matrix vectorized() const;

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(const Scalar& s);
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const Scalar& s) { return a *= s; }
    friend Matrix operator*(const Scalar& s, Matrix a) { return a *= s; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    Matrix operator-() const;
    friend bool operator==(const Matrix& a, const Matrix& b);
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    std::string str() const;

private:
    Field field_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> data_;
};

Matrix hstack(const std::vector<Matrix>& ms, const Field& f, std::size_t rows);
Matrix vstack(const std::vector<Matrix>& ms, const Field& f, std::size_t cols);
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);

struct Rref {
    Matrix form;
    std::vector<std::size_t> pivots;
    std::size_t rank() const { return pivots.size(); }
};

Rref rref(const Matrix& m);
std::size_t rank(const Matrix& m);

// Columns form a basis of the right null space.
Matrix kernel_basis(const Matrix& m);

struct AffineSolution {
    Matrix particular;  // cols(a) x 1
    Matrix kernel;      // cols(a) x (cols(a) - rank)
};

// Solve a x = b; nullopt when inconsistent. Throws on shape mismatch.
std::optional<AffineSolution> solve_affine(const Matrix& a, const Matrix& b);

// (a (x) b)(u (x) v) = a(u) (x) b(v), basis e_i (x) e_j at index i*dim+j.
Matrix kron(const Matrix& a, const Matrix& b);
Matrix kron(std::initializer_list<Matrix> factors);

struct Quotient {
    Matrix projection;  // dim x ambient
    Matrix section;     // ambient x dim
    std::vector<std::size_t> complement;  // ambient coordinates kept
    std::size_t dim() const { return projection.rows(); }
};

// Quotient of K^ambient by the column span of relations. The complement basis
// is the set of non-pivot coordinates of the RREF of the relation span.
Quotient quotient_projection(const Field& f, std::size_t ambient, const Matrix& relations);

std::optional<Matrix> inverse(const Matrix& m);

// L with L m = I for m of full column rank; nullopt otherwise.
std::optional<Matrix> left_inverse(const Matrix& m);

// Linearly independent columns spanning the column space (pivot columns).
Matrix column_basis(const Matrix& m);

// Coordinates of v (column) in terms of the columns of basis, if in the span.
std::optional<Matrix> span_coordinates(const Matrix& basis, const Matrix& v);

}  // namespace ent
