#include "entwine/algebra.hpp"

#include <stdexcept>

namespace ent {

namespace {

void require_shape(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("shape mismatch: " + what);
}

void check_coalgebra_shapes(const Coalgebra& c) {
    require_shape(c.delta.rows() == c.dim * c.dim && c.delta.cols() == c.dim, "delta must be dim^2 x dim");
    require_shape(c.counit.rows() == 1 && c.counit.cols() == c.dim, "counit must be 1 x dim");
}

}  // namespace

std::vector<std::string> default_basis(const std::string& stem, std::size_t n) {
    std::vector<std::string> b;
    for (std::size_t i = 0; i < n; ++i) b.push_back(stem + std::to_string(i));
    return b;
}

Coalgebra make_coalgebra(const Field& f, Matrix delta, Matrix counit, std::vector<std::string> basis) {
    Coalgebra c;
    c.field = f;
    c.dim = counit.cols();
    c.delta = std::move(delta);
    c.counit = std::move(counit);
    c.basis = basis.empty() ? default_basis("e", c.dim) : std::move(basis);
    return c;
}

Coalgebra grouplike_coalgebra(const Field& f, std::size_t n, const std::string& stem) {
    Matrix delta(f, n * n, n), counit(f, 1, n);
    for (std::size_t i = 0; i < n; ++i) {
        delta(i * n + i, i) = Scalar::one(f);
        counit(0, i) = Scalar::one(f);
    }
    return make_coalgebra(f, delta, counit, default_basis(stem, n));
}

Coalgebra comatrix_coalgebra(const Field& f, std::size_t n) {
    const std::size_t k = n * n;
    Matrix delta(f, k * k, k), counit(f, 1, k);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            names.push_back("e" + std::to_string(i) + std::to_string(j));
            for (std::size_t m = 0; m < n; ++m) delta((i * n + m) * k + (m * n + j), i * n + j) = Scalar::one(f);
            if (i == j) counit(0, i * n + j) = Scalar::one(f);
        }
    return make_coalgebra(f, delta, counit, names);
}

HopfAlgebra cyclic_group_algebra(const Field& f, std::size_t n) {
    HopfAlgebra h;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(i == 0 ? "1" : (i == 1 ? "g" : "g" + std::to_string(i)));
    h.coalg = grouplike_coalgebra(f, n);
    h.coalg.basis = names;
    h.mult = Matrix(f, n, n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) h.mult((a + b) % n, a * n + b) = Scalar::one(f);
    h.unit = Matrix::unit(f, n, 0);
    h.antipode = Matrix(f, n, n);
    for (std::size_t a = 0; a < n; ++a) h.antipode((n - a) % n, a) = Scalar::one(f);
    return h;
}

Matrix swap_matrix(const Field& f, std::size_t a, std::size_t b) {
    Matrix s(f, a * b, a * b);
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < b; ++j) s(j * a + i, i * b + j) = Scalar::one(f);
    return s;
}

Verdict verify_coalgebra(const Coalgebra& c) {
    check_coalgebra_shapes(c);
    const Field& f = c.field;
    const Matrix id = Matrix::identity(f, c.dim);
    Verdict v;
    v.expect_equal("coassociativity", kron(c.delta, id) * c.delta, kron(id, c.delta) * c.delta, &c.basis);
    v.expect_equal("left counit", kron(c.counit, id) * c.delta, id, &c.basis);
    v.expect_equal("right counit", kron(id, c.counit) * c.delta, id, &c.basis);
    return v;
}

Verdict verify_comodule(const Comodule& m) {
    const Coalgebra& c = m.base;
    require_shape(m.rho.rows() == m.dim * c.dim && m.rho.cols() == m.dim, "coaction must be (dim*C) x dim");
    const Field& f = c.field;
    const Matrix idm = Matrix::identity(f, m.dim), idc = Matrix::identity(f, c.dim);
    Verdict v;
    v.expect_equal("coaction coassociativity", kron(m.rho, idc) * m.rho, kron(idm, c.delta) * m.rho);
    v.expect_equal("coaction counit", kron(idm, c.counit) * m.rho, idm);
    return v;
}

Verdict verify_hopf(const HopfAlgebra& h) {
    const Coalgebra& c = h.coalg;
    check_coalgebra_shapes(c);
    const std::size_t n = c.dim;
    require_shape(h.mult.rows() == n && h.mult.cols() == n * n, "mult must be dim x dim^2");
    require_shape(h.unit.rows() == n && h.unit.cols() == 1, "unit must be dim x 1");
    require_shape(h.antipode.rows() == n && h.antipode.cols() == n, "antipode must be dim x dim");
    const Field& f = c.field;
    const Matrix id = Matrix::identity(f, n);
    const Matrix one = Matrix::identity(f, 1);
    Verdict v = verify_coalgebra(c);
    v.expect_equal("associativity", h.mult * kron(h.mult, id), h.mult * kron(id, h.mult));
    v.expect_equal("left unit", h.mult * kron(h.unit, id), id, &c.basis);
    v.expect_equal("right unit", h.mult * kron(id, h.unit), id, &c.basis);
    const Matrix mid = kron({id, swap_matrix(f, n, n), id});
    v.expect_equal("delta multiplicative", c.delta * h.mult, kron(h.mult, h.mult) * mid * kron(c.delta, c.delta));
    v.expect_equal("delta unital", c.delta * h.unit, kron(h.unit, h.unit));
    v.expect_equal("counit multiplicative", c.counit * h.mult, kron(c.counit, c.counit));
    v.expect_equal("counit unital", c.counit * h.unit, one);
    const Matrix ue = h.unit * c.counit;
    v.expect_equal("left antipode", h.mult * kron(h.antipode, id) * c.delta, ue, &c.basis);
    v.expect_equal("right antipode", h.mult * kron(id, h.antipode) * c.delta, ue, &c.basis);
    return v;
}

Comodule regular_comodule(const Coalgebra& c) { return Comodule{c, c.dim, c.delta}; }

Comodule trivial_comodule(const Coalgebra& c, std::size_t dim, const Matrix& grouplike) {
    return Comodule{c, dim, kron(Matrix::identity(c.field, dim), grouplike)};
}

Matrix convolution_mult(const Coalgebra& c, const Matrix& f, const Matrix& g) {
    require_shape(f.rows() == 1 && g.rows() == 1 && f.cols() == c.dim && g.cols() == c.dim,
                  "dual vectors must be 1 x dim");
    return kron(f, g) * c.delta;
}

Matrix convolution_table(const Coalgebra& c) { return c.delta; }

Matrix dual_basis_vector(const Coalgebra& c, std::size_t i) { return Matrix::unit(c.field, c.dim, i).transpose(); }

Comodule dual_comodule_structure(const Coalgebra& c) {
    const std::size_t k = c.dim;
    Matrix rho(c.field, k * k, k);
    for (std::size_t b = 0; b < k; ++b) {
        for (std::size_t i = 0; i < k; ++i) {
            Matrix prod = convolution_mult(c, dual_basis_vector(c, i), dual_basis_vector(c, b));
            for (std::size_t a = 0; a < k; ++a) rho(a * k + i, b) = prod(0, a);
        }
    }
    return Comodule{c, k, rho};
}

Verdict verify_dual_basis_identity(const Coalgebra& c) {
    const std::size_t k = c.dim;
    Matrix lhs(c.field, k * k * k, 1), rhs(c.field, k * k * k, 1);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            Matrix prod = convolution_mult(c, dual_basis_vector(c, i), dual_basis_vector(c, j));
            for (std::size_t a = 0; a < k; ++a) lhs((a * k + i) * k + j, 0) += prod(0, a);
        }
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t r = 0; r < k * k; ++r) rhs(j * k * k + r, 0) += c.delta(r, j);
    Verdict v;
    v.expect_equal("dual basis identity", lhs, rhs);
    return v;
}

bool is_colinear(const Comodule& src, const Comodule& dst, const Matrix& map) {
    const Matrix idc = Matrix::identity(src.base.field, src.base.dim);
    return dst.rho * map == kron(map, idc) * src.rho;
}

}  // namespace ent
