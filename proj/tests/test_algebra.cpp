#include "doctest.h"

#include "entwine/algebra.hpp"
#include "entwine/fixtures.hpp"

using namespace ent;

namespace {

const Field Q = Field::rationals();

}  // namespace

TEST_CASE("coalgebra verification") {
    CHECK(verify_coalgebra(fixtures::c1(Q)).ok());
    Coalgebra c = fixtures::cg2(Q);
    CHECK(verify_coalgebra(c).ok());
    c.counit(0, 1) = Scalar::zero(Q);
    Verdict v = verify_coalgebra(c);
    REQUIRE(!v.ok());
    CHECK(v.first_failure()->name == "left counit");
    CHECK(v.first_failure()->witness == "g1");
    CHECK(verify_coalgebra(comatrix_coalgebra(Q, 2)).ok());
    Coalgebra bad = fixtures::c1(Q);
    bad.delta = Matrix(Q, 2, 1);
    CHECK_THROWS_AS(verify_coalgebra(bad), std::invalid_argument);
}

TEST_CASE("single structure-constant perturbations are rejected") {
    for (const Coalgebra& base : {fixtures::cg2(Q), comatrix_coalgebra(Q, 2), fixtures::h2(Q).coalg}) {
        for (std::size_t i = 0; i < base.delta.rows(); ++i)
            for (std::size_t j = 0; j < base.delta.cols(); ++j) {
                Coalgebra c = base;
                c.delta(i, j) += Scalar::one(Q);
                CHECK(!verify_coalgebra(c).ok());
            }
        for (std::size_t j = 0; j < base.dim; ++j) {
            Coalgebra c = base;
            c.counit(0, j) += Scalar::one(Q);
            CHECK(!verify_coalgebra(c).ok());
        }
    }
}

TEST_CASE("comodule verification") {
    Coalgebra c1 = fixtures::c1(Q);
    CHECK(verify_comodule(trivial_comodule(c1, 3, Matrix::unit(Q, 1, 0))).ok());
    Coalgebra g = fixtures::cg2(Q);
    CHECK(verify_comodule(regular_comodule(g)).ok());
    Comodule twice = regular_comodule(g);
    twice.rho *= Scalar(Q, 2);
    Verdict v = verify_comodule(twice);
    CHECK(!v.ok());
    CHECK(!v.checks[1].ok);
}

TEST_CASE("convolution products") {
    Coalgebra g = fixtures::cg2(Q);
    Matrix g0 = dual_basis_vector(g, 0), g1 = dual_basis_vector(g, 1);
    CHECK(convolution_mult(g, g0, g0) == g0);
    CHECK(convolution_mult(g, g0, g1).is_zero());
    Matrix f = Matrix::from_ints(Q, 1, 2, {3, -5});
    CHECK(convolution_mult(g, g.counit, f) == f);
    CHECK(convolution_mult(g, f, g.counit) == f);
}

TEST_CASE("convolution algebra is associative and unital") {
    for (const Coalgebra& c : {fixtures::c1(Q), fixtures::cg2(Q), comatrix_coalgebra(Q, 2)}) {
        for (std::size_t a = 0; a < c.dim; ++a)
            for (std::size_t b = 0; b < c.dim; ++b) {
                Matrix x = dual_basis_vector(c, a), y = dual_basis_vector(c, b);
                CHECK(convolution_mult(c, c.counit, x) == x);
                for (std::size_t d = 0; d < c.dim; ++d) {
                    Matrix z = dual_basis_vector(c, d);
                    CHECK(convolution_mult(c, convolution_mult(c, x, y), z) ==
                          convolution_mult(c, x, convolution_mult(c, y, z)));
                }
            }
    }
}

TEST_CASE("dual comodule structure") {
    Coalgebra c1 = fixtures::c1(Q);
    CHECK(dual_comodule_structure(c1).rho == Matrix::identity(Q, 1));
    Coalgebra g = fixtures::cg2(Q);
    Comodule d = dual_comodule_structure(g);
    // rho(g_i*) = g_i* (x) g_i: column i has a single one at index i*2+i.
    CHECK(d.rho == Matrix::from_ints(Q, 4, 2, {1, 0, 0, 0, 0, 0, 0, 1}));
    for (const Coalgebra& c : {c1, g, comatrix_coalgebra(Q, 2), fixtures::h2(Q).coalg}) {
        CHECK(verify_comodule(dual_comodule_structure(c)).ok());
        CHECK(verify_dual_basis_identity(c).ok());
    }
}

TEST_CASE("hopf verification") {
    HopfAlgebra h = fixtures::h2(Q);
    CHECK(verify_hopf(h).ok());
    CHECK(h.antipode == Matrix::identity(Q, 2));
    HopfAlgebra broken = h;
    broken.antipode = Matrix(Q, 2, 2);
    Verdict v = verify_hopf(broken);
    REQUIRE(!v.ok());
    CHECK(v.first_failure()->name == "left antipode");
    CHECK(verify_hopf(fixtures::h2(Field::prime(3))).ok());
    CHECK(verify_hopf(cyclic_group_algebra(Q, 3)).ok());
}

TEST_CASE("colinear maps") {
    Coalgebra g = fixtures::cg2(Q);
    Comodule r = regular_comodule(g);
    CHECK(is_colinear(r, r, Matrix::identity(Q, 2)));
    CHECK(!is_colinear(r, r, swap_matrix(Q, 1, 2) * Matrix::from_ints(Q, 2, 2, {0, 1, 1, 0})));
}
