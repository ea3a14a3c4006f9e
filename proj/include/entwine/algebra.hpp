#pragma once

#include "entwine/matrix.hpp"
#include "entwine/verdict.hpp"

#include <string>
#include <vector>

namespace ent {

// Column j of delta holds the coordinates of Delta(e_j) in C (x) C.
struct Coalgebra {
    Field field;
    std::size_t dim = 0;
    Matrix delta;   // dim^2 x dim
    Matrix counit;  // 1 x dim
    std::vector<std::string> basis;

    const std::string& name_of(std::size_t i) const { return basis[i]; }
};

struct Comodule {
    Coalgebra base;
    std::size_t dim = 0;
    Matrix rho;  // (dim * base.dim) x dim
};

struct HopfAlgebra {
    Coalgebra coalg;
    Matrix mult;      // dim x dim^2
    Matrix unit;      // dim x 1
    Matrix antipode;  // dim x dim
};

std::vector<std::string> default_basis(const std::string& stem, std::size_t n);

Coalgebra make_coalgebra(const Field& f, Matrix delta, Matrix counit, std::vector<std::string> basis = {});
// Coalgebra spanned by group-like elements g_0..g_{n-1}.
Coalgebra grouplike_coalgebra(const Field& f, std::size_t n, const std::string& stem = "g");
// Comatrix coalgebra: basis e_ij, Delta(e_ij) = sum_k e_ik (x) e_kj.
Coalgebra comatrix_coalgebra(const Field& f, std::size_t n);
// Group algebra K[Z/n] with its Hopf structure.
HopfAlgebra cyclic_group_algebra(const Field& f, std::size_t n);

// Permutation V_a (x) V_b -> V_b (x) V_a.
Matrix swap_matrix(const Field& f, std::size_t a, std::size_t b);

// Throws std::invalid_argument on shape mismatch.
Verdict verify_coalgebra(const Coalgebra& c);
Verdict verify_comodule(const Comodule& v);
Verdict verify_hopf(const HopfAlgebra& h);

Comodule regular_comodule(const Coalgebra& c);
Comodule trivial_comodule(const Coalgebra& c, std::size_t dim, const Matrix& grouplike);

// Dual vectors are 1 x dim rows; (f.g)(x) = f(x_1) g(x_2).
Matrix convolution_mult(const Coalgebra& c, const Matrix& f, const Matrix& g);
// Row (a,b), column j: coefficient of d_j^* in d_a^* . d_b^*.
Matrix convolution_table(const Coalgebra& c);
Matrix dual_basis_vector(const Coalgebra& c, std::size_t i);

// rho(c*) = sum_i d_i* . c* (x) d_i on the coordinate dual basis.
Comodule dual_comodule_structure(const Coalgebra& c);
// sum_{i,j} (d_i* . d_j*) (x) d_i (x) d_j = sum_j d_j* (x) Delta(d_j)
Verdict verify_dual_basis_identity(const Coalgebra& c);

// Colinearity of a linear map between comodules over the same coalgebra.
bool is_colinear(const Comodule& src, const Comodule& dst, const Matrix& map);

}  // namespace ent
