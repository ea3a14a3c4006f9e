#pragma once

#include "entwine/algebra.hpp"
#include "entwine/entwine.hpp"
#include "entwine/galois.hpp"
#include "entwine/lincat.hpp"

namespace ent::fixtures {

// One object "*" with End = K.
LinCategory point(const Field& f);
// Objects X, Y with a single arrow a : X -> Y and Hom(Y,X) = 0.
LinCategory arrow(const Field& f);
// One object "*" whose endomorphism algebra is the given algebra.
LinCategory one_object(const Field& f, const Matrix& mult, const Matrix& unit, const std::vector<std::string>& basis);

Coalgebra c1(const Field& f);   // basis e, Delta(e) = e (x) e
Coalgebra cg2(const Field& f);  // group-likes g0, g1
HopfAlgebra h2(const Field& f);  // K[Z/2], basis 1, g

// One object with End = H2 and hom coaction Delta.
LinCategory dh2_category(const Field& f);
CoHCategory dh2_coh(const Field& f);
// Doi-Hopf entwining of dh2_coh with C = H2 acting on itself.
Entwining dh2(const Field& f);

// Objects X, Y with arrows a : X -> Y, b : Y -> X and ab = ba = 0.
LinCategory cycle(const Field& f);
// Objects X, Y with arrows a1, a2 : X -> Y, b : Y -> X and all non-identity composites zero.
LinCategory kronecker(const Field& f);

// cycle with CG2 and psi(c (x) f) = f (x) eps(c) g0 on both arrows: V1 = 0.
Entwining v1_zero(const Field& f);
// kronecker with CG2, psi(c (x) a1) = a1 (x) eps(c) g0, psi(c (x) a2) = a2 (x) eps(c) g1, swap on b: W1 = 0.
Entwining w1_zero(const Field& f);


// DA2 with CG2 and psi(c (x) a) = a (x) sigma(c) for the coalgebra map sigma (2x2 over g0, g1).
Entwining arrow_twisted(const Field& f, const Matrix& sigma);

struct NamedEntwining {
    std::string name;
    Entwining entwining;
};

// Small verified entwinings used by the oracle comparisons.
std::vector<NamedEntwining> catalogue(const Field& f);

// DH2 with hom coaction Delta, and Phi = id : H2 -> End.
GaloisData dh2_galois(const Field& f);
PhiFamily dh2_phi(const Field& f);
// Point with C = CG2 coacting through g0; Phi(g0) = id, Phi(g1) = 0.
GaloisData trivial_cg2_galois(const Field& f);
PhiFamily trivial_cg2_phi(const Field& f);

}  // namespace ent::fixtures
