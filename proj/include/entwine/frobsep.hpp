#pragma once

#include "entwine/entwine.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace ent {

// theta[x] : C (x) C -> End(x), shape hom(x,x) x k^2, input c (x) d at c*k + d.
struct ThetaFamily {
    std::vector<Matrix> theta;
};

// e[y] = eta(y,y)(id_y) = sum a_y (x) c_y in End(y) (x) C, a column of length hom(y,y)*k.
struct EtaFamily {
    std::vector<Matrix> e;
};

// Theta conditions are named "morphism condition" and "coalgebra condition".
Verdict verify_theta(const Entwining& e, const ThetaFamily& t);
// Centrality of e_Y against every basis morphism.
Verdict verify_eta(const Entwining& e, const EtaFamily& eta);

std::vector<ThetaFamily> solve_V1(const Entwining& e);
std::vector<EtaFamily> solve_W1(const Entwining& e);

// eta(x,y)(g) = g a_x (x) c_x as a matrix Hom(x,y) -> Hom(x,y) (x) C.
Matrix eta_component(const Entwining& e, const EtaFamily& eta, std::size_t x, std::size_t y);

struct ThetaResult {
    std::size_t space_dim = 0;
    std::optional<ThetaFamily> witness;
    Verdict verdict;  // re-verification of a witness
};

struct EtaResult {
    std::size_t space_dim = 0;
    std::optional<EtaFamily> witness;
    Verdict verdict;
};

// theta in V1 with theta_X Delta = eps id_X.
ThetaResult check_F_separable(const Entwining& e);
// eta in W1 with (id (x) eps) eta = id.
EtaResult check_G_separable(const Entwining& e);

struct Evaluation {
    ModuleMap map;
    bool is_morphism = false;
};

// upsilon(M)(x)(m (x) c) = M(theta_x(m_1 (x) c)) m_0 : M (x) C -> M. Throws if theta is not in V1.
Evaluation upsilon_eval(const Entwining& e, const ThetaFamily& t, const EntwinedModule& m);
// omega(N)(x)(n) = sum N(a_x) n (x) c_x : N -> N (x) C. Throws if eta is not in W1.
Evaluation omega_eval(const Entwining& e, const EtaFamily& eta, const RightModule& n);
// theta recovered from upsilon(h_X (x) C) through id (x) eps.
ThetaFamily theta_from_upsilon(const Entwining& e, const ThetaFamily& t);

// F(upsilon(M)) omega(F(M)) = id on an entwined module M.
bool unit_counit_on_entwined(const Entwining& e, const ThetaFamily& t, const EtaFamily& eta, const EntwinedModule& m);
// upsilon(G(N)) G(omega(N)) = id on a right module N.
bool unit_counit_on_module(const Entwining& e, const ThetaFamily& t, const EtaFamily& eta, const RightModule& n);

// A functor D -> entwined modules: objects and the maps F(f) for f in Hom(y,z) at each x.
struct EntwinedFunctor {
    std::vector<EntwinedModule> obj;
    std::function<Matrix(std::size_t x, std::size_t y, std::size_t z, const Matrix& f)> morph;
};

EntwinedFunctor h_tensor_C(const Entwining& e);
// Y |-> C* (x) h_Y with coaction (id (x) psi)(rho_C* (x) id) and f acting by c* (x) g |-> sum c*(d_i^psi) d_i* (x) f_psi g.
EntwinedFunctor build_Cstar_h(const Entwining& e);
Verdict verify_functor(const Entwining& e, const EntwinedFunctor& f);

enum class NatKind { cstar_to_hc, hc_to_cstar };

// comp[x*n+y] : F(y)(x) -> G(y)(x).
struct NatCH {
    NatKind kind = NatKind::cstar_to_hc;
    std::vector<Matrix> comp;
    const Matrix& at(std::size_t x, std::size_t y, std::size_t n) const { return comp[x * n + y]; }
};

std::vector<NatCH> solve_nat(const Entwining& e, NatKind kind);
Verdict verify_nat(const Entwining& e, const NatCH& phi);

// Translation maps between V1 and V2 = Nat(h (x) C, C* (x) h) and between W1 and W2 = Nat(C* (x) h, h (x) C).
NatCH alpha_prime(const Entwining& e, const ThetaFamily& t);
ThetaFamily beta_prime(const Entwining& e, const NatCH& ups);
NatCH gamma_prime(const Entwining& e, const EtaFamily& eta);
EtaFamily delta_prime(const Entwining& e, const NatCH& phi);

// Identities named "frobenius counit identity" and "frobenius psi identity".
Verdict verify_frobenius_identities(const Entwining& e, const ThetaFamily& t, const EtaFamily& eta);

struct FrobeniusResult {
    bool frobenius = false;
    bool deterministic = true;
    std::size_t nat_dim = 0;
    std::size_t degree_bound = 0;  // D = sum dim Hom(X,Y) (x) C
    std::size_t evaluations = 0;
    std::string method;            // "zero space", "grid", "exhaustive", "random"
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    long double error_bound = 0;   // probability of a false negative (random search only)
    std::optional<NatCH> phi, phi_inverse;
    std::optional<ThetaFamily> theta;
    std::optional<EtaFamily> eta;
    Verdict verdict;  // witness checks
};

FrobeniusResult check_frobenius(const Entwining& e, std::uint64_t seed = 0, std::size_t trials = 64);

}  // namespace ent
