#pragma once

#include "entwine/entwine.hpp"

#include <optional>
#include <string>

namespace ent {

// rho(x,y) : Hom(x,y) -> Hom(x,y) (x) C, indexed x*n+y.
struct GaloisData {
    LinCategory cat;
    Coalgebra coalg;
    std::vector<Matrix> rho;

    const Field& field() const { return cat.field; }
    std::size_t k() const { return coalg.dim; }
    const Matrix& at(std::size_t x, std::size_t y) const { return rho[x * cat.size() + y]; }
};

Verdict verify_galois_data(const GaloisData& g);
// Every hom space coacts through f |-> f (x) grouplike.
GaloisData trivial_galois_data(const LinCategory& d, const Coalgebra& c, const Matrix& grouplike);
GaloisData galois_data(const CoHCategory& d);

// Hom_E(x,y) = { g : rho(g f) = (g (x) id) rho(f) for all f in Hom(z,x) }.
Subcategory coinvariant_subcategory(const GaloisData& g);

// h_Y (x)_E _X h: block z of the ambient space is Hom(z,y) (x) Hom(x,z).
struct CanonicalPair {
    TensorOverSub tensor;
    Matrix can;  // quotient -> Hom(x,y) (x) C
    std::size_t rank = 0;
    std::optional<Matrix> inverse;
};

struct CanonicalMap {
    std::size_t objects = 0;
    Subcategory sub;
    std::vector<CanonicalPair> pairs;  // x*n+y

    const CanonicalPair& at(std::size_t x, std::size_t y) const { return pairs[x * objects + y]; }
    bool is_galois() const;
};

// The balanced tensor h_Y (x)_E _X h for every pair.
std::vector<TensorOverSub> hom_tensors(const LinCategory& d, const Subcategory& e);

// can(f (x) f') = f f'_0 (x) f'_1. Throws std::invalid_argument when it does not descend to the quotient.
CanonicalMap canonical_map(const GaloisData& g, const Subcategory& e);

// Ambient maps between hom tensors: (u (x) v) |-> (a u (x) v) and (u (x) v) |-> (u (x) v b).
Matrix left_multiply(const LinCategory& d, const TensorOverSub& src, const TensorOverSub& dst, std::size_t x,
                     std::size_t y, std::size_t y2, const Matrix& a);
Matrix right_multiply(const LinCategory& d, const TensorOverSub& src, const TensorOverSub& dst, std::size_t x2,
                      std::size_t x, std::size_t y, const Matrix& b);
// [u (x) v] |-> u v as a map from the quotient.
Matrix tensor_multiplication(const LinCategory& d, const TensorOverSub& t, std::size_t x, std::size_t y);

// tau[x] : C -> quotient of h_X (x)_E _X h.
struct TranslationMap {
    std::vector<Matrix> tau;
    Verdict verdict;  // "colinearity", "right leg identity", "multiplication identity"
};

// Throws std::invalid_argument unless can is invertible at every (x,x).
TranslationMap translation_maps(const GaloisData& g, const CanonicalMap& cm);

struct InducedEntwining {
    Entwining entwining;
    Verdict verdict;  // entwining axioms and h_Y entwined for every Y
};

// psi(c (x) f) = can(tau_Y(c) . f). Throws std::invalid_argument unless Galois.
InducedEntwining induced_entwining(const GaloisData& g, const CanonicalMap& cm);
// Representable h_Y with coactions rho(-,Y).
EntwinedModule representable_comodule(const GaloisData& g, std::size_t y);
// A candidate psi' with the defining property must coincide with the induced one.
Verdict compare_entwining(const GaloisData& g, const Entwining& induced, const Entwining& candidate);

// D-D bimodule: left(x,y,z) : Hom(y,z) (x) M(x,y) -> M(x,z), right(w,x,y) : M(x,y) (x) Hom(w,x) -> M(w,y).
struct Bimodule {
    std::size_t objects = 0;
    std::vector<std::size_t> dims;  // x*n+y
    std::vector<Matrix> left, right;

    std::size_t dim(std::size_t x, std::size_t y) const { return dims[x * objects + y]; }
    const Matrix& left_at(std::size_t x, std::size_t y, std::size_t z) const { return left[(x * objects + y) * objects + z]; }
    const Matrix& right_at(std::size_t w, std::size_t x, std::size_t y) const {
        return right[(w * objects + x) * objects + y];
    }
};

// comult(x,y) lifts Delta into the ambient space of (M (x)_D M)(x,y).
struct Coring {
    Bimodule carrier;
    std::vector<Matrix> comult;
    std::vector<Matrix> counit;  // M(x,y) -> Hom(x,y)
};

// Block z of (M (x)_D N)(x,y) is M(z,y) (x) N(x,z).
TensorOverSub bimodule_tensor(const LinCategory& d, const Bimodule& m, const Bimodule& n, std::size_t x, std::size_t y);

Verdict verify_bimodule(const LinCategory& d, const Bimodule& m);
Verdict verify_coring(const LinCategory& d, const Coring& c);

// h (x) C with f (x) c . b = f b_psi (x) c^psi and Delta = id (x) Delta_C.
Coring coring_hC(const Entwining& e);
// h (x)_E h with Delta(f (x) f') = f (x) id (x) f' and counit by composition.
Coring coring_hEh(const LinCategory& d, const Subcategory& e);

// can is a bimodule map compatible with comultiplication and counit.
Verdict can_as_coring_iso(const LinCategory& d, const CanonicalMap& cm, const Coring& hc, const Coring& heh);

// phi(x,y) : C -> Hom(x,y), indexed x*n+y.
struct PhiFamily {
    std::vector<Matrix> phi;
    const Matrix& at(std::size_t x, std::size_t y, std::size_t n) const { return phi[x * n + y]; }
};

bool is_colinear_family(const GaloisData& g, const PhiFamily& phi);
// (phi(y,z) * phi(x,y))(c) = phi(y,z)(c_1) phi(x,y)(c_2) : C -> Hom(x,z).
Matrix convolution(const GaloisData& g, const Matrix& phi_yz, const Matrix& phi_xy, std::size_t x, std::size_t y,
                   std::size_t z);
Verdict verify_convolution_inverse(const GaloisData& g, const PhiFamily& phi, const PhiFamily& inv);
// Throws std::invalid_argument when phi is not colinear.
std::optional<PhiFamily> convolution_inverse(const GaloisData& g, const PhiFamily& phi);

struct CanInverse {
    std::vector<Matrix> inverse;  // Hom(x,y) (x) C -> quotient, x*n+y
    Verdict verdict;
};

// can^-1(f (x) c) = f phi'(y,x)(c_1) (x) phi(x,y)(c_2).
CanInverse can_inverse_via_phi(const GaloisData& g, const CanonicalMap& cm, const PhiFamily& phi,
                               const PhiFamily& inv);

struct TheoremReport {
    bool colinear = false;
    std::optional<PhiFamily> inverse;
    bool galois = false;
    bool entwining = false;
    bool coinvariance = false;
    std::string witness;  // first failure of the coinvariance condition
    bool agree() const { return galois == entwining && entwining == coinvariance; }
};

// Galois, induced entwining with entwined h_Y, and coinvariance of f_0 phi'(f_1).
TheoremReport theorem_4_11(const GaloisData& g, const PhiFamily& phi);

struct Decomposition {
    std::vector<Matrix> eta;   // Hom(x,y) -> Hom_E(x,y) (x) C, indexed by y
    std::vector<Matrix> zeta;  // inverse
    Verdict verdict;
};

// eta(f) = f_0 phi'(x,x)(f_1) (x) f_2 and zeta(f' (x) c) = f' phi(x,x)(c).
Decomposition decomposition_iso(const GaloisData& g, const Subcategory& e, const PhiFamily& phi, const PhiFamily& inv,
                                std::size_t x);

// s[x] in M(x,x).
struct GroupLikeCollection {
    std::vector<Matrix> s;
};

Verdict verify_grouplike(const LinCategory& d, const Subcategory& e, const Coring& c, const GroupLikeCollection& s);
// rho(x,x)(id_x) in h (x) C, and id (x) id in h (x)_E h.
GroupLikeCollection grouplike_hC(const GaloisData& g);
GroupLikeCollection grouplike_hEh(const LinCategory& d, const Subcategory& e);

// A right D-module with coaction(x) : N(x) -> ambient of (N (x)_D M)(x), block z = N(z) (x) M(x,z).
struct CoringComodule {
    RightModule module;
    std::vector<Matrix> coaction;
};

TensorOverSub comodule_tensor(const LinCategory& d, const RightModule& n, const Bimodule& m, std::size_t x);
// n |-> n_0 (x) (id (x) n_1) in block x.
CoringComodule as_hC_comodule(const Entwining& e, const EntwinedModule& m);

struct Coinvariants {
    std::vector<Matrix> span;  // columns: basis of N^co(x) in N(x)
    RightModule module;        // over subcategory_as_category(d, e)
    Verdict verdict;
};

// Throws std::invalid_argument when s is not group-like.
Coinvariants coring_coinvariants(const LinCategory& d, const Subcategory& e, const Coring& c,
                                 const GroupLikeCollection& s, const CoringComodule& n);

// Hom spaces carry a left H-action act(x,y) : H (x) Hom(x,y) -> Hom(x,y).
struct ModuleCategory {
    LinCategory cat;
    HopfAlgebra hopf;
    std::vector<Matrix> act;

    const Matrix& at(std::size_t x, std::size_t y) const { return act[x * cat.size() + y]; }
};

Verdict verify_module_category(const ModuleCategory& m);
// Every hom space acted on through the counit.
ModuleCategory trivial_module_category(const LinCategory& d, const HopfAlgebra& h);
// Hom(x,y) (x) H with (g # k)(f # k') = g (k_1 f) # k_2 k' and coaction id (x) Delta.
// Throws std::invalid_argument when the module-category laws fail.
GaloisData smash_product(const ModuleCategory& m);
// can^-1((g # k) (x) k') = (g # k)(id # S(k'_1)) (x) (id # k'_2).
std::vector<Matrix> smash_can_inverse(const ModuleCategory& m, const GaloisData& smash, const CanonicalMap& cm);

struct EquivalenceReport {
    std::vector<std::vector<std::size_t>> module_dims;    // per test module: dims of (M (x)_E h)^co
    std::vector<std::vector<std::size_t>> comodule_dims;  // per test comodule: dims of N^co
    Verdict verdict;
};

// M |-> M (x)_E h with coaction m (x) g |-> m (x) rho(g).
EntwinedModule tensor_with_h(const GaloisData& g, const Subcategory& e, const RightModule& m,
                             std::vector<TensorOverSub>* tensors = nullptr);

EquivalenceReport equivalence_roundtrip(const GaloisData& g, const CanonicalMap& cm, const PhiFamily& phi,
                                        const std::vector<RightModule>& modules,
                                        const std::vector<EntwinedModule>& comodules);

}  // namespace ent
