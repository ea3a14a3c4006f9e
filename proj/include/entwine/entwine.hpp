#pragma once

#include "entwine/algebra.hpp"
#include "entwine/lincat.hpp"

namespace ent {

// psi(x,y) : C (x) Hom(x,y) -> Hom(x,y) (x) C, basis c (x) f at c*h + f and f (x) c at f*k + c.
struct Entwining {
    LinCategory cat;
    Coalgebra coalg;
    std::vector<Matrix> psi;  // indexed x*n+y

    const Field& field() const { return cat.field; }
    std::size_t k() const { return coalg.dim; }
    const Matrix& at(std::size_t x, std::size_t y) const { return psi[x * cat.size() + y]; }
    Matrix& at(std::size_t x, std::size_t y) { return psi[x * cat.size() + y]; }
};

// A right module with objectwise coactions rho[x] : M(x) -> M(x) (x) C.
struct EntwinedModule {
    RightModule module;
    std::vector<Matrix> rho;

    std::size_t dim(std::size_t x) const { return module.dims[x]; }
};

struct CoHCategory {
    LinCategory cat;
    HopfAlgebra hopf;
    std::vector<Matrix> coaction;  // (x,y) : Hom(x,y) -> Hom(x,y) (x) H
};

// A coalgebra with a right H-action c (x) h |-> c h, matrix k x (k * dim H).
struct ModuleCoalgebra {
    Coalgebra coalg;
    Matrix action;
};

// Axiom checks are named "composition", "counit", "comultiplication" and "identity".
// Throws std::invalid_argument on shape mismatch or missing pairs.
Verdict verify_entwining(const Entwining& e);
Entwining swap_entwining(const LinCategory& d, const Coalgebra& c);

Verdict verify_coh_category(const CoHCategory& d);
Verdict verify_module_coalgebra(const HopfAlgebra& h, const ModuleCoalgebra& c);
// psi(c (x) f) = f_0 (x) c f_1. Throws std::invalid_argument naming the first violated law.
Entwining doi_hopf_entwining(const CoHCategory& d, const ModuleCoalgebra& c);
// Regular action of a Hopf algebra on its own coalgebra.
ModuleCoalgebra regular_module_coalgebra(const HopfAlgebra& h);

Verdict verify_entwined_module(const Entwining& e, const EntwinedModule& m);
// Module map that is objectwise colinear.
bool is_entwined_map(const Entwining& e, const EntwinedModule& m, const EntwinedModule& n, const ModuleMap& eta);

// (M (x) C)(f)(m (x) c) = M(f_psi) m (x) c^psi with coaction id (x) Delta.
EntwinedModule module_tensor_C(const Entwining& e, const RightModule& n);
ModuleMap module_tensor_C_map(const Entwining& e, const ModuleMap& eta);
// (N (x) h_X)(Y) = N (x) Hom(Y,X), coaction n (x) g |-> n_0 (x) g_psi (x) n_1^psi.
EntwinedModule comodule_tensor_hX(const Entwining& e, const Comodule& n, std::size_t x);
// Entwined modules with a trivial coaction m |-> m (x) grouplike.
EntwinedModule representable_entwined(const Entwining& e, std::size_t y, const std::vector<Matrix>& rho);

struct PsiMorphism {
    EntwinedModule source;  // C (x) h_Y
    EntwinedModule target;  // h_Y (x) C
    ModuleMap map;
    bool module_map = false;
    bool colinear = false;
};

PsiMorphism psi_morphism(const Entwining& e, std::size_t y);

struct GeneratorMorphism {
    Matrix span;            // columns: basis of V_m inside M(x)
    Comodule comodule;      // V_m
    EntwinedModule source;  // V_m (x) h_X
    ModuleMap map;
    bool is_morphism = false;
    bool hits_element = false;
};

// Smallest subcomodule V_m of M(x) containing v, and V_m (x) h_X -> M, v (x) f |-> M(f) v.
GeneratorMorphism generator_morphism(const Entwining& e, const EntwinedModule& m, std::size_t x, const Matrix& v);

struct EntwinedKernelCokernel {
    EntwinedModule kernel, cokernel;
    KernelCokernel linear;
};

// Throws std::invalid_argument when eta is not a morphism of entwined modules.
EntwinedKernelCokernel entwined_kernel_cokernel(const Entwining& e, const EntwinedModule& m, const EntwinedModule& n,
                                                const ModuleMap& eta);

// A functor given on objects and hom spaces together with a coalgebra map sigma : C' -> C.
struct EntwiningMorphism {
    std::vector<std::size_t> objects;  // X' |-> F(X')
    std::vector<Matrix> homs;          // (x',y') : Hom'(x',y') -> Hom(Fx',Fy')
    Matrix sigma;                      // k x k'
};

Verdict verify_entwining_morphism(const Entwining& source, const Entwining& target, const EntwiningMorphism& m);

}  // namespace ent
