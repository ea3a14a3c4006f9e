#pragma once

#include "entwine/matrix.hpp"
#include "entwine/verdict.hpp"

#include <string>
#include <vector>

namespace ent {

// Objects are indexed 0..n-1. compose(x,y,z) : Hom(y,z) (x) Hom(x,y) -> Hom(x,z), g (x) f |-> g f.
class LinCategory {
public:
    Field field;
    std::vector<std::string> objects;

    LinCategory() = default;
    LinCategory(const Field& f, std::vector<std::string> objs);

    std::size_t size() const { return objects.size(); }
    std::size_t object(const std::string& name) const;  // throws on unknown name

    std::size_t hom(std::size_t x, std::size_t y) const { return dims_[x * size() + y]; }
    const std::vector<std::string>& hom_basis(std::size_t x, std::size_t y) const { return names_[x * size() + y]; }
    const Matrix& compose(std::size_t x, std::size_t y, std::size_t z) const { return comp_[(x * size() + y) * size() + z]; }
    const Matrix& identity(std::size_t x) const { return ids_[x]; }

    // Sets the hom space and resets dependent composition tables to zero.
    void set_hom(std::size_t x, std::size_t y, std::vector<std::string> basis);
    void set_compose(std::size_t x, std::size_t y, std::size_t z, Matrix m);
    void set_identity(std::size_t x, Matrix id);

    // f |-> g f for fixed g in Hom(y,z); result Hom(x,y) -> Hom(x,z).
    Matrix postcompose(std::size_t x, std::size_t y, std::size_t z, const Matrix& g) const;
    // g |-> g f for fixed f in Hom(x,y); result Hom(y,z) -> Hom(x,z).
    Matrix precompose(std::size_t x, std::size_t y, std::size_t z, const Matrix& f) const;
    Matrix hom_unit(std::size_t x, std::size_t y, std::size_t i) const { return Matrix::unit(field, hom(x, y), i); }

private:
    std::vector<std::size_t> dims_;
    std::vector<std::vector<std::string>> names_;
    std::vector<Matrix> comp_;
    std::vector<Matrix> ids_;
};

// Contravariant: act(x,y) : M(y) (x) Hom(x,y) -> M(x), m (x) f |-> M(f) m.
struct RightModule {
    std::vector<std::size_t> dims;
    std::vector<Matrix> act;  // indexed x*n+y

    const Matrix& action(std::size_t x, std::size_t y) const { return act[x * dims.size() + y]; }
    Matrix& action(std::size_t x, std::size_t y) { return act[x * dims.size() + y]; }
};

// Covariant: act(x,y) : M(x) (x) Hom(x,y) -> M(y), m (x) f |-> M(f) m.
struct LeftModule {
    std::vector<std::size_t> dims;
    std::vector<Matrix> act;

    const Matrix& action(std::size_t x, std::size_t y) const { return act[x * dims.size() + y]; }
    Matrix& action(std::size_t x, std::size_t y) { return act[x * dims.size() + y]; }
};

// Objectwise linear maps M(x) -> N(x).
struct ModuleMap {
    std::vector<Matrix> comp;
};

// Columns of basis(x,y) span Hom_E(x,y) inside Hom(x,y).
struct Subcategory {
    std::vector<Matrix> basis;
    const Matrix& hom(std::size_t x, std::size_t y, std::size_t n) const { return basis[x * n + y]; }
};

Verdict verify_category(const LinCategory& d);
Verdict verify_right_module(const LinCategory& d, const RightModule& m);
Verdict verify_left_module(const LinCategory& d, const LeftModule& m);

RightModule representable_right(const LinCategory& d, std::size_t y);  // h_Y = Hom(-, Y)
LeftModule representable_left(const LinCategory& d, std::size_t x);    // _X h = Hom(X, -)

bool is_module_map(const LinCategory& d, const RightModule& m, const RightModule& n, const ModuleMap& eta);
bool is_module_map(const LinCategory& d, const LeftModule& m, const LeftModule& n, const ModuleMap& eta);

// Unknowns are the entries of eta(x), concatenated in object order, row-major.
std::size_t module_map_unknowns(const RightModule& m, const RightModule& n);
ModuleMap module_map_from_vector(const Field& f, const RightModule& m, const RightModule& n, const Matrix& u);
std::vector<ModuleMap> module_hom_space(const LinCategory& d, const RightModule& m, const RightModule& n);

// Yoneda: h_X -> h_Y, g |-> f g for f in Hom(X,Y).
ModuleMap yoneda_map(const LinCategory& d, std::size_t x, std::size_t y, const Matrix& f);

struct KernelCokernel {
    RightModule kernel, cokernel;
    std::vector<Matrix> inclusion;   // K(x) -> M(x)
    std::vector<Matrix> projection;  // N(x) -> Q(x)
    std::vector<Matrix> section;     // Q(x) -> N(x)
};

// Throws std::invalid_argument when eta is not natural.
KernelCokernel kernel_cokernel(const LinCategory& d, const RightModule& m, const RightModule& n, const ModuleMap& eta);

Subcategory full_subcategory(const LinCategory& d);
Subcategory identity_subcategory(const LinCategory& d);
Verdict verify_subcategory(const LinCategory& d, const Subcategory& e);
// The subcategory as a linear category in its own basis.
LinCategory subcategory_as_category(const LinCategory& d, const Subcategory& e);
RightModule restrict_right(const LinCategory& d, const Subcategory& e, const RightModule& m);
LeftModule restrict_left(const LinCategory& d, const Subcategory& e, const LeftModule& m);

// Quotient of the ambient space sum_Z M(Z) (x) N(Z) by M(e)m (x) n - m (x) N(e)n.
struct TensorOverSub {
    std::vector<std::size_t> offset;  // start of block Z in the ambient space
    std::vector<std::size_t> mdims, ndims;
    std::size_t ambient = 0;
    Matrix relations;
    Quotient quotient;

    std::size_t dim() const { return quotient.dim(); }
    // Ambient vector for m (x) n in block z.
    Matrix embed(std::size_t z, const Matrix& m, const Matrix& n) const;
};

// m, n are modules over the linear category e (e.g. subcategory_as_category).
TensorOverSub tensor_over_sub(const LinCategory& e, const RightModule& m, const LeftModule& n);

}  // namespace ent
