#include "entwine/lincat.hpp"

#include "entwine/algebra.hpp"

#include <stdexcept>

namespace ent {

namespace {

void require_shape(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("shape mismatch: " + what);
}

Matrix eye(const Field& f, std::size_t n) { return Matrix::identity(f, n); }

}  // namespace

LinCategory::LinCategory(const Field& f, std::vector<std::string> objs) : field(f), objects(std::move(objs)) {
    const std::size_t n = size();
    dims_.assign(n * n, 0);
    names_.assign(n * n, {});
    comp_.assign(n * n * n, Matrix(f, 0, 0));
    ids_.assign(n, Matrix(f, 0, 1));
}

std::size_t LinCategory::object(const std::string& name) const {
    for (std::size_t i = 0; i < size(); ++i)
        if (objects[i] == name) return i;
    throw std::invalid_argument("unknown object '" + name + "'");
}

void LinCategory::set_hom(std::size_t x, std::size_t y, std::vector<std::string> basis) {
    const std::size_t n = size();
    dims_[x * n + y] = basis.size();
    names_[x * n + y] = std::move(basis);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if ((a == x && b == y) || (b == x && c == y) || (a == x && c == y))
                    comp_[(a * n + b) * n + c] = Matrix(field, hom(a, c), hom(b, c) * hom(a, b));
    if (x == y) ids_[x] = Matrix(field, hom(x, x), 1);
}

void LinCategory::set_compose(std::size_t x, std::size_t y, std::size_t z, Matrix m) {
    require_shape(m.rows() == hom(x, z) && m.cols() == hom(y, z) * hom(x, y), "composition table");
    comp_[(x * size() + y) * size() + z] = std::move(m);
}

void LinCategory::set_identity(std::size_t x, Matrix id) {
    require_shape(id.rows() == hom(x, x) && id.cols() == 1, "identity");
    ids_[x] = std::move(id);
}

Matrix LinCategory::postcompose(std::size_t x, std::size_t y, std::size_t z, const Matrix& g) const {
    return compose(x, y, z) * kron(g, eye(field, hom(x, y)));
}

Matrix LinCategory::precompose(std::size_t x, std::size_t y, std::size_t z, const Matrix& f) const {
    return compose(x, y, z) * kron(eye(field, hom(y, z)), f);
}

Verdict verify_category(const LinCategory& d) {
    const Field& f = d.field;
    const std::size_t n = d.size();
    Verdict v;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const std::string xy = d.objects[x] + "," + d.objects[y];
            const Matrix ixy = eye(f, d.hom(x, y));
            v.expect_equal("left unit at " + xy, d.compose(x, y, y) * kron(d.identity(y), ixy), ixy, &d.hom_basis(x, y));
            v.expect_equal("right unit at " + xy, d.compose(x, x, y) * kron(ixy, d.identity(x)), ixy, &d.hom_basis(x, y));
        }
    for (std::size_t w = 0; w < n; ++w)
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                for (std::size_t z = 0; z < n; ++z) {
                    const Matrix lhs = d.compose(w, x, z) * kron(d.compose(x, y, z), eye(f, d.hom(w, x)));
                    const Matrix rhs = d.compose(w, y, z) * kron(eye(f, d.hom(y, z)), d.compose(w, x, y));
                    v.expect_equal("associativity at " + d.objects[w] + "," + d.objects[x] + "," + d.objects[y] + "," +
                                       d.objects[z],
                                   lhs, rhs);
                }
    return v;
}

namespace {

void check_module_shapes(const LinCategory& d, const std::vector<std::size_t>& dims, const std::vector<Matrix>& act,
                         bool right) {
    const std::size_t n = d.size();
    require_shape(dims.size() == n && act.size() == n * n, "module object count");
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const Matrix& a = act[x * n + y];
            const std::size_t src = right ? dims[y] : dims[x], dst = right ? dims[x] : dims[y];
            require_shape(a.rows() == dst && a.cols() == src * d.hom(x, y),
                          "action at " + d.objects[x] + "," + d.objects[y]);
        }
}

}  // namespace

Verdict verify_right_module(const LinCategory& d, const RightModule& m) {
    check_module_shapes(d, m.dims, m.act, true);
    const Field& f = d.field;
    const std::size_t n = d.size();
    Verdict v;
    for (std::size_t x = 0; x < n; ++x) {
        const Matrix im = eye(f, m.dims[x]);
        v.expect_equal("unit at " + d.objects[x], m.action(x, x) * kron(im, d.identity(x)), im);
    }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                const Matrix lhs = m.action(x, z) * kron(eye(f, m.dims[z]), d.compose(x, y, z));
                const Matrix rhs = m.action(x, y) * kron(m.action(y, z), eye(f, d.hom(x, y)));
                v.expect_equal("composition at " + d.objects[x] + "," + d.objects[y] + "," + d.objects[z], lhs, rhs);
            }
    return v;
}

Verdict verify_left_module(const LinCategory& d, const LeftModule& m) {
    check_module_shapes(d, m.dims, m.act, false);
    const Field& f = d.field;
    const std::size_t n = d.size();
    Verdict v;
    for (std::size_t x = 0; x < n; ++x) {
        const Matrix im = eye(f, m.dims[x]);
        v.expect_equal("unit at " + d.objects[x], m.action(x, x) * kron(im, d.identity(x)), im);
    }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                // Domain M(x) (x) Hom(x,y) (x) Hom(y,z).
                const Matrix lhs = m.action(y, z) * kron(m.action(x, y), eye(f, d.hom(y, z)));
                const Matrix gf = d.compose(x, y, z) * swap_matrix(f, d.hom(x, y), d.hom(y, z));
                const Matrix rhs = m.action(x, z) * kron(eye(f, m.dims[x]), gf);
                v.expect_equal("composition at " + d.objects[x] + "," + d.objects[y] + "," + d.objects[z], lhs, rhs);
            }
    return v;
}

RightModule representable_right(const LinCategory& d, std::size_t y) {
    const std::size_t n = d.size();
    RightModule m;
    for (std::size_t x = 0; x < n; ++x) m.dims.push_back(d.hom(x, y));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t x2 = 0; x2 < n; ++x2) m.act.push_back(d.compose(x, x2, y));
    return m;
}

LeftModule representable_left(const LinCategory& d, std::size_t x) {
    const std::size_t n = d.size();
    LeftModule m;
    for (std::size_t y = 0; y < n; ++y) m.dims.push_back(d.hom(x, y));
    for (std::size_t y = 0; y < n; ++y)
        for (std::size_t y2 = 0; y2 < n; ++y2)
            m.act.push_back(d.compose(x, y, y2) * swap_matrix(d.field, d.hom(x, y), d.hom(y, y2)));
    return m;
}

namespace {

template <class Mod>
bool natural(const LinCategory& d, const Mod& m, const Mod& n, const ModuleMap& eta, bool right) {
    const std::size_t c = d.size();
    if (eta.comp.size() != c) return false;
    for (std::size_t x = 0; x < c; ++x)
        if (eta.comp[x].rows() != n.dims[x] || eta.comp[x].cols() != m.dims[x]) return false;
    for (std::size_t x = 0; x < c; ++x)
        for (std::size_t y = 0; y < c; ++y) {
            const Matrix ih = eye(d.field, d.hom(x, y));
            const std::size_t src = right ? y : x, dst = right ? x : y;
            if (eta.comp[dst] * m.action(x, y) != n.action(x, y) * kron(eta.comp[src], ih)) return false;
        }
    return true;
}

}  // namespace

bool is_module_map(const LinCategory& d, const RightModule& m, const RightModule& n, const ModuleMap& eta) {
    return natural(d, m, n, eta, true);
}

bool is_module_map(const LinCategory& d, const LeftModule& m, const LeftModule& n, const ModuleMap& eta) {
    return natural(d, m, n, eta, false);
}

std::size_t module_map_unknowns(const RightModule& m, const RightModule& n) {
    std::size_t u = 0;
    for (std::size_t x = 0; x < m.dims.size(); ++x) u += m.dims[x] * n.dims[x];
    return u;
}

ModuleMap module_map_from_vector(const Field& f, const RightModule& m, const RightModule& n, const Matrix& u) {
    ModuleMap eta;
    std::size_t off = 0;
    for (std::size_t x = 0; x < m.dims.size(); ++x) {
        const std::size_t sz = m.dims[x] * n.dims[x];
        eta.comp.push_back(sz ? u.rows_range(off, sz).reshaped(n.dims[x], m.dims[x]) : Matrix(f, n.dims[x], m.dims[x]));
        off += sz;
    }
    return eta;
}

std::vector<ModuleMap> module_hom_space(const LinCategory& d, const RightModule& m, const RightModule& n) {
    const Field& f = d.field;
    const std::size_t c = d.size();
    auto residual = [&](const Matrix& u) {
        ModuleMap eta = module_map_from_vector(f, m, n, u);
        Residual r(f);
        for (std::size_t x = 0; x < c; ++x)
            for (std::size_t y = 0; y < c; ++y)
                r.add(eta.comp[x] * m.action(x, y), n.action(x, y) * kron(eta.comp[y], eye(f, d.hom(x, y))));
        return r.vector();
    };
    const Matrix basis = solve_linear_family(f, module_map_unknowns(m, n), residual);
    std::vector<ModuleMap> out;
    for (std::size_t j = 0; j < basis.cols(); ++j) out.push_back(module_map_from_vector(f, m, n, basis.col(j)));
    return out;
}

ModuleMap yoneda_map(const LinCategory& d, std::size_t x, std::size_t y, const Matrix& f) {
    ModuleMap eta;
    for (std::size_t w = 0; w < d.size(); ++w) eta.comp.push_back(d.postcompose(w, x, y, f));
    return eta;
}

KernelCokernel kernel_cokernel(const LinCategory& d, const RightModule& m, const RightModule& n, const ModuleMap& eta) {
    if (!is_module_map(d, m, n, eta)) throw std::invalid_argument("kernel_cokernel: map is not natural");
    const Field& f = d.field;
    const std::size_t c = d.size();
    KernelCokernel kc;
    std::vector<Matrix> left;
    for (std::size_t x = 0; x < c; ++x) {
        Matrix b = kernel_basis(eta.comp[x]);
        kc.kernel.dims.push_back(b.cols());
        left.push_back(left_inverse(b).value());
        kc.inclusion.push_back(std::move(b));
        Quotient q = quotient_projection(f, n.dims[x], eta.comp[x]);
        kc.cokernel.dims.push_back(q.dim());
        kc.projection.push_back(q.projection);
        kc.section.push_back(q.section);
    }
    for (std::size_t x = 0; x < c; ++x)
        for (std::size_t y = 0; y < c; ++y) {
            const Matrix ih = eye(f, d.hom(x, y));
            kc.kernel.act.push_back(left[x] * m.action(x, y) * kron(kc.inclusion[y], ih));
            kc.cokernel.act.push_back(kc.projection[x] * n.action(x, y) * kron(kc.section[y], ih));
        }
    return kc;
}

Subcategory full_subcategory(const LinCategory& d) {
    Subcategory e;
    for (std::size_t x = 0; x < d.size(); ++x)
        for (std::size_t y = 0; y < d.size(); ++y) e.basis.push_back(eye(d.field, d.hom(x, y)));
    return e;
}

Subcategory identity_subcategory(const LinCategory& d) {
    Subcategory e;
    for (std::size_t x = 0; x < d.size(); ++x)
        for (std::size_t y = 0; y < d.size(); ++y)
            e.basis.push_back(x == y ? column_basis(d.identity(x)) : Matrix(d.field, d.hom(x, y), 0));
    return e;
}

Verdict verify_subcategory(const LinCategory& d, const Subcategory& e) {
    const std::size_t n = d.size();
    Verdict v;
    for (std::size_t x = 0; x < n; ++x) {
        const Matrix& b = e.hom(x, x, n);
        v.add("identity of " + d.objects[x] + " in subcategory", span_coordinates(b, d.identity(x)).has_value());
    }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                const Matrix prods = d.compose(x, y, z) * kron(e.hom(y, z, n), e.hom(x, y, n));
                bool ok = true;
                for (std::size_t j = 0; j < prods.cols() && ok; ++j)
                    ok = span_coordinates(e.hom(x, z, n), prods.col(j)).has_value();
                v.add("closed under composition at " + d.objects[x] + "," + d.objects[y] + "," + d.objects[z], ok);
            }
    return v;
}

LinCategory subcategory_as_category(const LinCategory& d, const Subcategory& e) {
    const std::size_t n = d.size();
    LinCategory s(d.field, d.objects);
    std::vector<Matrix> left(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const Matrix& b = e.hom(x, y, n);
            s.set_hom(x, y, default_basis(d.objects[x] + "->" + d.objects[y] + "#", b.cols()));
            left[x * n + y] = left_inverse(b).value();
        }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z)
                s.set_compose(x, y, z, left[x * n + z] * d.compose(x, y, z) * kron(e.hom(y, z, n), e.hom(x, y, n)));
    for (std::size_t x = 0; x < n; ++x) s.set_identity(x, left[x * n + x] * d.identity(x));
    return s;
}

RightModule restrict_right(const LinCategory& d, const Subcategory& e, const RightModule& m) {
    const std::size_t n = d.size();
    RightModule r;
    r.dims = m.dims;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            r.act.push_back(m.action(x, y) * kron(eye(d.field, m.dims[y]), e.hom(x, y, n)));
    return r;
}

LeftModule restrict_left(const LinCategory& d, const Subcategory& e, const LeftModule& m) {
    const std::size_t n = d.size();
    LeftModule r;
    r.dims = m.dims;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            r.act.push_back(m.action(x, y) * kron(eye(d.field, m.dims[x]), e.hom(x, y, n)));
    return r;
}

Matrix TensorOverSub::embed(std::size_t z, const Matrix& m, const Matrix& n) const {
    Matrix v(m.field(), ambient, 1);
    v.set_block(offset[z], 0, kron(m, n));
    return v;
}

TensorOverSub tensor_over_sub(const LinCategory& e, const RightModule& m, const LeftModule& n) {
    const Field& f = e.field;
    const std::size_t c = e.size();
    TensorOverSub t;
    t.mdims = m.dims;
    t.ndims = n.dims;
    for (std::size_t z = 0; z < c; ++z) {
        t.offset.push_back(t.ambient);
        t.ambient += m.dims[z] * n.dims[z];
    }
    std::vector<Matrix> rel;
    for (std::size_t zp = 0; zp < c; ++zp)
        for (std::size_t z = 0; z < c; ++z)
            for (std::size_t i = 0; i < e.hom(zp, z); ++i) {
                const Matrix ei = e.hom_unit(zp, z, i);
                // M(z) (x) N(z') -> blocks z' and z.
                const Matrix me = m.action(zp, z) * kron(eye(f, m.dims[z]), ei);
                const Matrix ne = n.action(zp, z) * kron(eye(f, n.dims[zp]), ei);
                Matrix r(f, t.ambient, m.dims[z] * n.dims[zp]);
                r.set_block(t.offset[zp], 0, kron(me, eye(f, n.dims[zp])));
                Matrix blk = r.block(t.offset[z], 0, m.dims[z] * n.dims[z], r.cols()) - kron(eye(f, m.dims[z]), ne);
                r.set_block(t.offset[z], 0, blk);
                rel.push_back(std::move(r));
            }
    t.relations = hstack(rel, f, t.ambient);
    t.quotient = quotient_projection(f, t.ambient, t.relations);
    return t;
}

}  // namespace ent
