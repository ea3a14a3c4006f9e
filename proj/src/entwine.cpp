#include "entwine/entwine.hpp"

#include <stdexcept>

namespace ent {

namespace {

void require_shape(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("shape mismatch: " + what);
}

Matrix eye(const Field& f, std::size_t n) { return Matrix::identity(f, n); }

std::string pair_name(const LinCategory& d, std::size_t x, std::size_t y) { return d.objects[x] + "," + d.objects[y]; }

void check_psi_shapes(const Entwining& e) {
    const std::size_t n = e.cat.size(), k = e.k();
    require_shape(e.psi.size() == n * n, "psi must have one entry per ordered pair");
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const std::size_t h = e.cat.hom(x, y);
            require_shape(e.at(x, y).rows() == h * k && e.at(x, y).cols() == k * h,
                          "psi at " + pair_name(e.cat, x, y));
        }
}

}  // namespace

Verdict verify_entwining(const Entwining& e) {
    check_psi_shapes(e);
    const LinCategory& d = e.cat;
    const Coalgebra& c = e.coalg;
    const Field& f = e.field();
    const std::size_t n = d.size(), k = e.k();
    const Matrix ik = eye(f, k);
    Verdict v;
    // Cheapest identities first; the first failure names the reported axiom.
    for (std::size_t x = 0; x < n; ++x)
        v.expect_equal("identity at " + d.objects[x], e.at(x, x) * kron(ik, d.identity(x)), kron(d.identity(x), ik),
                       &c.basis);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const Matrix ih = eye(f, d.hom(x, y));
            v.expect_equal("counit at " + pair_name(d, x, y), kron(ih, c.counit) * e.at(x, y), kron(c.counit, ih));
        }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const Matrix ih = eye(f, d.hom(x, y));
            const Matrix& p = e.at(x, y);
            v.expect_equal("comultiplication at " + pair_name(d, x, y), kron(ih, c.delta) * p,
                           kron(p, ik) * kron(ik, p) * kron(c.delta, ih));
        }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                const Matrix& comp = d.compose(x, y, z);
                const Matrix lhs = e.at(x, z) * kron(ik, comp);
                const Matrix rhs = kron(comp, ik) * kron(eye(f, d.hom(y, z)), e.at(x, y)) *
                                   kron(e.at(y, z), eye(f, d.hom(x, y)));
                v.expect_equal("composition at " + pair_name(d, x, y) + "," + d.objects[z], lhs, rhs);
            }
    return v;
}

Entwining swap_entwining(const LinCategory& d, const Coalgebra& c) {
    Entwining e{d, c, {}};
    for (std::size_t x = 0; x < d.size(); ++x)
        for (std::size_t y = 0; y < d.size(); ++y) e.psi.push_back(swap_matrix(d.field, c.dim, d.hom(x, y)));
    return e;
}

Verdict verify_coh_category(const CoHCategory& d) {
    const LinCategory& cat = d.cat;
    const HopfAlgebra& h = d.hopf;
    const Field& f = cat.field;
    const std::size_t n = cat.size(), dh = h.coalg.dim;
    require_shape(d.coaction.size() == n * n, "hom coactions must cover every ordered pair");
    Verdict v;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const Matrix& r = d.coaction[x * n + y];
            require_shape(r.rows() == cat.hom(x, y) * dh && r.cols() == cat.hom(x, y), "hom coaction");
            v.merge(verify_comodule(Comodule{h.coalg, cat.hom(x, y), r}), "hom " + pair_name(cat, x, y) + ": ");
        }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                const Matrix& comp = cat.compose(x, y, z);
                const Matrix shuffle = kron({eye(f, cat.hom(y, z)), swap_matrix(f, dh, cat.hom(x, y)), eye(f, dh)});
                const Matrix lhs = d.coaction[x * n + z] * comp;
                const Matrix rhs = kron(comp, h.mult) * shuffle * kron(d.coaction[y * n + z], d.coaction[x * n + y]);
                v.expect_equal("colinear composition at " + pair_name(cat, x, y) + "," + cat.objects[z], lhs, rhs);
            }
    for (std::size_t x = 0; x < n; ++x)
        v.expect_equal("coinvariant identity at " + cat.objects[x], d.coaction[x * n + x] * cat.identity(x),
                       kron(cat.identity(x), h.unit));
    return v;
}

Verdict verify_module_coalgebra(const HopfAlgebra& h, const ModuleCoalgebra& c) {
    const Field& f = c.coalg.field;
    const std::size_t k = c.coalg.dim, dh = h.coalg.dim;
    require_shape(c.action.rows() == k && c.action.cols() == k * dh, "module coalgebra action");
    const Matrix ik = eye(f, k), ih = eye(f, dh);
    Verdict v;
    v.expect_equal("action associativity", c.action * kron(c.action, ih), c.action * kron(ik, h.mult));
    v.expect_equal("action unit", c.action * kron(ik, h.unit), ik, &c.coalg.basis);
    const Matrix mid = kron({ik, swap_matrix(f, k, dh), ih});
    v.expect_equal("comultiplication is H-linear", c.coalg.delta * c.action,
                   kron(c.action, c.action) * mid * kron(c.coalg.delta, h.coalg.delta));
    v.expect_equal("counit is H-linear", c.coalg.counit * c.action, kron(c.coalg.counit, h.coalg.counit));
    return v;
}

ModuleCoalgebra regular_module_coalgebra(const HopfAlgebra& h) { return ModuleCoalgebra{h.coalg, h.mult}; }

Entwining doi_hopf_entwining(const CoHCategory& d, const ModuleCoalgebra& c) {
    Verdict cv = verify_coh_category(d);
    if (!cv.ok()) throw std::invalid_argument("co-H-category law violated: " + cv.summary());
    Verdict mv = verify_module_coalgebra(d.hopf, c);
    if (!mv.ok()) throw std::invalid_argument("module coalgebra law violated: " + mv.summary());
    const Field& f = d.cat.field;
    const std::size_t n = d.cat.size(), k = c.coalg.dim, dh = d.hopf.coalg.dim;
    Entwining e{d.cat, c.coalg, {}};
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const std::size_t hxy = d.cat.hom(x, y);
            const Matrix ihom = eye(f, hxy);
            // c (x) f -> f (x) c -> f_0 (x) f_1 (x) c -> f_0 (x) c (x) f_1 -> f_0 (x) c f_1
            e.psi.push_back(kron(ihom, c.action) * kron(ihom, swap_matrix(f, dh, k)) *
                            kron(d.coaction[x * n + y], eye(f, k)) * swap_matrix(f, k, hxy));
        }
    return e;
}

Verdict verify_entwined_module(const Entwining& e, const EntwinedModule& m) {
    const LinCategory& d = e.cat;
    const Field& f = e.field();
    const std::size_t n = d.size(), k = e.k();
    Verdict v = verify_right_module(d, m.module);
    require_shape(m.rho.size() == n, "one coaction per object");
    for (std::size_t x = 0; x < n; ++x) {
        require_shape(m.rho[x].rows() == m.dim(x) * k && m.rho[x].cols() == m.dim(x), "coaction at " + d.objects[x]);
        v.merge(verify_comodule(Comodule{e.coalg, m.dim(x), m.rho[x]}), "coaction at " + d.objects[x] + ": ");
    }
    for (std::size_t y = 0; y < n; ++y)
        for (std::size_t x = 0; x < n; ++x) {
            // f : Y -> X acting M(X) (x) Hom(Y,X) -> M(Y).
            const Matrix& act = m.module.action(y, x);
            const Matrix lhs = m.rho[y] * act;
            const Matrix rhs = kron(act, eye(f, k)) * kron(eye(f, m.dim(x)), e.at(y, x)) *
                               kron(m.rho[x], eye(f, d.hom(y, x)));
            v.expect_equal("compatibility at " + pair_name(d, y, x), lhs, rhs);
        }
    return v;
}

bool is_entwined_map(const Entwining& e, const EntwinedModule& m, const EntwinedModule& n, const ModuleMap& eta) {
    if (!is_module_map(e.cat, m.module, n.module, eta)) return false;
    const Matrix ik = eye(e.field(), e.k());
    for (std::size_t x = 0; x < e.cat.size(); ++x)
        if (n.rho[x] * eta.comp[x] != kron(eta.comp[x], ik) * m.rho[x]) return false;
    return true;
}

EntwinedModule module_tensor_C(const Entwining& e, const RightModule& n) {
    const Field& f = e.field();
    const std::size_t c = e.cat.size(), k = e.k();
    const Matrix ik = eye(f, k);
    EntwinedModule m;
    for (std::size_t x = 0; x < c; ++x) m.module.dims.push_back(n.dims[x] * k);
    for (std::size_t x = 0; x < c; ++x)
        for (std::size_t y = 0; y < c; ++y)
            m.module.act.push_back(kron(n.action(x, y), ik) * kron(eye(f, n.dims[y]), e.at(x, y)));
    for (std::size_t x = 0; x < c; ++x) m.rho.push_back(kron(eye(f, n.dims[x]), e.coalg.delta));
    return m;
}

ModuleMap module_tensor_C_map(const Entwining& e, const ModuleMap& eta) {
    ModuleMap out;
    for (const auto& m : eta.comp) out.comp.push_back(kron(m, eye(e.field(), e.k())));
    return out;
}

EntwinedModule comodule_tensor_hX(const Entwining& e, const Comodule& nc, std::size_t x) {
    const LinCategory& d = e.cat;
    const Field& f = e.field();
    const std::size_t c = d.size();
    const Matrix in = eye(f, nc.dim);
    EntwinedModule m;
    for (std::size_t y = 0; y < c; ++y) m.module.dims.push_back(nc.dim * d.hom(y, x));
    for (std::size_t y2 = 0; y2 < c; ++y2)
        for (std::size_t y = 0; y < c; ++y) m.module.act.push_back(kron(in, d.compose(y2, y, x)));
    for (std::size_t y = 0; y < c; ++y)
        m.rho.push_back(kron(in, e.at(y, x)) * kron(nc.rho, eye(f, d.hom(y, x))));
    return m;
}

EntwinedModule representable_entwined(const Entwining& e, std::size_t y, const std::vector<Matrix>& rho) {
    EntwinedModule m{representable_right(e.cat, y), rho};
    return m;
}

PsiMorphism psi_morphism(const Entwining& e, std::size_t y) {
    PsiMorphism p;
    p.source = comodule_tensor_hX(e, regular_comodule(e.coalg), y);
    const RightModule hy = representable_right(e.cat, y);
    p.target = module_tensor_C(e, hy);
    for (std::size_t x = 0; x < e.cat.size(); ++x) p.map.comp.push_back(e.at(x, y));
    p.module_map = is_module_map(e.cat, p.source.module, p.target.module, p.map);
    const Matrix ik = eye(e.field(), e.k());
    p.colinear = true;
    for (std::size_t x = 0; x < e.cat.size(); ++x)
        if (p.target.rho[x] * p.map.comp[x] != kron(p.map.comp[x], ik) * p.source.rho[x]) p.colinear = false;
    return p;
}

GeneratorMorphism generator_morphism(const Entwining& e, const EntwinedModule& m, std::size_t x, const Matrix& v) {
    const Field& f = e.field();
    const std::size_t k = e.k(), dm = m.dim(x);
    require_shape(v.rows() == dm && v.cols() == 1, "element must lie in M(x)");
    GeneratorMorphism g;
    Matrix span = column_basis(v);
    // Close under the contractions (id (x) d_i*) rho.
    for (;;) {
        std::vector<Matrix> cols{span};
        for (std::size_t i = 0; i < k; ++i) {
            const Matrix contract = kron(eye(f, dm), dual_basis_vector(e.coalg, i));
            cols.push_back(contract * m.rho[x] * span);
        }
        Matrix next = column_basis(hstack(cols, f, dm));
        if (next.cols() == span.cols()) break;
        span = next;
    }
    g.span = span;
    const std::size_t r = span.cols();
    Matrix rho_v(f, r * k, r);
    if (r > 0) rho_v = kron(left_inverse(span).value(), eye(f, k)) * m.rho[x] * span;
    g.comodule = Comodule{e.coalg, r, rho_v};
    g.source = comodule_tensor_hX(e, g.comodule, x);
    for (std::size_t y = 0; y < e.cat.size(); ++y)
        g.map.comp.push_back(m.module.action(y, x) * kron(span, eye(f, e.cat.hom(y, x))));
    g.is_morphism = is_entwined_map(e, g.source, m, g.map);
    Matrix hit = v;
    if (r > 0) {
        const Matrix coords = span_coordinates(span, v).value();
        hit = g.map.comp[x] * kron(coords, e.cat.identity(x));
    }
    g.hits_element = hit == v;
    return g;
}

EntwinedKernelCokernel entwined_kernel_cokernel(const Entwining& e, const EntwinedModule& m, const EntwinedModule& n,
                                                const ModuleMap& eta) {
    if (!is_entwined_map(e, m, n, eta)) throw std::invalid_argument("map is not a morphism of entwined modules");
    EntwinedKernelCokernel out;
    out.linear = kernel_cokernel(e.cat, m.module, n.module, eta);
    out.kernel.module = out.linear.kernel;
    out.cokernel.module = out.linear.cokernel;
    const Matrix ik = eye(e.field(), e.k());
    for (std::size_t x = 0; x < e.cat.size(); ++x) {
        const Matrix& inc = out.linear.inclusion[x];
        Matrix rk(e.field(), inc.cols() * e.k(), inc.cols());
        if (inc.cols() > 0) rk = kron(left_inverse(inc).value(), ik) * m.rho[x] * inc;
        out.kernel.rho.push_back(rk);
        out.cokernel.rho.push_back(kron(out.linear.projection[x], ik) * n.rho[x] * out.linear.section[x]);
    }
    return out;
}

Verdict verify_entwining_morphism(const Entwining& s, const Entwining& t, const EntwiningMorphism& m) {
    const LinCategory &d1 = s.cat, &d2 = t.cat;
    const std::size_t n = d1.size();
    require_shape(m.objects.size() == n && m.homs.size() == n * n, "functor data");
    require_shape(m.sigma.rows() == t.k() && m.sigma.cols() == s.k(), "coalgebra map");
    auto fh = [&](std::size_t x, std::size_t y) -> const Matrix& { return m.homs[x * n + y]; };
    Verdict v;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            require_shape(fh(x, y).rows() == d2.hom(m.objects[x], m.objects[y]) && fh(x, y).cols() == d1.hom(x, y),
                          "functor on hom " + pair_name(d1, x, y));
    for (std::size_t x = 0; x < n; ++x) {
        v.expect_equal("functor preserves identity at " + d1.objects[x], fh(x, x) * d1.identity(x),
                       d2.identity(m.objects[x]));
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z)
                v.expect_equal("functor preserves composition at " + pair_name(d1, x, y) + "," + d1.objects[z],
                               fh(x, z) * d1.compose(x, y, z),
                               d2.compose(m.objects[x], m.objects[y], m.objects[z]) * kron(fh(y, z), fh(x, y)));
    }
    v.expect_equal("sigma comultiplicative", t.coalg.delta * m.sigma, kron(m.sigma, m.sigma) * s.coalg.delta);
    v.expect_equal("sigma counital", t.coalg.counit * m.sigma, s.coalg.counit);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            v.expect_equal("psi compatibility at " + pair_name(d1, x, y), kron(fh(x, y), m.sigma) * s.at(x, y),
                           t.at(m.objects[x], m.objects[y]) * kron(m.sigma, fh(x, y)));
    return v;
}

}  // namespace ent
