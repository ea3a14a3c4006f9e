#include "entwine/galois.hpp"

#include <stdexcept>

namespace ent {

namespace {

Matrix eye(const Field& f, std::size_t n) { return Matrix::identity(f, n); }

std::string pair_name(const LinCategory& d, std::size_t x, std::size_t y) { return d.objects[x] + "," + d.objects[y]; }

std::size_t block_size(const TensorOverSub& t, std::size_t z) { return t.mdims[z] * t.ndims[z]; }

// Block-diagonal ambient map with block(z) : src block z -> dst block z.
template <class F>
Matrix blockwise(const Field& f, const TensorOverSub& src, const TensorOverSub& dst, F&& block) {
    Matrix m(f, dst.ambient, src.ambient);
    for (std::size_t z = 0; z < src.offset.size(); ++z)
        if (block_size(src, z) && block_size(dst, z)) m.set_block(dst.offset[z], src.offset[z], block(z));
    return m;
}

// Ambient map into a fixed space, with block(z) : src block z -> target.
template <class F>
Matrix collect(const Field& f, const TensorOverSub& src, std::size_t rows, F&& block) {
    Matrix m(f, rows, src.ambient);
    for (std::size_t z = 0; z < src.offset.size(); ++z)
        if (block_size(src, z) && rows) m.set_block(0, src.offset[z], block(z));
    return m;
}

const Matrix& proj(const TensorOverSub& t) { return t.quotient.projection; }
const Matrix& sect(const TensorOverSub& t) { return t.quotient.section; }

bool in_span(const Matrix& basis, const Matrix& v) {
    return rank(hstack(basis, v)) == rank(basis);
}

std::optional<AffineSolution> solve_affine_family(const Field& f, std::size_t unknowns,
                                                  const std::function<Matrix(const Matrix&)>& residual) {
    const Matrix r0 = residual(Matrix(f, unknowns, 1));
    return solve_affine(assemble_linear(f, unknowns, residual), -r0);
}

// Coordinates of the columns of m in the basis b, which must span them.
Matrix coordinates(const Matrix& b, const Matrix& m) {
    Matrix c(m.field(), b.cols(), m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        auto s = span_coordinates(b, m.col(j));
        if (!s) throw std::invalid_argument("vector outside the span");
        c.set_block(0, j, *s);
    }
    return c;
}

// Ambient coaction on h_Y (x)_E _X h: u (x) v |-> u (x) rho(v).
Matrix ambient_coaction(const GaloisData& g, const TensorOverSub& t, std::size_t x, std::size_t y) {
    const Field& f = g.field();
    const LinCategory& d = g.cat;
    const std::size_t k = g.k();
    Matrix m(f, t.ambient * k, t.ambient);
    for (std::size_t z = 0; z < d.size(); ++z)
        if (block_size(t, z)) m.set_block(t.offset[z] * k, t.offset[z], kron(eye(f, d.hom(z, y)), g.at(x, z)));
    return m;
}

}  // namespace

Verdict verify_galois_data(const GaloisData& g) {
    Verdict v;
    const std::size_t n = g.cat.size();
    if (g.rho.size() != n * n) throw std::invalid_argument("galois data: expected one coaction per pair");
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const Matrix& r = g.at(x, y);
            const std::size_t h = g.cat.hom(x, y);
            if (r.rows() != h * g.k() || r.cols() != h)
                throw std::invalid_argument("galois data: coaction shape at " + pair_name(g.cat, x, y));
            Verdict c = verify_comodule(Comodule{g.coalg, h, r});
            v.merge(c, "comodule at " + pair_name(g.cat, x, y) + ": ");
        }
    return v;
}

GaloisData trivial_galois_data(const LinCategory& d, const Coalgebra& c, const Matrix& grouplike) {
    GaloisData g{d, c, {}};
    for (std::size_t x = 0; x < d.size(); ++x)
        for (std::size_t y = 0; y < d.size(); ++y) g.rho.push_back(kron(eye(d.field, d.hom(x, y)), grouplike));
    return g;
}

GaloisData galois_data(const CoHCategory& d) { return GaloisData{d.cat, d.hopf.coalg, d.coaction}; }

Subcategory coinvariant_subcategory(const GaloisData& g) {
    const LinCategory& d = g.cat;
    const Field& f = g.field();
    const std::size_t n = d.size(), k = g.k();
    Subcategory e;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const std::size_t h = d.hom(x, y);
            std::vector<Matrix> rows;
            for (std::size_t z = 0; z < n; ++z)
                for (std::size_t i = 0; i < d.hom(z, x); ++i) {
                    const Matrix fz = d.hom_unit(z, x, i);
                    rows.push_back(g.at(z, y) * d.precompose(z, x, y, fz) -
                                   kron(d.compose(z, x, y), eye(f, k)) * kron(eye(f, h), g.at(z, x) * fz));
                }
            Matrix stacked = rows.empty() ? Matrix(f, 0, h) : vstack(rows, f, h);
            e.basis.push_back(kernel_basis(stacked));
        }
    return e;
}

bool CanonicalMap::is_galois() const {
    for (const auto& p : pairs)
        if (!p.inverse) return false;
    return true;
}

std::vector<TensorOverSub> hom_tensors(const LinCategory& d, const Subcategory& e) {
    const LinCategory ec = subcategory_as_category(d, e);
    std::vector<TensorOverSub> out;
    for (std::size_t x = 0; x < d.size(); ++x)
        for (std::size_t y = 0; y < d.size(); ++y)
            out.push_back(tensor_over_sub(ec, restrict_right(d, e, representable_right(d, y)),
                                          restrict_left(d, e, representable_left(d, x))));
    return out;
}

CanonicalMap canonical_map(const GaloisData& g, const Subcategory& e) {
    const LinCategory& d = g.cat;
    const Field& f = g.field();
    const std::size_t n = d.size(), k = g.k();
    CanonicalMap cm;
    cm.objects = n;
    cm.sub = e;
    std::vector<TensorOverSub> ts = hom_tensors(d, e);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            CanonicalPair p;
            p.tensor = std::move(ts[x * n + y]);
            const Matrix pre = collect(f, p.tensor, d.hom(x, y) * k, [&](std::size_t z) {
                return kron(d.compose(x, z, y), eye(f, k)) * kron(eye(f, d.hom(z, y)), g.at(x, z));
            });
            if (p.tensor.relations.cols() && !(pre * p.tensor.relations).is_zero())
                throw std::invalid_argument("canonical map is not balanced over the subcategory at " +
                                            pair_name(d, x, y));
            p.can = pre * sect(p.tensor);
            p.rank = rank(p.can);
            p.inverse = inverse(p.can);
            cm.pairs.push_back(std::move(p));
        }
    return cm;
}

Matrix left_multiply(const LinCategory& d, const TensorOverSub& src, const TensorOverSub& dst, std::size_t x,
                     std::size_t y, std::size_t y2, const Matrix& a) {
    return blockwise(d.field, src, dst,
                     [&](std::size_t z) { return kron(d.postcompose(z, y, y2, a), eye(d.field, d.hom(x, z))); });
}

Matrix right_multiply(const LinCategory& d, const TensorOverSub& src, const TensorOverSub& dst, std::size_t x2,
                      std::size_t x, std::size_t y, const Matrix& b) {
    return blockwise(d.field, src, dst,
                     [&](std::size_t z) { return kron(eye(d.field, d.hom(z, y)), d.precompose(x2, x, z, b)); });
}

Matrix tensor_multiplication(const LinCategory& d, const TensorOverSub& t, std::size_t x, std::size_t y) {
    return collect(d.field, t, d.hom(x, y), [&](std::size_t z) { return d.compose(x, z, y); }) * sect(t);
}

TranslationMap translation_maps(const GaloisData& g, const CanonicalMap& cm) {
    const LinCategory& d = g.cat;
    const Field& f = g.field();
    const std::size_t n = d.size(), k = g.k();
    const Matrix ik = eye(f, k);
    TranslationMap tm;
    for (std::size_t x = 0; x < n; ++x) {
        const CanonicalPair& p = cm.at(x, x);
        if (!p.inverse) throw std::invalid_argument("canonical map is not invertible at " + pair_name(d, x, x));
        tm.tau.push_back(*p.inverse * kron(d.identity(x), ik));
    }
    for (std::size_t x = 0; x < n; ++x) {
        const TensorOverSub& t = cm.at(x, x).tensor;
        const Matrix& tau = tm.tau[x];
        const Matrix coact = kron(proj(t), ik) * ambient_coaction(g, t, x, x) * sect(t);
        tm.verdict.expect_equal("colinearity at " + d.objects[x], coact * tau, kron(tau, ik) * g.coalg.delta,
                                &g.coalg.basis);
        tm.verdict.expect_equal("multiplication identity at " + d.objects[x],
                                tensor_multiplication(d, t, x, x) * tau, d.identity(x) * g.coalg.counit,
                                &g.coalg.basis);
    }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const std::size_t h = d.hom(x, y);
            const TensorOverSub& txx = cm.at(x, x).tensor;
            const TensorOverSub& txy = cm.at(x, y).tensor;
            Matrix lhs(f, txy.dim(), h), rhs(f, txy.dim(), h);
            std::vector<Matrix> mult;
            for (std::size_t a = 0; a < h; ++a)
                mult.push_back(proj(txy) * left_multiply(d, txx, txy, x, x, y, d.hom_unit(x, y, a)) * sect(txx) *
                               tm.tau[x]);
            for (std::size_t j = 0; j < h; ++j) {
                const Matrix r = g.at(x, y) * d.hom_unit(x, y, j);
                Matrix col(f, txy.dim(), 1);
                for (std::size_t a = 0; a < h; ++a)
                    for (std::size_t c = 0; c < k; ++c)
                        if (!r(a * k + c, 0).is_zero()) col += mult[a].col(c) * r(a * k + c, 0);
                lhs.set_block(0, j, col);
                rhs.set_block(0, j, proj(txy) * txy.embed(y, d.identity(y), d.hom_unit(x, y, j)));
            }
            tm.verdict.expect_equal("right leg identity at " + pair_name(d, x, y), lhs, rhs, &d.hom_basis(x, y));
        }
    return tm;
}

EntwinedModule representable_comodule(const GaloisData& g, std::size_t y) {
    EntwinedModule m{representable_right(g.cat, y), {}};
    for (std::size_t x = 0; x < g.cat.size(); ++x) m.rho.push_back(g.at(x, y));
    return m;
}

InducedEntwining induced_entwining(const GaloisData& g, const CanonicalMap& cm) {
    if (!cm.is_galois()) throw std::invalid_argument("induced entwining needs an invertible canonical map");
    const LinCategory& d = g.cat;
    const Field& f = g.field();
    const std::size_t n = d.size(), k = g.k();
    const TranslationMap tm = translation_maps(g, cm);
    InducedEntwining out;
    out.entwining.cat = d;
    out.entwining.coalg = g.coalg;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const std::size_t h = d.hom(x, y);
            const TensorOverSub& tyy = cm.at(y, y).tensor;
            const TensorOverSub& txy = cm.at(x, y).tensor;
            Matrix psi(f, h * k, k * h);
            for (std::size_t b = 0; b < h; ++b) {
                const Matrix img = cm.at(x, y).can * proj(txy) *
                                   right_multiply(d, tyy, txy, x, y, y, d.hom_unit(x, y, b)) * sect(tyy) * tm.tau[y];
                for (std::size_t c = 0; c < k; ++c) psi.set_block(0, c * h + b, img.col(c));
            }
            out.entwining.psi.push_back(std::move(psi));
        }
    out.verdict.merge(tm.verdict, "translation: ");
    out.verdict.merge(verify_entwining(out.entwining), "entwining: ");
    for (std::size_t y = 0; y < n; ++y)
        out.verdict.merge(verify_entwined_module(out.entwining, representable_comodule(g, y)),
                          "h_" + d.objects[y] + " entwined: ");
    return out;
}

Verdict compare_entwining(const GaloisData& g, const Entwining& induced, const Entwining& candidate) {
    Verdict v;
    bool property = verify_entwining(candidate).ok();
    for (std::size_t y = 0; property && y < g.cat.size(); ++y)
        property = verify_entwined_module(candidate, representable_comodule(g, y)).ok();
    v.add("defining property", property);
    if (!property) return v;
    for (std::size_t x = 0; x < g.cat.size(); ++x)
        for (std::size_t y = 0; y < g.cat.size(); ++y)
            v.expect_equal("agrees at " + pair_name(g.cat, x, y), candidate.at(x, y), induced.at(x, y));
    return v;
}

TensorOverSub bimodule_tensor(const LinCategory& d, const Bimodule& m, const Bimodule& nm, std::size_t x,
                              std::size_t y) {
    const std::size_t n = d.size();
    RightModule r;
    LeftModule l;
    for (std::size_t z = 0; z < n; ++z) {
        r.dims.push_back(m.dim(z, y));
        l.dims.push_back(nm.dim(x, z));
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            r.act.push_back(m.right_at(a, b, y));
            l.act.push_back(nm.left_at(x, a, b) * swap_matrix(d.field, nm.dim(x, a), d.hom(a, b)));
        }
    return tensor_over_sub(d, r, l);
}

Verdict verify_bimodule(const LinCategory& d, const Bimodule& m) {
    const Field& f = d.field;
    const std::size_t n = d.size();
    Verdict v;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const std::size_t dm = m.dim(x, y);
            v.expect_equal("left identity at " + pair_name(d, x, y), m.left_at(x, y, y) * kron(d.identity(y), eye(f, dm)),
                           eye(f, dm));
            v.expect_equal("right identity at " + pair_name(d, x, y),
                           m.right_at(x, x, y) * kron(eye(f, dm), d.identity(x)), eye(f, dm));
        }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z)
                for (std::size_t w = 0; w < n; ++w) {
                    const std::string at = " at " + d.objects[x] + "," + d.objects[y] + "," + d.objects[z] + "," +
                                           d.objects[w];
                    // g2 g1 m with m in M(x,y), g1 : y -> z, g2 : z -> w.
                    v.expect_equal("left associativity" + at,
                                   m.left_at(x, z, w) * kron(eye(f, d.hom(z, w)), m.left_at(x, y, z)),
                                   m.left_at(x, y, w) * kron(d.compose(y, z, w), eye(f, m.dim(x, y))));
                    // m f f' with m in M(z,w), f : y -> z, f' : x -> y.
                    v.expect_equal("right associativity" + at,
                                   m.right_at(x, y, w) * kron(m.right_at(y, z, w), eye(f, d.hom(x, y))),
                                   m.right_at(x, z, w) * kron(eye(f, m.dim(z, w)), d.compose(x, y, z)));
                    // g m f with f : x -> y, m in M(y,z), g : z -> w.
                    v.expect_equal("actions commute" + at,
                                   m.right_at(x, y, w) * kron(m.left_at(y, z, w), eye(f, d.hom(x, y))),
                                   m.left_at(x, z, w) * kron(eye(f, d.hom(z, w)), m.right_at(x, y, z)));
                }
    return v;
}

namespace {

// Triple ambient space: blocks (w,z) of M(w,y) (x) M(z,w) (x) M(x,z).
struct Triple {
    std::vector<std::size_t> offset;
    std::size_t ambient = 0;
};

Triple triple_layout(const Bimodule& m, std::size_t n, std::size_t x, std::size_t y) {
    Triple t;
    for (std::size_t w = 0; w < n; ++w)
        for (std::size_t z = 0; z < n; ++z) {
            t.offset.push_back(t.ambient);
            t.ambient += m.dim(w, y) * m.dim(z, w) * m.dim(x, z);
        }
    return t;
}

}  // namespace

Verdict verify_coring(const LinCategory& d, const Coring& c) {
    const Field& f = d.field;
    const std::size_t n = d.size();
    const Bimodule& m = c.carrier;
    Verdict v = verify_bimodule(d, m);
    auto cu = [&](std::size_t x, std::size_t y) -> const Matrix& { return c.counit[x * n + y]; };
    auto cm = [&](std::size_t x, std::size_t y) -> const Matrix& { return c.comult[x * n + y]; };
    std::vector<TensorOverSub> tens;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) tens.push_back(bimodule_tensor(d, m, m, x, y));
    auto ten = [&](std::size_t x, std::size_t y) -> const TensorOverSub& { return tens[x * n + y]; };

    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                const std::string at = " at " + d.objects[x] + "," + d.objects[y] + "," + d.objects[z];
                v.expect_equal("counit left linear" + at, cu(x, z) * m.left_at(x, y, z),
                               d.compose(x, y, z) * kron(eye(f, d.hom(y, z)), cu(x, y)));
                v.expect_equal("counit right linear" + at, cu(x, z) * m.right_at(x, y, z),
                               d.compose(x, y, z) * kron(cu(y, z), eye(f, d.hom(x, y))));
                // Comultiplication against a in Hom(y,z) on the left and b in Hom(x,y) on the right.
                for (std::size_t a = 0; a < d.hom(y, z); ++a) {
                    const Matrix u = d.hom_unit(y, z, a);
                    const Matrix amb = blockwise(f, ten(x, y), ten(x, z), [&](std::size_t w) {
                        return kron(m.left_at(w, y, z) * kron(u, eye(f, m.dim(w, y))), eye(f, m.dim(x, w)));
                    });
                    v.expect_equal("comultiplication left linear" + at,
                                   proj(ten(x, z)) * cm(x, z) * m.left_at(x, y, z) * kron(u, eye(f, m.dim(x, y))),
                                   proj(ten(x, z)) * amb * cm(x, y));
                }
                for (std::size_t b = 0; b < d.hom(x, y); ++b) {
                    const Matrix u = d.hom_unit(x, y, b);
                    const Matrix amb = blockwise(f, ten(y, z), ten(x, z), [&](std::size_t w) {
                        return kron(eye(f, m.dim(w, z)), m.right_at(x, y, w) * kron(eye(f, m.dim(y, w)), u));
                    });
                    v.expect_equal("comultiplication right linear" + at,
                                   proj(ten(x, z)) * cm(x, z) * m.right_at(x, y, z) * kron(eye(f, m.dim(y, z)), u),
                                   proj(ten(x, z)) * amb * cm(y, z));
                }
            }

    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const std::string at = " at " + pair_name(d, x, y);
            const TensorOverSub& t = ten(x, y);
            const std::size_t dm = m.dim(x, y);
            const Matrix el = collect(f, t, dm, [&](std::size_t z) {
                return m.left_at(x, z, y) * kron(cu(z, y), eye(f, m.dim(x, z)));
            });
            const Matrix er = collect(f, t, dm, [&](std::size_t z) {
                return m.right_at(x, z, y) * kron(eye(f, m.dim(z, y)), cu(x, z));
            });
            if (t.relations.cols()) {
                v.add("left counit balanced" + at, (el * t.relations).is_zero());
                v.add("right counit balanced" + at, (er * t.relations).is_zero());
            }
            v.expect_equal("left counit law" + at, el * cm(x, y), eye(f, dm));
            v.expect_equal("right counit law" + at, er * cm(x, y), eye(f, dm));

            const Triple tr = triple_layout(m, n, x, y);
            Matrix outer(f, tr.ambient, dm), inner(f, tr.ambient, dm);
            std::vector<Matrix> rels;
            for (std::size_t z = 0; z < n; ++z) {
                const std::size_t mxz = m.dim(x, z), mzy = m.dim(z, y);
                if (!mxz || !mzy) continue;
                const TensorOverSub& tz = ten(z, y);
                const Matrix r = kron(cm(z, y), eye(f, mxz)) * cm(x, y).rows_range(t.offset[z], mzy * mxz);
                const Matrix rel = kron(tz.relations, eye(f, mxz));
                Matrix scattered(f, tr.ambient, rel.cols());
                for (std::size_t w = 0; w < n; ++w) {
                    const std::size_t len = m.dim(w, y) * m.dim(z, w) * mxz;
                    if (!len) continue;
                    outer.set_block(tr.offset[w * n + z], 0, r.rows_range(tz.offset[w] * mxz, len));
                    scattered.set_block(tr.offset[w * n + z], 0, rel.rows_range(tz.offset[w] * mxz, len));
                }
                rels.push_back(std::move(scattered));
            }
            for (std::size_t w = 0; w < n; ++w) {
                const std::size_t mwy = m.dim(w, y), mxw = m.dim(x, w);
                if (!mwy || !mxw) continue;
                const TensorOverSub& tw = ten(x, w);
                const Matrix r = kron(eye(f, mwy), cm(x, w)) * cm(x, y).rows_range(t.offset[w], mwy * mxw);
                const Matrix rel = kron(eye(f, mwy), tw.relations);
                Matrix scattered(f, tr.ambient, rel.cols());
                for (std::size_t a = 0; a < mwy; ++a)
                    for (std::size_t z = 0; z < n; ++z) {
                        const std::size_t len = m.dim(z, w) * m.dim(x, z);
                        if (!len) continue;
                        const std::size_t dst = tr.offset[w * n + z] + a * len;
                        const std::size_t src = a * tw.ambient + tw.offset[z];
                        inner.set_block(dst, 0, r.rows_range(src, len));
                        scattered.set_block(dst, 0, rel.rows_range(src, len));
                    }
                rels.push_back(std::move(scattered));
            }
            const Matrix all = rels.empty() ? Matrix(f, tr.ambient, 0) : hstack(rels, f, tr.ambient);
            const Quotient q = quotient_projection(f, tr.ambient, all);
            v.expect_equal("coassociativity" + at, q.projection * outer, q.projection * inner);
        }
    return v;
}

Coring coring_hC(const Entwining& e) {
    const LinCategory& d = e.cat;
    const Field& f = e.field();
    const std::size_t n = d.size(), k = e.k();
    const Matrix ik = eye(f, k);
    Coring c;
    Bimodule& m = c.carrier;
    m.objects = n;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) m.dims.push_back(d.hom(x, y) * k);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                m.left.push_back(kron(d.compose(x, y, z), ik));
                // right(x,y,z) : (f (x) c) (x) b with f : y -> z, b : x -> y.
                m.right.push_back(kron(d.compose(x, y, z), ik) * kron(eye(f, d.hom(y, z)), e.at(x, y)));
            }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const std::size_t h = d.hom(x, y);
            const TensorOverSub t = bimodule_tensor(d, m, m, x, y);
            Matrix delta(f, t.ambient, h * k);
            if (h && t.mdims[x] && t.ndims[x])
                delta.set_block(t.offset[x], 0,
                                kron(eye(f, h), kron(ik, kron(d.identity(x), ik)) * e.coalg.delta));
            c.comult.push_back(std::move(delta));
            c.counit.push_back(kron(eye(f, h), e.coalg.counit));
        }
    return c;
}

Coring coring_hEh(const LinCategory& d, const Subcategory& e) {
    const Field& f = d.field;
    const std::size_t n = d.size();
    const std::vector<TensorOverSub> ts = hom_tensors(d, e);
    auto t = [&](std::size_t x, std::size_t y) -> const TensorOverSub& { return ts[x * n + y]; };
    Coring c;
    Bimodule& m = c.carrier;
    m.objects = n;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) m.dims.push_back(t(x, y).dim());
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                std::vector<Matrix> per;
                for (std::size_t a = 0; a < d.hom(y, z); ++a)
                    per.push_back(proj(t(x, z)) * left_multiply(d, t(x, y), t(x, z), x, y, z, d.hom_unit(y, z, a)) *
                                  sect(t(x, y)));
                m.left.push_back(per.empty() ? Matrix(f, t(x, z).dim(), 0) : hstack(per, f, t(x, z).dim()));
                // right(x,y,z) : Q(y,z) (x) Hom(x,y) -> Q(x,z), column q * h + b.
                const std::size_t h = d.hom(x, y), dq = t(y, z).dim();
                Matrix r(f, t(x, z).dim(), dq * h);
                for (std::size_t b = 0; b < h; ++b) {
                    const Matrix rb = proj(t(x, z)) *
                                      right_multiply(d, t(y, z), t(x, z), x, y, z, d.hom_unit(x, y, b)) *
                                      sect(t(y, z));
                    for (std::size_t q = 0; q < dq; ++q) r.set_block(0, q * h + b, rb.col(q));
                }
                m.right.push_back(std::move(r));
            }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const TensorOverSub& txy = t(x, y);
            const TensorOverSub bt = bimodule_tensor(d, m, m, x, y);
            // u (x) v in block w |-> [u (x) id_w] (x) [id_w (x) v].
            const Matrix amb = blockwise(f, txy, bt, [&](std::size_t w) {
                const TensorOverSub& twy = t(w, y);
                const TensorOverSub& txw = t(x, w);
                const Matrix p1 = proj(twy).cols_range(twy.offset[w], block_size(twy, w)) *
                                  kron(eye(f, d.hom(w, y)), d.identity(w));
                const Matrix p2 = proj(txw).cols_range(txw.offset[w], block_size(txw, w)) *
                                  kron(d.identity(w), eye(f, d.hom(x, w)));
                return kron(p1, p2);
            });
            c.comult.push_back(amb * sect(txy));
            c.counit.push_back(tensor_multiplication(d, txy, x, y));
        }
    return c;
}

Verdict can_as_coring_iso(const LinCategory& d, const CanonicalMap& cm, const Coring& hc, const Coring& heh) {
    const Field& f = d.field;
    const std::size_t n = d.size();
    Verdict v;
    auto can = [&](std::size_t x, std::size_t y) -> const Matrix& { return cm.at(x, y).can; };
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) v.add("invertible at " + pair_name(d, x, y), cm.at(x, y).inverse.has_value());
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                const std::string at = " at " + d.objects[x] + "," + d.objects[y] + "," + d.objects[z];
                v.expect_equal("left linear" + at, can(x, z) * heh.carrier.left_at(x, y, z),
                               hc.carrier.left_at(x, y, z) * kron(eye(f, d.hom(y, z)), can(x, y)));
                v.expect_equal("right linear" + at, can(x, z) * heh.carrier.right_at(x, y, z),
                               hc.carrier.right_at(x, y, z) * kron(can(y, z), eye(f, d.hom(x, y))));
            }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const std::string at = " at " + pair_name(d, x, y);
            v.expect_equal("counit" + at, hc.counit[x * n + y] * can(x, y), heh.counit[x * n + y]);
            const TensorOverSub th = bimodule_tensor(d, hc.carrier, hc.carrier, x, y);
            const TensorOverSub te = bimodule_tensor(d, heh.carrier, heh.carrier, x, y);
            const Matrix amb = blockwise(f, te, th, [&](std::size_t z) { return kron(can(z, y), can(x, z)); });
            v.expect_equal("comultiplication" + at, proj(th) * hc.comult[x * n + y] * can(x, y),
                           proj(th) * amb * heh.comult[x * n + y]);
        }
    return v;
}

bool is_colinear_family(const GaloisData& g, const PhiFamily& phi) {
    const std::size_t n = g.cat.size();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const Matrix& p = phi.at(x, y, n);
            if (g.at(x, y) * p != kron(p, eye(g.field(), g.k())) * g.coalg.delta) return false;
        }
    return true;
}

Matrix convolution(const GaloisData& g, const Matrix& phi_yz, const Matrix& phi_xy, std::size_t x, std::size_t y,
                   std::size_t z) {
    return g.cat.compose(x, y, z) * kron(phi_yz, phi_xy) * g.coalg.delta;
}

namespace {

template <class Emit>
void inverse_conditions(const GaloisData& g, const PhiFamily& phi, const PhiFamily& inv, Emit&& emit) {
    const LinCategory& d = g.cat;
    const std::size_t n = d.size();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const Matrix& p = inv.at(x, y, n);
            emit("inverse colinear at " + pair_name(d, x, y), g.at(x, y) * p,
                 kron(p, eye(g.field(), g.k())) * g.coalg.delta);
            const Matrix unit = d.identity(y) * g.coalg.counit;
            emit("right inverse at " + pair_name(d, x, y), convolution(g, phi.at(x, y, n), inv.at(y, x, n), y, x, y),
                 unit);
            emit("left inverse at " + pair_name(d, x, y), convolution(g, inv.at(x, y, n), phi.at(y, x, n), y, x, y),
                 unit);
        }
}

PhiFamily phi_from_vector(const GaloisData& g, const Matrix& u) {
    PhiFamily p;
    std::size_t off = 0;
    for (std::size_t x = 0; x < g.cat.size(); ++x)
        for (std::size_t y = 0; y < g.cat.size(); ++y) {
            const std::size_t h = g.cat.hom(x, y);
            p.phi.push_back(u.rows_range(off, h * g.k()).reshaped(h, g.k()));
            off += h * g.k();
        }
    return p;
}

}  // namespace

Verdict verify_convolution_inverse(const GaloisData& g, const PhiFamily& phi, const PhiFamily& inv) {
    Verdict v;
    inverse_conditions(g, phi, inv, [&](const std::string& name, const Matrix& l, const Matrix& r) {
        v.expect_equal(name, l, r, &g.coalg.basis);
    });
    return v;
}

std::optional<PhiFamily> convolution_inverse(const GaloisData& g, const PhiFamily& phi) {
    if (!is_colinear_family(g, phi)) throw std::invalid_argument("phi is not colinear");
    std::size_t unknowns = 0;
    for (std::size_t x = 0; x < g.cat.size(); ++x)
        for (std::size_t y = 0; y < g.cat.size(); ++y) unknowns += g.cat.hom(x, y) * g.k();
    auto residual = [&](const Matrix& u) {
        Residual r(g.field());
        inverse_conditions(g, phi, phi_from_vector(g, u),
                           [&](const std::string&, const Matrix& l, const Matrix& rr) { r.add(l, rr); });
        return r.vector();
    };
    auto sol = solve_affine_family(g.field(), unknowns, residual);
    if (!sol) return std::nullopt;
    PhiFamily inv = phi_from_vector(g, sol->particular);
    if (!verify_convolution_inverse(g, phi, inv).ok()) return std::nullopt;
    return inv;
}

CanInverse can_inverse_via_phi(const GaloisData& g, const CanonicalMap& cm, const PhiFamily& phi,
                               const PhiFamily& inv) {
    const LinCategory& d = g.cat;
    const Field& f = g.field();
    const std::size_t n = d.size(), k = g.k();
    CanInverse out;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const std::size_t h = d.hom(x, y);
            const TensorOverSub& t = cm.at(x, y).tensor;
            Matrix m(f, t.dim(), h * k);
            for (std::size_t a = 0; a < h; ++a)
                for (std::size_t c = 0; c < k; ++c) {
                    Matrix col(f, t.ambient, 1);
                    for (std::size_t c1 = 0; c1 < k; ++c1)
                        for (std::size_t c2 = 0; c2 < k; ++c2) {
                            const Scalar& s = g.coalg.delta(c1 * k + c2, c);
                            if (s.is_zero()) continue;
                            const Matrix first = d.compose(y, x, y) * kron(d.hom_unit(x, y, a), inv.at(y, x, n).col(c1));
                            col += t.embed(y, first, phi.at(x, y, n).col(c2)) * s;
                        }
                    m.set_block(0, a * k + c, proj(t) * col);
                }
            const Matrix& can = cm.at(x, y).can;
            out.verdict.expect_equal("left inverse at " + pair_name(d, x, y), m * can, eye(f, t.dim()));
            out.verdict.expect_equal("right inverse at " + pair_name(d, x, y), can * m, eye(f, h * k));
            out.inverse.push_back(std::move(m));
        }
    return out;
}

TheoremReport theorem_4_11(const GaloisData& g, const PhiFamily& phi) {
    const LinCategory& d = g.cat;
    const std::size_t n = d.size();
    TheoremReport r;
    r.colinear = is_colinear_family(g, phi);
    if (r.colinear) r.inverse = convolution_inverse(g, phi);
    const Subcategory e = coinvariant_subcategory(g);
    const CanonicalMap cm = canonical_map(g, e);
    r.galois = cm.is_galois();
    r.entwining = r.galois && induced_entwining(g, cm).verdict.ok();
    if (!r.inverse) {
        r.witness = r.colinear ? "phi has no convolution inverse" : "phi is not colinear";
        return r;
    }
    r.coinvariance = true;
    for (std::size_t x = 0; x < n && r.coinvariance; ++x)
        for (std::size_t y = 0; y < n && r.coinvariance; ++y)
            for (std::size_t z = 0; z < n && r.coinvariance; ++z) {
                const Matrix m =
                    d.compose(z, x, y) * kron(eye(g.field(), d.hom(x, y)), r.inverse->at(z, x, n)) * g.at(x, y);
                for (std::size_t j = 0; j < d.hom(x, y); ++j)
                    if (!in_span(e.hom(z, y, n), m.col(j))) {
                        r.coinvariance = false;
                        r.witness = "f = " + d.hom_basis(x, y)[j] + " at " + d.objects[z];
                        break;
                    }
            }
    return r;
}

Decomposition decomposition_iso(const GaloisData& g, const Subcategory& e, const PhiFamily& phi, const PhiFamily& inv,
                                std::size_t x) {
    const LinCategory& d = g.cat;
    const Field& f = g.field();
    const std::size_t n = d.size(), k = g.k();
    const Matrix ik = eye(f, k);
    Decomposition out;
    std::vector<Matrix> coords;  // left inverses of the coinvariant bases
    for (std::size_t y = 0; y < n; ++y) {
        const Matrix& b = e.hom(x, y, n);
        const std::size_t h = d.hom(x, y), r = b.cols();
        const Matrix big = kron(b, ik);
        const Matrix raw = kron(d.compose(x, x, y) * kron(eye(f, h), inv.at(x, x, n)), ik) * kron(g.at(x, y), ik) *
                           g.at(x, y);
        Matrix eta(f, r * k, h);
        const bool lands = in_span(big, raw);
        out.verdict.add("lands in coinvariants at " + pair_name(d, x, y), lands);
        if (lands && h) eta = coordinates(big, raw);
        const Matrix zeta = d.compose(x, x, y) * kron(b, phi.at(x, x, n));
        out.verdict.expect_equal("zeta eta at " + pair_name(d, x, y), zeta * eta, eye(f, h));
        out.verdict.expect_equal("eta zeta at " + pair_name(d, x, y), eta * zeta, eye(f, r * k));
        out.verdict.expect_equal("colinear at " + pair_name(d, x, y), kron(eta, ik) * g.at(x, y),
                                 kron(eye(f, r), g.coalg.delta) * eta);
        out.eta.push_back(std::move(eta));
        out.zeta.push_back(zeta);
    }
    for (std::size_t y = 0; y < n; ++y)
        for (std::size_t y2 = 0; y2 < n; ++y2) {
            const Matrix& be = e.hom(y, y2, n);
            for (std::size_t i = 0; i < be.cols(); ++i) {
                const Matrix post = d.postcompose(x, y, y2, be.col(i));
                Matrix sub(f, e.hom(x, y2, n).cols(), e.hom(x, y, n).cols());
                if (!sub.empty()) sub = coordinates(e.hom(x, y2, n), post * e.hom(x, y, n));
                out.verdict.expect_equal("linear along " + pair_name(d, y, y2), out.eta[y2] * post,
                                         kron(sub, ik) * out.eta[y]);
            }
        }
    return out;
}

Verdict verify_grouplike(const LinCategory& d, const Subcategory& e, const Coring& c, const GroupLikeCollection& s) {
    const std::size_t n = d.size();
    const Bimodule& m = c.carrier;
    Verdict v;
    for (std::size_t x = 0; x < n; ++x) {
        const TensorOverSub t = bimodule_tensor(d, m, m, x, x);
        v.expect_equal("comultiplication at " + d.objects[x], proj(t) * c.comult[x * n + x] * s.s[x],
                       proj(t) * t.embed(x, s.s[x], s.s[x]));
        v.expect_equal("counit at " + d.objects[x], c.counit[x * n + x] * s.s[x], d.identity(x));
    }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const Matrix& b = e.hom(x, y, n);
            for (std::size_t i = 0; i < b.cols(); ++i)
                v.expect_equal("centrality at " + pair_name(d, x, y), m.left_at(x, x, y) * kron(b.col(i), s.s[x]),
                               m.right_at(x, y, y) * kron(s.s[y], b.col(i)));
        }
    return v;
}

GroupLikeCollection grouplike_hC(const GaloisData& g) {
    GroupLikeCollection s;
    for (std::size_t x = 0; x < g.cat.size(); ++x) s.s.push_back(g.at(x, x) * g.cat.identity(x));
    return s;
}

GroupLikeCollection grouplike_hEh(const LinCategory& d, const Subcategory& e) {
    const std::vector<TensorOverSub> ts = hom_tensors(d, e);
    GroupLikeCollection s;
    for (std::size_t x = 0; x < d.size(); ++x) {
        const TensorOverSub& t = ts[x * d.size() + x];
        s.s.push_back(proj(t) * t.embed(x, d.identity(x), d.identity(x)));
    }
    return s;
}

TensorOverSub comodule_tensor(const LinCategory& d, const RightModule& nm, const Bimodule& m, std::size_t x) {
    const std::size_t n = d.size();
    LeftModule l;
    for (std::size_t z = 0; z < n; ++z) l.dims.push_back(m.dim(x, z));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            l.act.push_back(m.left_at(x, a, b) * swap_matrix(d.field, m.dim(x, a), d.hom(a, b)));
    return tensor_over_sub(d, nm, l);
}

CoringComodule as_hC_comodule(const Entwining& e, const EntwinedModule& m) {
    const LinCategory& d = e.cat;
    const Field& f = e.field();
    const std::size_t n = d.size(), k = e.k();
    CoringComodule c{m.module, {}};
    for (std::size_t x = 0; x < n; ++x) {
        std::size_t ambient = 0, offset = 0;
        for (std::size_t z = 0; z < n; ++z) {
            if (z == x) offset = ambient;
            ambient += m.dim(z) * d.hom(x, z) * k;
        }
        Matrix co(f, ambient, m.dim(x));
        if (m.dim(x)) co.set_block(offset, 0, kron(eye(f, m.dim(x)), kron(d.identity(x), eye(f, k))) * m.rho[x]);
        c.coaction.push_back(std::move(co));
    }
    return c;
}

Coinvariants coring_coinvariants(const LinCategory& d, const Subcategory& e, const Coring& c,
                                 const GroupLikeCollection& s, const CoringComodule& nm) {
    const Field& f = d.field;
    const std::size_t n = d.size();
    if (!verify_grouplike(d, e, c, s).ok()) throw std::invalid_argument("collection is not group-like");
    Coinvariants out;
    for (std::size_t x = 0; x < n; ++x) {
        const TensorOverSub t = comodule_tensor(d, nm.module, c.carrier, x);
        const std::size_t dn = nm.module.dims[x];
        Matrix ins(f, t.ambient, dn);
        if (dn) ins.set_block(t.offset[x], 0, kron(eye(f, dn), s.s[x]));
        out.span.push_back(kernel_basis(proj(t) * (nm.coaction[x] - ins)));
    }
    const RightModule r = restrict_right(d, e, nm.module);
    out.module.dims.clear();
    for (std::size_t x = 0; x < n; ++x) out.module.dims.push_back(out.span[x].cols());
    for (std::size_t xp = 0; xp < n; ++xp)
        for (std::size_t x = 0; x < n; ++x) {
            const std::size_t re = e.hom(xp, x, n).cols(), dc = out.span[x].cols();
            Matrix act(f, out.span[xp].cols(), dc * re);
            bool closed = true;
            for (std::size_t i = 0; i < re; ++i) {
                const Matrix img = r.action(xp, x) * kron(out.span[x], Matrix::unit(f, re, i));
                for (std::size_t a = 0; a < dc; ++a) {
                    auto co = span_coordinates(out.span[xp], img.col(a));
                    if (!co) {
                        closed = false;
                        continue;
                    }
                    act.set_block(0, a * re + i, *co);
                }
            }
            out.verdict.add("action preserves coinvariants at " + pair_name(d, xp, x), closed);
            out.module.act.push_back(std::move(act));
        }
    out.verdict.merge(verify_right_module(subcategory_as_category(d, e), out.module), "module: ");
    return out;
}

Verdict verify_module_category(const ModuleCategory& m) {
    const LinCategory& d = m.cat;
    const Field& f = d.field;
    const HopfAlgebra& h = m.hopf;
    const std::size_t n = d.size(), dh = h.coalg.dim;
    const Matrix ih = eye(f, dh);
    Verdict v;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const std::size_t hxy = d.hom(x, y);
            const Matrix ix = eye(f, hxy);
            v.expect_equal("unit acts trivially at " + pair_name(d, x, y), m.at(x, y) * kron(h.unit, ix), ix);
            v.expect_equal("action associative at " + pair_name(d, x, y), m.at(x, y) * kron(h.mult, ix),
                           m.at(x, y) * kron(ih, m.at(x, y)));
        }
    for (std::size_t x = 0; x < n; ++x)
        v.expect_equal("identity invariant at " + d.objects[x], m.at(x, x) * kron(ih, d.identity(x)),
                       d.identity(x) * h.coalg.counit);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                const std::size_t hyz = d.hom(y, z), hxy = d.hom(x, y);
                const Matrix rhs = d.compose(x, y, z) * kron(m.at(y, z), m.at(x, y)) *
                                   kron({ih, swap_matrix(f, dh, hyz), eye(f, hxy)}) *
                                   kron({h.coalg.delta, eye(f, hyz), eye(f, hxy)});
                v.expect_equal("composition equivariant at " + d.objects[x] + "," + d.objects[y] + "," + d.objects[z],
                               m.at(x, z) * kron(ih, d.compose(x, y, z)), rhs);
            }
    return v;
}

ModuleCategory trivial_module_category(const LinCategory& d, const HopfAlgebra& h) {
    ModuleCategory m{d, h, {}};
    for (std::size_t x = 0; x < d.size(); ++x)
        for (std::size_t y = 0; y < d.size(); ++y) m.act.push_back(kron(h.coalg.counit, eye(d.field, d.hom(x, y))));
    return m;
}

namespace {

Matrix smash_compose(const ModuleCategory& m, std::size_t x, std::size_t y, std::size_t z) {
    const LinCategory& d = m.cat;
    const Field& f = d.field;
    const HopfAlgebra& h = m.hopf;
    const std::size_t dh = h.coalg.dim, hyz = d.hom(y, z), hxy = d.hom(x, y);
    const Matrix ih = eye(f, dh);
    return kron(d.compose(x, y, z), ih) * kron({eye(f, hyz), m.at(x, y), h.mult}) *
           kron({eye(f, hyz), ih, swap_matrix(f, dh, hxy), ih}) *
           kron({eye(f, hyz), h.coalg.delta, eye(f, hxy), ih});
}

}  // namespace

GaloisData smash_product(const ModuleCategory& m) {
    const Verdict laws = verify_module_category(m);
    if (!laws.ok()) throw std::invalid_argument("module category law fails: " + laws.first_failure()->name);
    const LinCategory& d = m.cat;
    const Field& f = d.field;
    const HopfAlgebra& h = m.hopf;
    const std::size_t n = d.size();
    GaloisData g;
    g.coalg = h.coalg;
    g.cat = LinCategory(f, d.objects);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            std::vector<std::string> names;
            for (const auto& a : d.hom_basis(x, y))
                for (const auto& b : h.coalg.basis) names.push_back(a + "#" + b);
            g.cat.set_hom(x, y, std::move(names));
        }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) g.cat.set_compose(x, y, z, smash_compose(m, x, y, z));
    for (std::size_t x = 0; x < n; ++x) g.cat.set_identity(x, kron(d.identity(x), h.unit));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) g.rho.push_back(kron(eye(f, d.hom(x, y)), h.coalg.delta));
    return g;
}

std::vector<Matrix> smash_can_inverse(const ModuleCategory& m, const GaloisData& smash, const CanonicalMap& cm) {
    const LinCategory& d = smash.cat;
    const Field& f = d.field;
    const HopfAlgebra& h = m.hopf;
    const std::size_t n = d.size(), k = h.coalg.dim;
    std::vector<Matrix> out;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const std::size_t hs = d.hom(x, y);
            const TensorOverSub& t = cm.at(x, y).tensor;
            Matrix inv(f, t.dim(), hs * k);
            for (std::size_t a = 0; a < hs; ++a)
                for (std::size_t c = 0; c < k; ++c) {
                    Matrix col(f, t.ambient, 1);
                    for (std::size_t c1 = 0; c1 < k; ++c1)
                        for (std::size_t c2 = 0; c2 < k; ++c2) {
                            const Scalar& s = h.coalg.delta(c1 * k + c2, c);
                            if (s.is_zero()) continue;
                            const Matrix left = kron(m.cat.identity(x), h.antipode.col(c1));
                            const Matrix first = d.compose(x, x, y) * kron(d.hom_unit(x, y, a), left);
                            const Matrix second = kron(m.cat.identity(x), Matrix::unit(f, k, c2));
                            col += t.embed(x, first, second) * s;
                        }
                    inv.set_block(0, a * k + c, proj(t) * col);
                }
            out.push_back(std::move(inv));
        }
    return out;
}

EntwinedModule tensor_with_h(const GaloisData& g, const Subcategory& e, const RightModule& m,
                             std::vector<TensorOverSub>* tensors) {
    const LinCategory& d = g.cat;
    const Field& f = g.field();
    const std::size_t n = d.size(), k = g.k();
    const LinCategory ec = subcategory_as_category(d, e);
    std::vector<TensorOverSub> ts;
    for (std::size_t y = 0; y < n; ++y) ts.push_back(tensor_over_sub(ec, m, restrict_left(d, e, representable_left(d, y))));
    EntwinedModule out;
    for (std::size_t y = 0; y < n; ++y) out.module.dims.push_back(ts[y].dim());
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const std::size_t h = d.hom(x, y), dq = ts[y].dim();
            Matrix act(f, ts[x].dim(), dq * h);
            for (std::size_t b = 0; b < h; ++b) {
                const Matrix mb = proj(ts[x]) *
                                  blockwise(f, ts[y], ts[x], [&](std::size_t z) {
                                      return kron(eye(f, m.dims[z]), d.precompose(x, y, z, d.hom_unit(x, y, b)));
                                  }) *
                                  sect(ts[y]);
                for (std::size_t q = 0; q < dq; ++q) act.set_block(0, q * h + b, mb.col(q));
            }
            out.module.act.push_back(std::move(act));
        }
    for (std::size_t y = 0; y < n; ++y) {
        Matrix amb(f, ts[y].ambient * k, ts[y].ambient);
        for (std::size_t z = 0; z < n; ++z)
            if (block_size(ts[y], z))
                amb.set_block(ts[y].offset[z] * k, ts[y].offset[z], kron(eye(f, m.dims[z]), g.at(y, z)));
        out.rho.push_back(kron(proj(ts[y]), eye(f, k)) * amb * sect(ts[y]));
    }
    if (tensors) *tensors = std::move(ts);
    return out;
}

EquivalenceReport equivalence_roundtrip(const GaloisData& g, const CanonicalMap& cm, const PhiFamily& phi,
                                        const std::vector<RightModule>& modules,
                                        const std::vector<EntwinedModule>& comodules) {
    const LinCategory& d = g.cat;
    const Field& f = g.field();
    const std::size_t n = d.size();
    const Subcategory& e = cm.sub;
    EquivalenceReport rep;
    Verdict& v = rep.verdict;
    v.add("convolution invertible", is_colinear_family(g, phi) && convolution_inverse(g, phi).has_value());
    const InducedEntwining ie = induced_entwining(g, cm);
    v.merge(ie.verdict, "induced: ");
    const Entwining& ent = ie.entwining;
    const Coring hc = coring_hC(ent);
    const GroupLikeCollection s = grouplike_hC(g);

    for (std::size_t i = 0; i < modules.size(); ++i) {
        const RightModule& m = modules[i];
        const std::string tag = "module " + std::to_string(i) + ": ";
        std::vector<TensorOverSub> ts;
        const EntwinedModule fm = tensor_with_h(g, e, m, &ts);
        v.merge(verify_entwined_module(ent, fm), tag + "entwined: ");
        const Coinvariants co = coring_coinvariants(d, e, hc, s, as_hC_comodule(ent, fm));
        v.merge(co.verdict, tag);
        std::vector<std::size_t> dims;
        std::vector<Matrix> unit;
        for (std::size_t x = 0; x < n; ++x) {
            dims.push_back(co.span[x].cols());
            const std::size_t dm = m.dims[x];
            Matrix iota(f, ts[x].dim(), dm);
            if (dm) iota = proj(ts[x]).cols_range(ts[x].offset[x], block_size(ts[x], x)) *
                           kron(eye(f, dm), d.identity(x));
            v.add(tag + "monomorphism at " + d.objects[x], rank(iota) == dm);
            const bool lands = in_span(co.span[x], iota);
            v.add(tag + "unit lands in coinvariants at " + d.objects[x], lands);
            Matrix j(f, co.span[x].cols(), dm);
            if (lands && dm) j = coordinates(co.span[x], iota);
            v.add(tag + "isomorphism onto coinvariants at " + d.objects[x], inverse(j).has_value());
            unit.push_back(std::move(j));
        }
        for (std::size_t xp = 0; xp < n; ++xp)
            for (std::size_t x = 0; x < n; ++x)
                v.expect_equal(tag + "unit linear along " + pair_name(d, xp, x), unit[xp] * m.action(xp, x),
                               co.module.action(xp, x) * kron(unit[x], eye(f, e.hom(xp, x, n).cols())));
        rep.module_dims.push_back(std::move(dims));
    }

    for (std::size_t i = 0; i < comodules.size(); ++i) {
        const EntwinedModule& nm = comodules[i];
        const std::string tag = "comodule " + std::to_string(i) + ": ";
        const Coinvariants co = coring_coinvariants(d, e, hc, s, as_hC_comodule(ent, nm));
        v.merge(co.verdict, tag);
        std::vector<std::size_t> dims;
        for (std::size_t x = 0; x < n; ++x) dims.push_back(co.span[x].cols());
        std::vector<TensorOverSub> ts;
        const EntwinedModule fn = tensor_with_h(g, e, co.module, &ts);
        ModuleMap zeta;
        for (std::size_t y = 0; y < n; ++y) {
            const Matrix amb = collect(f, ts[y], nm.dim(y), [&](std::size_t z) {
                return nm.module.action(y, z) * kron(co.span[z], eye(f, d.hom(y, z)));
            });
            if (ts[y].relations.cols()) v.add(tag + "evaluation balanced at " + d.objects[y], (amb * ts[y].relations).is_zero());
            zeta.comp.push_back(amb * sect(ts[y]));
            v.add(tag + "isomorphism at " + d.objects[y], inverse(zeta.comp.back()).has_value());
        }
        v.add(tag + "entwined map", is_entwined_map(ent, fn, nm, zeta));
        rep.comodule_dims.push_back(std::move(dims));
    }
    return rep;
}

}  // namespace ent
