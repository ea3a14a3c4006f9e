#include "entwine/frobsep.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace ent {

namespace {

Matrix eye(const Field& f, std::size_t n) { return Matrix::identity(f, n); }

std::string pair_name(const LinCategory& d, std::size_t x, std::size_t y) { return d.objects[x] + "," + d.objects[y]; }

std::optional<AffineSolution> solve_affine_family(const Field& f, std::size_t unknowns,
                                                  const std::function<Matrix(const Matrix&)>& residual) {
    const Matrix r0 = residual(Matrix(f, unknowns, 1));
    return solve_affine(assemble_linear(f, unknowns, residual), -r0);
}

std::size_t theta_unknowns(const Entwining& e) {
    std::size_t n = 0;
    for (std::size_t x = 0; x < e.cat.size(); ++x) n += e.cat.hom(x, x) * e.k() * e.k();
    return n;
}

ThetaFamily theta_from_vector(const Entwining& e, const Matrix& u) {
    ThetaFamily t;
    std::size_t off = 0;
    const std::size_t kk = e.k() * e.k();
    for (std::size_t x = 0; x < e.cat.size(); ++x) {
        const std::size_t h = e.cat.hom(x, x);
        t.theta.push_back(u.rows_range(off, h * kk).reshaped(h, kk));
        off += h * kk;
    }
    return t;
}

std::size_t eta_unknowns(const Entwining& e) {
    std::size_t n = 0;
    for (std::size_t y = 0; y < e.cat.size(); ++y) n += e.cat.hom(y, y) * e.k();
    return n;
}

EtaFamily eta_from_vector(const Entwining& e, const Matrix& u) {
    EtaFamily t;
    std::size_t off = 0;
    for (std::size_t y = 0; y < e.cat.size(); ++y) {
        const std::size_t m = e.cat.hom(y, y) * e.k();
        t.e.push_back(u.rows_range(off, m));
        off += m;
    }
    return t;
}

// Each identity as (name, lhs, rhs); shared by the verifier and the linear solver.
template <class Emit>
void theta_conditions(const Entwining& e, const ThetaFamily& t, Emit&& emit) {
    const LinCategory& d = e.cat;
    const Field& f = e.field();
    const std::size_t n = d.size(), k = e.k();
    const Matrix ik = eye(f, k);
    for (std::size_t y = 0; y < n; ++y)
        for (std::size_t x = 0; x < n; ++x) {
            const std::size_t h = d.hom(y, x);
            const Matrix& p = e.at(y, x);
            emit("morphism condition at " + pair_name(d, y, x), d.compose(y, x, x) * kron(t.theta[x], eye(f, h)),
                 d.compose(y, y, x) * kron(eye(f, h), t.theta[y]) * kron(p, ik) * kron(ik, p));
        }
    for (std::size_t x = 0; x < n; ++x)
        emit("coalgebra condition at " + d.objects[x], kron(t.theta[x], ik) * kron(ik, e.coalg.delta),
             e.at(x, x) * kron(ik, t.theta[x]) * kron(e.coalg.delta, ik));
}

template <class Emit>
void eta_conditions(const Entwining& e, const EtaFamily& eta, Emit&& emit) {
    const LinCategory& d = e.cat;
    const Field& f = e.field();
    const std::size_t n = d.size(), k = e.k();
    const Matrix ik = eye(f, k);
    for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z) {
            const std::size_t h = d.hom(y, z);
            emit("centrality at " + pair_name(d, y, z),
                 kron(d.compose(y, z, z), ik) * kron(eye(f, d.hom(z, z)), e.at(y, z)) * kron(eta.e[z], eye(f, h)),
                 kron(d.compose(y, y, z), ik) * kron(eye(f, h), eta.e[y]));
        }
}

Matrix theta_residual(const Entwining& e, const Matrix& u) {
    Residual r(e.field());
    theta_conditions(e, theta_from_vector(e, u), [&](const std::string&, const Matrix& a, const Matrix& b) { r.add(a, b); });
    return r.vector();
}

Matrix eta_residual(const Entwining& e, const Matrix& u) {
    Residual r(e.field());
    eta_conditions(e, eta_from_vector(e, u), [&](const std::string&, const Matrix& a, const Matrix& b) { r.add(a, b); });
    return r.vector();
}

void require_family(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

void check_theta_shapes(const Entwining& e, const ThetaFamily& t) {
    require_family(t.theta.size() == e.cat.size(), "theta must have one component per object");
    for (std::size_t x = 0; x < e.cat.size(); ++x)
        require_family(t.theta[x].rows() == e.cat.hom(x, x) && t.theta[x].cols() == e.k() * e.k(),
                       "theta component shape at " + e.cat.objects[x]);
}

void check_eta_shapes(const Entwining& e, const EtaFamily& eta) {
    require_family(eta.e.size() == e.cat.size(), "eta must have one component per object");
    for (std::size_t y = 0; y < e.cat.size(); ++y)
        require_family(eta.e[y].rows() == e.cat.hom(y, y) * e.k() && eta.e[y].cols() == 1,
                       "eta component shape at " + e.cat.objects[y]);
}

Matrix transposed_counit(const Entwining& e) { return e.coalg.counit.transpose(); }

}  // namespace

Verdict verify_theta(const Entwining& e, const ThetaFamily& t) {
    check_theta_shapes(e, t);
    Verdict v;
    theta_conditions(e, t, [&](const std::string& n, const Matrix& a, const Matrix& b) { v.expect_equal(n, a, b); });
    return v;
}

Verdict verify_eta(const Entwining& e, const EtaFamily& eta) {
    check_eta_shapes(e, eta);
    Verdict v;
    eta_conditions(e, eta, [&](const std::string& n, const Matrix& a, const Matrix& b) { v.expect_equal(n, a, b); });
    return v;
}

std::vector<ThetaFamily> solve_V1(const Entwining& e) {
    const Matrix b = solve_linear_family(e.field(), theta_unknowns(e), [&](const Matrix& u) { return theta_residual(e, u); });
    std::vector<ThetaFamily> out;
    for (std::size_t j = 0; j < b.cols(); ++j) out.push_back(theta_from_vector(e, b.col(j)));
    return out;
}

std::vector<EtaFamily> solve_W1(const Entwining& e) {
    const Matrix b = solve_linear_family(e.field(), eta_unknowns(e), [&](const Matrix& u) { return eta_residual(e, u); });
    std::vector<EtaFamily> out;
    for (std::size_t j = 0; j < b.cols(); ++j) out.push_back(eta_from_vector(e, b.col(j)));
    return out;
}

Matrix eta_component(const Entwining& e, const EtaFamily& eta, std::size_t x, std::size_t y) {
    return kron(e.cat.compose(x, x, y), eye(e.field(), e.k())) * kron(eye(e.field(), e.cat.hom(x, y)), eta.e[x]);
}

ThetaResult check_F_separable(const Entwining& e) {
    const Field& f = e.field();
    ThetaResult r;
    r.space_dim = solve_V1(e).size();
    auto residual = [&](const Matrix& u) {
        Residual res(f);
        res.add_zero(theta_residual(e, u));
        const ThetaFamily t = theta_from_vector(e, u);
        for (std::size_t x = 0; x < e.cat.size(); ++x) res.add(t.theta[x] * e.coalg.delta, e.cat.identity(x) * e.coalg.counit);
        return res.vector();
    };
    if (auto sol = solve_affine_family(f, theta_unknowns(e), residual)) {
        ThetaFamily t = theta_from_vector(e, sol->particular);
        r.verdict = verify_theta(e, t);
        for (std::size_t x = 0; x < e.cat.size(); ++x)
            r.verdict.expect_equal("separability at " + e.cat.objects[x], t.theta[x] * e.coalg.delta,
                                   e.cat.identity(x) * e.coalg.counit);
        r.witness = std::move(t);
    } else {
        r.verdict.add("separability", false, "no theta in the space satisfies theta Delta = eps id");
    }
    return r;
}

EtaResult check_G_separable(const Entwining& e) {
    const Field& f = e.field();
    EtaResult r;
    r.space_dim = solve_W1(e).size();
    auto separability = [&](const EtaFamily& eta, std::size_t y) {
        return kron(eye(f, e.cat.hom(y, y)), e.coalg.counit) * eta.e[y];
    };
    auto residual = [&](const Matrix& u) {
        Residual res(f);
        res.add_zero(eta_residual(e, u));
        const EtaFamily eta = eta_from_vector(e, u);
        for (std::size_t y = 0; y < e.cat.size(); ++y) res.add(separability(eta, y), e.cat.identity(y));
        return res.vector();
    };
    if (auto sol = solve_affine_family(f, eta_unknowns(e), residual)) {
        EtaFamily eta = eta_from_vector(e, sol->particular);
        r.verdict = verify_eta(e, eta);
        for (std::size_t y = 0; y < e.cat.size(); ++y)
            r.verdict.expect_equal("separability at " + e.cat.objects[y], separability(eta, y), e.cat.identity(y));
        r.witness = std::move(eta);
    } else {
        r.verdict.add("separability", false, "no eta in the space satisfies (id (x) eps) eta = id");
    }
    return r;
}

Evaluation upsilon_eval(const Entwining& e, const ThetaFamily& t, const EntwinedModule& m) {
    if (!verify_theta(e, t).ok()) throw std::invalid_argument("upsilon: theta does not satisfy the theta conditions");
    const Field& f = e.field();
    const Matrix ik = eye(f, e.k());
    Evaluation ev;
    for (std::size_t x = 0; x < e.cat.size(); ++x)
        ev.map.comp.push_back(m.module.action(x, x) * kron(eye(f, m.dim(x)), t.theta[x]) * kron(m.rho[x], ik));
    ev.is_morphism = is_entwined_map(e, module_tensor_C(e, m.module), m, ev.map);
    return ev;
}

Evaluation omega_eval(const Entwining& e, const EtaFamily& eta, const RightModule& n) {
    if (!verify_eta(e, eta).ok()) throw std::invalid_argument("omega: eta is not central");
    const Field& f = e.field();
    const Matrix ik = eye(f, e.k());
    Evaluation ev;
    for (std::size_t x = 0; x < e.cat.size(); ++x)
        ev.map.comp.push_back(kron(n.action(x, x), ik) * kron(eye(f, n.dims[x]), eta.e[x]));
    ev.is_morphism = is_module_map(e.cat, n, module_tensor_C(e, n).module, ev.map);
    return ev;
}

ThetaFamily theta_from_upsilon(const Entwining& e, const ThetaFamily& t) {
    const Field& f = e.field();
    const std::size_t k = e.k();
    ThetaFamily out;
    for (std::size_t x = 0; x < e.cat.size(); ++x) {
        const EntwinedModule m = module_tensor_C(e, representable_right(e.cat, x));
        const Matrix u = upsilon_eval(e, t, m).map.comp[x];
        out.theta.push_back(kron(eye(f, e.cat.hom(x, x)), e.coalg.counit) * u * kron(e.cat.identity(x), eye(f, k * k)));
    }
    return out;
}

bool unit_counit_on_entwined(const Entwining& e, const ThetaFamily& t, const EtaFamily& eta, const EntwinedModule& m) {
    const Evaluation u = upsilon_eval(e, t, m);
    const Evaluation w = omega_eval(e, eta, m.module);
    for (std::size_t x = 0; x < e.cat.size(); ++x)
        if (u.map.comp[x] * w.map.comp[x] != eye(e.field(), m.dim(x))) return false;
    return true;
}

bool unit_counit_on_module(const Entwining& e, const ThetaFamily& t, const EtaFamily& eta, const RightModule& n) {
    const Evaluation u = upsilon_eval(e, t, module_tensor_C(e, n));
    const Evaluation w = omega_eval(e, eta, n);
    const Matrix ik = eye(e.field(), e.k());
    for (std::size_t x = 0; x < e.cat.size(); ++x)
        if (u.map.comp[x] * kron(w.map.comp[x], ik) != eye(e.field(), n.dims[x] * e.k())) return false;
    return true;
}

EntwinedFunctor h_tensor_C(const Entwining& e) {
    EntwinedFunctor fn;
    for (std::size_t y = 0; y < e.cat.size(); ++y) fn.obj.push_back(module_tensor_C(e, representable_right(e.cat, y)));
    const Entwining* ep = &e;
    fn.morph = [ep](std::size_t x, std::size_t y, std::size_t z, const Matrix& g) {
        return kron(ep->cat.postcompose(x, y, z, g), eye(ep->field(), ep->k()));
    };
    return fn;
}

EntwinedFunctor build_Cstar_h(const Entwining& e) {
    EntwinedFunctor fn;
    const Comodule dual = dual_comodule_structure(e.coalg);
    for (std::size_t y = 0; y < e.cat.size(); ++y) fn.obj.push_back(comodule_tensor_hX(e, dual, y));
    const Entwining* ep = &e;
    fn.morph = [ep](std::size_t x, std::size_t y, std::size_t z, const Matrix& g) {
        const LinCategory& d = ep->cat;
        const Field& f = ep->field();
        const std::size_t k = ep->k(), hxy = d.hom(x, y), hxz = d.hom(x, z), hyz = d.hom(y, z);
        Matrix out(f, k * hxz, k * hxy);
        for (std::size_t i = 0; i < k; ++i) {
            // psi(d_i (x) g) = sum_{f', c} w[f' k + c] f' (x) d_c
            const Matrix w = ep->at(y, z) * kron(Matrix::unit(f, k, i), g);
            for (std::size_t a = 0; a < k; ++a)
                for (std::size_t fp = 0; fp < hyz; ++fp) {
                    const Scalar& coef = w(fp * k + a, 0);
                    if (coef.is_zero()) continue;
                    const Matrix post = d.postcompose(x, y, z, d.hom_unit(y, z, fp));
                    for (std::size_t b = 0; b < hxy; ++b)
                        for (std::size_t r = 0; r < hxz; ++r) out(i * hxz + r, a * hxy + b) += coef * post(r, b);
                }
        }
        return out;
    };
    return fn;
}

Verdict verify_functor(const Entwining& e, const EntwinedFunctor& fn) {
    const LinCategory& d = e.cat;
    const std::size_t n = d.size();
    Verdict v;
    for (std::size_t y = 0; y < n; ++y) v.merge(verify_entwined_module(e, fn.obj[y]), "object " + d.objects[y] + ": ");
    for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z)
            for (std::size_t j = 0; j < d.hom(y, z); ++j) {
                ModuleMap m;
                for (std::size_t x = 0; x < n; ++x) m.comp.push_back(fn.morph(x, y, z, d.hom_unit(y, z, j)));
                v.add("entwined map for " + d.hom_basis(y, z)[j], is_entwined_map(e, fn.obj[y], fn.obj[z], m));
            }
    return v;
}

namespace {

struct NatProblem {
    EntwinedFunctor src, dst;
    // morph matrices per (y, z, j, x)
    std::vector<std::vector<std::pair<Matrix, Matrix>>> morphs;  // index y*n+z, entries j*n+x
};

NatProblem nat_problem(const Entwining& e, NatKind kind) {
    NatProblem p;
    if (kind == NatKind::cstar_to_hc) {
        p.src = build_Cstar_h(e);
        p.dst = h_tensor_C(e);
    } else {
        p.src = h_tensor_C(e);
        p.dst = build_Cstar_h(e);
    }
    const LinCategory& d = e.cat;
    const std::size_t n = d.size();
    for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z) {
            std::vector<std::pair<Matrix, Matrix>> ms;
            for (std::size_t j = 0; j < d.hom(y, z); ++j)
                for (std::size_t x = 0; x < n; ++x) {
                    const Matrix g = d.hom_unit(y, z, j);
                    ms.emplace_back(p.src.morph(x, y, z, g), p.dst.morph(x, y, z, g));
                }
            p.morphs.push_back(std::move(ms));
        }
    return p;
}

std::size_t nat_unknowns(const Entwining& e) {
    std::size_t u = 0;
    for (std::size_t x = 0; x < e.cat.size(); ++x)
        for (std::size_t y = 0; y < e.cat.size(); ++y) u += (e.k() * e.cat.hom(x, y)) * (e.k() * e.cat.hom(x, y));
    return u;
}

NatCH nat_from_vector(const Entwining& e, NatKind kind, const Matrix& u) {
    NatCH phi{kind, {}};
    std::size_t off = 0;
    for (std::size_t x = 0; x < e.cat.size(); ++x)
        for (std::size_t y = 0; y < e.cat.size(); ++y) {
            const std::size_t s = e.k() * e.cat.hom(x, y);
            phi.comp.push_back(u.rows_range(off, s * s).reshaped(s, s));
            off += s * s;
        }
    return phi;
}

template <class Emit>
void nat_conditions(const Entwining& e, const NatProblem& p, const NatCH& phi, Emit&& emit) {
    const LinCategory& d = e.cat;
    const Field& f = e.field();
    const std::size_t n = d.size();
    const Matrix ik = eye(f, e.k());
    for (std::size_t y = 0; y < n; ++y) {
        const RightModule& sm = p.src.obj[y].module;
        const RightModule& dm = p.dst.obj[y].module;
        for (std::size_t x2 = 0; x2 < n; ++x2)
            for (std::size_t x = 0; x < n; ++x)
                emit("module map at " + d.objects[y] + " along " + pair_name(d, x2, x),
                     phi.at(x2, y, n) * sm.action(x2, x), dm.action(x2, x) * kron(phi.at(x, y, n), eye(f, d.hom(x2, x))));
        for (std::size_t x = 0; x < n; ++x)
            emit("colinear at " + pair_name(d, x, y), p.dst.obj[y].rho[x] * phi.at(x, y, n),
                 kron(phi.at(x, y, n), ik) * p.src.obj[y].rho[x]);
    }
    for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z) {
            const auto& ms = p.morphs[y * n + z];
            for (std::size_t j = 0; j < d.hom(y, z); ++j)
                for (std::size_t x = 0; x < n; ++x) {
                    const auto& [sf, df] = ms[j * n + x];
                    emit("natural along " + d.hom_basis(y, z)[j] + " at " + d.objects[x], phi.at(x, z, n) * sf,
                         df * phi.at(x, y, n));
                }
        }
}

}  // namespace

std::vector<NatCH> solve_nat(const Entwining& e, NatKind kind) {
    const NatProblem p = nat_problem(e, kind);
    const Matrix b = solve_linear_family(e.field(), nat_unknowns(e), [&](const Matrix& u) {
        Residual r(e.field());
        nat_conditions(e, p, nat_from_vector(e, kind, u), [&](const std::string&, const Matrix& a, const Matrix& c) { r.add(a, c); });
        return r.vector();
    });
    std::vector<NatCH> out;
    for (std::size_t j = 0; j < b.cols(); ++j) out.push_back(nat_from_vector(e, kind, b.col(j)));
    return out;
}

Verdict verify_nat(const Entwining& e, const NatCH& phi) {
    const std::size_t n = e.cat.size();
    require_family(phi.comp.size() == n * n, "natural transformation must have one component per pair");
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const std::size_t s = e.k() * e.cat.hom(x, y);
            require_family(phi.at(x, y, n).rows() == s && phi.at(x, y, n).cols() == s,
                           "component shape at " + pair_name(e.cat, x, y));
        }
    const NatProblem p = nat_problem(e, phi.kind);
    Verdict v;
    nat_conditions(e, p, phi, [&](const std::string& nm, const Matrix& a, const Matrix& b) { v.expect_equal(nm, a, b); });
    return v;
}

NatCH alpha_prime(const Entwining& e, const ThetaFamily& t) {
    const LinCategory& d = e.cat;
    const Field& f = e.field();
    const std::size_t n = d.size(), k = e.k();
    const Matrix ik = eye(f, k);
    NatCH ups{NatKind::hc_to_cstar, {}};
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const std::size_t h = d.hom(x, y);
            // block i: f (x) c |-> f_psi theta_x(d_i^psi (x) c)
            const Matrix base = d.compose(x, x, y) * kron(eye(f, h), t.theta[x]) * kron(e.at(x, y), ik);
            std::vector<Matrix> blocks;
            for (std::size_t i = 0; i < k; ++i) blocks.push_back(base * kron({Matrix::unit(f, k, i), eye(f, h), ik}));
            ups.comp.push_back(vstack(blocks, f, h * k));
        }
    return ups;
}

ThetaFamily beta_prime(const Entwining& e, const NatCH& ups) {
    const LinCategory& d = e.cat;
    const Field& f = e.field();
    const std::size_t n = d.size(), k = e.k();
    ThetaFamily t;
    for (std::size_t x = 0; x < n; ++x) {
        const std::size_t h = d.hom(x, x);
        Matrix th(f, h, k * k);
        for (std::size_t dd = 0; dd < k; ++dd) {
            const Matrix v = ups.at(x, x, n) * kron(d.identity(x), Matrix::unit(f, k, dd));
            for (std::size_t c = 0; c < k; ++c) th.set_block(0, c * k + dd, v.rows_range(c * h, h));
        }
        t.theta.push_back(std::move(th));
    }
    return t;
}

NatCH gamma_prime(const Entwining& e, const EtaFamily& eta) {
    const LinCategory& d = e.cat;
    const Field& f = e.field();
    const std::size_t n = d.size(), k = e.k();
    const Matrix ik = eye(f, k);
    NatCH phi{NatKind::cstar_to_hc, {}};
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const std::size_t h = d.hom(x, y), hyy = d.hom(y, y);
            const Matrix split = kron(eye(f, hyy), e.coalg.delta) * eta.e[y];
            const Matrix act = kron(d.compose(x, y, y), ik) * kron(eye(f, hyy), e.at(x, y));
            Matrix out(f, h * k, k * h);
            for (std::size_t i = 0; i < k; ++i) {
                const Matrix ui = kron({eye(f, hyy), ik, dual_basis_vector(e.coalg, i)}) * split;
                for (std::size_t b = 0; b < h; ++b) out.set_block(0, i * h + b, act * kron(ui, d.hom_unit(x, y, b)));
            }
            phi.comp.push_back(std::move(out));
        }
    return phi;
}

EtaFamily delta_prime(const Entwining& e, const NatCH& phi) {
    const std::size_t n = e.cat.size();
    EtaFamily eta;
    for (std::size_t y = 0; y < n; ++y) eta.e.push_back(phi.at(y, y, n) * kron(transposed_counit(e), e.cat.identity(y)));
    return eta;
}

Verdict verify_frobenius_identities(const Entwining& e, const ThetaFamily& t, const EtaFamily& eta) {
    const LinCategory& d = e.cat;
    const Field& f = e.field();
    const std::size_t n = d.size(), k = e.k();
    const Matrix ik = eye(f, k);
    Verdict v;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const std::size_t h = d.hom(x, y);
            const Matrix et = eta_component(e, eta, x, y);
            const Matrix pre = d.compose(x, x, y) * kron(eye(f, h), t.theta[x]);
            v.expect_equal("frobenius counit identity at " + pair_name(d, x, y), kron(eye(f, h), e.coalg.counit),
                           pre * kron(et, ik));
            v.expect_equal("frobenius psi identity at " + pair_name(d, x, y), kron(e.coalg.counit, eye(f, h)),
                           pre * kron(e.at(x, y), ik) * kron(ik, et));
        }
    return v;
}

namespace {

std::optional<NatCH> componentwise_inverse(const NatCH& phi) {
    NatCH inv{phi.kind == NatKind::cstar_to_hc ? NatKind::hc_to_cstar : NatKind::cstar_to_hc, {}};
    for (const Matrix& m : phi.comp) {
        if (m.rows() == 0) {
            inv.comp.push_back(m);
            continue;
        }
        auto i = inverse(m);
        if (!i) return std::nullopt;
        inv.comp.push_back(std::move(*i));
    }
    return inv;
}

NatCH combine(const Field& f, const std::vector<NatCH>& basis, const std::vector<long>& coeffs, const NatCH& zero) {
    NatCH out = zero;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (coeffs[i] == 0) continue;
        const Scalar s(f, coeffs[i]);
        for (std::size_t c = 0; c < out.comp.size(); ++c) out.comp[c] += basis[i].comp[c] * s;
    }
    return out;
}

constexpr std::size_t grid_limit = 4096;

}  // namespace

FrobeniusResult check_frobenius(const Entwining& e, std::uint64_t seed, std::size_t trials) {
    const Field& f = e.field();
    const std::size_t n = e.cat.size(), k = e.k();
    FrobeniusResult r;
    r.seed = seed;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) r.degree_bound += k * e.cat.hom(x, y);
    const std::vector<NatCH> basis = solve_nat(e, NatKind::cstar_to_hc);
    r.nat_dim = basis.size();
    NatCH zero{NatKind::cstar_to_hc, {}};
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const std::size_t s = k * e.cat.hom(x, y);
            zero.comp.emplace_back(f, s, s);
        }

    const std::size_t dim = r.nat_dim, deg = r.degree_bound;
    // det of the block diagonal is a polynomial of degree <= D in the coordinates; a grid with
    // more than D values per coordinate (or all of GF(p)) cannot miss a non-root.
    std::size_t side = deg + 1;
    bool whole_field = false;
    if (!f.is_rational() && f.modulus() <= side) {
        side = f.modulus();
        whole_field = true;
    }
    long double points = std::pow(static_cast<long double>(side), static_cast<long double>(dim));
    std::optional<NatCH> found;
    auto try_point = [&](const std::vector<long>& c) {
        ++r.evaluations;
        NatCH phi = combine(f, basis, c, zero);
        if (auto inv = componentwise_inverse(phi)) {
            found = std::move(phi);
            r.phi_inverse = std::move(*inv);
            return true;
        }
        return false;
    };

    if (dim == 0 || points <= grid_limit || dim <= 2) {
        r.method = dim == 0 ? "zero space" : (whole_field ? "exhaustive" : "grid");
        r.deterministic = true;
        std::vector<long> c(dim, 0);
        for (;;) {
            if (try_point(c)) break;
            std::size_t i = 0;
            while (i < dim && ++c[i] == static_cast<long>(side)) c[i++] = 0;
            if (i == dim) break;
        }
    } else {
        r.method = "random";
        r.deterministic = false;
        r.trials = trials;
        std::mt19937_64 rng(seed);
        long range, shift;
        if (f.is_rational()) {
            range = static_cast<long>(128 * deg + 1);
            shift = static_cast<long>(64 * deg);
        } else {
            range = static_cast<long>(std::min<std::uint64_t>(f.modulus(), 1ULL << 62));
            shift = 0;
        }
        const long double miss = std::min<long double>(1, static_cast<long double>(deg) / range);
        r.error_bound = std::pow(miss, static_cast<long double>(trials));
        for (std::size_t t = 0; t < trials; ++t) {
            std::vector<long> c(dim);
            for (auto& v : c) v = static_cast<long>(rng() % static_cast<std::uint64_t>(range)) - shift;
            if (try_point(c)) break;
        }
        if (found) r.error_bound = 0;
    }

    if (!found) {
        r.frobenius = false;
        r.verdict.add("invertible natural transformation", false,
                      r.deterministic ? "no invertible element in Nat(C* (x) h, h (x) C)"
                                      : "no invertible element found among the sampled points");
        return r;
    }
    r.verdict.add("invertible natural transformation", true);
    r.verdict.merge(verify_nat(e, *found), "phi ");
    r.verdict.merge(verify_nat(e, *r.phi_inverse), "phi inverse ");
    ThetaFamily theta = beta_prime(e, *r.phi_inverse);
    EtaFamily eta = delta_prime(e, *found);
    r.verdict.merge(verify_theta(e, theta), "theta ");
    r.verdict.merge(verify_eta(e, eta), "eta ");
    if (r.verdict.ok()) r.verdict.merge(verify_frobenius_identities(e, theta, eta));
    r.frobenius = r.verdict.ok();
    r.phi = std::move(found);
    r.theta = std::move(theta);
    r.eta = std::move(eta);
    return r;
}

}  // namespace ent
