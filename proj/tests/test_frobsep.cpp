#include "doctest.h"

#include "entwine/fixtures.hpp"
#include "entwine/frobsep.hpp"
#include "gf_oracle.hpp"

using namespace ent;

namespace {

const Field Q = Field::rationals();

Entwining dpt_cg2(const Field& f) { return swap_entwining(fixtures::point(f), fixtures::cg2(f)); }
Entwining da2_cg2(const Field& f) { return swap_entwining(fixtures::arrow(f), fixtures::cg2(f)); }

std::vector<Entwining> small_instances(const Field& f) {
    return {swap_entwining(fixtures::point(f), fixtures::c1(f)), dpt_cg2(f), da2_cg2(f),
            swap_entwining(fixtures::dh2_category(f), fixtures::cg2(f)), fixtures::dh2(f)};
}

bool same_theta(const ThetaFamily& a, const ThetaFamily& b) { return a.theta == b.theta; }

}  // namespace

TEST_CASE("V1 and W1 on the point") {
    Entwining c1 = swap_entwining(fixtures::point(Q), fixtures::c1(Q));
    CHECK(solve_V1(c1).size() == 1);
    CHECK(solve_W1(c1).size() == 1);
    Entwining e = dpt_cg2(Q);
    auto v1 = solve_V1(e);
    REQUIRE(v1.size() == 2);
    for (const auto& t : v1) {
        // Supported on g_i (x) g_i only.
        CHECK(t.theta[0](0, 1).is_zero());
        CHECK(t.theta[0](0, 2).is_zero());
        CHECK(verify_theta(e, t).ok());
    }
    CHECK(solve_W1(e).size() == 2);
}

TEST_CASE("F and G separability witnesses") {
    for (const Field& f : {Q, Field::prime(2), Field::prime(3)}) {
        Entwining e = dpt_cg2(f);
        ThetaResult fr = check_F_separable(e);
        REQUIRE(fr.witness);
        CHECK(fr.verdict.ok());
        CHECK(fr.witness->theta[0] == Matrix::from_ints(f, 1, 4, {1, 0, 0, 1}));
        EtaResult gr = check_G_separable(e);
        REQUIRE(gr.witness);
        CHECK(gr.verdict.ok());
        CHECK(e.coalg.counit * gr.witness->e[0] == Matrix::from_ints(f, 1, 1, {1}));
    }
}

TEST_CASE("witnesses re-verify on every small instance") {
    for (const Field& f : {Q, Field::prime(3)})
        for (const Entwining& e : small_instances(f)) {
            REQUIRE(verify_entwining(e).ok());
            ThetaResult fr = check_F_separable(e);
            if (fr.witness) CHECK(fr.verdict.ok());
            EtaResult gr = check_G_separable(e);
            if (gr.witness) CHECK(gr.verdict.ok());
            for (const auto& eta : solve_W1(e)) CHECK(verify_eta(e, eta).ok());
        }
}

TEST_CASE("upsilon and omega evaluators") {
    Entwining e = dpt_cg2(Q);
    for (const auto& t : solve_V1(e)) {
        const EntwinedModule m = module_tensor_C(e, representable_right(e.cat, 0));
        Evaluation u = upsilon_eval(e, t, m);
        CHECK(u.is_morphism);
        CHECK(u.map.comp[0].rows() == 2);
        CHECK(u.map.comp[0].cols() == 4);
        CHECK(same_theta(theta_from_upsilon(e, t), t));
    }
    for (const Field& f : {Q, Field::prime(3)})
        for (const Entwining& x : small_instances(f)) {
            for (const auto& t : solve_V1(x)) {
                CHECK(same_theta(theta_from_upsilon(x, t), t));
                for (std::size_t y = 0; y < x.cat.size(); ++y) {
                    CHECK(upsilon_eval(x, t, module_tensor_C(x, representable_right(x.cat, y))).is_morphism);
                    CHECK(upsilon_eval(x, t, comodule_tensor_hX(x, regular_comodule(x.coalg), y)).is_morphism);
                }
            }
            for (const auto& eta : solve_W1(x))
                for (std::size_t y = 0; y < x.cat.size(); ++y) {
                    Evaluation w = omega_eval(x, eta, representable_right(x.cat, y));
                    CHECK(w.is_morphism);
                    for (std::size_t z = 0; z < x.cat.size(); ++z) CHECK(w.map.comp[z] == eta_component(x, eta, z, y));
                    // omega(N (x) h_Y) = id_N (x) omega(h_Y) on the regular comodule.
                    const Comodule reg = regular_comodule(x.coalg);
                    Evaluation wn = omega_eval(x, eta, comodule_tensor_hX(x, reg, y).module);
                    CHECK(wn.is_morphism);
                    for (std::size_t z = 0; z < x.cat.size(); ++z)
                        CHECK(wn.map.comp[z] == kron(Matrix::identity(f, reg.dim), w.map.comp[z]));
                }
        }
    ThetaFamily bad{{Matrix::from_ints(Q, 1, 4, {0, 1, 0, 0})}};
    CHECK_THROWS_AS(upsilon_eval(e, bad, module_tensor_C(e, representable_right(e.cat, 0))), std::invalid_argument);
}

TEST_CASE("C* (x) h is a functor into entwined modules") {
    for (const Field& f : {Q, Field::prime(2), Field::prime(3)})
        for (const Entwining& e : small_instances(f)) {
            CHECK(verify_functor(e, build_Cstar_h(e)).ok());
            CHECK(verify_functor(e, h_tensor_C(e)).ok());
        }
    Entwining e = dpt_cg2(Q);
    EntwinedFunctor cs = build_Cstar_h(e);
    CHECK(cs.obj[0].dim(0) == 2);
    // rho(g_i* (x) e) = g_i* (x) e (x) g_i
    CHECK(cs.obj[0].rho[0] == Matrix::from_ints(Q, 4, 2, {1, 0, 0, 0, 0, 0, 0, 1}));
}

TEST_CASE("translation maps are mutually inverse") {
    for (const Field& f : {Q, Field::prime(2), Field::prime(3)})
        for (const Entwining& e : small_instances(f)) {
            const auto v1 = solve_V1(e);
            const auto v2 = solve_nat(e, NatKind::hc_to_cstar);
            CHECK(v1.size() == v2.size());
            for (const auto& t : v1) {
                NatCH ups = alpha_prime(e, t);
                CHECK(verify_nat(e, ups).ok());
                CHECK(same_theta(beta_prime(e, ups), t));
            }
            for (const auto& ups : v2) CHECK(alpha_prime(e, beta_prime(e, ups)).comp == ups.comp);
            const auto w1 = solve_W1(e);
            const auto w2 = solve_nat(e, NatKind::cstar_to_hc);
            CHECK(w1.size() == w2.size());
            for (const auto& eta : w1) {
                NatCH phi = gamma_prime(e, eta);
                CHECK(verify_nat(e, phi).ok());
                CHECK(delta_prime(e, phi).e == eta.e);
            }
            for (const auto& phi : w2) CHECK(gamma_prime(e, delta_prime(e, phi)).comp == phi.comp);
        }
}

TEST_CASE("gamma prime on the point with e = id (x) g0") {
    Entwining e = dpt_cg2(Q);
    EtaFamily eta{{Matrix::from_ints(Q, 2, 1, {1, 0})}};
    NatCH phi = gamma_prime(e, eta);
    // Phi(c* (x) f) = f (x) c*(g0) g0
    CHECK(phi.comp[0] == Matrix::from_ints(Q, 2, 2, {1, 0, 0, 0}));
}

TEST_CASE("Frobenius on the point") {
    for (const Field& f : {Q, Field::prime(2), Field::prime(3)}) {
        Entwining c1 = swap_entwining(fixtures::point(f), fixtures::c1(f));
        FrobeniusResult r1 = check_frobenius(c1);
        CHECK(r1.frobenius);
        CHECK(r1.deterministic);
        Entwining e = dpt_cg2(f);
        FrobeniusResult r = check_frobenius(e);
        REQUIRE(r.frobenius);
        CHECK(r.verdict.ok());
        REQUIRE(r.theta);
        REQUIRE(r.eta);
        CHECK(verify_frobenius_identities(e, *r.theta, *r.eta).ok());
        // x_j t_j = 1 with theta = diag(t0, t1), e = id (x) (x0 g0 + x1 g1)
        const Matrix& t = r.theta->theta[0];
        const Matrix& x = r.eta->e[0];
        CHECK((t(0, 0) * x(0, 0)).is_one());
        CHECK((t(0, 3) * x(1, 0)).is_one());
        const RightModule h = representable_right(e.cat, 0);
        CHECK(unit_counit_on_entwined(e, *r.theta, *r.eta, module_tensor_C(e, h)));
        CHECK(unit_counit_on_entwined(e, *r.theta, *r.eta, comodule_tensor_hX(e, regular_comodule(e.coalg), 0)));
        CHECK(unit_counit_on_module(e, *r.theta, *r.eta, h));
        CHECK(unit_counit_on_module(e, *r.theta, *r.eta, comodule_tensor_hX(e, regular_comodule(e.coalg), 0).module));
    }
}

TEST_CASE("Frobenius search is reproducible") {
    Entwining e = fixtures::dh2(Q);
    FrobeniusResult a = check_frobenius(e, 7, 16), b = check_frobenius(e, 7, 16);
    CHECK(a.frobenius == b.frobenius);
    CHECK(a.evaluations == b.evaluations);
    CHECK(a.method == b.method);
    if (a.frobenius) CHECK(a.phi->comp == b.phi->comp);
}

TEST_CASE("vanishing spaces give certified negative answers") {
    for (const Field& f : {Field::prime(2), Field::prime(3), Q}) {
        Entwining v = fixtures::v1_zero(f);
        REQUIRE(verify_entwining(v).ok());
        CHECK(solve_V1(v).empty());
        CHECK(!v.coalg.counit.is_zero());
        ThetaResult fr = check_F_separable(v);
        CHECK(!fr.witness);
        CHECK(!fr.verdict.ok());

        Entwining w = fixtures::w1_zero(f);
        REQUIRE(verify_entwining(w).ok());
        CHECK(solve_W1(w).empty());
        CHECK(!check_G_separable(w).witness);
        CHECK(solve_nat(w, NatKind::cstar_to_hc).empty());
        FrobeniusResult r = check_frobenius(w);
        CHECK(!r.frobenius);
        CHECK(r.deterministic);
        CHECK(r.method == "zero space");
    }
}

TEST_CASE("solver dimensions match exhaustive enumeration") {
    for (const Field& f : {Field::prime(2), Field::prime(3)})
        for (const auto& [name, e] : fixtures::catalogue(f)) {
            INFO(name << " over " << f.name());
            REQUIRE(verify_entwining(e).ok());
            if (auto c = oracle::v1_dim(e)) CHECK(c->dim == solve_V1(e).size());
            if (auto c = oracle::w1_dim(e)) CHECK(c->dim == solve_W1(e).size());
            if (auto c = oracle::nat_dim(e)) CHECK(c->dim == solve_nat(e, NatKind::cstar_to_hc).size());
        }
}

TEST_CASE("oracle counts solutions on the point") {
    Entwining e = swap_entwining(fixtures::point(Field::prime(2)), fixtures::cg2(Field::prime(2)));
    auto good = oracle::v1_dim(e);
    REQUIRE(good);
    CHECK(good->dim == 2);
    CHECK(good->solutions == 4);
}
