#include "doctest.h"

#include "entwine/entwine.hpp"
#include "entwine/fixtures.hpp"

using namespace ent;

namespace {

const Field Q = Field::rationals();

std::vector<Entwining> swap_fixtures(const Field& f) {
    std::vector<Entwining> out;
    for (const LinCategory& d : {fixtures::point(f), fixtures::arrow(f), fixtures::dh2_category(f)})
        for (const Coalgebra& c : {fixtures::c1(f), fixtures::cg2(f)}) out.push_back(swap_entwining(d, c));
    return out;
}

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

}  // namespace

TEST_CASE("swap entwinings verify") {
    for (const Field& f : {Q, Field::prime(2), Field::prime(3)})
        for (const Entwining& e : swap_fixtures(f)) CHECK(verify_entwining(e).ok());
}

TEST_CASE("scaled swap fails at the identity axiom") {
    Entwining e = swap_entwining(fixtures::point(Q), fixtures::cg2(Q));
    e.at(0, 0) *= Scalar(Q, 2);
    Verdict v = verify_entwining(e);
    REQUIRE(!v.ok());
    CHECK(starts_with(v.first_failure()->name, "identity"));
    Entwining bad = e;
    bad.psi.pop_back();
    CHECK_THROWS_AS(verify_entwining(bad), std::invalid_argument);
}

TEST_CASE("Doi-Hopf entwining on the group algebra") {
    for (const Field& f : {Q, Field::prime(3)}) {
        Entwining e = fixtures::dh2(f);
        CHECK(verify_entwining(e).ok());
        // Columns c*2+f, rows f*2+c with basis order 1, g.
        CHECK(e.at(0, 0) == Matrix::from_ints(f, 4, 4, {1, 0, 0, 0,  //
                                                        0, 0, 1, 0,  //
                                                        0, 0, 0, 1,  //
                                                        0, 1, 0, 0}));
    }
}

TEST_CASE("trivial Hopf algebra gives the swap") {
    HopfAlgebra k = cyclic_group_algebra(Q, 1);
    for (const LinCategory& d : {fixtures::point(Q), fixtures::arrow(Q)}) {
        CoHCategory coh{d, k, {}};
        for (std::size_t x = 0; x < d.size(); ++x)
            for (std::size_t y = 0; y < d.size(); ++y) coh.coaction.push_back(Matrix::identity(Q, d.hom(x, y)));
        CHECK(verify_coh_category(coh).ok());
        Coalgebra c = fixtures::cg2(Q);
        Entwining e = doi_hopf_entwining(coh, ModuleCoalgebra{c, Matrix::identity(Q, 2)});
        CHECK(e.psi == swap_entwining(d, c).psi);
    }
}

TEST_CASE("module coalgebra violations are reported") {
    HopfAlgebra h = fixtures::h2(Q);
    ModuleCoalgebra c = regular_module_coalgebra(h);
    c.action = Matrix(Q, 2, 4);
    CHECK_THROWS_AS(doi_hopf_entwining(fixtures::dh2_coh(Q), c), std::invalid_argument);
    CHECK(!verify_module_coalgebra(h, c).ok());
}

TEST_CASE("entwined modules") {
    Entwining e1 = swap_entwining(fixtures::arrow(Q), fixtures::c1(Q));
    RightModule m = representable_right(e1.cat, 1);
    EntwinedModule triv{m, {Matrix::identity(Q, 1), Matrix::identity(Q, 1)}};
    CHECK(verify_entwined_module(e1, triv).ok());

    Entwining e = fixtures::dh2(Q);
    EntwinedModule h{representable_right(e.cat, 0), {e.coalg.delta}};
    CHECK(verify_entwined_module(e, h).ok());
    EntwinedModule t{representable_right(e.cat, 0), {kron(Matrix::identity(Q, 2), Matrix::unit(Q, 2, 0))}};
    Verdict v = verify_entwined_module(e, t);
    REQUIRE(!v.ok());
    CHECK(starts_with(v.first_failure()->name, "compatibility"));
}

TEST_CASE("module tensor C") {
    Entwining e = swap_entwining(fixtures::point(Q), fixtures::c1(Q));
    EntwinedModule m = module_tensor_C(e, representable_right(e.cat, 0));
    CHECK(m.dim(0) == 1);
    CHECK(m.rho[0] == Matrix::identity(Q, 1));
    CHECK(verify_entwined_module(e, m).ok());

    Entwining d = fixtures::dh2(Q);
    EntwinedModule md = module_tensor_C(d, representable_right(d.cat, 0));
    CHECK(md.dim(0) == 4);
    CHECK(verify_entwined_module(d, md).ok());

    for (const Entwining& s : swap_fixtures(Q))
        for (std::size_t y = 0; y < s.cat.size(); ++y)
            CHECK(verify_entwined_module(s, module_tensor_C(s, representable_right(s.cat, y))).ok());

    Entwining a = swap_entwining(fixtures::arrow(Q), fixtures::cg2(Q));
    ModuleMap yon = yoneda_map(a.cat, 0, 1, a.cat.hom_unit(0, 1, 0));
    CHECK(is_entwined_map(a, module_tensor_C(a, representable_right(a.cat, 0)),
                          module_tensor_C(a, representable_right(a.cat, 1)), module_tensor_C_map(a, yon)));
}

TEST_CASE("comodule tensor representable") {
    Entwining e1 = swap_entwining(fixtures::arrow(Q), fixtures::c1(Q));
    Comodule t = trivial_comodule(e1.coalg, 1, Matrix::unit(Q, 1, 0));
    EntwinedModule m = comodule_tensor_hX(e1, t, 0);
    CHECK(m.module.dims == representable_right(e1.cat, 0).dims);
    CHECK(verify_entwined_module(e1, m).ok());

    Entwining e = swap_entwining(fixtures::point(Q), fixtures::cg2(Q));
    EntwinedModule r = comodule_tensor_hX(e, regular_comodule(e.coalg), 0);
    CHECK(r.rho[0] == Matrix::from_ints(Q, 4, 2, {1, 0, 0, 0, 0, 0, 0, 1}));
    CHECK(verify_entwined_module(e, r).ok());

    Entwining d = fixtures::dh2(Q);
    EntwinedModule rd = comodule_tensor_hX(d, regular_comodule(d.coalg), 0);
    CHECK(rd.dim(0) == 4);
    CHECK(verify_entwined_module(d, rd).ok());
    for (const Entwining& s : swap_fixtures(Field::prime(3)))
        for (std::size_t x = 0; x < s.cat.size(); ++x)
            CHECK(verify_entwined_module(s, comodule_tensor_hX(s, regular_comodule(s.coalg), x)).ok());
}

TEST_CASE("psi as a morphism") {
    Entwining e = swap_entwining(fixtures::point(Q), fixtures::cg2(Q));
    PsiMorphism p = psi_morphism(e, 0);
    CHECK(p.module_map);
    CHECK(p.colinear);
    CHECK(p.map.comp[0] == swap_matrix(Q, 2, 1));

    PsiMorphism d = psi_morphism(fixtures::dh2(Q), 0);
    CHECK(d.module_map);
    CHECK(d.colinear);

    // psi(g0 (x) e) = e (x) (2 g0 - g1) keeps the counit but breaks comultiplication.
    Entwining bad = e;
    bad.at(0, 0) = Matrix::from_ints(Q, 2, 2, {2, 0, -1, 1});
    Verdict v = verify_entwining(bad);
    CHECK(v.checks[1].ok);
    CHECK(!v.checks[2].ok);
    CHECK(!psi_morphism(bad, 0).colinear);
}

TEST_CASE("generator morphisms") {
    Entwining e = fixtures::dh2(Q);
    EntwinedModule h{representable_right(e.cat, 0), {e.coalg.delta}};
    GeneratorMorphism z = generator_morphism(e, h, 0, Matrix(Q, 2, 1));
    CHECK(z.span.cols() == 0);
    CHECK(z.map.comp[0].is_zero());
    CHECK(z.is_morphism);

    GeneratorMorphism one = generator_morphism(e, h, 0, Matrix::unit(Q, 2, 0));
    CHECK(one.span.cols() == 1);
    CHECK(one.is_morphism);
    CHECK(one.hits_element);

    GeneratorMorphism g = generator_morphism(e, h, 0, Matrix::unit(Q, 2, 1));
    CHECK(g.span.cols() == 1);
    CHECK(g.is_morphism);
    CHECK(g.hits_element);
    // eta(g (x) f) = g f: the image of g (x) g is 1.
    CHECK(g.map.comp[0] * Matrix::unit(Q, 2, 1) == Matrix::unit(Q, 2, 0));

    GeneratorMorphism sum = generator_morphism(e, h, 0, Matrix::from_ints(Q, 2, 1, {1, 1}));
    CHECK(sum.span.cols() == 2);
    CHECK(sum.is_morphism);
    CHECK(sum.hits_element);
}

TEST_CASE("kernels and cokernels of entwined morphisms") {
    Entwining e = swap_entwining(fixtures::arrow(Q), fixtures::cg2(Q));
    EntwinedModule c = comodule_tensor_hX(e, regular_comodule(e.coalg), 1);
    // Projection onto g0 is colinear on the regular comodule.
    const Matrix pi = Matrix::from_ints(Q, 2, 2, {1, 0, 0, 0});
    ModuleMap eta;
    for (std::size_t y = 0; y < 2; ++y) eta.comp.push_back(kron(pi, Matrix::identity(Q, e.cat.hom(y, 1))));
    REQUIRE(is_entwined_map(e, c, c, eta));
    EntwinedKernelCokernel kc = entwined_kernel_cokernel(e, c, c, eta);
    CHECK(kc.kernel.module.dims == std::vector<std::size_t>{1, 1});
    CHECK(kc.cokernel.module.dims == std::vector<std::size_t>{1, 1});
    CHECK(verify_entwined_module(e, kc.kernel).ok());
    CHECK(verify_entwined_module(e, kc.cokernel).ok());

    ModuleMap flip;
    for (std::size_t y = 0; y < 2; ++y)
        flip.comp.push_back(kron(Matrix::from_ints(Q, 2, 2, {0, 1, 1, 0}), Matrix::identity(Q, e.cat.hom(y, 1))));
    CHECK_THROWS_AS(entwined_kernel_cokernel(e, c, c, flip), std::invalid_argument);
}

TEST_CASE("morphisms of entwining structures") {
    Entwining s = swap_entwining(fixtures::point(Q), fixtures::c1(Q));
    Entwining t = swap_entwining(fixtures::arrow(Q), fixtures::cg2(Q));
    EntwiningMorphism m{{1}, {Matrix::identity(Q, 1)}, Matrix::from_ints(Q, 2, 1, {1, 0})};
    CHECK(verify_entwining_morphism(s, t, m).ok());
    m.sigma = Matrix::from_ints(Q, 2, 1, {1, 1});
    CHECK(!verify_entwining_morphism(s, t, m).ok());
}
