#include "entwine/fixtures.hpp"

namespace ent::fixtures {

LinCategory point(const Field& f) {
    LinCategory d(f, {"*"});
    d.set_hom(0, 0, {"id"});
    d.set_compose(0, 0, 0, Matrix::identity(f, 1));
    d.set_identity(0, Matrix::identity(f, 1));
    return d;
}

LinCategory arrow(const Field& f) {
    LinCategory d(f, {"X", "Y"});
    d.set_hom(0, 0, {"idX"});
    d.set_hom(0, 1, {"a"});
    d.set_hom(1, 1, {"idY"});
    const Matrix one = Matrix::identity(f, 1);
    d.set_compose(0, 0, 0, one);
    d.set_compose(0, 0, 1, one);
    d.set_compose(0, 1, 1, one);
    d.set_compose(1, 1, 1, one);
    d.set_identity(0, one);
    d.set_identity(1, one);
    return d;
}

LinCategory one_object(const Field& f, const Matrix& mult, const Matrix& unit, const std::vector<std::string>& basis) {
    LinCategory d(f, {"*"});
    d.set_hom(0, 0, basis);
    d.set_compose(0, 0, 0, mult);
    d.set_identity(0, unit);
    return d;
}

Coalgebra c1(const Field& f) {
    Coalgebra c = grouplike_coalgebra(f, 1);
    c.basis = {"e"};
    return c;
}

Coalgebra cg2(const Field& f) { return grouplike_coalgebra(f, 2, "g"); }

HopfAlgebra h2(const Field& f) { return cyclic_group_algebra(f, 2); }

LinCategory dh2_category(const Field& f) {
    HopfAlgebra h = h2(f);
    return one_object(f, h.mult, h.unit, h.coalg.basis);
}

CoHCategory dh2_coh(const Field& f) {
    HopfAlgebra h = h2(f);
    return CoHCategory{dh2_category(f), h, {h.coalg.delta}};
}

Entwining dh2(const Field& f) { return doi_hopf_entwining(dh2_coh(f), regular_module_coalgebra(h2(f))); }

namespace {

LinCategory two_objects(const Field& f, std::vector<std::string> xy, std::vector<std::string> yx) {
    LinCategory d(f, {"X", "Y"});
    d.set_hom(0, 0, {"idX"});
    d.set_hom(1, 1, {"idY"});
    d.set_hom(0, 1, std::move(xy));
    d.set_hom(1, 0, std::move(yx));
    for (std::size_t x = 0; x < 2; ++x) d.set_identity(x, Matrix::from_ints(f, 1, 1, {1}));
    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 2; ++y)
            for (std::size_t z = 0; z < 2; ++z)
                if (x == y || y == z) d.set_compose(x, y, z, Matrix::identity(f, x == y ? d.hom(y, z) : d.hom(x, y)));
    return d;
}

}  // namespace

LinCategory cycle(const Field& f) { return two_objects(f, {"a"}, {"b"}); }

LinCategory kronecker(const Field& f) { return two_objects(f, {"a1", "a2"}, {"b"}); }

Entwining v1_zero(const Field& f) {
    Entwining e = swap_entwining(cycle(f), cg2(f));
    const Matrix to_g0 = Matrix::from_ints(f, 2, 2, {1, 1, 0, 0});
    e.at(0, 1) = to_g0;
    e.at(1, 0) = to_g0;
    return e;
}

Entwining w1_zero(const Field& f) {
    Entwining e = swap_entwining(kronecker(f), cg2(f));
    // Columns c*2 + a, rows a*2 + c.
    e.at(0, 1) = Matrix::from_ints(f, 4, 4, {1, 0, 1, 0,  //
                                             0, 0, 0, 0,  //
                                             0, 0, 0, 0,  //
                                             0, 1, 0, 1});
    return e;
}

Entwining arrow_twisted(const Field& f, const Matrix& sigma) {
    Entwining e = swap_entwining(arrow(f), cg2(f));
    e.at(0, 1) = sigma;
    return e;
}

std::vector<NamedEntwining> catalogue(const Field& f) {
    std::vector<NamedEntwining> out;
    const std::vector<std::pair<std::string, LinCategory>> cats{
        {"Dpt", point(f)}, {"DA2", arrow(f)}, {"DH2cat", dh2_category(f)}, {"cycle", cycle(f)}};
    for (const auto& [dn, d] : cats)
        for (const auto& [cn, c] : std::vector<std::pair<std::string, Coalgebra>>{{"C1", c1(f)}, {"CG2", cg2(f)}})
            out.push_back({dn + "/" + cn + "/swap", swap_entwining(d, c)});
    out.push_back({"DA2/CG2/flip", arrow_twisted(f, Matrix::from_ints(f, 2, 2, {0, 1, 1, 0}))});
    out.push_back({"DA2/CG2/to-g0", arrow_twisted(f, Matrix::from_ints(f, 2, 2, {1, 1, 0, 0}))});
    out.push_back({"DH2", dh2(f)});
    out.push_back({"V1-zero", v1_zero(f)});
    out.push_back({"W1-zero", w1_zero(f)});
    return out;
}

GaloisData dh2_galois(const Field& f) { return galois_data(dh2_coh(f)); }

PhiFamily dh2_phi(const Field& f) { return PhiFamily{{Matrix::identity(f, 2)}}; }

GaloisData trivial_cg2_galois(const Field& f) { return trivial_galois_data(point(f), cg2(f), Matrix::unit(f, 2, 0)); }

PhiFamily trivial_cg2_phi(const Field& f) { return PhiFamily{{Matrix::from_ints(f, 1, 2, {1, 0})}}; }

}  // namespace ent::fixtures
