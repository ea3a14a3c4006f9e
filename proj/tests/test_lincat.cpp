#include "doctest.h"

#include "entwine/fixtures.hpp"
#include "entwine/lincat.hpp"

using namespace ent;

namespace {

const Field Q = Field::rationals();

std::size_t total_hom(const LinCategory& d) {
    std::size_t t = 0;
    for (std::size_t x = 0; x < d.size(); ++x)
        for (std::size_t y = 0; y < d.size(); ++y) t += d.hom(x, y);
    return t;
}

}  // namespace

TEST_CASE("category verification") {
    CHECK(verify_category(fixtures::point(Q)).ok());
    CHECK(verify_category(fixtures::arrow(Q)).ok());
    CHECK(verify_category(fixtures::dh2_category(Q)).ok());
    LinCategory broken = fixtures::point(Q);
    broken.set_compose(0, 0, 0, Matrix(Q, 1, 1));
    Verdict v = verify_category(broken);
    REQUIRE(!v.ok());
    CHECK(v.first_failure()->name.find("unit") != std::string::npos);
    CHECK_THROWS(broken.set_compose(0, 0, 0, Matrix(Q, 2, 1)));
    CHECK_THROWS(broken.object("Z"));
}

TEST_CASE("representable modules") {
    LinCategory d = fixtures::arrow(Q);
    RightModule hy = representable_right(d, 1), hx = representable_right(d, 0);
    CHECK(hy.dims == std::vector<std::size_t>{1, 1});
    CHECK(hx.dims == std::vector<std::size_t>{1, 0});
    CHECK(verify_right_module(d, hy).ok());
    CHECK(verify_right_module(d, hx).ok());
    LeftModule lx = representable_left(d, 0), ly = representable_left(d, 1);
    CHECK(lx.dims == std::vector<std::size_t>{1, 1});
    CHECK(ly.dims == std::vector<std::size_t>{0, 1});
    CHECK(verify_left_module(d, lx).ok());
    CHECK(verify_left_module(d, ly).ok());
    LinCategory p = fixtures::point(Q);
    CHECK(representable_right(p, 0).dims == std::vector<std::size_t>{1});
    CHECK(representable_right(p, 0).action(0, 0) == Matrix::identity(Q, 1));
    CHECK(verify_left_module(fixtures::dh2_category(Q), representable_left(fixtures::dh2_category(Q), 0)).ok());
}

TEST_CASE("module hom spaces and Yoneda") {
    LinCategory p = fixtures::point(Q);
    CHECK(module_hom_space(p, representable_right(p, 0), representable_right(p, 0)).size() == 1);
    LinCategory d = fixtures::arrow(Q);
    for (const LinCategory& c : {p, d, fixtures::dh2_category(Q), fixtures::dh2_category(Field::prime(3))})
        for (std::size_t x = 0; x < c.size(); ++x)
            for (std::size_t y = 0; y < c.size(); ++y) {
                auto space = module_hom_space(c, representable_right(c, x), representable_right(c, y));
                CHECK(space.size() == c.hom(x, y));
                for (const auto& eta : space)
                    CHECK(is_module_map(c, representable_right(c, x), representable_right(c, y), eta));
                for (std::size_t i = 0; i < c.hom(x, y); ++i)
                    CHECK(is_module_map(c, representable_right(c, x), representable_right(c, y),
                                        yoneda_map(c, x, y, c.hom_unit(x, y, i))));
            }
}

TEST_CASE("kernels and cokernels") {
    LinCategory d = fixtures::arrow(Q);
    RightModule hx = representable_right(d, 0), hy = representable_right(d, 1);
    ModuleMap id{{Matrix::identity(Q, 1), Matrix::identity(Q, 0)}};
    KernelCokernel kc = kernel_cokernel(d, hx, hx, id);
    CHECK(kc.kernel.dims == std::vector<std::size_t>{0, 0});
    CHECK(kc.cokernel.dims == std::vector<std::size_t>{0, 0});

    LinCategory p = fixtures::point(Q);
    RightModule h = representable_right(p, 0);
    kc = kernel_cokernel(p, h, h, ModuleMap{{Matrix(Q, 1, 1)}});
    CHECK(kc.kernel.dims == h.dims);
    CHECK(kc.cokernel.dims == h.dims);

    kc = kernel_cokernel(d, hx, hy, yoneda_map(d, 0, 1, d.hom_unit(0, 1, 0)));
    CHECK(kc.kernel.dims == std::vector<std::size_t>{0, 0});
    CHECK(kc.cokernel.dims == std::vector<std::size_t>{0, 1});
    CHECK(verify_right_module(d, kc.kernel).ok());
    CHECK(verify_right_module(d, kc.cokernel).ok());
    for (std::size_t x = 0; x < 2; ++x)
        CHECK(kc.kernel.dims[x] + hy.dims[x] == hx.dims[x] + kc.cokernel.dims[x]);

    CHECK_THROWS_AS(kernel_cokernel(d, hy, hy, ModuleMap{{Matrix::identity(Q, 1), Matrix(Q, 1, 1)}}),
                    std::invalid_argument);
}

TEST_CASE("exactness of kernel and cokernel on the group algebra category") {
    LinCategory c = fixtures::dh2_category(Q);
    RightModule h = representable_right(c, 0);
    // Right multiplication by 1 + g is natural for the left-regular structure.
    Matrix f = Matrix::from_ints(Q, 2, 1, {1, 1});
    ModuleMap eta = yoneda_map(c, 0, 0, f);
    KernelCokernel kc = kernel_cokernel(c, h, h, eta);
    CHECK(kc.kernel.dims == std::vector<std::size_t>{1});
    CHECK(kc.cokernel.dims == std::vector<std::size_t>{1});
    CHECK(verify_right_module(c, kc.kernel).ok());
    CHECK(verify_right_module(c, kc.cokernel).ok());
    CHECK((eta.comp[0] * kc.inclusion[0]).is_zero());
    CHECK((kc.projection[0] * eta.comp[0]).is_zero());
}

TEST_CASE("subcategories") {
    LinCategory c = fixtures::dh2_category(Q);
    Subcategory full = full_subcategory(c), triv = identity_subcategory(c);
    CHECK(verify_subcategory(c, full).ok());
    CHECK(verify_subcategory(c, triv).ok());
    CHECK(verify_category(subcategory_as_category(c, triv)).ok());
    CHECK(verify_category(subcategory_as_category(c, full)).ok());
    Subcategory g_only{{Matrix::from_ints(Q, 2, 1, {0, 1})}};
    CHECK(!verify_subcategory(c, g_only).ok());
}

TEST_CASE("tensor over a subcategory") {
    LinCategory p = fixtures::point(Q);
    LinCategory pe = subcategory_as_category(p, full_subcategory(p));
    TensorOverSub t = tensor_over_sub(pe, representable_right(pe, 0), representable_left(pe, 0));
    CHECK(t.dim() == 1);

    LinCategory c = fixtures::dh2_category(Q);
    for (const auto& [sub, expected] : {std::pair{identity_subcategory(c), 4}, std::pair{full_subcategory(c), 2}}) {
        LinCategory e = subcategory_as_category(c, sub);
        TensorOverSub u = tensor_over_sub(e, restrict_right(c, sub, representable_right(c, 0)),
                                          restrict_left(c, sub, representable_left(c, 0)));
        CHECK(u.dim() == static_cast<std::size_t>(expected));
        CHECK((u.quotient.projection * u.relations).is_zero());
    }
}

TEST_CASE("tensor over the full category recovers hom spaces") {
    for (const LinCategory& d : {fixtures::point(Q), fixtures::arrow(Q), fixtures::dh2_category(Q)}) {
        REQUIRE(total_hom(d) <= 8);
        Subcategory full = full_subcategory(d);
        LinCategory e = subcategory_as_category(d, full);
        for (std::size_t x = 0; x < d.size(); ++x)
            for (std::size_t y = 0; y < d.size(); ++y) {
                TensorOverSub t = tensor_over_sub(e, representable_right(e, y), representable_left(e, x));
                CHECK(t.dim() == d.hom(x, y));
            }
        Subcategory triv = identity_subcategory(d);
        LinCategory et = subcategory_as_category(d, triv);
        for (std::size_t x = 0; x < d.size(); ++x)
            for (std::size_t y = 0; y < d.size(); ++y) {
                TensorOverSub t = tensor_over_sub(et, restrict_right(d, triv, representable_right(d, y)),
                                                  restrict_left(d, triv, representable_left(d, x)));
                CHECK(t.dim() == t.ambient);
            }
    }
}
