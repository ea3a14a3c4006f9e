// Search over small GF(2) entwinings for instances with vanishing V1, W1 or Nat spaces.
// Candidates range over the affine space cut out by the identity and counit axioms.
#include "entwine/fixtures.hpp"
#include "entwine/frobsep.hpp"

#include <functional>
#include <iostream>

using namespace ent;

namespace {

const Field F2 = Field::prime(2);

struct Named {
    std::string name;
    LinCategory cat;
};

struct NamedCoalgebra {
    std::string name;
    Coalgebra coalg;
};

LinCategory algebra_category(const std::vector<long>& mult, std::size_t h, const std::vector<std::string>& basis) {
    Matrix m(F2, h, h * h);
    for (std::size_t i = 0; i < mult.size(); ++i) m(i / (h * h), i % (h * h)) = Scalar(F2, mult[i]);
    return fixtures::one_object(F2, m, Matrix::unit(F2, h, 0), basis);
}

std::vector<Named> categories() {
    std::vector<Named> out{{"Dpt", fixtures::point(F2)}, {"DA2", fixtures::arrow(F2)}};
    // Basis 1, x; columns a*2+b hold a.b.
    out.push_back({"K[x]/x^2", algebra_category({1, 0, 0, 0, 0, 1, 1, 0}, 2, {"1", "x"})});
    out.push_back({"KxK", algebra_category({1, 0, 0, 0, 0, 1, 1, 1}, 2, {"1", "e"})});
    out.push_back({"F4", algebra_category({1, 0, 0, 1, 0, 1, 1, 1}, 2, {"1", "w"})});
    // X and Y with arrows both ways composing to zero.
    LinCategory d(F2, {"X", "Y"});
    d.set_hom(0, 0, {"idX"});
    d.set_hom(1, 1, {"idY"});
    d.set_hom(0, 1, {"a"});
    d.set_hom(1, 0, {"b"});
    for (std::size_t x = 0; x < 2; ++x) d.set_identity(x, Matrix::from_ints(F2, 1, 1, {1}));
    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 2; ++y)
            for (std::size_t z = 0; z < 2; ++z)
                if (x == y || y == z) d.set_compose(x, y, z, Matrix::from_ints(F2, 1, 1, {1}));
    out.push_back({"cycle", d});
    // Two parallel arrows X -> Y and one back arrow; non-identity composites vanish.
    d.set_hom(0, 1, {"a1", "a2"});
    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 2; ++y)
            for (std::size_t z = 0; z < 2; ++z)
                if (x == y || y == z) {
                    const std::size_t h = x == y ? d.hom(y, z) : d.hom(x, y);
                    d.set_compose(x, y, z, Matrix::identity(F2, h));
                }
    out.push_back({"kronecker", d});
    return out;
}

Coalgebra from_table(std::size_t k, const std::vector<std::vector<long>>& delta, const std::vector<long>& eps) {
    Matrix dl(F2, k * k, k);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < k * k; ++i) dl(i, j) = Scalar(F2, delta[j][i]);
    Matrix ep(F2, 1, k);
    for (std::size_t j = 0; j < k; ++j) ep(0, j) = Scalar(F2, eps[j]);
    return make_coalgebra(F2, dl, ep);
}

std::vector<NamedCoalgebra> coalgebras() {
    std::vector<NamedCoalgebra> out{{"C1", fixtures::c1(F2)}, {"CG2", fixtures::cg2(F2)},
                                    {"CG3", grouplike_coalgebra(F2, 3)}};
    // Divided powers: Delta x_n = sum x_i (x) x_{n-i}.
    out.push_back({"D2", from_table(2, {{1, 0, 0, 0}, {0, 1, 1, 0}}, {1, 0})});
    out.push_back({"D3", from_table(3, {{1, 0, 0, 0, 0, 0, 0, 0, 0}, {0, 1, 0, 1, 0, 0, 0, 0, 0}, {0, 0, 1, 0, 1, 0, 1, 0, 0}},
                                    {1, 0, 0})});
    // Dual of F4 = K[w]/(w^2+w+1): Delta 1* , w* from the multiplication table.
    out.push_back({"F4*", from_table(2, {{1, 0, 0, 1}, {0, 1, 1, 1}}, {1, 0})});
    return out;
}

void enumerate(const LinCategory& d, const Coalgebra& c, std::size_t limit,
               const std::function<void(const Entwining&)>& visit) {
    Entwining proto = swap_entwining(d, c);
    std::vector<std::size_t> off;
    std::size_t total = 0;
    for (const Matrix& p : proto.psi) {
        off.push_back(total);
        total += p.rows() * p.cols();
    }
    auto build = [&](const Matrix& u) {
        Entwining e = proto;
        for (std::size_t i = 0; i < e.psi.size(); ++i)
            e.psi[i] = u.rows_range(off[i], e.psi[i].rows() * e.psi[i].cols()).reshaped(e.psi[i].rows(), e.psi[i].cols());
        return e;
    };
    const std::size_t n = d.size(), k = c.dim;
    const Matrix ik = Matrix::identity(F2, k);
    auto residual = [&](const Matrix& u) {
        Entwining e = build(u);
        Residual r(F2);
        for (std::size_t x = 0; x < n; ++x) r.add(e.at(x, x) * kron(ik, d.identity(x)), kron(d.identity(x), ik));
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) {
                const Matrix ih = Matrix::identity(F2, d.hom(x, y));
                r.add(kron(ih, c.counit) * e.at(x, y), kron(c.counit, ih));
            }
        return r.vector();
    };
    const Matrix r0 = residual(Matrix(F2, total, 1));
    auto sol = solve_affine(assemble_linear(F2, total, residual), -r0);
    if (!sol) return;
    const std::size_t dim = sol->kernel.cols();
    if (dim > limit) {
        std::cout << "  skipped: " << dim << " free bits\n";
        return;
    }
    for (std::uint64_t bits = 0; bits < (1ULL << dim); ++bits) {
        Matrix u = sol->particular;
        for (std::size_t j = 0; j < dim; ++j)
            if (bits >> j & 1) u += sol->kernel.col(j);
        Entwining e = build(u);
        if (verify_entwining(e).ok()) visit(e);
    }
}

void print(const Entwining& e) {
    for (std::size_t x = 0; x < e.cat.size(); ++x)
        for (std::size_t y = 0; y < e.cat.size(); ++y)
            std::cout << "    psi " << e.cat.objects[x] << " " << e.cat.objects[y] << " = " << e.at(x, y).str() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    const std::size_t limit = argc > 1 ? std::stoul(argv[1]) : 16;
    for (const auto& [cn, c] : coalgebras())
        for (const auto& [dn, d] : categories()) {
            std::cout << dn << " / " << cn << "\n";
            std::size_t count = 0;
            bool v1 = false, w1 = false, fs = false, gs = false;
            enumerate(d, c, limit, [&](const Entwining& e) {
                ++count;
                const std::size_t dv = solve_V1(e).size(), dw = solve_W1(e).size();
                if (dv == 0 && !v1) {
                    std::cout << "  V1 = 0\n";
                    print(e);
                    v1 = true;
                }
                if (dw == 0 && !w1) {
                    std::cout << "  W1 = 0 (Nat dim " << solve_nat(e, NatKind::cstar_to_hc).size() << ")\n";
                    print(e);
                    w1 = true;
                }
                if (!fs && dv > 0 && !check_F_separable(e).witness) {
                    std::cout << "  V1 dim " << dv << " but not F-separable\n";
                    print(e);
                    fs = true;
                }
                if (!gs && dw > 0 && !check_G_separable(e).witness) {
                    std::cout << "  W1 dim " << dw << " but not G-separable\n";
                    print(e);
                    gs = true;
                }
            });
            std::cout << "  " << count << " entwinings\n";
        }
}
