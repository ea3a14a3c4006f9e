#include "entwine/dsl.hpp"
#include "entwine/fixtures.hpp"
#include "entwine/frobsep.hpp"
#include "entwine/galois.hpp"
#include "gf_oracle.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace ent;
namespace fs = std::filesystem;

namespace {

const Field Q = Field::rationals();

struct Result {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail = what;
        pass = pass && ok;
    }
};

std::string read(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path fixture(const std::string& name) { return fs::path(ENTWINE_FIXTURES_DIR) / name; }

dsl::Document load(const std::string& name) {
    auto r = dsl::parse(read(fixture(name)));
    if (!r.document) throw std::runtime_error(name + " does not parse");
    return *r.document;
}

std::string axiom_of(const std::string& check) { return check.substr(0, check.find(" at ")); }

Result axiom_soundness() {
    Result r;
    const std::vector<std::string> swaps = {"dpt_c1_swap.ent",  "dpt_cg2_swap_q.ent",  "da2_c1_swap.ent",
                                            "da2_cg2_swap.ent", "dh2cat_c1_swap.ent", "dh2cat_cg2_swap.ent"};
    const std::vector<std::pair<LinCategory, Coalgebra>> built = {
        {fixtures::point(Q), fixtures::c1(Q)},        {fixtures::point(Q), fixtures::cg2(Q)},
        {fixtures::arrow(Q), fixtures::c1(Q)},        {fixtures::arrow(Q), fixtures::cg2(Q)},
        {fixtures::dh2_category(Q), fixtures::c1(Q)}, {fixtures::dh2_category(Q), fixtures::cg2(Q)}};
    for (std::size_t i = 0; i < swaps.size(); ++i) {
        const Entwining e = load(swaps[i]).entwinings.at(0).entwining;
        r.require(e.psi == swap_entwining(built[i].first, built[i].second).psi, swaps[i] + " is not the swap");
        r.require(verify_entwining(e).ok(), swaps[i] + " rejected");
    }
    for (const auto& [file, f] : std::vector<std::pair<std::string, Field>>{{"dh2_q.ent", Q}, {"dh2_gf3.ent", Field::prime(3)}}) {
        const Entwining e = load(file).entwinings.at(0).entwining;
        r.require(e.psi == fixtures::dh2(f).psi, file + " differs from the Doi-Hopf psi");
        r.require(verify_entwining(e).ok(), file + " rejected");
    }
    const std::set<std::string> axioms = {"composition", "counit", "comultiplication", "identity"};
    const Entwining dh2 = fixtures::dh2(Q);
    std::size_t rejected = 0, count = 0;
    std::set<std::string> named;
    for (std::size_t k = 0; k < 20; ++k) {
        const std::size_t entry = k % 16;
        const long delta = k < 16 ? 1 : -3;
        Entwining p = dh2;
        p.at(0, 0)(entry / 4, entry % 4) += Scalar(Q, delta);
        ++count;
        const Verdict v = verify_entwining(p);
        const Check* fail = v.first_failure();
        if (fail && axioms.count(axiom_of(fail->name))) {
            ++rejected;
            named.insert(axiom_of(fail->name));
        }
    }
    r.require(rejected == count, std::to_string(count - rejected) + " perturbation(s) accepted");
    std::string names;
    for (const auto& n : named) names += (names.empty() ? "" : ", ") + n;
    if (r.pass)
        r.detail = "8 entwinings accepted; " + std::to_string(rejected) + "/20 perturbations rejected (" + names + ")";
    return r;
}

Result oracle_equivalence() {
    Result r;
    const Field f = Field::prime(2);
    std::size_t compared = 0, skipped = 0;
    for (const auto& [name, e] : fixtures::catalogue(f)) {
        skipped += (oracle::v1_unknowns(e) > 20) + (oracle::w1_unknowns(e) > 20) + (oracle::nat_unknowns(e) > 20);
        const auto v1 = oracle::v1_dim(e, 1ULL << 20);
        const auto w1 = oracle::w1_dim(e, 1ULL << 20);
        const auto nat = oracle::nat_dim(e, 1ULL << 20);
        if (v1) {
            ++compared;
            r.require(v1->dim == solve_V1(e).size(), name + ": V1 dimension mismatch");
        }
        if (w1) {
            ++compared;
            r.require(w1->dim == solve_W1(e).size(), name + ": W1 dimension mismatch");
        }
        if (nat) {
            ++compared;
            r.require(nat->dim == solve_nat(e, NatKind::cstar_to_hc).size(), name + ": Nat dimension mismatch");
        }
    }
    r.require(compared > 0, "no instance within the enumeration limit");
    if (r.pass) r.detail = std::to_string(compared) + " dimensions match exhaustive enumeration over GF(2); " +
                            std::to_string(skipped) + " above 20 unknowns skipped";
    return r;
}

Result isomorphism_roundtrips() {
    Result r;
    std::size_t checked = 0;
    for (const char* file : {"dpt_cg2_swap_q.ent", "da2_cg2_swap.ent"}) {
        const Entwining e = load(file).entwinings.at(0).entwining;
        for (const auto& t : solve_V1(e)) {
            r.require(beta_prime(e, alpha_prime(e, t)).theta == t.theta, std::string(file) + ": beta' alpha' != id");
            ++checked;
        }
        for (const auto& eta : solve_W1(e)) {
            r.require(delta_prime(e, gamma_prime(e, eta)).e == eta.e, std::string(file) + ": delta' gamma' != id");
            ++checked;
        }
    }
    if (r.pass) r.detail = std::to_string(checked) + " basis vectors return exactly";
    return r;
}

Result separability_witnesses() {
    Result r;
    const Entwining e = load("dpt_cg2_swap_q.ent").entwinings.at(0).entwining;
    const ThetaResult f = check_F_separable(e);
    r.require(f.witness.has_value(), "no theta");
    if (f.witness) {
        r.require(verify_theta(e, *f.witness).ok(), "theta fails re-verification");
        for (std::size_t x = 0; x < e.cat.size(); ++x)
            r.require(f.witness->theta[x] * e.coalg.delta == e.cat.identity(x) * e.coalg.counit,
                      "theta Delta != eps id");
    }
    const EtaResult g = check_G_separable(e);
    r.require(g.witness.has_value(), "no eta");
    if (g.witness) {
        r.require(verify_eta(e, *g.witness).ok(), "eta fails re-verification");
        for (std::size_t y = 0; y < e.cat.size(); ++y)
            r.require(kron(Matrix::identity(Q, e.cat.hom(y, y)), e.coalg.counit) * g.witness->e[y] == e.cat.identity(y),
                      "(id (x) eps) eta != id");
    }
    if (r.pass) r.detail = "theta and eta re-verify exactly";
    return r;
}

Result frobenius_witnesses() {
    Result r;
    const Entwining e = load("dpt_cg2_swap_q.ent").entwinings.at(0).entwining;
    const FrobeniusResult fr = check_frobenius(e);
    r.require(fr.frobenius && fr.theta && fr.eta, "not reported Frobenius");
    if (!r.pass) return r;
    const Verdict ids = verify_frobenius_identities(e, *fr.theta, *fr.eta);
    r.require(ids.ok(), "frobenius identities fail: " + ids.summary());
    const RightModule h = representable_right(e.cat, 0);
    const EntwinedModule ch = module_tensor_C(e, h);
    r.require(unit_counit_on_module(e, *fr.theta, *fr.eta, h), "roundtrip fails on h");
    r.require(unit_counit_on_module(e, *fr.theta, *fr.eta, ch.module), "roundtrip fails on C (x) h");
    r.require(unit_counit_on_entwined(e, *fr.theta, *fr.eta, ch), "roundtrip fails on the entwined C (x) h");
    const EntwinedModule hc = comodule_tensor_hX(e, regular_comodule(e.coalg), 0);
    r.require(unit_counit_on_entwined(e, *fr.theta, *fr.eta, hc), "roundtrip fails on the entwined C (x) h_*");
    if (r.pass) r.detail = "Frobenius (" + fr.method + "); both identities hold as matrices on every basis element";
    return r;
}

Result galois_pipeline() {
    Result r;
    const dsl::Document doc = load("dh2_q.ent");
    const GaloisData& g = doc.coactions.at(0).data;
    r.require(g.rho == fixtures::dh2_galois(Q).rho, "file coactions differ from Delta");
    const Subcategory e = coinvariant_subcategory(g);
    r.require(e.hom(0, 0, 1).cols() == 1, "(a) coinvariant dim != 1");
    const CanonicalMap cm = canonical_map(g, e);
    r.require(cm.is_galois(), "(b) can not invertible");
    if (!r.pass) return r;
    r.require(translation_maps(g, cm).verdict.ok(), "(c) translation identities fail");
    const InducedEntwining ie = induced_entwining(g, cm);
    r.require(ie.verdict.ok(), "(d) induced entwining fails its checks");
    r.require(ie.entwining.psi == fixtures::dh2(Q).psi, "(d) induced psi differs from the Doi-Hopf psi");
    r.require(ie.entwining.psi == doc.entwinings.at(0).entwining.psi, "(d) induced psi differs from the file");
    r.require(can_as_coring_iso(g.cat, cm, coring_hC(ie.entwining), coring_hEh(g.cat, e)).ok(), "(e) not a coring map");
    const TheoremReport t = theorem_4_11(g, doc.phis.at(0).phi);
    r.require(t.galois && t.entwining && t.coinvariance, "(f) theorem parts not all true");

    const ModuleCategory mc = trivial_module_category(fixtures::point(Q), fixtures::h2(Q));
    const GaloisData s = smash_product(mc);
    r.require(s.rho == g.rho && s.cat.compose(0, 0, 0) == g.cat.compose(0, 0, 0), "(g) smash product is not DH2");
    const CanonicalMap cs = canonical_map(s, coinvariant_subcategory(s));
    const std::vector<Matrix> formula = smash_can_inverse(mc, s, cs);
    r.require(cs.is_galois() && formula[0].cols() == 4 && formula[0] == *cs.at(0, 0).inverse,
              "(g) antipode formula disagrees with the computed inverse");

    const LinCategory ec = subcategory_as_category(g.cat, e);
    const RightModule m = representable_right(ec, 0);
    const EquivalenceReport er = equivalence_roundtrip(g, cm, doc.phis.at(0).phi, {m}, {representable_comodule(g, 0)});
    r.require(er.verdict.ok(), "(h) roundtrip fails: " + er.verdict.summary());
    const std::size_t lifted = tensor_with_h(g, e, m).dim(0);
    r.require(lifted == m.dims[0] * g.k() && lifted == 2, "(h) dim (M (x)_E h)(*) != 1*2");
    r.require(er.module_dims.at(0) == std::vector<std::size_t>{1} && er.comodule_dims.at(0) == std::vector<std::size_t>{1},
              "(h) coinvariant dimensions");
    if (r.pass) r.detail = "(a)-(h) hold; dim (M (x)_E h)(*) = 1*2 = " + std::to_string(lifted);
    return r;
}

Result negative_control() {
    Result r;
    const dsl::Document doc = load("trivial_cg2_galois.ent");
    const GaloisData& g = doc.coactions.at(0).data;
    const CanonicalMap cm = canonical_map(g, coinvariant_subcategory(g));
    const CanonicalPair& p = cm.at(0, 0);
    const std::size_t target = g.cat.hom(0, 0) * g.k();
    r.require(!cm.is_galois(), "reported Galois");
    r.require(p.rank < target, "no rank deficit");
    const Matrix functional = kernel_basis(p.can.transpose()).transpose();
    r.require(functional.rows() > 0 && (functional * p.can).is_zero(), "no cokernel certificate");
    const TheoremReport t = theorem_4_11(g, doc.phis.at(0).phi);
    r.require(!t.galois && !t.entwining && !t.coinvariance && t.agree(), "theorem verdicts do not agree on false");
    if (r.pass)
        r.detail = "rank " + std::to_string(p.rank) + " < " + std::to_string(target) + "; all three verdicts false";
    return r;
}

bool span_inside(const std::string& text, const dsl::Span& s) {
    if (s.offset + s.length > text.size()) return false;
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < s.offset; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return line == s.line && col == s.column;
}

Result parser() {
    Result r;
    std::size_t shipped = 0, malformed = 0;
    for (const auto& entry : fs::directory_iterator(fs::path(ENTWINE_FIXTURES_DIR))) {
        if (entry.path().extension() != ".ent") continue;
        const std::string name = entry.path().filename().string();
        auto a = dsl::parse(read(entry.path()));
        if (!a.document) {
            r.require(false, name + " does not parse");
            continue;
        }
        const std::string once = dsl::serialize(*a.document);
        auto b = dsl::parse(once);
        r.require(b.document && dsl::structurally_equal(*a.document, *b.document), name + ": roundtrip differs");
        r.require(b.document && dsl::serialize(*b.document) == once, name + ": serialize not idempotent");
        ++shipped;
    }
    for (const auto& entry : fs::directory_iterator(fs::path(ENTWINE_FIXTURES_DIR) / "malformed")) {
        if (entry.path().extension() != ".ent") continue;
        const std::string text = read(entry.path());
        auto res = dsl::parse(text);
        bool spanned = !res.document && !res.diagnostics.empty();
        for (const auto& d : res.diagnostics) spanned = spanned && span_inside(text, d.span);
        r.require(spanned, entry.path().filename().string() + ": no spanned diagnostic");
        ++malformed;
    }
    r.require(malformed >= 10, "fewer than 10 malformed inputs");
    if (r.pass)
        r.detail = std::to_string(shipped) + " fixtures roundtrip; " + std::to_string(malformed) +
                   " malformed inputs diagnosed";
    return r;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Result()>>> criteria = {
        {"axiom soundness", axiom_soundness},
        {"oracle equivalence", oracle_equivalence},
        {"isomorphism roundtrips", isomorphism_roundtrips},
        {"separability witnesses", separability_witnesses},
        {"frobenius witnesses", frobenius_witnesses},
        {"galois pipeline", galois_pipeline},
        {"negative control", negative_control},
        {"parser", parser},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Result r;
        try {
            r = criteria[i].second();
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        if (!r.pass) ++failed;
        std::cout << (r.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": " << r.detail << "\n";
    }
    return failed == 0 ? 0 : 1;
}
