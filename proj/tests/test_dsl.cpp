#include "doctest.h"

#include "entwine/dsl.hpp"
#include "entwine/fixtures.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

using namespace ent;
namespace fs = std::filesystem;

namespace {

const Field Q = Field::rationals();

std::string read(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path fixture(const std::string& name) { return fs::path(ENTWINE_FIXTURES_DIR) / name; }

dsl::Document load(const std::string& name) {
    auto r = dsl::parse(read(fixture(name)));
    for (const auto& d : r.diagnostics) INFO(dsl::format(d, name));
    REQUIRE(r.diagnostics.empty());
    return *r.document;
}

std::vector<fs::path> files(const fs::path& dir) {
    std::vector<fs::path> out;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".ent") out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

const dsl::BlockVerdict* verdict_of(const std::vector<dsl::BlockVerdict>& v, const std::string& name) {
    for (const auto& b : v)
        if (b.name == name) return &b;
    return nullptr;
}

// Line and column recomputed from the byte offset.
bool span_consistent(const std::string& text, const dsl::Span& s) {
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

}  // namespace

TEST_CASE("inline coalgebra block") {
    auto r = dsl::parse("field Q; coalgebra C dim 1 { delta: e -> e*e; counit: e -> 1; }");
    REQUIRE(r.document);
    REQUIRE(r.document->coalgebras.size() == 1);
    const Coalgebra& c = r.document->coalgebras[0].coalg;
    const Coalgebra ref = fixtures::c1(Q);
    CHECK(c.delta == ref.delta);
    CHECK(c.counit == ref.counit);
    CHECK(c.basis == ref.basis);
    CHECK(verify_coalgebra(c).ok());
    // Also in "name kind" order.
    auto s = dsl::parse("field Q; C coalgebra dim 1 { delta: e -> e*e; counit: e -> 1; }");
    REQUIRE(s.document);
    CHECK(dsl::structurally_equal(*r.document, *s.document));
}

TEST_CASE("negative dimension is flagged at its span") {
    const std::string text = "field Q;\n\ncoalgebra C dim -1 { delta: e -> e*e; counit: e -> 1; }\n";
    auto r = dsl::parse(text);
    CHECK(!r.document);
    REQUIRE(!r.diagnostics.empty());
    const auto& d = r.diagnostics.front();
    CHECK(d.kind == "dimension");
    CHECK(d.span.offset == text.find("-1"));
    CHECK(d.span.length == 2);
    CHECK(d.span.line == 3);
    CHECK(d.span.column == 17);
}

TEST_CASE("scalars over prime fields are reduced") {
    auto r = dsl::parse("field GF(3); coalgebra C dim 1 { delta: e -> 4 e*e; counit: e -> 1/2; }");
    REQUIRE(r.document);
    const Coalgebra& c = r.document->coalgebras[0].coalg;
    CHECK(c.delta(0, 0).is_one());
    CHECK(c.counit(0, 0) == Scalar(Field::prime(3), 2L));
    auto bad = dsl::parse("field GF(3); coalgebra C dim 1 { delta: e -> e*e; counit: e -> 1/3; }");
    REQUIRE(bad.diagnostics.size() == 1);
    CHECK(bad.diagnostics[0].kind == "syntax");
}

TEST_CASE("fixtures agree with the built-in instances") {
    for (const auto& [file, f] : std::vector<std::pair<std::string, Field>>{
             {"dpt_cg2_swap_q.ent", Q}, {"dpt_cg2_swap_gf2.ent", Field::prime(2)}, {"dpt_cg2_swap_gf3.ent", Field::prime(3)}}) {
        const auto doc = load(file);
        REQUIRE(doc.entwinings.size() == 1);
        CHECK(doc.field == f);
        CHECK(doc.entwinings[0].entwining.psi == swap_entwining(fixtures::point(f), fixtures::cg2(f)).psi);
    }
    CHECK(load("da2_cg2_swap.ent").entwinings[0].entwining.psi ==
          swap_entwining(fixtures::arrow(Q), fixtures::cg2(Q)).psi);
    for (const auto& [file, f] : std::vector<std::pair<std::string, Field>>{{"dh2_q.ent", Q}, {"dh2_gf3.ent", Field::prime(3)}}) {
        const auto doc = load(file);
        const Entwining ref = fixtures::dh2(f);
        const Entwining& e = doc.entwinings[0].entwining;
        CHECK(e.psi == ref.psi);
        CHECK(e.cat.compose(0, 0, 0) == ref.cat.compose(0, 0, 0));
        CHECK(e.coalg.delta == ref.coalg.delta);
        CHECK(doc.hopfs[0].hopf.mult == fixtures::h2(f).mult);
        CHECK(doc.hopfs[0].hopf.antipode == fixtures::h2(f).antipode);
        CHECK(doc.coactions[0].data.rho == fixtures::dh2_galois(f).rho);
        CHECK(doc.phis[0].phi.phi == fixtures::dh2_phi(f).phi);
        CHECK(verify_entwining(e).ok());
    }
    for (const Field f : {Field::prime(2)}) {
        CHECK(load("v1_zero_gf2.ent").entwinings[0].entwining.psi == fixtures::v1_zero(f).psi);
        const auto w = load("w1_zero_gf2.ent").entwinings[0].entwining;
        CHECK(w.psi == fixtures::w1_zero(f).psi);
        CHECK(w.cat.compose(0, 1, 0) == fixtures::kronecker(f).compose(0, 1, 0));
    }
    const auto t = load("trivial_cg2_galois.ent");
    CHECK(t.coactions[0].data.rho == fixtures::trivial_cg2_galois(Q).rho);
    CHECK(t.phis[0].phi.phi == fixtures::trivial_cg2_phi(Q).phi);
}

TEST_CASE("shipped fixtures roundtrip") {
    const auto list = files(fs::path(ENTWINE_FIXTURES_DIR));
    CHECK(list.size() >= 15);
    for (const auto& p : list) {
        INFO(p.filename().string());
        auto r = dsl::parse(read(p));
        REQUIRE(r.document);
        const std::string once = dsl::serialize(*r.document);
        auto again = dsl::parse(once);
        for (const auto& d : again.diagnostics) INFO(dsl::format(d));
        REQUIRE(again.document);
        CHECK(dsl::structurally_equal(*r.document, *again.document));
        CHECK(dsl::serialize(*again.document) == once);
    }
}

TEST_CASE("validation") {
    for (const char* good : {"dh2_q.ent", "dh2_gf3.ent", "dpt_cg2_swap_q.ent", "w1_zero_gf2.ent", "c1_galois.ent"}) {
        INFO(good);
        for (const auto& b : dsl::validate(load(good))) {
            INFO(b.name << ": " << b.verdict.summary());
            CHECK(b.verdict.ok());
        }
    }
    {
        const std::string text = read(fixture("broken_counit.ent"));
        const auto v = dsl::validate(*dsl::parse(text).document);
        const auto* c = verdict_of(v, "CG2");
        REQUIRE(c);
        CHECK(c->kind == "coalgebra");
        CHECK(!c->verdict.ok());
        CHECK(text.substr(c->span.offset, 9) == "coalgebra");
    }
    {
        const std::string text = read(fixture("missing_psi.ent"));
        const auto v = dsl::validate(*dsl::parse(text).document);
        const auto* e = verdict_of(v, "swap");
        REQUIRE(e);
        REQUIRE(e->verdict.first_failure());
        CHECK(e->verdict.first_failure()->name == "missing entry");
        CHECK(e->verdict.first_failure()->witness == "hom X Y");
        CHECK(text.substr(e->span.offset, 9) == "entwining");
        CHECK(text[e->span.offset + e->span.length - 1] == '}');
    }
    {
        const auto v = dsl::validate(load("broken_psi.ent"));
        const auto* e = verdict_of(v, "E");
        REQUIRE(e);
        CHECK(!e->verdict.ok());
    }
}

TEST_CASE("malformed inputs produce spanned diagnostics") {
    const auto list = files(fs::path(ENTWINE_FIXTURES_DIR) / "malformed");
    CHECK(list.size() >= 10);
    for (const auto& p : list) {
        INFO(p.filename().string());
        const std::string text = read(p);
        auto r = dsl::parse(text);
        CHECK(!r.document);
        REQUIRE(!r.diagnostics.empty());
        for (const auto& d : r.diagnostics) {
            INFO(dsl::format(d));
            CHECK(span_consistent(text, d.span));
            CHECK(!d.message.empty());
        }
    }
}

TEST_CASE("diagnostic kinds") {
    auto kind = [](const std::string& text) {
        auto r = dsl::parse(text);
        return r.diagnostics.empty() ? std::string() : r.diagnostics.front().kind;
    };
    CHECK(kind("field Q; coalgebra C dim 1 { delta: e -> e*e; counit: e -> 1$; }") == "lexical");
    CHECK(kind("field Q; coalgebra C dim 1 { delta: e -> e*e counit: e -> 1; }") == "syntax");
    CHECK(kind("field Q; coalgebra C dim 1 { delta: e -> e*f; counit: e -> 1; }") == "reference");
    CHECK(kind("field Q; coalgebra C dim 2 { delta: e -> e*e; counit: e -> 1; }") == "dimension");
    CHECK(kind("field Q; coalgebra C dim 1 { delta: e -> e; counit: e -> 1; }") == "dimension");
    CHECK(kind("coalgebra C dim 1 { delta: e -> e*e; counit: e -> 1; }") == "reference");
    CHECK(kind("field Q; entwining E on D coalgebra C { }") == "reference");
}

TEST_CASE("recovery reports errors in later blocks") {
    const std::string text =
        "field Q;\n"
        "coalgebra A dim 1 { delta: e -> e*; counit: e -> 1; }\n"
        "coalgebra B dim 1 { delta: e -> e*e; counit: e -> 1 }\n"
        "coalgebra C dim 1 { delta: e -> e*x; counit: e -> 1; }\n";
    auto r = dsl::parse(text);
    REQUIRE(r.diagnostics.size() >= 3);
    CHECK(r.diagnostics[0].span.line == 3);  // parse error in B precedes resolution errors
    std::set<std::size_t> lines;
    for (const auto& d : r.diagnostics) lines.insert(d.span.line);
    CHECK(lines == std::set<std::size_t>{2, 3, 4});
}

TEST_CASE("canonical form") {
    auto r = dsl::parse(
        "field Q;\n"
        "coalgebra Z dim 1 { delta: e -> e*e; counit: e -> 1; }\n"
        "coalgebra A dim 2 { basis: x y; delta: x -> x*x; y -> 2/4 y*x + y*y - 3 x*y + 0 x*x; counit: x -> 1; y -> 0; }\n");
    REQUIRE(r.document);
    const std::string text = dsl::serialize(*r.document);
    CHECK(text.find("coalgebra A") < text.find("coalgebra Z"));
    CHECK(text.find("y -> -3 x*y + 1/2 y*x + y*y;") != std::string::npos);
    CHECK(text.find("y -> 0") == std::string::npos);
    // C1 is byte-stable after one pass.
    auto c1 = dsl::parse(read(fixture("c1.ent")));
    const std::string a = dsl::serialize(*c1.document);
    CHECK(dsl::serialize(*dsl::parse(a).document) == a);
    CHECK(a.find("delta:\n    e -> e*e;") != std::string::npos);
}

TEST_CASE("identity composites default to the unit law") {
    const auto doc = load("da2_c1_swap.ent");
    const LinCategory& d = doc.categories[0].cat;
    const LinCategory ref = fixtures::arrow(Q);
    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 2; ++y)
            for (std::size_t z = 0; z < 2; ++z) CHECK(d.compose(x, y, z) == ref.compose(x, y, z));
    CHECK(dsl::serialize(doc).find("compose") == std::string::npos);
    // An explicit override survives a roundtrip.
    auto r = dsl::parse(
        "field Q; category P { objects: p; hom p p: i; identity p: i; compose: i*i -> 0; }");
    REQUIRE(r.document);
    CHECK(r.document->categories[0].cat.compose(0, 0, 0).is_zero());
    auto again = dsl::parse(dsl::serialize(*r.document));
    REQUIRE(again.document);
    CHECK(dsl::structurally_equal(*r.document, *again.document));
}

TEST_CASE("random coalgebra tables roundtrip") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> num(-6, 6), den(1, 5), dim(1, 3);
    for (const Field& f : {Q, Field::prime(5)}) {
        for (int trial = 0; trial < 25; ++trial) {
            dsl::Document doc;
            doc.field = f;
            const std::size_t n = dim(rng);
            Matrix delta(f, n * n, n), counit(f, 1, n);
            for (std::size_t i = 0; i < delta.rows(); ++i)
                for (std::size_t j = 0; j < n; ++j) delta(i, j) = Scalar(f, mpq_class(num(rng), 5 * den(rng) + 1));
            for (std::size_t j = 0; j < n; ++j) counit(0, j) = Scalar(f, mpq_class(num(rng), den(rng) * 5 + 2));
            doc.coalgebras.push_back({"K", {}, make_coalgebra(f, delta, counit, default_basis("b", n))});
            const std::string text = dsl::serialize(doc);
            auto r = dsl::parse(text);
            INFO(text);
            REQUIRE(r.document);
            CHECK(dsl::structurally_equal(doc, *r.document));
            CHECK(dsl::serialize(*r.document) == text);
        }
    }
}
