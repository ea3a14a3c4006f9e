#include "entwine/report.hpp"

#include "entwine/frobsep.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ent::report {

json matrix_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).report_str());
        rows.push_back(std::move(row));
    }
    return rows;
}

std::optional<Matrix> matrix_from_json(const Field& f, const json& j) {
    if (!j.is_array()) return std::nullopt;
    const std::size_t rows = j.size();
    const std::size_t cols = rows ? j[0].size() : 0;
    Matrix m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols) return std::nullopt;
        for (std::size_t k = 0; k < cols; ++k) {
            if (!j[i][k].is_string()) return std::nullopt;
            std::string s = j[i][k].get<std::string>();
            const std::string suffix = " mod " + std::to_string(f.modulus());
            if (!f.is_rational()) {
                if (s.size() <= suffix.size() || s.compare(s.size() - suffix.size(), suffix.size(), suffix) != 0)
                    return std::nullopt;
                s.resize(s.size() - suffix.size());
            }
            try {
                mpq_class q(s);
                q.canonicalize();
                m(i, k) = Scalar(f, q);
            } catch (const std::exception&) {
                return std::nullopt;
            }
        }
    }
    return m;
}

json verdict_json(const Verdict& v) {
    json failures = json::array();
    for (const auto& c : v.checks)
        if (!c.ok) failures.push_back({{"check", c.name}, {"witness", c.witness}});
    return {{"ok", v.ok()}, {"checks", v.checks.size()}, {"failures", failures}};
}

std::string digest(const dsl::Document& doc) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : dsl::serialize(doc)) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t).count();
}

json span_json(const dsl::Span& s) {
    return {{"line", s.line}, {"column", s.column}, {"offset", s.offset}, {"length", s.length}};
}

json pair_table(const LinCategory& d, const std::vector<Matrix>& ms) {
    json out = json::array();
    const std::size_t n = d.size();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            out.push_back({{"source", d.objects[x]}, {"target", d.objects[y]}, {"matrix", matrix_json(ms[x * n + y])}});
    return out;
}

json object_table(const LinCategory& d, const std::vector<Matrix>& ms) {
    json out = json::array();
    for (std::size_t x = 0; x < d.size(); ++x) out.push_back({{"object", d.objects[x]}, {"matrix", matrix_json(ms[x])}});
    return out;
}

// Parsed document, or an input-error outcome.
struct Loaded {
    std::optional<dsl::Document> doc;
    Outcome error;
    double parse_ms = 0;
};

json base_report(const std::string& command, const std::string& path) {
    return {{"command", command}, {"file", path}};
}

Loaded load(const std::string& command, const std::string& path, const std::string& text) {
    Loaded l;
    const auto t0 = Clock::now();
    dsl::ParseResult r = dsl::parse(text);
    l.parse_ms = ms_since(t0);
    if (!r.document) {
        json diags = json::array();
        for (const auto& d : r.diagnostics)
            diags.push_back({{"kind", d.kind}, {"message", d.message}, {"span", span_json(d.span)}});
        l.error.report = base_report(command, path);
        l.error.report["error"] = "parse failure";
        l.error.report["diagnostics"] = diags;
        l.error.exit_code = 2;
        return l;
    }
    l.doc = std::move(r.document);
    return l;
}

Outcome input_error(const std::string& command, const std::string& path, const std::string& msg) {
    Outcome o;
    o.report = base_report(command, path);
    o.report["error"] = msg;
    o.exit_code = 2;
    return o;
}

template <class T>
const T* pick(const std::vector<T>& v, const std::string& name) {
    const T* best = nullptr;
    for (const auto& x : v) {
        if (!name.empty() && x.name == name) return &x;
        if (name.empty() && (!best || x.name < best->name)) best = &x;
    }
    return best;
}

// Every block this one depends on must verify before a solver runs.
Verdict prerequisites(const std::vector<dsl::BlockVerdict>& all, const std::string& kind,
                      const std::string& name, const std::string& category, const std::string& coalgebra) {
    Verdict v;
    for (const auto& b : all) {
        const bool needed = (b.kind == kind && b.name == name) || (b.kind == "category" && b.name == category) ||
                            ((b.kind == "coalgebra" || b.kind == "hopf") && b.name == coalgebra);
        if (needed) v.merge(b.verdict, b.kind + " " + b.name + ": ");
    }
    return v;
}

void finish(Outcome& o, const Loaded& l, const dsl::Document& doc, Clock::time_point t0, const Options& opt) {
    o.report["instance_digest"] = digest(doc);
    o.report["field"] = doc.field.name();
    o.report["exit_code"] = o.exit_code;
    if (opt.timings) o.report["timings_ms"] = {{"parse", l.parse_ms}, {"check", ms_since(t0)}};
}

std::string probability(long double p) {
    if (p == 0) return "0";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6Le", p);
    return buf;
}

}  // namespace

Outcome cmd_verify(const std::string& path, const std::string& text, const Options& opt) {
    Loaded l = load("verify", path, text);
    if (!l.doc) return l.error;
    const auto t0 = Clock::now();
    Outcome o;
    o.report = base_report("verify", path);
    json blocks = json::array();
    bool ok = true;
    for (const auto& b : dsl::validate(*l.doc)) {
        ok = ok && b.verdict.ok();
        json j = verdict_json(b.verdict);
        j["kind"] = b.kind;
        j["name"] = b.name;
        j["span"] = span_json(b.span);
        blocks.push_back(std::move(j));
    }
    o.report["verdicts"] = blocks;
    o.report["ok"] = ok;
    o.exit_code = ok ? 0 : 1;
    finish(o, l, *l.doc, t0, opt);
    return o;
}

Outcome cmd_separability(const std::string& path, const std::string& text, char functor, const Options& opt) {
    const std::string command = "sep";
    Loaded l = load(command, path, text);
    if (!l.doc) return l.error;
    if (functor != 'F' && functor != 'G') return input_error(command, path, "functor must be F or G");
    const dsl::EntwiningDecl* ed = pick(l.doc->entwinings, opt.block);
    if (!ed) return input_error(command, path, "no entwining block" + (opt.block.empty() ? "" : " named " + opt.block));
    const auto t0 = Clock::now();
    Outcome o;
    o.report = base_report(command, path);
    o.report["functor"] = std::string(1, functor);
    o.report["entwining"] = ed->name;
    const auto all = dsl::validate(*l.doc);
    const Verdict pre = prerequisites(all, "entwining", ed->name, ed->category, ed->coalgebra);
    o.report["prerequisites"] = verdict_json(pre);
    if (!pre.ok()) {
        o.report["separable"] = false;
        o.exit_code = 1;
        finish(o, l, *l.doc, t0, opt);
        return o;
    }
    const Entwining& e = ed->entwining;
    bool separable = false;
    if (functor == 'F') {
        const ThetaResult r = check_F_separable(e);
        separable = r.witness && r.verdict.ok();
        o.report["V1_dim"] = r.space_dim;
        o.report["verdicts"] = {{"witness", verdict_json(r.verdict)}};
        o.report["witnesses"] = json::object();
        if (r.witness) o.report["witnesses"]["theta"] = object_table(e.cat, r.witness->theta);
        o.report["certificate"] = r.witness ? "witness" : (r.space_dim == 0 ? "V1 = 0" : "normalization unsolvable on V1");
    } else {
        const EtaResult r = check_G_separable(e);
        separable = r.witness && r.verdict.ok();
        o.report["W1_dim"] = r.space_dim;
        o.report["verdicts"] = {{"witness", verdict_json(r.verdict)}};
        o.report["witnesses"] = json::object();
        if (r.witness) o.report["witnesses"]["eta"] = object_table(e.cat, r.witness->e);
        o.report["certificate"] = r.witness ? "witness" : (r.space_dim == 0 ? "W1 = 0" : "normalization unsolvable on W1");
    }
    o.report["separable"] = separable;
    o.exit_code = separable ? 0 : 1;
    finish(o, l, *l.doc, t0, opt);
    return o;
}

Outcome cmd_frobenius(const std::string& path, const std::string& text, const Options& opt) {
    const std::string command = "frobenius";
    Loaded l = load(command, path, text);
    if (!l.doc) return l.error;
    const dsl::EntwiningDecl* ed = pick(l.doc->entwinings, opt.block);
    if (!ed) return input_error(command, path, "no entwining block" + (opt.block.empty() ? "" : " named " + opt.block));
    const auto t0 = Clock::now();
    Outcome o;
    o.report = base_report(command, path);
    o.report["entwining"] = ed->name;
    const auto all = dsl::validate(*l.doc);
    const Verdict pre = prerequisites(all, "entwining", ed->name, ed->category, ed->coalgebra);
    o.report["prerequisites"] = verdict_json(pre);
    if (!pre.ok()) {
        o.report["frobenius"] = false;
        o.exit_code = 1;
        finish(o, l, *l.doc, t0, opt);
        return o;
    }
    const Entwining& e = ed->entwining;
    const FrobeniusResult r = check_frobenius(e, opt.seed, opt.trials);
    o.report["frobenius"] = r.frobenius;
    o.report["nat_dim"] = r.nat_dim;
    o.report["method"] = r.method;
    o.report["probabilistic"] = {{"deterministic", r.deterministic},
                                 {"seed", std::to_string(r.seed)},
                                 {"trials", std::to_string(r.trials)},
                                 {"degree_bound", std::to_string(r.degree_bound)},
                                 {"evaluations", std::to_string(r.evaluations)},
                                 {"error_bound", probability(r.error_bound)}};
    o.report["verdicts"] = {{"witness", verdict_json(r.verdict)}};
    json w = json::object();
    if (r.theta) w["theta"] = object_table(e.cat, r.theta->theta);
    if (r.eta) w["eta"] = object_table(e.cat, r.eta->e);
    if (r.phi) w["phi"] = pair_table(e.cat, r.phi->comp);
    if (r.phi_inverse) w["phi_inverse"] = pair_table(e.cat, r.phi_inverse->comp);
    o.report["witnesses"] = w;
    const bool ok = r.frobenius && r.verdict.ok();
    o.exit_code = ok ? 0 : 1;
    finish(o, l, *l.doc, t0, opt);
    return o;
}

Outcome cmd_galois(const std::string& path, const std::string& text, const Options& opt) {
    const std::string command = "galois";
    Loaded l = load(command, path, text);
    if (!l.doc) return l.error;
    const dsl::Document& doc = *l.doc;
    const dsl::CoactionDecl* cd = pick(doc.coactions, opt.block);
    if (!cd) return input_error(command, path, "no coactions block" + (opt.block.empty() ? "" : " named " + opt.block));
    const auto t0 = Clock::now();
    Outcome o;
    o.report = base_report(command, path);
    o.report["coactions"] = cd->name;
    const auto all = dsl::validate(doc);
    const Verdict pre = prerequisites(all, "coactions", cd->name, cd->category, cd->coalgebra);
    o.report["prerequisites"] = verdict_json(pre);
    if (!pre.ok()) {
        o.report["galois"] = false;
        o.exit_code = 1;
        finish(o, l, doc, t0, opt);
        return o;
    }
    const GaloisData& g = cd->data;
    const LinCategory& d = g.cat;
    const std::size_t n = d.size();
    bool ok = true;
    json verdicts = json::object();

    const Subcategory e = coinvariant_subcategory(g);
    json coinv = json::array();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            coinv.push_back({{"source", d.objects[x]},
                             {"target", d.objects[y]},
                             {"dim", e.hom(x, y, n).cols()},
                             {"hom_dim", d.hom(x, y)}});
    o.report["coinvariant_dims"] = coinv;

    const CanonicalMap cm = canonical_map(g, e);
    json ranks = json::array(), deficits = json::array();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const CanonicalPair& p = cm.at(x, y);
            const std::size_t target = d.hom(x, y) * g.k();
            json r = {{"source", d.objects[x]},    {"target", d.objects[y]},        {"domain_dim", p.tensor.dim()},
                      {"codomain_dim", target},    {"rank", p.rank},                {"invertible", p.inverse.has_value()}};
            ranks.push_back(r);
            if (!p.inverse) {
                json c = {{"source", d.objects[x]},
                          {"target", d.objects[y]},
                          {"rank", p.rank},
                          {"codomain_dim", target},
                          {"domain_dim", p.tensor.dim()}};
                c["kernel_vectors"] = matrix_json(kernel_basis(p.can).transpose());
                c["cokernel_functionals"] = matrix_json(kernel_basis(p.can.transpose()).transpose());
                deficits.push_back(std::move(c));
            }
        }
    o.report["can_ranks"] = ranks;
    const bool galois = cm.is_galois();
    o.report["galois"] = galois;
    if (!galois) o.report["rank_certificate"] = deficits;

    json w = json::object();
    if (galois) {
        const TranslationMap tm = translation_maps(g, cm);
        w["tau"] = object_table(d, tm.tau);
        verdicts["translation"] = verdict_json(tm.verdict);
        ok = ok && tm.verdict.ok();

        const InducedEntwining ie = induced_entwining(g, cm);
        w["induced_psi"] = pair_table(d, ie.entwining.psi);
        verdicts["induced_entwining"] = verdict_json(ie.verdict);
        ok = ok && ie.verdict.ok();

        json matches = json::object();
        for (const auto& ed : doc.entwinings)
            if (ed.category == cd->category && ed.coalgebra == cd->coalgebra) {
                const Verdict cv = compare_entwining(g, ie.entwining, ed.entwining);
                matches[ed.name] = verdict_json(cv);
            }
        if (!matches.empty()) o.report["entwining_comparison"] = matches;

        const Verdict coring = can_as_coring_iso(d, cm, coring_hC(ie.entwining), coring_hEh(d, e));
        verdicts["coring_isomorphism"] = verdict_json(coring);
        ok = ok && coring.ok();
    }

    const dsl::PhiDecl* pd = nullptr;
    for (const auto& p : doc.phis)
        if (p.coactions == cd->name && (!pd || p.name < pd->name)) pd = &p;
    if (pd) {
        o.report["phi"] = pd->name;
        const TheoremReport tr = theorem_4_11(g, pd->phi);
        json t = {{"colinear", tr.colinear},
                  {"convolution_invertible", tr.inverse.has_value()},
                  {"galois", tr.galois},
                  {"induced_entwining", tr.entwining},
                  {"coinvariance", tr.coinvariance},
                  {"agree", tr.agree()}};
        if (!tr.witness.empty()) t["witness"] = tr.witness;
        o.report["theorem_4_11"] = t;
        ok = ok && tr.agree();
        if (tr.inverse) {
            w["phi_inverse"] = pair_table(d, tr.inverse->phi);
            if (galois) {
                const CanInverse ci = can_inverse_via_phi(g, cm, pd->phi, *tr.inverse);
                verdicts["can_inverse_via_phi"] = verdict_json(ci.verdict);
                ok = ok && ci.verdict.ok();

                const LinCategory ec = subcategory_as_category(d, e);
                std::vector<RightModule> mods;
                std::vector<EntwinedModule> comods;
                for (std::size_t y = 0; y < n; ++y) {
                    mods.push_back(representable_right(ec, y));
                    comods.push_back(representable_comodule(g, y));
                }
                const EquivalenceReport er = equivalence_roundtrip(g, cm, pd->phi, mods, comods);
                json eq = verdict_json(er.verdict);
                eq["module_dims"] = er.module_dims;
                eq["comodule_dims"] = er.comodule_dims;
                verdicts["equivalence"] = eq;
                ok = ok && er.verdict.ok();
            }
        }
    }
    o.report["verdicts"] = verdicts;
    o.report["witnesses"] = w;
    o.exit_code = galois && ok ? 0 : 1;
    finish(o, l, doc, t0, opt);
    return o;
}

Outcome run(const std::string& command, const std::string& path, const Options& o, char functor) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return input_error(command, path, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    try {
        if (command == "verify") return cmd_verify(path, text, o);
        if (command == "sep") return cmd_separability(path, text, functor, o);
        if (command == "frobenius") return cmd_frobenius(path, text, o);
        if (command == "galois") return cmd_galois(path, text, o);
    } catch (const std::invalid_argument& e) {
        return input_error(command, path, e.what());
    }
    return input_error(command, path, "unknown command");
}

namespace {

void text_value(std::ostringstream& os, const json& j, int indent);

bool is_matrix(const json& j) {
    if (!j.is_array() || j.empty()) return false;
    for (const auto& r : j)
        if (!r.is_array() || (!r.empty() && !r[0].is_string())) return false;
    return true;
}

void text_value(std::ostringstream& os, const json& j, int indent) {
    const std::string pad(indent, ' ');
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            os << pad << it.key() << ":";
            const json& v = it.value();
            if (v.is_primitive() || v.empty()) {
                os << " " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
            } else {
                os << "\n";
                text_value(os, v, indent + 2);
            }
        }
    } else if (is_matrix(j)) {
        for (const auto& r : j) {
            os << pad << "[";
            for (std::size_t k = 0; k < r.size(); ++k) os << (k ? " " : "") << r[k].get<std::string>();
            os << "]\n";
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (v.is_primitive()) {
                os << pad << "- " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
            } else {
                os << pad << "-\n";
                text_value(os, v, indent + 2);
            }
        }
    } else {
        os << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

}  // namespace

std::string to_text(const json& report) {
    std::ostringstream os;
    text_value(os, report, 0);
    return os.str();
}

}  // namespace ent::report
