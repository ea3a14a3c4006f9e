#pragma once

#include "entwine/galois.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ent::dsl {

// Lines and columns are 1-based; offset and length count bytes.
struct Span {
    std::size_t line = 1, column = 1, offset = 0, length = 0;
};

// kind is one of "lexical", "syntax", "reference", "dimension".
struct Diagnostic {
    std::string kind;
    std::string message;
    Span span;
};

std::string format(const Diagnostic& d, std::string_view file = {});

struct CoalgebraDecl {
    std::string name;
    Span span;
    Coalgebra coalg;
};

struct HopfDecl {
    std::string name;
    Span span;
    HopfAlgebra hopf;
};

struct CategoryDecl {
    std::string name;
    Span span;
    LinCategory cat;
};

// Per-pair data with a flag recording whether the pair was written out.
struct CoactionDecl {
    std::string name, category, coalgebra;
    Span span;
    GaloisData data;
    std::vector<bool> given;
};

struct EntwiningDecl {
    std::string name, category, coalgebra;
    Span span;
    Entwining entwining;
    std::vector<bool> given;
};

// A right module over a category, or an entwined module when declared on an entwining.
struct ModuleDecl {
    std::string name, base;
    bool entwined = false;
    Span span;
    EntwinedModule module;
    std::vector<std::vector<std::string>> basis;  // per object
};

struct PhiDecl {
    std::string name, coactions;
    Span span;
    PhiFamily phi;
    std::vector<bool> given;
};

struct Document {
    Field field;
    std::vector<CoalgebraDecl> coalgebras;
    std::vector<HopfDecl> hopfs;
    std::vector<CategoryDecl> categories;
    std::vector<CoactionDecl> coactions;
    std::vector<EntwiningDecl> entwinings;
    std::vector<ModuleDecl> modules;
    std::vector<PhiDecl> phis;
};

struct ParseResult {
    std::optional<Document> document;  // present iff there are no diagnostics
    std::vector<Diagnostic> diagnostics;
};

ParseResult parse(std::string_view text);
// Canonical text: blocks grouped by kind and sorted by name, terms in basis order, zero terms dropped.
std::string serialize(const Document& doc);
bool structurally_equal(const Document& a, const Document& b);

struct BlockVerdict {
    std::string kind, name;
    Span span;
    Verdict verdict;
};

std::vector<BlockVerdict> validate(const Document& doc);

}  // namespace ent::dsl
