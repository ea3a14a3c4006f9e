#pragma once

#include "entwine/dsl.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace ent::report {

using json = nlohmann::json;

// Exit codes: 0 pass, 1 negative verdict, 2 input error.
struct Outcome {
    json report;
    int exit_code = 0;
};

struct Options {
    std::string block;            // entwining or coactions block; empty selects the first by name
    std::uint64_t seed = 0;
    std::size_t trials = 64;
    bool timings = true;          // omit for byte-stable reports
};

// Nested arrays of scalar strings, rows outermost.
json matrix_json(const Matrix& m);
// Inverse of matrix_json; nullopt on malformed input.
std::optional<Matrix> matrix_from_json(const Field& f, const json& j);
json verdict_json(const Verdict& v);
// FNV-1a of the canonical serialization.
std::string digest(const dsl::Document& doc);

// text is the file content and path is only echoed in the report.
Outcome cmd_verify(const std::string& path, const std::string& text, const Options& o);
Outcome cmd_separability(const std::string& path, const std::string& text, char functor, const Options& o);
Outcome cmd_frobenius(const std::string& path, const std::string& text, const Options& o);
Outcome cmd_galois(const std::string& path, const std::string& text, const Options& o);

// Reads the file; a missing file yields exit code 2.
Outcome run(const std::string& command, const std::string& path, const Options& o, char functor = 'F');

std::string to_text(const json& report);

}  // namespace ent::report
