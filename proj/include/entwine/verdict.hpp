#pragma once

#include "entwine/matrix.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ent {

struct Check {
    std::string name;
    bool ok = true;
    std::string witness;
};

// Ordered list of named identity checks; first failure is the reported one.
struct Verdict {
    std::vector<Check> checks;

    bool ok() const;
    const Check* first_failure() const;
    void add(std::string name, bool ok, std::string witness = {});
    // Compare two matrices; the witness names the first differing column.
    bool expect_equal(const std::string& name, const Matrix& lhs, const Matrix& rhs,
                      const std::vector<std::string>* column_names = nullptr);
    void merge(const Verdict& other, const std::string& prefix = {});
    std::string summary() const;
};

std::optional<std::size_t> first_differing_column(const Matrix& a, const Matrix& b);

// Collects linear residuals (lhs - rhs blocks) into one flat column.
class Residual {
public:
    explicit Residual(const Field& f) : field_(f) {}
    void add(const Matrix& lhs, const Matrix& rhs);
    void add_zero(const Matrix& m);
    Matrix vector() const;

private:
    Field field_;
    std::vector<Scalar> entries_;
};

// For a linear residual r(u) on K^n, returns the matrix with columns r(e_k).
Matrix assemble_linear(const Field& f, std::size_t unknowns,
                       const std::function<Matrix(const Matrix&)>& residual);

// Columns: basis of { u : r(u) = 0 }.
Matrix solve_linear_family(const Field& f, std::size_t unknowns,
                           const std::function<Matrix(const Matrix&)>& residual);

}  // namespace ent
