#include "entwine/verdict.hpp"

#include <sstream>
#include <stdexcept>

namespace ent {

bool Verdict::ok() const { return first_failure() == nullptr; }

const Check* Verdict::first_failure() const {
    for (const auto& c : checks)
        if (!c.ok) return &c;
    return nullptr;
}

void Verdict::add(std::string name, bool ok, std::string witness) {
    checks.push_back({std::move(name), ok, std::move(witness)});
}

std::optional<std::size_t> first_differing_column(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return 0;
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i)
            if (a(i, j) != b(i, j)) return j;
    return std::nullopt;
}

bool Verdict::expect_equal(const std::string& name, const Matrix& lhs, const Matrix& rhs,
                           const std::vector<std::string>* column_names) {
    if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) {
        add(name, false, "shape mismatch");
        return false;
    }
    auto j = first_differing_column(lhs, rhs);
    if (!j) {
        add(name, true);
        return true;
    }
    std::string w = column_names && *j < column_names->size() ? (*column_names)[*j]
                                                              : "basis column " + std::to_string(*j);
    add(name, false, w);
    return false;
}

void Verdict::merge(const Verdict& other, const std::string& prefix) {
    for (const auto& c : other.checks) checks.push_back({prefix + c.name, c.ok, c.witness});
}

std::string Verdict::summary() const {
    const Check* f = first_failure();
    if (!f) return "ok (" + std::to_string(checks.size()) + " checks)";
    return "failed: " + f->name + (f->witness.empty() ? "" : " at " + f->witness);
}

void Residual::add(const Matrix& lhs, const Matrix& rhs) {
    if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols())
        throw std::invalid_argument("residual shape mismatch");
    for (std::size_t k = 0; k < lhs.data().size(); ++k) entries_.push_back(lhs.data()[k] - rhs.data()[k]);
}

void Residual::add_zero(const Matrix& m) {
    for (const auto& s : m.data()) entries_.push_back(s);
}

Matrix Residual::vector() const { return Matrix::column(field_, entries_); }

Matrix assemble_linear(const Field& f, std::size_t unknowns,
                       const std::function<Matrix(const Matrix&)>& residual) {
    // Subtracting r(0) makes this the linear part even for affine residuals.
    const Matrix r0 = residual(Matrix(f, unknowns, 1));
    std::vector<Matrix> cols;
    cols.reserve(unknowns);
    for (std::size_t k = 0; k < unknowns; ++k) cols.push_back(residual(Matrix::unit(f, unknowns, k)) - r0);
    return hstack(cols, f, r0.rows());
}

Matrix solve_linear_family(const Field& f, std::size_t unknowns,
                           const std::function<Matrix(const Matrix&)>& residual) {
    return kernel_basis(assemble_linear(f, unknowns, residual));
}

}  // namespace ent
