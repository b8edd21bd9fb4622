#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symdet/polynomial.hpp"

namespace symdet {

// Expression grammar: integer literals of unbounded size, declared variable
// names, `+ - * ^`, parentheses, unary sign. Multiplication is always
// explicit; juxtaposition is a syntax error.
Polynomial parse_poly(const std::string& text, const VarSet& vars);

// Canonical form: terms in descending graded-lex order, explicit `*` and `^`,
// unit coefficients and unit exponents elided. parse(print(p)) == p.
std::string print_poly(const Polynomial& p);

struct InstanceFile {
    std::vector<std::string> vars;
    std::vector<std::vector<std::string>> matrix;
    std::optional<std::string> label;
    std::optional<std::uint64_t> seed;

    VarSet varset() const { return VarSet(vars); }
    PolyMatrix to_matrix() const;
};

InstanceFile load_instance_file(const std::filesystem::path& path);
PolyMatrix load_instance(const std::filesystem::path& path);
std::string instance_to_json(const InstanceFile& f);
void save_instance(const std::filesystem::path& path, const InstanceFile& f);

struct ResultDiagnostics {
    std::vector<std::uint64_t> bounds;
    std::vector<std::string> substitution;       // "x1=x2^4" strings; empty when none
    std::vector<std::uint64_t> reduced_bounds;   // bounds of the solved axes
    double lambda = 0.5;
    std::string epsilon = "0";
    std::uint64_t precision_bits = 0;
    std::uint64_t nodes = 0;
    bool verified = false;
    std::uint64_t escalations = 0;
    double ms_eval = 0.0;
    double ms_solve = 0.0;
};

struct ResultTerm {
    std::vector<std::uint64_t> exps;
    std::string coeff;                           // decimal, arbitrary size
};

struct ResultFile {
    std::string determinant;
    std::vector<ResultTerm> terms;
    ResultDiagnostics diagnostics;

    // Rebuild the polynomial from the coefficient list.
    Polynomial to_polynomial(const VarSet& vars) const;
    static ResultFile from_polynomial(const Polynomial& p, ResultDiagnostics diag);
};

std::string result_to_json(const ResultFile& r);
void write_result(const std::filesystem::path& path, const ResultFile& r);
ResultFile load_result(const std::filesystem::path& path);

// Scientific decimal with >= 3 significant digits and no exponent padding,
// e.g. "7.45e-9".
std::string format_epsilon(const mpq_class& eps);

} // namespace symdet
