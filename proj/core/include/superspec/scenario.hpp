#pragma once

#include "superspec/filtered_complex.hpp"
#include "superspec/sheaf_model.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace superspec::scenario {

/// Malformed scenario text; `line` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& message);
    int line() const { return line_; }

private:
    int line_;
};

enum class Mode { RawComplex, SuperSheaf };
enum class CocycleForm { None, Exp, Direct };

struct Scenario {
    Mode mode = Mode::RawComplex;
    std::string name;
    FilteredComplex complex;                          // raw_complex
    cech::SheafModel model;                           // super_sheaf
    CocycleForm cocycle = CocycleForm::None;
    std::optional<deform::QuasiDerivation> generator; // A with a01 = exp(A), for CocycleForm::Exp
    std::optional<deform::QuasiDerivation> mu_override;
};

/// Format:
///
///     superspec-scenario 1
///     mode raw_complex | super_sheaf
///
/// raw_complex keys: n_max, p_max, dims, "differential n = M" (M a row list
/// such as [[0, 1/2], [1, 0]] or "zero"), "filtration p n = B" (basis rows,
/// one line per 0 < p < p_max and n), optional "parity n = [..]".
///
/// super_sheaf keys: m, xi_twists, e_twists, f_twists, window, and optionally
/// "cocycle exp" with "map g = expr" and "field x|xiN = expr", or
/// "cocycle direct" with "map g = expr" and "psi x|xiN = expr", and
/// "mu_override g = expr". Expressions are sums of terms like 3/2*x^-1*xi1*xi2*e1.
///
/// '#' starts a comment. Unknown or repeated keys are errors.
Scenario parse(std::string_view text);
Scenario load(const std::filesystem::path& path);

/// Canonical text; parse(write(s)) reproduces s.
std::string write(const Scenario& s);
/// raw_complex scenario for an arbitrary complex.
std::string write_complex(const FilteredComplex& c, const std::string& name = "");

RationalMatrix parse_matrix(std::string_view text, size_t rows, size_t cols);
cech::SuperFunction parse_function(std::string_view text, int m);
cech::SuperSection parse_section(std::string_view text, const cech::ModuleShape& shape);
std::string format_matrix(const RationalMatrix& m);

}  // namespace superspec::scenario
