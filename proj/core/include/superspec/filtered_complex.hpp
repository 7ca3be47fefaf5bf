#pragma once

#include "superspec/subspace.hpp"

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace superspec {

/// Filtration position (p) with complementary degree (q); the cochain degree is p + q.
struct Bidegree {
    int p = 0;
    int q = 0;
    int total() const { return p + q; }
    auto operator<=>(const Bidegree&) const = default;
};

/// Parity of a basis vector: 0 even, 1 odd.
using ParityVector = std::vector<int>;

/// A finite cochain complex C^0 -> ... -> C^{n_max} with a decreasing
/// filtration F^0 C = C ⊇ F^1 C ⊇ ... ⊇ F^{p_max} C = 0.
///
/// Construction checks shapes only; the algebraic invariants are checked by
/// validate(), so a malformed complex can still be loaded and reported on.
class FilteredComplex {
public:
    FilteredComplex() = default;
    /// differentials[n] : C^n -> C^{n+1} for n < n_max; filtration[p][n] for p in [0, p_max].
    FilteredComplex(std::vector<size_t> dims, std::vector<RationalMatrix> differentials,
                    std::vector<std::vector<Subspace>> filtration,
                    std::optional<std::vector<ParityVector>> parity = std::nullopt);

    int n_max() const { return static_cast<int>(dims_.size()) - 1; }
    int p_max() const { return static_cast<int>(filtration_.size()) - 1; }
    size_t dim(int n) const;
    const std::vector<size_t>& dims() const { return dims_; }

    /// d^n; for n = n_max (or out of range) the zero map to the zero space.
    const RationalMatrix& d(int n) const;
    /// F^p C^n with the clamping convention F^p = C for p <= 0, F^p = 0 for p >= p_max.
    Subspace filtration(int p, int n) const;
    /// Stored F^p C^n exactly as supplied (no clamping); 0 <= p <= p_max.
    const Subspace& stored_filtration(int p, int n) const { return filtration_.at(p).at(n); }

    const std::optional<std::vector<ParityVector>>& parity() const { return parity_; }

    bool operator==(const FilteredComplex&) const = default;

private:
    std::vector<size_t> dims_;
    std::vector<RationalMatrix> d_;
    std::vector<RationalMatrix> terminal_;  // zero maps out of C^{n_max}, and out of range
    std::vector<std::vector<Subspace>> filtration_;
    std::optional<std::vector<ParityVector>> parity_;
};

struct ValidationIssue {
    std::string invariant;   // short tag: "d^2", "F^0", "nested", "F^pmax", "filtered", "parity"
    int p = -1;              // -1 when not applicable
    int n = -1;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
    std::string to_string() const;
};

ValidationReport validate(const FilteredComplex& c);

/// Zero differentials, with the given filtration.
FilteredComplex zero_differential_complex(std::vector<size_t> dims,
                                          std::vector<std::vector<Subspace>> filtration);

}  // namespace superspec
