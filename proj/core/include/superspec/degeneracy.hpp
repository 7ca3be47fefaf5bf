#pragma once

#include "superspec/cech_complex.hpp"
#include "superspec/order.hpp"

#include <optional>
#include <string>
#include <vector>

namespace superspec::deform {

struct DifferentialCheck {
    int r = 0;
    Bidegree source;
    bool pass = false;
    RationalMatrix actual;
    RationalMatrix expected;
    std::string label;   // "d_1 = 0", "d_2 = mu_2", ...
};

struct DegeneracyReport {
    std::optional<int> order;
    std::vector<DifferentialCheck> checks;
    bool pass = true;
    std::string summary;   // one line, e.g. "order 2; d_1 = 0: PASS; d_2 = mu_2: PASS"
    /// Offending checks with both matrices.
    std::string details() const;
};

/// Map E_k^{p,-p} -> E_k^{p+k,-p-k+1} induced by the Čech action c ↦ -mu(ρ1 c1) of
/// a degree-k derivation on the U1 component of graded representatives. The sign
/// matches d = ρ0 - a01·ρ1.
RationalMatrix mu_induced_map(const cech::CechComplex& cc, const Page& page, Bidegree source,
                              const QuasiDerivation& mu);

/// Normalizes the transition, builds the twisted complex and checks d_r = 0
/// below the order k and d_k = μ_k(a01) on E_k. When `mu_override` is given it
/// replaces μ_k on the right-hand side (used as a negative control).
DegeneracyReport verify_degeneracy(const cech::SheafModel& model,
                                   const std::optional<QuasiDerivation>& mu_override = std::nullopt);

}  // namespace superspec::deform
