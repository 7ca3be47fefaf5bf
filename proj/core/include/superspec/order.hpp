#pragma once

#include "superspec/sheaf_model.hpp"

#include <optional>
#include <string>

namespace superspec::deform {

/// One step j of the normalization: the obstruction μ_j and, when it is a
/// Čech coboundary, the gauge pair with μ_j = B0 - ρ1(B1).
struct OrderStage {
    int degree = 0;
    bool obstructed = false;
    QuasiDerivation mu;
    std::optional<QuasiDerivation> gauge_u0;   // regular on U0
    std::optional<QuasiDerivation> gauge_u1;   // regular on U1, written in the U0 frame
};

struct OrderResult {
    std::optional<int> order;        // nullopt: the cocycle normalizes to the identity
    QuasiAutomorphism normalized;    // exp(-B0) a exp(B1) after every unobstructed stage
    std::vector<OrderStage> stages;
    bool split() const { return !order.has_value(); }
    std::string to_string() const { return order ? std::to_string(*order) : "∞"; }
};

/// Largest even k with a01 cohomologous to an element of Aut_(k)(2). The
/// cocycle must be O-linear (Ψ = id); throws std::invalid_argument otherwise.
OrderResult order(const QuasiAutomorphism& a01, const cech::SheafModel& model);

/// Solves μ = B0 - ρ1(B1) for O-linear B0, B1 of the same degree; nullopt when
/// the class of μ in H^1 is nonzero.
std::optional<std::pair<QuasiDerivation, QuasiDerivation>> split_coboundary(const QuasiDerivation& mu,
                                                                            const cech::SheafModel& model);

}  // namespace superspec::deform
