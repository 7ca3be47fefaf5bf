#pragma once

#include "superspec/sheaf_model.hpp"
#include "superspec/spectral_sequence.hpp"

#include <string>

namespace superspec::cech {

/// Two-chart Čech complex C^0 = Γ(U0) ⊕ Γ(U1) -> C^1 = Γ(U01) with
/// d(s0, s1) = ρ0(s0) - a01·ρ1(s1), filtered by Z-degree.
struct CechComplex {
    SectionLayout layout;
    FilteredComplex complex;

    /// C^0 coordinates: the U0 block comes first, then the U1 block.
    size_t u0_dim() const { return layout.dim(Chart::U0); }
    std::pair<SuperSection, SuperSection> split_cochain(std::span<const Rational> c0) const;
    Vector join_cochain(const SuperSection& s0, const SuperSection& s1) const;
};

CechComplex build_cech_complex(const SheafModel& model, std::optional<int> window_override = std::nullopt);

/// ρ0(s0) - a01·ρ1(s1) computed on sections, without the assembled matrix.
SuperSection twisted_differential(const SectionLayout& layout, const SuperSection& s0, const SuperSection& s1);
Vector twisted_differential(const CechComplex& cc, std::span<const Rational> c0);

struct StabilityReport {
    int window = 0;
    bool stable = true;
    std::vector<size_t> cohomology_lower;   // dim H^n at window N
    std::vector<size_t> cohomology_upper;   // dim H^n at window N + 1
    std::string message;
};

/// Compares dim H^n and every page E_r (r >= 1) at windows N and N + 1.
StabilityReport stabilization_check(const SheafModel& model, std::optional<int> window_override = std::nullopt);

}  // namespace superspec::cech
