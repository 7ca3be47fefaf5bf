#pragma once

#include "superspec/grassmann.hpp"
#include "superspec/quasi.hpp"
#include "superspec/quotient.hpp"

#include <array>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace superspec::cech {

/// Degrees a_i with Õ_1 = O(a_1) ⊕ ... ⊕ O(a_m).
struct TwistProfile {
    std::vector<int> a;
    int m() const { return static_cast<int>(a.size()); }
    bool operator==(const TwistProfile&) const = default;
};

/// Locally free sheaf on a split supermanifold over P^1, charts U0 (coordinate x)
/// and U1 (coordinate y = 1/x).
///
/// Frames: ξ_i^(0) = x^(-a_i) ξ_i^(1) and g^(1) = x^(b_g) g^(0), so ξ_I g of
/// total twist t = Σ_{i∈I} a_i + b_g restricts from U1 by y^j ξ_I g ↦ x^(t-j) ξ_I g.
/// The transition a01 acts on overlap sections in the U0 frame.
struct SheafModel {
    TwistProfile twists;
    std::vector<int> even_twists;   // b_j for e_j
    std::vector<int> odd_twists;    // c_j for f_j
    std::optional<deform::QuasiAutomorphism> transition;
    int window = 2;

    int m() const { return twists.m(); }
    ModuleShape shape() const;
    int generator_twist(int g) const;
    /// Throws std::invalid_argument on inconsistent sizes, window < 1, or a
    /// transition outside Aut_(2)(2) of this shape.
    void check() const;
};

struct SectionComponent {
    Mask mask = 0;
    int generator = 0;
    int degree = 0;   // Z-degree in the graded sheaf
    int twist = 0;
};

/// Exponent ranges kept for one component: x^0..x^u0_max on U0, y^0..y^u1_max
/// on U1 and x^lo..x^hi on the overlap.
struct ComponentWindow {
    int u0_max = 0;
    int u1_max = 0;
    int lo = 0;
    int hi = 0;
};

struct SectionMonomial {
    size_t component = 0;
    int exponent = 0;   // power of x on U0 and U01, of y on U1
};

/// Truncated section spaces of a model over the three charts.
///
/// Every component starts from the window N. When a transition is present the
/// windows of higher components grow until the truncated complex is closed
/// under the twisted differential; the part left out is then acyclic.
class SectionLayout {
public:
    explicit SectionLayout(const SheafModel& model, std::optional<int> window_override = std::nullopt);

    const SheafModel& model() const { return model_; }
    int window() const { return window_; }
    const std::vector<SectionComponent>& components() const { return components_; }
    const std::vector<ComponentWindow>& windows() const { return windows_; }
    std::optional<size_t> component_index(Mask mask, int generator) const;

    /// Basis ordered by component (degree, generator, mask), then exponent.
    const std::vector<SectionMonomial>& basis(Chart chart) const { return basis_[chart_slot(chart)]; }
    size_t dim(Chart chart) const { return basis(chart).size(); }
    std::optional<size_t> index(Chart chart, size_t component, int exponent) const;
    int degree(Chart chart, size_t i) const { return components_[basis(chart)[i].component].degree; }

    /// The monomial as a section in the frame of its own chart.
    SuperSection section(Chart chart, const SectionMonomial& mono) const;
    /// Restriction of a basis monomial of `chart` (U0 or U1) to the overlap, in the U0 frame.
    SuperSection restrict(Chart chart, const SectionMonomial& mono) const;
    /// Coordinates of a section of `chart` in the layout basis; throws
    /// std::out_of_range when a term falls outside the window.
    Vector coordinates(Chart chart, const SuperSection& s) const;
    SuperSection section(Chart chart, std::span<const Rational> coords) const;

private:
    static size_t chart_slot(Chart chart) { return static_cast<size_t>(chart); }
    void grow_windows();

    SheafModel model_;
    int window_;
    std::vector<SectionComponent> components_;
    std::vector<ComponentWindow> windows_;
    std::map<std::pair<Mask, int>, size_t> component_lookup_;
    std::array<std::vector<SectionMonomial>, 3> basis_;
    std::array<std::map<std::pair<size_t, int>, size_t>, 3> index_;
};

/// Based subspace of a chart's section space.
struct SectionSpace {
    Chart chart = Chart::U0;
    int p = 0;
    std::vector<size_t> indices;          // positions in layout.basis(chart)
    std::vector<SectionMonomial> basis;
    size_t dim() const { return basis.size(); }
};

/// E_(p) over `chart`: monomials ξ_I e_j with |I| >= p and ξ_I f_j with |I| >= p-1.
SectionSpace build_section_space(const SectionLayout& layout, Chart chart, int p);
SectionSpace build_section_space(const SheafModel& model, Chart chart, int p,
                                 std::optional<int> window_override = std::nullopt);

struct GradedPiece {
    int p = 0;
    int parity = 0;                     // p mod 2
    std::array<QuotientPresentation, 3> sections;   // E_(p) / E_(p+1) per chart
    std::array<size_t, 3> even_part{};  // dim Õ_p ⊗ (E_red)_0
    std::array<size_t, 3> odd_part{};   // dim Õ_{p-1} ⊗ (E_red)_1
    size_t dim(Chart chart) const { return sections[static_cast<size_t>(chart)].dim(); }
};

struct GradedSheafData {
    std::vector<GradedPiece> pieces;    // p = 0 .. m+1
    size_t reduced_even_rank = 0;
    size_t reduced_odd_rank = 0;
};

GradedSheafData retract_graded(const SectionLayout& layout);
GradedSheafData retract_graded(const SheafModel& model);

}  // namespace superspec::cech
