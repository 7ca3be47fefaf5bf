#pragma once

#include "superspec/filtered_complex.hpp"
#include "superspec/quotient.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace superspec {

using DimTable = std::map<Bidegree, size_t>;

/// One bigraded term E_r^{p,q} = Z / B presented inside C^{p+q}.
struct PageEntry {
    Bidegree bidegree;
    int r = 0;
    Subspace cycles;       // Z_r^{p,q}: c in F^p with dc in F^{p+r}
    Subspace boundaries;   // Z_{r-1}^{p+1,q-1} + d Z_{r-1}^{p-r+1,q+r-2}
    QuotientPresentation quotient;
    size_t dim() const { return quotient.dim(); }
};

struct Page {
    int r = 0;
    bool infinity = false;
    std::map<Bidegree, PageEntry> entries;
    /// d_r out of each bidegree, as a (target dim) x (source dim) matrix in page bases.
    std::map<Bidegree, RationalMatrix> differentials;

    size_t dim(Bidegree b) const;
    DimTable dims() const;
    /// Target bidegree (p + r, q - r + 1) of d_r out of `source`.
    Bidegree target(Bidegree source) const { return {source.p + r, source.q - r + 1}; }
    const RationalMatrix& differential(Bidegree source) const { return differentials.at(source); }
    bool all_differentials_zero() const;
};

/// ker d_r / im d_r computed entrywise in page coordinates.
struct HomologyPage {
    int r = 0;   // index of the page being produced (prev.r + 1)
    std::map<Bidegree, QuotientPresentation> entries;
    DimTable dims() const;
};

struct FilteredCohomology {
    std::vector<QuotientPresentation> groups;               // H^n = ker d^n / im d^{n-1}
    std::vector<std::vector<Subspace>> levels;              // levels[p][n] ⊆ H^n (coordinates)
    size_t dim(int n) const { return groups.at(static_cast<size_t>(n)).dim(); }
    /// dim gr_p H^n = dim levels[p][n] - dim levels[p+1][n].
    size_t graded_dim(int p, int n) const;
};

struct GrComparison {
    DimTable e_infinity;
    DimTable graded;                   // dim gr_p H^{p+q} keyed by (p, q)
    std::vector<size_t> cohomology;    // dim H^k
    std::vector<size_t> e_infinity_totals;  // sum over p+q = k of dim E_inf^{p,q}
};

/// Spectral sequence of a validated filtered complex. Pages and Z-spaces are
/// computed on demand and cached; lookups may come from several threads, cache
/// insertion is serialized.
class SpectralSequence {
public:
    /// Throws std::invalid_argument when the complex fails validate().
    explicit SpectralSequence(FilteredComplex complex);

    const FilteredComplex& complex() const { return complex_; }

    /// Z_r^{p,q}; zero for out-of-range degrees.
    Subspace cycles(int p, int q, int r) const;
    const Page& page(int r) const;
    /// The page at r = p_max, tagged r = infinity; page p_max + 1 is checked to agree.
    Page e_infinity() const;
    FilteredCohomology cohomology() const;

    /// Bidegrees carrying an entry: 0 <= p <= p_max, 0 <= p + q <= n_max.
    std::vector<Bidegree> bidegrees() const;

private:
    Page build_page(int r) const;

    FilteredComplex complex_;
    mutable std::mutex mutex_;
    mutable std::map<std::tuple<int, int, int>, Subspace> cycle_cache_;
    mutable std::map<int, Page> pages_;
};

Subspace compute_Z(const FilteredComplex& c, int p, int q, int r);
Page compute_page(const FilteredComplex& c, int r);
HomologyPage page_via_homology(const Page& prev);
/// Throws std::logic_error when dims of `derived` and `direct` differ anywhere.
void require_same_dims(const HomologyPage& derived, const Page& direct);
Page compute_E_infinity(const FilteredComplex& c);
FilteredCohomology cohomology(const FilteredComplex& c);
/// dim E_inf^{p,q} = dim gr_p H^{p+q} and the per-degree sums; throws std::logic_error on mismatch.
GrComparison compare_gr(const FilteredComplex& c);
GrComparison compare_gr(const SpectralSequence& ss);

/// Parity of each page basis vector (from its representative), -1 when the
/// representative is not homogeneous. Requires the complex to carry parity.
std::vector<int> page_parity(const FilteredComplex& c, const PageEntry& entry);
/// True when every nonzero entry of every d_r on `page` joins opposite parities.
bool differentials_reverse_parity(const FilteredComplex& c, const Page& page);

}  // namespace superspec
