#include "superspec/spectral_sequence.hpp"

#include <sstream>
#include <stdexcept>

namespace superspec {

size_t Page::dim(Bidegree b) const
{
    auto it = entries.find(b);
    return it == entries.end() ? 0 : it->second.dim();
}

DimTable Page::dims() const
{
    DimTable t;
    for (const auto& [b, e] : entries)
        t[b] = e.dim();
    return t;
}

bool Page::all_differentials_zero() const
{
    for (const auto& [b, m] : differentials)
        if (!m.is_zero())
            return false;
    return true;
}

DimTable HomologyPage::dims() const
{
    DimTable t;
    for (const auto& [b, e] : entries)
        t[b] = e.dim();
    return t;
}

size_t FilteredCohomology::graded_dim(int p, int n) const
{
    const size_t top = levels.at(static_cast<size_t>(p)).at(static_cast<size_t>(n)).dim();
    if (static_cast<size_t>(p + 1) >= levels.size())
        return top;
    return top - levels[static_cast<size_t>(p + 1)][static_cast<size_t>(n)].dim();
}

SpectralSequence::SpectralSequence(FilteredComplex complex) : complex_(std::move(complex))
{
    auto report = validate(complex_);
    if (!report.ok())
        throw std::invalid_argument("spectral sequence needs a valid filtered complex: " + report.to_string());
}

std::vector<Bidegree> SpectralSequence::bidegrees() const
{
    std::vector<Bidegree> out;
    for (int p = 0; p <= complex_.p_max(); ++p)
        for (int n = 0; n <= complex_.n_max(); ++n)
            out.push_back({p, n - p});
    return out;
}

Subspace SpectralSequence::cycles(int p, int q, int r) const
{
    const int n = p + q;
    if (n < 0 || n > complex_.n_max())
        return Subspace(0);
    // Z_r^p = F^p whenever the condition on dc is implied by filtration preservation
    const int key_r = std::max(r, 0);
    const int effective = std::min(p + key_r, complex_.p_max());
    const auto key = std::make_tuple(p, q, effective - p);
    {
        std::lock_guard lock(mutex_);
        if (auto it = cycle_cache_.find(key); it != cycle_cache_.end())
            return it->second;
    }
    Subspace fp = complex_.filtration(p, n);
    Subspace z = fp;
    if (n < complex_.n_max() && key_r > 0 && !fp.is_zero())
        z = intersect(fp, preimage(complex_.d(n), complex_.filtration(p + key_r, n + 1)));
    std::lock_guard lock(mutex_);
    return cycle_cache_.emplace(key, std::move(z)).first->second;
}

Page SpectralSequence::build_page(int r) const
{
    Page page;
    page.r = r;
    for (Bidegree b : bidegrees()) {
        const int n = b.total();
        Subspace z = cycles(b.p, b.q, r);
        Subspace bnd = cycles(b.p + 1, b.q - 1, r - 1);
        if (n >= 1) {
            Subspace lower = cycles(b.p - r + 1, b.q + r - 2, r - 1);
            bnd = sum(bnd, image(complex_.d(n - 1), lower));
        }
        if (!z.contains(bnd)) {
            std::ostringstream os;
            os << "internal inconsistency: B not contained in Z at (p,q,r)=(" << b.p << "," << b.q << "," << r << ")";
            throw std::logic_error(os.str());
        }
        QuotientPresentation quot(z, bnd);
        page.entries.emplace(b, PageEntry{b, r, std::move(z), std::move(bnd), std::move(quot)});
    }
    for (const auto& [b, src] : page.entries) {
        Bidegree t = page.target(b);
        auto it = page.entries.find(t);
        if (it == page.entries.end() || b.total() >= complex_.n_max()) {
            page.differentials.emplace(b, RationalMatrix(0, src.dim()));
            continue;
        }
        try {
            page.differentials.emplace(b, induced_map(complex_.d(b.total()), src.quotient, it->second.quotient));
        } catch (const std::domain_error& e) {
            std::ostringstream os;
            os << "internal inconsistency: d does not induce d_" << r << " at (p,q)=(" << b.p << "," << b.q
               << "): " << e.what();
            throw std::logic_error(os.str());
        }
    }
    for (const auto& [b, m] : page.differentials) {
        Bidegree t = page.target(b);
        auto it = page.differentials.find(t);
        if (it == page.differentials.end() || m.rows() == 0)
            continue;
        if (!(it->second * m).is_zero()) {
            std::ostringstream os;
            os << "internal inconsistency: d_" << r << " o d_" << r << " != 0 at (p,q)=(" << b.p << "," << b.q << ")";
            throw std::logic_error(os.str());
        }
    }
    return page;
}

const Page& SpectralSequence::page(int r) const
{
    if (r < 0)
        throw std::invalid_argument("page index must be nonnegative");
    {
        std::lock_guard lock(mutex_);
        if (auto it = pages_.find(r); it != pages_.end())
            return it->second;
    }
    Page built = build_page(r);
    std::lock_guard lock(mutex_);
    return pages_.emplace(r, std::move(built)).first->second;
}

Page SpectralSequence::e_infinity() const
{
    const int r0 = complex_.p_max();
    Page inf = page(r0);
    if (inf.dims() != page(r0 + 1).dims())
        throw std::logic_error("spectral sequence did not stabilize at r = p_max");
    inf.infinity = true;
    return inf;
}

FilteredCohomology SpectralSequence::cohomology() const
{
    FilteredCohomology h;
    const int n_max = complex_.n_max();
    std::vector<Subspace> cocycles;
    for (int n = 0; n <= n_max; ++n) {
        Subspace ker = n < n_max ? kernel(complex_.d(n)) : Subspace::full(complex_.dim(n));
        Subspace im = n > 0 ? image(complex_.d(n - 1)) : Subspace(complex_.dim(n));
        h.groups.emplace_back(ker, im);
        cocycles.push_back(std::move(ker));
    }
    for (int p = 0; p <= complex_.p_max(); ++p) {
        std::vector<Subspace> row;
        for (int n = 0; n <= n_max; ++n) {
            const auto& group = h.groups[static_cast<size_t>(n)];
            Subspace reps = intersect(complex_.filtration(p, n), cocycles[static_cast<size_t>(n)]);
            std::vector<Vector> coords;
            for (size_t i = 0; i < reps.dim(); ++i)
                coords.push_back(group.project(reps.basis().row(i)));
            row.push_back(Subspace::span(coords, group.dim()));
        }
        h.levels.push_back(std::move(row));
    }
    return h;
}

Subspace compute_Z(const FilteredComplex& c, int p, int q, int r)
{
    return SpectralSequence(c).cycles(p, q, r);
}

Page compute_page(const FilteredComplex& c, int r)
{
    return SpectralSequence(c).page(r);
}

HomologyPage page_via_homology(const Page& prev)
{
    HomologyPage out;
    out.r = prev.r + 1;
    for (const auto& [b, entry] : prev.entries) {
        const size_t k = entry.dim();
        const RationalMatrix& outgoing = prev.differential(b);
        Subspace ker = outgoing.rows() == 0 ? Subspace::full(k) : kernel(outgoing);
        Subspace im(k);
        Bidegree src{b.p - prev.r, b.q + prev.r - 1};
        if (auto it = prev.differentials.find(src); it != prev.differentials.end() && it->second.rows() == k)
            im = image(it->second);
        if (!ker.contains(im))
            throw std::logic_error("page homology: image of d_r escapes its kernel");
        out.entries.emplace(b, QuotientPresentation(std::move(ker), std::move(im)));
    }
    return out;
}

void require_same_dims(const HomologyPage& derived, const Page& direct)
{
    if (derived.r != direct.r)
        throw std::logic_error("page index mismatch in Leray cross-check");
    auto a = derived.dims();
    auto b = direct.dims();
    if (a != b) {
        std::ostringstream os;
        os << "H(E_" << derived.r - 1 << ", d) disagrees with E_" << direct.r << ":";
        for (const auto& [bd, dim] : b)
            if (a[bd] != dim)
                os << " (" << bd.p << "," << bd.q << "): " << a[bd] << " vs " << dim;
        throw std::logic_error(os.str());
    }
}

Page compute_E_infinity(const FilteredComplex& c)
{
    return SpectralSequence(c).e_infinity();
}

FilteredCohomology cohomology(const FilteredComplex& c)
{
    return SpectralSequence(c).cohomology();
}

GrComparison compare_gr(const SpectralSequence& ss)
{
    const auto& c = ss.complex();
    GrComparison cmp;
    Page inf = ss.e_infinity();
    cmp.e_infinity = inf.dims();
    FilteredCohomology h = ss.cohomology();
    cmp.cohomology.resize(static_cast<size_t>(c.n_max() + 1));
    cmp.e_infinity_totals.assign(static_cast<size_t>(c.n_max() + 1), 0);
    for (int n = 0; n <= c.n_max(); ++n)
        cmp.cohomology[static_cast<size_t>(n)] = h.dim(n);
    for (const auto& [b, dim] : cmp.e_infinity) {
        cmp.graded[b] = h.graded_dim(b.p, b.total());
        cmp.e_infinity_totals[static_cast<size_t>(b.total())] += dim;
        if (cmp.graded[b] != dim) {
            std::ostringstream os;
            os << "E_inf^{" << b.p << "," << b.q << "} has dim " << dim << " but gr_" << b.p << " H^" << b.total()
               << " has dim " << cmp.graded[b];
            throw std::logic_error(os.str());
        }
    }
    for (int n = 0; n <= c.n_max(); ++n)
        if (cmp.e_infinity_totals[static_cast<size_t>(n)] != cmp.cohomology[static_cast<size_t>(n)])
            throw std::logic_error("sum of E_inf dimensions in total degree " + std::to_string(n) +
                                   " differs from dim H^" + std::to_string(n));
    return cmp;
}

GrComparison compare_gr(const FilteredComplex& c)
{
    return compare_gr(SpectralSequence(c));
}

std::vector<int> page_parity(const FilteredComplex& c, const PageEntry& entry)
{
    if (!c.parity())
        throw std::invalid_argument("page_parity: complex carries no parity");
    const auto& par = (*c.parity())[static_cast<size_t>(entry.bidegree.total())];
    const auto& reps = entry.quotient.representatives();
    std::vector<int> out(reps.rows(), -1);
    for (size_t i = 0; i < reps.rows(); ++i) {
        int seen = -1;
        bool homogeneous = true;
        for (size_t j = 0; j < reps.cols(); ++j) {
            if (sgn(reps(i, j)) == 0)
                continue;
            if (seen == -1)
                seen = par[j];
            else if (seen != par[j])
                homogeneous = false;
        }
        out[i] = homogeneous ? seen : -1;
    }
    return out;
}

bool differentials_reverse_parity(const FilteredComplex& c, const Page& page)
{
    for (const auto& [b, m] : page.differentials) {
        if (m.rows() == 0 || m.is_zero())
            continue;
        auto src = page_parity(c, page.entries.at(b));
        auto dst = page_parity(c, page.entries.at(page.target(b)));
        for (size_t i = 0; i < m.rows(); ++i)
            for (size_t j = 0; j < m.cols(); ++j)
                if (sgn(m(i, j)) != 0 && (src[j] < 0 || dst[i] < 0 || src[j] == dst[i]))
                    return false;
    }
    return true;
}

}  // namespace superspec
