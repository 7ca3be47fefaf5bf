#include "superspec/filtered_complex.hpp"

#include <sstream>
#include <stdexcept>

namespace superspec {

FilteredComplex::FilteredComplex(std::vector<size_t> dims, std::vector<RationalMatrix> differentials,
                                 std::vector<std::vector<Subspace>> filtration,
                                 std::optional<std::vector<ParityVector>> parity)
    : dims_(std::move(dims)), d_(std::move(differentials)), filtration_(std::move(filtration)),
      parity_(std::move(parity))
{
    if (dims_.empty())
        throw std::invalid_argument("filtered complex needs at least one cochain group");
    if (d_.size() != dims_.size() - 1)
        throw std::invalid_argument("filtered complex: expected one differential per degree below n_max");
    for (size_t n = 0; n < d_.size(); ++n)
        if (d_[n].rows() != dims_[n + 1] || d_[n].cols() != dims_[n])
            throw std::invalid_argument("filtered complex: d^" + std::to_string(n) + " has shape " +
                                        std::to_string(d_[n].rows()) + "x" + std::to_string(d_[n].cols()) +
                                        ", expected " + std::to_string(dims_[n + 1]) + "x" +
                                        std::to_string(dims_[n]));
    if (filtration_.size() < 1)
        throw std::invalid_argument("filtered complex: filtration needs p_max >= 0");
    for (size_t p = 0; p < filtration_.size(); ++p) {
        if (filtration_[p].size() != dims_.size())
            throw std::invalid_argument("filtered complex: filtration level " + std::to_string(p) +
                                        " does not cover every degree");
        for (size_t n = 0; n < dims_.size(); ++n)
            if (filtration_[p][n].ambient_dim() != dims_[n])
                throw std::invalid_argument("filtered complex: F^" + std::to_string(p) + "C^" +
                                            std::to_string(n) + " lives in the wrong ambient space");
    }
    if (parity_) {
        if (parity_->size() != dims_.size())
            throw std::invalid_argument("filtered complex: parity must be given for every degree");
        for (size_t n = 0; n < dims_.size(); ++n) {
            if ((*parity_)[n].size() != dims_[n])
                throw std::invalid_argument("filtered complex: parity vector length mismatch in degree " +
                                            std::to_string(n));
            for (int v : (*parity_)[n])
                if (v != 0 && v != 1)
                    throw std::invalid_argument("filtered complex: parity entries must be 0 or 1");
        }
    }
    terminal_.reserve(dims_.size());
    for (size_t n = 0; n < dims_.size(); ++n)
        terminal_.emplace_back(0, dims_[n]);
}

size_t FilteredComplex::dim(int n) const
{
    if (n < 0 || n > n_max())
        return 0;
    return dims_[static_cast<size_t>(n)];
}

const RationalMatrix& FilteredComplex::d(int n) const
{
    if (n < 0 || n > n_max())
        throw std::out_of_range("FilteredComplex::d: degree out of range");
    if (n == n_max())
        return terminal_[static_cast<size_t>(n)];
    return d_[static_cast<size_t>(n)];
}

Subspace FilteredComplex::filtration(int p, int n) const
{
    if (n < 0 || n > n_max())
        return Subspace(0);
    if (p <= 0)
        return Subspace::full(dim(n));
    if (p >= p_max())
        return Subspace(dim(n));
    return filtration_[static_cast<size_t>(p)][static_cast<size_t>(n)];
}

std::string ValidationReport::to_string() const
{
    if (ok())
        return "valid\n";
    std::ostringstream os;
    os << "invalid: " << issues.size() << " violation(s)\n";
    for (const auto& i : issues) {
        os << "  [" << i.invariant << "]";
        if (i.p >= 0)
            os << " p=" << i.p;
        if (i.n >= 0)
            os << " n=" << i.n;
        os << ": " << i.message << "\n";
    }
    return os.str();
}

ValidationReport validate(const FilteredComplex& c)
{
    ValidationReport report;
    auto issue = [&](std::string tag, int p, int n, std::string msg) {
        report.issues.push_back({std::move(tag), p, n, std::move(msg)});
    };
    const int n_max = c.n_max();
    const int p_max = c.p_max();

    for (int n = 0; n + 2 <= n_max; ++n)
        if (!(c.d(n + 1) * c.d(n)).is_zero())
            issue("d^2", -1, n, "d^" + std::to_string(n + 1) + " * d^" + std::to_string(n) + " is nonzero");

    for (int n = 0; n <= n_max; ++n) {
        if (c.stored_filtration(0, n).dim() != c.dim(n))
            issue("F^0", 0, n, "F^0 C^n must be all of C^n");
        if (!c.stored_filtration(p_max, n).is_zero())
            issue("F^pmax", p_max, n, "F^{p_max} C^n must be zero");
        for (int p = 0; p < p_max; ++p)
            if (!c.stored_filtration(p, n).contains(c.stored_filtration(p + 1, n)))
                issue("nested", p + 1, n, "F^{p+1} C^n is not contained in F^p C^n");
    }

    for (int n = 0; n < n_max; ++n)
        for (int p = 0; p <= p_max; ++p) {
            const Subspace& src = c.stored_filtration(p, n);
            const Subspace& dst = c.stored_filtration(p, n + 1);
            if (!dst.contains(image(c.d(n), src)))
                issue("filtered", p, n, "d(F^p C^n) is not contained in F^p C^{n+1}");
        }

    if (c.parity()) {
        const auto& par = *c.parity();
        for (int n = 0; n < n_max; ++n) {
            const auto& d = c.d(n);
            for (size_t r = 0; r < d.rows(); ++r)
                for (size_t col = 0; col < d.cols(); ++col)
                    if (sgn(d(r, col)) != 0 && par[n + 1][r] == par[n][col]) {
                        issue("parity", -1, n,
                              "d^" + std::to_string(n) + " entry (" + std::to_string(r) + "," +
                                  std::to_string(col) + ") connects basis vectors of equal parity");
                        r = d.rows();
                        break;
                    }
        }
    }
    return report;
}

FilteredComplex zero_differential_complex(std::vector<size_t> dims, std::vector<std::vector<Subspace>> filtration)
{
    std::vector<RationalMatrix> d;
    for (size_t n = 0; n + 1 < dims.size(); ++n)
        d.emplace_back(dims[n + 1], dims[n]);
    return FilteredComplex(std::move(dims), std::move(d), std::move(filtration));
}

}  // namespace superspec
