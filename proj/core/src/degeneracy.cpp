#include "superspec/degeneracy.hpp"

#include <future>
#include <sstream>
#include <stdexcept>

namespace superspec::deform {

using cech::Chart;

namespace {

std::string matrix_text(const RationalMatrix& m)
{
    std::ostringstream os;
    os << "[";
    for (size_t r = 0; r < m.rows(); ++r) {
        os << (r ? "; " : "");
        for (size_t c = 0; c < m.cols(); ++c)
            os << (c ? " " : "") << superspec::to_string(m(r, c));
    }
    os << "]";
    return os.str();
}

std::vector<DifferentialCheck> zero_checks(const SpectralSequence& ss, int r, const std::string& tag)
{
    std::vector<DifferentialCheck> out;
    const Page& page = ss.page(r);
    for (const auto& [source, d] : page.differentials) {
        DifferentialCheck check;
        check.r = r;
        check.source = source;
        check.actual = d;
        check.expected = RationalMatrix(d.rows(), d.cols());
        check.pass = d.is_zero();
        check.label = "d_" + std::to_string(r) + " = 0" + tag;
        out.push_back(std::move(check));
    }
    return out;
}

bool all_pass(const std::vector<DifferentialCheck>& checks, int r, const std::string& label)
{
    for (const auto& c : checks)
        if (c.r == r && c.label == label && !c.pass)
            return false;
    return true;
}

}  // namespace

std::string DegeneracyReport::details() const
{
    std::ostringstream os;
    for (const auto& c : checks)
        if (!c.pass)
            os << c.label << " fails at (p,q,r) = (" << c.source.p << "," << c.source.q << "," << c.r
               << "): actual " << matrix_text(c.actual) << ", expected " << matrix_text(c.expected) << "\n";
    return os.str();
}

RationalMatrix mu_induced_map(const cech::CechComplex& cc, const Page& page, Bidegree source,
                              const QuasiDerivation& mu)
{
    if (source.total() != 0)
        throw std::invalid_argument("mu_induced_map: source must be a 0-cochain bidegree");
    const auto& layout = cc.layout;
    const ModuleShape shape = layout.model().shape();
    const PageEntry& src = page.entries.at(source);
    const Bidegree tgt = page.target(source);
    auto target_it = page.entries.find(tgt);
    RationalMatrix out(target_it == page.entries.end() ? 0 : target_it->second.dim(), src.dim());
    if (target_it == page.entries.end())
        return out;
    const PageEntry& dst = target_it->second;

    const auto& reps = src.quotient.representatives();
    const size_t n0 = cc.u0_dim();
    for (size_t col = 0; col < reps.rows(); ++col) {
        // graded piece of the U1 component in filtration degree p
        SuperSection c1(Chart::U01, static_cast<size_t>(shape.generators()));
        for (size_t i = 0; i < layout.dim(Chart::U1); ++i) {
            const Rational& v = reps(col, n0 + i);
            if (sgn(v) != 0 && layout.degree(Chart::U1, i) == source.p)
                c1 += layout.restrict(Chart::U1, layout.basis(Chart::U1)[i]) * v;
        }
        Vector y = layout.coordinates(Chart::U01, mu.apply(c1));
        for (auto& v : y)
            v = -v;
        Vector coords = dst.quotient.project(y);
        for (size_t r = 0; r < coords.size(); ++r)
            out(r, col) = coords[r];
    }
    return out;
}

DegeneracyReport verify_degeneracy(const cech::SheafModel& model, const std::optional<QuasiDerivation>& mu_override)
{
    DegeneracyReport report;
    const ModuleShape shape = model.shape();
    const QuasiAutomorphism a = model.transition.value_or(QuasiAutomorphism::identity(shape));
    OrderResult ord = order(a, model);
    report.order = ord.order;

    cech::SheafModel normalized = model;
    normalized.transition = ord.normalized;
    auto cc = cech::build_cech_complex(normalized);
    SpectralSequence ss(cc.complex);
    const int p_max = cc.complex.p_max();

    std::ostringstream summary;
    if (ord.order) {
        const int k = *ord.order;
        summary << "order " << k;
        // page lookups are thread safe, so the zero checks run concurrently
        std::vector<std::future<std::vector<DifferentialCheck>>> jobs;
        for (int r = 1; r < k; ++r)
            jobs.push_back(std::async(std::launch::async, [&ss, r] { return zero_checks(ss, r, ""); }));
        for (auto& job : jobs)
            for (auto& c : job.get())
                report.checks.push_back(std::move(c));
        for (int r = 1; r < k; ++r)
            summary << "; d_" << r << " = 0: " << (all_pass(report.checks, r, "d_" + std::to_string(r) + " = 0") ? "PASS" : "FAIL");

        const QuasiDerivation mu_k = mu_override.value_or(mu(ord.normalized, k));
        const Page& page = ss.page(k);
        const std::string label = "d_" + std::to_string(k) + " = mu_" + std::to_string(k);
        for (const auto& [source, d] : page.differentials) {
            DifferentialCheck check;
            check.r = k;
            check.source = source;
            check.actual = d;
            check.label = label;
            if (source.total() == 0) {
                try {
                    check.expected = mu_induced_map(cc, page, source, mu_k);
                } catch (const std::domain_error&) {
                    // the derivation does not induce a map on E_k
                    check.expected = RationalMatrix(d.rows(), d.cols());
                    check.pass = false;
                    report.checks.push_back(std::move(check));
                    continue;
                }
            } else {
                check.expected = RationalMatrix(d.rows(), d.cols());
            }
            check.pass = check.actual == check.expected;
            report.checks.push_back(std::move(check));
        }
        summary << "; " << label << ": " << (all_pass(report.checks, k, label) ? "PASS" : "FAIL");
    } else {
        summary << "order ∞";
        for (int r = 1; r <= p_max; ++r)
            for (auto& c : zero_checks(ss, r, ""))
                report.checks.push_back(std::move(c));
        // the cocycle as given, before normalization
        SpectralSequence original(cech::build_cech_complex(model).complex);
        for (int r = 1; r <= p_max; ++r)
            for (auto& c : zero_checks(original, r, " (twisted)"))
                report.checks.push_back(std::move(c));
        bool ok = true;
        for (const auto& c : report.checks)
            ok = ok && c.pass;
        ok = ok && ss.page(1).dims() == ss.e_infinity().dims();
        summary << "; degeneracy at E_1: " << (ok ? "PASS" : "FAIL");
        report.pass = ok;
    }
    for (const auto& c : report.checks)
        report.pass = report.pass && c.pass;
    report.summary = summary.str();
    return report;
}

}  // namespace superspec::deform
