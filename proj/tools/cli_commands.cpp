#include "cli_commands.hpp"

#include "superspec/cech_complex.hpp"
#include "superspec/degeneracy.hpp"
#include "superspec/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace superspec::cli {

namespace {

struct Table {
    std::string title;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string latex_escape(const std::string& cell)
{
    std::string out;
    for (char c : cell) {
        if (c == '\\')
            out += "$\\backslash$";
        else if (c == '_' || c == '&' || c == '%' || c == '#')
            out += std::string("\\") + c;
        else if (c == '^')
            out += "\\^{}";
        else
            out += c;
    }
    return out;
}

std::string render(const Table& t, Format format)
{
    std::ostringstream os;
    switch (format) {
    case Format::Text: {
        std::vector<size_t> width(t.header.size());
        for (size_t c = 0; c < t.header.size(); ++c)
            width[c] = t.header[c].size();
        for (const auto& row : t.rows)
            for (size_t c = 0; c < row.size(); ++c)
                width[c] = std::max(width[c], row[c].size());
        auto line = [&](const std::vector<std::string>& cells) {
            for (size_t c = 0; c < cells.size(); ++c) {
                os << (c ? "  " : "") << std::string(width[c] - cells[c].size(), ' ') << cells[c];
            }
            os << "\n";
        };
        os << t.title << "\n";
        line(t.header);
        for (const auto& row : t.rows)
            line(row);
        break;
    }
    case Format::Csv: {
        os << "# " << t.title << "\n";
        auto line = [&](const std::vector<std::string>& cells) {
            for (size_t c = 0; c < cells.size(); ++c)
                os << (c ? "," : "") << cells[c];
            os << "\n";
        };
        line(t.header);
        for (const auto& row : t.rows)
            line(row);
        break;
    }
    case Format::Latex: {
        os << "% " << t.title << "\n\\begin{tabular}{" << std::string(t.header.size(), 'r') << "}\n";
        auto line = [&](const std::vector<std::string>& cells) {
            for (size_t c = 0; c < cells.size(); ++c)
                os << (c ? " & " : "") << latex_escape(cells[c]);
            os << " \\\\\n";
        };
        line(t.header);
        os << "\\hline\n";
        for (const auto& row : t.rows)
            line(row);
        os << "\\end{tabular}\n";
        break;
    }
    }
    return os.str();
}

std::string note(const std::string& text, Format format)
{
    const std::string prefix = format == Format::Csv ? "# " : format == Format::Latex ? "% " : "";
    std::istringstream in(text);
    std::string out;
    for (std::string line; std::getline(in, line);)
        out += prefix + line + "\n";
    return out;
}

struct Loaded {
    scenario::Scenario scenario;
    std::optional<cech::CechComplex> cech;   // super_sheaf only
    FilteredComplex complex;
};

// Parses and validates; on failure fills `result` and returns nullopt.
std::optional<Loaded> load(const Options& opts, Result& result, bool check_window = true)
{
    Loaded l;
    try {
        l.scenario = scenario::load(opts.path);
    } catch (const scenario::ParseError& e) {
        result.code = kParseError;
        result.err = std::string("parse error: ") + e.what() + "\n";
        return std::nullopt;
    }
    if (l.scenario.mode == scenario::Mode::RawComplex) {
        auto report = validate(l.scenario.complex);
        if (!report.ok()) {
            result.code = kInvariantViolation;
            result.err = "invalid filtered complex:\n" + report.to_string();
            return std::nullopt;
        }
        l.complex = l.scenario.complex;
        return l;
    }
    auto& model = l.scenario.model;
    if (opts.window_override) {
        if (*opts.window_override < 1) {
            result.code = kUsage;
            result.err = "--window-override must be at least 1\n";
            return std::nullopt;
        }
        model.window = *opts.window_override;
    }
    if (check_window) {
        auto stability = cech::stabilization_check(model);
        if (!stability.stable) {
            result.code = kWindowUnstable;
            result.err = stability.message + "\n";
            return std::nullopt;
        }
    }
    l.cech = cech::build_cech_complex(model);
    l.complex = l.cech->complex;
    auto report = validate(l.complex);
    if (!report.ok()) {
        result.code = kInvariantViolation;
        result.err = "invalid twisted complex:\n" + report.to_string();
        return std::nullopt;
    }
    return l;
}

std::string dims_line(const FilteredComplex& c)
{
    std::ostringstream os;
    os << "n_max " << c.n_max() << ", p_max " << c.p_max() << ", dims";
    for (size_t d : c.dims())
        os << " " << d;
    return os.str();
}

// smallest r with every d_s = 0 for r <= s <= p_max
int stable_page(const SpectralSequence& ss)
{
    int r = ss.complex().p_max();
    while (r > 0 && ss.page(r - 1).all_differentials_zero())
        --r;
    return r;
}

Table page_table(const SpectralSequence& ss, int r, int stable)
{
    const Page& page = ss.page(r);
    const auto& c = ss.complex();
    Table t;
    t.title = "E_" + std::to_string(r) + (r >= stable ? " (= E_inf)" : "");
    t.header.push_back("q\\p");
    for (int p = 0; p <= c.p_max(); ++p)
        t.header.push_back(std::to_string(p));
    for (int q = c.n_max(); q >= -c.p_max(); --q) {
        std::vector<std::string> row{std::to_string(q)};
        bool any = false;
        for (int p = 0; p <= c.p_max(); ++p) {
            auto it = page.entries.find({p, q});
            any = any || it != page.entries.end();
            row.push_back(it == page.entries.end() ? "." : std::to_string(it->second.dim()));
        }
        if (any)
            t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace

std::optional<Format> parse_format(const std::string& name)
{
    if (name == "text")
        return Format::Text;
    if (name == "csv")
        return Format::Csv;
    if (name == "latex")
        return Format::Latex;
    return std::nullopt;
}

Result run_validate(const Options& opts)
{
    Result result;
    auto l = load(opts, result);
    if (!l)
        return result;
    std::ostringstream os;
    if (l->cech)
        os << "valid super_sheaf scenario: m " << l->scenario.model.m() << ", rank " << l->scenario.model.even_twists.size()
           << "|" << l->scenario.model.odd_twists.size() << ", window stable at N = " << l->scenario.model.window << "\n";
    os << "valid filtered complex: " << dims_line(l->complex) << "\n";
    if (opts.emit_complex) {
        std::ofstream out(*opts.emit_complex);
        if (!out) {
            result.code = kUsage;
            result.err = "cannot write " + *opts.emit_complex + "\n";
            return result;
        }
        out << scenario::write_complex(l->complex, l->scenario.name);
    }
    result.out = note(os.str(), opts.format);
    return result;
}

Result run_pages(const Options& opts)
{
    Result result;
    auto l = load(opts, result);
    if (!l)
        return result;
    SpectralSequence ss(l->complex);
    const int r_max = opts.r_max.value_or(l->complex.p_max());
    if (r_max < 0) {
        result.code = kUsage;
        result.err = "--r-max must be non-negative\n";
        return result;
    }
    const int stable = stable_page(ss);
    std::ostringstream os;
    os << note("stabilizes at r = " + std::to_string(stable), opts.format);
    for (int r = 0; r <= r_max; ++r)
        os << render(page_table(ss, r, stable), opts.format);
    result.out = os.str();
    return result;
}

Result run_cohomology(const Options& opts)
{
    Result result;
    auto l = load(opts, result);
    if (!l)
        return result;
    SpectralSequence ss(l->complex);
    auto cmp = compare_gr(ss);
    const auto& c = l->complex;
    Table totals{"dim H^n against the E_inf totals", {"n", "dim H^n", "sum E_inf"}, {}};
    bool agree = true;
    for (int n = 0; n <= c.n_max(); ++n) {
        size_t h = cmp.cohomology[static_cast<size_t>(n)];
        size_t e = cmp.e_infinity_totals[static_cast<size_t>(n)];
        agree = agree && h == e;
        totals.rows.push_back({std::to_string(n), std::to_string(h), std::to_string(e)});
    }
    Table graded{"dim gr_p H^n", {"p\\n"}, {}};
    for (int n = 0; n <= c.n_max(); ++n)
        graded.header.push_back(std::to_string(n));
    for (int p = 0; p <= c.p_max(); ++p) {
        std::vector<std::string> row{std::to_string(p)};
        for (int n = 0; n <= c.n_max(); ++n)
            row.push_back(std::to_string(cmp.graded.at({p, n - p})));
        graded.rows.push_back(std::move(row));
    }
    result.out = render(totals, opts.format) + render(graded, opts.format) +
                 note(std::string("E_inf totals match dim H: ") + (agree ? "yes" : "no"), opts.format);
    if (!agree)
        result.code = kVerificationFailure;
    return result;
}

Result run_order(const Options& opts)
{
    Result result;
    auto l = load(opts, result, false);
    if (!l)
        return result;
    if (!l->cech) {
        result.code = kUsage;
        result.err = "order needs a super_sheaf scenario\n";
        return result;
    }
    const auto& model = l->scenario.model;
    try {
        auto ord = deform::order(model.transition.value_or(deform::QuasiAutomorphism::identity(model.shape())), model);
        Table stages{"normalization stages", {"degree", "mu", "status"}, {}};
        for (const auto& st : ord.stages)
            stages.rows.push_back({std::to_string(st.degree),
                                   st.mu.is_zero() ? "0" : "nonzero",
                                   st.obstructed ? "obstructed" : st.mu.is_zero() ? "vanishes" : "gauged away"});
        result.out = note("order " + ord.to_string(), opts.format) + render(stages, opts.format);
    } catch (const std::invalid_argument& e) {
        result.code = kInvariantViolation;
        result.err = std::string("order: ") + e.what() + "\n";
    }
    return result;
}

Result run_verify(const Options& opts)
{
    Result result;
    auto l = load(opts, result);
    if (!l)
        return result;
    if (!l->cech) {
        result.code = kUsage;
        result.err = "verify needs a super_sheaf scenario\n";
        return result;
    }
    try {
        auto report = deform::verify_degeneracy(l->scenario.model, l->scenario.mu_override);
        // one row per check, counted over source bidegrees
        Table checks{"differential checks", {"r", "check", "bidegrees", "passed"}, {}};
        std::map<std::pair<int, std::string>, std::pair<int, int>> counts;
        std::vector<std::pair<int, std::string>> order;
        for (const auto& c : report.checks) {
            auto key = std::pair{c.r, c.label};
            if (!counts.count(key))
                order.push_back(key);
            auto& [total, passed] = counts[key];
            ++total;
            passed += c.pass ? 1 : 0;
        }
        for (const auto& key : order)
            checks.rows.push_back({std::to_string(key.first), key.second, std::to_string(counts[key].first),
                                   std::to_string(counts[key].second)});
        result.out = note(report.summary, opts.format) + render(checks, opts.format);
        if (!report.pass) {
            result.code = kVerificationFailure;
            result.err = report.details();
        }
    } catch (const std::invalid_argument& e) {
        result.code = kInvariantViolation;
        result.err = std::string("verify: ") + e.what() + "\n";
    }
    return result;
}

}  // namespace superspec::cli
