#include "superspec/scenario.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace superspec::scenario {

using cech::Mask;
using cech::ModuleShape;
using cech::SuperFunction;
using cech::SuperSection;

ParseError::ParseError(int line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line)
{
}

namespace {

constexpr std::string_view kHeader = "superspec-scenario 1";

std::string trim(std::string_view s)
{
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return "";
    size_t e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> words(std::string_view s)
{
    std::istringstream is{std::string(s)};
    std::vector<std::string> out;
    for (std::string w; is >> w;)
        out.push_back(w);
    return out;
}

int parse_int(const std::string& s, int line, const std::string& what)
{
    try {
        size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size())
            throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line, "expected an integer for " + what + ", got '" + s + "'");
    }
}

struct Entry {
    int line = 0;
    std::string key;
    std::string rest;   // text after the key
};

// "lhs = rhs" split; lhs words returned separately
std::pair<std::vector<std::string>, std::string> assignment(const Entry& e)
{
    auto eq = e.rest.find('=');
    if (eq == std::string::npos)
        throw ParseError(e.line, "expected '=' in '" + e.key + "' line");
    return {words(e.rest.substr(0, eq)), trim(e.rest.substr(eq + 1))};
}

// ---- bracket lists ----

class ListParser {
public:
    ListParser(std::string_view text, int line) : text_(text), line_(line) {}

    std::vector<std::vector<std::string>> rows()
    {
        std::vector<std::vector<std::string>> out;
        expect('[');
        if (peek() == ']') {
            ++pos_;
            finish();
            return out;
        }
        while (true) {
            out.push_back(row());
            char c = next();
            if (c == ']')
                break;
            if (c != ',')
                fail("expected ',' or ']' between rows");
        }
        finish();
        return out;
    }

    std::vector<std::string> flat()
    {
        auto r = row();
        finish();
        return r;
    }

private:
    std::vector<std::string> row()
    {
        std::vector<std::string> out;
        expect('[');
        if (peek() == ']') {
            ++pos_;
            return out;
        }
        while (true) {
            out.push_back(token());
            char c = next();
            if (c == ']')
                break;
            if (c != ',')
                fail("expected ',' or ']' inside a row");
        }
        return out;
    }

    std::string token()
    {
        skip();
        bool quoted = pos_ < text_.size() && text_[pos_] == '"';
        if (quoted)
            ++pos_;
        size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ']' && text_[pos_] != '"' &&
               text_[pos_] != ' ')
            ++pos_;
        std::string tok(text_.substr(start, pos_ - start));
        if (quoted) {
            if (pos_ >= text_.size() || text_[pos_] != '"')
                fail("unterminated quoted entry");
            ++pos_;
        }
        if (tok.empty())
            fail("empty entry");
        return tok;
    }

    void skip()
    {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t'))
            ++pos_;
    }
    char peek()
    {
        skip();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    char next()
    {
        char c = peek();
        if (c == '\0')
            fail("unexpected end of list");
        ++pos_;
        return c;
    }
    void expect(char c)
    {
        if (next() != c)
            fail(std::string("expected '") + c + "'");
    }
    void finish()
    {
        if (peek() != '\0')
            fail("trailing characters after list");
    }
    [[noreturn]] void fail(const std::string& msg) { throw ParseError(line_, msg); }

    std::string_view text_;
    int line_;
    size_t pos_ = 0;
};

Rational rational_token(const std::string& tok, int line)
{
    try {
        return parse_rational(tok);
    } catch (const std::invalid_argument&) {
        throw ParseError(line, "malformed rational '" + tok + "'");
    }
}

std::vector<Vector> parse_rows(std::string_view text, size_t cols, int line)
{
    std::vector<Vector> out;
    for (const auto& row : ListParser(text, line).rows()) {
        if (row.size() != cols)
            throw ParseError(line, "row has " + std::to_string(row.size()) + " entries, expected " +
                                       std::to_string(cols));
        Vector v;
        for (const auto& tok : row)
            v.push_back(rational_token(tok, line));
        out.push_back(std::move(v));
    }
    return out;
}

RationalMatrix matrix_at(std::string_view text, size_t rows, size_t cols, int line)
{
    if (trim(text) == "zero")
        return RationalMatrix(rows, cols);
    auto r = parse_rows(text, cols, line);
    if (r.size() != rows)
        throw ParseError(line, "matrix has " + std::to_string(r.size()) + " rows, expected " + std::to_string(rows));
    return RationalMatrix::from_rows(r, cols);
}

// ---- expressions ----

struct Term {
    Rational coeff = 1;
    SuperFunction function = SuperFunction::constant(1);
    int generator = -1;
};

std::vector<std::pair<int, std::string>> split_terms(std::string_view text, int line)
{
    std::vector<std::pair<int, std::string>> out;
    std::string current;
    int sign = 1;
    char prev = '\0';
    for (char c : text) {
        if (c == ' ' || c == '\t')
            continue;
        // a sign right after '^' or '(' belongs to an exponent
        if ((c == '+' || c == '-') && prev != '^' && prev != '(') {
            if (!current.empty())
                out.emplace_back(sign, std::move(current));
            else if (prev != '\0')
                throw ParseError(line, "dangling operator in expression");
            current.clear();
            sign = c == '-' ? -1 : 1;
        } else {
            current += c;
        }
        prev = c;
    }
    if (current.empty())
        throw ParseError(line, "expression is empty or ends with an operator");
    out.emplace_back(sign, std::move(current));
    return out;
}

int index_suffix(const std::string& factor, size_t prefix, int line)
{
    std::string digits = factor.substr(prefix);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError(line, "malformed factor '" + factor + "'");
    return parse_int(digits, line, factor);
}

Term parse_term(const std::string& text, int m, const ModuleShape* shape, int line)
{
    Term t;
    std::stringstream ss(text);
    bool have_factor = false;
    for (std::string factor; std::getline(ss, factor, '*');) {
        if (factor.empty())
            throw ParseError(line, "empty factor in term '" + text + "'");
        if (t.generator >= 0)
            throw ParseError(line, "the generator must be the last factor in '" + text + "'");
        have_factor = true;
        char c = factor[0];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            t.coeff *= rational_token(factor, line);
        } else if (factor == "x") {
            t.function = t.function * SuperFunction::x(1);
        } else if (factor.rfind("x^", 0) == 0) {
            std::string e = factor.substr(2);
            if (e.size() > 2 && e.front() == '(' && e.back() == ')')
                e = e.substr(1, e.size() - 2);
            t.function = t.function * SuperFunction::x(parse_int(e, line, "an exponent"));
        } else if (factor.rfind("xi", 0) == 0) {
            int i = index_suffix(factor, 2, line);
            if (i < 1 || i > m)
                throw ParseError(line, "odd coordinate " + factor + " out of range (m = " + std::to_string(m) + ")");
            t.function = t.function * SuperFunction::xi(i);
        } else if ((c == 'e' || c == 'f') && shape) {
            int j = index_suffix(factor, 1, line);
            int count = c == 'e' ? shape->n_even : shape->n_odd;
            if (j < 1 || j > count)
                throw ParseError(line, "generator " + factor + " out of range");
            t.generator = c == 'e' ? j - 1 : shape->n_even + j - 1;
        } else {
            throw ParseError(line, "unknown factor '" + factor + "'");
        }
    }
    if (!have_factor)
        throw ParseError(line, "empty term");
    return t;
}

SuperFunction function_at(std::string_view text, int m, int line)
{
    if (trim(text) == "0")
        return {};
    SuperFunction out;
    for (const auto& [sign, body] : split_terms(text, line)) {
        Term t = parse_term(body, m, nullptr, line);
        out += t.function * (t.coeff * sign);
    }
    return out;
}

SuperSection section_at(std::string_view text, const ModuleShape& shape, int line)
{
    SuperSection out(cech::Chart::U01, static_cast<size_t>(shape.generators()));
    if (trim(text) == "0")
        return out;
    for (const auto& [sign, body] : split_terms(text, line)) {
        Term t = parse_term(body, shape.m, &shape, line);
        if (t.generator < 0)
            throw ParseError(line, "term '" + body + "' names no generator e_j or f_j");
        out.coefficient(t.generator) += t.function * (t.coeff * sign);
    }
    return out;
}

int generator_index(const std::string& name, const ModuleShape& shape, int line)
{
    if (name.size() < 2 || (name[0] != 'e' && name[0] != 'f'))
        throw ParseError(line, "expected a generator name e_j or f_j, got '" + name + "'");
    int j = index_suffix(name, 1, line);
    int count = name[0] == 'e' ? shape.n_even : shape.n_odd;
    if (j < 1 || j > count)
        throw ParseError(line, "generator " + name + " out of range");
    return name[0] == 'e' ? j - 1 : shape.n_even + j - 1;
}

// ---- mode builders ----

using EntryMap = std::map<std::string, std::vector<Entry>>;

const Entry& single(const EntryMap& entries, const std::string& key)
{
    auto it = entries.find(key);
    if (it == entries.end())
        throw ParseError(0, "missing required key '" + key + "'");
    if (it->second.size() > 1)
        throw ParseError(it->second[1].line, "repeated key '" + key + "'");
    return it->second.front();
}

const std::vector<Entry>& all(const EntryMap& entries, const std::string& key)
{
    static const std::vector<Entry> none;
    auto it = entries.find(key);
    return it == entries.end() ? none : it->second;
}

void check_keys(const EntryMap& entries, const std::set<std::string>& allowed, const std::string& mode)
{
    for (const auto& [key, list] : entries)
        if (!allowed.count(key))
            throw ParseError(list.front().line, "unknown key '" + key + "' for mode " + mode);
}

int single_int(const EntryMap& entries, const std::string& key)
{
    const Entry& e = single(entries, key);
    auto w = words(e.rest);
    if (w.size() != 1)
        throw ParseError(e.line, "'" + key + "' takes one integer");
    return parse_int(w[0], e.line, key);
}

std::vector<int> int_list(const EntryMap& entries, const std::string& key)
{
    const Entry& e = single(entries, key);
    std::vector<int> out;
    for (const auto& w : words(e.rest))
        out.push_back(parse_int(w, e.line, key));
    return out;
}

void build_raw(const EntryMap& entries, Scenario& s)
{
    check_keys(entries, {"name", "mode", "n_max", "p_max", "dims", "differential", "filtration", "parity"},
               "raw_complex");
    const int n_max = single_int(entries, "n_max");
    const int p_max = single_int(entries, "p_max");
    auto dims_int = int_list(entries, "dims");
    const int dims_line = single(entries, "dims").line;
    if (n_max < 0 || p_max < 1)
        throw ParseError(single(entries, "n_max").line, "need n_max >= 0 and p_max >= 1");
    if (dims_int.size() != static_cast<size_t>(n_max + 1))
        throw ParseError(dims_line, "dims must list n_max + 1 values");
    std::vector<size_t> dims;
    for (int d : dims_int) {
        if (d < 0)
            throw ParseError(dims_line, "negative dimension");
        dims.push_back(static_cast<size_t>(d));
    }

    std::vector<std::optional<RationalMatrix>> diffs(static_cast<size_t>(n_max));
    for (const auto& e : all(entries, "differential")) {
        auto [lhs, rhs] = assignment(e);
        if (lhs.size() != 1)
            throw ParseError(e.line, "expected 'differential n = matrix'");
        int n = parse_int(lhs[0], e.line, "the differential degree");
        if (n < 0 || n >= n_max)
            throw ParseError(e.line, "differential degree out of range");
        if (diffs[static_cast<size_t>(n)])
            throw ParseError(e.line, "differential " + std::to_string(n) + " given twice");
        diffs[static_cast<size_t>(n)] = matrix_at(rhs, dims[static_cast<size_t>(n) + 1], dims[static_cast<size_t>(n)], e.line);
    }
    std::vector<RationalMatrix> d;
    for (int n = 0; n < n_max; ++n) {
        if (!diffs[static_cast<size_t>(n)])
            throw ParseError(0, "missing differential " + std::to_string(n));
        d.push_back(*diffs[static_cast<size_t>(n)]);
    }

    std::vector<std::vector<std::optional<Subspace>>> given(static_cast<size_t>(p_max + 1),
                                                             std::vector<std::optional<Subspace>>(dims.size()));
    for (const auto& e : all(entries, "filtration")) {
        auto [lhs, rhs] = assignment(e);
        if (lhs.size() != 2)
            throw ParseError(e.line, "expected 'filtration p n = basis'");
        int p = parse_int(lhs[0], e.line, "the filtration index");
        int n = parse_int(lhs[1], e.line, "the degree");
        if (p < 0 || p > p_max || n < 0 || n > n_max)
            throw ParseError(e.line, "filtration index out of range");
        auto& slot = given[static_cast<size_t>(p)][static_cast<size_t>(n)];
        if (slot)
            throw ParseError(e.line, "filtration " + std::to_string(p) + " " + std::to_string(n) + " given twice");
        slot = Subspace::span(parse_rows(rhs, dims[static_cast<size_t>(n)], e.line), dims[static_cast<size_t>(n)]);
    }
    std::vector<std::vector<Subspace>> filtration(static_cast<size_t>(p_max + 1));
    for (int p = 0; p <= p_max; ++p)
        for (size_t n = 0; n < dims.size(); ++n) {
            auto& slot = given[static_cast<size_t>(p)][n];
            if (slot)
                filtration[static_cast<size_t>(p)].push_back(*slot);
            else if (p == 0)
                filtration[0].push_back(Subspace::full(dims[n]));
            else if (p == p_max)
                filtration[static_cast<size_t>(p)].push_back(Subspace::zero(dims[n]));
            else
                throw ParseError(0, "missing filtration " + std::to_string(p) + " " + std::to_string(n));
        }

    std::optional<std::vector<ParityVector>> parity;
    if (!all(entries, "parity").empty()) {
        parity.emplace(dims.size());
        std::vector<bool> seen(dims.size());
        for (const auto& e : all(entries, "parity")) {
            auto [lhs, rhs] = assignment(e);
            if (lhs.size() != 1)
                throw ParseError(e.line, "expected 'parity n = [..]'");
            int n = parse_int(lhs[0], e.line, "the degree");
            if (n < 0 || n > n_max || seen[static_cast<size_t>(n)])
                throw ParseError(e.line, "parity degree out of range or repeated");
            seen[static_cast<size_t>(n)] = true;
            auto toks = ListParser(rhs, e.line).flat();
            if (toks.size() != dims[static_cast<size_t>(n)])
                throw ParseError(e.line, "parity list has the wrong length");
            for (const auto& t : toks) {
                int v = parse_int(t, e.line, "a parity");
                if (v != 0 && v != 1)
                    throw ParseError(e.line, "parity entries must be 0 or 1");
                (*parity)[static_cast<size_t>(n)].push_back(v);
            }
        }
        for (size_t n = 0; n < dims.size(); ++n)
            if (!seen[n])
                throw ParseError(0, "parity given for some degrees but not for " + std::to_string(n));
    }
    s.complex = FilteredComplex(std::move(dims), std::move(d), std::move(filtration), std::move(parity));
}

std::vector<SuperFunction> odd_coordinates(int m)
{
    std::vector<SuperFunction> out;
    for (int i = 1; i <= m; ++i)
        out.push_back(SuperFunction::xi(i));
    return out;
}

// "x" or "xiN" on the left of field/psi lines: -1 for x, N-1 for ξ_N
int coordinate_index(const std::string& name, int m, int line)
{
    if (name == "x")
        return -1;
    if (name.rfind("xi", 0) == 0) {
        int i = index_suffix(name, 2, line);
        if (i >= 1 && i <= m)
            return i - 1;
    }
    throw ParseError(line, "expected x or xi1..xi" + std::to_string(m) + ", got '" + name + "'");
}

void build_sheaf(const EntryMap& entries, Scenario& s)
{
    check_keys(entries, {"name", "mode", "m", "xi_twists", "e_twists", "f_twists", "window", "cocycle", "map",
                         "field", "psi", "mu_override"},
               "super_sheaf");
    auto& model = s.model;
    const int m = single_int(entries, "m");
    model.twists.a = int_list(entries, "xi_twists");
    if (m < 0 || model.twists.a.size() != static_cast<size_t>(m))
        throw ParseError(single(entries, "xi_twists").line, "xi_twists must list m values");
    model.even_twists = entries.count("e_twists") ? int_list(entries, "e_twists") : std::vector<int>{};
    model.odd_twists = entries.count("f_twists") ? int_list(entries, "f_twists") : std::vector<int>{};
    model.window = single_int(entries, "window");
    if (model.window < 1)
        throw ParseError(single(entries, "window").line, "window must be at least 1");
    const ModuleShape shape = model.shape();
    const size_t n = static_cast<size_t>(shape.generators());

    auto read_maps = [&](const std::string& key) {
        std::vector<std::optional<SuperSection>> images(n);
        for (const auto& e : all(entries, key)) {
            auto [lhs, rhs] = assignment(e);
            if (lhs.size() != 1)
                throw ParseError(e.line, "expected '" + key + " g = expression'");
            int g = generator_index(lhs[0], shape, e.line);
            if (images[static_cast<size_t>(g)])
                throw ParseError(e.line, key + " for " + lhs[0] + " given twice");
            images[static_cast<size_t>(g)] = section_at(rhs, shape, e.line);
        }
        return images;
    };
    auto read_coordinates = [&](const std::string& key) {
        std::optional<SuperFunction> x;
        std::vector<std::optional<SuperFunction>> xi(static_cast<size_t>(m));
        for (const auto& e : all(entries, key)) {
            auto [lhs, rhs] = assignment(e);
            if (lhs.size() != 1)
                throw ParseError(e.line, "expected '" + key + " x|xiN = expression'");
            int i = coordinate_index(lhs[0], m, e.line);
            auto& slot = i < 0 ? x : xi[static_cast<size_t>(i)];
            if (slot)
                throw ParseError(e.line, key + " for " + lhs[0] + " given twice");
            slot = function_at(rhs, m, e.line);
        }
        return std::pair{x, xi};
    };

    if (!entries.count("cocycle")) {
        for (const char* key : {"map", "field", "psi", "mu_override"})
            if (entries.count(key))
                throw ParseError(entries.at(key).front().line, std::string("'") + key + "' needs a cocycle line");
        return;
    }
    const Entry& ce = single(entries, "cocycle");
    const std::string form = trim(ce.rest);
    try {
        if (form == "exp") {
            if (entries.count("psi"))
                throw ParseError(entries.at("psi").front().line, "'psi' belongs to 'cocycle direct'");
            auto images = read_maps("map");
            auto [x, xi] = read_coordinates("field");
            std::vector<SuperSection> a;
            for (auto& img : images)
                a.push_back(img.value_or(SuperSection(cech::Chart::U01, n)));
            std::vector<SuperFunction> fxi;
            for (auto& f : xi)
                fxi.push_back(f.value_or(SuperFunction()));
            s.cocycle = CocycleForm::Exp;
            s.generator = deform::QuasiDerivation(shape, std::move(a), x.value_or(SuperFunction()), std::move(fxi));
            model.transition = deform::exp(*s.generator);
        } else if (form == "direct") {
            if (entries.count("field"))
                throw ParseError(entries.at("field").front().line, "'field' belongs to 'cocycle exp'");
            auto images = read_maps("map");
            auto [x, xi] = read_coordinates("psi");
            std::vector<SuperSection> phi;
            for (size_t g = 0; g < n; ++g)
                phi.push_back(images[g].value_or(
                    SuperSection::generator(cech::Chart::U01, n, static_cast<int>(g))));
            auto coords = odd_coordinates(m);
            std::vector<SuperFunction> psi;
            for (size_t i = 0; i < xi.size(); ++i)
                psi.push_back(xi[i].value_or(coords[i]));
            s.cocycle = CocycleForm::Direct;
            model.transition =
                deform::QuasiAutomorphism(shape, std::move(phi), x.value_or(SuperFunction::x()), std::move(psi));
        } else {
            throw ParseError(ce.line, "cocycle must be 'exp' or 'direct'");
        }
        if (entries.count("mu_override")) {
            auto images = read_maps("mu_override");
            std::vector<SuperSection> a;
            for (auto& img : images)
                a.push_back(img.value_or(SuperSection(cech::Chart::U01, n)));
            s.mu_override = deform::QuasiDerivation::linear(shape, std::move(a));
        }
        model.check();
    } catch (const std::invalid_argument& err) {
        throw ParseError(ce.line, std::string("invalid cocycle: ") + err.what());
    }
}

}  // namespace

Scenario parse(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    bool header = false;
    EntryMap entries;
    while (std::getline(in, raw)) {
        ++line_no;
        auto hash = raw.find('#');
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty())
            continue;
        if (!header) {
            if (line != kHeader)
                throw ParseError(line_no, "expected header '" + std::string(kHeader) + "'");
            header = true;
            continue;
        }
        auto sp = line.find_first_of(" \t");
        Entry e{line_no, line.substr(0, sp), sp == std::string::npos ? "" : trim(line.substr(sp))};
        entries[e.key].push_back(std::move(e));
    }
    if (!header)
        throw ParseError(0, "empty scenario");

    Scenario s;
    if (entries.count("name"))
        s.name = single(entries, "name").rest;
    const Entry& mode = single(entries, "mode");
    if (mode.rest == "raw_complex") {
        s.mode = Mode::RawComplex;
        build_raw(entries, s);
    } else if (mode.rest == "super_sheaf") {
        s.mode = Mode::SuperSheaf;
        build_sheaf(entries, s);
    } else {
        throw ParseError(mode.line, "mode must be raw_complex or super_sheaf");
    }
    return s;
}

Scenario load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError(0, "cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

RationalMatrix parse_matrix(std::string_view text, size_t rows, size_t cols)
{
    return matrix_at(text, rows, cols, 0);
}

SuperFunction parse_function(std::string_view text, int m)
{
    return function_at(text, m, 0);
}

SuperSection parse_section(std::string_view text, const ModuleShape& shape)
{
    return section_at(text, shape, 0);
}

std::string format_matrix(const RationalMatrix& m)
{
    std::ostringstream os;
    os << "[";
    for (size_t r = 0; r < m.rows(); ++r) {
        os << (r ? ", [" : "[");
        for (size_t c = 0; c < m.cols(); ++c)
            os << (c ? ", " : "") << to_string(m(r, c));
        os << "]";
    }
    os << "]";
    return os.str();
}

std::string write_complex(const FilteredComplex& c, const std::string& name)
{
    std::ostringstream os;
    os << kHeader << "\n";
    if (!name.empty())
        os << "name " << name << "\n";
    os << "mode raw_complex\n";
    os << "n_max " << c.n_max() << "\np_max " << c.p_max() << "\ndims";
    for (size_t d : c.dims())
        os << " " << d;
    os << "\n";
    for (int n = 0; n < c.n_max(); ++n)
        os << "differential " << n << " = " << (c.d(n).is_zero() ? "zero" : format_matrix(c.d(n))) << "\n";
    for (int p = 0; p <= c.p_max(); ++p)
        for (int n = 0; n <= c.n_max(); ++n)
            os << "filtration " << p << " " << n << " = " << format_matrix(c.stored_filtration(p, n).basis()) << "\n";
    if (c.parity())
        for (int n = 0; n <= c.n_max(); ++n) {
            os << "parity " << n << " = [";
            const auto& par = (*c.parity())[static_cast<size_t>(n)];
            for (size_t i = 0; i < par.size(); ++i)
                os << (i ? ", " : "") << par[i];
            os << "]\n";
        }
    return os.str();
}

std::string write(const Scenario& s)
{
    if (s.mode == Mode::RawComplex)
        return write_complex(s.complex, s.name);
    const auto& model = s.model;
    const ModuleShape shape = model.shape();
    std::ostringstream os;
    os << kHeader << "\n";
    if (!s.name.empty())
        os << "name " << s.name << "\n";
    os << "mode super_sheaf\nm " << model.m() << "\nxi_twists";
    for (int a : model.twists.a)
        os << " " << a;
    os << "\ne_twists";
    for (int b : model.even_twists)
        os << " " << b;
    os << "\nf_twists";
    for (int c : model.odd_twists)
        os << " " << c;
    os << "\nwindow " << model.window << "\n";

    auto write_coords = [&](const std::string& key, const SuperFunction& x, const std::vector<SuperFunction>& xi,
                            bool skip_identity) {
        if (!(skip_identity ? x == SuperFunction::x() : x.is_zero()))
            os << key << " x = " << cech::format(x) << "\n";
        for (size_t i = 0; i < xi.size(); ++i)
            if (!(skip_identity ? xi[i] == SuperFunction::xi(static_cast<int>(i) + 1) : xi[i].is_zero()))
                os << key << " xi" << i + 1 << " = " << cech::format(xi[i]) << "\n";
    };
    if (s.cocycle == CocycleForm::Exp && s.generator) {
        os << "cocycle exp\n";
        for (int g = 0; g < shape.generators(); ++g)
            if (!s.generator->images()[static_cast<size_t>(g)].is_zero())
                os << "map " << shape.name(g) << " = " << cech::format(s.generator->images()[static_cast<size_t>(g)], shape)
                   << "\n";
        write_coords("field", s.generator->field_x(), s.generator->field_xi(), false);
    } else if (s.cocycle != CocycleForm::None && model.transition) {
        const auto& a = *model.transition;
        os << "cocycle direct\n";
        for (int g = 0; g < shape.generators(); ++g) {
            const auto& img = a.images()[static_cast<size_t>(g)];
            if (!(img == SuperSection::generator(cech::Chart::U01, img.generators(), g)))
                os << "map " << shape.name(g) << " = " << cech::format(img, shape) << "\n";
        }
        write_coords("psi", a.psi_x(), a.psi_xi(), true);
    }
    if (s.mu_override)
        for (int g = 0; g < shape.generators(); ++g)
            if (!s.mu_override->images()[static_cast<size_t>(g)].is_zero())
                os << "mu_override " << shape.name(g) << " = "
                   << cech::format(s.mu_override->images()[static_cast<size_t>(g)], shape) << "\n";
    return os.str();
}

}  // namespace superspec::scenario
