#include "generators.hpp"

#include "superspec/subspace.hpp"

#include <algorithm>

namespace gen {

using superspec::RationalMatrix;
using superspec::Subspace;
using superspec::Vector;

RationalMatrix random_matrix(std::mt19937& rng, size_t rows, size_t cols, int lo, int hi, double density)
{
    std::uniform_int_distribution<int> val(lo, hi);
    std::bernoulli_distribution keep(density);
    RationalMatrix m(rows, cols);
    for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < cols; ++c)
            if (keep(rng))
                m(r, c) = val(rng);
    return m;
}

RationalMatrix random_invertible(std::mt19937& rng, size_t n)
{
    // unit lower times unit upper, then a random row permutation
    std::uniform_int_distribution<int> val(-2, 2);
    RationalMatrix l = RationalMatrix::identity(n), u = RationalMatrix::identity(n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < i; ++j) {
            l(i, j) = val(rng);
            u(j, i) = val(rng);
        }
    RationalMatrix lu = l * u;
    std::vector<size_t> perm(n);
    for (size_t i = 0; i < n; ++i)
        perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    RationalMatrix out(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            out(i, j) = lu(perm[i], j);
    return out;
}

superspec::FilteredComplex random_filtered_complex(std::mt19937& rng, const ComplexShape& shape)
{
    std::uniform_int_distribution<int> n_dist(0, shape.n_max_limit);
    std::uniform_int_distribution<int> p_dist(1, shape.p_max_limit);
    std::uniform_int_distribution<size_t> dim_dist(0, shape.dim_limit);
    const int n_max = n_dist(rng);
    const int p_max = p_dist(rng);
    std::uniform_int_distribution<int> level_dist(0, p_max - 1);

    std::vector<size_t> dims(static_cast<size_t>(n_max + 1));
    for (auto& d : dims)
        d = dim_dist(rng);

    // levels[n][i]: filtration level of basis vector i of C^n; used[n][i]: already a source or target
    std::vector<std::vector<int>> levels(dims.size());
    std::vector<std::vector<int>> role(dims.size());  // 0 free, 1 source, 2 target
    for (size_t n = 0; n < dims.size(); ++n) {
        levels[n].resize(dims[n]);
        role[n].assign(dims[n], 0);
        for (auto& l : levels[n])
            l = level_dist(rng);
    }
    std::vector<RationalMatrix> d;
    for (size_t n = 0; n + 1 < dims.size(); ++n) {
        RationalMatrix dn(dims[n + 1], dims[n]);
        std::vector<size_t> sources, targets;
        for (size_t i = 0; i < dims[n]; ++i)
            if (role[n][i] == 0)
                sources.push_back(i);
        for (size_t j = 0; j < dims[n + 1]; ++j)
            targets.push_back(j);
        std::shuffle(sources.begin(), sources.end(), rng);
        std::shuffle(targets.begin(), targets.end(), rng);
        std::bernoulli_distribution pair_up(0.7);
        for (size_t i : sources) {
            if (!pair_up(rng))
                continue;
            // a target with level >= source level keeps d filtered
            auto it = std::find_if(targets.begin(), targets.end(), [&](size_t j) {
                return role[n + 1][j] == 0 && levels[n + 1][j] >= levels[n][i];
            });
            if (it == targets.end())
                continue;
            dn(*it, i) = 1;
            role[n][i] = 1;
            role[n + 1][*it] = 2;
        }
        d.push_back(std::move(dn));
    }

    // g: filtration-preserving (entry (i, j) allowed when level i >= level j); h: arbitrary
    std::vector<RationalMatrix> g, ginv, h, hinv;
    std::uniform_int_distribution<int> val(-2, 2);
    for (size_t n = 0; n < dims.size(); ++n) {
        const size_t k = dims[n];
        RationalMatrix gn = RationalMatrix::identity(k);
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j)
                if (i != j && levels[n][i] >= levels[n][j] && (levels[n][i] > levels[n][j] || i > j))
                    gn(i, j) = val(rng);
        // the allowed pattern is block-triangular with unit diagonal, hence invertible
        auto gi = superspec::inverse(gn);
        RationalMatrix hn = random_invertible(rng, k);
        auto hi = superspec::inverse(hn);
        g.push_back(gn);
        ginv.push_back(*gi);
        h.push_back(hn);
        hinv.push_back(*hi);
    }
    for (size_t n = 0; n < d.size(); ++n)
        d[n] = h[n + 1] * g[n + 1] * d[n] * ginv[n] * hinv[n];

    std::vector<std::vector<Subspace>> filtration(static_cast<size_t>(p_max + 1));
    for (int p = 0; p <= p_max; ++p)
        for (size_t n = 0; n < dims.size(); ++n) {
            std::vector<Vector> gens;
            for (size_t i = 0; i < dims[n]; ++i)
                if (levels[n][i] >= p)
                    gens.push_back(h[n].column(i));
            filtration[static_cast<size_t>(p)].push_back(Subspace::span(gens, dims[n]));
        }
    return superspec::FilteredComplex(dims, std::move(d), std::move(filtration));
}

}  // namespace gen

namespace gen {

using superspec::Rational;
using superspec::cech::Mask;
using superspec::cech::ModuleShape;
using superspec::cech::SuperFunction;
using superspec::cech::SuperSection;
using superspec::deform::QuasiDerivation;

namespace {

Rational small_coefficient(std::mt19937& rng)
{
    std::uniform_int_distribution<int> num(-3, 3), den(1, 2);
    int n = 0;
    while (n == 0)
        n = num(rng);
    Rational c(n, den(rng));
    c.canonicalize();
    return c;
}

}  // namespace

QuasiDerivation random_derivation(std::mt19937& rng, const ModuleShape& shape, const DerivationShape& opts)
{
    std::bernoulli_distribution keep(opts.density);
    std::uniform_int_distribution<int> exponent(-opts.exponent_range, opts.exponent_range);
    const Mask full = shape.m == 0 ? 0 : (Mask{1} << shape.m) - 1;
    const size_t n = static_cast<size_t>(shape.generators());

    std::vector<SuperSection> images;
    for (int g = 0; g < shape.generators(); ++g) {
        SuperSection s(superspec::cech::Chart::U01, n);
        for (int h = 0; h < shape.generators(); ++h)
            for (Mask mask = 0; mask <= full; ++mask) {
                int raise = shape.degree(mask, h) - shape.degree(0, g);
                if (raise >= opts.min_raise && raise % 2 == 0 && keep(rng))
                    s.coefficient(h).add_term(exponent(rng), mask, small_coefficient(rng));
                if (mask == full)
                    break;
            }
        images.push_back(std::move(s));
    }
    SuperFunction fx;
    std::vector<SuperFunction> fxi(static_cast<size_t>(shape.m));
    if (opts.with_field)
        for (Mask mask = 0; mask <= full; ++mask) {
            int d = superspec::cech::odd_degree(mask);
            if (d >= opts.min_raise && d % 2 == 0 && keep(rng))
                fx.add_term(exponent(rng), mask, small_coefficient(rng));
            for (auto& f : fxi)
                if (d - 1 >= opts.min_raise && d % 2 == 1 && keep(rng))
                    f.add_term(exponent(rng), mask, small_coefficient(rng));
            if (mask == full)
                break;
        }
    return {shape, std::move(images), std::move(fx), std::move(fxi)};
}

QuasiDerivation random_homogeneous_derivation(std::mt19937& rng, const ModuleShape& shape, int k,
                                              const DerivationShape& opts)
{
    DerivationShape o = opts;
    o.min_raise = k;
    return random_derivation(rng, shape, o).homogeneous_component(k);
}

SuperFunction random_function(std::mt19937& rng, int m, int exponent_range, int terms)
{
    std::uniform_int_distribution<int> exponent(-exponent_range, exponent_range);
    std::uniform_int_distribution<Mask> mask(0, m == 0 ? 0 : (Mask{1} << m) - 1);
    SuperFunction f;
    for (int i = 0; i < terms; ++i)
        f.add_term(exponent(rng), mask(rng), small_coefficient(rng));
    return f;
}

}  // namespace gen
