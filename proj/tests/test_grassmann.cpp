#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"

#include "superspec/grassmann.hpp"

#include <random>

using namespace superspec;
using namespace superspec::cech;

namespace {

std::vector<int> indices(Mask mask)
{
    std::vector<int> out;
    for (int i = 0; i < 32; ++i)
        if (mask & (Mask{1} << i))
            out.push_back(i);
    return out;
}

}  // namespace

TEST_CASE("exterior sign matches the inversion count")
{
    for (Mask a = 0; a < 32; ++a)
        for (Mask b = 0; b < 32; ++b)
            CHECK(wedge_sign(a, b) == oracle::concatenation_sign(indices(a), indices(b)));
}

TEST_CASE("Grassmann algebra basis")
{
    GrassmannAlgebra g(3);
    CHECK(g.dim() == 8);
    CHECK(g.basis().size() == 8);
    CHECK(g.basis(0) == std::vector<Mask>{0});
    CHECK(g.basis(2) == std::vector<Mask>{3, 5, 6});
    CHECK(g.basis(4).empty());
    CHECK(GrassmannAlgebra(0).basis() == std::vector<Mask>{0});
    CHECK_THROWS_AS(GrassmannAlgebra(-1), std::invalid_argument);
}

TEST_CASE("odd generators anticommute and square to zero")
{
    auto x1 = SuperFunction::xi(1), x2 = SuperFunction::xi(2);
    CHECK((x1 * x2 + x2 * x1).is_zero());
    CHECK((x1 * x1).is_zero());
    CHECK(x1 * x2 == SuperFunction::monomial(0, 3));
    CHECK(x2 * x1 == SuperFunction::monomial(0, 3, -1));
    auto top = x1 * x2;
    CHECK((top * top).is_zero());
    CHECK((top * x1).is_zero());
}

TEST_CASE("Laurent part multiplies exponents")
{
    auto f = SuperFunction::x(-2) * SuperFunction::x(3);
    CHECK(f == SuperFunction::x(1));
    CHECK(pow(SuperFunction::x(1) + SuperFunction::constant(1), 2) ==
          SuperFunction::x(2) + SuperFunction::x(1) * Rational(2) + SuperFunction::constant(1));
}

TEST_CASE("product is associative and supercommutative on random elements")
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        auto a = gen::random_function(rng, 3), b = gen::random_function(rng, 3), c = gen::random_function(rng, 3);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        // homogeneous parts: ab = (-1)^{|a||b|} ba
        for (int da = 0; da <= 3; ++da)
            for (int db = 0; db <= 3; ++db) {
                auto ha = a.odd_degree_part(da), hb = b.odd_degree_part(db);
                Rational sign = (da * db) % 2 ? -1 : 1;
                CHECK(ha * hb == hb * ha * sign);
            }
    }
}

TEST_CASE("degree bookkeeping")
{
    auto f = SuperFunction::monomial(2, 3) + SuperFunction::monomial(-1, 1, 5);
    CHECK(f.min_odd_degree() == 1);
    CHECK(f.parity() == -1);
    CHECK(f.odd_degree_part(2) == SuperFunction::monomial(2, 3));
    CHECK(SuperFunction().min_odd_degree() == kNoDegree);

    ModuleShape shape{2, 1, 1};
    CHECK(shape.degree(3, 1) == 3);
    CHECK(shape.parity(1, 0) == 1);
    CHECK(shape.name(0) == "e1");
    CHECK(shape.name(1) == "f1");
    SuperSection s(Chart::U01, 2);
    s.coefficient(0) = SuperFunction::monomial(-1, 3);
    s.coefficient(1) = SuperFunction::monomial(0, 0);
    CHECK(s.min_degree(shape) == 1);
    CHECK(s.degree_part(shape, 2).coefficient(0) == SuperFunction::monomial(-1, 3));
    CHECK(s.degree_part(shape, 2).coefficient(1).is_zero());
    CHECK(format(s, shape) == "x^-1*xi1*xi2*e1 + f1");
    CHECK(format(SuperFunction::monomial(1, 2, Rational(-3, 2))) == "-3/2*x*xi2");
    CHECK(format(SuperFunction()) == "0");
}
