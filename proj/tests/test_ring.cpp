#include "doctest.h"

#include "hirz/errors.hpp"
#include "hirz/poly.hpp"

using namespace hirz;

TEST_CASE("rationals print as num/den")
{
    CHECK(to_fraction_string(Rational(3)) == "3/1");
    Rational h(-2, 4);
    h.canonicalize();
    CHECK(to_fraction_string(h) == "-1/2");
    CHECK(parse_rational("-6/4") == Rational(-3, 2));
    CHECK(parse_rational("7") == Rational(7));
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("ypoly arithmetic")
{
    YPoly a{1, 1}; // 1+y
    YPoly b = a * a;
    CHECK(b == YPoly{1, 2, 1});
    CHECK(a.pow(3) == YPoly{1, 3, 3, 1});
    CHECK((b - b).is_zero());
    CHECK(b.eval(Rational(-1)) == 0);
    CHECK(YPoly{0, 0, 0}.is_zero());
    CHECK(YPoly(Rational(2)).degree() == 0);
    CHECK(YPoly().degree() == -1);
}

TEST_CASE("poly truncation and products")
{
    auto vs = make_varset({"x", "z"});
    Poly x = Poly::variable(vs, 0, 3), z = Poly::variable(vs, 1, 3);
    Poly one = Poly::constant(vs, YPoly(1), 3);
    Poly s = one + x + z;
    Poly s4 = s * s * s * s;
    // (1+x+z)^4 through degree 3: 1 + 4 + 6*(x+z)^2 ... compare against binomial expansion
    CHECK(s4.coeff({1, 0}) == YPoly(4));
    CHECK(s4.coeff({1, 1}) == YPoly(12));
    CHECK(s4.coeff({2, 1}) == YPoly(12));
    CHECK(s4.coeff({2, 2}).is_zero());
    CHECK(s4.max_degree() == 3);
}

TEST_CASE("weighted degrees")
{
    auto vs = make_varset({"c1", "c2"}, {1, 2});
    Poly c2 = Poly::variable(vs, 1, 3);
    Poly c1 = Poly::variable(vs, 0, 3);
    CHECK((c2 * c2).is_zero());
    CHECK((c2 * c1).max_degree() == 3);
    CHECK_THROWS(make_varset({"a"}, {0}));
}

TEST_CASE("series inverse, exp, log round trips")
{
    auto vs = make_varset({"x", "z"});
    const int D = 6;
    Poly one = Poly::constant(vs, YPoly(1), D);
    Poly u = Poly::variable(vs, 0, D) * YPoly{1, 1} + Poly::variable(vs, 1, D) * YPoly(Rational(1, 3));
    Poly s = one + u + u * u * YPoly(-2);
    CHECK(s * series_inv(s) == one);
    CHECK(series_exp(series_log(s)) == s);
    CHECK(series_log(series_exp(u)) == u);
    // exp(a+b) = exp(a) exp(b)
    Poly a = Poly::variable(vs, 0, D), b = Poly::variable(vs, 1, D) * YPoly(3);
    CHECK(series_exp(a + b) == series_exp(a) * series_exp(b));
    CHECK_THROWS_AS(series_inv(u), Error);
    CHECK_THROWS_AS(series_exp(s), Error);
    CHECK_THROWS_AS(series_inv(Poly(vs)), Error);
}

TEST_CASE("newton identities against explicit roots")
{
    // chern classes of x1,x2,x3 are elementary symmetric polynomials
    auto vs = make_varset({"x1", "x2", "x3"});
    const int D = 5;
    std::vector<Poly> x;
    for (int i = 0; i < 3; ++i) x.push_back(Poly::variable(vs, i, D));
    Poly one = Poly::constant(vs, YPoly(1), D);
    std::vector<Poly> e{one, x[0] + x[1] + x[2], x[0] * x[1] + x[0] * x[2] + x[1] * x[2],
                        x[0] * x[1] * x[2]};
    auto p = newton_power_sums(e, 3, D, vs);
    for (int k = 1; k <= D; ++k) {
        Poly direct(vs, D);
        for (int i = 0; i < 3; ++i) {
            Poly t = one;
            for (int j = 0; j < k; ++j) t = t * x[i];
            direct += t;
        }
        CHECK(p[k] == direct);
    }
    CHECK(p[0] == one * YPoly(3));
    auto c = chern_from_power_sums(p, D, vs);
    for (int k = 1; k <= 3; ++k) CHECK(c[k] == e[k]);
    CHECK(c[4].is_zero());
    CHECK(c[5].is_zero());
}

TEST_CASE("generalized binomials")
{
    CHECK(generalized_binomial(5, 2) == 10);
    CHECK(generalized_binomial(-1, 3) == -1);
    CHECK(generalized_binomial(-3, 2) == 6);
    CHECK(generalized_binomial(2, 3) == 0);
    CHECK(generalized_binomial(4, 0) == 1);
}

TEST_CASE("sorted term order is degree then descending lex")
{
    auto vs = make_varset({"a", "b"});
    Poly p(vs);
    p.add_term({0, 2}, YPoly(1));
    p.add_term({2, 0}, YPoly(2));
    p.add_term({1, 0}, YPoly(3));
    auto t = p.sorted_terms();
    REQUIRE(t.size() == 3);
    CHECK(t[0].first == Mono{1, 0});
    CHECK(t[1].first == Mono{2, 0});
    CHECK(t[2].first == Mono{0, 2});
}
