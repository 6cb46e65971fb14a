#include "doctest.h"

#include "hirz/errors.hpp"
#include "hirz/orbit.hpp"

#include <algorithm>
#include <numeric>

using namespace hirz;

namespace doctest {
template <> struct StringMaker<YPoly> {
    static String convert(const YPoly &p) { return p.str().c_str(); }
};
template <> struct StringMaker<Poly> {
    static String convert(const Poly &p) { return p.str().c_str(); }
};
} // namespace doctest

namespace {

const YPoly y = YPoly::y();

Involution inv(const std::string &s, Group g = Group::O) { return Involution::parse(s, 0, g); }

std::vector<Involution> involutions(int n, Group g)
{
    std::vector<Involution> out;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 1);
    do {
        bool ok = true;
        int fixed = 0;
        for (int i = 1; i <= n; ++i) {
            if (p[p[i - 1] - 1] != i) ok = false;
            if (p[i - 1] == i) ++fixed;
        }
        if (ok && (g == Group::O || fixed == 0)) out.push_back(Involution{p});
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// Torus-fixed points of the resolution. The torus of K has distinct weights on a
// basis paired by the form, so fixed flags are orderings of that basis; position
// b is paired with position pi(b), and pi is a fixed-point-free involution (one
// fixed point when n is odd). Each pi arises from 2^h h! orderings, h = n/2.
// Over a fixed flag, fixed points of the fibre are coordinate chains
// U_1 c U_2 c ... with U_m inside E_j cap E_i^perp of the m-th slot.
long count_chains(const Involution &pi, const std::vector<FlagSlot> &sl, size_t m,
                  std::vector<int> &used)
{
    if (m == sl.size()) return 1;
    auto inside = [&](int b) { return b <= sl[m].j && pi(b) > sl[m].i; };
    for (int u : used)
        if (!inside(u)) return 0;
    long c = 0;
    for (int b = 1; b <= pi.n(); ++b) {
        if (std::find(used.begin(), used.end(), b) != used.end() || !inside(b)) continue;
        used.push_back(b);
        c += count_chains(pi, sl, m + 1, used);
        used.pop_back();
    }
    return c;
}

struct FixedCounts {
    long closure = 0, resolution = 0;
};

FixedCounts fixed_point_counts(const Involution &z, const std::vector<FlagSlot> &slots)
{
    const int n = z.n();
    long mult = 1;
    for (int a = 1; a <= n / 2; ++a) mult *= 2 * a;
    FixedCounts fc;
    for (auto &pi : involutions(n, Group::O)) {
        int fixed = 0;
        for (int i = 1; i <= n; ++i) fixed += pi(i) == i;
        if (fixed != n % 2) continue;
        bool in = true;
        for (int i = 1; i <= n && in; ++i)
            for (int j = 1; j <= n && in; ++j)
                if (nw_rank(pi, i, j) > nw_rank(z, i, j)) in = false;
        fc.closure += in;
        std::vector<int> used;
        fc.resolution += count_chains(pi, slots, 0, used);
    }
    fc.closure *= mult;
    fc.resolution *= mult;
    return fc;
}

Poly mono(const FlagModel &m, std::vector<int> e, long c = 1)
{
    return Poly::monomial(m.ring(), Mono(e.begin(), e.end()), YPoly(c));
}

} // namespace

TEST_CASE("involution parsing")
{
    CHECK(inv("43215").str() == "43215");
    CHECK(Involution::parse("4,3,2,1,5", 0, Group::O).str() == "43215");
    CHECK(Involution::parse("(1 4)(2 3)", 5, Group::O).str() == "43215");
    CHECK(Involution::from_cycles(4, {{1, 3}, {2, 4}}).str() == "3412");
    CHECK_THROWS_AS(inv("2311"), Error);
    CHECK_THROWS_AS(inv("231"), Error); // not an involution
    CHECK_THROWS_AS(Involution::parse("(1 4)(1 3)", 4, Group::O), Error);
    CHECK_THROWS_AS(Involution::parse("3412", 5, Group::O), Error);
    std::vector<std::string> w;
    Involution::make({1, 3, 2}, Group::Sp, &w);
    CHECK(w.size() == 1);
}

TEST_CASE("rothe diagram, essential set, partition")
{
    auto d = rothe_diagram(inv("3412"), Group::O);
    CHECK(d == std::set<Cell>{{1, 1}, {2, 1}, {2, 2}});
    CHECK(essential_set(d) == std::set<Cell>{{2, 2}});

    auto e = vexillary_data(inv("3412"), Group::O);
    CHECK(e.k == std::vector<int>{2});
    CHECK(e.lambda == Partition{2, 1});
    auto sl = mu_flag(e, 4);
    REQUIRE(sl.size() == 2);
    CHECK((sl[0].mu == 2 && sl[0].i == 3 && sl[0].j == 2));
    CHECK((sl[1].mu == 1 && sl[1].i == 2 && sl[1].j == 2));

    CHECK(vexillary_data(inv("4321"), Group::O).lambda == Partition{3, 1});
    CHECK(vexillary_data(inv("21"), Group::O).lambda == Partition{1});
    CHECK(vexillary_data(inv("43215", Group::Sp), Group::Sp).lambda == Partition{2});

    auto s = vexillary_data(inv("543216", Group::Sp), Group::Sp);
    CHECK(s.chain == std::vector<Cell>{{4, 1}, {3, 2}});
    CHECK(s.lambda == Partition{3, 1});

    try {
        vexillary_data(inv("2143"), Group::O);
        FAIL("expected NotVexillary");
    } catch (const Error &err) {
        CHECK(err.kind() == ErrorKind::NotVexillary);
    }
}

TEST_CASE("gap slots follow the group convention")
{
    auto o = mu_flag(vexillary_data(inv("14523"), Group::O), 5);
    REQUIRE(o.size() == 2);
    CHECK((o[0].i == 4 && o[0].j == 3));
    EssentialData d;
    d.group = Group::Sp;
    d.chain = {{3, 2}};
    d.k = {2};
    auto sp = mu_flag(d, 5);
    REQUIRE(sp.size() == 2);
    CHECK((sp[0].mu == 2 && sp[0].i == 3 && sp[0].j == 1));
    CHECK((sp[1].mu == 1 && sp[1].i == 3 && sp[1].j == 2));
}

TEST_CASE("coinvariant normal form")
{
    FlagModel m(3);
    Poly e1 = m.x(1) + m.x(2) + m.x(3);
    CHECK(m.reduce(e1).is_zero());
    CHECK(m.reduce(m.x(1) * m.x(2) + m.x(1) * m.x(3) + m.x(2) * m.x(3)).is_zero());
    CHECK(m.reduce(m.x(1) * m.x(2) * m.x(3)).is_zero());
    CHECK(m.reduce(m.x(1) * m.x(1) * m.x(1)).is_zero());
    CHECK(m.reduce(m.x(3)) == -(m.x(1) + m.x(2)));
    CHECK(m.reduce(m.x(2) * m.x(2)) == mono(m, {2, 0, 0}, -1) + mono(m, {1, 1, 0}, -1));
    // reduction is a ring map
    Poly f = m.x(2) * m.x(3) + m.x(1) * YPoly(2) + mono(m, {0, 2, 1});
    Poly g = m.x(3) * m.x(3) - m.x(2) + mono(m, {1, 0, 2}, 3);
    CHECK(m.reduce(f * g) == m.reduce(m.reduce(f) * m.reduce(g)));
    // point class: top monomial has coefficient 1, every other degree-3 normal monomial 0 there
    CHECK(m.top_coefficient(m.reduce(mono(m, {2, 1, 0}))) == YPoly(1));
    CHECK(m.top_coefficient(m.reduce(mono(m, {1, 2, 0}))) == YPoly(-1));
}

TEST_CASE("ambient classes integrate to chi_y of the flag variety")
{
    for (int n = 2; n <= 4; ++n) {
        FlagModel m(n);
        // product of chi_y(P^{k-1})
        YPoly expect(1);
        for (int k = 1; k <= n; ++k) {
            YPoly s, p(1);
            for (int t = 0; t < k; ++t, p = p * (-y)) s += p;
            expect = expect * s;
        }
        CHECK(m.top_coefficient(m.reduce(m.ty_ambient(m.dimension(), YEval::generic()))) == expect);
        long fact = 1;
        for (int k = 2; k <= n; ++k) fact *= k;
        CHECK(m.top_coefficient(m.reduce(m.csm_ambient())) == YPoly(fact));
    }
}

TEST_CASE("fundamental classes")
{
    FlagModel m2(2);
    CHECK(orbit_fundamental_class(m2, inv("21"), Group::O) == m2.x(1) * YPoly(2));
    // orthogonal classes are the lowest-degree part of the motivic class
    FlagModel m(4);
    for (auto &z : involutions(4, Group::O)) {
        OrbitResult r;
        try {
            r = orbit_motivic_class(m, z, Group::O, YEval::generic());
        } catch (const Error &) {
            continue;
        }
        int d = size_of(r.data.lambda);
        CHECK(r.cls.homogeneous(d) == orbit_fundamental_class(m, z, Group::O));
        CHECK(r.cls.min_degree() == d);
    }
}

TEST_CASE("orthogonal classes match the fixed-point count of the resolution")
{
    for (int n = 2; n <= 5; ++n) {
        FlagModel m(n);
        for (auto &z : involutions(n, Group::O)) {
            OrbitResult gen;
            try {
                gen = orbit_motivic_class(m, z, Group::O, YEval::generic(), true);
            } catch (const Error &e) {
                CHECK(e.kind() == ErrorKind::NotVexillary);
                continue;
            }
            CAPTURE(z.str());
            auto fc = fixed_point_counts(z, gen.slots);
            YPoly chi = m.top_coefficient(gen.cls);
            CHECK(chi.eval(-1) == fc.resolution);
            for (auto &c : chi.coeffs()) CHECK(c.get_den() == 1);
            auto csm = orbit_motivic_class(m, z, Group::O, YEval::at(-1), true);
            CHECK(m.top_coefficient(csm.cls) == YPoly(fc.resolution));
            CHECK(fc.closure <= fc.resolution);
        }
    }
    // the resolution can be strictly bigger than the orbit closure
    auto z = inv("1324");
    auto fc = fixed_point_counts(z, mu_flag(vexillary_data(z, Group::O), 4));
    CHECK(fc.closure == 16);
    CHECK(fc.resolution == 32);
}

TEST_CASE("closed orbit closures in small flag varieties")
{
    FlagModel m(3);
    auto r = orbit_motivic_class(m, inv("321"), Group::O, YEval::generic(), true);
    CHECK(m.top_coefficient(r.cls) == 1 - y);
    FlagModel m4(4);
    auto c = orbit_motivic_class(m4, inv("4321"), Group::O, YEval::at(-1), true);
    CHECK(m4.top_coefficient(c.cls) == YPoly(8));
}

TEST_CASE("expansion checks")
{
    FlagModel m(2);
    auto z = inv("21");
    CHECK(verify_expansion(m, z, Group::O, {{Rational(1), z}}).holds);
    auto bad = verify_expansion(m, z, Group::O, {{Rational(2), z}});
    CHECK_FALSE(bad.holds);
    CHECK(bad.residual == m.x(1) * YPoly(-2));

    auto cls = orbit_motivic_class(m, z, Group::O, YEval::at(-1)).cls;
    CHECK(expand_in_orbit_basis(m, cls, Group::O, {z}) == std::vector<Rational>{1});

    FlagModel m4(4);
    auto w = inv("3412");
    CHECK_FALSE(verify_expansion(m4, w, Group::O, {{Rational(1), w}, {Rational(1), inv("4321")}})
                    .holds);
    auto c4 = orbit_motivic_class(m4, w, Group::O, YEval::at(-1)).cls;
    try {
        expand_in_orbit_basis(m4, c4, Group::O, {w, inv("4321")});
        FAIL("expected Unrepresentable");
    } catch (const Error &e) {
        CHECK(e.code() == "Unrepresentable");
    }
}

TEST_CASE("symplectic classes carry a diagnostic")
{
    FlagModel m(4);
    auto r = orbit_motivic_class(m, inv("4321", Group::Sp), Group::Sp, YEval::at(-1));
    CHECK_FALSE(r.diagnostics.empty());
    CHECK(r.data.lambda == Partition{2});
    CHECK_THROWS_AS(orbit_motivic_class(m, inv("21"), Group::O, YEval::at(-1)), Error);
}
