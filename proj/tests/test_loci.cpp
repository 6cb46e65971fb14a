#include "doctest.h"

#include "hirz/errors.hpp"
#include "hirz/loci.hpp"

using namespace hirz;

namespace {

Poly sym(const AbstractModel &m, const std::string &name, int D)
{
    return Poly::variable(m.ring(), m.ring()->index_of(name), D);
}

// every valid type-C/B spec with the given n
std::vector<LocusSpec> all_specs(int n, Family f)
{
    std::vector<LocusSpec> out;
    std::vector<int> vals;
    for (int v = n; v > -n; --v)
        if (v) vals.push_back(v);
    for (int p = 1; p <= n; ++p) {
        int maxlen = n + 1 - p;
        for (unsigned mask = 1; mask < (1u << vals.size()); ++mask) {
            std::vector<int> q;
            for (size_t i = 0; i < vals.size(); ++i)
                if (mask & (1u << i)) q.push_back(vals[i]);
            if (int(q.size()) > maxlen) continue;
            try {
                out.push_back(LocusSpec::make(f, n, p, q));
            } catch (const Error &) {
            }
        }
    }
    return out;
}

} // namespace

TEST_CASE("lambda and rho")
{
    auto s = LocusSpec::make(Family::C, 6, 3, {5, 2, -1, -4});
    CHECK(s.rho == std::vector<int>{0, 1, 2, 1});
    CHECK(s.lambda == Partition{7, 4, 2, 1});
    CHECK(s.a == 2);
    auto m = LocusSpec::make(Family::C, 4, 2, {3, 1, -2});
    CHECK(m.rho == std::vector<int>{0, 1, 1});
    CHECK(m.lambda == Partition{4, 2, 1});
    auto lg = LocusSpec::make(Family::C, 4, 1, {4, 2});
    CHECK(lg.lambda == Partition{4, 2});
    CHECK(rho_of({3, 2, 1}) == std::vector<int>{0, 1, 2});
}

TEST_CASE("spec validation")
{
    CHECK_THROWS_AS(LocusSpec::make(Family::C, 4, 0, {1}), Error);
    CHECK_THROWS_AS(LocusSpec::make(Family::C, 4, 2, {1, 2}), Error);   // not decreasing
    CHECK_THROWS_AS(LocusSpec::make(Family::C, 4, 2, {2, -2}), Error);  // |q| repeated
    CHECK_THROWS_AS(LocusSpec::make(Family::C, 4, 2, {5}), Error);      // q > n
    CHECK_THROWS_AS(LocusSpec::make(Family::C, 4, 2, {0}), Error);
    CHECK_THROWS_AS(LocusSpec::make(Family::C, 4, 3, {3, 2, 1}), Error); // too long
    CHECK_THROWS_AS(LocusSpec::make(Family::C, 4, 1, {-3}), Error);     // lambda not positive
    try {
        LocusSpec::make(Family::C, 4, 0, {1});
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::InvalidSpec);
    }
}

TEST_CASE("entry ranks")
{
    auto s = LocusSpec::make(Family::C, 6, 3, {5, 2, -1, -4});
    CHECK(s.entry_rank(1) == 6);
    CHECK(s.entry_rank(2) == 3);
    CHECK(s.entry_rank(3) == 1);
    CHECK(s.entry_rank(4) == -2);
}

TEST_CASE("fundamental classes in abstract symbols")
{
    auto m = AbstractModel::by_slot(2, 6);
    auto s21 = LocusSpec::make(Family::C, 3, 1, {2, 1});
    Poly f = fundamental_class(s21, *m);
    CHECK(f == (sym(*m, "c(1)_2", 3) * sym(*m, "c(2)_1", 3) - sym(*m, "c(1)_3", 3) * YPoly(2)));
    auto s2 = LocusSpec::make(Family::C, 3, 1, {2});
    CHECK(fundamental_class(s2, *m) == sym(*m, "c(1)_2", 2));
    // the bottom degree of the resolution class
    for (auto q : {std::vector<int>{2}, {2, 1}, {3, 1}}) {
        auto s = LocusSpec::make(Family::C, 3, 1, q);
        Poly r = resolution_class(s, *m, 6);
        CHECK(r.homogeneous(size_of(s.lambda)) == fundamental_class(s, *m).with_trunc(6));
        CHECK(r.min_degree() == size_of(s.lambda));
    }
}

TEST_CASE("family B with all q positive is 1/2^s times the Pfaffian")
{
    auto m = AbstractModel::by_slot(3, 6);
    auto s = LocusSpec::make(Family::B, 4, 1, {3, 2, 1});
    auto ents = m->locus_entries(s, 6);
    Poly pf = pfaffian_theta(s.lambda, ents, m->ring(), 6) * YPoly(Rational(1, 8));
    CHECK(fundamental_class(s, *m).with_trunc(6) == pf);
    CHECK(resolution_class(s, *m, 6).homogeneous(6) == pf);
}

TEST_CASE("y = -1 specialization equals the independent CSM assembly")
{
    for (Family f : {Family::C, Family::B}) {
        auto specs = all_specs(3, f);
        CHECK(specs.size() > 5);
        for (auto &s : specs) {
            int D = size_of(s.lambda) + 3;
            auto m = AbstractModel::by_slot(s.s(), D);
            Poly gen = resolution_class(s, *m, D);
            Poly csm = csm_resolution_class(s, *m, D);
            CAPTURE(partition_str(s.q));
            CHECK(gen.eval_y(YEval::at(-1)) == csm);
            CHECK(resolution_class(s, *m, D, {YEval::at(-1)}) == csm);
        }
    }
}

TEST_CASE("single slot p = 1 at y = -1")
{
    // one slot: sum_j W_j c_{k+j} with W = 1/sum_m c_m (1+R)^{e-m}, e = k-1.
    // Degree k+1: -c_1 c_k - e c_{k+1}.
    const int k = 2, D = 4;
    auto m = AbstractModel::by_slot(1, D);
    auto s = LocusSpec::make(Family::C, 3, 1, {k});
    Poly r = csm_resolution_class(s, *m, D);
    auto c = [&](int i) { return sym(*m, "c(1)_" + std::to_string(i), D); };
    CHECK(r.homogeneous(2) == c(2));
    CHECK(r.homogeneous(3) == -(c(1) * c(2)) - c(3) * YPoly(k - 1));
}

TEST_CASE("truncation invariance")
{
    auto specs = all_specs(3, Family::C);
    int count = 0;
    for (auto &s : specs) {
        if (count++ > 8) break;
        int D = size_of(s.lambda) + 2;
        auto m = AbstractModel::by_slot(s.s(), D + 3);
        Poly a = resolution_class(s, *m, D);
        Poly b = resolution_class(s, *m, D + 3);
        CHECK(a == b.truncated(D).with_trunc(D));
    }
}
