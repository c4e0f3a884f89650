#include "doctest.h"

#include "rephom/errors.hpp"
#include "rephom/torus.hpp"

#include <random>

using namespace rephom;

namespace {

TorusPoly mono(const std::vector<int>& l, const SeriesOrder& o, long long c = 1) {
    return TorusPoly::term(static_cast<int>(l.size()), l, MultiSeries::constant(o, Rational(c)));
}

MultiSeries var(const SeriesOrder& o, Var v) { return MultiSeries::var_power(o, v, 1); }

// Integrand of the Chevalley-type constant term for one root.
TorusPoly chevalley_factor(const std::vector<int>& a, const SeriesOrder& o) {
    int m = static_cast<int>(a.size());
    auto qt = MultiSeries::monomial(o, {1, 1});
    TorusPoly num = tp_mul(TorusPoly::one_minus(m, a, qt), TorusPoly::one_minus(m, a, MultiSeries::one(o)));
    return tp_mul(num, tp_mul(expand_geometric(a, var(o, Var::q)), expand_geometric(a, var(o, Var::t))));
}

}  // namespace

TEST_CASE("tp_mul examples") {
    auto o = SeriesOrder::q_only(3);
    auto x = mono({1, -1}, o);
    x += mono({-1, 1}, o);
    auto sq = tp_mul(x, x);
    auto expect = mono({2, -2}, o);
    expect += mono({0, 0}, o, 2);
    expect += mono({-2, 2}, o);
    CHECK(sq == expect);
    CHECK(tp_mul(TorusPoly::one(2, o), x) == x);
    auto a = TorusPoly::one_minus(2, {1, -1}, MultiSeries::one(o));
    auto b = TorusPoly::one_minus(2, {-1, 1}, MultiSeries::one(o));
    auto p = tp_mul(a, b);
    auto e2 = mono({0, 0}, o, 2);
    e2 += mono({1, -1}, o, -1);
    e2 += mono({-1, 1}, o, -1);
    CHECK(p == e2);
    CHECK(constant_term(p) == MultiSeries::constant(o, Rational(2)));
    CHECK_THROWS_AS(tp_mul(a, TorusPoly::one(3, o)), MathError);
}

TEST_CASE("expand_geometric") {
    auto o = SeriesOrder::q_only(2);
    auto g = expand_geometric({1, -1}, var(o, Var::q));
    CHECK(g.size() == 3);
    CHECK(g.coeff({2, -2}) == MultiSeries::var_power(o, Var::q, 2));
    auto o2 = SeriesOrder::qt(1, 1);
    auto g2 = expand_geometric({1, -1}, MultiSeries::monomial(o2, {1, 1}));
    CHECK(g2.size() == 2);
    auto o3 = SeriesOrder{{Var::t, 2}};
    auto g3 = expand_geometric({-1, 1}, var(o3, Var::t));
    CHECK(g3.coeff({-2, 2}) == MultiSeries::var_power(o3, Var::t, 2));
    CHECK_THROWS_AS(expand_geometric({1, -1}, MultiSeries::one(o)), MathError);
    auto o4 = SeriesOrder::qt(4, 3);
    for (auto c : {var(o4, Var::q), MultiSeries::monomial(o4, {1, 1}, Rational(3)), var(o4, Var::t) * Rational(-2)}) {
        auto prod = tp_mul(expand_geometric({1, 0, -1}, c), TorusPoly::one_minus(3, {1, 0, -1}, c));
        CHECK(prod == TorusPoly::one(3, o4));
    }
}

TEST_CASE("constant term over A1") {
    auto o = SeriesOrder::q_only(4);
    auto q = var(o, Var::q);
    std::vector<TorusPoly> fs = {
        TorusPoly::one_minus(2, {1, -1}, MultiSeries::one(o)), TorusPoly::one_minus(2, {-1, 1}, MultiSeries::one(o)),
        TorusPoly::one_minus(2, {1, -1}, q), TorusPoly::one_minus(2, {-1, 1}, q)};
    TorusPoly p = TorusPoly::one(2, o);
    for (auto& f : fs) p = tp_mul(p, f);
    auto expect = MultiSeries::constant(o, Rational(2)) + q * Rational(2) + q * q * Rational(2);
    CHECK(constant_term(p) == expect);
    CHECK(ct_of_product(fs) == expect);
}

TEST_CASE("root_product") {
    auto o = SeriesOrder::q_only(2);
    auto gl1 = build_root_system(Family::gl, 1);
    auto rule = [&](const std::vector<int>& a) {
        return TorusPoly::one_minus(static_cast<int>(a.size()), a, MultiSeries::one(o));
    };
    CHECK(root_product(gl1, rule, o) == TorusPoly::one(1, o));
    auto gl2 = build_root_system(Family::gl, 2);
    auto p = root_product(gl2, rule, o);
    CHECK(constant_term(p) == MultiSeries::constant(o, Rational(2)));
    CHECK(p.size() == 3);
    auto o1 = SeriesOrder::q_only(1);
    auto rule2 = [&](const std::vector<int>& a) {
        int m = static_cast<int>(a.size());
        return tp_mul(TorusPoly::one_minus(m, a, MultiSeries::one(o1)), expand_geometric(a, var(o1, Var::q)));
    };
    auto p2 = root_product(gl2, rule2, o1);
    // (1 - u + q u - q u^2)(1 - 1/u + q/u - q/u^2) at q^1: constant term 2 - 2q
    CHECK(constant_term(p2) == MultiSeries::constant(o1, Rational(2)) - var(o1, Var::q) * Rational(2));
}

TEST_CASE("pruned constant term matches the full product") {
    for (auto label : {"gl:2", "gl:3", "sl:3", "so:5", "sp:4", "so:4"}) {
        CAPTURE(label);
        auto rs = parse_root_system(label);
        auto o = SeriesOrder::qt(3, 3);
        auto rule = [&](const std::vector<int>& a) { return chevalley_factor(a, o); };
        auto full = root_product(rs, rule, o);
        CtStats stats;
        CHECK(ct_of_product(root_factors(rs, rule, o), &stats) == constant_term(full));
        int maxroot = 0;
        for (auto& a : rs.roots)
            for (int x : a) maxroot = std::max(maxroot, std::abs(x));
        CHECK(stats.max_terms > 0);
        // without the degree-0 factors (1 - e^a), every exponent is paid for
        // by q or t degree
        auto graded = [&](const std::vector<int>& a) {
            int m = static_cast<int>(a.size());
            auto qt = MultiSeries::monomial(o, {1, 1});
            return tp_mul(TorusPoly::one_minus(m, a, qt),
                          tp_mul(expand_geometric(a, var(o, Var::q)), expand_geometric(a, var(o, Var::t))));
        };
        auto graded_product = root_product(rs, graded, o);
        for (const auto& [l, s] : graded_product.terms())
            for (auto x : l.c) CHECK(std::abs(int(x)) <= (3 + 3) * maxroot);
    }
}

TEST_CASE("constant term is Weyl invariant on random inputs") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> coord(-2, 2), deg(0, 2), val(-3, 3);
    auto o = SeriesOrder::qt(2, 2);
    std::vector<RootSystem> systems = {parse_root_system("gl:3"), parse_root_system("so:5"),
                                       parse_root_system("sp:6"), parse_root_system("so:6")};
    for (int trial = 0; trial < 100; ++trial) {
        const auto& rs = systems[trial % systems.size()];
        int m = rs.ambient;
        auto rnd = [&]() {
            TorusPoly p(m, o);
            for (int k = 0; k < 6; ++k) {
                std::vector<int> l(m);
                for (int& x : l) x = coord(rng);
                p.add_term(Lattice::from(l), MultiSeries::monomial(o, {deg(rng), deg(rng)}, Rational(val(rng))));
            }
            return p;
        };
        auto a = rnd(), b = rnd();
        const auto& w = rs.weyl[rng() % rs.weyl.size()];
        auto ct = constant_term(tp_mul(a, b));
        CHECK(constant_term(tp_mul(a.transported(w), b.transported(w))) == ct);
        CHECK(constant_term(tp_mul(a, b).transported(w)) == ct);
    }
}
