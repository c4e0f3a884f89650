#include "doctest.h"

#include "rephom/cehom.hpp"
#include "rephom/errors.hpp"
#include "rephom/identities.hpp"

#include <functional>
#include <set>

using namespace rephom;

namespace {

Monomial mono(std::vector<std::pair<int, int>> f) { return Monomial{std::move(f)}; }

Poly trace_product(const DGAlgebraSpec& alg, const std::vector<int>& letters) {
    // Tr(a b c ...) for the given letters
    const int n = alg.n, len = static_cast<int>(letters.size());
    Poly out;
    std::vector<int> k(len, 0);
    std::function<void(int)> rec = [&](int pos) {
        if (pos == len) {
            Poly acc{{Monomial{}, Rational(1)}};
            for (int p = 0; p < len; ++p)
                acc = alg.mul(acc, Poly{{alg.generator(alg.gen_id(letters[p], k[p], k[(p + 1) % len])), Rational(1)}});
            poly_add(out, acc);
            return;
        }
        for (int m = 0; m < n; ++m) {
            k[pos] = m;
            rec(pos + 1);
        }
    };
    rec(0);
    return out;
}

// same span test over a shared monomial index
bool same_span(const std::vector<Poly>& a, const std::vector<Poly>& b) {
    std::map<Monomial, int> ids;
    auto vec = [&](const Poly& p) {
        SparseVec v;
        for (const auto& [m, c] : p) v.emplace_back(ids.emplace(m, static_cast<int>(ids.size())).first->second, c);
        std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        return v;
    };
    Echelon ea, eb, both;
    for (const auto& p : a) { ea.insert(vec(p)); both.insert(vec(p)); }
    for (const auto& p : b) { eb.insert(vec(p)); both.insert(vec(p)); }
    return ea.rank() == eb.rank() && ea.rank() == both.rank();
}

// brute force: multisets of up to n power sums P_{a,b,c} (c in {0,1}, odd when c = 1)
long long power_sum_count(int n, int deg, int wa, int wb) {
    std::vector<std::array<int, 3>> gens;
    for (int a = 0; a <= wa; ++a)
        for (int b = 0; b <= wb; ++b)
            for (int c = 0; c <= 1; ++c)
                if ((a || b || c) && a + c <= wa && b + c <= wb) gens.push_back({a, b, c});
    long long count = 0;
    std::function<void(std::size_t, int, int, int, int)> rec = [&](std::size_t g, int left, int d, int ra, int rb) {
        if (d == 0 && ra == 0 && rb == 0) {
            ++count;
            return;
        }
        if (g == gens.size() || left == 0) return;
        rec(g + 1, left, d, ra, rb);
        const auto [a, b, c] = gens[g];
        const int maxe = c ? 1 : left;
        for (int e = 1; e <= maxe && e <= left; ++e) {
            if (e * c > d || e * (a + c) > ra || e * (b + c) > rb) break;
            rec(g + 1, left - e, d - e * c, ra - e * (a + c), rb - e * (b + c));
        }
    };
    rec(0, n, deg, wa, wb);
    return count;
}

// brute force: multisets of at most n elements of {X_p, Y_p}
long long xy_power_count(int n, int wa, int wb) {
    long long count = 0;
    // X_p for p = 1..wa, then Y_p for p = 1..wb
    std::vector<std::pair<int, int>> gens;
    for (int p = 1; p <= wa; ++p) gens.push_back({p, 0});
    for (int p = 1; p <= wb; ++p) gens.push_back({0, p});
    std::function<void(std::size_t, int, int, int)> rec = [&](std::size_t g, int left, int ra, int rb) {
        if (ra == 0 && rb == 0) {
            ++count;
            return;
        }
        if (g == gens.size()) return;
        for (int e = 0; e <= left && e * gens[g].first <= ra && e * gens[g].second <= rb; ++e)
            rec(g + 1, left - e, ra - e * gens[g].first, rb - e * gens[g].second);
    };
    rec(0, n, wa, wb);
    return count;
}

}  // namespace

TEST_CASE("complex builder examples") {
    const auto alg = build_complex(ComplexKind::xy, 2);
    CHECK(alg.gens.size() == 12);
    CHECK(alg.gens[alg.gen_id(2, 0, 1)].name() == "theta_12");
    // d theta_11 = x_12 y_21 - y_12 x_21
    const Poly expected{{mono({{alg.gen_id(0, 0, 1), 1}, {alg.gen_id(1, 1, 0), 1}}), Rational(1)},
                        {mono({{alg.gen_id(0, 1, 0), 1}, {alg.gen_id(1, 0, 1), 1}}), Rational(-1)}};
    CHECK(alg.d[alg.gen_id(2, 0, 0)] == expected);

    const auto one = build_complex(ComplexKind::xy, 1);
    CHECK(one.d[one.gen_id(2, 0, 0)].empty());
    for (int n = 1; n <= 4; ++n) {
        const auto dg = build_complex(ComplexKind::diag_xy, n);
        for (const auto& p : dg.d) CHECK(p.empty());
    }
    const auto dq = build_complex(ComplexKind::diag_qpoly, 2, Rational(2));
    CHECK(dq.d[dq.diag_id(2, 0)] == Poly{{mono({{dq.diag_id(0, 0), 1}, {dq.diag_id(1, 0), 1}}), Rational(-1)}});

    CHECK_THROWS_AS(build_complex(ComplexKind::xy, 5), MathError);
    CHECK_THROWS_AS(build_complex(ComplexKind::qpoly, 2), MathError);
    CHECK_THROWS_AS(build_complex(ComplexKind::qpoly, 2, Rational(0)), MathError);
    CHECK_THROWS_AS(build_complex(ComplexKind::xy, 2, Rational(3)), MathError);
    for (int n = 1; n <= 4; ++n) CHECK_NOTHROW(build_complex(ComplexKind::xyz, n));
}

TEST_CASE("hard-coded differentials follow the shuffle rule") {
    CHECK(shuffle_rule_matches(2));
    CHECK(shuffle_rule_matches(3));
}

TEST_CASE("Koszul signs") {
    const auto alg = build_complex(ComplexKind::xy, 2);
    const Monomial a = alg.generator(alg.gen_id(2, 0, 0)), b = alg.generator(alg.gen_id(2, 0, 1));
    const auto ab = alg.mul(a, b), ba = alg.mul(b, a);
    CHECK(ab.first == 1);
    CHECK(ba.first == -1);
    CHECK(ab.second == ba.second);
    CHECK(alg.mul(a, a).first == 0);
    const Monomial x = alg.generator(alg.gen_id(0, 1, 1));
    CHECK(alg.mul(x, x).second == mono({{alg.gen_id(0, 1, 1), 2}}));
    CHECK(alg.mul(a, x).first == 1);
    // d(theta_11 theta_12) = d(theta_11) theta_12 - theta_11 d(theta_12)
    const Poly lhs = alg.differential(ab.second);
    Poly rhs = alg.mul(alg.d[alg.gen_id(2, 0, 0)], Poly{{b, Rational(1)}});
    poly_add(rhs, alg.mul(Poly{{a, Rational(1)}}, alg.d[alg.gen_id(2, 0, 1)]), Rational(-1));
    CHECK(lhs == rhs);
}

TEST_CASE("component bases") {
    const auto alg = build_complex(ComplexKind::xy, 2);
    const auto b1 = component_basis(alg, 1, {1, 1});
    REQUIRE(b1.size() == 4);
    for (int k = 0; k < 4; ++k) CHECK(b1[k] == alg.generator(alg.gen_id(2, k / 2, k % 2)));
    const auto b0 = component_basis(alg, 0, {1, 0});
    REQUIRE(b0.size() == 4);
    for (int k = 0; k < 4; ++k) CHECK(b0[k] == alg.generator(alg.gen_id(0, k / 2, k % 2)));
    const auto xyz = build_complex(ComplexKind::xyz, 3);
    const auto t = component_basis(xyz, 2, {1, 1, 1});
    REQUIRE(t.size() == 9);
    for (const auto& m : t) CHECK(xyz.gens[m.f[0].first].tag == "t");
    // dimension counts: x^2 y in 4+4 variables
    CHECK(component_basis(alg, 0, {2, 1}).size() == 40);
    CHECK(component_basis(alg, 1, {2, 1}).size() == 16);
    CHECK(component_basis(alg, 2, {2, 2}).size() == 6);
    CHECK(component_basis(alg, 3, {2, 2}).empty());
    const auto sorted = component_basis(alg, 0, {2, 2});
    CHECK(std::is_sorted(sorted.begin(), sorted.end()));
}

TEST_CASE("differential matrices") {
    const auto alg = build_complex(ComplexKind::xy, 2);
    const auto M = differential_matrix(alg, 1, {1, 1});
    auto row = [&](const Monomial& m) {
        return static_cast<int>(std::find(M.rows.begin(), M.rows.end(), m) - M.rows.begin());
    };
    const Monomial x12y21 = mono({{alg.gen_id(0, 0, 1), 1}, {alg.gen_id(1, 1, 0), 1}});
    const Monomial y12x21 = mono({{alg.gen_id(0, 1, 0), 1}, {alg.gen_id(1, 0, 1), 1}});
    CHECK(M.at(row(x12y21), 0) == Rational(1));
    CHECK(M.at(row(y12x21), 0) == Rational(-1));
    int nz = 0;
    for (const auto& [rc, v] : M.entries) nz += rc.second == 0;
    CHECK(nz == 2);

    const auto one = build_complex(ComplexKind::xy, 1);
    for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b) CHECK(differential_matrix(one, 1, {a, b}).entries.empty());

    const auto qp = build_complex(ComplexKind::qpoly, 2, Rational(2));
    const auto Q = differential_matrix(qp, 1, {1, 1});
    auto qrow = [&](const Monomial& m) {
        return static_cast<int>(std::find(Q.rows.begin(), Q.rows.end(), m) - Q.rows.begin());
    };
    CHECK(Q.at(qrow(mono({{qp.gen_id(0, 0, 0), 1}, {qp.gen_id(1, 0, 0), 1}})), 0) == Rational(-1));
    CHECK(Q.at(qrow(x12y21), 0) == Rational(1));
    CHECK(Q.at(qrow(y12x21), 0) == Rational(-2));
}

TEST_CASE("d^2 = 0 on components") {
    std::vector<DGAlgebraSpec> algs = {build_complex(ComplexKind::xy, 2), build_complex(ComplexKind::xy, 3),
                                       build_complex(ComplexKind::qpoly, 2, Rational(2)),
                                       build_complex(ComplexKind::qpoly, 3, Rational(-3, 5)),
                                       build_complex(ComplexKind::diag_qpoly, 3, Rational(2))};
    for (const auto& alg : algs)
        for (const auto& w : WeightBox::total(2, 4).weights)
            for (int i = 2; i <= 4; ++i)
                for (const auto& m : component_basis(alg, i, w)) CHECK(alg.differential(alg.differential(m)).empty());
    for (int n : {2, 3}) {
        const auto xyz = build_complex(ComplexKind::xyz, n);
        for (const auto& w : WeightBox::total(3, 3).weights)
            for (int i = 2; i <= 3; ++i)
                for (const auto& m : component_basis(xyz, i, w)) CHECK(xyz.differential(xyz.differential(m)).empty());
    }
    // matrix form: D_{i-1} D_i = 0
    const auto alg = build_complex(ComplexKind::xy, 2);
    const auto D2 = differential_matrix(alg, 2, {2, 3}), D1 = differential_matrix(alg, 1, {2, 3});
    REQUIRE(D2.rows == D1.cols);
    for (std::size_t c = 0; c < D2.cols.size(); ++c)
        for (std::size_t r = 0; r < D1.rows.size(); ++r) {
            Rational s(0);
            for (std::size_t k = 0; k < D1.cols.size(); ++k)
                s += D1.at(static_cast<int>(r), static_cast<int>(k)) * D2.at(static_cast<int>(k), static_cast<int>(c));
            CHECK(s.is_zero());
        }
}

TEST_CASE("homology of the full complexes") {
    const auto one = build_complex(ComplexKind::xy, 1);
    const auto r1 = homology_dims(one, WeightBox::total(2, 5));
    for (const auto& e : r1.weights) {
        if (e.w[0] >= 1 && e.w[1] >= 1) {
            CHECK(e.h(0) == 1);
            CHECK(e.h(1) == 1);
        }
        for (int i = 2; i < 8; ++i) CHECK(e.h(i) == 0);
        CHECK(e.euler == e.homology_euler());
    }
    const auto r2 = homology_dims(build_complex(ComplexKind::xy, 2), WeightBox::total(2, 5));
    for (const auto& e : r2.weights) {
        for (int i = 3; i < 8; ++i) CHECK(e.h(i) == 0);
        CHECK(e.euler == e.homology_euler());
    }
    const auto rq = homology_dims(build_complex(ComplexKind::qpoly, 2, Rational(2)), WeightBox::total(2, 5));
    for (const auto& e : rq.weights) {
        for (int i = 1; i < 8; ++i) CHECK(e.h(i) == 0);
        CHECK(e.euler == e.homology_euler());
    }
    // the commuting-scheme relation x12 y21 = y12 x21 kills one class at (1,1)
    const auto* e11 = r2.find({1, 1});
    REQUIRE(e11);
    CHECK(e11->dims == std::vector<int>{16, 4});
    CHECK(e11->h(1) == 1);
    CHECK(e11->h(0) == 13);
}

TEST_CASE("invariant bases") {
    const auto alg = build_complex(ComplexKind::xy, 2);
    const auto b0 = invariant_basis(alg, Action::gl_adjoint, 0, {1, 1});
    CHECK(b0.size() == 2);
    const Poly trx = trace_product(alg, {0}), try_ = trace_product(alg, {1});
    CHECK(same_span(b0, {trace_product(alg, {0, 1}), alg.mul(trx, try_)}));
    const auto b1 = invariant_basis(alg, Action::gl_adjoint, 1, {1, 1});
    CHECK(b1.size() == 1);
    CHECK(same_span(b1, {trace_product(alg, {2})}));
    // Tr(x)^2, Tr(x^2)
    CHECK(same_span(invariant_basis(alg, Action::gl_adjoint, 0, {2, 0}),
                    {trace_product(alg, {0, 0}), alg.mul(trx, trx)}));

    const auto dg = build_complex(ComplexKind::diag_xy, 2);
    const auto s = invariant_basis(dg, Action::sym, 0, {2, 0});
    CHECK(s.size() == 2);
    const Poly p2{{mono({{dg.diag_id(0, 0), 2}}), Rational(1)}, {mono({{dg.diag_id(0, 1), 2}}), Rational(1)}};
    const Poly e2{{mono({{dg.diag_id(0, 0), 1}, {dg.diag_id(0, 1), 1}}), Rational(1)}};
    CHECK(same_span(s, {p2, e2}));
    // odd orbit sums: theta_1 theta_2 is S_2-anti-invariant
    CHECK(invariant_basis(dg, Action::sym, 2, {2, 2}).empty());
    CHECK(invariant_basis(dg, Action::hyperoct, 0, {1, 0}).empty());
    CHECK(invariant_basis(dg, Action::hyperoct, 0, {2, 0}).size() == 1);
    CHECK_THROWS_AS(invariant_basis(dg, Action::gl_adjoint, 0, {1, 0}), MathError);
    CHECK_THROWS_AS(invariant_basis(alg, Action::sym, 0, {1, 0}), MathError);
}

TEST_CASE("Reynolds projector") {
    // sign flips commute with d only at q = 1
    for (Action a : {Action::sym, Action::hyperoct}) {
        const auto alg = a == Action::sym ? build_complex(ComplexKind::diag_qpoly, 3, Rational(2))
                                          : build_complex(ComplexKind::diag_xy, 3);
        for (const auto& w : WeightBox::total(2, 3).weights)
            for (int i = 0; i <= 2; ++i)
                for (const auto& m : component_basis(alg, i, w)) {
                    const Poly p{{m, Rational(1)}};
                    const Poly r = reynolds(alg, a, p);
                    CHECK(reynolds(alg, a, r) == r);
                    CHECK(reynolds(alg, a, alg.differential(p)) == alg.differential(r));
                }
    }
}

TEST_CASE("sym invariants match power-sum monomial counts") {
    for (int n = 1; n <= 3; ++n) {
        const auto alg = build_complex(ComplexKind::diag_xy, n);
        for (const auto& w : WeightBox::total(2, 5).weights)
            for (int i = 0; i <= std::min(w[0], w[1]); ++i) {
                const auto sz = static_cast<long long>(invariant_basis(alg, Action::sym, i, w).size());
                CHECK(sz == power_sum_count(n, i, w[0], w[1]));
            }
    }
}

TEST_CASE("invariant homology for gl_2 against G_2") {
    const auto alg = build_complex(ComplexKind::xy, 2);
    const auto rep = invariant_homology(alg, Action::gl_adjoint, WeightBox::total(2, 5));
    const auto* e11 = rep.find({1, 1});
    REQUIRE(e11);
    CHECK(e11->h(0) == 2);
    CHECK(e11->h(1) == 1);
    const auto order = G_order(2, 5, 5);
    const MultiSeries g2 = G_n(2, order);
    for (const auto& e : rep.weights) {
        for (int d = 0; d <= 2; ++d) {
            std::vector<int> exps{e.w[0], e.w[1], d};
            if (g2.order().nvars() == 4) exps.push_back(0);
            const Rational c = g2.coeff(exps);
            CHECK_MESSAGE(c == Rational(e.h(d)), "w=(", e.w[0], ",", e.w[1], ") i=", d);
        }
        for (int d = 3; d < 8; ++d) CHECK(e.h(d) == 0);
    }
}

TEST_CASE("invariant Euler characteristics match the Chevalley side") {
    for (int n = 1; n <= 2; ++n) {
        const auto alg = build_complex(ComplexKind::xy, n);
        const auto rep = invariant_homology(alg, Action::gl_adjoint, WeightBox::total(2, 5));
        const MultiSeries lhs = chevalley_lhs(parse_root_system("gl:" + std::to_string(n)), SeriesOrder::qt(5, 5));
        for (const auto& e : rep.weights) {
            CHECK(e.euler == lhs.coeff({e.w[0], e.w[1]}));
            CHECK(e.euler == e.homology_euler());
        }
    }
}

TEST_CASE("Euler characteristics at weight (1,1,1)") {
    const std::vector<int> w{1, 1, 1};
    const auto box = WeightBox::single(w);
    const auto x2 = invariant_homology(build_complex(ComplexKind::xyz, 2), Action::gl_adjoint, box);
    const auto x3 = invariant_homology(build_complex(ComplexKind::xyz, 3), Action::gl_adjoint, box);
    CHECK(x2.weights[0].euler == Rational(0));
    CHECK(x3.weights[0].euler == Rational(1));
    CHECK(x3.weights[0].dims == std::vector<int>{6, 6, 1});
    CHECK(x2.weights[0].dims == std::vector<int>{5, 6, 1});
    const auto d2 = invariant_homology(build_complex(ComplexKind::diag_xyz, 2), Action::sym, box);
    const auto d3 = invariant_homology(build_complex(ComplexKind::diag_xyz, 3), Action::sym, box);
    CHECK(d2.weights[0].euler == Rational(-1));
    CHECK(d3.weights[0].euler == Rational(0));
    CHECK(d3.weights[0].dims == std::vector<int>{5, 6, 1});
}

TEST_CASE("Harish-Chandra map") {
    const auto src = build_complex(ComplexKind::xy, 2);
    const auto tgt = build_complex(ComplexKind::diag_xy, 2);
    CHECK(hc_map(src, tgt, Poly{{src.generator(src.gen_id(0, 0, 0)), Rational(1)}}) ==
          Poly{{tgt.generator(tgt.diag_id(0, 0)), Rational(1)}});
    CHECK(hc_map(src, tgt, Poly{{src.generator(src.gen_id(0, 0, 1)), Rational(1)}}).empty());

    const auto r1 = hc_map_check(1, WeightBox::total(2, 4));
    CHECK(r1.chain_map());
    CHECK(r1.bijective());
    const auto r2 = hc_map_check(2, WeightBox::total(2, 5));
    CHECK(r2.chain_map());
    CHECK(r2.bijective());
    const auto r3 = hc_map_check(3, WeightBox::total(2, 3));
    CHECK(r3.chain_map());
    CHECK(r3.surjective());
    for (const auto& w : r3.weights) CHECK(w.h0_iso());
}

TEST_CASE("q-deformed H_0 counts") {
    CHECK(power_sum_monomials(2, {2, 0}) == 2);
    CHECK(power_sum_monomials(2, {1, 1}) == 1);
    CHECK(power_sum_monomials(1, {3, 0}) == 1);
    CHECK(power_sum_monomials(3, {0, 0}) == 1);
    for (int n = 1; n <= 3; ++n)
        for (const auto& w : WeightBox::total(2, 6).weights)
            CHECK(power_sum_monomials(n, w) == xy_power_count(n, w[0], w[1]));
    for (const auto& c : qpoly_h0_count(2, WeightBox::total(2, 6))) CHECK_MESSAGE(c.ok(), c.w[0], ",", c.w[1]);
    for (const auto& c : qpoly_h0_count(1, WeightBox::total(2, 4))) CHECK(c.ok());
}

TEST_CASE("report serialization") {
    const auto rep = invariant_homology(build_complex(ComplexKind::xy, 2), Action::gl_adjoint, WeightBox::total(2, 3));
    const auto j = rep.to_json();
    CHECK(j.at("complex") == "xy");
    CHECK(j.at("weights").size() == rep.weights.size());
    const auto back = HomologyReport::from_json(j);
    CHECK(back.to_json() == j);
    const std::string csv = rep.to_csv();
    CHECK(csv.rfind("complex,n,invariants,w,i,", 0) == 0);
    CHECK(csv.find("xy,2,gl,1;1,1,") != std::string::npos);
}
