#include "rephom/identities.hpp"

#include "rephom/errors.hpp"
#include "rephom/parallel.hpp"
#include "rephom/torus.hpp"

#include <algorithm>
#include <sstream>

namespace rephom {

// ---------------------------------------------------------------- verdicts

std::optional<Discrepancy> first_difference(const MultiSeries& a, const MultiSeries& b) {
    if (a.order() != b.order()) throw MathError(ErrorKind::OrderMismatch, "comparing series of different orders");
    MultiSeries d = a - b;
    std::optional<std::vector<int>> best;
    for (const auto& t : d.terms()) {
        auto e = d.exps_of(t.key);
        if (!best || graded_lex_less(e, *best)) best = e;
    }
    if (!best) return std::nullopt;
    return Discrepancy{*best, a.coeff(*best), b.coeff(*best)};
}

IdentityVerdict make_verdict(std::string name, std::string system, MultiSeries lhs, MultiSeries rhs) {
    IdentityVerdict v;
    v.name = std::move(name);
    v.system = std::move(system);
    v.order = lhs.order();
    v.first_discrepancy = first_difference(lhs, rhs);
    v.equal = !v.first_discrepancy;
    v.lhs = std::move(lhs);
    v.rhs = std::move(rhs);
    return v;
}

MultiSeries low_degree_part(const MultiSeries& a, int d) {
    std::vector<MultiSeries::Term> kept;
    for (const auto& t : a.terms()) {
        auto e = a.exps_of(t.key);
        int s = 0;
        for (int x : e) s += x;
        if (s <= d) kept.push_back(t);
    }
    return MultiSeries::from_terms(a.order(), std::move(kept));
}

namespace {

nlohmann::json order_json(const SeriesOrder& o) {
    nlohmann::json vars = nlohmann::json::array();
    for (int i = 0; i < o.nvars(); ++i) vars.push_back(std::string(1, var_name(o.var(i))));
    return vars;
}

SeriesOrder order_from_json(const nlohmann::json& vars, const nlohmann::json& bounds) {
    std::vector<std::pair<Var, int>> b;
    for (std::size_t i = 0; i < vars.size(); ++i)
        b.emplace_back(var_from_name(vars[i].get<std::string>()[0]), bounds[i].get<int>());
    return SeriesOrder(b);
}

}  // namespace

nlohmann::json IdentityVerdict::to_json() const {
    nlohmann::json j;
    j["name"] = name;
    j["system"] = system.empty() ? nlohmann::json(nullptr) : nlohmann::json(system);
    j["order"] = order.bounds();
    j["variables"] = order_json(order);
    j["equal"] = equal;
    if (first_discrepancy)
        j["first_discrepancy"] = {{"exp", first_discrepancy->exp},
                                  {"lhs", first_discrepancy->lhs.str()},
                                  {"rhs", first_discrepancy->rhs.str()}};
    else
        j["first_discrepancy"] = nullptr;
    j["truncation_cuts"] = nlohmann::json::object();
    for (const auto& [k, v] : truncation_cuts) j["truncation_cuts"][k] = v;
    j["lhs"] = lhs.to_json();
    j["rhs"] = rhs.to_json();
    if (!parts.empty()) {
        j["parts"] = nlohmann::json::array();
        for (const auto& p : parts) j["parts"].push_back(p.to_json());
    }
    return j;
}

IdentityVerdict IdentityVerdict::from_json(const nlohmann::json& j) {
    IdentityVerdict v;
    v.name = j.at("name").get<std::string>();
    v.system = j.at("system").is_null() ? "" : j.at("system").get<std::string>();
    v.order = order_from_json(j.at("variables"), j.at("order"));
    v.equal = j.at("equal").get<bool>();
    const auto& fd = j.at("first_discrepancy");
    if (!fd.is_null())
        v.first_discrepancy = Discrepancy{fd.at("exp").get<std::vector<int>>(),
                                          Rational::parse(fd.at("lhs").get<std::string>()),
                                          Rational::parse(fd.at("rhs").get<std::string>())};
    for (const auto& [k, val] : j.at("truncation_cuts").items()) v.truncation_cuts[k] = val.get<int>();
    v.lhs = MultiSeries::from_json(v.order, j.at("lhs"));
    v.rhs = MultiSeries::from_json(v.order, j.at("rhs"));
    if (j.contains("parts"))
        for (const auto& p : j.at("parts")) v.parts.push_back(from_json(p));
    return v;
}

std::string IdentityVerdict::to_text() const {
    std::ostringstream os;
    os << "identity  " << name << "\n";
    if (!system.empty()) os << "system    " << system << "\n";
    os << "order     " << order.str() << "\n";
    os << "lhs       " << lhs.str() << "\n";
    os << "rhs       " << rhs.str() << "\n";
    os << "equal     " << (equal ? "yes" : "no") << "\n";
    if (first_discrepancy) {
        os << "first discrepancy at (";
        for (std::size_t i = 0; i < first_discrepancy->exp.size(); ++i)
            os << (i ? "," : "") << first_discrepancy->exp[i];
        os << "): lhs " << first_discrepancy->lhs << ", rhs " << first_discrepancy->rhs << "\n";
    }
    for (const auto& [k, v] : truncation_cuts) os << "cut       " << k << " = " << v << "\n";
    for (const auto& p : parts) {
        std::istringstream in(p.to_text());
        std::string line;
        while (std::getline(in, line)) os << "  " << line << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------- helpers

namespace {

void require_qt(const SeriesOrder& order) {
    if (order.nvars() != 2 || order.var(0) != Var::q || order.var(1) != Var::t)
        throw MathError(ErrorKind::OrderMismatch, "this identity needs a (q,t) order");
}

void require_q(const SeriesOrder& order) {
    if (order.nvars() != 1 || order.var(0) != Var::q)
        throw MathError(ErrorKind::OrderMismatch, "this identity needs a q-only order");
}

MultiSeries mono(const SeriesOrder& o, std::vector<int> e, const Rational& c = Rational(1)) {
    return MultiSeries::monomial(o, e, c);
}

MultiSeries one_minus(const SeriesOrder& o, std::vector<int> e) { return MultiSeries::one_minus(o, e); }

Rational inv_order(const RootSystem& rs) { return Rational(1, static_cast<long long>(rs.weyl.size())); }

// Weyl elements grouped by signed cycle type, with multiplicities.
std::vector<std::pair<WeylElement, long long>> weyl_classes(const RootSystem& rs) {
    std::map<std::vector<std::pair<int, int>>, std::pair<WeylElement, long long>> classes;
    for (const auto& w : rs.weyl) {
        auto key = signed_cycle_type(w);
        auto it = classes.find(key);
        if (it == classes.end()) classes.emplace(key, std::make_pair(w, 1LL));
        else ++it->second.second;
    }
    std::vector<std::pair<WeylElement, long long>> out;
    for (auto& [k, v] : classes) out.push_back(v);
    return out;
}

}  // namespace

MultiSeries chi_line_factor(const SeriesOrder& order) {
    require_qt(order);
    return one_minus(order, {1, 1}) * series_inv(one_minus(order, {1, 0}) * one_minus(order, {0, 1}));
}

// ---------------------------------------------------------------- chevalley

MultiSeries chevalley_lhs(const RootSystem& rs, const SeriesOrder& order) {
    require_qt(order);
    const int m = rs.ambient;
    MultiSeries ct = MultiSeries::one(order);
    if (!rs.roots.empty()) {
        auto q = mono(order, {1, 0}), t = mono(order, {0, 1}), qt = mono(order, {1, 1});
        auto one = MultiSeries::one(order);
        auto rule = [&](const std::vector<int>& a) {
            TorusPoly num = tp_mul(TorusPoly::one_minus(m, a, qt), TorusPoly::one_minus(m, a, one));
            return tp_mul(num, tp_mul(expand_geometric(a, q), expand_geometric(a, t)));
        };
        ct = ct_of_product(root_factors(rs, rule, order));
    }
    MultiSeries pre = chi_line_factor(order).pow(rs.rank);
    return pre * ct * inv_order(rs);
}

MultiSeries molien_qt(const RootSystem& rs, const SeriesOrder& order) {
    require_qt(order);
    auto classes = weyl_classes(rs);
    std::vector<MultiSeries> terms(classes.size());
    parallel_for(classes.size(), [&](std::size_t i) {
        const auto& w = classes[i].first;
        MultiSeries num = reflection_det(rs, w, {1, 1}, order);
        MultiSeries den = reflection_det(rs, w, {1, 0}, order) * reflection_det(rs, w, {0, 1}, order);
        terms[i] = num * series_inv(den) * Rational(classes[i].second);
    });
    MultiSeries sum(order);
    for (const auto& t : terms) sum += t;
    return sum * inv_order(rs);
}

MultiSeries molien_q(const RootSystem& rs, const SeriesOrder& order) {
    require_q(order);
    MultiSeries sum(order);
    for (const auto& [w, mult] : weyl_classes(rs))
        sum += series_inv(reflection_det(rs, w, {1}, order)) * Rational(mult);
    return sum * inv_order(rs);
}

MultiSeries invariant_degrees_series(const RootSystem& rs, const SeriesOrder& order) {
    require_q(order);
    MultiSeries r = MultiSeries::one(order);
    for (int d : rs.degrees) r = r * series_inv(one_minus(order, {d}));
    return r;
}

IdentityVerdict chevalley_qt(const RootSystem& rs, const SeriesOrder& order) {
    MultiSeries sides[2];
    parallel_for(2, [&](std::size_t i) { sides[i] = i == 0 ? chevalley_lhs(rs, order) : molien_qt(rs, order); });
    return make_verdict("chevalley-qt", rs.label, sides[0], sides[1]);
}

// ---------------------------------------------------------------- Euler series

MultiSeries chi_En(int n, const SeriesOrder& order) {
    require_qt(order);
    if (n < 0) throw MathError(ErrorKind::Unsupported, "n must be non-negative");
    auto q = mono(order, {1, 0}), t = mono(order, {0, 1});
    MultiSeries sum(order);
    for (int j = 0; j <= n; ++j) {
        MultiSeries den = pochhammer(q, q, n - j, order) * pochhammer(t, t, j, order);
        sum += t.pow(j) * series_inv(den);
    }
    return sum;
}

SeriesOrder G_order(int n, int nq, int nt) { return SeriesOrder{{Var::q, nq}, {Var::t, nt}, {Var::s, n}, {Var::v, n}}; }

MultiSeries G_n(int n, const SeriesOrder& order) {
    for (Var x : {Var::q, Var::t, Var::s, Var::v})
        if (!order.has(x)) throw MathError(ErrorKind::OrderMismatch, "G_n needs q, t, s, v active");
    if (n < 0 || n > order.bound_of(Var::v))
        throw MathError(ErrorKind::InsufficientOrder, "v bound is below n");
    const int nq = order.bound_of(Var::q), nt = order.bound_of(Var::t);
    MultiSeries prod = MultiSeries::one(order);
    for (int a = 0; a <= nq; ++a)
        for (int b = 0; b <= nt; ++b) {
            // exponents in canonical order (q, t, s, v)
            if (a + 1 <= nq && b + 1 <= nt) prod = prod * (MultiSeries::one(order) + mono(order, {a + 1, b + 1, 1, 1}));
            prod = prod * series_inv(one_minus(order, {a, b, 0, 1}));
        }
    return extract_coeff(prod, Var::v, n);
}

// ---------------------------------------------------------------- Macdonald

MultiSeries macdonald_qt_lhs(const RootSystem& rs, const SeriesOrder& order) {
    require_qt(order);
    const int m = rs.ambient;
    const int nq = order.bound(0);
    if (rs.roots.empty()) return MultiSeries::one(order);
    std::vector<TorusPoly> factors;
    std::vector<std::vector<int>> ordered;
    {
        std::vector<std::vector<int>> seen;
        for (const auto& a : rs.roots) {
            if (std::find(seen.begin(), seen.end(), a) != seen.end()) continue;
            auto neg = a;
            for (int& x : neg) x = -x;
            ordered.push_back(a);
            ordered.push_back(neg);
            seen.push_back(a);
            seen.push_back(neg);
        }
    }
    for (int n = nq; n >= 0; --n)
        for (const auto& a : ordered) {
            MultiSeries qn = mono(order, {n, 0});
            MultiSeries qnt = mono(order, {n, 1});
            factors.push_back(tp_mul(TorusPoly::one_minus(m, a, qn), expand_geometric(a, qnt)));
        }
    return ct_of_product(factors) * inv_order(rs);
}

MultiSeries macdonald_qt_rhs(const RootSystem& rs, const SeriesOrder& order) {
    require_qt(order);
    const int nq = order.bound(0);
    MultiSeries num = MultiSeries::one(order), den = MultiSeries::one(order);
    for (int n = 0; n <= nq; ++n)
        for (int d : rs.degrees) {
            int mi = d - 1;
            num = num * one_minus(order, {n, 1}) * one_minus(order, {n + 1, mi});
            den = den * one_minus(order, {n + 1, 0}) * one_minus(order, {n, mi + 1});
        }
    return num * series_inv(den);
}

IdentityVerdict macdonald_qt(const RootSystem& rs, const SeriesOrder& order) {
    MultiSeries sides[2];
    parallel_for(2, [&](std::size_t i) {
        sides[i] = i == 0 ? macdonald_qt_lhs(rs, order) : macdonald_qt_rhs(rs, order);
    });
    auto v = make_verdict("macdonald-qt", rs.label, sides[0], sides[1]);
    v.truncation_cuts["n_max"] = order.bound(0);
    return v;
}

int macdonald_q_degree(const RootSystem& rs, int k) {
    return k * (k - 1) * static_cast<int>(rs.roots.size()) / 2;
}

MultiSeries q_binomial(int n, int k, const SeriesOrder& order) {
    require_q(order);
    if (k < 0 || k > n) return MultiSeries(order);
    auto q = mono(order, {1});
    return pochhammer(q, q, n, order) * series_inv(pochhammer(q, q, k, order) * pochhammer(q, q, n - k, order));
}

MultiSeries macdonald_q_lhs(const RootSystem& rs, int k, const SeriesOrder& order) {
    require_q(order);
    if (k < 1) throw MathError(ErrorKind::Unsupported, "k must be positive");
    if (order.bound(0) < macdonald_q_degree(rs, k))
        throw MathError(ErrorKind::InsufficientOrder,
                        "order " + std::to_string(order.bound(0)) + " is below the polynomial degree " +
                            std::to_string(macdonald_q_degree(rs, k)));
    if (rs.roots.empty()) return MultiSeries::one(order);
    const int m = rs.ambient;
    std::vector<TorusPoly> factors;
    for (int j = k - 1; j >= 0; --j) {
        auto fs = root_factors(
            rs, [&](const std::vector<int>& a) { return TorusPoly::one_minus(m, a, mono(order, {j})); }, order);
        for (auto& f : fs) factors.push_back(std::move(f));
    }
    return ct_of_product(factors) * inv_order(rs);
}

MultiSeries macdonald_q_rhs(const RootSystem& rs, int k, const SeriesOrder& order) {
    require_q(order);
    if (order.bound(0) < macdonald_q_degree(rs, k))
        throw MathError(ErrorKind::InsufficientOrder, "order is below the polynomial degree");
    MultiSeries r = MultiSeries::one(order);
    for (int d : rs.degrees) r = r * q_binomial(k * d - 1, k - 1, order);
    return r;
}

IdentityVerdict macdonald_q(const RootSystem& rs, int k, const SeriesOrder& order) {
    auto v = make_verdict("macdonald-q", rs.label, macdonald_q_lhs(rs, k, order), macdonald_q_rhs(rs, k, order));
    v.truncation_cuts["k"] = k;
    v.truncation_cuts["degree"] = macdonald_q_degree(rs, k);
    return v;
}

// ---------------------------------------------------------------- Nekrasov

std::vector<std::vector<int>> partitions_of(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int left, int maxpart) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(left, maxpart); p >= 1; --p) {
            cur.push_back(p);
            rec(left - p, p);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

namespace {

std::vector<int> conjugate(const std::vector<int>& lambda) {
    std::vector<int> c;
    if (lambda.empty()) return c;
    for (int j = 1; j <= lambda[0]; ++j) {
        int cnt = 0;
        for (int x : lambda)
            if (x >= j) ++cnt;
        c.push_back(cnt);
    }
    return c;
}

// The four binomial exponents of box (i,j), 1-based: two numerator, two
// denominator; the numerator pair at (1,1) loses its 1 - q^0 t^0.
struct Box {
    std::vector<std::pair<int, int>> num, den;
};

std::vector<Box> boxes(const std::vector<int>& lambda) {
    auto lc = conjugate(lambda);
    std::vector<Box> out;
    for (int i = 1; i <= static_cast<int>(lambda.size()); ++i)
        for (int j = 1; j <= lambda[i - 1]; ++j) {
            Box b;
            b.num.push_back({j, i});
            if (!(i == 1 && j == 1)) b.num.push_back({1 - j, 1 - i});
            b.den.push_back({lambda[i - 1] - j + 1, i - lc[j - 1]});
            b.den.push_back({j - lambda[i - 1], lc[j - 1] - i + 1});
            out.push_back(b);
        }
    return out;
}

// c * q^ma t^mb * prod num / prod den with binomials normalised to either
// both exponents non-negative, or a > 0 > b.
struct Factored {
    Rational c{1};
    int ma = 0, mb = 0;
    std::map<std::pair<int, int>, int> num, den;

    void put(std::pair<int, int> e, bool numerator) {
        auto [a, b] = e;
        if (a == 0 && b == 0) throw MathError(ErrorKind::Pole, "vanishing binomial");
        bool flip = (a <= 0 && b <= 0) || (a < 0 && b > 0);
        if (flip) {
            // 1 - q^a t^b = -q^a t^b (1 - q^-a t^-b)
            c = -c;
            ma += numerator ? a : -a;
            mb += numerator ? b : -b;
            a = -a;
            b = -b;
        }
        (numerator ? num : den)[{a, b}] += 1;
    }
};

LaurentPoly expand_product(const std::map<std::pair<int, int>, int>& fs) {
    LaurentPoly p = LaurentPoly::constant(Rational(1));
    for (const auto& [e, mult] : fs)
        for (int k = 0; k < mult; ++k) p = p * LaurentPoly::binomial(e.first, e.second);
    return p;
}

}  // namespace

LaurentRat nekrasov_weight(const std::vector<int>& lambda) {
    LaurentPoly num = LaurentPoly::constant(Rational(1)), den = LaurentPoly::constant(Rational(1));
    for (const auto& b : boxes(lambda)) {
        for (auto [a, c] : b.num) num = num * LaurentPoly::binomial(a, c);
        for (auto [a, c] : b.den) den = den * LaurentPoly::binomial(a, c);
    }
    return LaurentRat(num, den);
}

LaurentRat nekrasov_total(int n) {
    if (n < 1 || n > 5) throw MathError(ErrorKind::Unsupported, "nekrasov_sum supports 1 <= n <= 5");
    std::vector<Factored> parts;
    for (const auto& lambda : partitions_of(n)) {
        Factored f;
        for (const auto& b : boxes(lambda)) {
            for (auto e : b.num) f.put(e, true);
            for (auto e : b.den) f.put(e, false);
        }
        // cancel binomials common to numerator and denominator
        for (auto& [e, k] : f.den) {
            auto it = f.num.find(e);
            if (it == f.num.end()) continue;
            int common = std::min(k, it->second);
            k -= common;
            it->second -= common;
        }
        parts.push_back(f);
    }
    std::map<std::pair<int, int>, int> lcm;
    for (const auto& f : parts)
        for (const auto& [e, k] : f.den) lcm[e] = std::max(lcm[e], k);
    LaurentPoly total;
    for (const auto& f : parts) {
        auto extra = lcm;
        for (const auto& [e, k] : f.den) extra[e] -= k;
        auto numf = f.num;
        for (const auto& [e, k] : extra) numf[e] += k;
        total += (expand_product(numf) * f.c).shift(f.ma, f.mb);
    }
    // mixed-sign binomials cannot be expanded at the origin; they must divide out
    for (auto& [e, k] : lcm) {
        if (e.first >= 0 && e.second >= 0) continue;
        while (k > 0) {
            auto quotient = total.divide_binomial(e.first, e.second);
            if (!quotient) break;
            total = std::move(*quotient);
            --k;
        }
    }
    return LaurentRat(total, expand_product(lcm));
}

IdentityVerdict nekrasov_sum(int n, const SeriesOrder& order) {
    require_qt(order);
    LaurentRat total = nekrasov_total(n);
    LaurentRat target(LaurentPoly::binomial(n, n), LaurentPoly::binomial(n, 0) * LaurentPoly::binomial(0, n));
    auto v = make_verdict("nekrasov", "", laurent_expand(total, order), laurent_expand(target, order));
    v.truncation_cuts["partitions"] = static_cast<int>(partitions_of(n).size());
    constexpr std::size_t kExactLimit = 10000;
    if (total.num.size() * target.den.size() <= kExactLimit && target.num.size() * total.den.size() <= kExactLimit) {
        bool exact = total == target;
        v.truncation_cuts["exact_match"] = exact ? 1 : 0;
        if (!exact) v.equal = false;
    }
    return v;
}

// ---------------------------------------------------------------- dual numbers

IdentityVerdict dual_numbers(int n, const SeriesOrder& order) {
    require_q(order);
    const int N = order.bound(0);
    auto q = [&](int k) { return mono(order, {k}); };
    MultiSeries f(order);
    for (int j = 0; j * (j + 1) / 2 <= N; ++j) f += q(j * (j + 1) / 2);
    MultiSeries lhs(order), rhs(order);
    if (n == 1) {
        lhs = MultiSeries::one(order);
        for (int i = 1; i <= N; ++i) {
            auto fac = one_minus(order, {i});
            lhs = lhs * (i % 2 == 0 ? fac : series_inv(fac));
        }
        rhs = f;
    } else if (n == 2) {
        const std::vector<int> u{1, -1}, uinv{-1, 1};
        auto one = MultiSeries::one(order);
        std::vector<TorusPoly> factors;
        MultiSeries scalar = one;
        for (int i = 1; i <= N; ++i) {
            auto sq = one_minus(order, {i}).pow(2);
            if (i % 2 == 0) {
                scalar = scalar * sq;
                factors.push_back(TorusPoly::one_minus(2, u, q(i)));
                factors.push_back(TorusPoly::one_minus(2, uinv, q(i)));
            } else {
                scalar = scalar * series_inv(sq);
                factors.push_back(expand_geometric(u, q(i)));
                factors.push_back(expand_geometric(uinv, q(i)));
            }
        }
        factors.push_back(TorusPoly::one_minus(2, u, one));
        factors.push_back(TorusPoly::one_minus(2, uinv, one));
        lhs = ct_of_product(factors) * scalar * Rational(1, 2);
        // f(q^2)
        MultiSeries f2(order);
        for (int j = 0; j * (j + 1) <= N; ++j) f2 += q(j * (j + 1));
        rhs = (f * f + f2) * Rational(1, 2);
    } else {
        throw MathError(ErrorKind::Unsupported, "dual_numbers supports n = 1, 2");
    }
    auto v = make_verdict("dual-numbers", "gl:" + std::to_string(n), lhs, rhs);
    v.truncation_cuts["i_max"] = N;
    return v;
}

// ---------------------------------------------------------------- sl vs gl

IdentityVerdict sl_gl_factor(int n, const SeriesOrder& order) {
    require_qt(order);
    if (n < 2) throw MathError(ErrorKind::Unsupported, "sl_gl_factor needs n >= 2");
    auto gl = build_root_system(Family::gl, n);
    auto sl = build_root_system(Family::sl, n);
    auto factor = chi_line_factor(order);
    auto ct = make_verdict("sl-gl-factor:constant-term", gl.label, chevalley_lhs(gl, order),
                           chevalley_lhs(sl, order) * factor);
    auto mol = make_verdict("sl-gl-factor:molien", gl.label, molien_qt(gl, order), molien_qt(sl, order) * factor);
    IdentityVerdict v = ct;
    v.name = "sl-gl-factor";
    v.equal = ct.equal && mol.equal;
    if (!ct.equal) v.first_discrepancy = ct.first_discrepancy;
    else v.first_discrepancy = mol.first_discrepancy;
    v.parts = {ct, mol};
    return v;
}

// ---------------------------------------------------------------- hyperoctahedral

IdentityVerdict hyperoct_series(int n, const SeriesOrder& order) {
    require_qt(order);
    if (n < 1 || n > 4) throw MathError(ErrorKind::Unsupported, "hyperoct_series supports 1 <= n <= 4");
    auto rs = build_root_system(Family::so, 2 * n + 1);
    MultiSeries lhs = molien_qt(rs, order);
    // power sums P_(s,p,l) with s+p+l even; v counts how many are used
    const int nq = order.bound(0), nt = order.bound(1);
    SeriesOrder ov{{Var::q, nq}, {Var::t, nt}, {Var::v, n}};
    MultiSeries gen = MultiSeries::one(ov);
    for (int p = 0; p <= nq; ++p)
        for (int l = 0; l <= nt; ++l) {
            if ((p + l) % 2 == 0) {
                if (p == 0 && l == 0) continue;
                gen = gen * series_inv(MultiSeries::one_minus(ov, {p, l, 1}));
            } else if (p + 1 <= nq && l + 1 <= nt) {
                // odd generator: appears at most once and counts with a sign
                gen = gen * MultiSeries::one_minus(ov, {p + 1, l + 1, 1});
            }
        }
    MultiSeries rhs(order);
    for (int k = 0; k <= n; ++k) rhs += extract_coeff(gen, Var::v, k);
    auto v = make_verdict("hyperoct", rs.label, lhs, rhs);
    v.truncation_cuts["n"] = n;
    return v;
}

// ---------------------------------------------------------------- Rothe

IdentityVerdict rothe_check(const SeriesOrder& order) {
    if (order.nvars() != 2 || order.var(0) != Var::q || order.var(1) != Var::v)
        throw MathError(ErrorKind::OrderMismatch, "rothe_check needs a (q,v) order");
    auto v = MultiSeries::var_power(order, Var::v, 1);
    auto q = MultiSeries::var_power(order, Var::q, 1);
    MultiSeries lhs = series_inv(pochhammer(v, q, std::nullopt, order));
    MultiSeries rhs(order);
    for (int n = 0; n <= order.bound(1); ++n) rhs += v.pow(n) * series_inv(pochhammer(q, q, n, order));
    return make_verdict("rothe", "", lhs, rhs);
}

}  // namespace rephom
