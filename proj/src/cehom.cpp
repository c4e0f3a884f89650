#include "rephom/cehom.hpp"

#include "rephom/errors.hpp"
#include "rephom/parallel.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace rephom {

std::string action_name(Action a) {
    switch (a) {
    case Action::none: return "none";
    case Action::gl_adjoint: return "gl";
    case Action::sym: return "sym";
    case Action::hyperoct: return "hyperoct";
    }
    return "?";
}

Action action_from_name(const std::string& s) {
    if (s == "none") return Action::none;
    if (s == "gl" || s == "gl_adjoint") return Action::gl_adjoint;
    if (s == "sym") return Action::sym;
    if (s == "hyperoct") return Action::hyperoct;
    throw MathError(ErrorKind::Unsupported, "unknown invariants action: " + s);
}

WeightBox WeightBox::total(int rank, int max_sum) {
    WeightBox box;
    std::vector<int> w(rank, 0);
    std::function<void(int, int)> rec = [&](int k, int left) {
        if (k == rank) {
            box.weights.push_back(w);
            return;
        }
        for (int a = 0; a <= left; ++a) {
            w[k] = a;
            rec(k + 1, left - a);
        }
    };
    rec(0, max_sum);
    std::stable_sort(box.weights.begin(), box.weights.end(), [](const auto& a, const auto& b) {
        const int sa = std::accumulate(a.begin(), a.end(), 0), sb = std::accumulate(b.begin(), b.end(), 0);
        if (sa != sb) return sa < sb;
        return a > b;
    });
    return box;
}

namespace {

int weight_sum(const std::vector<int>& w) { return std::accumulate(w.begin(), w.end(), 0); }

struct MonoIndex {
    std::map<Monomial, int> ids;
    int id(const Monomial& m) { return ids.emplace(m, static_cast<int>(ids.size())).first->second; }
    SparseVec vec(const Poly& p) {
        SparseVec v;
        v.reserve(p.size());
        for (const auto& [m, c] : p) v.emplace_back(id(m), c);
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        return v;
    }
};

Poly combination(const std::vector<Poly>& basis, const SparseVec& coeffs) {
    Poly out;
    for (const auto& [k, c] : coeffs) poly_add(out, basis[k], c);
    return out;
}

// conjugation-torus weight of a matrix monomial: sum of e_i - e_j
std::vector<int> torus_weight(const DGAlgebraSpec& alg, const Monomial& m) {
    std::vector<int> t(alg.n, 0);
    for (const auto& [g, e] : m.f) {
        const int i = (g / alg.n) % alg.n, j = g % alg.n;
        t[i] += e;
        t[j] -= e;
    }
    return t;
}

std::vector<Poly> gl_invariants(const DGAlgebraSpec& alg, int i, const std::vector<int>& w) {
    const int n = alg.n;
    std::vector<Monomial> zero;
    for (const auto& m : component_basis(alg, i, w)) {
        const auto t = torus_weight(alg, m);
        if (std::all_of(t.begin(), t.end(), [](int x) { return x == 0; })) zero.push_back(m);
    }
    if (n == 1) {
        std::vector<Poly> out;
        for (const auto& m : zero) out.push_back(Poly{{m, Rational(1)}});
        return out;
    }
    // raising derivations E_{k,k+1}: a_ij -> delta_ik a_{k+1,j} - delta_{j,k+1} a_{ik}
    std::vector<std::vector<Poly>> raise(n - 1, std::vector<Poly>(alg.gens.size()));
    for (int k = 0; k + 1 < n; ++k)
        for (int l = 0; l < alg.nletters; ++l)
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    Poly& v = raise[k][alg.gen_id(l, a, b)];
                    if (a == k) poly_add(v, alg.generator(alg.gen_id(l, k + 1, b)), Rational(1));
                    if (b == k + 1) poly_add(v, alg.generator(alg.gen_id(l, a, k)), Rational(-1));
                }
    std::map<std::pair<int, Monomial>, int> row_ids;
    Echelon e(true);
    for (const auto& m : zero) {
        SparseVec col;
        for (int k = 0; k + 1 < n; ++k)
            for (const auto& [mm, c] : alg.derivation(raise[k], m)) {
                auto key = std::make_pair(k, mm);
                const int id = row_ids.emplace(key, static_cast<int>(row_ids.size())).first->second;
                col.emplace_back(id, c);
            }
        std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        e.insert(col);
    }
    std::vector<Poly> out;
    for (const auto& kv : e.kernel()) {
        Poly p;
        for (const auto& [k, c] : kv) poly_add(p, zero[k], c);
        out.push_back(std::move(p));
    }
    return out;
}

// group elements as (permutation, sign mask)
std::vector<std::pair<std::vector<int>, unsigned>> group_elements(int n, bool signs) {
    std::vector<std::pair<std::vector<int>, unsigned>> out;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        const unsigned masks = signs ? 1u << n : 1u;
        for (unsigned s = 0; s < masks; ++s) out.emplace_back(perm, s);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

std::pair<int, Monomial> act(const DGAlgebraSpec& alg, const std::vector<int>& perm, unsigned signs,
                             const Monomial& m) {
    const int n = alg.n;
    int sign = 1;
    Monomial acc;
    for (const auto& [g, e] : m.f) {
        const int l = g / n, i = g % n;
        if ((signs >> i & 1) && e % 2) sign = -sign;
        auto [s, prod] = alg.mul(acc, Monomial{{{alg.diag_id(l, perm[i]), e}}});
        if (s == 0) return {0, Monomial{}};
        sign *= s;
        acc = std::move(prod);
    }
    return {sign, acc};
}

}  // namespace

Poly reynolds(const DGAlgebraSpec& alg, Action action, const Poly& p) {
    if (action != Action::sym && action != Action::hyperoct)
        throw MathError(ErrorKind::Unsupported, "Reynolds averaging is defined for sym and hyperoct");
    if (!alg.diagonal()) throw MathError(ErrorKind::Unsupported, "Reynolds averaging needs a diagonal complex");
    const auto G = group_elements(alg.n, action == Action::hyperoct);
    const Rational inv_order = Rational(1) / Rational(static_cast<long long>(G.size()));
    Poly out;
    for (const auto& [m, c] : p)
        for (const auto& [perm, s] : G) {
            auto [sg, img] = act(alg, perm, s, m);
            if (sg == 0) continue;
            poly_add(out, img, sg > 0 ? c * inv_order : -(c * inv_order));
        }
    return out;
}

std::vector<Poly> invariant_basis(const DGAlgebraSpec& alg, Action action, int i, const std::vector<int>& w) {
    switch (action) {
    case Action::none: {
        std::vector<Poly> out;
        for (const auto& m : component_basis(alg, i, w)) out.push_back(Poly{{m, Rational(1)}});
        return out;
    }
    case Action::gl_adjoint:
        if (alg.diagonal()) throw MathError(ErrorKind::Unsupported, "gl invariants need a matrix complex");
        return gl_invariants(alg, i, w);
    case Action::sym:
    case Action::hyperoct: {
        MonoIndex idx;
        Echelon e;
        std::vector<Poly> out;
        for (const auto& m : component_basis(alg, i, w)) {
            Poly r = reynolds(alg, action, Poly{{m, Rational(1)}});
            if (!r.empty() && e.insert(idx.vec(r))) out.push_back(std::move(r));
        }
        return out;
    }
    }
    return {};
}

// ---------------------------------------------------------------- complexes per weight

namespace {

struct Component {
    std::vector<Poly> basis;
    int rank = 0;  // rank of d out of this component
    std::vector<Poly> cycles;
};

std::vector<Component> weight_complex(const DGAlgebraSpec& alg, Action action, const std::vector<int>& w,
                                      bool want_cycles, MonoIndex& idx) {
    const int top = weight_sum(w) + 1;
    std::vector<Component> comps(top + 1);
    for (int i = 0; i <= top; ++i) comps[i].basis = invariant_basis(alg, action, i, w);
    for (int i = 1; i <= top; ++i) {
        Component& c = comps[i];
        if (c.basis.empty()) continue;
        Echelon below;
        if (action != Action::none)
            for (const auto& b : comps[i - 1].basis) below.insert(idx.vec(b));
        Echelon e(want_cycles);
        for (const auto& b : c.basis) {
            const SparseVec img = idx.vec(alg.differential(b));
            if (action != Action::none && !below.in_span(img))
                throw MathError(ErrorKind::InternalConsistency,
                                "invariant subspace is not d-stable in degree " + std::to_string(i));
            e.insert(img);
        }
        c.rank = e.rank();
        if (want_cycles)
            for (const auto& kv : e.kernel()) c.cycles.push_back(combination(c.basis, kv));
    }
    if (want_cycles) comps[0].cycles = comps[0].basis;
    return comps;
}

HomologyEntry make_entry(const std::vector<int>& w, const std::vector<Component>& comps) {
    HomologyEntry h;
    h.w = w;
    int top = 0;
    for (int i = 0; i < static_cast<int>(comps.size()); ++i)
        if (!comps[i].basis.empty()) top = i;
    for (int i = 0; i <= top; ++i) {
        h.dims.push_back(static_cast<int>(comps[i].basis.size()));
        h.ranks.push_back(comps[i].rank);
    }
    for (int i = 0; i <= top; ++i) {
        const int next = i + 1 < static_cast<int>(comps.size()) ? comps[i + 1].rank : 0;
        h.homology.push_back(h.dims[i] - h.ranks[i] - next);
    }
    long long e = 0;
    for (int i = 0; i <= top; ++i) e += (i % 2 ? -1 : 1) * h.dims[i];
    h.euler = Rational(e);
    return h;
}

HomologyReport run_homology(const DGAlgebraSpec& alg, Action action, const WeightBox& box) {
    HomologyReport rep;
    rep.complex = kind_name(alg.kind);
    rep.n = alg.n;
    rep.invariants = action_name(action);
    rep.qparam = alg.qparam;
    rep.weights.resize(box.weights.size());
    parallel_for(box.weights.size(), [&](std::size_t k) {
        MonoIndex idx;
        rep.weights[k] = make_entry(box.weights[k], weight_complex(alg, action, box.weights[k], false, idx));
    });
    return rep;
}

}  // namespace

Rational HomologyEntry::homology_euler() const {
    long long e = 0;
    for (std::size_t i = 0; i < homology.size(); ++i) e += (i % 2 ? -1 : 1) * homology[i];
    return Rational(e);
}

HomologyReport homology_dims(const DGAlgebraSpec& alg, const WeightBox& box) {
    return run_homology(alg, Action::none, box);
}

HomologyReport invariant_homology(const DGAlgebraSpec& alg, Action action, const WeightBox& box) {
    return run_homology(alg, action, box);
}

const HomologyEntry* HomologyReport::find(const std::vector<int>& w) const {
    for (const auto& e : weights)
        if (e.w == w) return &e;
    return nullptr;
}

nlohmann::json HomologyReport::to_json() const {
    nlohmann::json ws = nlohmann::json::array();
    for (const auto& e : weights)
        ws.push_back({{"w", e.w},
                      {"dims", e.dims},
                      {"ranks", e.ranks},
                      {"homology", e.homology},
                      {"euler", e.euler.str()}});
    return {{"complex", complex}, {"n", n}, {"invariants", invariants}, {"qparam", qparam.str()}, {"weights", ws}};
}

HomologyReport HomologyReport::from_json(const nlohmann::json& j) {
    HomologyReport r;
    r.complex = j.at("complex").get<std::string>();
    r.n = j.at("n").get<int>();
    if (j.contains("invariants")) r.invariants = j.at("invariants").get<std::string>();
    if (j.contains("qparam")) r.qparam = Rational::parse(j.at("qparam").get<std::string>());
    for (const auto& x : j.at("weights")) {
        HomologyEntry e;
        e.w = x.at("w").get<std::vector<int>>();
        e.dims = x.at("dims").get<std::vector<int>>();
        e.homology = x.at("homology").get<std::vector<int>>();
        if (x.contains("ranks")) e.ranks = x.at("ranks").get<std::vector<int>>();
        e.euler = Rational::parse(x.at("euler").get<std::string>());
        r.weights.push_back(std::move(e));
    }
    return r;
}

namespace {

std::string join(const std::vector<int>& v, const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(v[i]);
    }
    return s;
}

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

}  // namespace

std::string HomologyReport::to_csv() const {
    std::ostringstream os;
    os << "complex,n,invariants,w,i,dim,rank_d_i,rank_d_next,homology,euler\n";
    for (const auto& e : weights)
        for (std::size_t i = 0; i < e.dims.size(); ++i)
            os << complex << ',' << n << ',' << invariants << ',' << join(e.w, ";") << ',' << i << ',' << e.dims[i]
               << ',' << e.rank(static_cast<int>(i)) << ',' << e.rank(static_cast<int>(i) + 1) << ','
               << e.homology[i] << ',' << e.euler.str() << '\n';
    return os.str();
}

std::string HomologyReport::to_text() const {
    std::ostringstream os;
    os << "complex " << complex << "  n=" << n << "  invariants " << invariants;
    if (!qparam.is_one()) os << "  q=" << qparam.str();
    os << '\n';
    os << pad("weight", 12) << pad("dims", 24) << pad("homology", 24) << "euler\n";
    for (const auto& e : weights)
        os << pad("(" + join(e.w, ",") + ")", 12) << pad("[" + join(e.dims, " ") + "]", 24)
           << pad("[" + join(e.homology, " ") + "]", 24) << e.euler.str() << '\n';
    return os.str();
}

// ---------------------------------------------------------------- Harish-Chandra map

Poly hc_map(const DGAlgebraSpec& src, const DGAlgebraSpec& tgt, const Poly& p) {
    const int n = src.n;
    Poly out;
    for (const auto& [m, c] : p) {
        Monomial acc;
        int sign = 1;
        bool zero = false;
        for (const auto& [g, e] : m.f) {
            const int l = g / (n * n), i = (g / n) % n, j = g % n;
            if (i != j) {
                zero = true;
                break;
            }
            auto [s, prod] = tgt.mul(acc, Monomial{{{tgt.diag_id(l, i), e}}});
            if (s == 0) {
                zero = true;
                break;
            }
            sign *= s;
            acc = std::move(prod);
        }
        if (!zero) poly_add(out, acc, sign > 0 ? c : -c);
    }
    return out;
}

bool HcWeight::h0_iso() const {
    return degrees.empty() || (degrees[0].injective() && degrees[0].surjective());
}
bool HcWeight::surjective() const {
    return std::all_of(degrees.begin(), degrees.end(), [](const HcDegree& d) { return d.surjective(); });
}
bool HcWeight::bijective() const {
    return std::all_of(degrees.begin(), degrees.end(),
                       [](const HcDegree& d) { return d.surjective() && d.injective(); });
}

bool HcReport::chain_map() const {
    return std::all_of(weights.begin(), weights.end(),
                       [](const HcWeight& w) { return w.chain_map && w.lands_in_invariants; });
}
bool HcReport::surjective() const {
    return std::all_of(weights.begin(), weights.end(), [](const HcWeight& w) { return w.surjective(); });
}
bool HcReport::bijective() const {
    return std::all_of(weights.begin(), weights.end(), [](const HcWeight& w) { return w.bijective(); });
}

HcReport hc_map_check(int n, const WeightBox& box, const Rational& q) {
    if (n < 1 || n > 3) throw MathError(ErrorKind::Unsupported, "hc-map supports n = 1..3");
    const bool plain = q.is_one();
    const DGAlgebraSpec src = build_complex(plain ? ComplexKind::xy : ComplexKind::qpoly, n,
                                            plain ? std::nullopt : std::optional<Rational>(q));
    const DGAlgebraSpec tgt = build_complex(plain ? ComplexKind::diag_xy : ComplexKind::diag_qpoly, n,
                                            plain ? std::nullopt : std::optional<Rational>(q));
    HcReport rep;
    rep.n = n;
    rep.qparam = q;
    rep.weights.resize(box.weights.size());
    parallel_for(box.weights.size(), [&](std::size_t k) {
        const auto& w = box.weights[k];
        HcWeight hw;
        hw.w = w;
        const int top = weight_sum(w) + 1;
        for (int i = 1; i <= top && hw.chain_map; ++i)
            for (const auto& m : component_basis(src, i, w)) {
                const Poly one{{m, Rational(1)}};
                if (hc_map(src, tgt, src.differential(one)) != tgt.differential(hc_map(src, tgt, one))) {
                    hw.chain_map = false;
                    break;
                }
            }
        MonoIndex si, ti;
        const auto S = weight_complex(src, Action::gl_adjoint, w, true, si);
        const auto T = weight_complex(tgt, Action::sym, w, true, ti);
        int last = 0;
        for (int i = 0; i <= top; ++i)
            if (!S[i].basis.empty() || !T[i].basis.empty()) last = i;
        for (int i = 0; i <= last; ++i) {
            Echelon inv;
            for (const auto& b : T[i].basis) inv.insert(ti.vec(b));
            for (const auto& b : S[i].basis)
                if (!inv.in_span(ti.vec(hc_map(src, tgt, b)))) hw.lands_in_invariants = false;
            HcDegree d;
            d.degree = i;
            const int s_next = i + 1 <= top ? S[i + 1].rank : 0;
            const int t_next = i + 1 <= top ? T[i + 1].rank : 0;
            d.source_h = static_cast<int>(S[i].cycles.size()) - s_next;
            d.target_h = static_cast<int>(T[i].cycles.size()) - t_next;
            Echelon img;
            if (i + 1 <= top)
                for (const auto& b : T[i + 1].basis) img.insert(ti.vec(tgt.differential(b)));
            const int base = img.rank();
            for (const auto& z : S[i].cycles) img.insert(ti.vec(hc_map(src, tgt, z)));
            d.rank = img.rank() - base;
            hw.degrees.push_back(d);
        }
        rep.weights[k] = std::move(hw);
    });
    return rep;
}

nlohmann::json HcReport::to_json() const {
    nlohmann::json ws = nlohmann::json::array();
    for (const auto& w : weights) {
        nlohmann::json ds = nlohmann::json::array();
        for (const auto& d : w.degrees)
            ds.push_back({{"i", d.degree},
                          {"source_h", d.source_h},
                          {"target_h", d.target_h},
                          {"rank", d.rank},
                          {"injective", d.injective()},
                          {"surjective", d.surjective()}});
        ws.push_back({{"w", w.w},
                      {"chain_map", w.chain_map},
                      {"lands_in_invariants", w.lands_in_invariants},
                      {"h0_iso", w.h0_iso()},
                      {"surjective", w.surjective()},
                      {"bijective", w.bijective()},
                      {"degrees", ds}});
    }
    return {{"n", n},
            {"qparam", qparam.str()},
            {"chain_map", chain_map()},
            {"surjective", surjective()},
            {"bijective", bijective()},
            {"weights", ws}};
}

std::string HcReport::to_csv() const {
    std::ostringstream os;
    os << "n,w,i,source_h,target_h,rank,injective,surjective,chain_map\n";
    for (const auto& w : weights)
        for (const auto& d : w.degrees)
            os << n << ',' << join(w.w, ";") << ',' << d.degree << ',' << d.source_h << ',' << d.target_h << ','
               << d.rank << ',' << (d.injective() ? 1 : 0) << ',' << (d.surjective() ? 1 : 0) << ','
               << (w.chain_map && w.lands_in_invariants ? 1 : 0) << '\n';
    return os.str();
}

std::string HcReport::to_text() const {
    std::ostringstream os;
    os << "hc-map  n=" << n;
    if (!qparam.is_one()) os << "  q=" << qparam.str();
    os << "  chain map " << (chain_map() ? "yes" : "NO") << '\n';
    os << pad("weight", 12) << pad("source H", 18) << pad("target H", 18) << pad("rank", 18) << "status\n";
    for (const auto& w : weights) {
        std::vector<int> s, t, r;
        for (const auto& d : w.degrees) {
            s.push_back(d.source_h);
            t.push_back(d.target_h);
            r.push_back(d.rank);
        }
        const char* status = w.bijective() ? "bijective" : w.surjective() ? "surjective" : "not surjective";
        os << pad("(" + join(w.w, ",") + ")", 12) << pad("[" + join(s, " ") + "]", 18)
           << pad("[" + join(t, " ") + "]", 18) << pad("[" + join(r, " ") + "]", 18) << status << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------- q-deformed count

long long power_sum_monomials(int n, const std::vector<int>& w) {
    if (w.size() != 2) throw MathError(ErrorKind::DimensionMismatch, "power sum count needs a weight (a,b)");
    // parts[m][k]: partitions of m into exactly k parts
    auto exact_parts = [](int m, int kmax) {
        std::vector<std::vector<long long>> p(m + 1, std::vector<long long>(kmax + 1, 0));
        p[0][0] = 1;
        for (int s = 1; s <= m; ++s)
            for (int k = 1; k <= kmax && k <= s; ++k) p[s][k] = p[s - 1][k - 1] + (s - k >= k ? p[s - k][k] : 0);
        return p;
    };
    const auto pa = exact_parts(w[0], n), pb = exact_parts(w[1], n);
    long long total = 0;
    for (int k = 0; k <= n; ++k)
        for (int l = 0; k + l <= n; ++l) total += pa[w[0]][k] * pb[w[1]][l];
    return total;
}

std::vector<QpolyCount> qpoly_h0_count(int n, const WeightBox& box, const Rational& q) {
    const DGAlgebraSpec alg = build_complex(ComplexKind::qpoly, n, q);
    const HomologyReport rep = invariant_homology(alg, Action::gl_adjoint, box);
    std::vector<QpolyCount> out;
    for (const auto& e : rep.weights) {
        QpolyCount c;
        c.w = e.w;
        c.h0 = e.h(0);
        c.expected = power_sum_monomials(n, e.w);
        for (std::size_t i = 1; i < e.homology.size(); ++i)
            if (e.homology[i] != 0) c.higher_vanish = false;
        out.push_back(c);
    }
    return out;
}

}  // namespace rephom
