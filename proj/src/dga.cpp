#include "rephom/dga.hpp"

#include "rephom/errors.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace rephom {

std::string GeneratorSpec::name() const {
    std::string s = tag + "_";
    for (int k : index) s += std::to_string(k);
    return s;
}

int Monomial::length() const {
    int s = 0;
    for (const auto& [g, e] : f) s += e;
    return s;
}

bool operator<(const Monomial& a, const Monomial& b) {
    const int la = a.length(), lb = b.length();
    if (la != lb) return la < lb;
    return a.f < b.f;
}

void poly_add(Poly& p, const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto it = p.find(m);
    if (it == p.end()) {
        p.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) p.erase(it);
}

void poly_add(Poly& p, const Poly& q, const Rational& c) {
    for (const auto& [m, x] : q) poly_add(p, m, c * x);
}

std::string kind_name(ComplexKind k) {
    switch (k) {
    case ComplexKind::xy: return "xy";
    case ComplexKind::qpoly: return "qpoly";
    case ComplexKind::xyz: return "xyz";
    case ComplexKind::diag_xy: return "diag_xy";
    case ComplexKind::diag_qpoly: return "diag_qpoly";
    case ComplexKind::diag_xyz: return "diag_xyz";
    }
    return "?";
}

ComplexKind kind_from_name(const std::string& s0) {
    std::string s = s0;
    std::replace(s.begin(), s.end(), '-', '_');
    for (ComplexKind k : {ComplexKind::xy, ComplexKind::qpoly, ComplexKind::xyz, ComplexKind::diag_xy,
                          ComplexKind::diag_qpoly, ComplexKind::diag_xyz})
        if (kind_name(k) == s) return k;
    throw MathError(ErrorKind::Unsupported, "unknown complex kind: " + s0);
}

bool is_diagonal(ComplexKind k) {
    return k == ComplexKind::diag_xy || k == ComplexKind::diag_qpoly || k == ComplexKind::diag_xyz;
}

ComplexKind partner_kind(ComplexKind k) {
    switch (k) {
    case ComplexKind::xy: return ComplexKind::diag_xy;
    case ComplexKind::qpoly: return ComplexKind::diag_qpoly;
    case ComplexKind::xyz: return ComplexKind::diag_xyz;
    case ComplexKind::diag_xy: return ComplexKind::xy;
    case ComplexKind::diag_qpoly: return ComplexKind::qpoly;
    case ComplexKind::diag_xyz: return ComplexKind::xyz;
    }
    return k;
}

FreeResolution resolution_xy(const Rational& q) {
    FreeResolution r;
    r.letters = {{"x", 0, {1, 0}}, {"y", 0, {0, 1}}, {"theta", 1, {1, 1}}};
    r.d = {{}, {}, {{Rational(1), {0, 1}}, {-q, {1, 0}}}};
    return r;
}

FreeResolution resolution_xyz() {
    FreeResolution r;
    r.letters = {{"x", 0, {1, 0, 0}},     {"y", 0, {0, 1, 0}},      {"z", 0, {0, 0, 1}},
                 {"xi", 1, {0, 1, 1}},    {"theta", 1, {1, 0, 1}},  {"lambda", 1, {1, 1, 0}},
                 {"t", 2, {1, 1, 1}}};
    const Rational one(1), mone(-1);
    r.d.assign(7, {});
    r.d[3] = {{one, {1, 2}}, {mone, {2, 1}}};
    r.d[4] = {{one, {2, 0}}, {mone, {0, 2}}};
    r.d[5] = {{one, {0, 1}}, {mone, {1, 0}}};
    // x, y, z are even so [a, b] = ab - ba
    r.d[6] = {{one, {0, 3}}, {mone, {3, 0}}, {one, {1, 4}}, {mone, {4, 1}}, {one, {2, 5}}, {mone, {5, 2}}};
    return r;
}

int DGAlgebraSpec::degree(const Monomial& m) const {
    int s = 0;
    for (const auto& [g, e] : m.f) s += gens[g].degree * e;
    return s;
}

std::vector<int> DGAlgebraSpec::weight(const Monomial& m) const {
    std::vector<int> w(rank, 0);
    for (const auto& [g, e] : m.f)
        for (int k = 0; k < rank; ++k) w[k] += gens[g].weight[k] * e;
    return w;
}

std::string DGAlgebraSpec::str(const Monomial& m) const {
    if (m.f.empty()) return "1";
    std::string s;
    for (const auto& [g, e] : m.f) {
        if (!s.empty()) s += "*";
        s += gens[g].name();
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
}

std::string DGAlgebraSpec::str(const Poly& p) const {
    if (p.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : p) {
        std::string cs = c.str();
        if (!s.empty()) {
            if (cs[0] == '-') {
                s += " - ";
                cs.erase(0, 1);
            } else {
                s += " + ";
            }
        }
        if (m.f.empty()) {
            s += cs;
        } else {
            if (cs == "-1") s += "-";
            else if (cs != "1") s += cs + "*";
            s += str(m);
        }
    }
    return s;
}

std::pair<int, Monomial> DGAlgebraSpec::mul(const Monomial& a, const Monomial& b) const {
    std::vector<int> odd_a;
    for (const auto& [g, e] : a.f)
        if (gens[g].odd()) odd_a.push_back(g);
    int swaps = 0;
    Monomial out;
    out.f.reserve(a.f.size() + b.f.size());
    std::size_t i = 0, j = 0;
    while (i < a.f.size() || j < b.f.size()) {
        if (j == b.f.size() || (i < a.f.size() && a.f[i].first < b.f[j].first)) {
            out.f.push_back(a.f[i++]);
            continue;
        }
        const int h = b.f[j].first;
        if (gens[h].odd())
            swaps += static_cast<int>(odd_a.end() - std::upper_bound(odd_a.begin(), odd_a.end(), h));
        if (i < a.f.size() && a.f[i].first == h) {
            if (gens[h].odd()) return {0, Monomial{}};
            out.f.emplace_back(h, a.f[i].second + b.f[j].second);
            ++i;
        } else {
            out.f.push_back(b.f[j]);
        }
        ++j;
    }
    return {swaps % 2 ? -1 : 1, std::move(out)};
}

Poly DGAlgebraSpec::mul(const Poly& a, const Poly& b) const {
    Poly out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            auto [sg, m] = mul(ma, mb);
            if (sg == 0) continue;
            poly_add(out, m, sg > 0 ? ca * cb : -(ca * cb));
        }
    return out;
}

namespace {

// sum over factor slots of sign(slot) * e * (prefix g^{e-1}) * value(g) * suffix
Poly leibniz(const DGAlgebraSpec& alg, const std::vector<Poly>& values, const Monomial& m, bool odd_derivation) {
    Poly out;
    int prefix_degree = 0;
    for (std::size_t p = 0; p < m.f.size(); ++p) {
        const auto [g, e] = m.f[p];
        const Poly& dg = values[g];
        if (!dg.empty()) {
            Monomial left, right;
            left.f.assign(m.f.begin(), m.f.begin() + static_cast<long>(p));
            if (e > 1) left.f.emplace_back(g, e - 1);
            right.f.assign(m.f.begin() + static_cast<long>(p) + 1, m.f.end());
            Rational c(e);
            if (odd_derivation && prefix_degree % 2) c = -c;
            Poly lp{{left, c}};
            Poly rp{{right, Rational(1)}};
            poly_add(out, alg.mul(alg.mul(lp, dg), rp));
        }
        prefix_degree += alg.gens[g].degree * e;
    }
    return out;
}

}  // namespace

Poly DGAlgebraSpec::differential(const Monomial& m) const { return leibniz(*this, d, m, true); }

Poly DGAlgebraSpec::differential(const Poly& p) const {
    Poly out;
    for (const auto& [m, c] : p) poly_add(out, differential(m), c);
    return out;
}

Poly DGAlgebraSpec::derivation(const std::vector<Poly>& values, const Monomial& m) const {
    return leibniz(*this, values, m, false);
}

Poly DGAlgebraSpec::derivation(const std::vector<Poly>& values, const Poly& p) const {
    Poly out;
    for (const auto& [m, c] : p) poly_add(out, derivation(values, m), c);
    return out;
}

void DGAlgebraSpec::validate() const {
    if (d.size() != gens.size()) throw MathError(ErrorKind::InternalConsistency, "differential table size");
    for (std::size_t g = 0; g < gens.size(); ++g) {
        for (const auto& [m, c] : d[g]) {
            if (degree(m) != gens[g].degree - 1 || weight(m) != gens[g].weight)
                throw MathError(ErrorKind::InternalConsistency,
                                "d(" + gens[g].name() + ") is not homogeneous: " + str(m));
        }
        if (!differential(d[g]).empty())
            throw MathError(ErrorKind::InternalConsistency, "d^2 != 0 on " + gens[g].name());
    }
}

DGAlgebraSpec rep_complex(const FreeResolution& res, int n, ComplexKind kind, const Rational& q) {
    DGAlgebraSpec alg;
    alg.kind = kind;
    alg.n = n;
    alg.qparam = q;
    alg.rank = static_cast<int>(res.letters.front().weight.size());
    alg.nletters = static_cast<int>(res.letters.size());
    for (const auto& L : res.letters)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) alg.gens.push_back({L.tag, {i + 1, j + 1}, L.degree, L.weight});
    alg.d.assign(alg.gens.size(), {});
    for (int l = 0; l < alg.nletters; ++l)
        for (const auto& term : res.d[l]) {
            const int len = static_cast<int>(term.word.size());
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    // sum over index paths i = k_0, k_1, ..., k_len = j
                    std::vector<int> k(len + 1, 0);
                    std::function<void(int, Poly)> walk = [&](int pos, Poly acc) {
                        if (pos == len - 1) {
                            k[len] = j;
                            Poly g{{alg.generator(alg.gen_id(term.word[pos], k[pos], j)), Rational(1)}};
                            poly_add(alg.d[alg.gen_id(l, i, j)], alg.mul(acc, g), term.c);
                            return;
                        }
                        for (int m = 0; m < n; ++m) {
                            k[pos + 1] = m;
                            Poly g{{alg.generator(alg.gen_id(term.word[pos], k[pos], m)), Rational(1)}};
                            walk(pos + 1, alg.mul(acc, g));
                        }
                    };
                    k[0] = i;
                    walk(0, Poly{{Monomial{}, Rational(1)}});
                }
        }
    alg.validate();
    return alg;
}

DGAlgebraSpec diag_complex(const FreeResolution& res, int n, ComplexKind kind, const Rational& q) {
    DGAlgebraSpec alg;
    alg.kind = kind;
    alg.n = n;
    alg.qparam = q;
    alg.rank = static_cast<int>(res.letters.front().weight.size());
    alg.nletters = static_cast<int>(res.letters.size());
    for (const auto& L : res.letters)
        for (int i = 0; i < n; ++i) alg.gens.push_back({L.tag, {i + 1}, L.degree, L.weight});
    alg.d.assign(alg.gens.size(), {});
    for (int l = 0; l < alg.nletters; ++l)
        for (const auto& term : res.d[l])
            for (int i = 0; i < n; ++i) {
                Poly acc{{Monomial{}, Rational(1)}};
                for (int letter : term.word) acc = alg.mul(acc, Poly{{alg.generator(alg.diag_id(letter, i)), Rational(1)}});
                poly_add(alg.d[alg.diag_id(l, i)], acc, term.c);
            }
    alg.validate();
    return alg;
}

DGAlgebraSpec build_complex(ComplexKind kind, int n, std::optional<Rational> qparam) {
    if (n < 1 || n > 4) throw MathError(ErrorKind::Unsupported, "complex size must be 1..4");
    const bool qkind = kind == ComplexKind::qpoly || kind == ComplexKind::diag_qpoly;
    Rational q(1);
    if (qkind) {
        if (!qparam) throw MathError(ErrorKind::Unsupported, "qpoly complexes need a q parameter");
        if (qparam->is_zero()) throw MathError(ErrorKind::Unsupported, "q parameter must be nonzero");
        q = *qparam;
    } else if (qparam && !qparam->is_one()) {
        throw MathError(ErrorKind::Unsupported, "q parameter only applies to qpoly complexes");
    }
    switch (kind) {
    case ComplexKind::xy:
    case ComplexKind::qpoly: return rep_complex(resolution_xy(q), n, kind, q);
    case ComplexKind::xyz: return rep_complex(resolution_xyz(), n, kind, q);
    case ComplexKind::diag_xy:
    case ComplexKind::diag_qpoly: return diag_complex(resolution_xy(q), n, kind, q);
    case ComplexKind::diag_xyz: return diag_complex(resolution_xyz(), n, kind, q);
    }
    throw MathError(ErrorKind::Unsupported, "unknown complex kind");
}

// ---------------------------------------------------------------- shuffle rule

namespace {

using Word = std::vector<int>;
using NCPoly = std::map<Word, Rational>;

void nc_add(NCPoly& p, const Word& w, const Rational& c) {
    if (c.is_zero()) return;
    Rational& x = p[w];
    x += c;
    if (x.is_zero()) p.erase(w);
}

// graded commutator [u, w] = uw - (-1)^{|u||w|} wu of two letters
NCPoly commutator(int u, int du, int w, int dw, const Rational& c) {
    NCPoly out;
    nc_add(out, {u, w}, c);
    nc_add(out, {w, u}, (du * dw) % 2 ? c : -c);
    return out;
}

}  // namespace

bool shuffle_rule_matches(int r) {
    if (r != 2 && r != 3) throw MathError(ErrorKind::Unsupported, "shuffle check only for r = 2, 3");
    // exterior letters lambda(S), S a nonempty subset of {0..r-1} as a bitmask
    const int nsub = 1 << r;
    auto size_of = [](int S) { return __builtin_popcount(static_cast<unsigned>(S)); };
    auto deg_of = [&](int S) { return size_of(S) - 1; };

    // hard-coded letter and sign for each lambda(S)
    FreeResolution res = r == 2 ? resolution_xy(Rational(1)) : resolution_xyz();
    std::vector<std::pair<int, int>> image(nsub, {-1, 0});
    if (r == 2) {
        image[1] = {0, 1};
        image[2] = {1, 1};
        image[3] = {2, -1};  // theta = -lambda(x,y)
    } else {
        image[1] = {0, 1};
        image[2] = {1, 1};
        image[4] = {2, 1};
        image[6] = {3, -1};  // xi = -lambda(y,z)
        image[5] = {4, 1};   // theta = -lambda(z,x) = lambda(x,z)
        image[3] = {5, -1};  // lambda = -lambda(x,y)
        image[7] = {6, 1};   // t = lambda(x,y,z)
    }

    for (int S = 1; S < nsub; ++S) {
        const int k = size_of(S);
        if (k < 2) continue;
        std::vector<int> elems;
        for (int b = 0; b < r; ++b)
            if (S >> b & 1) elems.push_back(b);
        NCPoly general;
        for (int A = 1; A < nsub; ++A) {
            if ((A & S) != A || A == S) continue;
            const int B = S & ~A;
            const int p = size_of(A), q = k - p;
            if (p > q) continue;
            int inversions = 0;
            for (int a : elems)
                for (int b : elems)
                    if ((A >> a & 1) && (B >> b & 1) && a > b) ++inversions;
            Rational c((p % 2 ? -1 : 1) * (inversions % 2 ? -1 : 1));
            // the rule counts each unordered split twice when p = q
            if (p == q) c = c / Rational(2);
            for (const auto& [w, x] : commutator(A, deg_of(A), B, deg_of(B), c)) nc_add(general, w, x);
        }
        // translate into the hard-coded letters
        NCPoly translated;
        for (const auto& [w, x] : general) {
            Word out;
            Rational c = x;
            for (int L : w) {
                out.push_back(image[L].first);
                if (image[L].second < 0) c = -c;
            }
            nc_add(translated, out, c);
        }
        NCPoly hard;
        const auto [letter, sign] = image[S];
        for (const auto& t : res.d[letter]) nc_add(hard, t.word, sign > 0 ? t.c : -t.c);
        if (translated != hard) return false;
    }
    return true;
}

// ---------------------------------------------------------------- bases and matrices

std::vector<Monomial> component_basis(const DGAlgebraSpec& alg, int i, const std::vector<int>& w) {
    if (static_cast<int>(w.size()) != alg.rank)
        throw MathError(ErrorKind::DimensionMismatch, "weight vector length does not match the complex");
    std::vector<Monomial> out;
    if (i < 0) return out;
    for (int x : w)
        if (x < 0) return out;
    const int ng = static_cast<int>(alg.gens.size());
    std::vector<int> rem = w;
    Monomial cur;
    std::function<void(int, int)> dfs = [&](int g, int deg_left) {
        bool done = deg_left == 0;
        for (int x : rem) done = done && x == 0;
        if (done) {
            out.push_back(cur);
            return;
        }
        if (g == ng) return;
        dfs(g + 1, deg_left);
        const GeneratorSpec& G = alg.gens[g];
        const int max_e = G.odd() ? 1 : 1 << 20;
        int e = 0;
        while (e < max_e) {
            bool fits = G.degree <= deg_left;
            for (int k = 0; k < alg.rank; ++k) fits = fits && G.weight[k] <= rem[k];
            if (!fits) break;
            ++e;
            for (int k = 0; k < alg.rank; ++k) rem[k] -= G.weight[k];
            deg_left -= G.degree;
            cur.f.emplace_back(g, e);
            dfs(g + 1, deg_left);
            cur.f.pop_back();
        }
        for (int k = 0; k < alg.rank; ++k) rem[k] += e * G.weight[k];
    };
    dfs(0, i);
    std::sort(out.begin(), out.end());
    return out;
}

Rational SparseMatrixQ::at(int r, int c) const {
    auto it = entries.find({r, c});
    return it == entries.end() ? Rational(0) : it->second;
}

std::vector<SparseVec> SparseMatrixQ::columns() const {
    std::vector<std::map<int, Rational>> cols_m(cols.size());
    for (const auto& [rc, x] : entries) cols_m[rc.second][rc.first] = x;
    std::vector<SparseVec> out;
    out.reserve(cols.size());
    for (const auto& m : cols_m) out.push_back(sparse_from_map(m));
    return out;
}

SparseMatrixQ differential_matrix(const DGAlgebraSpec& alg, int i, const std::vector<int>& w) {
    SparseMatrixQ M;
    M.cols = component_basis(alg, i, w);
    M.rows = component_basis(alg, i - 1, w);
    std::map<Monomial, int> row_index;
    for (std::size_t r = 0; r < M.rows.size(); ++r) row_index[M.rows[r]] = static_cast<int>(r);
    for (std::size_t c = 0; c < M.cols.size(); ++c)
        for (const auto& [m, x] : alg.differential(M.cols[c])) {
            auto it = row_index.find(m);
            if (it == row_index.end())
                throw MathError(ErrorKind::InternalConsistency, "d leaves the target component: " + alg.str(m));
            M.entries[{it->second, static_cast<int>(c)}] = x;
        }
    return M;
}

}  // namespace rephom
