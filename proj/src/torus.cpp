#include "rephom/torus.hpp"

#include "rephom/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace rephom {

Lattice Lattice::from(const std::vector<int>& v) {
    if (v.size() > static_cast<std::size_t>(kMaxAmbient))
        throw MathError(ErrorKind::DimensionMismatch, "lattice dimension too large");
    Lattice l;
    for (std::size_t i = 0; i < v.size(); ++i) l.c[i] = static_cast<std::int16_t>(v[i]);
    return l;
}

std::vector<int> Lattice::to_vector(int dim) const { return std::vector<int>(c.begin(), c.begin() + dim); }

int Lattice::l1() const {
    int s = 0;
    for (auto x : c) s += std::abs(x);
    return s;
}

Lattice Lattice::operator+(const Lattice& o) const {
    Lattice r;
    for (int i = 0; i < kMaxAmbient; ++i) r.c[i] = static_cast<std::int16_t>(c[i] + o.c[i]);
    return r;
}

Lattice Lattice::scaled(int k) const {
    Lattice r;
    for (int i = 0; i < kMaxAmbient; ++i) r.c[i] = static_cast<std::int16_t>(c[i] * k);
    return r;
}

bool Lattice::is_zero() const {
    for (auto x : c)
        if (x) return false;
    return true;
}

TorusPoly TorusPoly::one(int dim, const SeriesOrder& order) {
    return term(dim, std::vector<int>(dim, 0), MultiSeries::one(order));
}

TorusPoly TorusPoly::term(int dim, const std::vector<int>& lattice, const MultiSeries& coeff) {
    if (static_cast<int>(lattice.size()) != dim)
        throw MathError(ErrorKind::DimensionMismatch, "lattice vector has the wrong length");
    TorusPoly p(dim, coeff.order());
    p.add_term(Lattice::from(lattice), coeff);
    return p;
}

TorusPoly TorusPoly::one_minus(int dim, const std::vector<int>& root, const MultiSeries& c) {
    TorusPoly p = one(dim, c.order());
    p.add_term(Lattice::from(root), -c);
    return p;
}

MultiSeries TorusPoly::coeff(const std::vector<int>& lattice) const {
    auto it = terms_.find(Lattice::from(lattice));
    return it == terms_.end() ? MultiSeries(order_) : it->second;
}

void TorusPoly::add_term(const Lattice& l, const MultiSeries& c) {
    if (c.order() != order_) throw MathError(ErrorKind::OrderMismatch, "torus coefficient order mismatch");
    if (c.is_zero()) return;
    auto it = terms_.find(l);
    if (it == terms_.end()) {
        terms_.emplace(l, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

TorusPoly& TorusPoly::operator+=(const TorusPoly& o) {
    if (o.dim_ != dim_) throw MathError(ErrorKind::DimensionMismatch, "torus dimension mismatch");
    for (const auto& [l, c] : o.terms_) add_term(l, c);
    return *this;
}

TorusPoly TorusPoly::operator*(const MultiSeries& c) const {
    TorusPoly r(dim_, order_);
    for (const auto& [l, s] : terms_) r.add_term(l, s * c);
    return r;
}

TorusPoly TorusPoly::transported(const WeylElement& w) const {
    TorusPoly r(dim_, order_);
    for (const auto& [l, s] : terms_) r.add_term(Lattice::from(weyl_act(w, l.to_vector(dim_))), s);
    return r;
}

namespace {

// Degree budget for surviving terms: a monomial of total degree deg at
// lattice point lambda is kept when ||lambda|| <= F + (Mp/Mq) * (S - deg).
struct Budget {
    long long F = 0;
    long long Mp = 0, Mq = 1;
    int S = 0;
    bool unlimited = false;

    bool keeps(int norm, int deg) const {
        if (unlimited) return true;
        long long lhs = (static_cast<long long>(norm) - F) * Mq;
        return lhs <= Mp * static_cast<long long>(S - deg);
    }
};

int term_degree(const SeriesOrder& o, std::uint64_t key) {
    auto e = o.unpack(key);
    return e[0] + e[1] + e[2] + e[3];
}

// F and M of a factor, as described in Budget; M returned as a reduced fraction.
void factor_reach(const TorusPoly& f, long long& F, long long& Mp, long long& Mq) {
    const SeriesOrder& o = f.order();
    F = 0;
    for (const auto& [l, s] : f.terms())
        if (!s.constant_term().is_zero()) F = std::max<long long>(F, l.l1());
    Mp = 0;
    Mq = 1;
    for (const auto& [l, s] : f.terms())
        for (const auto& t : s.terms()) {
            int d = term_degree(o, t.key);
            if (d == 0) continue;
            long long num = l.l1() - F;
            if (num * Mq > Mp * d) {
                Mp = num;
                Mq = d;
            }
        }
}

TorusPoly multiply(const TorusPoly& a, const TorusPoly& b, const Budget* budget) {
    if (a.dim() != b.dim()) throw MathError(ErrorKind::DimensionMismatch, "torus dimension mismatch");
    if (a.order() != b.order()) throw MathError(ErrorKind::OrderMismatch, "torus order mismatch");
    const SeriesOrder& o = a.order();
    struct Pair {
        Lattice out;
        const MultiSeries* x;
        const MultiSeries* y;
    };
    std::vector<Pair> pairs;
    pairs.reserve(a.size() * b.size());
    for (const auto& [la, sa] : a.terms())
        for (const auto& [lb, sb] : b.terms()) pairs.push_back({la + lb, &sa, &sb});
    std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& p, const Pair& q) { return p.out < q.out; });
    TorusPoly r(a.dim(), o);
    SeriesAccumulator acc(o);
    for (std::size_t i = 0; i < pairs.size();) {
        std::size_t j = i;
        int norm = pairs[i].out.l1();
        bool reachable = !budget || budget->keeps(norm, 0);
        for (; j < pairs.size() && pairs[j].out == pairs[i].out; ++j)
            if (reachable) acc.add_product(*pairs[j].x, *pairs[j].y);
        if (reachable) {
            MultiSeries s = acc.take();
            if (budget && !budget->unlimited) {
                std::vector<MultiSeries::Term> kept;
                for (const auto& t : s.terms())
                    if (budget->keeps(norm, term_degree(o, t.key))) kept.push_back(t);
                if (kept.size() != s.size()) s = MultiSeries::from_terms(o, std::move(kept));
            }
            r.add_term(pairs[i].out, s);
        }
        i = j;
    }
    return r;
}

}  // namespace

TorusPoly tp_mul(const TorusPoly& a, const TorusPoly& b) { return multiply(a, b, nullptr); }

TorusPoly expand_geometric(const std::vector<int>& root, const MultiSeries& scalar) {
    if (!scalar.constant_term().is_zero())
        throw MathError(ErrorKind::Divergent, "geometric expansion needs a scalar with zero constant term");
    const int dim = static_cast<int>(root.size());
    TorusPoly r = TorusPoly::one(dim, scalar.order());
    Lattice step = Lattice::from(root);
    MultiSeries power = scalar;
    for (int k = 1; !power.is_zero(); ++k) {
        r.add_term(step.scaled(k), power);
        power = power * scalar;
    }
    return r;
}

MultiSeries constant_term(const TorusPoly& a) {
    auto it = a.terms().find(Lattice{});
    return it == a.terms().end() ? MultiSeries(a.order()) : it->second;
}

std::vector<TorusPoly> root_factors(const RootSystem& rs, const FactorRule& rule, const SeriesOrder& order) {
    std::vector<TorusPoly> out;
    std::set<std::vector<int>> done;
    for (const auto& a : rs.roots) {
        if (done.count(a)) continue;
        auto neg = a;
        for (int& x : neg) x = -x;
        for (const std::vector<int>* r : {&a, static_cast<const std::vector<int>*>(&neg)}) {
            TorusPoly f = rule(*r);
            if (f.dim() != rs.ambient || f.order() != order)
                throw MathError(ErrorKind::OrderMismatch, "factor rule produced a mismatched torus polynomial");
            out.push_back(std::move(f));
            done.insert(*r);
        }
    }
    return out;
}

TorusPoly root_product(const RootSystem& rs, const FactorRule& rule, const SeriesOrder& order) {
    TorusPoly acc = TorusPoly::one(rs.ambient, order);
    for (const auto& f : root_factors(rs, rule, order)) acc = tp_mul(acc, f);
    return acc;
}

MultiSeries ct_of_product(const std::vector<TorusPoly>& factors, CtStats* stats) {
    if (factors.empty()) throw MathError(ErrorKind::DimensionMismatch, "empty factor list");
    const int dim = factors[0].dim();
    const SeriesOrder& o = factors[0].order();
    const std::size_t n = factors.size();
    // suffix sums of F and suffix maxima of M over the factors not yet multiplied
    std::vector<long long> F(n + 1, 0), Mp(n + 1, 0), Mq(n + 1, 1);
    for (std::size_t i = n; i-- > 0;) {
        long long f, mp, mq;
        factor_reach(factors[i], f, mp, mq);
        F[i] = F[i + 1] + f;
        if (mp * Mq[i + 1] > Mp[i + 1] * mq) {
            Mp[i] = mp;
            Mq[i] = mq;
        } else {
            Mp[i] = Mp[i + 1];
            Mq[i] = Mq[i + 1];
        }
    }
    TorusPoly acc = TorusPoly::one(dim, o);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        Budget b{F[i + 1], Mp[i + 1], Mq[i + 1], o.total_bound(), false};
        acc = multiply(acc, factors[i], &b);
        if (stats) {
            stats->max_terms = std::max(stats->max_terms, acc.size());
            for (const auto& [l, s] : acc.terms())
                for (auto x : l.c) stats->max_sup_norm = std::max(stats->max_sup_norm, std::abs(int(x)));
        }
    }
    // the last factor only needs the pairs that land on 0
    const TorusPoly& last = factors[n - 1];
    SeriesAccumulator total(o);
    for (const auto& [l, s] : acc.terms()) {
        Lattice neg = l.scaled(-1);
        auto it = last.terms().find(neg);
        if (it != last.terms().end()) total.add_product(s, it->second);
    }
    return total.take();
}

}  // namespace rephom
