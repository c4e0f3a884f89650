#include "rephom/laurent.hpp"

#include "rephom/errors.hpp"

#include <algorithm>
#include <sstream>

namespace rephom {

LaurentPoly LaurentPoly::constant(const Rational& c) { return monomial(0, 0, c); }

LaurentPoly LaurentPoly::monomial(int a, int b, const Rational& c) {
    LaurentPoly p;
    if (!c.is_zero()) p.terms_[{a, b}] = c;
    return p;
}

LaurentPoly LaurentPoly::binomial(int a, int b) {
    LaurentPoly p = constant(Rational(1));
    p.add_term({a, b}, Rational(-1));
    return p;
}

Rational LaurentPoly::coeff(int a, int b) const {
    auto it = terms_.find({a, b});
    return it == terms_.end() ? Rational(0) : it->second;
}

void LaurentPoly::add_term(const Exp& e, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly p;
    for (const auto& [e, c] : terms_) p.terms_[e] = -c;
    return p;
}

LaurentPoly operator*(const LaurentPoly& x, const LaurentPoly& y) {
    LaurentPoly p;
    for (const auto& [ex, cx] : x.terms_)
        for (const auto& [ey, cy] : y.terms_) p.add_term({ex.first + ey.first, ex.second + ey.second}, cx * cy);
    return p;
}

LaurentPoly operator*(LaurentPoly x, const Rational& c) {
    if (c.is_zero()) return LaurentPoly();
    for (auto& [e, v] : x.terms_) v *= c;
    return x;
}

LaurentPoly LaurentPoly::shift(int a, int b) const {
    LaurentPoly p;
    for (const auto& [e, c] : terms_) p.terms_[{e.first + a, e.second + b}] = c;
    return p;
}

LaurentPoly::Exp LaurentPoly::min_corner() const {
    if (terms_.empty()) return {0, 0};
    int a = terms_.begin()->first.first, b = terms_.begin()->first.second;
    for (const auto& [e, c] : terms_) {
        a = std::min(a, e.first);
        b = std::min(b, e.second);
    }
    return {a, b};
}

namespace {

int floor_div(int x, int y) {
    int d = x / y;
    if ((x % y != 0) && ((x < 0) != (y < 0))) --d;
    return d;
}

}  // namespace

std::optional<LaurentPoly> LaurentPoly::divide_binomial(int a, int b) const {
    if (a == 0 && b == 0) return std::nullopt;
    // Split the support into cosets of the line through (a,b); inside a coset
    // the problem is division of a Laurent polynomial in z = q^a t^b by 1 - z.
    bool use_a = a != 0;
    int step = use_a ? a : b;
    std::map<Exp, std::map<int, Rational>> cosets;
    for (const auto& [e, c] : terms_) {
        int lead = use_a ? e.first : e.second;
        int k = step > 0 ? floor_div(lead, step) : -floor_div(lead, -step);
        Exp base{e.first - k * a, e.second - k * b};
        cosets[base][k] += c;
    }
    LaurentPoly out;
    for (const auto& [base, coeffs] : cosets) {
        // Q(z)(1 - z) = P(z): Q_k = sum_{m <= k} P_m
        Rational run(0);
        int lo = coeffs.begin()->first, hi = coeffs.rbegin()->first;
        auto it = coeffs.begin();
        for (int k = lo; k <= hi; ++k) {
            if (it != coeffs.end() && it->first == k) {
                run += it->second;
                ++it;
            }
            if (k == hi) {
                if (!run.is_zero()) return std::nullopt;
                break;
            }
            out.add_term({base.first + k * a, base.second + k * b}, run);
        }
    }
    return out;
}

std::string LaurentPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.str();
        if (e.first) os << "*q^" << e.first;
        if (e.second) os << "*t^" << e.second;
    }
    return os.str();
}

LaurentRat::LaurentRat(LaurentPoly n, LaurentPoly d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw MathError(ErrorKind::Pole, "zero denominator");
}

LaurentRat operator+(const LaurentRat& x, const LaurentRat& y) {
    if (x.den == y.den) return LaurentRat(x.num + y.num, x.den);
    return LaurentRat(x.num * y.den + y.num * x.den, x.den * y.den);
}

LaurentRat operator*(const LaurentRat& x, const LaurentRat& y) {
    return LaurentRat(x.num * y.num, x.den * y.den);
}

MultiSeries laurent_expand(const LaurentPoly& p, const SeriesOrder& order) {
    if (order.nvars() != 2 || order.var(0) != Var::q || order.var(1) != Var::t)
        throw MathError(ErrorKind::OrderMismatch, "Laurent expansion needs a (q,t) order");
    MultiSeries r(order);
    for (const auto& [e, c] : p.terms()) {
        if (e.first < 0 || e.second < 0) throw MathError(ErrorKind::Pole, "negative exponent in expansion");
        r += MultiSeries::monomial(order, {e.first, e.second}, c);
    }
    return r;
}

MultiSeries laurent_expand(const LaurentRat& r, const SeriesOrder& order) {
    if (order.nvars() != 2 || order.var(0) != Var::q || order.var(1) != Var::t)
        throw MathError(ErrorKind::OrderMismatch, "Laurent expansion needs a (q,t) order");
    if (r.num.is_zero()) return MultiSeries(order);
    auto [da, db] = r.den.min_corner();
    if (r.den.coeff(da, db).is_zero())
        throw MathError(ErrorKind::Pole, "denominator has no lowest monomial; not expandable at the origin");
    LaurentPoly num = r.num.shift(-da, -db);
    LaurentPoly den = r.den.shift(-da, -db);
    auto [ca, cb] = num.min_corner();
    int sa = std::min(ca, 0), sb = std::min(cb, 0);
    // expand num * q^{-sa} t^{-sb} / den in a box enlarged by the shift
    SeriesOrder wide = SeriesOrder::qt(order.bound(0) - sa, order.bound(1) - sb);
    MultiSeries s = laurent_expand(num.shift(-sa, -sb), wide) * series_inv(laurent_expand(den, wide));
    std::vector<MultiSeries::Term> out;
    for (const auto& t : s.terms()) {
        auto e = s.exps_of(t.key);
        int a = e[0] + sa, b = e[1] + sb;
        if (a < 0 || b < 0) throw MathError(ErrorKind::Pole, "pole at the origin in Laurent expansion");
        if (a > order.bound(0) || b > order.bound(1)) continue;
        out.push_back({order.pack({a, b, 0, 0}), t.c});
    }
    return MultiSeries::from_terms(order, std::move(out));
}

MultiSeries laurent_sum_expand(const std::vector<LaurentRat>& parts, const SeriesOrder& order) {
    LaurentRat total(LaurentPoly(), LaurentPoly::constant(Rational(1)));
    for (const auto& p : parts) total = total + p;
    return laurent_expand(total, order);
}

}  // namespace rephom
