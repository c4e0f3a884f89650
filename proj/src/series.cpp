#include "rephom/series.hpp"

#include "rephom/errors.hpp"

#include <algorithm>
#include <sstream>

namespace rephom {

char var_name(Var v) {
    switch (v) {
        case Var::q: return 'q';
        case Var::t: return 't';
        case Var::s: return 's';
        case Var::v: return 'v';
    }
    return '?';
}

Var var_from_name(char c) {
    switch (c) {
        case 'q': return Var::q;
        case 't': return Var::t;
        case 's': return Var::s;
        case 'v': return Var::v;
        default: throw MathError(ErrorKind::Unsupported, std::string("unknown variable ") + c);
    }
}

// ---- SeriesOrder ----

SeriesOrder::SeriesOrder(std::initializer_list<std::pair<Var, int>> bounds) {
    init(std::vector<std::pair<Var, int>>(bounds));
}

SeriesOrder::SeriesOrder(const std::vector<std::pair<Var, int>>& bounds) { init(bounds); }

void SeriesOrder::init(std::vector<std::pair<Var, int>> bounds) {
    std::sort(bounds.begin(), bounds.end(),
              [](auto& a, auto& b) { return static_cast<int>(a.first) < static_cast<int>(b.first); });
    for (std::size_t i = 0; i < bounds.size(); ++i) {
        if (i > 0 && bounds[i].first == bounds[i - 1].first)
            throw MathError(ErrorKind::OrderMismatch, "duplicate variable in order");
        if (bounds[i].second < 0) throw MathError(ErrorKind::OrderMismatch, "negative bound");
        vars_.push_back(bounds[i].first);
        bounds_.push_back(bounds[i].second);
    }
    strides_.assign(vars_.size(), 1);
    cells_ = 1;
    for (int i = nvars() - 1; i >= 0; --i) {
        strides_[i] = cells_;
        cells_ *= static_cast<std::uint64_t>(bounds_[i] + 1);
    }
}

int SeriesOrder::index_of(Var v) const {
    for (int i = 0; i < nvars(); ++i)
        if (vars_[i] == v) return i;
    return -1;
}

int SeriesOrder::bound_of(Var v) const {
    int i = index_of(v);
    if (i < 0) throw MathError(ErrorKind::OrderMismatch, std::string("inactive variable ") + var_name(v));
    return bounds_[i];
}

int SeriesOrder::total_bound() const {
    int s = 0;
    for (int b : bounds_) s += b;
    return s;
}

std::uint64_t SeriesOrder::pack(const std::array<int, 4>& e) const {
    std::uint64_t k = 0;
    for (int i = 0; i < nvars(); ++i) k += strides_[i] * static_cast<std::uint64_t>(e[i]);
    return k;
}

std::array<int, 4> SeriesOrder::unpack(std::uint64_t key) const {
    std::array<int, 4> e{0, 0, 0, 0};
    for (int i = 0; i < nvars(); ++i) {
        e[i] = static_cast<int>(key / strides_[i]);
        key %= strides_[i];
    }
    return e;
}

SeriesOrder SeriesOrder::without(Var v) const {
    std::vector<std::pair<Var, int>> b;
    for (int i = 0; i < nvars(); ++i)
        if (vars_[i] != v) b.emplace_back(vars_[i], bounds_[i]);
    return SeriesOrder(b);
}

std::string SeriesOrder::str() const {
    std::ostringstream os;
    os << "(";
    for (int i = 0; i < nvars(); ++i) {
        if (i) os << ", ";
        os << "N_" << var_name(vars_[i]) << "=" << bounds_[i];
    }
    os << ")";
    return os.str();
}

// ---- MultiSeries ----

MultiSeries MultiSeries::constant(const SeriesOrder& order, const Rational& c) {
    MultiSeries r(order);
    if (!c.is_zero()) r.terms_.push_back({0, c});
    return r;
}

MultiSeries MultiSeries::monomial(const SeriesOrder& order, const std::vector<int>& exps,
                                  const Rational& c) {
    if (static_cast<int>(exps.size()) != order.nvars())
        throw MathError(ErrorKind::OrderMismatch, "exponent length does not match order");
    MultiSeries r(order);
    std::array<int, 4> e{0, 0, 0, 0};
    for (int i = 0; i < order.nvars(); ++i) {
        if (exps[i] < 0) throw MathError(ErrorKind::Pole, "negative exponent in series monomial");
        if (exps[i] > order.bound(i)) return r;
        e[i] = exps[i];
    }
    if (!c.is_zero()) r.terms_.push_back({order.pack(e), c});
    return r;
}

MultiSeries MultiSeries::var_power(const SeriesOrder& order, Var v, int power, const Rational& c) {
    std::vector<int> e(order.nvars(), 0);
    int i = order.index_of(v);
    if (i < 0) throw MathError(ErrorKind::OrderMismatch, std::string("inactive variable ") + var_name(v));
    e[i] = power;
    return monomial(order, e, c);
}

MultiSeries MultiSeries::one_minus(const SeriesOrder& order, const std::vector<int>& exps,
                                   const Rational& c) {
    return one(order) - monomial(order, exps, c);
}

void MultiSeries::check_same(const MultiSeries& o) const {
    if (order_ != o.order_)
        throw MathError(ErrorKind::OrderMismatch,
                        "series orders differ: " + order_.str() + " vs " + o.order_.str());
}

std::vector<int> MultiSeries::exps_of(std::uint64_t key) const {
    auto e = order_.unpack(key);
    return std::vector<int>(e.begin(), e.begin() + order_.nvars());
}

Rational MultiSeries::coeff(const std::vector<int>& exps) const {
    if (static_cast<int>(exps.size()) != order_.nvars())
        throw MathError(ErrorKind::OrderMismatch, "exponent length does not match order");
    std::array<int, 4> e{0, 0, 0, 0};
    for (int i = 0; i < order_.nvars(); ++i) {
        if (exps[i] < 0 || exps[i] > order_.bound(i))
            throw MathError(ErrorKind::InsufficientOrder, "coefficient outside truncation");
        e[i] = exps[i];
    }
    std::uint64_t k = order_.pack(e);
    auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                               [](const Term& t, std::uint64_t key) { return t.key < key; });
    if (it != terms_.end() && it->key == k) return it->c;
    return Rational(0);
}

Rational MultiSeries::constant_term() const {
    if (!terms_.empty() && terms_.front().key == 0) return terms_.front().c;
    return Rational(0);
}

int MultiSeries::min_total_degree() const {
    int best = -1;
    for (const auto& t : terms_) {
        auto e = order_.unpack(t.key);
        int d = e[0] + e[1] + e[2] + e[3];
        if (best < 0 || d < best) best = d;
    }
    return best;
}

MultiSeries MultiSeries::operator-() const {
    MultiSeries r(*this);
    for (auto& t : r.terms_) t.c = -t.c;
    return r;
}

MultiSeries& MultiSeries::operator+=(const MultiSeries& o) {
    check_same(o);
    if (o.terms_.empty()) return *this;
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && terms_[i].key < o.terms_[j].key)) {
            out.push_back(std::move(terms_[i++]));
        } else if (i == terms_.size() || o.terms_[j].key < terms_[i].key) {
            out.push_back(o.terms_[j++]);
        } else {
            Rational c = terms_[i].c + o.terms_[j].c;
            if (!c.is_zero()) out.push_back({terms_[i].key, std::move(c)});
            ++i;
            ++j;
        }
    }
    terms_ = std::move(out);
    return *this;
}

MultiSeries& MultiSeries::operator-=(const MultiSeries& o) { return *this += -o; }

MultiSeries& MultiSeries::operator*=(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.c *= c;
    return *this;
}

MultiSeries& MultiSeries::operator*=(const MultiSeries& o) {
    *this = *this * o;
    return *this;
}

MultiSeries operator*(const MultiSeries& a, const MultiSeries& b) {
    a.check_same(b);
    if (a.is_zero() || b.is_zero()) return MultiSeries(a.order_);
    if (a.terms_.size() == 1 && a.terms_[0].key == 0) return b * a.terms_[0].c;
    if (b.terms_.size() == 1 && b.terms_[0].key == 0) return a * b.terms_[0].c;
    SeriesAccumulator acc(a.order_);
    acc.add_product(a, b);
    return acc.take();
}

bool operator==(const MultiSeries& a, const MultiSeries& b) {
    if (a.order_ != b.order_) return false;
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].key != b.terms_[i].key || a.terms_[i].c != b.terms_[i].c) return false;
    return true;
}

MultiSeries MultiSeries::pow(int k) const {
    if (k < 0) return series_inv(*this).pow(-k);
    MultiSeries result = one(order_);
    MultiSeries base = *this;
    while (k > 0) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return result;
}

MultiSeries MultiSeries::from_terms(const SeriesOrder& order, std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.key < y.key; });
    MultiSeries r(order);
    for (auto& t : terms) {
        if (!r.terms_.empty() && r.terms_.back().key == t.key) {
            r.terms_.back().c += t.c;
            if (r.terms_.back().c.is_zero()) r.terms_.pop_back();
        } else if (!t.c.is_zero()) {
            r.terms_.push_back(std::move(t));
        }
    }
    return r;
}

std::string MultiSeries::str() const {
    if (terms_.empty()) return "0";
    // printed by total degree, higher powers of earlier variables first
    std::vector<std::pair<std::vector<int>, const Rational*>> items;
    for (const auto& t : terms_) items.emplace_back(exps_of(t.key), &t.c);
    std::stable_sort(items.begin(), items.end(), [](const auto& x, const auto& y) {
        int dx = 0, dy = 0;
        for (int e : x.first) dx += e;
        for (int e : y.first) dy += e;
        if (dx != dy) return dx < dy;
        return x.first > y.first;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, cp] : items) {
        std::string mono;
        for (int i = 0; i < order_.nvars(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += var_name(order_.var(i));
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        Rational c = *cp;
        bool neg = c.sign() < 0;
        if (neg) c = -c;
        if (first) os << (neg ? "-" : "");
        else os << (neg ? " - " : " + ");
        first = false;
        if (mono.empty()) os << c.str();
        else if (c.is_one()) os << mono;
        else os << c.str() << "*" << mono;
    }
    return os.str();
}

nlohmann::json MultiSeries::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& t : terms_) arr.push_back({{"exp", exps_of(t.key)}, {"coeff", t.c.str()}});
    return arr;
}

MultiSeries MultiSeries::from_json(const SeriesOrder& order, const nlohmann::json& j) {
    MultiSeries r(order);
    for (const auto& item : j) {
        auto exps = item.at("exp").get<std::vector<int>>();
        r += monomial(order, exps, Rational::parse(item.at("coeff").get<std::string>()));
    }
    return r;
}

// ---- accumulator ----

SeriesAccumulator::SeriesAccumulator(const SeriesOrder& order)
    : order_(order), cells_(order.cells()), used_(order.cells(), 0) {}

void SeriesAccumulator::add_product(const MultiSeries& a, const MultiSeries& b) {
    const int nv = order_.nvars();
    std::array<int, 4> bound{0, 0, 0, 0};
    for (int i = 0; i < nv; ++i) bound[i] = order_.bound(i);
    std::vector<std::array<int, 4>> be;
    be.reserve(b.terms().size());
    for (const auto& t : b.terms()) be.push_back(order_.unpack(t.key));
    for (const auto& ta : a.terms()) {
        auto ea = order_.unpack(ta.key);
        for (std::size_t j = 0; j < be.size(); ++j) {
            const auto& eb = be[j];
            bool ok = true;
            for (int i = 0; i < nv; ++i)
                if (ea[i] + eb[i] > bound[i]) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            std::uint64_t k = ta.key + b.terms()[j].key;
            if (!used_[k]) {
                used_[k] = 1;
                touched_.push_back(k);
            }
            cells_[k].add_mul(ta.c, b.terms()[j].c);
        }
    }
}

void SeriesAccumulator::add(const MultiSeries& a) {
    for (const auto& t : a.terms()) {
        if (!used_[t.key]) {
            used_[t.key] = 1;
            touched_.push_back(t.key);
        }
        cells_[t.key] += t.c;
    }
}

MultiSeries SeriesAccumulator::take() {
    std::sort(touched_.begin(), touched_.end());
    std::vector<MultiSeries::Term> terms;
    terms.reserve(touched_.size());
    for (auto k : touched_) {
        if (!cells_[k].is_zero()) terms.push_back({k, std::move(cells_[k])});
        cells_[k] = Rational(0);
        used_[k] = 0;
    }
    touched_.clear();
    return MultiSeries::from_terms(order_, std::move(terms));
}

// ---- free functions ----

MultiSeries series_mul(const MultiSeries& a, const MultiSeries& b) { return a * b; }

MultiSeries series_inv(const MultiSeries& a) {
    Rational c = a.constant_term();
    if (c.is_zero()) throw MathError(ErrorKind::NonUnit, "series has zero constant term");
    const SeriesOrder& ord = a.order();
    MultiSeries r = MultiSeries::constant(ord, Rational(1) / c);
    MultiSeries two = MultiSeries::constant(ord, Rational(2));
    // Newton step doubles the vanishing total degree of 1 - a*r
    int reach = 1;
    const int need = ord.total_bound() + 1;
    while (reach < need) {
        r = r * (two - a * r);
        reach *= 2;
    }
    return r;
}

MultiSeries pochhammer(const MultiSeries& x, const MultiSeries& base, std::optional<int> n,
                       const SeriesOrder& order) {
    if (x.order() != order || base.order() != order)
        throw MathError(ErrorKind::OrderMismatch, "pochhammer arguments must share the order");
    if (!n && (base.is_zero() || base.min_total_degree() == 0))
        throw MathError(ErrorKind::Divergent, "infinite product with a degree-0 base");
    MultiSeries result = MultiSeries::one(order);
    MultiSeries power = x;  // base^j * x
    for (int j = 0; !n || j < *n; ++j) {
        if (power.is_zero()) break;  // remaining factors are all 1
        result = result * (MultiSeries::one(order) - power);
        power = power * base;
    }
    return result;
}

MultiSeries extract_coeff(const MultiSeries& a, Var var, int power) {
    const SeriesOrder& ord = a.order();
    int idx = ord.index_of(var);
    if (idx < 0) throw MathError(ErrorKind::OrderMismatch, std::string("inactive variable ") + var_name(var));
    if (power < 0 || power > ord.bound(idx))
        throw MathError(ErrorKind::InsufficientOrder, "requested power exceeds the variable bound");
    SeriesOrder rest = ord.without(var);
    std::vector<MultiSeries::Term> out;
    for (const auto& t : a.terms()) {
        auto e = ord.unpack(t.key);
        if (e[idx] != power) continue;
        std::array<int, 4> f{0, 0, 0, 0};
        int k = 0;
        for (int i = 0; i < ord.nvars(); ++i)
            if (i != idx) f[k++] = e[i];
        out.push_back({rest.pack(f), t.c});
    }
    return MultiSeries::from_terms(rest, std::move(out));
}

MultiSeries substitute_value(const MultiSeries& a, Var var, const Rational& value) {
    const SeriesOrder& ord = a.order();
    int idx = ord.index_of(var);
    if (idx < 0) throw MathError(ErrorKind::OrderMismatch, std::string("inactive variable ") + var_name(var));
    SeriesOrder rest = ord.without(var);
    std::vector<Rational> powers(ord.bound(idx) + 1, Rational(1));
    for (int i = 1; i <= ord.bound(idx); ++i) powers[i] = powers[i - 1] * value;
    std::vector<MultiSeries::Term> out;
    for (const auto& t : a.terms()) {
        auto e = ord.unpack(t.key);
        std::array<int, 4> f{0, 0, 0, 0};
        int k = 0;
        for (int i = 0; i < ord.nvars(); ++i)
            if (i != idx) f[k++] = e[i];
        out.push_back({rest.pack(f), t.c * powers[e[idx]]});
    }
    return MultiSeries::from_terms(rest, std::move(out));
}

MultiSeries substitute_power(const MultiSeries& a, Var from, Var to, int k) {
    const SeriesOrder& ord = a.order();
    int fi = ord.index_of(from), ti = ord.index_of(to);
    if (fi < 0 || ti < 0 || fi == ti)
        throw MathError(ErrorKind::OrderMismatch, "substitution variables must be distinct and active");
    if (k <= 0) throw MathError(ErrorKind::Unsupported, "substitution exponent must be positive");
    std::vector<std::pair<Var, int>> b;
    for (int i = 0; i < ord.nvars(); ++i) {
        if (i == fi) continue;
        int bound = ord.bound(i);
        if (i == ti) bound = std::min(bound, k * ord.bound(fi));
        b.emplace_back(ord.var(i), bound);
    }
    SeriesOrder rest(b);
    int rti = rest.index_of(to);
    std::vector<MultiSeries::Term> out;
    for (const auto& t : a.terms()) {
        auto e = ord.unpack(t.key);
        std::array<int, 4> f{0, 0, 0, 0};
        int j = 0;
        bool keep = true;
        for (int i = 0; i < ord.nvars(); ++i) {
            if (i == fi) continue;
            f[j] = e[i];
            if (j == rti) f[j] += k * e[fi];
            if (f[j] > rest.bound(j)) keep = false;
            ++j;
        }
        if (keep) out.push_back({rest.pack(f), t.c});
    }
    return MultiSeries::from_terms(rest, std::move(out));
}

MultiSeries recast(const MultiSeries& a, const SeriesOrder& target) {
    const SeriesOrder& ord = a.order();
    std::vector<int> map(ord.nvars());
    for (int i = 0; i < ord.nvars(); ++i) map[i] = target.index_of(ord.var(i));
    std::vector<MultiSeries::Term> out;
    for (const auto& t : a.terms()) {
        auto e = ord.unpack(t.key);
        std::array<int, 4> f{0, 0, 0, 0};
        bool keep = true;
        for (int i = 0; i < ord.nvars(); ++i) {
            if (e[i] == 0) continue;
            if (map[i] < 0)
                throw MathError(ErrorKind::OrderMismatch,
                                std::string("variable ") + var_name(ord.var(i)) + " missing from target order");
            if (e[i] > target.bound(map[i])) keep = false;
            f[map[i]] = e[i];
        }
        if (keep) out.push_back({target.pack(f), t.c});
    }
    // coefficients are exact only up to the smaller of the two bounds
    for (int j = 0; j < target.nvars(); ++j) {
        int i = ord.index_of(target.var(j));
        if (i >= 0 && target.bound(j) > ord.bound(i))
            throw MathError(ErrorKind::InsufficientOrder, "recast would extend a truncation bound");
    }
    return MultiSeries::from_terms(target, std::move(out));
}

MultiSeries swap_vars(const MultiSeries& a, Var x, Var y) {
    const SeriesOrder& ord = a.order();
    int xi = ord.index_of(x), yi = ord.index_of(y);
    if (xi < 0 || yi < 0 || ord.bound(xi) != ord.bound(yi))
        throw MathError(ErrorKind::OrderMismatch, "swap needs two active variables with equal bounds");
    std::vector<MultiSeries::Term> out;
    for (const auto& t : a.terms()) {
        auto e = ord.unpack(t.key);
        std::swap(e[xi], e[yi]);
        out.push_back({ord.pack(e), t.c});
    }
    return MultiSeries::from_terms(ord, std::move(out));
}

bool graded_lex_less(const std::vector<int>& a, const std::vector<int>& b) {
    int da = 0, db = 0;
    for (int x : a) da += x;
    for (int x : b) db += x;
    if (da != db) return da < db;
    return a < b;
}

}  // namespace rephom
