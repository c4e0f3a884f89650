#pragma once

#include "rephom/rational.hpp"

#include "json.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rephom {

enum class Var : std::uint8_t { q = 0, t = 1, s = 2, v = 3 };

char var_name(Var v);
Var var_from_name(char c);

// Per-variable truncation bounds. Active variables are kept in the canonical
// order q, t, s, v whatever order they were given in.
class SeriesOrder {
public:
    SeriesOrder() = default;
    SeriesOrder(std::initializer_list<std::pair<Var, int>> bounds);
    explicit SeriesOrder(const std::vector<std::pair<Var, int>>& bounds);

    static SeriesOrder qt(int nq, int nt) { return SeriesOrder{{Var::q, nq}, {Var::t, nt}}; }
    static SeriesOrder q_only(int nq) { return SeriesOrder{{Var::q, nq}}; }

    int nvars() const { return static_cast<int>(vars_.size()); }
    Var var(int i) const { return vars_[i]; }
    int bound(int i) const { return bounds_[i]; }
    // index of var among the active ones, or -1
    int index_of(Var v) const;
    bool has(Var v) const { return index_of(v) >= 0; }
    int bound_of(Var v) const;
    std::vector<int> bounds() const { return bounds_; }

    // Sum of bounds, the largest total degree a term can have.
    int total_bound() const;

    // Mixed-radix packing; the first active variable is most significant so
    // numeric key order is lexicographic order on exponent tuples.
    std::uint64_t cells() const { return cells_; }
    std::uint64_t stride(int i) const { return strides_[i]; }
    std::uint64_t pack(const std::array<int, 4>& e) const;
    std::array<int, 4> unpack(std::uint64_t key) const;

    SeriesOrder without(Var v) const;

    friend bool operator==(const SeriesOrder& a, const SeriesOrder& b) {
        return a.vars_ == b.vars_ && a.bounds_ == b.bounds_;
    }
    friend bool operator!=(const SeriesOrder& a, const SeriesOrder& b) { return !(a == b); }

    std::string str() const;

private:
    void init(std::vector<std::pair<Var, int>> bounds);

    std::vector<Var> vars_;
    std::vector<int> bounds_;
    std::vector<std::uint64_t> strides_;
    std::uint64_t cells_ = 1;
};

class MultiSeries {
public:
    struct Term {
        std::uint64_t key;
        Rational c;
    };

    MultiSeries() = default;
    explicit MultiSeries(SeriesOrder order) : order_(std::move(order)) {}

    static MultiSeries constant(const SeriesOrder& order, const Rational& c);
    static MultiSeries one(const SeriesOrder& order) { return constant(order, Rational(1)); }
    // c * prod var^exp; silently zero when out of bounds. Exponents are given
    // per active variable in canonical order.
    static MultiSeries monomial(const SeriesOrder& order, const std::vector<int>& exps,
                                const Rational& c = Rational(1));
    static MultiSeries var_power(const SeriesOrder& order, Var v, int power,
                                 const Rational& c = Rational(1));
    // 1 - c*m for a monomial m
    static MultiSeries one_minus(const SeriesOrder& order, const std::vector<int>& exps,
                                 const Rational& c = Rational(1));

    const SeriesOrder& order() const { return order_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    Rational coeff(const std::vector<int>& exps) const;
    Rational constant_term() const;
    std::vector<int> exps_of(std::uint64_t key) const;
    int min_total_degree() const;  // -1 for zero series

    MultiSeries operator-() const;
    MultiSeries& operator+=(const MultiSeries& o);
    MultiSeries& operator-=(const MultiSeries& o);
    MultiSeries& operator*=(const MultiSeries& o);
    MultiSeries& operator*=(const Rational& c);
    friend MultiSeries operator+(MultiSeries a, const MultiSeries& b) { return a += b; }
    friend MultiSeries operator-(MultiSeries a, const MultiSeries& b) { return a -= b; }
    friend MultiSeries operator*(const MultiSeries& a, const MultiSeries& b);
    friend MultiSeries operator*(MultiSeries a, const Rational& c) { return a *= c; }
    friend MultiSeries operator*(const Rational& c, MultiSeries a) { return a *= c; }

    friend bool operator==(const MultiSeries& a, const MultiSeries& b);
    friend bool operator!=(const MultiSeries& a, const MultiSeries& b) { return !(a == b); }

    MultiSeries pow(int k) const;

    // Build from raw (key, coeff) pairs; keys may repeat and be unsorted.
    static MultiSeries from_terms(const SeriesOrder& order, std::vector<Term> terms);

    std::string str() const;
    nlohmann::json to_json() const;
    static MultiSeries from_json(const SeriesOrder& order, const nlohmann::json& j);

private:
    void check_same(const MultiSeries& o) const;

    SeriesOrder order_;
    std::vector<Term> terms_;  // sorted by key, no zero coefficients
};

// a*b accumulated into a dense buffer indexed by packed key; used where many
// products land in the same output.
class SeriesAccumulator {
public:
    explicit SeriesAccumulator(const SeriesOrder& order);
    void add_product(const MultiSeries& a, const MultiSeries& b);
    void add(const MultiSeries& a);
    MultiSeries take();
    bool empty() const { return touched_.empty(); }

private:
    SeriesOrder order_;
    std::vector<Rational> cells_;
    std::vector<char> used_;
    std::vector<std::uint64_t> touched_;
};

MultiSeries series_mul(const MultiSeries& a, const MultiSeries& b);
MultiSeries series_inv(const MultiSeries& a);

// prod_{j=0}^{n-1} (1 - base^j x); n = nullopt means the infinite product.
MultiSeries pochhammer(const MultiSeries& x, const MultiSeries& base, std::optional<int> n,
                       const SeriesOrder& order);

// Coefficient of var^power, as a series in the remaining variables.
MultiSeries extract_coeff(const MultiSeries& a, Var var, int power);

// Put var = value; the result drops var.
MultiSeries substitute_value(const MultiSeries& a, Var var, const Rational& value);

// Put from = to^k (from and to both active); the result drops `from` and
// keeps `to` with bound min(N_to, k*N_from) when k > 0.
MultiSeries substitute_power(const MultiSeries& a, Var from, Var to, int k);

// Re-express a in another order: variables missing from `target` must not
// occur, new variables get exponent 0, bounds are truncated.
MultiSeries recast(const MultiSeries& a, const SeriesOrder& target);

// Swap the roles of two active variables with equal bounds.
MultiSeries swap_vars(const MultiSeries& a, Var x, Var y);

// Graded-lex comparison on exponent tuples: total degree first, then lex.
bool graded_lex_less(const std::vector<int>& a, const std::vector<int>& b);

}  // namespace rephom
