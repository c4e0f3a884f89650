#pragma once

#include "rephom/rational.hpp"
#include "rephom/series.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace rephom {

// Finitely supported Laurent polynomial in q, t.
class LaurentPoly {
public:
    using Exp = std::pair<int, int>;

    LaurentPoly() = default;
    static LaurentPoly constant(const Rational& c);
    static LaurentPoly monomial(int a, int b, const Rational& c = Rational(1));
    // 1 - q^a t^b
    static LaurentPoly binomial(int a, int b);

    const std::map<Exp, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    Rational coeff(int a, int b) const;

    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly operator-() const;
    friend LaurentPoly operator+(LaurentPoly x, const LaurentPoly& y) { return x += y; }
    friend LaurentPoly operator-(LaurentPoly x, const LaurentPoly& y) { return x -= y; }
    friend LaurentPoly operator*(const LaurentPoly& x, const LaurentPoly& y);
    friend LaurentPoly operator*(LaurentPoly x, const Rational& c);
    friend bool operator==(const LaurentPoly& x, const LaurentPoly& y) { return x.terms_ == y.terms_; }
    friend bool operator!=(const LaurentPoly& x, const LaurentPoly& y) { return !(x == y); }

    LaurentPoly shift(int a, int b) const;
    // componentwise minimum exponent; zero polynomial gives (0,0)
    Exp min_corner() const;

    // Exact quotient by (1 - q^a t^b), or nullopt when it does not divide.
    std::optional<LaurentPoly> divide_binomial(int a, int b) const;

    std::string str() const;

private:
    void add_term(const Exp& e, const Rational& c);
    std::map<Exp, Rational> terms_;
};

// Ratio of Laurent polynomials with no gcd reduction.
struct LaurentRat {
    LaurentPoly num;
    LaurentPoly den;

    LaurentRat() : num(), den(LaurentPoly::constant(Rational(1))) {}
    LaurentRat(LaurentPoly n, LaurentPoly d);

    friend LaurentRat operator+(const LaurentRat& x, const LaurentRat& y);
    friend LaurentRat operator*(const LaurentRat& x, const LaurentRat& y);
    // equality by cross-multiplication
    friend bool operator==(const LaurentRat& x, const LaurentRat& y) {
        return x.num * y.den == y.num * x.den;
    }
};

// Power-series expansion in (q,t); the denominator's lowest corner must be a
// monomial present in its support.
MultiSeries laurent_expand(const LaurentRat& r, const SeriesOrder& order);
MultiSeries laurent_expand(const LaurentPoly& p, const SeriesOrder& order);

MultiSeries laurent_sum_expand(const std::vector<LaurentRat>& parts, const SeriesOrder& order);

}  // namespace rephom
