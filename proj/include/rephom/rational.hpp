#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <ostream>
#include <string>

namespace rephom {

// Exact fraction. Values that fit in 64-bit numerator/denominator stay on a
// machine-word path; anything larger lives in an mpq_class.
class Rational {
public:
    Rational() = default;
    Rational(long long n);  // NOLINT: implicit from integers is convenient
    Rational(int n) : Rational(static_cast<long long>(n)) {}
    Rational(long long n, long long d);
    explicit Rational(const mpq_class& v);

    Rational(const Rational& o);
    Rational(Rational&& o) noexcept = default;
    Rational& operator=(const Rational& o);
    Rational& operator=(Rational&& o) noexcept = default;

    static Rational parse(const std::string& s);

    bool is_zero() const { return !big_ && num_ == 0; }
    bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
    bool is_integer() const;
    int sign() const;

    std::string str() const;
    mpq_class to_mpq() const;
    // Numerator and denominator as decimal strings.
    std::string numerator_str() const;
    std::string denominator_str() const;

    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    // this += a*b, the inner-loop operation of series products.
    void add_mul(const Rational& a, const Rational& b);

    Rational operator-() const;

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b);
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b);
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    std::size_t hash() const;

private:
    void set_from_i128(__int128 n, __int128 d);
    void set_big(mpq_class v);
    void demote();

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::unique_ptr<mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational binomial(int n, int k);

}  // namespace rephom
