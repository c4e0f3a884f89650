#include "rephom/rational.hpp"

#include <functional>
#include <limits>
#include <stdexcept>

namespace rephom {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr i128 kMax64 = std::numeric_limits<std::int64_t>::max();
constexpr i128 kMin64 = std::numeric_limits<std::int64_t>::min();

u128 uabs(i128 x) { return x < 0 ? u128(0) - u128(x) : u128(x); }

u128 gcd128(u128 a, u128 b) {
    while (b != 0) {
        u128 r = a % b;
        a = b;
        b = r;
    }
    return a;
}

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) {
    while (b != 0) {
        std::uint64_t r = a % b;
        a = b;
        b = r;
    }
    return a;
}

std::uint64_t uabs64(std::int64_t x) {
    return x < 0 ? std::uint64_t(0) - std::uint64_t(x) : std::uint64_t(x);
}

mpz_class mpz_from_i128(i128 v) {
    u128 a = uabs(v);
    std::uint64_t words[2] = {std::uint64_t(a), std::uint64_t(a >> 64)};
    mpz_class z;
    mpz_import(z.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, words);
    if (v < 0) z = -z;
    return z;
}

}  // namespace

Rational::Rational(long long n) : num_(n), den_(1) {}

Rational::Rational(long long n, long long d) {
    if (d == 0) throw std::domain_error("zero denominator");
    set_from_i128(n, d);
}

Rational::Rational(const mpq_class& v) { set_big(v); }

Rational::Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
}

Rational& Rational::operator=(const Rational& o) {
    if (this == &o) return *this;
    num_ = o.num_;
    den_ = o.den_;
    if (o.big_) {
        if (big_) *big_ = *o.big_;
        else big_ = std::make_unique<mpq_class>(*o.big_);
    } else {
        big_.reset();
    }
    return *this;
}

void Rational::set_from_i128(i128 n, i128 d) {
    if (d < 0) {
        n = -n;
        d = -d;
    }
    if (n == 0) {
        num_ = 0;
        den_ = 1;
        big_.reset();
        return;
    }
    u128 g = gcd128(uabs(n), u128(d));
    if (g != 1) {
        n /= i128(g);
        d /= i128(g);
    }
    if (n <= kMax64 && n > kMin64 && d <= kMax64) {
        num_ = std::int64_t(n);
        den_ = std::int64_t(d);
        big_.reset();
        return;
    }
    mpq_class q(mpz_from_i128(n), mpz_from_i128(d));
    q.canonicalize();
    set_big(std::move(q));
}

void Rational::set_big(mpq_class v) {
    if (big_) *big_ = std::move(v);
    else big_ = std::make_unique<mpq_class>(std::move(v));
    demote();
}

void Rational::demote() {
    if (!big_) return;
    const mpz_class& n = big_->get_num();
    const mpz_class& d = big_->get_den();
    if (n.fits_slong_p() && d.fits_slong_p()) {
        // keep one bit of headroom so negation never overflows
        long nl = n.get_si();
        long dl = d.get_si();
        if (nl != std::numeric_limits<long>::min()) {
            num_ = nl;
            den_ = dl;
            big_.reset();
        }
    }
}

mpq_class Rational::to_mpq() const {
    if (big_) return *big_;
    return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

Rational Rational::parse(const std::string& s) {
    std::string t;
    for (char c : s)
        if (c != ' ') t.push_back(c);
    if (t.empty()) throw std::invalid_argument("empty rational");
    auto check = [&](const std::string& part, bool allow_sign) {
        if (part.empty()) throw std::invalid_argument("bad rational: " + s);
        std::size_t i = 0;
        if (allow_sign && (part[0] == '-' || part[0] == '+')) i = 1;
        if (i == part.size()) throw std::invalid_argument("bad rational: " + s);
        for (; i < part.size(); ++i)
            if (part[i] < '0' || part[i] > '9') throw std::invalid_argument("bad rational: " + s);
    };
    auto slash = t.find('/');
    std::string ns = t.substr(0, slash);
    std::string ds = slash == std::string::npos ? "1" : t.substr(slash + 1);
    check(ns, true);
    check(ds, false);
    if (ns[0] == '+') ns = ns.substr(1);
    mpz_class n(ns), d(ds);
    if (d == 0) throw std::invalid_argument("zero denominator: " + s);
    mpq_class q(n, d);
    q.canonicalize();
    return Rational(q);
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const {
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
}

std::string Rational::str() const {
    if (big_) return big_->get_str();
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rational::numerator_str() const {
    return big_ ? big_->get_num().get_str() : std::to_string(num_);
}

std::string Rational::denominator_str() const {
    return big_ ? big_->get_den().get_str() : std::to_string(den_);
}

Rational& Rational::operator+=(const Rational& o) {
    if (!big_ && !o.big_) {
        if (den_ == 1 && o.den_ == 1) {
            std::int64_t r;
            if (!__builtin_add_overflow(num_, o.num_, &r) && r != kMin64) {
                num_ = r;
                return *this;
            }
            set_from_i128(i128(num_) + o.num_, 1);
            return *this;
        }
        if (den_ == o.den_) {
            set_from_i128(i128(num_) + o.num_, den_);
            return *this;
        }
        // numerators and denominators are < 2^63, so the products fit in 127 bits
        i128 n = i128(num_) * o.den_ + i128(o.num_) * den_;
        i128 d = i128(den_) * o.den_;
        set_from_i128(n, d);
        return *this;
    }
    set_big(to_mpq() + o.to_mpq());
    return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
    if (!big_ && !o.big_) {
        if (den_ == 1 && o.den_ == 1) {
            std::int64_t r;
            if (!__builtin_mul_overflow(num_, o.num_, &r) && r != kMin64) {
                num_ = r;
                return *this;
            }
        }
        std::uint64_t g1 = gcd64(uabs64(num_), uabs64(o.den_));
        std::uint64_t g2 = gcd64(uabs64(o.num_), uabs64(den_));
        if (g1 == 0) g1 = 1;
        if (g2 == 0) g2 = 1;
        i128 n = i128(num_ / std::int64_t(g1)) * (o.num_ / std::int64_t(g2));
        i128 d = i128(den_ / std::int64_t(g2)) * (o.den_ / std::int64_t(g1));
        set_from_i128(n, d);
        return *this;
    }
    set_big(to_mpq() * o.to_mpq());
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    if (!big_ && !o.big_) {
        std::uint64_t g1 = gcd64(uabs64(num_), uabs64(o.num_));
        std::uint64_t g2 = gcd64(uabs64(den_), uabs64(o.den_));
        if (g1 == 0) g1 = 1;
        i128 n = i128(num_ / std::int64_t(g1)) * (o.den_ / std::int64_t(g2));
        i128 d = i128(den_ / std::int64_t(g2)) * (o.num_ / std::int64_t(g1));
        set_from_i128(n, d);
        return *this;
    }
    set_big(to_mpq() / o.to_mpq());
    return *this;
}

void Rational::add_mul(const Rational& a, const Rational& b) {
    if (!big_ && !a.big_ && !b.big_ && den_ == 1 && a.den_ == 1 && b.den_ == 1) {
        std::int64_t p, r;
        if (!__builtin_mul_overflow(a.num_, b.num_, &p) && !__builtin_add_overflow(num_, p, &r) &&
            r != kMin64) {
            num_ = r;
            return;
        }
    }
    *this += a * b;
}

Rational Rational::operator-() const {
    Rational r;
    if (big_) {
        r.set_big(-*big_);
    } else {
        r.num_ = -num_;
        r.den_ = den_;
    }
    return r;
}

bool operator==(const Rational& a, const Rational& b) {
    // both sides are canonical, and small values are never stored as big
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;
}

bool operator<(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    return a.to_mpq() < b.to_mpq();
}

std::size_t Rational::hash() const {
    if (big_) return std::hash<std::string>{}(big_->get_str());
    return std::hash<std::int64_t>{}(num_) * 1000003u ^ std::hash<std::int64_t>{}(den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational binomial(int n, int k) {
    if (k < 0 || k > n) return Rational(0);
    mpz_class z;
    mpz_bin_uiui(z.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(mpq_class(z));
}

}  // namespace rephom
