#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sforge {

// Exact rational. Values whose reduced numerator and denominator fit in
// int64 stay inline; anything larger lives in a shared boost cpp_rational.
class Rational {
public:
    using Big = boost::multiprecision::cpp_rational;
    using BigInt = boost::multiprecision::cpp_int;

    Rational() = default;
    Rational(int v) : n_(v) {}
    Rational(long v) : n_(v) {}
    Rational(long long v) : n_(v) {}
    Rational(long long num, long long den) { assign128(num, den); }
    explicit Rational(const Big& b) { assign_big(b); }
    explicit Rational(const BigInt& i) { assign_big(Big(i)); }

    static Rational parse(std::string_view s) {
        auto slash = s.find('/');
        std::string num(s.substr(0, slash));
        std::string den = slash == std::string_view::npos ? "1" : std::string(s.substr(slash + 1));
        auto valid = [](const std::string& t, bool allow_sign) {
            if (t.empty()) return false;
            std::size_t i = 0;
            if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
            if (i == t.size()) return false;
            for (; i < t.size(); ++i)
                if (t[i] < '0' || t[i] > '9') return false;
            return true;
        };
        if (!valid(num, true) || !valid(den, false)) throw std::invalid_argument("bad rational: " + std::string(s));
        if (num[0] == '+') num.erase(0, 1);
        BigInt d(den);
        if (d == 0) throw std::invalid_argument("zero denominator: " + std::string(s));
        return Rational(Big(BigInt(num), d));
    }

    bool is_zero() const { return !big_ && n_ == 0; }
    bool is_one() const { return !big_ && n_ == 1 && d_ == 1; }
    bool is_integer() const { return big_ ? boost::multiprecision::denominator(*big_) == 1 : d_ == 1; }
    int sign() const {
        if (big_) return big_->sign();
        return (n_ > 0) - (n_ < 0);
    }

    Big big() const { return big_ ? *big_ : Big(n_, d_); }
    BigInt numerator() const { return big_ ? boost::multiprecision::numerator(*big_) : BigInt(n_); }
    BigInt denominator() const { return big_ ? boost::multiprecision::denominator(*big_) : BigInt(d_); }

    // Small-value accessors; only meaningful when fits_int64().
    bool fits_int64() const { return !big_ && d_ == 1; }
    std::int64_t to_int64() const {
        if (!fits_int64()) throw std::domain_error("rational is not a small integer");
        return n_;
    }

    std::string str() const {
        if (big_) {
            auto num = boost::multiprecision::numerator(*big_);
            auto den = boost::multiprecision::denominator(*big_);
            return den == 1 ? num.str() : num.str() + "/" + den.str();
        }
        return d_ == 1 ? std::to_string(n_) : std::to_string(n_) + "/" + std::to_string(d_);
    }

    Rational operator-() const {
        if (big_) return Rational(Big(-*big_));
        Rational r;
        r.assign128(-static_cast<__int128>(n_), d_);
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (!a.big_ && !b.big_) {
            if (a.d_ == 1 && b.d_ == 1) {
                Rational r;
                r.assign128(static_cast<__int128>(a.n_) + b.n_, 1);
                return r;
            }
            __int128 num = static_cast<__int128>(a.n_) * b.d_ + static_cast<__int128>(b.n_) * a.d_;
            __int128 den = static_cast<__int128>(a.d_) * b.d_;
            Rational r;
            r.assign128(num, den);
            return r;
        }
        return Rational(a.big() + b.big());
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        if (a.is_zero() || b.is_zero()) return Rational();
        if (a.is_one()) return b;
        if (b.is_one()) return a;
        if (!a.big_ && !b.big_) {
            Rational r;
            r.assign128(static_cast<__int128>(a.n_) * b.n_, static_cast<__int128>(a.d_) * b.d_);
            return r;
        }
        return Rational(a.big() * b.big());
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::domain_error("division by zero");
        if (!a.big_ && !b.big_) {
            Rational r;
            __int128 num = static_cast<__int128>(a.n_) * b.d_;
            __int128 den = static_cast<__int128>(a.d_) * b.n_;
            r.assign128(num, den);
            return r;
        }
        return Rational(a.big() / b.big());
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) return a.n_ == b.n_ && a.d_ == b.d_;
        if (a.big_ && b.big_) return *a.big_ == *b.big_;
        return false;  // normalized: big values never fit inline
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) {
            __int128 l = static_cast<__int128>(a.n_) * b.d_, r = static_cast<__int128>(b.n_) * a.d_;
            return l <=> r;
        }
        auto c = a.big().compare(b.big());
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    static unsigned __int128 gcd128(unsigned __int128 a, unsigned __int128 b) {
        while (b) {
            auto t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    void assign128(__int128 num, __int128 den) {
        if (den == 0) throw std::domain_error("zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        if (num == 0) {
            n_ = 0;
            d_ = 1;
            big_.reset();
            return;
        }
        unsigned __int128 an = num < 0 ? static_cast<unsigned __int128>(-(num + 1)) + 1 : static_cast<unsigned __int128>(num);
        auto g = gcd128(an, static_cast<unsigned __int128>(den));
        if (g > 1) {
            num /= static_cast<__int128>(g);
            den /= static_cast<__int128>(g);
        }
        constexpr __int128 lo = INT64_MIN + 1, hi = INT64_MAX;
        if (num >= lo && num <= hi && den <= hi) {
            n_ = static_cast<std::int64_t>(num);
            d_ = static_cast<std::int64_t>(den);
            big_.reset();
            return;
        }
        assign_big(Big(to_big_int(num), to_big_int(den)));
    }

    static BigInt to_big_int(__int128 v) {
        bool neg = v < 0;
        unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
        BigInt r = BigInt(static_cast<std::uint64_t>(u >> 64));
        r <<= 64;
        r += BigInt(static_cast<std::uint64_t>(u));
        return neg ? BigInt(-r) : r;
    }

    void assign_big(const Big& b) {
        auto num = boost::multiprecision::numerator(b);
        auto den = boost::multiprecision::denominator(b);
        static const BigInt lo(INT64_MIN + 1), hi(INT64_MAX);
        if (num >= lo && num <= hi && den <= hi) {
            n_ = static_cast<std::int64_t>(num);
            d_ = static_cast<std::int64_t>(den);
            big_.reset();
        } else {
            n_ = 0;
            d_ = 1;
            big_ = std::make_shared<const Big>(b);
        }
    }

    std::int64_t n_ = 0;
    std::int64_t d_ = 1;
    std::shared_ptr<const Big> big_;
};

inline Rational pow(const Rational& base, long long e) {
    if (e < 0) return pow(Rational(1) / base, -e);
    Rational r(1), b = base;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

inline Rational factorial(int n) {
    Rational r(1);
    for (int i = 2; i <= n; ++i) r *= Rational(i);
    return r;
}

// Generalized binomial c(c-1)...(c-k+1)/k!.
inline Rational binomial(const Rational& c, int k) {
    if (k < 0) return Rational();
    Rational r(1);
    for (int i = 0; i < k; ++i) r = r * (c - Rational(i)) / Rational(i + 1);
    return r;
}

}  // namespace sforge
