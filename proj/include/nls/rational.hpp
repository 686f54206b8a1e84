#pragma once
// Exact rational arithmetic for the exponent engine.
//
// All admissibility conditions are strict or non-strict inequalities between
// rational functions of (p, s, delta); evaluating them in floating point would
// make boundary cases (margin exactly 0) nondeterministic. Stored as reduced
// int64 num/den; intermediates go through __int128 and overflow past int64 is
// an error rather than silent wraparound (dense parameter scans get close).

#include <cstdint>
#include <numeric>
#include <string>

#include "nls/errors.hpp"

namespace nls {

class Rational {
  public:
    Rational() = default;
    Rational(long long n) : num_(n) {}  // NOLINT: implicit by design, 3 == Rational(3)
    Rational(long long n, long long d) : num_(n), den_(d) { normalize_small(); }

    /// Accepts "3", "-4/3", "0.25"; no scientific notation.
    static Rational parse(const std::string& text) {
        if (text.empty()) throw ValidationError("rational: empty string");
        std::size_t pos = 0;
        long long sign = 1;
        if (text[pos] == '+' || text[pos] == '-') {
            if (text[pos] == '-') sign = -1;
            ++pos;
        }
        auto digits = [&](long long& out, int max_len) {
            int len = 0;
            out = 0;
            while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
                if (++len > max_len) throw ValidationError("rational: literal too long: " + text);
                out = out * 10 + (text[pos] - '0');
                ++pos;
            }
            return len;
        };
        long long ip = 0;
        const int ip_len = digits(ip, 18);
        if (pos < text.size() && text[pos] == '/') {
            ++pos;
            long long d = 0;
            if (ip_len == 0 || digits(d, 18) == 0 || pos != text.size() || d == 0)
                throw ValidationError("rational: bad fraction literal: " + text);
            return Rational(sign * ip, d);
        }
        long long frac = 0, scale = 1;
        if (pos < text.size() && text[pos] == '.') {
            ++pos;
            const std::size_t start = pos;
            if (digits(frac, 15) == 0 && ip_len == 0)
                throw ValidationError("rational: bad decimal literal: " + text);
            for (std::size_t i = start; i < pos; ++i) scale *= 10;
        }
        if (pos != text.size() || (ip_len == 0 && scale == 1))
            throw ValidationError("rational: bad literal: " + text);
        const Rational r = Rational(ip) + Rational(frac, scale);
        return sign < 0 ? -r : r;
    }

    long long num() const { return num_; }
    long long den() const { return den_; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string str() const {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// 1/x; throws on 0.
    Rational inv() const {
        if (num_ == 0) throw ValidationError("rational: division by zero");
        return num_ > 0 ? Rational(den_, num_, raw{}) : Rational(-den_, -num_, raw{});
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) { return a * b.inv(); }
    Rational operator-() const { return Rational(-num_, den_, raw{}); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    bool is_zero() const { return num_ == 0; }
    bool positive() const { return num_ > 0; }
    bool negative() const { return num_ < 0; }

  private:
    using i128 = __int128;
    struct raw {};
    Rational(long long n, long long d, raw) : num_(n), den_(d) {}

    static i128 iabs(i128 v) { return v < 0 ? -v : v; }
    static i128 gcd128(i128 a, i128 b) {
        a = iabs(a);
        b = iabs(b);
        while (b != 0) {
            i128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static Rational make(i128 n, i128 d) {
        if (d == 0) throw ValidationError("rational: zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        if (n == 0) return Rational(0, 1, raw{});
        const i128 g = gcd128(n, d);
        n /= g;
        d /= g;
        constexpr i128 lo = -i128(INT64_MAX), hi = i128(INT64_MAX);
        if (n < lo || n > hi || d > hi)
            throw SolverError("rational: overflow past int64 after reduction");
        return Rational(static_cast<long long>(n), static_cast<long long>(d), raw{});
    }

    void normalize_small() {
        Rational r = make(num_, den_);
        num_ = r.num_;
        den_ = r.den_;
    }

    long long num_ = 0;
    long long den_ = 1;
};

}  // namespace nls
