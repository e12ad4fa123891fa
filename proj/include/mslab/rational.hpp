#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "mslab/error.hpp"

namespace mslab {

/// Exact rational number, always in lowest terms with a positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long n) : q_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(int n) : q_(static_cast<long>(n)) {}  // NOLINT(google-explicit-constructor)
    Rational(long n, long d) {
        if (d == 0) throw Error(ErrorCode::Parse, "zero denominator");
        q_ = mpq_class(mpz_class(n), mpz_class(d));
        q_.canonicalize();
    }
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    /// Accepts "p", "-p" and "p/q"; the result is normalized.
    static Rational parse(std::string_view text) {
        std::string s(text);
        auto trim = [](std::string& t) {
            while (!t.empty() && (t.front() == ' ' || t.front() == '\t')) t.erase(t.begin());
            while (!t.empty() && (t.back() == ' ' || t.back() == '\t')) t.pop_back();
        };
        trim(s);
        auto valid_int = [](std::string_view t, bool allow_sign) {
            if (t.empty()) return false;
            std::size_t i = 0;
            if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
            if (i == t.size()) return false;
            for (; i < t.size(); ++i)
                if (t[i] < '0' || t[i] > '9') return false;
            return true;
        };
        auto slash = s.find('/');
        std::string num = slash == std::string::npos ? s : s.substr(0, slash);
        std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
        if (!valid_int(num, true) || !valid_int(den, false))
            throw Error(ErrorCode::Parse, "not a rational: '" + std::string(text) + "'");
        if (num[0] == '+') num.erase(num.begin());
        mpz_class n(num, 10), d(den, 10);
        if (d == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
        mpq_class q(n, d);
        q.canonicalize();
        return Rational(std::move(q));
    }

    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }
    const mpq_class& raw() const noexcept { return q_; }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }
    double to_double() const { return q_.get_d(); }

    /// Canonical text: "p" for integers, "p/q" otherwise.
    std::string str() const { return q_.get_str(10); }

    /// The value as a multiple of 1/denom, if it is one.
    std::optional<std::int64_t> units(std::int64_t denom) const {
        mpq_class scaled = q_ * denom;
        scaled.canonicalize();
        if (scaled.get_den() != 1 || !scaled.get_num().fits_slong_p()) return std::nullopt;
        return scaled.get_num().get_si();
    }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        if (c < 0) return std::strong_ordering::less;
        if (c > 0) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class q_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// Integer power with a nonnegative exponent.
inline Rational pow(const Rational& base, unsigned long exponent) {
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), base.raw().get_num_mpz_t(), exponent);
    mpz_pow_ui(d.get_mpz_t(), base.raw().get_den_mpz_t(), exponent);
    return Rational(mpq_class(n, d));
}

namespace literals {
inline Rational operator""_q(const char* text, std::size_t len) {
    return Rational::parse(std::string_view(text, len));
}
}  // namespace literals

}  // namespace mslab
