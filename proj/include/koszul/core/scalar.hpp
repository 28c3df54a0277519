#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace koszul {

/// Exact rational number. The value is always kept canonical (reduced,
/// positive denominator), so structural equality is numeric equality.
class Scalar {
public:
    Scalar() = default;
    Scalar(long n) : value_(n) {}  // NOLINT(google-explicit-constructor)
    Scalar(long num, long den);
    explicit Scalar(mpq_class q);

    /// Parses "7", "-3/4", "+2". Throws std::invalid_argument on bad text
    /// and std::domain_error on a zero denominator.
    static Scalar parse(std::string_view text);

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_one() const { return value_ == 1; }
    int sign() const { return sgn(value_); }

    Scalar& operator+=(const Scalar& o) { value_ += o.value_; return *this; }
    Scalar& operator-=(const Scalar& o) { value_ -= o.value_; return *this; }
    Scalar& operator*=(const Scalar& o) { value_ *= o.value_; return *this; }
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    Scalar operator-() const { return Scalar(mpq_class(-value_)); }

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
        int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    /// "p" or "p/q".
    std::string to_string() const { return value_.get_str(); }
    const mpq_class& raw() const { return value_; }

private:
    mpq_class value_;
};

Scalar factorial(int n);
Scalar binomial(int n, int k);

/// (-1)^e as a Scalar.
inline Scalar sign_power(long e) { return (e % 2 == 0) ? Scalar(1) : Scalar(-1); }

}  // namespace koszul
