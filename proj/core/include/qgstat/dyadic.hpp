#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace qgstat {

/// Exact rational with a power-of-two denominator: numerator / 2^exponent.
///
/// Kept in lowest terms (odd numerator, or zero with exponent 0), so equal
/// values compare equal field by field. Arithmetic throws std::overflow_error
/// instead of wrapping.
class Dyadic {
public:
    constexpr Dyadic() = default;
    Dyadic(std::int64_t numerator, int exponent = 0);

    static Dyadic pow2(int exponent);  // 2^exponent, exponent may be negative

    std::int64_t numerator() const { return numerator_; }
    int exponent() const { return exponent_; }

    double to_double() const;
    /// "p/2^e" rendered with the denominator expanded, e.g. "9/16", "1", "-3/4".
    std::string to_fraction() const;

    Dyadic operator-() const;
    friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }
    friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
    Dyadic& operator+=(const Dyadic& other) { return *this = *this + other; }
    Dyadic& operator*=(const Dyadic& other) { return *this = *this * other; }

    friend bool operator==(const Dyadic&, const Dyadic&) = default;
    friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

    bool is_zero() const { return numerator_ == 0; }

private:
    void normalize();

    std::int64_t numerator_ = 0;
    int exponent_ = 0;
};

}  // namespace qgstat
