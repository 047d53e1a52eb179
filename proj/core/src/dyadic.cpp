#include "qgstat/dyadic.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qgstat {

namespace {

std::int64_t checked_shift(std::int64_t value, int shift) {
    if (shift == 0 || value == 0) return value;
    if (shift >= 63) throw std::overflow_error("Dyadic: shift out of range");
    const std::int64_t limit = std::int64_t{1} << (62 - shift);
    if (value >= limit * 2 || value < -limit * 2) {
        throw std::overflow_error("Dyadic: numerator overflow");
    }
    return value * (std::int64_t{1} << shift);
}

}  // namespace

Dyadic::Dyadic(std::int64_t numerator, int exponent) : numerator_(numerator), exponent_(exponent) {
    normalize();
}

Dyadic Dyadic::pow2(int exponent) {
    if (exponent >= 0) return Dyadic(checked_shift(1, exponent), 0);
    return Dyadic(1, -exponent);
}

void Dyadic::normalize() {
    if (numerator_ == 0) {
        exponent_ = 0;
        return;
    }
    // Move factors of two out of the numerator while a denominator remains.
    const auto magnitude = static_cast<std::uint64_t>(numerator_ < 0 ? -numerator_ : numerator_);
    int twos = std::countr_zero(magnitude);
    if (exponent_ < 0) {
        numerator_ = checked_shift(numerator_, -exponent_);
        exponent_ = 0;
        return;
    }
    if (twos > exponent_) twos = exponent_;
    numerator_ >>= twos;
    exponent_ -= twos;
}

double Dyadic::to_double() const {
    return std::ldexp(static_cast<double>(numerator_), -exponent_);
}

std::string Dyadic::to_fraction() const {
    if (exponent_ == 0) return std::to_string(numerator_);
    if (exponent_ >= 63) {
        return std::to_string(numerator_) + "/2^" + std::to_string(exponent_);
    }
    return std::to_string(numerator_) + "/" + std::to_string(std::uint64_t{1} << exponent_);
}

Dyadic Dyadic::operator-() const {
    Dyadic out;
    out.numerator_ = -numerator_;
    out.exponent_ = exponent_;
    return out;
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    const int e = a.exponent_ > b.exponent_ ? a.exponent_ : b.exponent_;
    const std::int64_t x = checked_shift(a.numerator_, e - a.exponent_);
    const std::int64_t y = checked_shift(b.numerator_, e - b.exponent_);
    std::int64_t sum = 0;
    if (__builtin_add_overflow(x, y, &sum)) throw std::overflow_error("Dyadic: sum overflow");
    return Dyadic(sum, e);
}

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    std::int64_t product = 0;
    if (__builtin_mul_overflow(a.numerator_, b.numerator_, &product)) {
        throw std::overflow_error("Dyadic: product overflow");
    }
    return Dyadic(product, a.exponent_ + b.exponent_);
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    const Dyadic diff = a - b;
    return diff.numerator_ <=> 0;
}

}  // namespace qgstat
