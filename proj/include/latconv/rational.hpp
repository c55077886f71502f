#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace latconv {

// Exact rational with positive denominator, always in lowest terms.
class Rational {
public:
    constexpr Rational(std::int64_t num = 0, std::int64_t den = 1) : num_(num), den_(den) {
        if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    constexpr std::int64_t num() const { return num_; }
    constexpr std::int64_t den() const { return den_; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string to_string() const { return std::to_string(num_) + "/" + std::to_string(den_); }

    friend constexpr Rational operator+(Rational a, Rational b) {
        const std::int64_t l = std::lcm(a.den_, b.den_);
        return Rational(a.num_ * (l / a.den_) + b.num_ * (l / b.den_), l);
    }
    friend constexpr Rational operator-(Rational a, Rational b) { return a + Rational(-b.num_, b.den_); }
    friend constexpr Rational operator*(Rational a, Rational b) { return Rational(a.num_ * b.num_, a.den_ * b.den_); }
    friend constexpr bool operator==(Rational a, Rational b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend constexpr bool operator<(Rational a, Rational b) { return a.num_ * b.den_ < b.num_ * a.den_; }
    friend constexpr bool operator>(Rational a, Rational b) { return b < a; }
    friend constexpr bool operator<=(Rational a, Rational b) { return !(b < a); }

private:
    std::int64_t num_;
    std::int64_t den_;
};

}  // namespace latconv
