#ifndef UFM_RATIONAL_HPP
#define UFM_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace ufm {

// Exact rational on 64-bit components. Solver values stay tiny; overflow in
// intermediates is checked via 128-bit arithmetic and reported, never wrapped.
class Rat {
   public:
    constexpr Rat() : num_(0), den_(1) {}
    constexpr Rat(long long n) : num_(n), den_(1) {}
    Rat(long long n, long long d) : num_(n), den_(d) { normalize(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }

    friend Rat operator+(const Rat &a, const Rat &b) {
        return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                    i128(a.den_) * b.den_);
    }
    friend Rat operator-(const Rat &a, const Rat &b) {
        return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                    i128(a.den_) * b.den_);
    }
    friend Rat operator*(const Rat &a, const Rat &b) {
        return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rat operator/(const Rat &a, const Rat &b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }
    Rat operator-() const { return Rat(-num_, den_); }
    Rat &operator+=(const Rat &b) { return *this = *this + b; }
    Rat &operator-=(const Rat &b) { return *this = *this - b; }

    friend bool operator==(const Rat &a, const Rat &b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rat &a, const Rat &b) { return !(a == b); }
    friend bool operator<(const Rat &a, const Rat &b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator<=(const Rat &a, const Rat &b) { return !(b < a); }
    friend bool operator>(const Rat &a, const Rat &b) { return b < a; }
    friend bool operator>=(const Rat &a, const Rat &b) { return !(a < b); }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    // Accepts "p", "-p", or "p/q".
    static Rat parse(const std::string &s) {
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rat(std::stoll(s));
            return Rat(std::stoll(s.substr(0, slash)),
                       std::stoll(s.substr(slash + 1)));
        } catch (const std::exception &) {
            throw std::invalid_argument("bad rational literal: " + s);
        }
    }

    friend std::ostream &operator<<(std::ostream &os, const Rat &r) {
        return os << r.str();
    }

   private:
    using i128 = __int128;

    static Rat make(i128 n, i128 d) {
        if (d == 0) throw std::domain_error("rational with zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        i128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("rational overflow");
        Rat r;
        r.num_ = static_cast<long long>(n);
        r.den_ = static_cast<long long>(d);
        return r;
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) {
            i128 t = a % b;
            a = b;
            b = t;
        }
        return a == 0 ? 1 : a;
    }

    void normalize() { *this = make(num_, den_); }

    long long num_;
    long long den_;
};

}  // namespace ufm

#endif
