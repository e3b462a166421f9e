#pragma once

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace adelic {

// The universal exact scalars. mpq_class is kept canonical by GMP:
// gcd(|num|, den) = 1, den > 0, zero is 0/1.
using Integer = mpz_class;
using Rational = mpq_class;

// Bad input (non-prime p, malformed text, contract violations by the caller).
// The CLI maps this to exit code 2.
struct validation_error : std::invalid_argument {
    explicit validation_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// An iteration/enumeration budget ran out before a certified answer was found.
// The CLI maps this to exit code 1. Never carries a partial result.
struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Exponential valuation value: an integer or the infinity sentinel (v(0)).
// Infinity absorbs addition, per v(0*x) = v(0).
class Val {
public:
    Val() : inf_(true), v_(0) {}
    Val(long v) : inf_(false), v_(v) {}  // NOLINT: implicit by design
    static Val infinity() { return Val(); }

    bool is_infinity() const { return inf_; }
    long value() const {
        if (inf_) throw std::logic_error("value() on infinite valuation");
        return v_;
    }

    Val operator+(const Val& o) const {
        if (inf_ || o.inf_) return infinity();
        return Val(v_ + o.v_);
    }
    Val operator-() const {
        if (inf_) throw std::logic_error("negating infinite valuation");
        return Val(-v_);
    }
    bool operator==(const Val& o) const {
        return inf_ == o.inf_ && (inf_ || v_ == o.v_);
    }
    bool operator!=(const Val& o) const { return !(*this == o); }
    // infinity compares greater than every finite value
    bool operator<(const Val& o) const {
        if (inf_) return false;
        if (o.inf_) return true;
        return v_ < o.v_;
    }
    bool operator<=(const Val& o) const { return *this < o || *this == o; }
    bool operator>(const Val& o) const { return o < *this; }
    bool operator>=(const Val& o) const { return o <= *this; }

    std::string str() const { return inf_ ? "oo" : std::to_string(v_); }

private:
    bool inf_;
    long v_;
};

inline Val val_min(const Val& a, const Val& b) { return a < b ? a : b; }

Rational make_rational(const Integer& num, const Integer& den);
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& x);

bool is_prime(const Integer& n);
void require_prime(const Integer& p);

// exponent of p in n (n != 0)
long vp_integer(const Integer& n, const Integer& p);

// Full factorization into prime powers. Trial division up to 10^5, then
// Brent-cycle rho on the cofactor; deterministic.
std::map<Integer, long> factorize(const Integer& n);

// x = r (mod m) for pairwise coprime moduli; returns (r, prod m) with
// 0 <= r < prod m.
std::pair<Integer, Integer> crt(const std::vector<std::pair<Integer, Integer>>& congruences);

Integer mod_inverse(const Integer& a, const Integer& m);
Integer power_mod(const Integer& base, const Integer& exp, const Integer& m);

// [lo, hi] with lo <= sqrt(n) <= hi and hi - lo <= 2^-bits, n >= 0.
std::pair<Rational, Rational> sqrt_bounds(const Integer& n, long bits);

Rational pow_rational(const Rational& x, long e);

}  // namespace adelic
