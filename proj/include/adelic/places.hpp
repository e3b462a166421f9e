#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adelic/arith.hpp"
#include "adelic/quad.hpp"

namespace adelic {

// The base field of a set of places: Q, or a quadratic field.
struct NumberField {
    std::optional<QuadField> quad;

    static NumberField rationals() { return NumberField{}; }
    static NumberField quadratic(const QuadField& K) { return NumberField{K}; }

    bool is_rational() const { return !quad.has_value(); }
    int degree() const { return is_rational() ? 1 : 2; }
    bool operator==(const NumberField& o) const {
        if (is_rational() != o.is_rational()) return false;
        return is_rational() || quad->d == o.quad->d;
    }
    bool operator!=(const NumberField& o) const { return !(*this == o); }
};

enum class SplittingKind {
    rational,  // the unique prime of Q above p
    split,
    inert,
    ramified,
};

// A prime ideal above p, described by its splitting data. For split primes
// the root distinguishes the ideal from its conjugate: at odd p it is the
// smaller-or-larger lift t of t^2 = d (mod p); at p = 2 (possible only when
// disc = 1 mod 8) it is the root in {0,1} of x^2 - x - (d-1)/4 (mod 2), the
// minimal polynomial of omega.
struct PrimeIdealData {
    Integer p = 0;
    int e = 1;  // ramification index
    int f = 1;  // residue degree
    SplittingKind kind = SplittingKind::rational;
    Integer split_root = 0;

    Rational residue_norm() const;  // p^f as a rational
    bool operator==(const PrimeIdealData& o) const {
        return p == o.p && e == o.e && f == o.f && kind == o.kind && split_root == o.split_root;
    }
    bool operator!=(const PrimeIdealData& o) const { return !(*this == o); }
    bool operator<(const PrimeIdealData& o) const {
        if (p != o.p) return p < o.p;
        return split_root < o.split_root;
    }
};

// An element of the canonical set M_k: an archimedean embedding (index 1..r+s,
// multiplicity n_v) or a finite prime.
struct Place {
    bool archimedean = false;
    int arch_index = 0;    // 1-based among archimedean places
    int multiplicity = 1;  // n_v: 1 real, 2 complex; finite places carry 1
    PrimeIdealData prime;

    static Place arch(int index, int multiplicity) {
        Place v;
        v.archimedean = true;
        v.arch_index = index;
        v.multiplicity = multiplicity;
        return v;
    }
    static Place finite(const PrimeIdealData& P) {
        Place v;
        v.prime = P;
        return v;
    }

    bool operator==(const Place& o) const {
        if (archimedean != o.archimedean) return false;
        if (archimedean) return arch_index == o.arch_index;
        return prime == o.prime;
    }
    bool operator!=(const Place& o) const { return !(*this == o); }
    // archimedean first, then by (p, split_root)
    bool operator<(const Place& o) const {
        if (archimedean != o.archimedean) return archimedean;
        if (archimedean) return arch_index < o.arch_index;
        return prime < o.prime;
    }
};

// v_p on Q: the exponent of p in x, infinity for x = 0.
Val vp_rational(const Rational& x, const Integer& p);

// the primes of O_k above p, 1 (inert/ramified) or 2 (split, smaller root first)
std::vector<PrimeIdealData> factor_prime(const Integer& p, const QuadField& K);

// exact exponent of P in the fractional ideal (x); split primes go through
// Hensel lifting of the residue root with adaptive precision
Val vp_quadratic(const QuadElement& x, const PrimeIdealData& P);

// dispatch on the place's kind; P must belong to x's field
Val valuation_at(const Rational& x, const PrimeIdealData& P);
Val valuation_at(const QuadElement& x, const PrimeIdealData& P);

// as vp_quadratic, but trusts that P belongs to x's field (hot paths that
// just produced P from factor_prime)
Val vp_quadratic_unchecked(const QuadElement& x, const PrimeIdealData& P);

// (p^f)^(-v(x)) as an exact rational; x must be nonzero
Rational abs_at_finite_place(const Rational& x, const PrimeIdealData& P);
Rational abs_at_finite_place(const QuadElement& x, const PrimeIdealData& P);

// product over finite places of phi(x) times |N(x)|; equals 1 exactly
Rational product_formula_check(const Rational& x);
Rational product_formula_check(const QuadElement& x);

// all archimedean places, then all finite places above p <= prime_bound
std::vector<Place> canonical_places(const NumberField& K, long prime_bound);
std::vector<Place> archimedean_places(const NumberField& K);

// the primes (with nonzero exponent) of the principal ideal (x)
std::vector<std::pair<PrimeIdealData, long>> principal_factorization(const Rational& x);
std::vector<std::pair<PrimeIdealData, long>> principal_factorization(const QuadElement& x);

// an element with valuation exactly 1 at P and (for quadratic split P)
// whose conjugate valuation is irrelevant to per-place uses
Rational uniformizer_rational(const PrimeIdealData& P);
QuadElement uniformizer_quadratic(const QuadField& K, const PrimeIdealData& P);

// the image of omega under the p-adic embedding a split prime picks,
// modulo p^precision
Integer split_embedding_root(const QuadField& K, const PrimeIdealData& P, long precision);

// "oo", "oo1", "oo2", "p", "p:split+", "p:split-", "p:inert", "p:ram"
std::string format_place(const NumberField& K, const Place& v);
Place parse_place(const NumberField& K, const std::string& text);

// checks that P is one of the primes of K above P.p (the "belongs to the
// field" precondition)
void require_prime_of_field(const NumberField& K, const PrimeIdealData& P);

}  // namespace adelic
