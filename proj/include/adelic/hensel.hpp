#pragma once

#include <string>
#include <vector>

#include "adelic/arith.hpp"
#include "adelic/padic.hpp"

namespace adelic {

// Polynomial over Q, coefficients lowest-degree first, highest nonzero.
// The zero polynomial has no coefficients.
struct Poly {
    std::vector<Rational> coeffs;

    bool is_zero() const { return coeffs.empty(); }
    long degree() const { return static_cast<long>(coeffs.size()) - 1; }
    Rational coeff(size_t i) const { return i < coeffs.size() ? coeffs[i] : Rational(0); }
    Rational leading() const;
    bool is_monic() const { return !is_zero() && leading() == 1; }
    Rational eval(const Rational& x) const;
};

Poly make_poly(std::vector<Rational> coeffs);
Poly poly_add(const Poly& f, const Poly& g);
Poly poly_sub(const Poly& f, const Poly& g);
Poly poly_mul(const Poly& f, const Poly& g);
Poly poly_derivative(const Poly& f);
bool poly_equal(const Poly& f, const Poly& g);

// Newton lifting of a simple residue root: returns r with f(r) = 0 (mod p^N)
// and r = a0 (mod p).
PadicNumber lift_root(const Poly& f, long p, long a0, long N);

// The inductive Hensel scheme: given f = G*H (mod p) with G, H coprime and
// G monic, produce (g, h) with f = g*h (mod p^N), g = G, h = H (mod p),
// deg g = deg G, deg h <= deg f - deg G. Output coefficients are canonical
// representatives in [0, p^N).
std::pair<Poly, Poly> lift_factorization(const Poly& f, long p, const Poly& G, const Poly& H,
                                         long N);

// min over coefficients of v_p; infinity for the zero polynomial
Val gauss_valuation(const Poly& f, long p);

// for monic f, irreducible over Q_p by caller's assertion:
// f integral iff the constant term is
bool monic_irreducible_integrality(const Poly& f, long p);

// "c0 + c1*t + c2*t^2" with rational coefficients
std::string format_poly(const Poly& f);
Poly parse_poly(const std::string& text);

}  // namespace adelic
