#pragma once

#include <string>

#include "adelic/arith.hpp"

namespace adelic {

// Q(sqrt(d)) for squarefree d != 0, 1. The ring of integers is Z[omega] with
// omega = (1+sqrt(d))/2 when d = 1 (mod 4) and omega = sqrt(d) otherwise.
struct QuadField {
    long d = 0;
    long discriminant = 0;
    int real_embeddings = 0;     // r
    int complex_pairs = 0;       // s; r + 2s = 2
    bool half_integral = false;  // omega = (1+sqrt(d))/2

    bool operator==(const QuadField& o) const { return d == o.d; }
    bool operator!=(const QuadField& o) const { return d != o.d; }
};

QuadField make_quad_field(long d);

// a + b*sqrt(d), a and b exact rationals
struct QuadElement {
    QuadField field;
    Rational a;
    Rational b;

    bool is_zero() const { return a == 0 && b == 0; }
    bool is_rational() const { return b == 0; }
    bool operator==(const QuadElement& o) const;
};

QuadElement make_quad(const QuadField& K, const Rational& a, const Rational& b);
QuadElement quad_from_rational(const QuadField& K, const Rational& a);
QuadElement quad_omega(const QuadField& K);

QuadElement operator+(const QuadElement& x, const QuadElement& y);
QuadElement operator-(const QuadElement& x, const QuadElement& y);
QuadElement operator-(const QuadElement& x);
QuadElement operator*(const QuadElement& x, const QuadElement& y);
QuadElement quad_inverse(const QuadElement& x);
QuadElement operator/(const QuadElement& x, const QuadElement& y);
QuadElement quad_pow(const QuadElement& x, long e);
QuadElement quad_conjugate(const QuadElement& x);

// N(a + b sqrt(d)) = a^2 - d b^2, exact
Rational norm_quad(const QuadElement& x);
Rational trace_quad(const QuadElement& x);

// x in O_k iff trace and norm are integers
bool is_integral(const QuadElement& x);

// coordinates in the integral basis (1, omega): x = u + v*omega
std::pair<Rational, Rational> omega_coordinates(const QuadElement& x);
QuadElement from_omega_coordinates(const QuadField& K, const Rational& u, const Rational& v);

// sign of u + v*sqrt(d), decided exactly (d > 0 squarefree, so u + v*sqrt(d) = 0
// only when u = v = 0)
int sign_quad(const Rational& u, const Rational& v, long d);

// sign of |sigma(x)| - t for a real embedding (conj = false: sqrt(d) -> +sqrt(d)),
// or of |x| - t for the complex absolute value when d < 0; exact
int cmp_abs_embedding(const QuadElement& x, bool conjugate_embedding, const Rational& t);

// rational enclosure of |sigma(x)| (resp. the complex modulus), width <= 2^-bits
std::pair<Rational, Rational> abs_embedding_bounds(const QuadElement& x, bool conjugate_embedding,
                                                   long bits);

double abs_embedding_double(const QuadElement& x, bool conjugate_embedding);

std::string format_quad(const QuadElement& x);
QuadElement parse_quad(const QuadField& K, const std::string& text);

}  // namespace adelic
