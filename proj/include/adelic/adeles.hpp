#pragma once

#include <map>

#include "adelic/elements.hpp"

namespace adelic {

// Finite-support description of an idele: the component at every unlisted
// place is the (nonzero) default, finite-place overrides are nonzero field
// elements, archimedean overrides are positive rationals (the value phi_v
// takes in the completion).
struct Idele {
    NumberField field;
    FieldElement def;
    std::map<Place, FieldElement> finite_overrides;
    std::map<int, Rational> arch_overrides;  // by archimedean index
};

// As Idele, but components may vanish; integrality at almost all finite
// places is structural (the default is a field element).
struct Adele {
    NumberField field;
    FieldElement def;
    std::map<Place, FieldElement> finite_overrides;
    std::map<int, Rational> arch_overrides;
};

// Factored fractional ideal: finite places -> nonzero exponents.
struct FractionalIdeal {
    NumberField field;
    std::map<PrimeIdealData, long> exponents;

    bool is_unit_ideal() const { return exponents.empty(); }
    bool operator==(const FractionalIdeal& o) const {
        return field == o.field && exponents == o.exponents;
    }
};

// Integral binary quadratic form a x^2 + b xy + c y^2 of negative discriminant.
struct QuadForm {
    Integer a, b, c;

    Integer discriminant() const { return b * b - 4 * a * c; }
    bool is_reduced() const;
    bool operator==(const QuadForm& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator<(const QuadForm& o) const {
        if (a != o.a) return a < o.a;
        return b < o.b;
    }
};

Idele make_idele(const NumberField& K, const FieldElement& def);
Idele principal_idele(const FieldElement& alpha);
void idele_set_finite(Idele& x, const Place& v, const FieldElement& component);
void idele_set_arch(Idele& x, const Place& v, const Rational& value);
FieldElement idele_finite_component(const Idele& x, const Place& v);

Adele make_adele(const NumberField& K, const FieldElement& def);

Idele idele_mul(const Idele& x, const Idele& y);
bool idele_extensionally_equal(const Idele& x, const Idele& y);

// prod over places of phi_v(component)^(n_v), exact
Rational content(const Idele& x);
bool is_content_one(const Idele& x);

// the ideal map psi: exponent at P is v_P(component at P)
FractionalIdeal to_fractional_ideal(const Idele& x);
// a preimage of A under psi (overrides are uniformizer powers)
Idele idele_for_ideal(const FractionalIdeal& A);

FractionalIdeal make_fractional_ideal(const NumberField& K,
                                      const std::map<PrimeIdealData, long>& exponents);
FractionalIdeal ideal_mul(const FractionalIdeal& A, const FractionalIdeal& B);

bool is_in_I_S(const Idele& x, const std::vector<Place>& S);
bool is_S_unit(const FieldElement& alpha, const std::vector<Place>& S);

// |L(x)| by exact enumeration; Q and imaginary quadratic fields only
unsigned long count_L(const Idele& x);

// the constant (2^n c^n)^-1 from the stronger approximation theorem, with c
// an outward-rounded rational upper bound for max_v sum_i phi_v(w_i)
Rational ck_bound(const NumberField& K);

// all reduced forms of the field discriminant (d < 0 squarefree), sorted by
// (a, b); the class number is the count
std::vector<QuadForm> class_group_imag_quad(long d);

QuadForm reduce_form(QuadForm F);
// the form class of a prime ideal (for witness certification)
QuadForm form_of_prime_ideal(const QuadField& K, const PrimeIdealData& P);
QuadForm principal_form(long discriminant);

// the smallest unit > 1 of O_k, via the continued fraction of sqrt(d)
QuadElement fundamental_unit_real_quad(long d);

// component i = n_i * log phi_i(alpha), floating point; finite components
// are exact multiples of log p
std::vector<double> log_embedding(const FieldElement& alpha, const std::vector<Place>& S);

// numerical rank of the log-embedding lattice of the generators
unsigned s_unit_rank(const NumberField& K, const std::vector<Place>& S,
                     const std::vector<FieldElement>& generators);

std::string format_idele(const Idele& x);
Idele parse_idele(const NumberField& K, const std::string& text);
std::string format_ideal(const FractionalIdeal& A);
FractionalIdeal parse_ideal(const NumberField& K, const std::string& text);
std::string format_form(const QuadForm& F);

}  // namespace adelic
