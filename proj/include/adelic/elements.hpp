#pragma once

#include <variant>

#include "adelic/places.hpp"

namespace adelic {

// An element of the working field: a rational, or a quadratic element.
// Operations require both operands to live in the same field.
using FieldElement = std::variant<Rational, QuadElement>;

NumberField field_of(const FieldElement& x);
FieldElement one_of(const NumberField& K);
FieldElement element_from_rational(const NumberField& K, const Rational& q);

bool fe_is_zero(const FieldElement& x);
bool fe_equal(const FieldElement& x, const FieldElement& y);

FieldElement fe_add(const FieldElement& x, const FieldElement& y);
FieldElement fe_sub(const FieldElement& x, const FieldElement& y);
FieldElement fe_neg(const FieldElement& x);
FieldElement fe_mul(const FieldElement& x, const FieldElement& y);
FieldElement fe_inv(const FieldElement& x);
FieldElement fe_div(const FieldElement& x, const FieldElement& y);
FieldElement fe_pow(const FieldElement& x, long e);

Rational fe_norm(const FieldElement& x);
Val fe_valuation(const FieldElement& x, const PrimeIdealData& P);
Rational fe_abs_finite(const FieldElement& x, const PrimeIdealData& P);
Rational fe_product_formula(const FieldElement& x);
std::vector<std::pair<PrimeIdealData, long>> fe_principal_factorization(const FieldElement& x);

// sign of phi_v(x) - t at an archimedean place, exact
int fe_cmp_abs_arch(const FieldElement& x, const Place& v, const Rational& t);
// sign of phi_v(x) - phi_v(y) at an archimedean place, exact
int fe_cmp_abs_arch_pair(const FieldElement& x, const FieldElement& y, const Place& v);
std::pair<Rational, Rational> fe_abs_arch_bounds(const FieldElement& x, const Place& v, long bits);
double fe_abs_arch_double(const FieldElement& x, const Place& v);

std::string format_element(const FieldElement& x);
FieldElement parse_element(const NumberField& K, const std::string& text);

}  // namespace adelic
