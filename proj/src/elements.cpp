#include "adelic/elements.hpp"

#include <cmath>

namespace adelic {

namespace {

const Rational& as_q(const FieldElement& x) { return std::get<Rational>(x); }
const QuadElement& as_k(const FieldElement& x) { return std::get<QuadElement>(x); }

void require_same(const FieldElement& x, const FieldElement& y) {
    if (field_of(x) != field_of(y)) throw validation_error("elements of different fields");
}

bool conj_embedding(const Place& v) { return v.arch_index == 2; }

}  // namespace

NumberField field_of(const FieldElement& x) {
    if (std::holds_alternative<Rational>(x)) return NumberField::rationals();
    return NumberField::quadratic(as_k(x).field);
}

FieldElement one_of(const NumberField& K) { return element_from_rational(K, Rational(1)); }

FieldElement element_from_rational(const NumberField& K, const Rational& q) {
    if (K.is_rational()) return FieldElement{q};
    return FieldElement{quad_from_rational(*K.quad, q)};
}

bool fe_is_zero(const FieldElement& x) {
    if (std::holds_alternative<Rational>(x)) return as_q(x) == 0;
    return as_k(x).is_zero();
}

bool fe_equal(const FieldElement& x, const FieldElement& y) {
    if (field_of(x) != field_of(y)) return false;
    if (std::holds_alternative<Rational>(x)) return as_q(x) == as_q(y);
    return as_k(x) == as_k(y);
}

FieldElement fe_add(const FieldElement& x, const FieldElement& y) {
    require_same(x, y);
    if (std::holds_alternative<Rational>(x)) return FieldElement{as_q(x) + as_q(y)};
    return FieldElement{as_k(x) + as_k(y)};
}

FieldElement fe_sub(const FieldElement& x, const FieldElement& y) {
    require_same(x, y);
    if (std::holds_alternative<Rational>(x)) return FieldElement{as_q(x) - as_q(y)};
    return FieldElement{as_k(x) - as_k(y)};
}

FieldElement fe_neg(const FieldElement& x) {
    if (std::holds_alternative<Rational>(x)) return FieldElement{-as_q(x)};
    return FieldElement{-as_k(x)};
}

FieldElement fe_mul(const FieldElement& x, const FieldElement& y) {
    require_same(x, y);
    if (std::holds_alternative<Rational>(x)) return FieldElement{as_q(x) * as_q(y)};
    return FieldElement{as_k(x) * as_k(y)};
}

FieldElement fe_inv(const FieldElement& x) {
    if (fe_is_zero(x)) throw validation_error("inverse of zero");
    if (std::holds_alternative<Rational>(x)) return FieldElement{Rational(1) / as_q(x)};
    return FieldElement{quad_inverse(as_k(x))};
}

FieldElement fe_div(const FieldElement& x, const FieldElement& y) { return fe_mul(x, fe_inv(y)); }

FieldElement fe_pow(const FieldElement& x, long e) {
    if (std::holds_alternative<Rational>(x)) return FieldElement{pow_rational(as_q(x), e)};
    return FieldElement{quad_pow(as_k(x), e)};
}

Rational fe_norm(const FieldElement& x) {
    if (std::holds_alternative<Rational>(x)) return as_q(x);
    return norm_quad(as_k(x));
}

Val fe_valuation(const FieldElement& x, const PrimeIdealData& P) {
    if (std::holds_alternative<Rational>(x)) return valuation_at(as_q(x), P);
    return valuation_at(as_k(x), P);
}

Rational fe_abs_finite(const FieldElement& x, const PrimeIdealData& P) {
    if (std::holds_alternative<Rational>(x)) return abs_at_finite_place(as_q(x), P);
    return abs_at_finite_place(as_k(x), P);
}

Rational fe_product_formula(const FieldElement& x) {
    if (std::holds_alternative<Rational>(x)) return product_formula_check(as_q(x));
    return product_formula_check(as_k(x));
}

std::vector<std::pair<PrimeIdealData, long>> fe_principal_factorization(const FieldElement& x) {
    if (std::holds_alternative<Rational>(x)) return principal_factorization(as_q(x));
    return principal_factorization(as_k(x));
}

int fe_cmp_abs_arch(const FieldElement& x, const Place& v, const Rational& t) {
    if (!v.archimedean) throw std::logic_error("archimedean comparison at a finite place");
    if (std::holds_alternative<Rational>(x)) {
        if (t < 0) return 1;
        return cmp(abs(as_q(x)), t);
    }
    return cmp_abs_embedding(as_k(x), conj_embedding(v), t);
}

int fe_cmp_abs_arch_pair(const FieldElement& x, const FieldElement& y, const Place& v) {
    require_same(x, y);
    if (std::holds_alternative<Rational>(x)) return cmp(abs(as_q(x)), abs(as_q(y)));
    const QuadElement& xe = as_k(x);
    const QuadElement& ye = as_k(y);
    // compare |sigma(x)|^2 with |sigma(y)|^2; both are u + w*sqrt(d) with
    // rational u, w, so the difference sign is exact
    bool conj = conj_embedding(v);
    long d = xe.field.d;
    if (d < 0) {
        Rational mx = xe.a * xe.a + Rational(-d) * xe.b * xe.b;
        Rational my = ye.a * ye.a + Rational(-d) * ye.b * ye.b;
        return cmp(mx, my);
    }
    Rational bx = conj ? -xe.b : xe.b, by = conj ? -ye.b : ye.b;
    Rational u = (xe.a * xe.a + Rational(d) * bx * bx) - (ye.a * ye.a + Rational(d) * by * by);
    Rational w = 2 * (xe.a * bx - ye.a * by);
    return sign_quad(u, w, d);
}

std::pair<Rational, Rational> fe_abs_arch_bounds(const FieldElement& x, const Place& v, long bits) {
    if (std::holds_alternative<Rational>(x)) {
        Rational a = abs(as_q(x));
        return {a, a};
    }
    return abs_embedding_bounds(as_k(x), conj_embedding(v), bits);
}

double fe_abs_arch_double(const FieldElement& x, const Place& v) {
    if (std::holds_alternative<Rational>(x)) return std::fabs(as_q(x).get_d());
    return abs_embedding_double(as_k(x), conj_embedding(v));
}

std::string format_element(const FieldElement& x) {
    if (std::holds_alternative<Rational>(x)) return format_rational(as_q(x));
    return format_quad(as_k(x));
}

FieldElement parse_element(const NumberField& K, const std::string& text) {
    if (K.is_rational()) return FieldElement{parse_rational(text)};
    return FieldElement{parse_quad(*K.quad, text)};
}

}  // namespace adelic
