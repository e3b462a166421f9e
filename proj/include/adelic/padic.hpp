#pragma once

#include <string>
#include <vector>

#include "adelic/arith.hpp"

namespace adelic {

// Truncated canonical expansion over Q_p: the value
//   sum_i digits[i] * p^(val + i)  +  O(p^abs_prec)
// with digits in [0, p), first and last digit nonzero (trailing zeros are
// implied by the precision). Zero-to-precision keeps only (p, abs_prec) and
// an empty digit vector.
struct PadicNumber {
    long p = 0;
    long val = 0;
    std::vector<long> digits;
    long abs_prec = 0;

    bool is_zero_to_precision() const { return digits.empty(); }
    long relative_precision() const { return is_zero_to_precision() ? 0 : abs_prec - val; }

    // the exact rational the stored digits denote (a finite sum)
    Rational known_value() const;
};

// valuation(a): an exact value, or the "at least N" answer a truncation gives
struct PadicValuation {
    bool below_precision = false;
    long value = 0;  // the valuation, or the precision bound N

    bool operator==(const PadicValuation& o) const {
        return below_precision == o.below_precision && value == o.value;
    }
};

PadicNumber padic_from_rational(const Rational& x, long p, long abs_prec);
PadicNumber padic_zero(long p, long abs_prec);

PadicNumber padic_add(const PadicNumber& a, const PadicNumber& b);
PadicNumber padic_neg(const PadicNumber& a);
PadicNumber padic_sub(const PadicNumber& a, const PadicNumber& b);
PadicNumber padic_mul(const PadicNumber& a, const PadicNumber& b);
PadicNumber padic_inv(const PadicNumber& a);

PadicValuation padic_valuation(const PadicNumber& a);

// congruence modulo p^min(prec_a, prec_b)
bool padic_equal(const PadicNumber& a, const PadicNumber& b);

// "c0 + c1*p + c2*p^2 + O(p^N)" with only nonzero digits written;
// parse(render(a)) == a bit-exactly
std::string padic_render(const PadicNumber& a);
PadicNumber padic_parse(const std::string& text);

}  // namespace adelic
