#include "adelic/padic.hpp"

#include <algorithm>
#include <cctype>

#include "adelic/places.hpp"

namespace adelic {

namespace {

Integer pow_int(long p, long e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
    return r;
}

void require_same_prime(const PadicNumber& a, const PadicNumber& b) {
    if (a.p != b.p) throw validation_error("incompatible completions (different primes)");
}

// builds a number with the given valuation floor: the digits of
// (value mod p^abs_prec), where value = unit * p^val exactly; p is already
// known prime here
PadicNumber from_exact(const Rational& value, long p, long abs_prec) {
    if (value == 0) return padic_zero(p, abs_prec);
    Integer pz(p);
    long v = vp_integer(value.get_num(), pz) - vp_integer(value.get_den(), pz);
    if (v >= abs_prec) return padic_zero(p, abs_prec);
    PadicNumber out;
    out.p = p;
    out.val = v;
    out.abs_prec = abs_prec;
    long rel = abs_prec - v;
    Integer pk = pow_int(p, rel);
    // the unit part num/den of value * p^-v, reduced mod p^rel
    Integer num = value.get_num(), den = value.get_den();
    if (v > 0) {
        mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), pow_int(p, v).get_mpz_t());
    } else if (v < 0) {
        mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), pow_int(p, -v).get_mpz_t());
    }
    num %= pk;
    if (num < 0) num += pk;
    Integer u = num * mod_inverse(den % pk, pk) % pk;
    if (u < 0) u += pk;
    if (u == 0) throw std::logic_error("unit part vanished mod p^rel");
    out.digits.reserve(rel);
    while (u != 0) {
        unsigned long digit =
            mpz_fdiv_q_ui(u.get_mpz_t(), u.get_mpz_t(), static_cast<unsigned long>(p));
        out.digits.push_back(static_cast<long>(digit));
    }
    while (!out.digits.empty() && out.digits.back() == 0) out.digits.pop_back();
    if (out.digits.empty() || out.digits.front() == 0)
        throw std::logic_error("digit normalization failed");
    return out;
}

}  // namespace

Rational PadicNumber::known_value() const {
    // integer Horner over the digits, then a single scale by p^val
    Integer acc = 0;
    for (size_t i = digits.size(); i-- > 0;) {
        acc *= p;
        acc += digits[i];
    }
    if (val == 0) return Rational(acc);
    if (val > 0) {
        Integer pk;
        mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p),
                      static_cast<unsigned long>(val));
        return Rational(acc * pk);
    }
    Integer pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(-val));
    return make_rational(acc, pk);
}

PadicNumber padic_zero(long p, long abs_prec) {
    PadicNumber out;
    out.p = p;
    out.val = 0;
    out.abs_prec = abs_prec;
    return out;
}

PadicNumber padic_from_rational(const Rational& x, long p, long abs_prec) {
    require_prime(Integer(p));
    if (x == 0) return padic_zero(p, abs_prec);
    long v = vp_rational(x, Integer(p)).value();
    if (abs_prec <= v)
        throw validation_error("precision does not resolve the leading digit");
    return from_exact(x, p, abs_prec);
}

PadicNumber padic_add(const PadicNumber& a, const PadicNumber& b) {
    require_same_prime(a, b);
    long prec = std::min(a.abs_prec, b.abs_prec);
    return from_exact(a.known_value() + b.known_value(), a.p, prec);
}

PadicNumber padic_neg(const PadicNumber& a) { return from_exact(-a.known_value(), a.p, a.abs_prec); }

PadicNumber padic_sub(const PadicNumber& a, const PadicNumber& b) {
    require_same_prime(a, b);
    long prec = std::min(a.abs_prec, b.abs_prec);
    return from_exact(a.known_value() - b.known_value(), a.p, prec);
}

PadicNumber padic_mul(const PadicNumber& a, const PadicNumber& b) {
    require_same_prime(a, b);
    // zero-to-precision absorbs: O(p^n) * x = O(p^(n + val x))
    if (a.is_zero_to_precision() || b.is_zero_to_precision()) {
        long va = a.is_zero_to_precision() ? a.abs_prec : a.val;
        long vb = b.is_zero_to_precision() ? b.abs_prec : b.val;
        return padic_zero(a.p, va + vb);
    }
    long rel = std::min(a.relative_precision(), b.relative_precision());
    long prec = a.val + b.val + rel;
    return from_exact(a.known_value() * b.known_value(), a.p, prec);
}

PadicNumber padic_inv(const PadicNumber& a) {
    if (a.is_zero_to_precision()) throw validation_error("division by zero (to precision)");
    long rel = a.relative_precision();
    long prec = -a.val + rel;
    return from_exact(Rational(1) / a.known_value(), a.p, prec);
}

PadicValuation padic_valuation(const PadicNumber& a) {
    if (a.is_zero_to_precision()) return PadicValuation{true, a.abs_prec};
    return PadicValuation{false, a.val};
}

bool padic_equal(const PadicNumber& a, const PadicNumber& b) {
    if (a.p != b.p) return false;
    long prec = std::min(a.abs_prec, b.abs_prec);
    Rational diff = a.known_value() - b.known_value();
    if (diff == 0) return true;
    Integer pz(a.p);
    return vp_integer(diff.get_num(), pz) - vp_integer(diff.get_den(), pz) >= prec;
}

std::string padic_render(const PadicNumber& a) {
    std::string out;
    for (size_t i = 0; i < a.digits.size(); ++i) {
        if (a.digits[i] == 0) continue;
        if (!out.empty()) out += " + ";
        long e = a.val + static_cast<long>(i);
        std::string c = std::to_string(a.digits[i]);
        if (e == 0)
            out += c;
        else if (e == 1)
            out += c + "*" + std::to_string(a.p);
        else
            out += c + "*" + std::to_string(a.p) + "^" + std::to_string(e);
    }
    std::string tail = "O(" + std::to_string(a.p) + "^" + std::to_string(a.abs_prec) + ")";
    if (out.empty()) return tail;
    return out + " + " + tail;
}

PadicNumber padic_parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw validation_error("empty p-adic literal");

    std::vector<std::string> terms;
    {
        std::string cur;
        for (char c : s) {
            if (c == '+') {
                if (cur.empty()) throw validation_error("malformed p-adic: '" + text + "'");
                terms.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        if (cur.empty()) throw validation_error("malformed p-adic: '" + text + "'");
        terms.push_back(cur);
    }

    long p = 0, abs_prec = 0;
    bool saw_tail = false;
    std::vector<std::pair<long, long>> digit_terms;  // (exponent, digit)

    auto parse_long = [&](const std::string& t) {
        try {
            size_t pos = 0;
            long v = std::stol(t, &pos);
            if (pos != t.size()) throw validation_error("");
            return v;
        } catch (...) {
            throw validation_error("malformed p-adic: '" + text + "'");
        }
    };
    auto note_p = [&](long pp) {
        if (p == 0)
            p = pp;
        else if (p != pp)
            throw validation_error("inconsistent primes in '" + text + "'");
    };

    for (size_t ti = 0; ti < terms.size(); ++ti) {
        const std::string& t = terms[ti];
        if (t.rfind("O(", 0) == 0) {
            if (ti + 1 != terms.size() || t.back() != ')')
                throw validation_error("malformed precision term in '" + text + "'");
            std::string inner = t.substr(2, t.size() - 3);
            auto caret = inner.find('^');
            if (caret == std::string::npos)
                throw validation_error("malformed precision term in '" + text + "'");
            note_p(parse_long(inner.substr(0, caret)));
            abs_prec = parse_long(inner.substr(caret + 1));
            saw_tail = true;
            continue;
        }
        auto star = t.find('*');
        long digit, expo;
        if (star == std::string::npos) {
            digit = parse_long(t);
            expo = 0;
        } else {
            digit = parse_long(t.substr(0, star));
            std::string rest = t.substr(star + 1);
            auto caret = rest.find('^');
            if (caret == std::string::npos) {
                note_p(parse_long(rest));
                expo = 1;
            } else {
                note_p(parse_long(rest.substr(0, caret)));
                expo = parse_long(rest.substr(caret + 1));
            }
        }
        digit_terms.push_back({expo, digit});
    }

    if (!saw_tail) throw validation_error("p-adic literal missing O(p^N) term");
    if (p < 2 || !is_prime(Integer(p)))
        throw validation_error("p-adic base is not prime in '" + text + "'");

    if (digit_terms.empty()) return padic_zero(p, abs_prec);

    std::sort(digit_terms.begin(), digit_terms.end());
    for (size_t i = 1; i < digit_terms.size(); ++i)
        if (digit_terms[i].first == digit_terms[i - 1].first)
            throw validation_error("repeated exponent in '" + text + "'");

    Rational value(0);
    for (const auto& [e, c] : digit_terms) {
        if (c <= 0 || c >= p) throw validation_error("digit out of range in '" + text + "'");
        value += Rational(c) * pow_rational(Rational(p), e);
    }
    if (digit_terms.back().first >= abs_prec)
        throw validation_error("digit beyond stated precision in '" + text + "'");
    return from_exact(value, p, abs_prec);
}

}  // namespace adelic
