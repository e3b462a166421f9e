#include "adelic/quad.hpp"

#include <cmath>
#include <cstdlib>

namespace adelic {

namespace {

bool is_squarefree(long d) {
    long m = std::labs(d);
    for (long p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        m /= p;
        if (m % p == 0) return false;
    }
    return true;
}

void require_same_field(const QuadElement& x, const QuadElement& y) {
    if (x.field != y.field) throw validation_error("elements of different quadratic fields");
}

}  // namespace

QuadField make_quad_field(long d) {
    if (d == 0 || d == 1) throw validation_error("d must not be 0 or 1");
    if (!is_squarefree(d)) throw validation_error("d must be squarefree: " + std::to_string(d));
    QuadField K;
    K.d = d;
    // d mod 4 with a nonnegative residue
    long r4 = ((d % 4) + 4) % 4;
    K.half_integral = (r4 == 1);
    K.discriminant = K.half_integral ? d : 4 * d;
    if (d > 0) {
        K.real_embeddings = 2;
        K.complex_pairs = 0;
    } else {
        K.real_embeddings = 0;
        K.complex_pairs = 1;
    }
    return K;
}

bool QuadElement::operator==(const QuadElement& o) const {
    return field == o.field && a == o.a && b == o.b;
}

QuadElement make_quad(const QuadField& K, const Rational& a, const Rational& b) {
    return QuadElement{K, a, b};
}

QuadElement quad_from_rational(const QuadField& K, const Rational& a) {
    return QuadElement{K, a, Rational(0)};
}

QuadElement quad_omega(const QuadField& K) {
    if (K.half_integral) return QuadElement{K, Rational(1, 2), Rational(1, 2)};
    return QuadElement{K, Rational(0), Rational(1)};
}

QuadElement operator+(const QuadElement& x, const QuadElement& y) {
    require_same_field(x, y);
    return QuadElement{x.field, x.a + y.a, x.b + y.b};
}

QuadElement operator-(const QuadElement& x, const QuadElement& y) {
    require_same_field(x, y);
    return QuadElement{x.field, x.a - y.a, x.b - y.b};
}

QuadElement operator-(const QuadElement& x) { return QuadElement{x.field, -x.a, -x.b}; }

QuadElement operator*(const QuadElement& x, const QuadElement& y) {
    require_same_field(x, y);
    Rational d(x.field.d);
    return QuadElement{x.field, x.a * y.a + d * x.b * y.b, x.a * y.b + x.b * y.a};
}

QuadElement quad_inverse(const QuadElement& x) {
    if (x.is_zero()) throw validation_error("inverse of zero");
    Rational n = norm_quad(x);
    return QuadElement{x.field, x.a / n, -x.b / n};
}

QuadElement operator/(const QuadElement& x, const QuadElement& y) { return x * quad_inverse(y); }

QuadElement quad_pow(const QuadElement& x, long e) {
    QuadElement base = e >= 0 ? x : quad_inverse(x);
    unsigned long k = e >= 0 ? static_cast<unsigned long>(e) : static_cast<unsigned long>(-e);
    QuadElement acc = quad_from_rational(x.field, Rational(1));
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

QuadElement quad_conjugate(const QuadElement& x) { return QuadElement{x.field, x.a, -x.b}; }

Rational norm_quad(const QuadElement& x) { return x.a * x.a - Rational(x.field.d) * x.b * x.b; }

Rational trace_quad(const QuadElement& x) { return 2 * x.a; }

bool is_integral(const QuadElement& x) {
    Rational t = trace_quad(x), n = norm_quad(x);
    return t.get_den() == 1 && n.get_den() == 1;
}

std::pair<Rational, Rational> omega_coordinates(const QuadElement& x) {
    if (!x.field.half_integral) return {x.a, x.b};
    // omega = (1 + sqrt(d))/2, so a + b sqrt(d) = (a - b) + 2b * omega
    return {x.a - x.b, 2 * x.b};
}

QuadElement from_omega_coordinates(const QuadField& K, const Rational& u, const Rational& v) {
    if (!K.half_integral) return QuadElement{K, u, v};
    return QuadElement{K, u + v / 2, v / 2};
}

int sign_quad(const Rational& u, const Rational& v, long d) {
    if (d <= 0) throw std::logic_error("sign_quad needs d > 0");
    int su = sgn(u), sv = sgn(v);
    if (sv == 0) return su;
    if (su == 0) return sv;
    if (su == sv) return su;
    // opposite signs: compare u^2 against d v^2 (never equal, d not a square)
    int c = cmp(u * u, Rational(d) * v * v);
    return c > 0 ? su : sv;
}

int cmp_abs_embedding(const QuadElement& x, bool conjugate_embedding, const Rational& t) {
    long d = x.field.d;
    if (d < 0) {
        // modulus^2 = a^2 + |d| b^2
        Rational m2 = x.a * x.a + Rational(-d) * x.b * x.b;
        if (t < 0) return 1;
        return cmp(m2, t * t);
    }
    Rational b = conjugate_embedding ? -x.b : x.b;
    int s = sign_quad(x.a, b, d);
    if (s == 0) return t > 0 ? -1 : (t == 0 ? 0 : 1);
    if (t < 0) return 1;
    // |x| - t has the sign of s*x - t = (s*a - t) + s*b sqrt(d)
    return sign_quad(Rational(s) * x.a - t, Rational(s) * b, d);
}

std::pair<Rational, Rational> abs_embedding_bounds(const QuadElement& x, bool conjugate_embedding,
                                                   long bits) {
    long d = x.field.d;
    if (d < 0) {
        Rational m2 = x.a * x.a + Rational(-d) * x.b * x.b;
        // sqrt of an exact rational: bound numerator and denominator roots
        auto [nlo, nhi] = sqrt_bounds(m2.get_num(), bits + 4);
        auto [dlo, dhi] = sqrt_bounds(m2.get_den(), bits + 4);
        return {nlo / dhi, nhi / dlo};
    }
    Rational b = conjugate_embedding ? -x.b : x.b;
    auto [slo, shi] = sqrt_bounds(Integer(d), bits + 4);
    Rational lo, hi;
    if (b >= 0) {
        lo = x.a + b * slo;
        hi = x.a + b * shi;
    } else {
        lo = x.a + b * shi;
        hi = x.a + b * slo;
    }
    if (lo >= 0) return {lo, hi};
    if (hi <= 0) return {-hi, -lo};
    // enclosure straddles zero; the exact sign settles which side applies
    int s = sign_quad(x.a, b, d);
    if (s >= 0) return {Rational(0), hi};
    return {Rational(0), -lo};
}

double abs_embedding_double(const QuadElement& x, bool conjugate_embedding) {
    double a = x.a.get_d(), b = x.b.get_d();
    long d = x.field.d;
    if (d < 0) return std::sqrt(a * a + static_cast<double>(-d) * b * b);
    double v = a + (conjugate_embedding ? -b : b) * std::sqrt(static_cast<double>(d));
    return std::fabs(v);
}

std::string format_quad(const QuadElement& x) {
    std::string ds = std::to_string(x.field.d);
    if (x.b == 0) return format_rational(x.a);
    std::string bpart = format_rational(abs(x.b)) + "*sqrt(" + ds + ")";
    if (x.a == 0) return (x.b < 0 ? "-" : "") + bpart;
    return format_rational(x.a) + (x.b < 0 ? "-" : "+") + bpart;
}

namespace {

// splits "a+b*sqrt(d)" into top-level terms at +/- signs
std::vector<std::string> split_terms(const std::string& s) {
    std::vector<std::string> terms;
    std::string cur;
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if ((c == '+' || c == '-') && i > 0 && !cur.empty() && s[i - 1] != '(' && s[i - 1] != '*' &&
            s[i - 1] != '/' && s[i - 1] != '+' && s[i - 1] != '-') {
            terms.push_back(cur);
            cur.clear();
            cur.push_back(c);
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) terms.push_back(cur);
    return terms;
}

}  // namespace

QuadElement parse_quad(const QuadField& K, const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw validation_error("empty element literal");
    Rational a(0), b(0);
    for (std::string term : split_terms(s)) {
        int sign = 1;
        size_t i = 0;
        while (i < term.size() && (term[i] == '+' || term[i] == '-')) {
            if (term[i] == '-') sign = -sign;
            ++i;
        }
        term = term.substr(i);
        if (term.empty()) throw validation_error("malformed element: '" + text + "'");
        auto sq = term.find("sqrt(");
        if (sq == std::string::npos) {
            a += Rational(sign) * parse_rational(term);
            continue;
        }
        if (term.back() != ')') throw validation_error("malformed element: '" + text + "'");
        std::string inside = term.substr(sq + 5, term.size() - sq - 6);
        long dd = 0;
        try {
            dd = std::stol(inside);
        } catch (...) {
            throw validation_error("malformed sqrt argument in '" + text + "'");
        }
        if (dd != K.d)
            throw validation_error("sqrt(" + inside + ") does not belong to Q(sqrt(" +
                                   std::to_string(K.d) + "))");
        Rational coeff(1);
        if (sq != 0) {
            if (term[sq - 1] != '*') throw validation_error("malformed element: '" + text + "'");
            coeff = parse_rational(term.substr(0, sq - 1));
        }
        b += Rational(sign) * coeff;
    }
    return QuadElement{K, a, b};
}

}  // namespace adelic
