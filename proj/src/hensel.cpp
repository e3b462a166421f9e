#include "adelic/hensel.hpp"

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

// ---- dense integer polynomials modulo m, lowest degree first ----

using ZPoly = std::vector<Integer>;

void zp_trim(ZPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

ZPoly zp_reduce(const ZPoly& f, const Integer& m) {
    ZPoly out(f.size());
    for (size_t i = 0; i < f.size(); ++i) {
        out[i] = f[i] % m;
        if (out[i] < 0) out[i] += m;
    }
    zp_trim(out);
    return out;
}

ZPoly zp_add(const ZPoly& f, const ZPoly& g, const Integer& m) {
    ZPoly out(std::max(f.size(), g.size()), 0);
    for (size_t i = 0; i < out.size(); ++i) {
        if (i < f.size()) out[i] += f[i];
        if (i < g.size()) out[i] += g[i];
        out[i] %= m;
        if (out[i] < 0) out[i] += m;
    }
    zp_trim(out);
    return out;
}

ZPoly zp_scale(const ZPoly& f, const Integer& c, const Integer& m) {
    ZPoly out(f.size());
    for (size_t i = 0; i < f.size(); ++i) {
        out[i] = f[i] * c % m;
        if (out[i] < 0) out[i] += m;
    }
    zp_trim(out);
    return out;
}

ZPoly zp_mul(const ZPoly& f, const ZPoly& g, const Integer& m) {
    if (f.empty() || g.empty()) return {};
    ZPoly out(f.size() + g.size() - 1, 0);
    for (size_t i = 0; i < f.size(); ++i)
        for (size_t j = 0; j < g.size(); ++j) out[i + j] += f[i] * g[j];
    return zp_reduce(out, m);
}

ZPoly zp_sub(const ZPoly& f, const ZPoly& g, const Integer& m) {
    return zp_add(f, zp_scale(g, m - 1, m), m);
}

// division with remainder by a polynomial whose leading coefficient is a unit
// mod m; returns (q, r) with f = q*g + r, deg r < deg g
std::pair<ZPoly, ZPoly> zp_divmod(const ZPoly& f, const ZPoly& g, const Integer& m) {
    if (g.empty()) throw std::logic_error("division by zero polynomial");
    Integer lead_inv = mod_inverse(g.back(), m);
    ZPoly r = f;
    ZPoly q;
    while (r.size() >= g.size()) {
        Integer c = r.back() * lead_inv % m;
        size_t shift = r.size() - g.size();
        if (q.size() < shift + 1) q.resize(shift + 1, 0);
        q[shift] = c;
        for (size_t i = 0; i < g.size(); ++i) {
            r[shift + i] = (r[shift + i] - c * g[i]) % m;
            if (r[shift + i] < 0) r[shift + i] += m;
        }
        zp_trim(r);
        if (!r.empty() && r.size() >= g.size() && r.back() == 0)
            throw std::logic_error("division stalled");
    }
    zp_trim(q);
    return {q, r};
}

// extended Euclid over the residue field F_p: returns (gcd, alpha, beta) with
// alpha*f + beta*g = gcd, gcd monic; ties in degree reduce the former operand
std::tuple<ZPoly, ZPoly, ZPoly> zp_ext_gcd(const ZPoly& f, const ZPoly& g, const Integer& p) {
    ZPoly r0 = zp_reduce(f, p), r1 = zp_reduce(g, p);
    ZPoly s0 = {Integer(1)}, s1 = {};
    ZPoly t0 = {}, t1 = {Integer(1)};
    while (!r1.empty()) {
        auto [q, r] = zp_divmod(r0, r1, p);
        ZPoly s2 = zp_sub(s0, zp_mul(q, s1, p), p);
        ZPoly t2 = zp_sub(t0, zp_mul(q, t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    if (r0.empty()) return {r0, s0, t0};
    Integer inv = mod_inverse(r0.back(), p);
    return {zp_scale(r0, inv, p), zp_scale(s0, inv, p), zp_scale(t0, inv, p)};
}

Integer zp_eval(const ZPoly& f, const Integer& x, const Integer& m) {
    Integer acc = 0;
    for (size_t i = f.size(); i-- > 0;) {
        acc = (acc * x + f[i]) % m;
    }
    if (acc < 0) acc += m;
    return acc;
}

// rational coefficients -> residues; denominators must be coprime to p
ZPoly poly_to_residues(const Poly& f, long p, const Integer& m) {
    ZPoly out;
    out.reserve(f.coeffs.size());
    for (const Rational& c : f.coeffs) {
        if (c.get_den() % p == 0)
            throw validation_error("coefficient is not p-integral: " + format_rational(c));
        Integer num = c.get_num() % m;
        Integer r = num * mod_inverse(c.get_den() % m, m) % m;
        if (r < 0) r += m;
        out.push_back(r);
    }
    zp_trim(out);
    return out;
}

}  // namespace

Rational Poly::leading() const {
    if (is_zero()) throw std::logic_error("leading coefficient of zero polynomial");
    return coeffs.back();
}

Rational Poly::eval(const Rational& x) const {
    Rational acc(0);
    for (size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
}

Poly make_poly(std::vector<Rational> coeffs) {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    return Poly{std::move(coeffs)};
}

Poly poly_add(const Poly& f, const Poly& g) {
    std::vector<Rational> out(std::max(f.coeffs.size(), g.coeffs.size()), Rational(0));
    for (size_t i = 0; i < out.size(); ++i) out[i] = f.coeff(i) + g.coeff(i);
    return make_poly(std::move(out));
}

Poly poly_sub(const Poly& f, const Poly& g) {
    std::vector<Rational> out(std::max(f.coeffs.size(), g.coeffs.size()), Rational(0));
    for (size_t i = 0; i < out.size(); ++i) out[i] = f.coeff(i) - g.coeff(i);
    return make_poly(std::move(out));
}

Poly poly_mul(const Poly& f, const Poly& g) {
    if (f.is_zero() || g.is_zero()) return Poly{};
    std::vector<Rational> out(f.coeffs.size() + g.coeffs.size() - 1, Rational(0));
    for (size_t i = 0; i < f.coeffs.size(); ++i)
        for (size_t j = 0; j < g.coeffs.size(); ++j) out[i + j] += f.coeffs[i] * g.coeffs[j];
    return make_poly(std::move(out));
}

Poly poly_derivative(const Poly& f) {
    if (f.coeffs.size() <= 1) return Poly{};
    std::vector<Rational> out(f.coeffs.size() - 1);
    for (size_t i = 1; i < f.coeffs.size(); ++i) out[i - 1] = Rational(static_cast<long>(i)) * f.coeffs[i];
    return make_poly(std::move(out));
}

bool poly_equal(const Poly& f, const Poly& g) { return f.coeffs == g.coeffs; }

PadicNumber lift_root(const Poly& f, long p, long a0, long N) {
    require_prime(Integer(p));
    if (N < 1) throw validation_error("precision must be >= 1");
    if (f.is_zero()) throw validation_error("cannot lift a root of the zero polynomial");

    ZPoly fp = poly_to_residues(f, p, pow_int(p, N));
    ZPoly fmodp = zp_reduce(fp, Integer(p));

    Integer a(a0);
    a %= p;
    if (a < 0) a += p;
    if (zp_eval(fmodp, a, Integer(p)) != 0) throw validation_error("not a root mod p");

    ZPoly df;  // derivative of the residue polynomial
    for (size_t i = 1; i < fp.size(); ++i) df.push_back(fp[i] * static_cast<long>(i));
    if (zp_eval(df, a, Integer(p)) == 0)
        throw validation_error("root not simple mod p; use lift_factorization");

    long prec = 1;
    Integer x = a;
    while (prec < N) {
        prec = std::min(2 * prec, N);
        Integer pk = pow_int(p, prec);
        Integer fx = zp_eval(fp, x, pk);
        Integer dfx = zp_eval(df, x, pk);
        x = (x - fx * mod_inverse(dfx, pk)) % pk;
        if (x < 0) x += pk;
    }
    if (zp_eval(fp, x, pow_int(p, N)) != 0) throw std::logic_error("Newton iteration failed");
    return padic_from_rational(Rational(x), p, N);
}

std::pair<Poly, Poly> lift_factorization(const Poly& f, long p, const Poly& G, const Poly& H,
                                         long N) {
    require_prime(Integer(p));
    if (N < 1) throw validation_error("precision must be >= 1");
    Integer pz(p);
    Integer pN = pow_int(p, N);

    ZPoly fN = poly_to_residues(f, p, pN);
    ZPoly Gp = zp_reduce(poly_to_residues(G, p, pN), pz);
    ZPoly Hp = zp_reduce(poly_to_residues(H, p, pN), pz);
    ZPoly fbar = zp_reduce(fN, pz);

    if (fbar.empty()) throw validation_error("f is not primitive mod p");
    if (Gp.empty() || Gp.back() != 1) throw validation_error("G must be monic mod p");
    if (!zp_sub(fbar, zp_mul(Gp, Hp, pz), pz).empty())
        throw validation_error("factorization does not match mod p");

    auto [gcd, alpha, beta] = zp_ext_gcd(Gp, Hp, pz);
    if (gcd.size() != 1) throw validation_error("factors share a root mod p");

    long dG = static_cast<long>(Gp.size()) - 1;
    long dF = static_cast<long>(fN.size()) - 1;

    // g1, h1: integral lifts with the residue degrees
    ZPoly g = Gp, h = Hp;
    Integer pk = pz;  // p^n at step n
    for (long n = 2; n <= N; ++n) {
        Integer pk_next = pk * p;
        // w = (f - g h) / p^(n-1) mod p
        ZPoly prod = zp_mul(g, h, pk_next);
        ZPoly diff = zp_sub(zp_reduce(fN, pk_next), prod, pk_next);
        ZPoly w;
        w.reserve(diff.size());
        for (const Integer& c : diff) {
            if (c % pk != 0) throw std::logic_error("inexact factorization residue");
            w.push_back(c / pk % p);
        }
        zp_trim(w);
        if (w.empty()) {
            pk = pk_next;
            continue;
        }
        // w*beta = g1*q + u with deg u < deg g1 (g1 monic)
        auto [q, u] = zp_divmod(zp_mul(w, beta, pz), Gp, pz);
        ZPoly v = zp_reduce(zp_add(zp_mul(w, alpha, pz), zp_mul(q, Hp, pz), pz), pz);
        g = zp_add(g, zp_scale(u, pk, pk_next), pk_next);
        h = zp_add(h, zp_scale(v, pk, pk_next), pk_next);
        if (static_cast<long>(g.size()) - 1 != dG)
            throw std::logic_error("degree of g drifted during lifting");
        if (static_cast<long>(h.size()) - 1 > dF - dG)
            throw std::logic_error("degree of h exceeded its bound");
        pk = pk_next;
    }

    ZPoly check = zp_sub(zp_reduce(fN, pN), zp_mul(g, h, pN), pN);
    if (!check.empty()) throw std::logic_error("lifted factorization does not divide");

    auto to_poly = [](const ZPoly& z) {
        Poly out;
        out.coeffs.reserve(z.size());
        for (const Integer& c : z) out.coeffs.push_back(Rational(c));
        return out;
    };
    return {to_poly(g), to_poly(h)};
}

Val gauss_valuation(const Poly& f, long p) {
    require_prime(Integer(p));
    Val best = Val::infinity();
    for (const Rational& c : f.coeffs) best = val_min(best, vp_rational(c, Integer(p)));
    return best;
}

bool monic_irreducible_integrality(const Poly& f, long p) {
    require_prime(Integer(p));
    if (!f.is_monic()) throw validation_error("polynomial must be monic");
    Val v0 = vp_rational(f.coeff(0), Integer(p));
    return v0 >= Val(0);
}

std::string format_poly(const Poly& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (size_t i = 0; i < f.coeffs.size(); ++i) {
        const Rational& c = f.coeffs[i];
        if (c == 0) continue;
        std::string mag = format_rational(abs(c));
        std::string term;
        if (i == 0)
            term = mag;
        else if (i == 1)
            term = mag + "*t";
        else
            term = mag + "*t^" + std::to_string(i);
        if (out.empty())
            out = (c < 0 ? "-" : "") + term;
        else
            out += (c < 0 ? " - " : " + ") + term;
    }
    return out;
}

Poly parse_poly(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw validation_error("empty polynomial literal");

    std::vector<Rational> coeffs;
    auto add_term = [&](size_t deg, const Rational& c) {
        if (coeffs.size() <= deg) coeffs.resize(deg + 1, Rational(0));
        coeffs[deg] += c;
    };

    size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            if (s[i] == '-') sign = -sign;
            ++i;
        }
        size_t j = i;
        while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
        std::string term = s.substr(i, j - i);
        i = j;
        if (term.empty()) throw validation_error("malformed polynomial: '" + text + "'");

        auto tpos = term.find('t');
        if (tpos == std::string::npos) {
            add_term(0, Rational(sign) * parse_rational(term));
            continue;
        }
        Rational coeff(1);
        if (tpos > 0) {
            if (term[tpos - 1] != '*')
                throw validation_error("malformed polynomial: '" + text + "'");
            coeff = parse_rational(term.substr(0, tpos - 1));
        }
        size_t deg = 1;
        if (tpos + 1 < term.size()) {
            if (term[tpos + 1] != '^')
                throw validation_error("malformed polynomial: '" + text + "'");
            try {
                long d = std::stol(term.substr(tpos + 2));
                if (d < 0) throw validation_error("negative degree in '" + text + "'");
                deg = static_cast<size_t>(d);
            } catch (const validation_error&) {
                throw;
            } catch (...) {
                throw validation_error("malformed polynomial: '" + text + "'");
            }
        }
        add_term(deg, Rational(sign) * coeff);
    }
    return make_poly(std::move(coeffs));
}

}  // namespace adelic
