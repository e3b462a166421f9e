#include "adelic/arith.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace adelic {

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw validation_error("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw validation_error("empty rational literal");
    auto slash = s.find('/');
    auto check_int = [&](const std::string& t) {
        if (t.empty()) throw validation_error("malformed rational: '" + text + "'");
        size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) throw validation_error("malformed rational: '" + text + "'");
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i])))
                throw validation_error("malformed rational: '" + text + "'");
    };
    if (slash == std::string::npos) {
        check_int(s);
        return Rational(Integer(s));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    check_int(num);
    check_int(den);
    return make_rational(Integer(num), Integer(den));
}

std::string format_rational(const Rational& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

namespace {

// primes below 10^3, built once; larger factors are rho's job
const std::vector<long>& small_primes() {
    static const std::vector<long> primes = [] {
        const long limit = 1000;
        std::vector<bool> sieve(limit, true);
        std::vector<long> ps;
        for (long i = 2; i < limit; ++i) {
            if (!sieve[i]) continue;
            ps.push_back(i);
            for (long j = 2 * i; j < limit; j += i) sieve[j] = false;
        }
        return ps;
    }();
    return primes;
}

bool miller_rabin_round(const Integer& n, const Integer& d, unsigned long s, long base) {
    Integer x = power_mod(Integer(base), d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == n - 1) return true;
    }
    return false;
}

Integer brent_rho(const Integer& n) {
    // deterministic parameter sweep; n is odd, composite, not a prime power of
    // a small prime (those were stripped by trial division). Raw mpz in the
    // inner loop: it runs ~sqrt(p) iterations for the smallest factor p.
    mpz_t y, x, ys, q, g, diff, tmp;
    mpz_inits(y, x, ys, q, g, diff, tmp, nullptr);
    const mpz_srcptr nz = n.get_mpz_t();
    Integer result;
    for (long c = 1;; ++c) {
        mpz_set_ui(y, 2);
        mpz_set_ui(g, 1);
        mpz_set_ui(q, 1);
        unsigned long r = 1;
        const unsigned long batch = 128;
        while (mpz_cmp_ui(g, 1) == 0) {
            mpz_set(x, y);
            for (unsigned long i = 0; i < r; ++i) {
                mpz_mul(tmp, y, y);
                mpz_add_ui(tmp, tmp, c);
                mpz_mod(y, tmp, nz);
            }
            unsigned long k = 0;
            while (k < r && mpz_cmp_ui(g, 1) == 0) {
                mpz_set(ys, y);
                unsigned long steps = std::min(batch, r - k);
                for (unsigned long i = 0; i < steps; ++i) {
                    mpz_mul(tmp, y, y);
                    mpz_add_ui(tmp, tmp, c);
                    mpz_mod(y, tmp, nz);
                    mpz_sub(diff, x, y);
                    mpz_abs(diff, diff);
                    mpz_mul(tmp, q, diff);
                    mpz_mod(q, tmp, nz);
                }
                mpz_gcd(g, q, nz);
                k += steps;
            }
            r *= 2;
        }
        if (mpz_cmp(g, nz) == 0) {
            // backtrack one step at a time
            mpz_set_ui(g, 1);
            while (mpz_cmp_ui(g, 1) == 0) {
                mpz_mul(tmp, ys, ys);
                mpz_add_ui(tmp, tmp, c);
                mpz_mod(ys, tmp, nz);
                mpz_sub(diff, x, ys);
                mpz_abs(diff, diff);
                mpz_gcd(g, diff, nz);
            }
        }
        if (mpz_cmp(g, nz) != 0) {
            result = Integer(g);
            break;
        }
    }
    mpz_clears(y, x, ys, q, g, diff, tmp, nullptr);
    return result;
}

void factor_rec(const Integer& n, std::map<Integer, long>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out[n]++;
        return;
    }
    Integer d = brent_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

bool is_prime(const Integer& n) {
    if (n < 2) return false;
    for (long p : small_primes()) {
        if (n == p) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    // the first 13 prime bases decide primality below 3.317e24
    static const Integer kDeterministicLimit("3317044064679887385961980");
    if (n < kDeterministicLimit) {
        Integer d = n - 1;
        unsigned long s = 0;
        while (d % 2 == 0) {
            d /= 2;
            ++s;
        }
        for (long base : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L, 41L})
            if (!miller_rabin_round(n, d, s, base)) return false;
        return true;
    }
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

void require_prime(const Integer& p) {
    if (!is_prime(p)) throw validation_error("not a prime: " + p.get_str());
}

long vp_integer(const Integer& n, const Integer& p) {
    if (n == 0) throw std::logic_error("vp_integer(0)");
    Integer reduced;
    return static_cast<long>(mpz_remove(reduced.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

std::map<Integer, long> factorize(const Integer& n) {
    if (n == 0) throw validation_error("factorize(0)");
    std::map<Integer, long> out;
    Integer m = abs(n);
    for (long p : small_primes()) {
        if (m == 1) break;
        if (Integer(p) * p > m) break;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            out[Integer(p)]++;
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        }
    }
    if (m > 1) factor_rec(m, out);
    return out;
}

std::pair<Integer, Integer> crt(const std::vector<std::pair<Integer, Integer>>& congruences) {
    Integer r = 0, m = 1;
    for (const auto& [ri, mi] : congruences) {
        if (mi <= 0) throw validation_error("CRT modulus must be positive");
        if (gcd(m, mi) != 1) throw validation_error("CRT moduli not coprime");
        // r' = r + m * ((ri - r) * m^-1 mod mi)
        Integer t = ((ri - r) % mi) * mod_inverse(m % mi, mi) % mi;
        if (t < 0) t += mi;
        r += m * t;
        m *= mi;
    }
    r %= m;
    if (r < 0) r += m;
    return {r, m};
}

Integer mod_inverse(const Integer& a, const Integer& m) {
    Integer inv;
    if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw validation_error("no modular inverse of " + a.get_str() + " mod " + m.get_str());
    return inv;
}

Integer power_mod(const Integer& base, const Integer& exp, const Integer& m) {
    Integer r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
    return r;
}

std::pair<Rational, Rational> sqrt_bounds(const Integer& n, long bits) {
    if (n < 0) throw std::logic_error("sqrt_bounds of negative");
    Integer scaled = n << (2 * bits);
    Integer root = sqrt(scaled);  // floor sqrt
    Integer denom = Integer(1) << bits;
    Rational lo = make_rational(root, denom);
    Rational hi = make_rational(root + 1, denom);
    return {lo, hi};
}

Rational pow_rational(const Rational& x, long e) {
    if (e == 0) return Rational(1);
    if (x == 0 && e < 0) throw validation_error("0 to a negative power");
    Rational base = e > 0 ? x : Rational(1) / x;
    unsigned long k = e > 0 ? static_cast<unsigned long>(e) : static_cast<unsigned long>(-e);
    Rational acc(1);
    while (k) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

}  // namespace adelic
