#include "adelic/places.hpp"

#include <algorithm>

namespace adelic {

namespace {

long mod_pos(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

// Tonelli-Shanks square root of a quadratic residue mod an odd prime
Integer sqrt_mod_prime(const Integer& a0, const Integer& p) {
    Integer a = a0 % p;
    if (a < 0) a += p;
    if (a == 0) return 0;
    if (power_mod(a, (p - 1) / 2, p) != 1)
        throw std::logic_error("sqrt_mod_prime of a non-residue");
    if (p % 4 == 3) return power_mod(a, (p + 1) / 4, p);
    // write p - 1 = q * 2^s with q odd
    Integer q = p - 1;
    unsigned long s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    Integer z = 2;
    while (power_mod(z, (p - 1) / 2, p) != p - 1) ++z;
    Integer m(static_cast<long>(s)), c = power_mod(z, q, p), t = power_mod(a, q, p),
            r = power_mod(a, (q + 1) / 2, p);
    while (t != 1) {
        Integer t2 = t;
        long i = 0;
        while (t2 != 1) {
            t2 = t2 * t2 % p;
            ++i;
        }
        Integer b = c;
        for (Integer j = 0; j < m - i - 1; ++j) b = b * b % p;
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    return r;
}

// smallest root t of t^2 = d (mod p) for odd split p, as a residue in [0, p)
Integer split_root_mod_p(long d, const Integer& p) {
    Integer dm = Integer(d) % p;
    if (dm < 0) dm += p;
    Integer t = sqrt_mod_prime(dm, p);
    if (t == 0 || (t * t - dm) % p != 0)
        throw std::logic_error("split prime without a residue root");
    return t;
}

// Newton lifting of a simple root of X^2 + A X + B from r0 mod p to p^N.
Integer newton_quadratic_root(const Integer& p, const Integer& A, const Integer& B, const Integer& r0,
                              long N) {
    Integer x = r0;
    long prec = 1;
    while (prec < N) {
        prec = std::min(2 * prec, N);
        Integer pk;
        mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(prec));
        Integer fx = (x * x + A * x + B) % pk;
        Integer dfx = (2 * x + A) % pk;
        x = (x - fx * mod_inverse(dfx, pk)) % pk;
        if (x < 0) x += pk;
    }
    return x;
}

// p-integral rational as a residue mod p^N
Integer residue_mod(const Rational& x, const Integer& pk) {
    Integer num = x.get_num() % pk;
    Integer inv = mod_inverse(x.get_den() % pk, pk);
    Integer r = num * inv % pk;
    if (r < 0) r += pk;
    return r;
}

}  // namespace

Rational PrimeIdealData::residue_norm() const {
    Rational q(1);
    for (int i = 0; i < f; ++i) q *= Rational(p);
    return q;
}

Val vp_rational(const Rational& x, const Integer& p) {
    require_prime(p);
    if (x == 0) return Val::infinity();
    long v = 0;
    if (x.get_num() != 0) v += vp_integer(x.get_num(), p);
    v -= vp_integer(x.get_den(), p);
    return Val(v);
}

std::vector<PrimeIdealData> factor_prime(const Integer& p, const QuadField& K) {
    require_prime(p);
    long D = K.discriminant;

    SplittingKind kind;
    if (p == 2) {
        long r8 = mod_pos(D, 8);
        if (r8 == 1)
            kind = SplittingKind::split;
        else if (r8 == 5)
            kind = SplittingKind::inert;
        else
            kind = SplittingKind::ramified;  // disc = 0 mod 4
    } else if (mpz_divisible_p(Integer(D).get_mpz_t(), p.get_mpz_t())) {
        kind = SplittingKind::ramified;
    } else {
        // Euler's criterion on d mod p
        Integer dm = Integer(K.d) % p;
        if (dm < 0) dm += p;
        Integer ls = power_mod(dm, (p - 1) / 2, p);
        kind = (ls == 1) ? SplittingKind::split : SplittingKind::inert;
    }

    std::vector<PrimeIdealData> out;
    if (kind == SplittingKind::ramified) {
        out.push_back(PrimeIdealData{p, 2, 1, kind, 0});
    } else if (kind == SplittingKind::inert) {
        out.push_back(PrimeIdealData{p, 1, 2, kind, 0});
    } else {
        Integer t1, t2;
        if (p == 2) {
            t1 = 0;  // roots of x^2 - x - (d-1)/4 mod 2
            t2 = 1;
        } else {
            t1 = split_root_mod_p(K.d, p);
            t2 = p - t1;
            if (t2 < t1) swap(t1, t2);
        }
        out.push_back(PrimeIdealData{p, 1, 1, kind, t1});
        out.push_back(PrimeIdealData{p, 1, 1, kind, t2});
    }
    return out;
}

void require_prime_of_field(const NumberField& K, const PrimeIdealData& P) {
    if (P.p < 2) throw validation_error("malformed prime data");
    if (K.is_rational()) {
        if (P.kind != SplittingKind::rational || P.e != 1 || P.f != 1)
            throw validation_error("prime data does not belong to Q");
        require_prime(Integer(P.p));
        return;
    }
    auto primes = factor_prime(Integer(P.p), *K.quad);
    for (const auto& q : primes)
        if (q == P) return;
    throw validation_error("prime data does not belong to Q(sqrt(" + std::to_string(K.quad->d) +
                           "))");
}

Integer split_embedding_root(const QuadField& K, const PrimeIdealData& P, long precision) {
    if (P.kind != SplittingKind::split)
        throw std::logic_error("embedding root only exists at split primes");
    const Integer p(P.p);
    if (!K.half_integral) {
        // omega = sqrt(d), root of X^2 - d starting at the stored t
        return newton_quadratic_root(p, Integer(0), Integer(-K.d), P.split_root, precision);
    }
    // omega = (1+sqrt(d))/2, root of X^2 - X - (d-1)/4; the stored datum is
    // the omega-root itself at p = 2 and the sqrt(d)-root t at odd p
    Integer r0;
    if (P.p == 2)
        r0 = P.split_root;
    else
        r0 = (P.split_root + 1) * mod_inverse(Integer(2), p) % p;
    return newton_quadratic_root(p, Integer(-1), -(Integer(K.d) - 1) / 4, r0, precision);
}

Val vp_quadratic_unchecked(const QuadElement& x, const PrimeIdealData& P) {
    if (x.is_zero()) return Val::infinity();

    const Integer& p = P.p;
    Rational n = norm_quad(x);
    long vnorm = vp_integer(n.get_num(), p) - vp_integer(n.get_den(), p);

    if (P.kind == SplittingKind::inert) {
        if (vnorm % 2 != 0) throw std::logic_error("odd norm valuation at an inert prime");
        return Val(vnorm / 2);
    }
    if (P.kind == SplittingKind::ramified) return Val(vnorm);

    // split: v_P(x) = v_p(u + v * root) in integral-basis coordinates, with
    // the Hensel-lifted embedding root, at adaptive precision
    auto [u, v] = omega_coordinates(x);
    long shift = 0;
    {
        auto vp_q = [&p](const Rational& q) {
            return vp_integer(q.get_num(), p) - vp_integer(q.get_den(), p);
        };
        long vu = (u == 0) ? 0 : vp_q(u);
        long vv = (v == 0) ? 0 : vp_q(v);
        long m = std::min({vu, vv, 0L});
        if (m < 0) {
            shift = -m;  // v_P(p) = 1 at a split prime
            Rational scale = pow_rational(Rational(P.p), shift);
            u *= scale;
            v *= scale;
            vnorm += 2 * shift;
        }
    }
    if (u == 0 && v == 0) throw std::logic_error("scaled split coordinates vanished");

    long vv_coeff =
        (v == 0) ? vnorm + 1 : vp_integer(v.get_num(), p) - vp_integer(v.get_den(), p);
    long N = vnorm + vv_coeff + 2;
    for (int round = 0;; ++round) {
        Integer pk;
        mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(N));
        Integer root = split_embedding_root(x.field, P, N);
        Integer r = (residue_mod(u, pk) + residue_mod(v, pk) * root) % pk;
        if (r != 0) {
            long val = vp_integer(r, p);
            if (val < N) return Val(val - shift);
        }
        if (round > 64) throw std::logic_error("split valuation failed to resolve");
        N *= 2;
    }
}

Val vp_quadratic(const QuadElement& x, const PrimeIdealData& P) {
    require_prime_of_field(NumberField::quadratic(x.field), P);
    return vp_quadratic_unchecked(x, P);
}

Val valuation_at(const Rational& x, const PrimeIdealData& P) {
    if (P.kind != SplittingKind::rational)
        throw validation_error("quadratic prime applied to a rational");
    return vp_rational(x, Integer(P.p));
}

Val valuation_at(const QuadElement& x, const PrimeIdealData& P) { return vp_quadratic(x, P); }

namespace {

template <typename Elem>
Rational abs_finite_impl(const Elem& x, const PrimeIdealData& P) {
    Val v = valuation_at(x, P);
    if (v.is_infinity())
        throw validation_error("absolute value of zero undefined at exact contract");
    Rational q = P.residue_norm();
    return pow_rational(q, -v.value());
}

}  // namespace

Rational abs_at_finite_place(const Rational& x, const PrimeIdealData& P) {
    return abs_finite_impl(x, P);
}

Rational abs_at_finite_place(const QuadElement& x, const PrimeIdealData& P) {
    return abs_finite_impl(x, P);
}

std::vector<std::pair<PrimeIdealData, long>> principal_factorization(const Rational& x) {
    if (x == 0) throw validation_error("factorization of zero");
    std::vector<std::pair<PrimeIdealData, long>> out;
    std::map<Integer, long> expo;
    for (const auto& [p, e] : factorize(x.get_num())) expo[p] += e;
    for (const auto& [p, e] : factorize(x.get_den())) expo[p] -= e;
    for (const auto& [p, e] : expo) {
        if (e == 0) continue;
        out.push_back({PrimeIdealData{p, 1, 1, SplittingKind::rational, 0}, e});
    }
    return out;
}

std::vector<std::pair<PrimeIdealData, long>> principal_factorization(const QuadElement& x) {
    if (x.is_zero()) throw validation_error("factorization of zero");
    std::vector<std::pair<PrimeIdealData, long>> out;
    Rational n = norm_quad(x);
    std::map<Integer, long> support;
    for (const auto& [p, e] : factorize(n.get_num())) support[p] += e;
    for (const auto& [p, e] : factorize(n.get_den())) support[p] += e;
    for (const auto& [p, _] : support) {
        for (const auto& P : factor_prime(p, x.field)) {
            Val v = vp_quadratic_unchecked(x, P);
            if (!v.is_infinity() && v.value() != 0) out.push_back({P, v.value()});
        }
    }
    return out;
}

Rational product_formula_check(const Rational& x) {
    if (x == 0) throw validation_error("product formula undefined at zero");
    Rational acc = abs(x);  // |N(x)| = |x| over Q
    for (const auto& [P, v] : principal_factorization(x))
        acc *= pow_rational(P.residue_norm(), -v);
    return acc;
}

Rational product_formula_check(const QuadElement& x) {
    if (x.is_zero()) throw validation_error("product formula undefined at zero");
    Rational acc = abs(norm_quad(x));
    for (const auto& [P, v] : principal_factorization(x))
        acc *= pow_rational(P.residue_norm(), -v);
    return acc;
}

std::vector<Place> archimedean_places(const NumberField& K) {
    std::vector<Place> out;
    if (K.is_rational()) {
        out.push_back(Place::arch(1, 1));
    } else if (K.quad->d > 0) {
        out.push_back(Place::arch(1, 1));
        out.push_back(Place::arch(2, 1));
    } else {
        out.push_back(Place::arch(1, 2));
    }
    return out;
}

std::vector<Place> canonical_places(const NumberField& K, long prime_bound) {
    if (prime_bound < 2) throw validation_error("prime bound must be >= 2");
    std::vector<Place> out = archimedean_places(K);
    for (long p = 2; p <= prime_bound; ++p) {
        if (!is_prime(Integer(p))) continue;
        if (K.is_rational()) {
            out.push_back(Place::finite(PrimeIdealData{Integer(p), 1, 1, SplittingKind::rational, 0}));
        } else {
            for (const auto& P : factor_prime(Integer(p), *K.quad)) out.push_back(Place::finite(P));
        }
    }
    return out;
}

Rational uniformizer_rational(const PrimeIdealData& P) { return Rational(P.p); }

QuadElement uniformizer_quadratic(const QuadField& K, const PrimeIdealData& P) {
    require_prime_of_field(NumberField::quadratic(K), P);
    switch (P.kind) {
        case SplittingKind::rational:
            throw validation_error("rational prime data in a quadratic field");
        case SplittingKind::inert:
            return quad_from_rational(K, Rational(P.p));
        case SplittingKind::ramified: {
            QuadElement cand = make_quad(K, Rational(0), Rational(1));  // sqrt(d)
            if (P.p == 2 && mod_pos(K.d, 2) == 1)
                cand = make_quad(K, Rational(1), Rational(1));  // 1 + sqrt(d), d = 3 mod 4
            if (vp_quadratic(cand, P) != Val(1))
                throw std::logic_error("ramified uniformizer candidate failed");
            return cand;
        }
        case SplittingKind::split: {
            // root - generator has valuation >= 1 here and 0 at the conjugate;
            // bump the root by p if the valuation overshoots
            for (long bump : {0L, 1L}) {
                Rational shifted(P.split_root + P.p * bump);
                QuadElement cand = P.p == 2 ? from_omega_coordinates(K, shifted, Rational(-1))
                                            : make_quad(K, shifted, Rational(-1));
                if (vp_quadratic(cand, P) == Val(1)) return cand;
            }
            throw std::logic_error("split uniformizer candidate failed");
        }
    }
    throw std::logic_error("unreachable");
}

std::string format_place(const NumberField& K, const Place& v) {
    if (v.archimedean) {
        if (K.is_rational() || K.quad->d < 0) return "oo";
        return "oo" + std::to_string(v.arch_index);
    }
    std::string base = v.prime.p.get_str();
    if (K.is_rational()) return base;
    switch (v.prime.kind) {
        case SplittingKind::inert:
            return base + ":inert";
        case SplittingKind::ramified:
            return base + ":ram";
        case SplittingKind::split: {
            auto pair = factor_prime(Integer(v.prime.p), *K.quad);
            return base + (v.prime == pair[0] ? ":split+" : ":split-");
        }
        case SplittingKind::rational:
            break;
    }
    throw validation_error("rational place tag in a quadratic field");
}

Place parse_place(const NumberField& K, const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw validation_error("empty place token");
    if (s.rfind("oo", 0) == 0) {
        std::string idx = s.substr(2);
        if (K.is_rational() || K.quad->d < 0) {
            if (!idx.empty()) throw validation_error("field has a single archimedean place");
            return archimedean_places(K)[0];
        }
        if (idx != "1" && idx != "2")
            throw validation_error("real quadratic places are oo1 and oo2");
        return Place::arch(idx == "1" ? 1 : 2, 1);
    }
    auto colon = s.find(':');
    std::string pstr = colon == std::string::npos ? s : s.substr(0, colon);
    if (pstr.empty() || pstr.find_first_not_of("0123456789") != std::string::npos)
        throw validation_error("malformed place: '" + text + "'");
    Integer p(pstr);
    require_prime(p);
    if (K.is_rational()) {
        if (colon != std::string::npos)
            throw validation_error("places of Q carry no splitting tag");
        return Place::finite(PrimeIdealData{p, 1, 1, SplittingKind::rational, 0});
    }
    if (colon == std::string::npos)
        throw validation_error("quadratic place needs a tag: '" + text + "'");
    std::string tag = s.substr(colon + 1);
    auto primes = factor_prime(p, *K.quad);
    if (tag == "inert" || tag == "ram") {
        auto want = tag == "inert" ? SplittingKind::inert : SplittingKind::ramified;
        if (primes.size() != 1 || primes[0].kind != want)
            throw validation_error("prime " + p.get_str() + " is not " + tag + " in this field");
        return Place::finite(primes[0]);
    }
    if (tag == "split+" || tag == "split-") {
        if (primes.size() != 2)
            throw validation_error("prime " + p.get_str() + " does not split in this field");
        return Place::finite(tag == "split+" ? primes[0] : primes[1]);
    }
    throw validation_error("unknown place tag: '" + tag + "'");
}

}  // namespace adelic
