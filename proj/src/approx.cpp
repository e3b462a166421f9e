#include "adelic/approx.hpp"

#include <algorithm>

namespace adelic {

namespace {

constexpr int kDoublingBudget = 64;

// sign of phi_v(x) - 1, exact at every kind of place
int cmp_phi_one(const FieldElement& x, const Place& v) {
    if (v.archimedean) return fe_cmp_abs_arch(x, v, Rational(1));
    Val val = fe_valuation(x, v.prime);
    if (val.is_infinity()) return -1;
    long vv = val.value();
    return vv < 0 ? 1 : (vv == 0 ? 0 : -1);
}

// sign of phi_v(x) - eps
int cmp_phi(const FieldElement& x, const Place& v, const Rational& eps) {
    if (v.archimedean) return fe_cmp_abs_arch(x, v, eps);
    if (fe_is_zero(x)) return eps > 0 ? -1 : (eps == 0 ? 0 : 1);
    return cmp(fe_abs_finite(x, v.prime), eps);
}

// a separating element for v1 against every place of `others`, built by the
// inductive construction of the approximation theorem
FieldElement strong_separator(const NumberField& K, const Place& v1,
                              const std::vector<Place>& others) {
    if (others.empty()) throw std::logic_error("strong_separator needs at least one other place");
    FieldElement y = separating_element(K, v1, others[0]);
    for (size_t s = 1; s < others.size(); ++s) {
        const Place& vs = others[s];
        auto small_on_prefix = [&](const FieldElement& cand) {
            if (cmp_phi_one(cand, v1) <= 0) return false;
            for (size_t j = 0; j <= s; ++j)
                if (cmp_phi_one(cand, others[j]) >= 0) return false;
            return true;
        };
        int c = cmp_phi_one(y, vs);
        if (c < 0) continue;
        FieldElement z = separating_element(K, v1, vs);
        bool found = false;
        long m = 1;
        for (int round = 0; round < kDoublingBudget && !found; ++round) {
            FieldElement cand;
            bool usable = true;
            if (c == 0) {
                // phi_s(y) = 1: y^m * z eventually works
                cand = fe_mul(fe_pow(y, m), z);
            } else {
                // phi_s(y) > 1: z_m(y) * z, with z_m = y^m/(1+y^m)
                FieldElement ym = fe_pow(y, m);
                FieldElement denom = fe_add(one_of(K), ym);
                usable = !fe_is_zero(denom);
                if (usable) cand = fe_mul(fe_div(ym, denom), z);
            }
            if (usable && small_on_prefix(cand)) {
                y = cand;
                found = true;
            }
            if (m > (1L << 40)) throw budget_error("budget exceeded while separating places");
            m *= 2;
        }
        if (!found) throw budget_error("budget exceeded while separating places");
    }
    return y;
}

// rational strictly between two archimedean values phi_v(small) < phi_v(large)
Rational rational_between(const FieldElement& small, const FieldElement& large, const Place& v) {
    for (long bits = 8; bits <= 1024; bits *= 2) {
        auto [slo, shi] = fe_abs_arch_bounds(small, v, bits);
        auto [llo, lhi] = fe_abs_arch_bounds(large, v, bits);
        if (shi < llo) {
            Rational mid = (shi + llo) / 2;
            // exactness guard: the interval midpoint must separate strictly
            if (fe_cmp_abs_arch(small, v, mid) < 0 && fe_cmp_abs_arch(large, v, mid) > 0)
                return mid;
        }
    }
    throw budget_error("failed to separate archimedean values");
}

FieldElement weak_approximation_general(const NumberField& K,
                                        const std::vector<ApproxTarget>& targets,
                                        const Rational& eps);

// CRT fast path over Q; archimedean target optional
Rational weak_approximation_crt(const std::vector<ApproxTarget>& targets, const Rational& eps) {
    Integer denom = 1;
    std::vector<std::pair<Integer, long>> finite;  // (p, congruence exponent)
    bool has_arch = false;
    Rational arch_target(0);

    for (const auto& t : targets) {
        if (t.place.archimedean) {
            has_arch = true;
            arch_target = std::get<Rational>(t.value);
            continue;
        }
        const Integer& p = t.place.prime.p;
        // smallest n with p^-n < eps; at least 1 so every modulus is proper
        long n = 1;
        Rational pw(p);
        while (pw * eps <= 1) {
            pw *= Rational(p);
            ++n;
        }
        const Rational& target = std::get<Rational>(t.value);
        long dv = 0;
        if (target != 0) {
            long v = vp_rational(target, p).value();
            if (v < 0) dv = -v;
        }
        finite.push_back({p, n + dv});
        Integer pd;
        mpz_pow_ui(pd.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(dv));
        denom *= pd;
    }

    if (finite.empty()) return arch_target;  // single archimedean target met exactly

    // X = target_i * denom (mod p^(n+d)) at each finite place; x = X / denom
    std::vector<std::pair<Integer, Integer>> congruences;
    size_t idx = 0;
    for (const auto& t : targets) {
        if (t.place.archimedean) continue;
        const auto& [p, prec] = finite[idx++];
        Integer pk;
        mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(prec));
        Rational scaled = std::get<Rational>(t.value) * Rational(denom);
        // p-integral by construction of denom
        Integer num = scaled.get_num() % pk;
        Integer r = num * mod_inverse(scaled.get_den() % pk, pk) % pk;
        if (r < 0) r += pk;
        congruences.push_back({r, pk});
    }
    auto [X0, M] = crt(congruences);
    if (!has_arch) {
        // smallest magnitude representative keeps outputs tame
        Integer Xs = X0;
        if (Xs * 2 > M) Xs -= M;
        return make_rational(Xs, denom);
    }

    // archimedean adjustment: step by M/(denom*Q) with Q a power of a prime
    // coprime to every listed p, fine enough to land within eps
    Integer q = 2;
    auto divides_some = [&](const Integer& c) {
        for (const auto& [p, _] : finite)
            if (p == c) return true;
        return false;
    };
    while (divides_some(q)) mpz_nextprime(q.get_mpz_t(), q.get_mpz_t());
    Rational step = make_rational(M, denom);
    Integer Q = 1;
    while (step / Rational(Q) >= eps) Q *= q;
    // x = (X0 + j*M/Q) / denom with j chosen nearest the archimedean target
    Rational base = make_rational(X0, denom);
    Rational fine = step / Rational(Q);
    Rational j_exact = (arch_target - base) / fine;
    Integer j = j_exact.get_num() / j_exact.get_den();  // truncation, then scan
    for (long delta : {0L, 1L, -1L, 2L, -2L}) {
        Rational cand = base + Rational(j + delta) * fine;
        if (abs(cand - arch_target) < eps) return cand;
    }
    throw std::logic_error("archimedean adjustment failed to land");
}

FieldElement weak_approximation_general(const NumberField& K,
                                        const std::vector<ApproxTarget>& targets,
                                        const Rational& eps) {
    const size_t s = targets.size();
    if (s == 1) {
        // a single place is approximated by the target itself
        return targets[0].value;
    }
    std::vector<FieldElement> separators;
    separators.reserve(s);
    for (size_t i = 0; i < s; ++i) {
        std::vector<Place> others;
        for (size_t j = 0; j < s; ++j)
            if (j != i) others.push_back(targets[j].place);
        separators.push_back(strong_separator(K, targets[i].place, others));
    }

    long l = 1;
    for (int round = 0; round < kDoublingBudget; ++round, l *= 2) {
        if (l > (1L << 40)) throw budget_error("budget exceeded in weak approximation");
        FieldElement x = element_from_rational(K, Rational(0));
        bool pole = false;
        for (size_t i = 0; i < s; ++i) {
            FieldElement yl = fe_pow(separators[i], l);
            FieldElement denom = fe_add(one_of(K), yl);
            if (fe_is_zero(denom)) {
                pole = true;
                break;
            }
            x = fe_add(x, fe_mul(fe_div(yl, denom), targets[i].value));
        }
        if (pole) continue;
        if (weak_approximation_check(targets, eps, x)) return x;
    }
    throw budget_error("budget exceeded in weak approximation");
}

}  // namespace

FieldElement separating_element(const NumberField& K, const Place& v1, const Place& v2) {
    if (v1 == v2) throw validation_error("places must be distinct");

    if (!v1.archimedean && !v2.archimedean) {
        const PrimeIdealData& P = v1.prime;
        const PrimeIdealData& Q = v2.prime;
        if (K.is_rational()) {
            // q/p: phi_p = p > 1, phi_q = 1/q < 1
            return FieldElement{make_rational(Q.p, P.p)};
        }
        QuadElement pi_p = uniformizer_quadratic(*K.quad, P);
        QuadElement pi_q = uniformizer_quadratic(*K.quad, Q);
        // A uniformizer representative can pick up valuation at the other
        // prime (its norm is divisible by other rational primes). Dividing by
        // a power of the other residue characteristic clears that without
        // touching the valuation at its own place, except for conjugate split
        // pairs, where representatives are already clean at the conjugate.
        if (P.p != Q.p) {
            Val s = vp_quadratic(pi_q, P);
            if (s > Val(0)) {
                long k = (s.value() + P.e - 1) / P.e;
                pi_q = pi_q / quad_pow(quad_from_rational(*K.quad, Rational(P.p)), k);
            }
            Val t = vp_quadratic(pi_p, Q);
            if (t > Val(0)) {
                long k = (t.value() + Q.e - 1) / Q.e;
                pi_p = pi_p / quad_pow(quad_from_rational(*K.quad, Rational(Q.p)), k);
            }
        } else if (vp_quadratic(pi_q, P) != Val(0) || vp_quadratic(pi_p, Q) != Val(0)) {
            throw std::logic_error("split uniformizers not conjugate-clean");
        }
        // now v_P(pi_q) <= 0, v_Q(pi_q) = 1, v_P(pi_p) = 1, v_Q(pi_p) <= 0
        QuadElement cand = pi_q / pi_p;
        if (vp_quadratic(cand, P) >= Val(0) || vp_quadratic(cand, Q) <= Val(0))
            throw std::logic_error("finite-place separation failed");
        return FieldElement{cand};
    }

    if (v1.archimedean && !v2.archimedean) {
        // an integer in the prime: large at infinity, small at P
        return element_from_rational(K, Rational(v2.prime.p));
    }
    if (!v1.archimedean && v2.archimedean) {
        return element_from_rational(K, make_rational(Integer(1), v1.prime.p));
    }

    // two archimedean places: only a real quadratic field has two
    if (K.is_rational() || K.quad->d < 0)
        throw validation_error("field has a single archimedean place");
    QuadElement x0 = quad_from_rational(*K.quad, Rational(1)) + quad_omega(*K.quad);
    FieldElement cand{x0};
    int c = fe_cmp_abs_arch_pair(cand, FieldElement{quad_conjugate(x0)}, v1);
    if (c == 0) throw std::logic_error("embeddings of 1 + omega coincide");
    if (c < 0) cand = FieldElement{quad_conjugate(x0)};
    // now phi_{v1}(cand) > phi_{v2}(cand); scale by a rational strictly between
    FieldElement small = FieldElement{quad_conjugate(std::get<QuadElement>(cand))};
    Rational r = rational_between(small, cand, v1);
    return fe_mul(cand, element_from_rational(K, Rational(1) / r));
}

FieldElement zm_sequence(const FieldElement& x, unsigned long m) {
    FieldElement xm = fe_pow(x, static_cast<long>(m));
    FieldElement denom = fe_add(one_of(field_of(x)), xm);
    if (fe_is_zero(denom)) throw validation_error("pole in z_m; perturb m");
    return fe_div(xm, denom);
}

bool weak_approximation_check(const std::vector<ApproxTarget>& targets, const Rational& eps,
                              const FieldElement& x) {
    for (const auto& t : targets) {
        FieldElement diff = fe_sub(x, t.value);
        if (cmp_phi(diff, t.place, eps) >= 0) return false;
    }
    return true;
}

FieldElement weak_approximation(const NumberField& K, const std::vector<ApproxTarget>& targets,
                                const Rational& eps) {
    if (eps <= 0) throw validation_error("eps must be positive");
    if (targets.empty()) throw validation_error("no targets given");
    for (size_t i = 0; i < targets.size(); ++i) {
        if (field_of(targets[i].value) != K)
            throw validation_error("target element not in the working field");
        for (size_t j = i + 1; j < targets.size(); ++j)
            if (targets[i].place == targets[j].place)
                throw validation_error("places must be pairwise distinct");
    }

    // over Q the CRT fast path always applies (a single archimedean place)
    FieldElement result = K.is_rational() ? FieldElement{weak_approximation_crt(targets, eps)}
                                          : weak_approximation_general(K, targets, eps);

    if (!weak_approximation_check(targets, eps, result))
        throw std::logic_error("constructed element failed its certificate");
    return result;
}

}  // namespace adelic
