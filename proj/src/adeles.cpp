#include "adelic/adeles.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace adelic {

namespace {

void require_arch_cover(const NumberField& K, const std::vector<Place>& S) {
    for (const Place& v : archimedean_places(K)) {
        bool found = false;
        for (const Place& w : S)
            if (w == v) found = true;
        if (!found) throw validation_error("S must contain every archimedean place");
    }
}

// Valuation of the component the idele carries at a finite place.
Val component_valuation(const Idele& x, const Place& v) {
    auto it = x.finite_overrides.find(v);
    const FieldElement& comp = it != x.finite_overrides.end() ? it->second : x.def;
    return fe_valuation(comp, v.prime);
}

// All finite places where any component could have nonzero valuation:
// override support plus the default's support.
std::vector<Place> finite_support(const Idele& x) {
    std::vector<Place> out;
    for (const auto& [P, e] : fe_principal_factorization(x.def)) out.push_back(Place::finite(P));
    for (const auto& [v, comp] : x.finite_overrides) {
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

long ceil_div(long a, long b) { return a / b + (a % b != 0 && (a > 0) == (b > 0) ? 1 : 0); }

// sqrt of an exact square rational, if it is one
std::optional<Rational> exact_sqrt(const Rational& x) {
    if (x < 0) return std::nullopt;
    Integer n = x.get_num(), d = x.get_den();
    Integer rn = sqrt(n), rd = sqrt(d);
    if (rn * rn != n || rd * rd != d) return std::nullopt;
    return make_rational(rn, rd);
}

// phi_v(x) at an archimedean place when that value is an exact rational
// (always over Q; over quadratic fields for rational elements, and for
// imaginary elements of square norm such as 3+4i)
Rational exact_arch_value(const FieldElement& x, const Place& v) {
    if (std::holds_alternative<Rational>(x)) return abs(std::get<Rational>(x));
    const QuadElement& q = std::get<QuadElement>(x);
    if (q.is_rational()) return abs(q.a);
    if (q.field.d < 0) {
        Rational m2 = q.a * q.a + Rational(-q.field.d) * q.b * q.b;
        if (auto r = exact_sqrt(m2)) return *r;
    }
    throw validation_error("archimedean component value is not rational: " + format_quad(q));
    (void)v;
}

}  // namespace

bool QuadForm::is_reduced() const {
    if (a <= 0) return false;
    Integer ab = abs(b);
    if (ab > a || a > c) return false;
    if ((ab == a || a == c) && b < 0) return false;
    return true;
}

Idele make_idele(const NumberField& K, const FieldElement& def) {
    if (field_of(def) != K) throw validation_error("default not in the working field");
    if (fe_is_zero(def)) throw validation_error("idele default must be nonzero");
    return Idele{K, def, {}, {}};
}

Idele principal_idele(const FieldElement& alpha) {
    if (fe_is_zero(alpha)) throw validation_error("principal idele of zero");
    return make_idele(field_of(alpha), alpha);
}

void idele_set_finite(Idele& x, const Place& v, const FieldElement& component) {
    if (v.archimedean) throw validation_error("finite override at an archimedean place");
    require_prime_of_field(x.field, v.prime);
    if (field_of(component) != x.field) throw validation_error("component not in the field");
    if (fe_is_zero(component)) throw validation_error("idele component must be nonzero");
    x.finite_overrides[v] = component;
}

void idele_set_arch(Idele& x, const Place& v, const Rational& value) {
    if (!v.archimedean) throw validation_error("archimedean override at a finite place");
    auto arch = archimedean_places(x.field);
    if (v.arch_index < 1 || v.arch_index > static_cast<int>(arch.size()))
        throw validation_error("archimedean index out of range");
    if (value <= 0) throw validation_error("archimedean component must be positive");
    x.arch_overrides[v.arch_index] = value;
}

FieldElement idele_finite_component(const Idele& x, const Place& v) {
    auto it = x.finite_overrides.find(v);
    return it != x.finite_overrides.end() ? it->second : x.def;
}

Adele make_adele(const NumberField& K, const FieldElement& def) {
    if (field_of(def) != K) throw validation_error("default not in the working field");
    return Adele{K, def, {}, {}};
}

Idele idele_mul(const Idele& x, const Idele& y) {
    if (x.field != y.field) throw validation_error("ideles over different fields");
    Idele out = make_idele(x.field, fe_mul(x.def, y.def));
    std::vector<Place> places;
    for (const auto& [v, _] : x.finite_overrides) places.push_back(v);
    for (const auto& [v, _] : y.finite_overrides)
        if (std::find(places.begin(), places.end(), v) == places.end()) places.push_back(v);
    for (const Place& v : places)
        out.finite_overrides[v] = fe_mul(idele_finite_component(x, v), idele_finite_component(y, v));

    auto arch = archimedean_places(x.field);
    std::vector<int> arch_idx;
    for (const auto& [i, _] : x.arch_overrides) arch_idx.push_back(i);
    for (const auto& [i, _] : y.arch_overrides)
        if (std::find(arch_idx.begin(), arch_idx.end(), i) == arch_idx.end()) arch_idx.push_back(i);
    for (int i : arch_idx) {
        auto phi = [&](const Idele& z) -> Rational {
            auto it = z.arch_overrides.find(i);
            if (it != z.arch_overrides.end()) return it->second;
            return exact_arch_value(z.def, arch[i - 1]);
        };
        out.arch_overrides[i] = phi(x) * phi(y);
    }
    return out;
}

Rational content(const Idele& x) {
    // finite block: overrides contribute phi(component)/phi(default)
    Rational acc(1);
    for (const auto& [v, comp] : x.finite_overrides) {
        Val vc = fe_valuation(comp, v.prime);
        Val vd = fe_valuation(x.def, v.prime);
        acc *= pow_rational(v.prime.residue_norm(), -(vc.value() - vd.value()));
    }
    // default's full finite block equals 1/|N(default)| by the norm identity;
    // combined with the archimedean block |N(default)| the default cancels,
    // so only deviations from the default remain
    auto arch = archimedean_places(x.field);
    size_t overridden = x.arch_overrides.size();
    if (overridden == 0) return acc;
    if (overridden == arch.size()) {
        // replace the whole archimedean block: divide out |N(default)| and
        // multiply the overrides
        Rational norm_abs = abs(fe_norm(x.def));
        Rational arch_block(1);
        for (const auto& [i, val] : x.arch_overrides)
            arch_block *= pow_rational(val, arch[i - 1].multiplicity);
        return acc * arch_block / norm_abs;
    }
    // partial archimedean override: exact only when the default is rational-
    // valued at each archimedean place
    Rational def_abs;
    if (std::holds_alternative<Rational>(x.def))
        def_abs = abs(std::get<Rational>(x.def));
    else if (std::get<QuadElement>(x.def).is_rational())
        def_abs = abs(std::get<QuadElement>(x.def).a);
    else
        throw validation_error(
            "content is irrational: partial archimedean overrides over an irrational default");
    for (const auto& [i, val] : x.arch_overrides) {
        int n_v = arch[i - 1].multiplicity;
        acc *= pow_rational(val, n_v) / pow_rational(def_abs, n_v);
    }
    return acc;
}

bool is_content_one(const Idele& x) { return content(x) == 1; }

FractionalIdeal to_fractional_ideal(const Idele& x) {
    FractionalIdeal out;
    out.field = x.field;
    for (const Place& v : finite_support(x)) {
        Val val = component_valuation(x, v);
        if (val.is_infinity()) throw std::logic_error("zero component in an idele");
        if (val.value() != 0) out.exponents[v.prime] = val.value();
    }
    return out;
}

FractionalIdeal make_fractional_ideal(const NumberField& K,
                                      const std::map<PrimeIdealData, long>& exponents) {
    FractionalIdeal out;
    out.field = K;
    for (const auto& [P, e] : exponents) {
        require_prime_of_field(K, P);
        if (e != 0) out.exponents[P] = e;
    }
    return out;
}

FractionalIdeal ideal_mul(const FractionalIdeal& A, const FractionalIdeal& B) {
    if (A.field != B.field) throw validation_error("ideals over different fields");
    FractionalIdeal out;
    out.field = A.field;
    out.exponents = A.exponents;
    for (const auto& [P, e] : B.exponents) {
        long& slot = out.exponents[P];
        slot += e;
        if (slot == 0) out.exponents.erase(P);
    }
    return out;
}

Idele idele_for_ideal(const FractionalIdeal& A) {
    Idele out = make_idele(A.field, one_of(A.field));
    for (const auto& [P, e] : A.exponents) {
        FieldElement pi = A.field.is_rational()
                              ? FieldElement{uniformizer_rational(P)}
                              : FieldElement{uniformizer_quadratic(*A.field.quad, P)};
        out.finite_overrides[Place::finite(P)] = fe_pow(pi, e);
    }
    return out;
}

bool idele_extensionally_equal(const Idele& x, const Idele& y) {
    if (x.field != y.field) return false;
    std::vector<Place> support = finite_support(x);
    for (const Place& v : finite_support(y))
        if (std::find(support.begin(), support.end(), v) == support.end()) support.push_back(v);
    for (const Place& v : support)
        if (component_valuation(x, v) != component_valuation(y, v)) return false;

    auto arch = archimedean_places(x.field);
    for (const Place& v : arch) {
        auto xo = x.arch_overrides.find(v.arch_index);
        auto yo = y.arch_overrides.find(v.arch_index);
        bool xr = xo != x.arch_overrides.end();
        bool yr = yo != y.arch_overrides.end();
        if (xr && yr) {
            if (xo->second != yo->second) return false;
        } else if (xr != yr) {
            // one side carries the default's archimedean value
            const Idele& rational_side = xr ? x : y;
            const Idele& default_side = xr ? y : x;
            const Rational& val = xr ? xo->second : yo->second;
            (void)rational_side;
            if (fe_cmp_abs_arch(default_side.def, v, val) != 0) return false;
        } else {
            if (fe_cmp_abs_arch_pair(x.def, y.def, v) != 0) return false;
        }
    }
    return true;
}

bool is_in_I_S(const Idele& x, const std::vector<Place>& S) {
    require_arch_cover(x.field, S);
    for (const Place& v : finite_support(x)) {
        if (std::find(S.begin(), S.end(), v) != S.end()) continue;
        Val val = component_valuation(x, v);
        if (val != Val(0)) return false;
    }
    return true;
}

bool is_S_unit(const FieldElement& alpha, const std::vector<Place>& S) {
    if (fe_is_zero(alpha)) return false;
    return is_in_I_S(principal_idele(alpha), S);
}

namespace {

// A finite constraint v_P(alpha) >= c, compiled for candidates alpha given in
// cleared form: alpha = n/M (rational) or alpha = (U + V*omega)/M. Everything
// reduces to divisibility of integers by p-powers, with the split case going
// through the lifted residue root.
struct CompiledConstraint {
    PrimeIdealData P;
    long c_scaled = 0;  // c + v_P(M); >= 0 by the choice of M
    Integer pc;         // p^c_scaled (or p^(2c) for inert)
    Integer root;       // split: embedding root of omega mod pc

    bool check_int(const Integer& n) const {  // over Q
        if (c_scaled == 0) return true;
        return n % pc == 0;
    }
    bool check_quad(const QuadField& K, const Integer& U, const Integer& V) const {
        if (c_scaled == 0) return true;
        switch (P.kind) {
            case SplittingKind::split: {
                Integer r = (U + V * root) % pc;
                return r == 0;
            }
            case SplittingKind::inert:
            case SplittingKind::ramified: {
                // v_P = v_p(N)/f' with N scaled; inert needs p^(2c) | N,
                // ramified needs p^c | N
                Rational u = Rational(U), v = Rational(V);
                QuadElement alpha = from_omega_coordinates(K, u, v);
                Rational n = norm_quad(alpha);
                Integer num = n.get_num();  // integral since U, V are integers
                return num % pc == 0;
            }
            default:
                throw std::logic_error("rational constraint in a quadratic enumeration");
        }
    }
};

}  // namespace

unsigned long count_L(const Idele& x) {
    const NumberField& K = x.field;
    if (!K.is_rational() && K.quad->d > 0)
        throw validation_error("unbounded unit orbit; unsupported");

    // finite constraints: v_P(alpha) >= c_P over the support
    std::vector<std::pair<PrimeIdealData, long>> constraints;
    for (const Place& v : finite_support(x)) {
        Val val = component_valuation(x, v);
        constraints.push_back({v.prime, val.value()});
    }

    // archimedean bound: |alpha| <= B, squared for quadratic fields
    Rational bound;  // B (rational field) or B^2 (quadratic)
    {
        auto it = x.arch_overrides.find(1);
        if (it != x.arch_overrides.end()) {
            bound = K.is_rational() ? it->second : it->second * it->second;
        } else if (K.is_rational()) {
            bound = abs(std::get<Rational>(x.def));
        } else {
            bound = abs(norm_quad(std::get<QuadElement>(x.def)));  // |sigma|^2 = |N|
        }
    }

    // denominator clearing: every admissible alpha lies in (1/M) O_k
    Integer M = 1;
    std::map<Integer, long> denom_exp;  // p -> power of p in M
    for (const auto& [P, c] : constraints) {
        if (c >= 0) continue;
        long need = ceil_div(-c, P.e);
        long& slot = denom_exp[P.p];
        slot = std::max(slot, need);
    }
    for (const auto& [p, k] : denom_exp)
        for (long i = 0; i < k; ++i) M *= p;

    // compile the constraints against the cleared coordinates
    std::vector<CompiledConstraint> compiled;
    for (const auto& [P, c] : constraints) {
        long vpM = denom_exp.count(P.p) ? denom_exp.at(P.p) : 0;
        CompiledConstraint cc;
        cc.P = P;
        cc.c_scaled = c + P.e * vpM;
        if (cc.c_scaled < 0) throw std::logic_error("denominator clearing missed a constraint");
        if (cc.c_scaled == 0) {
            compiled.push_back(cc);
            continue;
        }
        long pow_exp = P.kind == SplittingKind::inert ? 2 * cc.c_scaled : cc.c_scaled;
        mpz_pow_ui(cc.pc.get_mpz_t(), P.p.get_mpz_t(), static_cast<unsigned long>(pow_exp));
        if (P.kind == SplittingKind::split)
            cc.root = split_embedding_root(*K.quad, P, cc.c_scaled) % cc.pc;
        compiled.push_back(cc);
    }

    unsigned long count = 0;
    const unsigned long kEnumBudget = 200000000UL;

    if (K.is_rational()) {
        // alpha = n / M with |alpha| <= B
        Rational nb = bound * Rational(M);
        Integer nmax = nb.get_num() / nb.get_den();
        if (Integer(2) * nmax > Integer(kEnumBudget))
            throw budget_error("enumeration budget exceeded");
        Rational MB = bound * Rational(M);
        for (Integer n = -nmax; n <= nmax; ++n) {
            if (n == 0) continue;
            if (Rational(abs(n)) > MB) continue;
            bool ok = true;
            for (const auto& cc : compiled)
                if (!cc.check_int(n)) {
                    ok = false;
                    break;
                }
            if (ok) ++count;
        }
        return count;
    }

    // imaginary quadratic: alpha = (U + V*omega)/M inside the norm circle
    const QuadField& Kq = *K.quad;
    long D = -Kq.d;  // positive
    Rational MB_sq = bound * Rational(M) * Rational(M);  // |U + V omega|^2 <= MB_sq
    // |U + V omega|^2 = (U + V/2)^2 + D V^2/4   (half-integral)
    //                 = U^2 + D V^2             (omega = sqrt(d))
    Rational vmax_sq = Kq.half_integral ? Rational(MB_sq * 4 / Rational(D))
                                        : Rational(MB_sq / Rational(D));
    Integer vmax = sqrt(vmax_sq.get_num() / vmax_sq.get_den()) + 1;
    Integer umax_i = sqrt(MB_sq.get_num() / MB_sq.get_den()) + 2;
    if ((2 * vmax + 1) * (2 * umax_i + 1) > Integer(kEnumBudget))
        throw budget_error("enumeration budget exceeded");
    for (Integer V = -vmax; V <= vmax; ++V) {
        for (Integer U = -umax_i; U <= umax_i; ++U) {
            if (U == 0 && V == 0) continue;
            // |U + V omega|^2 as an exact rational, times 4 to stay integral
            Integer four_norm;
            if (Kq.half_integral)
                four_norm = (2 * U + V) * (2 * U + V) + D * V * V;
            else
                four_norm = 4 * (U * U + D * V * V);
            if (Rational(four_norm) > 4 * MB_sq) continue;
            bool ok = true;
            for (const auto& cc : compiled)
                if (!cc.check_quad(Kq, U, V)) {
                    ok = false;
                    break;
                }
            if (ok) ++count;
        }
    }
    return count;
}

Rational ck_bound(const NumberField& K) {
    if (K.is_rational()) return Rational(1, 2);  // n = 1, basis {1}, c = 1
    const QuadField& Kq = *K.quad;
    // c bounds max_v (phi_v(1) + phi_v(omega)); round outward to quarters,
    // except where the modulus is an exact rational
    Rational c_bound(0);
    for (const Place& v : archimedean_places(K)) {
        QuadElement omega = quad_omega(Kq);
        Rational omega_abs;
        bool exact = false;
        if (Kq.d < 0) {
            Rational m2 = omega.a * omega.a + Rational(-Kq.d) * omega.b * omega.b;
            if (auto r = exact_sqrt(m2)) {
                omega_abs = *r;
                exact = true;
            }
        }
        if (!exact) {
            auto [lo, hi] = abs_embedding_bounds(omega, v.arch_index == 2, 16);
            omega_abs = hi;
        }
        Rational cv = Rational(1) + omega_abs;
        // ceil(4 cv)/4
        Integer num = cv.get_num() * 4, den = cv.get_den();
        Integer q = num / den;
        if (q * den < num) q += 1;
        Rational rounded = make_rational(q, Integer(4));
        c_bound = std::max(c_bound, rounded);
    }
    Rational two_c = 2 * c_bound;
    return Rational(1) / (two_c * two_c);
}

QuadForm reduce_form(QuadForm F) {
    if (F.discriminant() >= 0) throw validation_error("form discriminant must be negative");
    if (F.a <= 0) throw validation_error("form must be positive definite");
    for (int guard = 0; guard < 10000; ++guard) {
        // normalize: b into (-a, a]
        Integer twoa = 2 * F.a;
        Integer bn = F.b % twoa;
        if (bn > F.a) bn -= twoa;
        if (bn <= -F.a) bn += twoa;
        Integer k = (bn - F.b) / twoa;
        F.c = F.a * k * k + F.b * k + F.c;
        F.b = bn;
        if (F.a > F.c) {
            std::swap(F.a, F.c);
            F.b = -F.b;
            continue;
        }
        if ((F.a == F.c || -F.b == F.a) && F.b < 0) F.b = -F.b;
        if (F.is_reduced()) return F;
    }
    throw std::logic_error("form reduction failed to terminate");
}

std::vector<QuadForm> class_group_imag_quad(long d) {
    if (d >= 0) throw validation_error("d must be negative");
    QuadField K = make_quad_field(d);  // validates squarefree
    Integer D(K.discriminant);
    std::vector<QuadForm> out;
    // reduced forms satisfy |b| <= a <= sqrt(|D|/3)
    Integer amax = sqrt(abs(D) / 3) + 1;
    for (Integer a = 1; a <= amax; ++a) {
        for (Integer b = -a; b <= a; ++b) {
            Integer num = b * b - D;
            if (num % (4 * a) != 0) continue;
            Integer c = num / (4 * a);
            QuadForm F{a, b, c};
            if (F.is_reduced() && F.discriminant() == D) out.push_back(F);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

QuadForm principal_form(long discriminant) {
    Integer D(discriminant);
    if (D >= 0) throw validation_error("discriminant must be negative");
    if (((D % 4) + 4) % 4 == 0) return QuadForm{1, 0, -D / 4};
    return QuadForm{1, 1, (1 - D) / 4};
}

QuadForm form_of_prime_ideal(const QuadField& K, const PrimeIdealData& P) {
    if (K.d >= 0) throw validation_error("form certification needs an imaginary field");
    require_prime_of_field(NumberField::quadratic(K), P);
    if (P.kind == SplittingKind::inert)
        return reduce_form(principal_form(K.discriminant));  // (p) is principal
    Integer D(K.discriminant);
    const Integer& p = P.p;
    // the ideal [p, (-b + sqrt(D))/2] carries the form (p, b, (b^2-D)/4p);
    // pick the b whose basis element actually lies in P
    Integer parity = ((D % 2) + 2) % 2;
    for (Integer b = parity; b < 2 * p; b += 2) {
        Integer num = b * b - D;
        if (num % (4 * p) != 0) continue;
        // (-b + sqrt(D))/2 as a field element: sqrt(D) = 2 sqrt(d) or sqrt(d)
        QuadElement gen = K.half_integral
                              ? make_quad(K, make_rational(-b, Integer(2)), Rational(1, 2))
                              : make_quad(K, make_rational(-b, Integer(2)), Rational(1));
        Val v = vp_quadratic(gen, P);
        if (v.is_infinity() || v.value() < 1) continue;
        return reduce_form(QuadForm{p, b, num / (4 * p)});
    }
    throw std::logic_error("no form representative for the prime ideal");
}

QuadElement fundamental_unit_real_quad(long d) {
    QuadField K = make_quad_field(d);
    if (d <= 1) throw validation_error("d must be a positive squarefree integer > 1");

    // continued fraction of sqrt(d) by the integer recurrence; the convergent
    // at the period end solves p^2 - d q^2 = +-1
    Integer a0 = sqrt(Integer(d));
    Integer P = 0, Q = 1, a = a0;
    Integer p_prev = 1, p_cur = a0, q_prev = 0, q_cur = 1;
    Integer pell_x = 0, pell_y = 0;
    for (int steps = 0; steps < 100000; ++steps) {
        P = a * Q - P;
        Q = (d - P * P) / Q;
        a = (a0 + P) / Q;
        Integer p_next = a * p_cur + p_prev;
        Integer q_next = a * q_cur + q_prev;
        if (Q == 1) {
            pell_x = p_cur;
            pell_y = q_cur;
            break;
        }
        p_prev = p_cur;
        p_cur = p_next;
        q_prev = q_cur;
        q_cur = q_next;
    }
    if (pell_y == 0) throw std::logic_error("continued fraction of sqrt(d) did not close");

    if (!K.half_integral)
        return make_quad(K, Rational(pell_x), Rational(pell_y));

    // d = 1 (mod 4): the fundamental unit may be a half-integer solution of
    // x^2 - d y^2 = +-4 with smaller y; the +-1 solution (2x', 2y') bounds it
    Integer best_x = 2 * pell_x, best_y = 2 * pell_y;
    for (Integer y = 1; y <= 2 * pell_y; ++y) {
        Integer dy2 = Integer(d) * y * y;
        for (int sign : {-1, +1}) {
            Integer x2 = dy2 + 4 * sign;
            if (x2 <= 0) continue;
            Integer x = sqrt(x2);
            if (x * x != x2) continue;
            if ((x - y) % 2 != 0) continue;
            best_x = x;
            best_y = y;
            goto done;
        }
    }
done:
    return make_quad(K, make_rational(best_x, Integer(2)), make_rational(best_y, Integer(2)));
}

std::vector<double> log_embedding(const FieldElement& alpha, const std::vector<Place>& S) {
    if (fe_is_zero(alpha)) throw validation_error("log embedding of zero");
    require_arch_cover(field_of(alpha), S);
    std::vector<double> out;
    out.reserve(S.size());
    for (const Place& v : S) {
        if (v.archimedean) {
            double val = fe_abs_arch_double(alpha, v);
            out.push_back(v.multiplicity * std::log(val));
        } else {
            Val val = fe_valuation(alpha, v.prime);
            if (val.is_infinity()) throw std::logic_error("zero at a finite place");
            double lp = std::log(v.prime.p.get_d());
            out.push_back(-static_cast<double>(val.value()) * v.prime.f * lp);
        }
    }
    return out;
}

unsigned s_unit_rank(const NumberField& K, const std::vector<Place>& S,
                     const std::vector<FieldElement>& generators) {
    require_arch_cover(K, S);
    for (const auto& g : generators)
        if (!is_S_unit(g, S)) throw validation_error("generator is not an S-unit");

    const size_t rows = generators.size(), cols = S.size();
    std::vector<std::vector<double>> m(rows, std::vector<double>(cols, 0.0));
    double largest = 0.0;
    for (size_t i = 0; i < rows; ++i) {
        m[i] = [&] {
            auto v = log_embedding(generators[i], S);
            return std::vector<double>(v.begin(), v.end());
        }();
        for (double x : m[i]) largest = std::max(largest, std::fabs(x));
    }
    const double tol = 1e-9 * (largest > 0 ? largest : 1.0);

    // Gaussian elimination with partial pivoting; pivots below tol are zero
    unsigned rank = 0;
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t piv = row;
        for (size_t r = row + 1; r < rows; ++r)
            if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
        if (std::fabs(m[piv][col]) <= tol) continue;
        std::swap(m[row], m[piv]);
        for (size_t r = row + 1; r < rows; ++r) {
            double f = m[r][col] / m[row][col];
            for (size_t cc = col; cc < cols; ++cc) m[r][cc] -= f * m[row][cc];
        }
        ++row;
        ++rank;
    }
    return rank;
}

std::string format_idele(const Idele& x) {
    std::string out = "default=" + format_element(x.def);
    auto arch = archimedean_places(x.field);
    for (const auto& [i, val] : x.arch_overrides)
        out += "; " + format_place(x.field, arch[i - 1]) + "=" + format_rational(val);
    for (const auto& [v, comp] : x.finite_overrides)
        out += "; " + format_place(x.field, v) + "=" + format_element(comp);
    return out;
}

Idele parse_idele(const NumberField& K, const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == ';') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);

    auto strip = [](const std::string& s) {
        size_t b = s.find_first_not_of(" \t");
        size_t e = s.find_last_not_of(" \t");
        if (b == std::string::npos) return std::string();
        return s.substr(b, e - b + 1);
    };

    bool have_default = false;
    Idele out;
    std::vector<std::pair<std::string, std::string>> overrides;
    for (const std::string& raw : parts) {
        std::string part = strip(raw);
        if (part.empty()) continue;
        auto eq = part.find('=');
        if (eq == std::string::npos)
            throw validation_error("malformed idele component: '" + part + "'");
        std::string key = strip(part.substr(0, eq));
        std::string value = strip(part.substr(eq + 1));
        if (key == "default") {
            if (have_default) throw validation_error("duplicate default in idele");
            out = make_idele(K, parse_element(K, value));
            have_default = true;
        } else {
            overrides.push_back({key, value});
        }
    }
    if (!have_default) throw validation_error("idele needs a default component");
    for (const auto& [key, value] : overrides) {
        Place v = parse_place(K, key);
        if (v.archimedean)
            idele_set_arch(out, v, parse_rational(value));
        else
            idele_set_finite(out, v, parse_element(K, value));
    }
    return out;
}

std::string format_ideal(const FractionalIdeal& A) {
    if (A.is_unit_ideal()) return "1";
    std::string out;
    for (const auto& [P, e] : A.exponents) {
        if (!out.empty()) out += " * ";
        out += format_place(A.field, Place::finite(P)) + "^" + std::to_string(e);
    }
    return out;
}

FractionalIdeal parse_ideal(const NumberField& K, const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    FractionalIdeal out;
    out.field = K;
    if (s == "1") return out;
    std::string cur;
    std::vector<std::string> factors;
    for (char c : s) {
        if (c == '*' && !cur.empty() && cur.find('^') != std::string::npos) {
            factors.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) factors.push_back(cur);
    for (const std::string& f : factors) {
        auto caret = f.rfind('^');
        if (caret == std::string::npos)
            throw validation_error("ideal factor needs an exponent: '" + f + "'");
        Place v = parse_place(K, f.substr(0, caret));
        if (v.archimedean) throw validation_error("archimedean place in an ideal");
        long e;
        try {
            e = std::stol(f.substr(caret + 1));
        } catch (...) {
            throw validation_error("malformed exponent in '" + f + "'");
        }
        if (e != 0) out.exponents[v.prime] += e;
    }
    for (auto it = out.exponents.begin(); it != out.exponents.end();) {
        if (it->second == 0)
            it = out.exponents.erase(it);
        else
            ++it;
    }
    return out;
}

std::string format_form(const QuadForm& F) {
    return "(" + F.a.get_str() + ", " + F.b.get_str() + ", " + F.c.get_str() + ")";
}

}  // namespace adelic
