#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "adelic/hensel.hpp"
#include "adelic/places.hpp"

using namespace adelic;

namespace {

Poly from_longs(std::initializer_list<long> coeffs) {
    std::vector<Rational> v;
    for (long c : coeffs) v.push_back(Rational(c));
    return make_poly(std::move(v));
}

Integer pow_int(long p, long e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, e);
    return r;
}

// reduce an integer-coefficient polynomial into [0, p^N)
Poly reduce_mod(const Poly& f, long p, long N) {
    Integer pk = pow_int(p, N);
    std::vector<Rational> out;
    for (const Rational& c : f.coeffs) {
        Integer r = c.get_num() % pk;
        if (r < 0) r += pk;
        out.push_back(Rational(r));
    }
    return make_poly(std::move(out));
}

bool congruent_mod(const Poly& f, const Poly& g, long p, long N) {
    Poly diff = poly_sub(f, g);
    return gauss_valuation(diff, p) >= Val(N);
}

}  // namespace

TEST_CASE("lift_root on the stated examples") {
    PadicNumber r = lift_root(from_longs({1, 0, 1}), 5, 2, 3);  // t^2 + 1
    CHECK(r.known_value() == Rational(57));                     // 57^2 + 1 = 2 * 5^3 * 13

    PadicNumber exact = lift_root(from_longs({-1, 0, 1}), 7, 1, 4);  // t^2 - 1
    CHECK(exact.known_value() == Rational(1));

    PadicNumber cube = lift_root(from_longs({-2, 0, 0, 1}), 5, 3, 2);  // t^3 - 2
    CHECK(cube.known_value() == Rational(3));                          // 27 - 2 = 25
}

TEST_CASE("lift_root rejects bad starting residues") {
    CHECK_THROWS_WITH_AS(lift_root(from_longs({1, 0, 1}), 5, 1, 3), "not a root mod p",
                         validation_error);
    // t^2 has 0 as a double root mod 3
    CHECK_THROWS_WITH_AS(lift_root(from_longs({0, 0, 1}), 3, 0, 3),
                         "root not simple mod p; use lift_factorization", validation_error);
    // non-integral coefficients are rejected
    CHECK_THROWS_AS(lift_root(make_poly({Rational(1, 5), Rational(1)}), 5, 0, 3),
                    validation_error);
}

TEST_CASE("lift_factorization on the stated examples") {
    SUBCASE("a factorization over Z lifts to itself") {
        auto [g, h] = lift_factorization(from_longs({-1, 0, 1}), 7, from_longs({-1, 1}),
                                         from_longs({1, 1}), 5);
        CHECK(congruent_mod(g, from_longs({-1, 1}), 7, 5));
        CHECK(congruent_mod(h, from_longs({1, 1}), 7, 5));
    }
    SUBCASE("t^2 + 1 over Z_5 matches the lifted square root") {
        auto [g, h] = lift_factorization(from_longs({1, 0, 1}), 5, from_longs({-2, 1}),
                                         from_longs({2, 1}), 3);
        CHECK(congruent_mod(g, from_longs({-57, 1}), 5, 3));
        CHECK(congruent_mod(h, from_longs({57, 1}), 5, 3));
        // (t-57)(t+57) = t^2 - 3249 = t^2 + 1 mod 125
        CHECK(congruent_mod(poly_mul(g, h), from_longs({1, 0, 1}), 5, 3));
    }
    SUBCASE("t^2 - t splits off its roots exactly") {
        auto [g, h] = lift_factorization(from_longs({0, -1, 1}), 3, from_longs({0, 1}),
                                         from_longs({-1, 1}), 4);
        CHECK(congruent_mod(g, from_longs({0, 1}), 3, 4));
        CHECK(congruent_mod(h, from_longs({-1, 1}), 3, 4));
    }
}

TEST_CASE("lift_factorization validates its preconditions") {
    // G and H share the root 1 mod 3
    CHECK_THROWS_WITH_AS(lift_factorization(from_longs({1, -2, 1}), 3, from_longs({-1, 1}),
                                            from_longs({-1, 1}), 4),
                         "factors share a root mod p", validation_error);
    CHECK_THROWS_WITH_AS(lift_factorization(from_longs({1, 0, 1}), 5, from_longs({-1, 1}),
                                            from_longs({1, 1}), 3),
                         "factorization does not match mod p", validation_error);
    // G must be monic
    CHECK_THROWS_AS(lift_factorization(from_longs({1, 0, 1}), 5, from_longs({-4, 2}),
                                       from_longs({2, 3}), 3),
                    validation_error);
}

TEST_CASE("random planted factorizations lift with deep residuals") {
    std::mt19937_64 rng(301);
    for (long p : {3L, 5L, 7L}) {
        for (int i = 0; i < 25; ++i) {
            std::uniform_int_distribution<long> digit(0, p - 1);
            std::uniform_int_distribution<long> noise(-40, 40);
            long a = digit(rng), b = digit(rng), c = digit(rng);
            if ((a * a + b * a + c) % p == 0) continue;  // G, H must be coprime mod p
            Poly G = from_longs({-a, 1});
            Poly H = from_longs({c, b, 1});
            Poly f = poly_mul(G, H);
            // p-divisible noise keeps the residue factorization intact
            f = poly_add(f, from_longs({p * noise(rng), p * noise(rng), p * noise(rng)}));
            long N = 12;
            auto [g, h] = lift_factorization(f, p, G, H, N);
            CHECK(g.degree() == G.degree());
            CHECK(h.degree() <= f.degree() - G.degree());
            CHECK(congruent_mod(poly_mul(g, h), f, p, N));
            CHECK(congruent_mod(g, G, p, 1));
            CHECK(congruent_mod(h, H, p, 1));
        }
    }
}

TEST_CASE("lifting to N then reducing equals lifting to M directly") {
    std::mt19937_64 rng(302);
    for (int i = 0; i < 20; ++i) {
        std::uniform_int_distribution<long> digit(1, 4);
        long a = digit(rng), b = digit(rng) % 5, c = digit(rng);
        if ((a * a + b * a + c) % 5 == 0) continue;
        Poly G = from_longs({-a, 1});
        Poly H = from_longs({c, b, 1});
        Poly f = poly_mul(G, H);
        auto [g12, h12] = lift_factorization(f, 5, G, H, 12);
        auto [g6, h6] = lift_factorization(f, 5, G, H, 6);
        CHECK(poly_equal(reduce_mod(g12, 5, 6), g6));
        CHECK(poly_equal(reduce_mod(h12, 5, 6), h6));
    }
}

TEST_CASE("a lifted linear factor agrees with lift_root") {
    Poly f = from_longs({1, 0, 1});  // t^2 + 1 over Z_5
    long N = 8;
    PadicNumber root = lift_root(f, 5, 2, N);
    auto [g, h] = lift_factorization(f, 5, from_longs({-2, 1}), from_longs({2, 1}), N);
    // g = t - r with r = root mod 5^N
    Integer pk = pow_int(5, N);
    Rational c0 = -g.coeff(0);
    Integer r_from_factor = (c0.get_num() % pk + pk) % pk;
    Integer r_from_newton = (root.known_value().get_num() % pk + pk) % pk;
    CHECK(r_from_factor == r_from_newton);
}

TEST_CASE("gauss_valuation on the stated examples") {
    CHECK(gauss_valuation(from_longs({25, 0, 5}), 5) == Val(1));
    CHECK(gauss_valuation(from_longs({1, 1}), 7) == Val(0));
    CHECK(gauss_valuation(make_poly({Rational(1), Rational(1, 5)}), 5) == Val(-1));
    CHECK(gauss_valuation(Poly{}, 5).is_infinity());
}

TEST_CASE("gauss valuation is multiplicative on products") {
    std::mt19937_64 rng(303);
    std::uniform_int_distribution<long> coeff(-30, 30);
    for (int i = 0; i < 60; ++i) {
        Poly f = from_longs({coeff(rng), coeff(rng), coeff(rng)});
        Poly g = from_longs({coeff(rng), coeff(rng)});
        if (f.is_zero() || g.is_zero()) continue;
        for (long p : {2L, 5L}) {
            CHECK(gauss_valuation(poly_mul(f, g), p) ==
                  gauss_valuation(f, p) + gauss_valuation(g, p));
        }
    }
}

TEST_CASE("integrality of monic irreducible polynomials") {
    CHECK(monic_irreducible_integrality(from_longs({1, 0, 1}), 7));
    CHECK_FALSE(monic_irreducible_integrality(make_poly({Rational(-1, 7), Rational(0), Rational(1)}), 7));
    CHECK(monic_irreducible_integrality(from_longs({10, 5, 0, 1}), 5));
    CHECK_THROWS_AS(monic_irreducible_integrality(from_longs({1, 0, 2}), 5), validation_error);
}

TEST_CASE("corollary agrees with coefficient inspection on irreducible quadratics") {
    // monic quadratics irreducible mod p are irreducible over Q_p, so the
    // corollary's conclusion must match brute-force coefficient inspection
    for (long p : {3L, 5L, 7L}) {
        for (long b = 0; b < p; ++b) {
            for (long c = 1; c < p; ++c) {
                bool has_root = false;
                for (long t = 0; t < p; ++t)
                    if ((t * t + b * t + c) % p == 0) has_root = true;
                if (has_root) continue;
                Poly f = from_longs({c, b, 1});
                bool all_integral = true;
                for (const Rational& co : f.coeffs)
                    if (vp_rational(co, Integer(p)) < Val(0)) all_integral = false;
                CHECK(monic_irreducible_integrality(f, p) == all_integral);
            }
        }
    }
}

TEST_CASE("polynomial text format round-trips") {
    Poly f = make_poly({Rational(1, 2), Rational(-3), Rational(0), Rational(5, 7)});
    Poly back = parse_poly(format_poly(f));
    CHECK(poly_equal(f, back));
    CHECK(format_poly(Poly{}) == "0");
    CHECK(poly_equal(parse_poly("0"), Poly{}));
    CHECK(poly_equal(parse_poly("1 + 1*t^2"), from_longs({1, 0, 1})));
    CHECK(poly_equal(parse_poly("t^2 - t"), from_longs({0, -1, 1})));
}
