#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "adelic/padic.hpp"
#include "adelic/places.hpp"

using namespace adelic;

namespace {

Rational random_rational(std::mt19937_64& rng, long mag) {
    std::uniform_int_distribution<long> num(-mag, mag);
    std::uniform_int_distribution<long> den(1, mag);
    return make_rational(Integer(num(rng)), Integer(den(rng)));
}

PadicNumber random_padic(std::mt19937_64& rng, long p, long prec) {
    Rational x = random_rational(rng, 10000);
    if (x == 0) return padic_zero(p, prec);
    long v = vp_rational(x, Integer(p)).value();
    return padic_from_rational(x, p, prec + (v > 0 ? v : 0) + 1);
}

}  // namespace

TEST_CASE("from_rational produces the stated digit expansions") {
    PadicNumber seven = padic_from_rational(Rational(7), 5, 3);
    CHECK(seven.val == 0);
    CHECK(seven.digits == std::vector<long>{2, 1});
    CHECK(seven.abs_prec == 3);

    PadicNumber minus_one = padic_from_rational(Rational(-1), 5, 3);
    CHECK(minus_one.digits == std::vector<long>{4, 4, 4});

    PadicNumber third = padic_from_rational(Rational(1, 3), 5, 3);
    // modular inverse of 3 mod 125 is 42 = 2 + 3*5 + 1*25
    CHECK(third.digits == std::vector<long>{2, 3, 1});

    PadicNumber neg_val = padic_from_rational(Rational(3, 5), 5, 3);
    CHECK(neg_val.val == -1);
    CHECK(neg_val.digits == std::vector<long>{3});
}

TEST_CASE("from_rational rejects precision at or below the valuation") {
    CHECK_THROWS_AS(padic_from_rational(Rational(25), 5, 2), validation_error);
    CHECK_THROWS_AS(padic_from_rational(Rational(25), 5, 1), validation_error);
    CHECK_NOTHROW(padic_from_rational(Rational(25), 5, 3));
    CHECK_THROWS_AS(padic_from_rational(Rational(1), 4, 3), validation_error);
}

TEST_CASE("addition carries digits and tracks the minimum precision") {
    PadicNumber a = padic_from_rational(Rational(2), 5, 3);
    PadicNumber b = padic_from_rational(Rational(3), 5, 3);
    PadicNumber sum = padic_add(a, b);
    CHECK(sum.val == 1);
    CHECK(sum.digits == std::vector<long>{1});
    CHECK(sum.abs_prec == 3);

    PadicNumber cancel = padic_add(a, padic_neg(a));
    CHECK(cancel.is_zero_to_precision());
    CHECK(cancel.abs_prec == 3);

    PadicNumber one2 = padic_from_rational(Rational(1), 5, 2);
    PadicNumber zero1 = padic_zero(5, 1);
    PadicNumber mixed = padic_add(one2, zero1);
    CHECK(mixed.abs_prec == 1);
    CHECK(mixed.digits == std::vector<long>{1});

    PadicNumber p7 = padic_from_rational(Rational(1), 7, 3);
    CHECK_THROWS_AS(padic_add(a, p7), validation_error);
}

TEST_CASE("multiplication keeps relative precision") {
    PadicNumber two = padic_from_rational(Rational(2), 5, 3);
    PadicNumber third = padic_from_rational(Rational(1, 3), 5, 3);
    PadicNumber prod = padic_mul(two, third);
    // 2 * 42 = 84 = 4 + 1*5 + 3*25 mod 125
    CHECK(prod.digits == std::vector<long>{4, 1, 3});
    CHECK(prod.abs_prec == 3);

    PadicNumber one = padic_from_rational(Rational(1), 5, 3);
    CHECK(padic_equal(padic_mul(two, one), two));

    PadicNumber five = padic_from_rational(Rational(5), 5, 3);
    PadicNumber sq = padic_mul(five, five);
    CHECK(sq.val == 2);
    CHECK(sq.abs_prec == 4);
    CHECK(sq.digits == std::vector<long>{1});
}

TEST_CASE("inversion follows the stated examples") {
    PadicNumber m4 = padic_from_rational(Rational(-4), 5, 3);
    CHECK(padic_inv(m4).digits == std::vector<long>{1, 1, 1});

    PadicNumber one = padic_from_rational(Rational(1), 5, 3);
    CHECK(padic_equal(padic_inv(one), one));

    PadicNumber five = padic_from_rational(Rational(5), 5, 3);
    PadicNumber inv5 = padic_inv(five);
    CHECK(inv5.val == -1);
    CHECK(inv5.digits == std::vector<long>{1});
    CHECK(inv5.abs_prec == 1);

    CHECK_THROWS_AS(padic_inv(padic_zero(5, 3)), validation_error);
}

TEST_CASE("valuation reports exact and below-precision answers") {
    PadicNumber v25 = padic_from_rational(Rational(25), 5, 4);
    CHECK(padic_valuation(v25) == PadicValuation{false, 2});

    CHECK(padic_valuation(padic_zero(5, 3)) == PadicValuation{true, 3});

    PadicNumber neg = padic_from_rational(Rational(3, 5), 5, 3);
    CHECK(padic_valuation(neg) == PadicValuation{false, -1});
}

TEST_CASE("render matches the grammar and parse round-trips bit-exactly") {
    CHECK(padic_render(padic_from_rational(Rational(7), 5, 3)) == "2 + 1*5 + O(5^3)");
    CHECK(padic_render(padic_zero(5, 3)) == "O(5^3)");
    CHECK(padic_render(padic_from_rational(Rational(3, 5), 5, 2)) == "3*5^-1 + O(5^2)");

    std::mt19937_64 rng(201);
    for (int i = 0; i < 300; ++i) {
        for (long p : {2L, 5L, 13L}) {
            PadicNumber a = random_padic(rng, p, 8);
            PadicNumber back = padic_parse(padic_render(a));
            CHECK(back.p == a.p);
            CHECK(back.abs_prec == a.abs_prec);
            CHECK(back.digits == a.digits);
            if (!a.is_zero_to_precision()) CHECK(back.val == a.val);
        }
    }

    CHECK_THROWS_AS(padic_parse("9 + O(5^2)"), validation_error);
    CHECK_THROWS_AS(padic_parse("1 + 1*5"), validation_error);
    CHECK_THROWS_AS(padic_parse("1 + 1*7 + O(5^3)"), validation_error);
}

TEST_CASE("ring laws hold at the min-precision contract") {
    std::mt19937_64 rng(202);
    for (long p : {2L, 5L, 13L}) {
        for (int i = 0; i < 400; ++i) {
            PadicNumber a = random_padic(rng, p, 10);
            PadicNumber b = random_padic(rng, p, 10);
            PadicNumber c = random_padic(rng, p, 10);
            CHECK(padic_equal(padic_add(a, b), padic_add(b, a)));
            CHECK(padic_equal(padic_mul(a, b), padic_mul(b, a)));
            CHECK(padic_equal(padic_add(padic_add(a, b), c), padic_add(a, padic_add(b, c))));
            CHECK(padic_equal(padic_mul(padic_mul(a, b), c), padic_mul(a, padic_mul(b, c))));
            CHECK(padic_equal(padic_mul(a, padic_add(b, c)),
                              padic_add(padic_mul(a, b), padic_mul(a, c))));
            if (!a.is_zero_to_precision()) {
                PadicNumber prod = padic_mul(a, padic_inv(a));
                CHECK(padic_equal(prod, padic_from_rational(Rational(1), p, prod.abs_prec)));
            }
        }
    }
}

TEST_CASE("from_rational commutes with field operations") {
    std::mt19937_64 rng(203);
    for (long p : {2L, 5L, 13L}) {
        for (int i = 0; i < 200; ++i) {
            Rational x = random_rational(rng, 500), y = random_rational(rng, 500);
            long N = 12;
            long vx = x == 0 ? 0 : vp_rational(x, Integer(p)).value();
            long vy = y == 0 ? 0 : vp_rational(y, Integer(p)).value();
            long pad = std::max({vx, vy, 0L}) + 1;
            PadicNumber a = x == 0 ? padic_zero(p, N + pad) : padic_from_rational(x, p, N + pad);
            PadicNumber b = y == 0 ? padic_zero(p, N + pad) : padic_from_rational(y, p, N + pad);
            PadicNumber sum = padic_add(a, b);
            if (x + y == 0)
                CHECK(padic_valuation(sum).below_precision);
            else
                CHECK(padic_equal(sum, padic_from_rational(x + y, p, sum.abs_prec)));
            PadicNumber prod = padic_mul(a, b);
            if (x * y == 0)
                CHECK(padic_valuation(prod).below_precision);
            else if (vp_rational(x * y, Integer(p)) < Val(prod.abs_prec))
                CHECK(padic_equal(prod, padic_from_rational(x * y, p, prod.abs_prec)));
        }
    }
}

TEST_CASE("congruent rationals with equal valuation give identical objects") {
    std::mt19937_64 rng(204);
    for (int i = 0; i < 200; ++i) {
        Rational x = random_rational(rng, 2000);
        if (x == 0) continue;
        long p = 5, N = 6;
        long v = vp_rational(x, Integer(p)).value();
        if (N <= v) continue;
        // y = x + p^N * k keeps the expansion below precision unchanged
        std::uniform_int_distribution<long> k(-50, 50);
        Rational y = x + pow_rational(Rational(p), N) * Rational(k(rng));
        if (y == 0 || vp_rational(y, Integer(p)) != Val(v)) continue;
        PadicNumber a = padic_from_rational(x, p, N);
        PadicNumber b = padic_from_rational(y, p, N);
        CHECK(a.val == b.val);
        CHECK(a.digits == b.digits);
        CHECK(a.abs_prec == b.abs_prec);
    }
}

TEST_CASE("ultrametric inequality for the valuation of sums") {
    std::mt19937_64 rng(205);
    for (int i = 0; i < 300; ++i) {
        PadicNumber a = random_padic(rng, 5, 12);
        PadicNumber b = random_padic(rng, 5, 12);
        if (a.is_zero_to_precision() || b.is_zero_to_precision()) continue;
        PadicNumber sum = padic_add(a, b);
        if (sum.is_zero_to_precision()) {
            CHECK(sum.abs_prec >= std::min(a.val, b.val));
            continue;
        }
        CHECK(sum.val >= std::min(a.val, b.val));
        if (a.val != b.val) CHECK(sum.val == std::min(a.val, b.val));
    }
}

TEST_CASE("valuation classifies the unit ball") {
    PadicNumber unit = padic_from_rational(Rational(7), 5, 4);
    PadicNumber integral = padic_from_rational(Rational(25), 5, 4);
    PadicNumber fractional = padic_from_rational(Rational(1, 5), 5, 4);
    CHECK(padic_valuation(unit).value == 0);       // in U_v
    CHECK(padic_valuation(integral).value >= 0);   // in O_v
    CHECK(padic_valuation(fractional).value < 0);  // outside O_v
}
