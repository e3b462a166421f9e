#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "adelic/adeles.hpp"
#include "adelic/hensel.hpp"
#include "adelic/padic.hpp"

using namespace adelic;

namespace {

Rational random_rational(std::mt19937_64& rng, long mag) {
    std::uniform_int_distribution<long> num(-mag, mag);
    std::uniform_int_distribution<long> den(1, mag);
    return make_rational(Integer(num(rng)), Integer(den(rng)));
}

}  // namespace

TEST_CASE("rational text round-trips") {
    std::mt19937_64 rng(601);
    for (int i = 0; i < 300; ++i) {
        Rational x = random_rational(rng, 1000000);
        CHECK(parse_rational(format_rational(x)) == x);
    }
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK(parse_rational(" -7 ") == Rational(-7));
    CHECK_THROWS_AS(parse_rational("1/0"), validation_error);
    CHECK_THROWS_AS(parse_rational("a/b"), validation_error);
    CHECK_THROWS_AS(parse_rational(""), validation_error);
}

TEST_CASE("quadratic element text round-trips") {
    std::mt19937_64 rng(602);
    for (long d : {-1L, -5L, 2L, 5L}) {
        QuadField K = make_quad_field(d);
        for (int i = 0; i < 100; ++i) {
            QuadElement x = make_quad(K, random_rational(rng, 500), random_rational(rng, 500));
            CHECK(parse_quad(K, format_quad(x)) == x);
        }
    }
    QuadField Ki = make_quad_field(-1);
    CHECK(parse_quad(Ki, "2+1*sqrt(-1)") == make_quad(Ki, Rational(2), Rational(1)));
    CHECK(parse_quad(Ki, "2-1*sqrt(-1)") == make_quad(Ki, Rational(2), Rational(-1)));
    CHECK(parse_quad(Ki, "sqrt(-1)") == make_quad(Ki, Rational(0), Rational(1)));
    CHECK(parse_quad(Ki, "-3/4") == make_quad(Ki, Rational(-3, 4), Rational(0)));
    CHECK_THROWS_AS(parse_quad(Ki, "1+1*sqrt(2)"), validation_error);
}

TEST_CASE("place tokens round-trip over every field shape") {
    std::vector<NumberField> fields = {NumberField::rationals(),
                                       NumberField::quadratic(make_quad_field(-1)),
                                       NumberField::quadratic(make_quad_field(2)),
                                       NumberField::quadratic(make_quad_field(-23))};
    for (const NumberField& K : fields) {
        for (const Place& v : canonical_places(K, 23)) {
            Place back = parse_place(K, format_place(K, v));
            CHECK(back == v);
        }
    }
    NumberField Q = NumberField::rationals();
    CHECK(parse_place(Q, "oo").archimedean);
    CHECK_THROWS_AS(parse_place(Q, "4"), validation_error);
    CHECK_THROWS_AS(parse_place(Q, "5:split+"), validation_error);
    NumberField Ki = NumberField::quadratic(make_quad_field(-1));
    CHECK_THROWS_AS(parse_place(Ki, "5"), validation_error);
    CHECK_THROWS_AS(parse_place(Ki, "5:ram"), validation_error);
    CHECK_THROWS_AS(parse_place(Ki, "oo1"), validation_error);
}

TEST_CASE("p-adic literals round-trip bit-exactly") {
    std::mt19937_64 rng(603);
    for (int i = 0; i < 200; ++i) {
        Rational x = random_rational(rng, 100000);
        for (long p : {2L, 13L}) {
            long prec = 1 + static_cast<long>(rng() % 12);
            PadicNumber a;
            if (x == 0) {
                a = padic_zero(p, prec);
            } else {
                long v = vp_rational(x, Integer(p)).value();
                a = padic_from_rational(x, p, v + prec);
            }
            PadicNumber back = padic_parse(padic_render(a));
            CHECK(back.p == a.p);
            CHECK(back.val == a.val);
            CHECK(back.digits == a.digits);
            CHECK(back.abs_prec == a.abs_prec);
        }
    }
}

TEST_CASE("polynomial literals round or trip") {
    std::mt19937_64 rng(604);
    for (int i = 0; i < 150; ++i) {
        std::vector<Rational> coeffs;
        size_t deg = rng() % 6;
        for (size_t j = 0; j <= deg; ++j) coeffs.push_back(random_rational(rng, 60));
        Poly f = make_poly(std::move(coeffs));
        CHECK(poly_equal(parse_poly(format_poly(f)), f));
    }
}

TEST_CASE("idele literals round-trip extensionally") {
    std::mt19937_64 rng(605);
    std::vector<NumberField> fields = {NumberField::rationals(),
                                       NumberField::quadratic(make_quad_field(-5))};
    for (const NumberField& K : fields) {
        auto places = canonical_places(K, 7);
        for (int i = 0; i < 60; ++i) {
            std::uniform_int_distribution<long> c(1, 30);
            Idele x = make_idele(K, element_from_rational(K, Rational(c(rng))));
            for (const Place& v : places) {
                if (rng() % 3 != 0) continue;
                if (v.archimedean)
                    idele_set_arch(x, v, Rational(c(rng)));
                else
                    idele_set_finite(x, v, element_from_rational(K, Rational(c(rng))));
            }
            Idele back = parse_idele(K, format_idele(x));
            CHECK(idele_extensionally_equal(back, x));
        }
    }
    NumberField Q = NumberField::rationals();
    CHECK_THROWS_AS(parse_idele(Q, "2=4"), validation_error);         // no default
    CHECK_THROWS_AS(parse_idele(Q, "default=0"), validation_error);   // zero default
    CHECK_THROWS_AS(parse_idele(Q, "default=1; oo=-2"), validation_error);
}

TEST_CASE("ideal literals round-trip") {
    std::mt19937_64 rng(606);
    std::vector<NumberField> fields = {NumberField::rationals(),
                                       NumberField::quadratic(make_quad_field(-1))};
    for (const NumberField& K : fields) {
        std::vector<PrimeIdealData> primes;
        for (const auto& v : canonical_places(K, 13))
            if (!v.archimedean) primes.push_back(v.prime);
        for (int i = 0; i < 60; ++i) {
            std::map<PrimeIdealData, long> expo;
            std::uniform_int_distribution<long> e(-4, 4);
            for (int j = 0; j < 3; ++j) {
                long ev = e(rng);
                if (ev) expo[primes[rng() % primes.size()]] = ev;
            }
            FractionalIdeal A = make_fractional_ideal(K, expo);
            CHECK(parse_ideal(K, format_ideal(A)) == A);
        }
    }
    CHECK(parse_ideal(NumberField::rationals(), "1").is_unit_ideal());
}
