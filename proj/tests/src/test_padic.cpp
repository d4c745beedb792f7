#include <random>
#include <utility>
#include <vector>

#include "cmunits/errors.hpp"
#include "cmunits/field.hpp"
#include "cmunits/modarith.hpp"
#include "cmunits/padic.hpp"
#include "doctest.h"

using namespace cmunits;

static const int kFields[] = {1, 2, 3, 7, 11, 19, 43, 67, 163};

static std::vector<long> split_primes_below(const FieldContext& F, long bound) {
    std::vector<long> out;
    for (long p = 5; p < bound; ++p) {
        if (!modarith::is_prime(static_cast<uint64_t>(p))) continue;
        if (F.discriminant % p == 0) continue;
        if (modarith::legendre(F.discriminant, static_cast<uint64_t>(p)) == 1) out.push_back(p);
    }
    return out;
}

TEST_CASE("hensel_embed produces the two conjugate roots at every level") {
    for (int d : kFields) {
        const FieldContext& F = make_field(d);
        for (long p : split_primes_below(F, 120)) {
            SplitPrime sp = split_prime(F, p);
            for (int n = 1; n <= 3; ++n) {
                PadicEmbed e = hensel_embed(sp, n);
                mpz_class pn = e.pn;
                mpz_class expect_pn = 1;
                for (int k = 0; k < n; ++k) expect_pn *= p;
                CHECK(pn == expect_pn);

                // both roots satisfy omega's minimal polynomial mod p^n and
                // are exchanged by the Vieta relations
                mpz_class t(F.omega_trace), nn(F.omega_norm);
                CHECK((e.r1 * e.r1 - t * e.r1 + nn) % pn == 0);
                CHECK((e.r2 * e.r2 - t * e.r2 + nn) % pn == 0);
                CHECK((e.r1 + e.r2 - t) % pn == 0);
                CHECK((e.r1 * e.r2 - nn) % pn == 0);

                // the defining property of the labeling: pi dies on side 1,
                // its conjugate on side 2, and neither dies on the wrong side
                CHECK(e.i1(sp.pi) % p == 0);
                CHECK(e.i2(sp.pi_bar) % p == 0);
                CHECK(e.i2(sp.pi) % p != 0);
                CHECK(e.i1(sp.pi_bar) % p != 0);
            }
        }
    }
}

TEST_CASE("embeddings are ring maps and swap under conjugation") {
    std::mt19937_64 rng(101);
    for (int d : kFields) {
        const FieldContext& F = make_field(d);
        std::vector<long> ps = split_primes_below(F, 400);
        REQUIRE(!ps.empty());
        SplitPrime sp = split_prime(F, ps.back());
        for (int n = 1; n <= 3; ++n) {
            PadicEmbed e = hensel_embed(sp, n);
            for (int i = 0; i < 25; ++i) {
                QuadInt x(F, static_cast<long>(rng() % 2001) - 1000,
                          static_cast<long>(rng() % 2001) - 1000);
                QuadInt y(F, static_cast<long>(rng() % 2001) - 1000,
                          static_cast<long>(rng() % 2001) - 1000);
                CHECK(e.i1(x + y) == (e.i1(x) + e.i1(y)) % e.pn);
                CHECK(e.i1(x * y) == (e.i1(x) * e.i1(y)) % e.pn);
                CHECK(e.i2(x + y) == (e.i2(x) + e.i2(y)) % e.pn);
                CHECK(e.i2(x * y) == (e.i2(x) * e.i2(y)) % e.pn);
                CHECK(e.i1(x.conj()) == e.i2(x));
                CHECK(e.i2(x.conj()) == e.i1(x));
            }
            CHECK(e.i1(QuadInt(F, 1, 0)) == 1);
        }
    }
}

TEST_CASE("levels are compatible: level n+1 reduces to level n") {
    const FieldContext& F = make_field(3);
    SplitPrime sp = split_prime(F, 13);
    for (int n = 1; n <= 4; ++n) {
        PadicEmbed lo = hensel_embed(sp, n);
        PadicEmbed hi = hensel_embed(sp, n + 1);
        CHECK(hi.r1 % lo.pn == lo.r1);
        CHECK(hi.r2 % lo.pn == lo.r2);
    }
}

TEST_CASE("i_power: integer exponents, inverses, mixed signs") {
    const FieldContext& F = make_field(1);
    SplitPrime sp = split_prime(F, 13);
    PadicEmbed e = hensel_embed(sp, 2);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 30; ++i) {
        QuadInt x(F, static_cast<long>(rng() % 13) + 1, static_cast<long>(rng() % 13));
        if (e.i1(x) % 13 == 0 || e.i2(x) % 13 == 0) continue;
        uint64_t pn = 169;
        uint64_t v1 = e.i1(x).get_ui(), v2 = e.i2(x).get_ui();
        CHECK(i_power(e, {3, 2}, x) ==
              modarith::mulmod(modarith::powmod(v1, 3, pn), modarith::powmod(v2, 2, pn), pn));
        // negative exponents mean modular inverses
        mpz_class inv_side = i_power(e, {-1, 0}, x);
        CHECK((inv_side * v1) % 169 == 1);
        CHECK((i_power(e, {-2, 1}, x) * modarith::powmod(v1, 2, pn)) % 169 ==
              mpz_class(v2));
    }
    CHECK(i_power(e, {0, 0}, QuadInt(F, 2, 1)) == 1);
    CHECK_THROWS_AS(i_power(e, {-1, 0}, sp.pi), NonInvertible);

    CharExponent chi{e, {2, -1}};
    QuadInt c(F, 3, 1);
    CHECK(chi.value(c) == i_power(e, {2, -1}, c));
}

TEST_CASE("purely local test: anchor values and invariance") {
    const FieldContext& F = make_field(1);
    SUBCASE("small split primes pass on both sides") {
        for (long p : {5L, 13L, 17L, 29L, 37L}) {
            SplitPrime sp = split_prime(F, p);
            CHECK(purely_local_test(sp, Side::pi));
            CHECK(purely_local_test(sp, Side::pi_bar));
        }
    }
    SUBCASE("the exceptional prime 29789 fails on both sides") {
        SplitPrime sp = split_prime(F, 29789);
        CHECK(sp.pi == QuadInt(F, 110, -133));
        CHECK_FALSE(purely_local_test(sp, Side::pi));
        CHECK_FALSE(purely_local_test(sp, Side::pi_bar));
    }
    SUBCASE("the verdict does not depend on the generator chosen") {
        for (int d : {1, 3, 7}) {
            const FieldContext& G = make_field(d);
            for (long p : split_primes_below(G, 500)) {
                SplitPrime sp = split_prime(G, p);
                bool ref_pi = purely_local_test(sp, Side::pi);
                bool ref_pib = purely_local_test(sp, Side::pi_bar);
                for (const QuadInt& u : G.units) {
                    SplitPrime assoc{p, u * sp.pi, (u * sp.pi).conj()};
                    CHECK(purely_local_test(assoc, Side::pi) == ref_pi);
                    CHECK(purely_local_test(assoc, Side::pi_bar) == ref_pib);
                }
            }
        }
    }
    SUBCASE("direct definition: pi^(p-1) = 1 mod conj(pi)^2 detects the failure") {
        for (long p : {5L, 29789L}) {
            SplitPrime sp = split_prime(F, p);
            PadicEmbed e = hensel_embed(sp, 2);
            // side pi_bar asks whether (conj pi)^2 divides pi^(p-1) - 1,
            // i.e. whether i2(pi)^(p-1) = 1 mod p^2
            mpz_class fq;
            mpz_powm_ui(fq.get_mpz_t(), e.i2(sp.pi).get_mpz_t(),
                        static_cast<unsigned long>(p - 1), e.pn.get_mpz_t());
            CHECK(purely_local_test(sp, Side::pi_bar) == (fq != 1));
        }
    }
}

TEST_CASE("frobenius generation matches a brute-force order computation") {
    for (int d : {1, 3}) {
        const FieldContext& F = make_field(d);
        for (long p : split_primes_below(F, 200)) {
            SplitPrime sp = split_prime(F, p);
            PadicEmbed e = hensel_embed(sp, 1);
            uint64_t up = static_cast<uint64_t>(p);
            // brute force: the subgroup generated by i2(pi) and the unit
            // images must be all of F_p^x
            std::vector<char> hit(up, 0);
            std::vector<uint64_t> gens;
            gens.push_back(e.i2(sp.pi).get_ui());
            for (const QuadInt& u : F.units) gens.push_back(e.i2(u).get_ui());
            std::vector<uint64_t> frontier{1};
            hit[1] = 1;
            size_t count = 1;
            while (!frontier.empty()) {
                uint64_t x = frontier.back();
                frontier.pop_back();
                for (uint64_t g : gens) {
                    uint64_t y = modarith::mulmod(x, g, up);
                    if (!hit[y]) {
                        hit[y] = 1;
                        ++count;
                        frontier.push_back(y);
                    }
                }
            }
            CHECK(frobenius_generates_test(sp) == (count == up - 1));
        }
    }
}
