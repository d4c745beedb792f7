#include <random>
#include <vector>

#include "cmunits/modarith.hpp"
#include "doctest.h"

using namespace cmunits::modarith;

TEST_CASE("is_prime agrees with a sieve below 10000") {
    std::vector<bool> sieve(10000, true);
    sieve[0] = sieve[1] = false;
    for (size_t i = 2; i < sieve.size(); ++i)
        if (sieve[i])
            for (size_t j = 2 * i; j < sieve.size(); j += i) sieve[j] = false;
    for (size_t n = 0; n < sieve.size(); ++n) CHECK(is_prime(n) == sieve[n]);
    CHECK(is_prime(29789));
    CHECK(is_prime(2147483647));           // 2^31 - 1
    CHECK_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2,3,5,7
}

TEST_CASE("mulmod and powmod against wide-integer brute force") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 500; ++i) {
        uint64_t m = (rng() % ((1ULL << 62) - 2)) + 2;
        uint64_t a = rng() % m, b = rng() % m;
        unsigned __int128 prod = static_cast<unsigned __int128>(a) * b;
        CHECK(mulmod(a, b, m) == static_cast<uint64_t>(prod % m));
    }
    CHECK(powmod(2, 10, 1000) == 24);
    CHECK(powmod(0, 0, 7) == 1);
    CHECK(powmod(3, 100, 101) == 1);  // Fermat
    for (int i = 0; i < 100; ++i) {
        uint64_t m = (rng() % 100000) + 2;
        uint64_t a = rng() % m;
        uint64_t e = rng() % 20;
        uint64_t brute = 1 % m;
        for (uint64_t k = 0; k < e; ++k) brute = mulmod(brute, a, m);
        CHECK(powmod(a, e, m) == brute);
    }
}

TEST_CASE("invmod produces inverses and flags non-units") {
    std::mt19937_64 rng(7);
    for (uint64_t p : {5ULL, 97ULL, 29789ULL, 1000003ULL}) {
        for (int i = 0; i < 50; ++i) {
            uint64_t a = (rng() % (p - 1)) + 1;
            uint64_t inv = invmod(a, p);
            CHECK(mulmod(a, inv, p) == 1);
        }
    }
    CHECK(invmod(6, 9) == 0);
    CHECK(invmod(0, 7) == 0);
}

TEST_CASE("sqrtmod: Tonelli-Shanks roots and nonresidue sentinel") {
    for (uint64_t p : {5ULL, 13ULL, 17ULL, 97ULL, 101ULL, 29789ULL}) {
        int residues = 0;
        for (uint64_t a = 1; a < std::min<uint64_t>(p, 200); ++a) {
            uint64_t s = sqrtmod(a, p);
            if (legendre(static_cast<int64_t>(a), p) == 1) {
                ++residues;
                REQUIRE(s < p);
                CHECK(mulmod(s, s, p) == a);
                CHECK(s <= p - s);  // canonical: the smaller root
            } else {
                CHECK(s == p);
            }
        }
        CHECK(residues > 0);
    }
    CHECK(sqrtmod(0, 13) == 0);
    CHECK(sqrtmod(25, 29789) == 5);
}

TEST_CASE("legendre matches Euler's criterion") {
    for (uint64_t p : {5ULL, 7ULL, 29789ULL}) {
        for (int64_t a = -20; a <= 20; ++a) {
            int l = legendre(a, p);
            int64_t m = ((a % static_cast<int64_t>(p)) + static_cast<int64_t>(p)) %
                        static_cast<int64_t>(p);
            if (m == 0) {
                CHECK(l == 0);
            } else {
                uint64_t e = powmod(static_cast<uint64_t>(m), (p - 1) / 2, p);
                CHECK(l == (e == 1 ? 1 : -1));
            }
        }
    }
}

TEST_CASE("prime_factors and mult_order") {
    CHECK(prime_factors(1).empty());
    CHECK(prime_factors(2 * 2 * 3 * 29789) == std::vector<uint64_t>{2, 3, 29789});
    CHECK(prime_factors(1ULL << 40) == std::vector<uint64_t>{2});

    for (uint64_t p : {5ULL, 13ULL, 29789ULL}) {
        for (uint64_t a : {2ULL, 3ULL, 7ULL}) {
            if (a % p == 0) continue;
            uint64_t ord = mult_order(a, p);
            CHECK((p - 1) % ord == 0);
            CHECK(powmod(a, ord, p) == 1);
            // minimality over the divisors of ord
            for (uint64_t q : prime_factors(ord)) CHECK(powmod(a, ord / q, p) != 1);
        }
    }
    CHECK(mult_order(1, 7) == 1);
}
