#pragma once

#include <cstdint>
#include <vector>

namespace cmunits::modarith {

/** Number-theory helpers on machine words. All moduli < 2^63; products go
 *  through 128-bit intermediates, so no overflow anywhere. */

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

/** Inverse of a mod m via extended Euclid; returns 0 when gcd(a,m) != 1. */
inline uint64_t invmod(uint64_t a, uint64_t m) {
    int64_t t = 0, nt = 1;
    int64_t r = static_cast<int64_t>(m), nr = static_cast<int64_t>(a % m);
    while (nr != 0) {
        int64_t q = r / nr;
        int64_t tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) return 0;
    return static_cast<uint64_t>(t < 0 ? t + static_cast<int64_t>(m) : t);
}

/** Legendre symbol (a/p) for odd prime p: returns -1, 0, or 1. */
inline int legendre(int64_t a, uint64_t p) {
    int64_t m = a % static_cast<int64_t>(p);
    if (m < 0) m += static_cast<int64_t>(p);
    if (m == 0) return 0;
    uint64_t r = powmod(static_cast<uint64_t>(m), (p - 1) / 2, p);
    return r == 1 ? 1 : -1;
}

/** Deterministic Miller-Rabin, exact for all 64-bit inputs. */
inline bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

/**
 * Square root of a mod odd prime p by Tonelli-Shanks with the nonresidue
 * scanned in fixed order 2,3,4,..., so results are reproducible bit for bit.
 * Returns the smaller of the two roots; p itself when a is a nonresidue.
 */
inline uint64_t sqrtmod(uint64_t a, uint64_t p) {
    a %= p;
    if (a == 0) return 0;
    if (legendre(static_cast<int64_t>(a), p) != 1) return p;
    uint64_t r;
    if (p % 4 == 3) {
        r = powmod(a, (p + 1) / 4, p);
    } else {
        uint64_t q = p - 1;
        int s = 0;
        while ((q & 1) == 0) {
            q >>= 1;
            ++s;
        }
        uint64_t z = 2;
        while (legendre(static_cast<int64_t>(z), p) != -1) ++z;
        uint64_t c = powmod(z, q, p);
        uint64_t t = powmod(a, q, p);
        r = powmod(a, (q + 1) / 2, p);
        int m = s;
        while (t != 1) {
            uint64_t t2 = t;
            int i = 0;
            while (t2 != 1) {
                t2 = mulmod(t2, t2, p);
                ++i;
            }
            uint64_t b = c;
            for (int j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
            m = i;
            c = mulmod(b, b, p);
            t = mulmod(t, c, p);
            r = mulmod(r, b, p);
        }
    }
    return r <= p - r ? r : p - r;
}

/** Prime factorization of n (trial division, then Pollard rho for any
 *  stubborn cofactor). Returns sorted distinct primes. */
std::vector<uint64_t> prime_factors(uint64_t n);

/** Multiplicative order of a mod p (p prime, a coprime to p). */
uint64_t mult_order(uint64_t a, uint64_t p);

}  // namespace cmunits::modarith
