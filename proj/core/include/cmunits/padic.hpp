#pragma once

#include <utility>

#include "cmunits/field.hpp"

namespace cmunits {

/**
 * The two ring maps O_K -> Z/p^n attached to a split prime: i1 reduces
 * modulo (pi)^n, i2 modulo (conj pi)^n, each identified with Z/p^n through
 * the completion. Concretely i1(a + b*omega) = a + b*r1 mod p^n where r1 is
 * the root of omega's minimal polynomial singled out by pi = 0 mod (pi).
 */
struct PadicEmbed {
    SplitPrime sp;
    int n;
    mpz_class pn;  // p^n
    mpz_class r1;  // image of omega on the (pi) side
    mpz_class r2;  // image of omega on the (conj pi) side

    mpz_class i1(const QuadInt& x) const { return apply(r1, x); }
    mpz_class i2(const QuadInt& x) const { return apply(r2, x); }

private:
    mpz_class apply(const mpz_class& r, const QuadInt& x) const {
        mpz_class v = (x.a() + x.b() * r) % pn;
        if (v < 0) v += pn;
        return v;
    }
};

/** Which of the two conjugate primes a statement refers to. */
enum class Side { pi, pi_bar };

/** Embedding data at level n; Newton lifting from the level-1 root. */
PadicEmbed hensel_embed(const SplitPrime& sp, int n);

/**
 * i1(x)^{m1} * i2(x)^{m2} mod p^n. Negative exponents are resolved by modular
 * inversion and require x to be a unit mod p (NonInvertible otherwise).
 */
mpz_class i_power(const PadicEmbed& e, std::pair<long, long> m, const QuadInt& x);

/** The character value map c -> i1(c)^{m1} i2(c)^{m2} mod p^n at a fixed level. */
struct CharExponent {
    PadicEmbed embed;
    std::pair<long, long> m;

    mpz_class value(const QuadInt& c) const { return i_power(embed, m, c); }
};

/**
 * TRUE iff pi^{p-1} - 1 is NOT divisible by the square of the conjugate
 * prime (side pi_bar; the mirrored statement for side pi). Computed as a
 * Fermat-quotient test on the level-2 embedding image.
 */
bool purely_local_test(const SplitPrime& sp, Side side);

/**
 * TRUE iff the class of i2(pi) generates F_p^x modulo the image of the unit
 * group, i.e. has order exactly (p-1)/w there.
 */
bool frobenius_generates_test(const SplitPrime& sp);

}  // namespace cmunits
