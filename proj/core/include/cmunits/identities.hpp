#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cmunits/analytic.hpp"
#include "cmunits/field.hpp"
#include "cmunits/padic.hpp"

namespace cmunits {

/**
 * Result of one exact-identity verification. Both sides are carried as
 * (log|.|, arg) accumulators so exponent-heavy products never overflow;
 * residual is the relative error |lhs/rhs - 1|.
 */
struct IdentityReport {
    std::string name;
    std::string parameters;
    Real lhs_log, lhs_arg;
    Real rhs_log, rhs_arg;
    Real residual;
    bool pass;
};

using Coords = std::array<mpq_class, 2>;

/** Coordinates of c*z for z given in lattice coordinates. */
Coords scale_coords(const FieldContext& F, const QuadInt& c, const Coords& z);

/** prod_{nu in E[beta]} theta_a(tau + nu) = theta_a(beta*tau). */
IdentityReport check_distribution(const Lattice& lat, const QuadInt& alpha,
                                  const QuadInt& beta, const Coords& tau);

/** theta_a(c*tau) = theta_{ac}(tau) * theta_c(tau)^{-N(a)}. */
IdentityReport check_galois_action(const Lattice& lat, const QuadInt& alpha,
                                   const QuadInt& c, const Coords& tau);

/** theta_b(z)^{N(a)} / theta_b(a*z) = theta_a(z)^{N(b)} / theta_a(b*z). */
IdentityReport check_cross_relation(const Lattice& lat, const QuadInt& a,
                                    const QuadInt& b, const Coords& z);

/**
 * Norm compatibility: for tau = r/(f*l) primitive and l prime,
 *   prod_c theta_a(c*tau)^e  =  theta_a(l*tau)^{1 - sigma_l^{-1}}   (l not | f)
 *                            =  theta_a(l*tau)                      (l | f)
 * with c running over coset representatives of Gal(K(fl)/K(f)) and
 * e = w_f / w_g the ratio of unit-congruence counts.
 */
IdentityReport check_norm_relation(const Lattice& lat, const QuadInt& f,
                                   const QuadInt& l, const QuadInt& alpha,
                                   const QuadInt& r);

/**
 * One fiber of multiplication-by-p on the first basis coordinate at level n:
 *   prod_{a: pa = abar mod p^n} theta_a(a w1_n + b w2_n)
 *     = theta_a(pibar^{-1} abar w1_n + pi b w2_n),
 * where (w1_n, w2_n) is the compatible basis of E[p^n] and abar is divisible
 * by p, so the multiplier pibar^{-1} abar = pi * (abar/p) stays integral.
 */
IdentityReport check_fiber_ladder_step(const Lattice& lat, const SplitPrime& sp,
                                       int n, const QuadInt& alpha,
                                       const mpz_class& abar, const mpz_class& b);

/**
 * Norm across one unit column at level n >= 1:
 *   prod_{b in (Z/p^n)^x} theta_a(a w1_n + b w2_n)
 *     = theta_a(pibar^n a w1_n) / theta_a(pibar^{n-1} a w1_n).
 */
IdentityReport check_column_norm_step(const Lattice& lat, const SplitPrime& sp,
                                      int n, const QuadInt& alpha,
                                      const mpz_class& a);

/**
 * The two twist constants mod p^n, with x = i^{m-1}(pi), y = i^{m-1}(pibar):
 *   fiber  = 1/(1-x) + 1/(1-y) - 1 = (1-xy)/((1-x)(1-y))
 *   column = (1-y)/(1-x) + y      = (1-xy)/(1-x)
 * Both lie in 1 + pZ_p for interior m (m1, m2 >= 2); asserted here.
 * Throws NonInvertibleDenominator when a needed 1 - i^{m-1}(.) is not a unit.
 */
struct ExponentConstants {
    mpz_class fiber;
    mpz_class column;
};

ExponentConstants exponent_constants(std::pair<long, long> m, const SplitPrime& sp,
                                     int n);

/**
 * The full identity battery: distribution, Galois action, cross- and norm
 * relations over all nine fields, plus the d=1, p=5 basis-rearrangement steps
 * at levels 1 and 2. Reports come back in a deterministic order regardless of
 * thread count.
 */
std::vector<IdentityReport> run_identity_suite(const PrecisionContext& prec,
                                               std::uint64_t seed, int threads);

}  // namespace cmunits
