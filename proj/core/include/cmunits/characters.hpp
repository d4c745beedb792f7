#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cmunits/analytic.hpp"
#include "cmunits/field.hpp"
#include "cmunits/padic.hpp"

namespace cmunits {

/**
 * The Galois frame at level one: canonical orbit representatives of
 * (O_K/p)^x modulo the image of O_K^x, with the group law on orbit indices.
 * Orbit keys are CRT pairs (value mod pi, value mod conj pi); the canonical
 * representative is the lexicographically smallest pair in the unit orbit.
 */
struct Transversal {
    const FieldContext* F;
    SplitPrime sp;
    PadicEmbed embed;                        // level-1 reduction maps
    std::vector<QuadInt> reps;               // residue_transversal order
    std::vector<std::pair<long, long>> crt;  // CRT pair of each representative
    std::vector<long> unit_images;           // i1-images of O_K^x

    std::size_t size() const { return reps.size(); }
    long p() const { return sp.p; }

    /** Orbit index of the residue class with CRT pair (c1, c2); folds first. */
    std::size_t index_of(long c1, long c2) const;
    /** Orbit index of reps[j] * reps[k]. */
    std::size_t mul(std::size_t j, std::size_t k) const;
    /** Orbit index of reps[j]^{-1}. */
    std::size_t inv(std::size_t j) const;

    std::map<std::pair<long, long>, std::size_t> orbit_index;
};

Transversal make_transversal(const FieldContext& F, const SplitPrime& sp);

/**
 * An algebraic number given through its Galois-conjugate vector, one entry
 * per transversal representative, together with the recognized minimal
 * polynomial over O_K (ascending coefficients, monic). Repeated entries are
 * collapsed at recognition time, so the polynomial degree is the number of
 * distinct conjugates. rounding_residual is the largest coefficient rounding
 * error relative to the coefficient magnitude; recognition demands it stay
 * below 2^(-bits/2+8).
 */
struct AlgebraicUnit {
    const FieldContext* F;
    std::vector<Complex> conjugates;
    std::vector<QuadInt> minpoly;
    Real rounding_residual;
    long bits;
};

/**
 * Collapses the conjugate vector (relative threshold 2^(-bits/2)), checks the
 * distinct values appear with a common multiplicity, expands prod (X - v) and
 * rounds every coefficient to the nearest O_K lattice point. Throws
 * RecognitionFailure when the vector is not a union of equal-size packets or
 * the rounding residual exceeds tolerance (precision too low).
 */
AlgebraicUnit recognize_unit(const FieldContext& F, std::vector<Complex> conjugates, long bits);

/**
 * Conjugate vector of theta_a at a torsion point: entry j is theta_a at
 * reps[j] * base. Requires base primitive for its modulus and the ideal (a)
 * prime to 6 times the modulus.
 */
AlgebraicUnit conjugate_vector(const Lattice& lat, const QuadInt& alpha, const TorsionPoint& base,
                               const Transversal& tv);

/**
 * Weighted Galois product prod_c conj(c)^{e_c} with e_c the mod-p character
 * value chi^{m-1}(c) represented in [0, p-1]. The result's conjugate vector
 * is re-labelled through the group law (entry j collects exponent e at index
 * j^{-1} k for source entry k) and re-recognized.
 */
AlgebraicUnit isotypic_product(const AlgebraicUnit& u, const Transversal& tv,
                               std::pair<long, long> m);

/**
 * Both computation paths for the level-one unit attached to the weight m and
 * the auxiliary ideal (alpha). `direct` multiplies independently evaluated
 * theta values over the full residue grid (interior m) or one fiber (edge m);
 * `projection` folds the unit orbit into weights over the transversal values.
 * Interior weights satisfy projection = direct exactly; for an edge weight
 * (m2 = 1 or m1 = 1) projection = direct^{p-1}. `gap` is the largest relative
 * deviation from that relation across the conjugate vector.
 */
struct EpsilonPipelines {
    std::vector<Complex> direct;
    std::vector<Complex> projection;
    Real gap;
    long fold_power;  // 1 interior, p-1 edge
};

EpsilonPipelines epsilon_pipelines(const Lattice& lat, const SplitPrime& sp,
                                   std::pair<long, long> m, const QuadInt& alpha);

/**
 * The level-one unit class representative for weight m: the unit-folded
 * projection of the theta conjugate vector at the base point omega (interior)
 * or at the one-sided base (edge). Verifies the two pipelines first and
 * throws PipelineMismatch if they disagree beyond tolerance. Requires
 * m >= (1,1), m != (1,1), (alpha) prime to 6p, and the admissibility
 * condition N(alpha) != chi^{1-m}(alpha) mod p (AdmissibilityError).
 */
AlgebraicUnit epsilon_m1a(const Lattice& lat, const SplitPrime& sp, std::pair<long, long> m,
                          const QuadInt& alpha);

enum class PowerVerdict { NonPower, LikelyPower, Inconclusive };

/** One power-residue sample: minpoly root x mod (q, omega - w), zeta = x^((q-1)/p). */
struct PowerWitness {
    long q;
    long omega_root;
    long unit_root;
    long zeta;
    bool witness;  // zeta != 1 proves the value is not a p-th power
};

struct PowerTestReport {
    PowerVerdict verdict;
    std::vector<PowerWitness> records;
    long primes_used;  // distinct usable q
    std::string note;
};

/**
 * Scans rational primes q = 1 mod p that split the field polynomial, reduces
 * the minimal polynomial modulo each prime (q, omega - w) and tests every
 * root's p-th power residue. Any residue != 1 proves NonPower; `trials`
 * distinct usable q all passing returns LikelyPower (probabilistic, not a
 * proof); fewer usable q below q_bound returns Inconclusive, none at all
 * throws SearchExhausted.
 */
PowerTestReport pth_power_test(const AlgebraicUnit& u, long p, int trials,
                               long q_bound = 100000);

enum class Surjectivity { Surjective, NotSurjective, Inconclusive, TriviallyZero };

/** External class-number facts; absent facts never get assumed. */
struct VerdictConfig {
    std::optional<bool> h_mod_p_coprime;       // class number of K(p) prime to p
    std::optional<bool> h_mod_pi_coprime;      // class number of K(pi) prime to p
    std::optional<bool> h_mod_pibar_coprime;   // class number of K(conj pi) prime to p
    std::optional<bool> unique_prime_above_pi; // unique prime of K(p) above (pi)
};

struct SurjectivityVerdict {
    int d;
    long p;
    std::pair<long, long> m;
    Surjectivity verdict;
    std::vector<std::string> evidence;
    std::optional<bool> frobenius_generates;  // set on the m_i = 1 mod p-1 interior route
    std::optional<PowerTestReport> power_test;
    std::optional<AlgebraicUnit> unit;
};

const char* to_string(Surjectivity v);
const char* to_string(PowerVerdict v);

/**
 * Decision procedure for mod-p surjectivity of the weight-m character.
 * Index filter first (TriviallyZero outside m1 = m2 mod w_K or at (1,1)),
 * then the two unconditional weight classes (no numerics), then configured
 * class-number facts, and finally the unit-class criterion via epsilon and
 * the p-th power test; a NonPower outcome proves Surjective, anything weaker
 * stays Inconclusive. alpha, when absent, is chosen as the smallest
 * admissible auxiliary ideal.
 */
SurjectivityVerdict surjectivity_verdict(int d, long p, std::pair<long, long> m,
                                         std::optional<QuadInt> alpha = {},
                                         const VerdictConfig& cfg = {},
                                         const PrecisionContext& prec = PrecisionContext(2048),
                                         int trials = 4);

}  // namespace cmunits
