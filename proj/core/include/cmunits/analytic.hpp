#pragma once

#include <array>
#include <string>
#include <vector>

#include "cmunits/field.hpp"
#include "cmunits/real.hpp"

namespace cmunits {

/** Working precision plus the derived identity tolerance 2^(-B/2+8). */
struct PrecisionContext {
    long bits;
    Real tol;

    explicit PrecisionContext(long b = 256);
};

/**
 * The normalized CM lattice Z + Z*omega together with the series caches the
 * evaluators need: the nome q = e^{2 pi i tau}, the discriminant, and the
 * z-independent part of the wp series. Built once, read-only afterwards.
 */
struct Lattice {
    const FieldContext* F;
    long bits;
    Complex tau;       // = omega, upper half-plane
    Complex q;
    Real two_pi;
    Complex delta;     // Delta(L)
    Complex wp_c0;     // 1/12 - 2 sum q^n/(1-q^n)^2
};

Lattice make_lattice(const FieldContext& F, const PrecisionContext& prec);

/** Exact lattice coordinates of the torsion point r/mu, reduced into [0,1)^2. */
std::array<mpq_class, 2> torsion_coords(const QuadInt& r, const QuadInt& mu);

/** wp at exact lattice coordinates (x, y), i.e. z = x + y*omega. */
Complex wp(const Lattice& lat, const mpq_class& x, const mpq_class& y);
/** wp at a complex coordinate; reduces into the fundamental parallelogram. */
Complex wp(const Lattice& lat, const Complex& z);

Complex discriminant(const Lattice& lat);
/** Delta for a general oriented lattice Z*w1 + Z*w2, via normalization. */
Complex discriminant(const Complex& w1, const Complex& w2, long bits);

struct TorsionPoint {
    QuadInt modulus;    // mu
    QuadInt residue;    // r mod (mu)
    mpq_class x, y;     // exact coordinates of r/mu in [0,1)^2
    Complex z;
    bool primitive;
    std::string level;
};

/**
 * All N(mu) residue classes of E[mu] (or the primitive subset), enumerated in
 * the deterministic Hermite-box order. The zero class is included only when
 * primitive_only is false.
 */
std::vector<TorsionPoint> torsion_points(const Lattice& lat, const QuadInt& mu,
                                         bool primitive_only);

struct ThetaValue {
    Complex value;
    Real log_abs;
    Real arg;          // unreduced branch accumulator
    std::string tag;
};

/**
 * theta_a = alpha^{-12} Delta^{N(a)-1} prod_{nu in E[a]\0} (wp(z)-wp(nu))^{-6}
 * for a principal ideal a = (alpha) prime to 6. Construction precomputes the
 * wp values at the divisor so repeated evaluations stay cheap; evaluation is
 * pure and thread-safe afterwards.
 */
class ThetaFn {
public:
    ThetaFn(const Lattice& lat, const QuadInt& alpha);

    ThetaValue operator()(const mpq_class& x, const mpq_class& y) const;
    ThetaValue operator()(const std::array<mpq_class, 2>& z) const;
    ThetaValue operator()(const Complex& z) const;
    ThetaValue operator()(const TorsionPoint& P) const;

    const QuadInt& ideal_generator() const { return alpha_; }
    long ideal_norm() const { return na_; }

private:
    const Lattice* lat_;
    QuadInt alpha_;
    long na_;
    Real log_pre_, arg_pre_;
    Complex pre_;                                  // alpha^{-12} Delta^{N-1}
    std::vector<std::array<mpq_class, 2>> div_;    // E[alpha] \ 0 coordinates
    std::vector<Complex> wp_div_;
};

/** One-off evaluation; prefer ThetaFn when evaluating many points. */
ThetaValue theta_a(const Lattice& lat, const QuadInt& alpha, const Complex& z);

}  // namespace cmunits
