#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "cmunits/errors.hpp"

namespace cmunits {

class QuadInt;

/**
 * One of the nine imaginary quadratic fields K = Q(sqrt(-d)) whose ring of
 * integers O_K = Z[omega] has class number one. When -d = 1 mod 4 the ring
 * generator is omega = (1+sqrt(-d))/2, otherwise omega = sqrt(-d); both cases
 * are handled uniformly through trace and norm of omega:
 *
 *     omega^2 = omega_trace * omega - omega_norm.
 *
 * Contexts live in a static registry, so FieldContext pointers obtained from
 * make_field stay valid for the program lifetime and elements can share them.
 */
struct FieldContext {
    int d;
    bool half_omega;     // omega = (1+sqrt(-d))/2
    long omega_trace;    // 0 or 1
    long omega_norm;     // d, or (1+d)/4 in the half case
    long discriminant;   // -4d or -d
    int w;               // order of the unit group
    std::vector<QuadInt> units;

    std::string name() const { return "Q(sqrt(-" + std::to_string(d) + "))"; }
};

/** Exact element a + b*omega of O_K. */
class QuadInt {
public:
    QuadInt() : F_(nullptr) {}
    QuadInt(const FieldContext& F, mpz_class a, mpz_class b)
        : a_(std::move(a)), b_(std::move(b)), F_(&F) {}
    QuadInt(const FieldContext& F, long a, long b) : a_(a), b_(b), F_(&F) {}

    const FieldContext& field() const { return *F_; }
    const mpz_class& a() const { return a_; }
    const mpz_class& b() const { return b_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }
    bool is_unit() const { return norm() == 1; }

    mpz_class norm() const {
        return a_ * a_ + F_->omega_trace * a_ * b_ + F_->omega_norm * b_ * b_;
    }
    mpz_class trace() const { return 2 * a_ + F_->omega_trace * b_; }
    QuadInt conj() const { return QuadInt(*F_, a_ + F_->omega_trace * b_, -b_); }

    QuadInt operator-() const { return QuadInt(*F_, -a_, -b_); }
    friend QuadInt operator+(const QuadInt& x, const QuadInt& y) {
        return QuadInt(*x.F_, x.a_ + y.a_, x.b_ + y.b_);
    }
    friend QuadInt operator-(const QuadInt& x, const QuadInt& y) {
        return QuadInt(*x.F_, x.a_ - y.a_, x.b_ - y.b_);
    }
    friend QuadInt operator*(const QuadInt& x, const QuadInt& y) {
        const FieldContext& F = *x.F_;
        mpz_class cross = x.b_ * y.b_;
        return QuadInt(F, x.a_ * y.a_ - F.omega_norm * cross,
                       x.a_ * y.b_ + x.b_ * y.a_ + F.omega_trace * cross);
    }
    friend QuadInt operator*(const QuadInt& x, const mpz_class& s) {
        return QuadInt(*x.F_, x.a_ * s, x.b_ * s);
    }
    friend QuadInt operator*(const mpz_class& s, const QuadInt& x) { return x * s; }
    friend bool operator==(const QuadInt& x, const QuadInt& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.F_ == y.F_;
    }
    friend bool operator!=(const QuadInt& x, const QuadInt& y) { return !(x == y); }

    QuadInt pow(unsigned long e) const;

    /** Compact "a+bw" rendering, e.g. "1-2w", "w", "-3". */
    std::string str() const;

private:
    mpz_class a_, b_;
    const FieldContext* F_;
};

/** A rational prime p = pi * pi_bar split in O_K, with canonical generators. */
struct SplitPrime {
    long p;
    QuadInt pi;
    QuadInt pi_bar;
};

/** Context for d in {1,2,3,7,11,19,43,67,163}; throws UnsupportedField otherwise. */
const FieldContext& make_field(int d);

/**
 * Factors (p) = (pi)(conj pi) by solving the norm equation N(pi) = p.
 * The returned generator is canonical: among the 2*w candidates
 * {u*pi, u*conj(pi) : u unit}, the lexicographically smallest (a,b) with a > 0.
 * Throws InertPrime / RamifiedPrime when p does not split.
 */
SplitPrime split_prime(const FieldContext& F, long p);

/** Exact quotient x/y; throws NotDivisible when y does not divide x. */
QuadInt exact_divide(const QuadInt& x, const QuadInt& y);

/** True iff y | x in O_K. */
bool divides(const QuadInt& y, const QuadInt& x);

/**
 * Transversal of im(O_K^x) inside (O_K/p)^x: exactly (p-1)^2/w elements,
 * each reduced into the coordinate box [0,p-1]^2, ordered by their CRT
 * coordinate pair (value mod pi, value mod conj(pi)), smallest orbit
 * representative first.
 */
std::vector<QuadInt> residue_transversal(const FieldContext& F, const SplitPrime& sp);

/** Parses "a+b*w" style literals ("3+2w", "-w", "5", "110-133w"). */
QuadInt parse_quadint(const FieldContext& F, const std::string& text);

/** A prime ideal above ell, represented by a membership test. */
struct PrimeIdealFactor {
    long ell;
    bool inert;
    long omega_root;  // omega = omega_root mod the ideal, when not inert

    bool contains(const QuadInt& x) const;
    mpz_class ideal_norm() const {
        return inert ? mpz_class(ell) * ell : mpz_class(ell);
    }
};

/** The distinct prime ideals dividing (mu), mu nonzero. */
std::vector<PrimeIdealFactor> prime_ideal_divisors(const QuadInt& mu);

/** True iff the ideals (x) and (mu) share no prime divisor. */
bool coprime_ideal(const QuadInt& x, const QuadInt& mu);

/** #(O_K/mu)^x, by the product formula over prime divisors. */
mpz_class euler_phi_ideal(const QuadInt& mu);

/**
 * Hermite-form fundamental box for O_K/(mu): residues s + t*omega with
 * 0 <= s < h00, 0 <= t < h11, where h00*h11 = N(mu). reduce() maps any
 * element to its canonical box representative; all() enumerates the box in
 * lexicographic (s, t) order.
 */
struct ResidueBox {
    const FieldContext* F;
    QuadInt mu;
    mpz_class h00, h01, h11;  // lattice basis (h00, 0), (h01, h11)

    QuadInt reduce(const QuadInt& x) const;
    std::vector<QuadInt> all() const;
};

ResidueBox residue_box(const QuadInt& mu);

}  // namespace cmunits
