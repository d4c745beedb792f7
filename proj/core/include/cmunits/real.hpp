#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace cmunits {

/**
 * Arbitrary-precision real number. RAII wrapper over mpfr_t: all operations
 * round to nearest and a binary operation carries the larger of the two
 * operand precisions, so precision never degrades silently through a formula.
 */
class Real {
public:
    explicit Real(mpfr_prec_t prec = 128) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    Real(long x, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_si(v_, x, MPFR_RNDN);
    }
    Real(const mpz_class& x, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN);
    }
    Real(const mpq_class& x, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN);
    }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    static Real pi(mpfr_prec_t prec) {
        Real r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }
    /** 2^e at the given precision (exact). */
    static Real pow2(long e, mpfr_prec_t prec) {
        Real r(1L, prec);
        mpfr_mul_2si(r.v_, r.v_, e, MPFR_RNDN);
        return r;
    }
    static Real from_string(const std::string& dec, mpfr_prec_t prec);

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sgn() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
    /** Nearest integer as an exact bigint. */
    mpz_class round_to_mpz() const {
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
        return z;
    }
    /** Decimal string; digits=0 picks enough digits for the precision. */
    std::string str(size_t digits = 0) const;

    Real& operator+=(const Real& o) {
        bump(o);
        mpfr_add(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator-=(const Real& o) {
        bump(o);
        mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator*=(const Real& o) {
        bump(o);
        mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator/=(const Real& o) {
        bump(o);
        mpfr_div(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator*=(long x) {
        mpfr_mul_si(v_, v_, x, MPFR_RNDN);
        return *this;
    }
    Real& mul_2si(long e) {
        mpfr_mul_2si(v_, v_, e, MPFR_RNDN);
        return *this;
    }

    friend Real operator+(Real a, const Real& b) { return a += b; }
    friend Real operator-(Real a, const Real& b) { return a -= b; }
    friend Real operator*(Real a, const Real& b) { return a *= b; }
    friend Real operator/(Real a, const Real& b) { return a /= b; }
    friend Real operator*(Real a, long b) { return a *= b; }
    friend Real operator*(long a, Real b) { return b *= a; }
    friend Real operator-(Real a) {
        mpfr_neg(a.v_, a.v_, MPFR_RNDN);
        return a;
    }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
    friend bool operator!=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) != 0; }
    friend bool operator<(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
    friend bool operator>(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }
    friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }

    friend Real abs(Real a) {
        mpfr_abs(a.v_, a.v_, MPFR_RNDN);
        return a;
    }
    friend Real sqrt(Real a) {
        mpfr_sqrt(a.v_, a.v_, MPFR_RNDN);
        return a;
    }
    friend Real exp(Real a) {
        mpfr_exp(a.v_, a.v_, MPFR_RNDN);
        return a;
    }
    friend Real log(Real a) {
        mpfr_log(a.v_, a.v_, MPFR_RNDN);
        return a;
    }
    friend Real floor(Real a) {
        mpfr_floor(a.v_, a.v_);
        return a;
    }
    friend Real round_nearest(Real a) {
        mpfr_round(a.v_, a.v_);
        return a;
    }
    friend Real atan2(Real y, const Real& x) {
        y.bump(x);
        mpfr_atan2(y.v_, y.v_, x.v_, MPFR_RNDN);
        return y;
    }
    friend Real hypot(Real a, const Real& b) {
        a.bump(b);
        mpfr_hypot(a.v_, a.v_, b.v_, MPFR_RNDN);
        return a;
    }
    /** IEEE-style remainder: a - round(a/b)*b, in [-|b|/2, |b|/2]. */
    friend Real remainder(Real a, const Real& b) {
        a.bump(b);
        mpfr_remainder(a.v_, a.v_, b.v_, MPFR_RNDN);
        return a;
    }
    friend void sin_cos(Real& s, Real& c, const Real& x) {
        mpfr_set_prec(s.v_, mpfr_get_prec(x.v_));
        mpfr_set_prec(c.v_, mpfr_get_prec(x.v_));
        mpfr_sin_cos(s.v_, c.v_, x.v_, MPFR_RNDN);
    }

private:
    // grow to the other operand's precision before a compound op
    void bump(const Real& o) {
        if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_))
            mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);
    }
    mpfr_t v_;
};

/** Complex number over two Reals (rectangular form). */
struct Complex {
    Real re, im;

    explicit Complex(mpfr_prec_t prec = 128) : re(prec), im(prec) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Complex(long r, long i, mpfr_prec_t prec) : re(r, prec), im(i, prec) {}

    static Complex zero(mpfr_prec_t prec) { return Complex(prec); }
    static Complex one(mpfr_prec_t prec) { return Complex(1, 0, prec); }

    mpfr_prec_t prec() const { return std::max(re.prec(), im.prec()); }

    Complex conj() const { return Complex(re, -im); }
    Real abs() const { return hypot(re, im); }
    Real arg() const { return atan2(im, re); }
    Real norm() const { return re * re + im * im; }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    Complex& operator+=(const Complex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Complex& operator-=(const Complex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Complex& operator*=(const Complex& o) {
        Real r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    Complex& operator*=(const Real& s) {
        re *= s;
        im *= s;
        return *this;
    }
    Complex& operator*=(long s) {
        re *= s;
        im *= s;
        return *this;
    }

    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
    friend Complex operator*(Complex a, const Real& s) { return a *= s; }
    friend Complex operator*(const Real& s, Complex a) { return a *= s; }
    friend Complex operator-(Complex a) {
        a.re = -a.re;
        a.im = -a.im;
        return a;
    }

    Complex inverse() const {
        Real n = norm();
        return Complex(re / n, -(im / n));
    }
    friend Complex operator/(Complex a, const Complex& b) { return a *= b.inverse(); }

    /** Integer power by repeated squaring; negative exponents invert first. */
    Complex pow_si(long e) const;

    friend Complex exp(const Complex& z) {
        Real s(z.prec()), c(z.prec());
        sin_cos(s, c, z.im);
        Real m = exp(z.re);
        return Complex(m * c, m * s);
    }
    /** Principal branch: (log|z|, arg z). */
    friend Complex log(const Complex& z) { return Complex(log(z.abs()), z.arg()); }

    std::string str(size_t digits = 0) const;
};

/** e^(i*theta). */
inline Complex expi(const Real& theta) {
    Real s(theta.prec()), c(theta.prec());
    sin_cos(s, c, theta);
    return Complex(std::move(c), std::move(s));
}

}  // namespace cmunits
