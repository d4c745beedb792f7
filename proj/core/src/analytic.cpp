#include "cmunits/analytic.hpp"

#include <stdexcept>
#include <utility>

#include "cmunits/errors.hpp"
#include "cmunits/modarith.hpp"

namespace cmunits {

namespace {

mpq_class mod1(const mpq_class& x) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    mpq_class r = x - mpq_class(fl);
    r.canonicalize();
    return r;
}

// Fold into [-1/2, 1/2) for distance-to-lattice measurements.
mpq_class symm(const mpq_class& x) {
    mpq_class r = mod1(x);
    if (r >= mpq_class(1, 2)) r -= 1;
    return r;
}

Complex embed_tau(const Lattice& lat, const Real& x, const Real& y) {
    return Complex(x + y * lat.tau.re, y * lat.tau.im);
}

// Series core shared by both wp entry points. Expects coordinates reduced to
// [0,1)^2 and not both ~0; folds y > 1/2 through evenness so |q|^{1/2} bounds
// the u-offset and the tail stays geometric in |q|.
Complex wp_series(const Lattice& lat, Real x, Real y) {
    long bits = lat.bits;
    Real half(1, bits);
    half.mul_2si(-1);
    if (y > half || (y == half && !(x < half))) {
        // wp(-z) = wp(z); replace (x,y) by (-x,-y) mod 1
        if (!x.is_zero()) x = Real(1, bits) - x;
        if (!y.is_zero()) y = Real(1, bits) - y;
    }

    // u = e^{2 pi i (x + y tau)}
    Real ang = lat.two_pi * (x + y * lat.tau.re);
    Real mag = exp(-(lat.two_pi * (y * lat.tau.im)));
    Complex u = expi(ang) * mag;

    Complex one = Complex::one(bits);
    Complex d0 = one - u;
    Complex S = lat.wp_c0 + u * (d0 * d0).inverse();

    Real cutoff = Real::pow2(-bits - 32, bits);
    Complex qn = one;
    Complex uinv = u.inverse();
    for (long n = 1;; ++n) {
        qn *= lat.q;
        Complex a = qn * u;
        Complex b = qn * uinv;
        Complex da = one - a;
        Complex db = one - b;
        S += a * (da * da).inverse() + b * (db * db).inverse();
        if (a.abs() < cutoff && b.abs() < cutoff) break;
        if (n > 64 * bits) throw std::logic_error("wp series did not converge");
    }

    Real pi2 = lat.two_pi * lat.two_pi;  // (2 pi)^2
    return Complex(-(pi2 * S.re), -(pi2 * S.im));
}

}  // namespace

PrecisionContext::PrecisionContext(long b) : bits(b), tol(Real(1, b >= 128 ? b : 128)) {
    if (b < 128) throw std::invalid_argument("precision below the 128-bit floor");
    tol = Real::pow2(-bits / 2 + 8, bits);
}

Lattice make_lattice(const FieldContext& F, const PrecisionContext& prec) {
    Lattice lat{&F, prec.bits, Complex(prec.bits), Complex(prec.bits),
                Real(prec.bits), Complex(prec.bits), Complex(prec.bits)};
    long bits = prec.bits;

    // tau = omega: either sqrt(d) i or (1 + sqrt(d) i)/2; Im tau > 0 already.
    Real sd = sqrt(Real(F.d, bits));
    if (F.half_omega) {
        Real h(1, bits);
        h.mul_2si(-1);
        lat.tau = Complex(h, sd * Real(mpq_class(1, 2), bits));
    } else {
        lat.tau = Complex(Real(bits), sd);
    }
    // CM stability: omega * omega = t*omega - n lands back in Z + Z*omega.
    {
        const FieldContext& f = F;
        QuadInt w(f, 0, 1);
        QuadInt ww = w * w;
        if (ww.b() != f.omega_trace || ww.a() != -mpz_class(f.omega_norm))
            throw std::logic_error("lattice not stable under omega");
    }

    lat.two_pi = Real::pi(bits) * 2;
    lat.q = exp(Complex(-(lat.two_pi * lat.tau.im), lat.two_pi * lat.tau.re));

    Real cutoff = Real::pow2(-bits - 32, bits);
    Complex one = Complex::one(bits);

    // wp constant: 1/12 - 2 sum_{n>=1} q^n/(1-q^n)^2
    Complex c(Real(mpq_class(1, 12), bits), Real(bits));
    Complex qn = one;
    for (long n = 1;; ++n) {
        qn *= lat.q;
        Complex d = one - qn;
        Complex term = qn * (d * d).inverse();
        c -= term + term;
        if (qn.abs() < cutoff) break;
        if (n > 64 * bits) throw std::logic_error("wp constant did not converge");
    }
    lat.wp_c0 = c;

    // Delta = (2 pi)^12 q prod (1-q^n)^24
    Complex prod = one;
    qn = one;
    for (long n = 1;; ++n) {
        qn *= lat.q;
        prod *= (one - qn);
        if (qn.abs() < cutoff) break;
        if (n > 64 * bits) throw std::logic_error("Delta product did not converge");
    }
    Complex tp(lat.two_pi, Real(bits));
    lat.delta = tp.pow_si(12) * lat.q * prod.pow_si(24);
    return lat;
}

std::array<mpq_class, 2> torsion_coords(const QuadInt& r, const QuadInt& mu) {
    QuadInt num = r * mu.conj();
    mpz_class n = mu.norm();
    return {mod1(mpq_class(num.a(), n)), mod1(mpq_class(num.b(), n))};
}

Complex wp(const Lattice& lat, const mpq_class& x, const mpq_class& y) {
    mpq_class xr = mod1(x), yr = mod1(y);
    if (xr == 0 && yr == 0) throw PoleAtLatticePoint();
    return wp_series(lat, Real(xr, lat.bits), Real(yr, lat.bits));
}

Complex wp(const Lattice& lat, const Complex& z) {
    long bits = lat.bits;
    Real y = z.im / lat.tau.im;
    Real x = z.re - y * lat.tau.re;
    x = x - floor(x);
    y = y - floor(y);
    Real near = Real::pow2(-bits / 2, bits);
    Real dx = abs(x - round_nearest(x)), dy = abs(y - round_nearest(y));
    if (dx < near && dy < near) throw PoleAtLatticePoint();
    return wp_series(lat, std::move(x), std::move(y));
}

Complex discriminant(const Lattice& lat) { return lat.delta; }

Complex discriminant(const Complex& w1, const Complex& w2, long bits) {
    if (w1.is_zero()) throw std::invalid_argument("degenerate lattice");
    Complex tau = w2 / w1;
    if (tau.im.is_zero()) throw std::invalid_argument("degenerate lattice");
    if (tau.im.sgn() < 0) tau = -tau;

    Real two_pi = Real::pi(bits) * 2;
    Complex q = exp(Complex(-(two_pi * tau.im), two_pi * tau.re));
    Real cutoff = Real::pow2(-bits - 32, bits);
    Complex one = Complex::one(bits);
    Complex prod = one, qn = one;
    for (long n = 1;; ++n) {
        qn *= q;
        prod *= (one - qn);
        if (qn.abs() < cutoff) break;
        if (n > 64 * bits) throw std::logic_error("Delta product did not converge");
    }
    Complex tp(two_pi, Real(bits));
    return w1.pow_si(-12) * tp.pow_si(12) * q * prod.pow_si(24);
}

std::vector<TorsionPoint> torsion_points(const Lattice& lat, const QuadInt& mu,
                                         bool primitive_only) {
    if (mu.is_zero() || mu.norm() == 1)
        throw std::invalid_argument("torsion modulus must be a nonzero non-unit");

    ResidueBox box = residue_box(mu);
    auto divisors = prime_ideal_divisors(mu);
    std::vector<TorsionPoint> out;
    for (const QuadInt& r : box.all()) {
        bool prim = !r.is_zero();
        for (const auto& q : divisors)
            if (q.contains(r)) { prim = false; break; }
        if (primitive_only && !prim) continue;
        auto xy = torsion_coords(r, mu);
        Complex z = embed_tau(lat, Real(xy[0], lat.bits), Real(xy[1], lat.bits));
        out.push_back(TorsionPoint{mu, r, xy[0], xy[1], std::move(z), prim,
                                   (prim ? "primitive for (" : "imprimitive for (") +
                                       mu.str() + ")"});
    }
    return out;
}

ThetaFn::ThetaFn(const Lattice& lat, const QuadInt& alpha)
    : lat_(&lat),
      alpha_(alpha),
      na_(0),
      log_pre_(lat.bits),
      arg_pre_(lat.bits),
      pre_(lat.bits) {
    mpz_class n = alpha.norm();
    if (n <= 1) throw std::invalid_argument("theta ideal must be a nonzero non-unit");
    if (gcd(n, mpz_class(6)) != 1)
        throw std::invalid_argument("theta ideal must be prime to 6");
    na_ = n.get_si();

    long bits = lat.bits;
    Complex ac = Complex(Real(alpha.a(), bits), Real(bits)) +
                 Complex(Real(alpha.b(), bits), Real(bits)) * lat.tau;
    Complex a12 = ac.pow_si(-12);
    Complex dpow = lat.delta.pow_si(na_ - 1);
    pre_ = a12 * dpow;
    log_pre_ = log(ac.abs()) * (-12L) + log(lat.delta.abs()) * (na_ - 1);
    arg_pre_ = ac.arg() * (-12L) + lat.delta.arg() * (na_ - 1);

    for (const auto& P : torsion_points(lat, alpha, false)) {
        if (P.residue.is_zero()) continue;
        div_.push_back({P.x, P.y});
        wp_div_.push_back(wp(lat, P.x, P.y));
    }
}

ThetaValue ThetaFn::operator()(const mpq_class& x, const mpq_class& y) const {
    long bits = lat_->bits;
    mpq_class xr = mod1(x), yr = mod1(y);

    // Divisor proximity: distance to E[alpha] (the zero at O included)
    // measured in the complex plane, threshold 2^{-B/4}.
    Real thresh = Real::pow2(-bits / 4, bits);
    auto dist_to = [&](const mpq_class& px, const mpq_class& py) {
        Real dx(symm(xr - px), bits);
        Real dy(symm(yr - py), bits);
        return embed_tau(*lat_, dx, dy).abs();
    };
    if (dist_to(0, 0) < thresh) throw EvaluationAtDivisor();
    for (const auto& p : div_)
        if (dist_to(p[0], p[1]) < thresh) throw EvaluationAtDivisor();

    Complex px = wp(*lat_, xr, yr);
    Complex acc = Complex::one(bits);
    Real lg(bits), ar(bits);
    for (const auto& wv : wp_div_) {
        Complex f = px - wv;
        acc *= f;
        lg += log(f.abs());
        ar += f.arg();
    }
    ThetaValue out{pre_ * acc.pow_si(-6), log_pre_ - lg * 6L, arg_pre_ - ar * 6L,
                   "theta_(" + alpha_.str() + ") at (" + xr.get_str() + "," +
                       yr.get_str() + ")"};
    if (out.value.is_zero()) throw EvaluationAtDivisor();
    return out;
}

ThetaValue ThetaFn::operator()(const std::array<mpq_class, 2>& z) const {
    return (*this)(z[0], z[1]);
}

ThetaValue ThetaFn::operator()(const TorsionPoint& P) const { return (*this)(P.x, P.y); }

ThetaValue ThetaFn::operator()(const Complex& z) const {
    long bits = lat_->bits;
    Real y = z.im / lat_->tau.im;
    Real x = z.re - y * lat_->tau.re;
    x = x - floor(x);
    y = y - floor(y);

    Real thresh = Real::pow2(-bits / 4, bits);
    auto dist_xy = [&](const Real& px, const Real& py) {
        Real dx = x - px, dy = y - py;
        dx = dx - round_nearest(dx);
        dy = dy - round_nearest(dy);
        return embed_tau(*lat_, dx, dy).abs();
    };
    Real zero(bits);
    if (dist_xy(zero, zero) < thresh) throw EvaluationAtDivisor();
    for (const auto& p : div_)
        if (dist_xy(Real(p[0], bits), Real(p[1], bits)) < thresh)
            throw EvaluationAtDivisor();

    Complex px = wp_series(*lat_, x, y);
    Complex acc = Complex::one(bits);
    Real lg(bits), ar(bits);
    for (const auto& wv : wp_div_) {
        Complex f = px - wv;
        acc *= f;
        lg += log(f.abs());
        ar += f.arg();
    }
    ThetaValue out{pre_ * acc.pow_si(-6), log_pre_ - lg * 6L, arg_pre_ - ar * 6L,
                   "theta_(" + alpha_.str() + ")"};
    if (out.value.is_zero()) throw EvaluationAtDivisor();
    return out;
}

ThetaValue theta_a(const Lattice& lat, const QuadInt& alpha, const Complex& z) {
    return ThetaFn(lat, alpha)(z);
}

}  // namespace cmunits
