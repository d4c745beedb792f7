#include "cmunits/padic.hpp"

#include <numeric>
#include <stdexcept>

#include "cmunits/errors.hpp"
#include "cmunits/modarith.hpp"

namespace cmunits {

namespace {

mpz_class mod_inverse(const mpz_class& x, const mpz_class& m, const char* where) {
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()) == 0) throw NonInvertible(where);
    return r;
}

mpz_class mod_pow(const mpz_class& base, const mpz_class& e, const mpz_class& m) {
    mpz_class r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

}  // namespace

PadicEmbed hensel_embed(const SplitPrime& sp, int n) {
    if (n < 1) throw std::invalid_argument("hensel_embed: level must be >= 1");
    const FieldContext& F = sp.pi.field();
    mpz_class p(sp.p);

    // level-1 root on the (pi) side: pi = a + b*omega = 0 mod (pi)
    mpz_class b = sp.pi.b() % p;
    mpz_class r = (-sp.pi.a() * mod_inverse(b, p, "hensel_embed")) % p;
    if (r < 0) r += p;

    // Newton iteration on g(x) = x^2 - tr(omega) x + N(omega); the derivative
    // g'(r) = 2r - tr stays a unit mod p because the two roots are distinct
    mpz_class t(F.omega_trace), nm(F.omega_norm);
    mpz_class modulus = p;
    mpz_class pn;
    mpz_pow_ui(pn.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(n));
    while (modulus < pn) {
        modulus = modulus * modulus;
        if (modulus > pn) modulus = pn;
        mpz_class g = (r * r - t * r + nm) % modulus;
        mpz_class dg = (2 * r - t) % modulus;
        r = (r - g * mod_inverse(dg, modulus, "hensel_embed")) % modulus;
        if (r < 0) r += modulus;
    }

    PadicEmbed e;
    e.sp = sp;
    e.n = n;
    e.pn = pn;
    e.r1 = r;
    e.r2 = (t - r) % pn;  // conjugate root: the trace splits between the sides
    if (e.r2 < 0) e.r2 += pn;
    if (e.i1(sp.pi) % p != 0 || e.i2(sp.pi_bar) % p != 0)
        throw std::logic_error("hensel_embed: side labeling inconsistent");
    return e;
}

mpz_class i_power(const PadicEmbed& e, std::pair<long, long> m, const QuadInt& x) {
    auto one_side = [&](const mpz_class& v, long exp) -> mpz_class {
        if (exp == 0) return mpz_class(1);
        mpz_class base = exp < 0 ? mod_inverse(v, e.pn, "i_power") : v;
        unsigned long a = exp < 0 ? static_cast<unsigned long>(-exp) : static_cast<unsigned long>(exp);
        return mod_pow(base, mpz_class(a), e.pn);
    };
    return (one_side(e.i1(x), m.first) * one_side(e.i2(x), m.second)) % e.pn;
}

bool purely_local_test(const SplitPrime& sp, Side side) {
    PadicEmbed e = hensel_embed(sp, 2);
    // x = 1 mod (prime)^2  <=>  its level-2 image is 1 mod p^2
    mpz_class img = side == Side::pi_bar ? e.i2(sp.pi) : e.i1(sp.pi_bar);
    mpz_class fq = mod_pow(img, mpz_class(sp.p - 1), e.pn);
    return fq != 1;
}

bool frobenius_generates_test(const SplitPrime& sp) {
    const FieldContext& F = sp.pi.field();
    uint64_t p = static_cast<uint64_t>(sp.p);
    PadicEmbed e = hensel_embed(sp, 1);
    uint64_t g = e.i2(sp.pi).get_ui();
    // order of the class of g in F_p^x / (unit image, the subgroup of order w)
    uint64_t ord = modarith::mult_order(g, p);
    uint64_t w = static_cast<uint64_t>(F.w);
    uint64_t class_order = ord / std::gcd(ord, w);
    return class_order == (p - 1) / w;
}

}  // namespace cmunits
