#include "cmunits/field.hpp"

#include <array>
#include <cctype>
#include <map>
#include <stdexcept>
#include <utility>

#include "cmunits/modarith.hpp"

namespace cmunits {

namespace {

FieldContext build_context(int d) {
    FieldContext F;
    F.d = d;
    F.half_omega = ((-d) % 4 + 4) % 4 == 1;  // -d = 1 mod 4
    F.omega_trace = F.half_omega ? 1 : 0;
    F.omega_norm = F.half_omega ? (1 + static_cast<long>(d)) / 4 : d;
    F.discriminant = F.half_omega ? -static_cast<long>(d) : -4L * d;
    if (d == 1)
        F.w = 4;
    else if (d == 3)
        F.w = 6;
    else
        F.w = 2;
    return F;
}

void fill_units(FieldContext& F) {
    F.units.emplace_back(F, 1, 0);
    F.units.emplace_back(F, -1, 0);
    if (F.d == 1) {
        F.units.emplace_back(F, 0, 1);
        F.units.emplace_back(F, 0, -1);
    } else if (F.d == 3) {
        // powers of omega = (1+sqrt(-3))/2, a primitive 6th root of unity
        F.units.emplace_back(F, 0, 1);
        F.units.emplace_back(F, -1, 1);
        F.units.emplace_back(F, 0, -1);
        F.units.emplace_back(F, 1, -1);
    }
}

// Lattice basis of the prime ideal (p, omega - r) in (1, omega) coordinates.
struct Vec2 {
    mpz_class x, y;
};

mpz_class form_norm(const FieldContext& F, const Vec2& v) {
    return v.x * v.x + F.omega_trace * v.x * v.y + F.omega_norm * v.y * v.y;
}

// twice the polarization of the norm form: Q(u+v) - Q(u) - Q(v)
mpz_class form_pairing2(const FieldContext& F, const Vec2& u, const Vec2& v) {
    return 2 * u.x * v.x + F.omega_trace * (u.x * v.y + u.y * v.x) +
           2 * F.omega_norm * u.y * v.y;
}

/**
 * Shortest vector of the rank-2 ideal lattice by Lagrange-Gauss reduction;
 * this is Cornacchia's Euclidean descent in lattice form, and for class
 * number one the shortest vector of a split prime ideal is a generator.
 */
Vec2 shortest_ideal_vector(const FieldContext& F, long p, uint64_t r) {
    Vec2 u{mpz_class(p), mpz_class(0)};
    Vec2 v{mpz_class(-static_cast<long>(r)), mpz_class(1)};
    while (true) {
        if (form_norm(F, u) > form_norm(F, v)) std::swap(u, v);
        mpz_class qu = form_norm(F, u);
        mpz_class num = form_pairing2(F, u, v) + qu;  // round(pair2 / 2Qu) as floor
        mpz_class mu;
        mpz_fdiv_q(mu.get_mpz_t(), num.get_mpz_t(), mpz_class(2 * qu).get_mpz_t());
        if (mu == 0) break;
        v.x -= mu * u.x;
        v.y -= mu * u.y;
    }
    return u;
}

}  // namespace

const FieldContext& make_field(int d) {
    static const std::map<int, FieldContext> registry = [] {
        std::map<int, FieldContext> m;
        for (int d : {1, 2, 3, 7, 11, 19, 43, 67, 163}) {
            auto [it, ok] = m.emplace(d, build_context(d));
            (void)ok;
            fill_units(it->second);
        }
        return m;
    }();
    auto it = registry.find(d);
    if (it == registry.end()) throw UnsupportedField(d);
    return it->second;
}

QuadInt QuadInt::pow(unsigned long e) const {
    QuadInt acc(*F_, 1, 0);
    QuadInt base = *this;
    while (e) {
        if (e & 1UL) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

std::string QuadInt::str() const {
    if (b_ == 0) return a_.get_str();
    std::string wpart;
    if (b_ == 1)
        wpart = "w";
    else if (b_ == -1)
        wpart = "-w";
    else
        wpart = b_.get_str() + "w";
    if (a_ == 0) return wpart;
    return a_.get_str() + (b_ > 0 ? "+" : "") + wpart;
}

SplitPrime split_prime(const FieldContext& F, long p) {
    if (p < 5) throw std::invalid_argument("split_prime: p must be a prime >= 5");
    if (!modarith::is_prime(static_cast<uint64_t>(p)))
        throw std::invalid_argument("split_prime: p must be a prime >= 5");
    long disc_mod = ((F.discriminant % p) + p) % p;
    if (disc_mod == 0) throw RamifiedPrime(p, F.d);
    if (modarith::legendre(F.discriminant, static_cast<uint64_t>(p)) != 1)
        throw InertPrime(p, F.d);

    // root of x^2 - tr(omega) x + N(omega) mod p
    uint64_t up = static_cast<uint64_t>(p);
    uint64_t s = modarith::sqrtmod(static_cast<uint64_t>(disc_mod), up);
    uint64_t inv2 = modarith::invmod(2, up);
    uint64_t r = modarith::mulmod((static_cast<uint64_t>(F.omega_trace) + s) % up, inv2, up);

    Vec2 g = shortest_ideal_vector(F, p, r);
    QuadInt pi(F, g.x, g.y);
    if (pi.norm() != p) throw std::logic_error("split_prime: norm equation descent failed");

    // canonical associate: lexicographically smallest (a,b) with a > 0 among
    // all unit multiples of pi and of conj(pi)
    bool have = false;
    QuadInt best;
    for (const QuadInt& u : F.units) {
        for (const QuadInt& cand : {u * pi, u * pi.conj()}) {
            if (cand.a() <= 0) continue;
            if (!have || cand.a() < best.a() ||
                (cand.a() == best.a() && cand.b() < best.b())) {
                best = cand;
                have = true;
            }
        }
    }
    if (!have) throw std::logic_error("split_prime: no candidate with positive first coordinate");
    return SplitPrime{p, best, best.conj()};
}

bool divides(const QuadInt& y, const QuadInt& x) {
    if (y.is_zero()) return x.is_zero();
    QuadInt num = x * y.conj();
    mpz_class den = y.norm();
    return mpz_divisible_p(num.a().get_mpz_t(), den.get_mpz_t()) &&
           mpz_divisible_p(num.b().get_mpz_t(), den.get_mpz_t());
}

QuadInt exact_divide(const QuadInt& x, const QuadInt& y) {
    if (y.is_zero()) throw DivisionByZero("exact_divide");
    QuadInt num = x * y.conj();
    mpz_class den = y.norm();
    if (!mpz_divisible_p(num.a().get_mpz_t(), den.get_mpz_t()) ||
        !mpz_divisible_p(num.b().get_mpz_t(), den.get_mpz_t()))
        throw NotDivisible(x.str() + " by " + y.str());
    return QuadInt(x.field(), num.a() / den, num.b() / den);
}

std::vector<QuadInt> residue_transversal(const FieldContext& F, const SplitPrime& sp) {
    uint64_t p = static_cast<uint64_t>(sp.p);
    // level-1 embedding roots: pi = a + b*omega = 0 mod (pi) forces
    // omega = -a/b, and the conjugate likewise on the other side
    auto root_of = [&](const QuadInt& gen) {
        uint64_t a = mpz_class(gen.a() % p + p).get_ui() % p;
        uint64_t b = mpz_class(gen.b() % p + p).get_ui() % p;
        uint64_t binv = modarith::invmod(b, p);
        return modarith::mulmod(p - a, binv, p);
    };
    uint64_t r1 = root_of(sp.pi);
    uint64_t r2 = root_of(sp.pi_bar);
    auto i1 = [&](const QuadInt& x) {
        uint64_t a = mpz_class(x.a() % p + p).get_ui() % p;
        uint64_t b = mpz_class(x.b() % p + p).get_ui() % p;
        return (a + modarith::mulmod(b, r1, p)) % p;
    };
    auto i2 = [&](const QuadInt& x) {
        uint64_t a = mpz_class(x.a() % p + p).get_ui() % p;
        uint64_t b = mpz_class(x.b() % p + p).get_ui() % p;
        return (a + modarith::mulmod(b, r2, p)) % p;
    };

    // unit images in F_p^x; the orbit of (c1,c2) is (z*c1, c2/z)
    std::vector<uint64_t> zs;
    for (const QuadInt& u : F.units) zs.push_back(i1(u));

    // CRT idempotent e2 = 1 mod pi_bar, 0 mod pi
    uint64_t t2 = modarith::invmod(i2(sp.pi), p);
    uint64_t e2a = modarith::mulmod(mpz_class(sp.pi.a() % p + p).get_ui() % p, t2, p);
    uint64_t e2b = modarith::mulmod(mpz_class(sp.pi.b() % p + p).get_ui() % p, t2, p);

    std::vector<QuadInt> out;
    out.reserve((p - 1) * (p - 1) / F.w);
    for (uint64_t c1 = 1; c1 < p; ++c1) {
        for (uint64_t c2 = 1; c2 < p; ++c2) {
            bool minimal = true;
            for (uint64_t z : zs) {
                uint64_t o1 = modarith::mulmod(z, c1, p);
                uint64_t o2 = modarith::mulmod(modarith::invmod(z, p), c2, p);
                if (o1 < c1 || (o1 == c1 && o2 < c2)) {
                    minimal = false;
                    break;
                }
            }
            if (!minimal) continue;
            uint64_t diff = (c2 + p - c1) % p;
            uint64_t x = (c1 + modarith::mulmod(diff, e2a, p)) % p;
            uint64_t y = modarith::mulmod(diff, e2b, p);
            QuadInt c(F, static_cast<long>(x), static_cast<long>(y));
            if (i1(c) != c1 || i2(c) != c2)
                throw std::logic_error("residue_transversal: CRT lift inconsistent");
            out.push_back(std::move(c));
        }
    }
    return out;
}

QuadInt parse_quadint(const FieldContext& F, const std::string& text) {
    // grammar: term (('+'|'-') term)* with term = integer | [integer '*'?] 'w'
    mpz_class a = 0, b = 0;
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    bool first = true;
    while (i < text.size()) {
        int sign = 1;
        skip_ws();
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
            skip_ws();
        } else if (!first) {
            throw std::invalid_argument("parse_quadint: expected '+' or '-' in '" + text + "'");
        }
        first = false;
        std::string digits;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            digits += text[i];
            ++i;
        }
        skip_ws();
        if (i < text.size() && text[i] == '*') {
            ++i;
            skip_ws();
        }
        bool has_w = i < text.size() && (text[i] == 'w' || text[i] == 'W');
        if (has_w) ++i;
        if (digits.empty() && !has_w)
            throw std::invalid_argument("parse_quadint: cannot parse '" + text + "'");
        mpz_class coeff = digits.empty() ? mpz_class(1) : mpz_class(digits);
        if (has_w)
            b += sign * coeff;
        else
            a += sign * coeff;
        skip_ws();
    }
    if (first) throw std::invalid_argument("parse_quadint: empty literal");
    return QuadInt(F, a, b);
}


bool PrimeIdealFactor::contains(const QuadInt& x) const {
    if (inert) return x.a() % ell == 0 && x.b() % ell == 0;
    return mpz_class((x.a() + x.b() * omega_root) % ell) == 0;
}

std::vector<PrimeIdealFactor> prime_ideal_divisors(const QuadInt& mu) {
    if (mu.is_zero()) throw std::invalid_argument("prime_ideal_divisors: zero ideal");
    const FieldContext& F = mu.field();
    mpz_class m = abs(mu.norm());
    std::vector<long> ells;
    for (long ell = 2; mpz_class(ell) * ell <= m; ++ell) {
        if (m % ell == 0) {
            ells.push_back(ell);
            while (m % ell == 0) m /= ell;
        }
    }
    if (m > 1) ells.push_back(m.get_si());

    std::vector<PrimeIdealFactor> out;
    for (long ell : ells) {
        long t = F.omega_trace, nn = F.omega_norm;
        std::vector<long> roots;
        if (ell == 2) {
            for (long r = 0; r < 2; ++r)
                if (((r * r - t * r + nn) % 2 + 2) % 2 == 0) roots.push_back(r);
        } else {
            uint64_t p = static_cast<uint64_t>(ell);
            uint64_t disc = static_cast<uint64_t>(((t * t - 4 * nn) % ell + ell) % ell);
            uint64_t s = modarith::sqrtmod(disc, p);
            if (s != p) {
                uint64_t inv2 = modarith::invmod(2, p);
                uint64_t tp = static_cast<uint64_t>((t % ell + ell) % ell);
                long r1 = static_cast<long>(modarith::mulmod((tp + s) % p, inv2, p));
                long r2 = static_cast<long>(modarith::mulmod((tp + p - s) % p, inv2, p));
                roots.push_back(r1);
                if (r2 != r1) roots.push_back(r2);
            }
        }
        if (roots.empty()) {
            out.push_back({ell, true, 0});
        } else {
            for (long r : roots) {
                PrimeIdealFactor q{ell, false, r};
                if (q.contains(mu)) out.push_back(q);
            }
        }
    }
    return out;
}

bool coprime_ideal(const QuadInt& x, const QuadInt& mu) {
    for (const auto& q : prime_ideal_divisors(mu))
        if (q.contains(x)) return false;
    return true;
}

mpz_class euler_phi_ideal(const QuadInt& mu) {
    mpz_class phi = abs(mu.norm());
    for (const auto& q : prime_ideal_divisors(mu)) {
        mpz_class nq = q.ideal_norm();
        phi = phi / nq * (nq - 1);
    }
    return phi;
}

QuadInt ResidueBox::reduce(const QuadInt& x) const {
    mpz_class b, k;
    mpz_fdiv_qr(k.get_mpz_t(), b.get_mpz_t(), x.b().get_mpz_t(), h11.get_mpz_t());
    mpz_class a = x.a() - k * h01;
    mpz_class q;
    mpz_fdiv_r(q.get_mpz_t(), a.get_mpz_t(), h00.get_mpz_t());
    return QuadInt(*F, q, b);
}

std::vector<QuadInt> ResidueBox::all() const {
    std::vector<QuadInt> out;
    for (mpz_class s = 0; s < h00; ++s)
        for (mpz_class t = 0; t < h11; ++t) out.emplace_back(*F, s, t);
    return out;
}

ResidueBox residue_box(const QuadInt& mu) {
    if (mu.is_zero() || mu.norm() == 1)
        throw std::invalid_argument("residue_box: modulus must be a nonzero non-unit");
    const FieldContext& F = mu.field();
    QuadInt c2 = mu * QuadInt(F, 0, 1);
    mpz_class u0a = mu.a(), u0b = mu.b(), u1a = c2.a(), u1b = c2.b();
    while (u1b != 0) {
        mpz_class k;
        mpz_fdiv_q(k.get_mpz_t(), u0b.get_mpz_t(), u1b.get_mpz_t());
        u0a -= k * u1a;
        u0b -= k * u1b;
        std::swap(u0a, u1a);
        std::swap(u0b, u1b);
    }
    if (u0b < 0) {
        u0a = -u0a;
        u0b = -u0b;
    }
    ResidueBox box{&F, mu, abs(u1a), u0a, u0b};
    if (box.h00 * box.h11 != abs(mu.norm()))
        throw std::logic_error("residue_box: Hermite reduction mismatch");
    // normalize the off-diagonal entry into [0, h00)
    mpz_fdiv_r(box.h01.get_mpz_t(), box.h01.get_mpz_t(), box.h00.get_mpz_t());
    return box;
}


}  // namespace cmunits
