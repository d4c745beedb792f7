#include "cmunits/identities.hpp"

#include <atomic>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>
#include <thread>

#include "cmunits/errors.hpp"
#include "cmunits/modarith.hpp"

namespace cmunits {

namespace {

// (log|.|, arg) accumulator; arg is a plain sum of principal args, left
// unreduced so integer exponents distribute exactly.
struct Accum {
    Real lg, ar;

    explicit Accum(long bits) : lg(bits), ar(bits) {}

    void mul(const ThetaValue& v, long e = 1) {
        lg += v.log_abs * e;
        ar += v.arg * e;
    }
    void mul(const Complex& z, long e = 1) {
        lg += log(z.abs()) * e;
        ar += z.arg() * e;
    }
};

IdentityReport finish(std::string name, std::string params, const Accum& lhs,
                      const Accum& rhs, long bits) {
    Complex ratio = exp(Complex(lhs.lg - rhs.lg, lhs.ar - rhs.ar));
    Real residual = (ratio - Complex::one(bits)).abs();
    Real tol = Real::pow2(-bits / 2 + 8, bits);
    bool pass = residual < tol;
    return IdentityReport{std::move(name), std::move(params), lhs.lg, lhs.ar,
                          rhs.lg,           rhs.ar,           residual, pass};
}

mpq_class mod1(const mpq_class& x) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return x - mpq_class(fl);
}

Coords add_coords(const Coords& a, const Coords& b) {
    return {mod1(a[0] + b[0]), mod1(a[1] + b[1])};
}

bool lex_less(const QuadInt& x, const QuadInt& y) {
    if (x.a() != y.a()) return x.a() < y.a();
    return x.b() < y.b();
}

// Units congruent to 1 mod (f).
long unit_congruence_count(const QuadInt& f) {
    long count = 0;
    for (const QuadInt& u : f.field().units)
        if (divides(f, u - QuadInt(f.field(), 1, 0))) ++count;
    return count;
}

std::string coords_str(const Coords& z) {
    return "(" + z[0].get_str() + "," + z[1].get_str() + ")";
}

}  // namespace

Coords scale_coords(const FieldContext& F, const QuadInt& c, const Coords& z) {
    // (a + b*omega)(x + y*omega) with omega^2 = t*omega - n
    mpq_class x = c.a() * z[0] - F.omega_norm * (c.b() * z[1]);
    mpq_class y = c.a() * z[1] + c.b() * z[0] + F.omega_trace * (c.b() * z[1]);
    return {mod1(x), mod1(y)};
}

IdentityReport check_distribution(const Lattice& lat, const QuadInt& alpha,
                                  const QuadInt& beta, const Coords& tau) {
    if (beta.is_zero() || beta.is_unit())
        throw std::invalid_argument("distribution: beta must be a nonzero non-unit");
    if (gcd(alpha.norm(), beta.norm()) != 1)
        throw std::invalid_argument("distribution: ideals must be coprime");

    ThetaFn th(lat, alpha);
    Accum lhs(lat.bits), rhs(lat.bits);
    for (const TorsionPoint& P : torsion_points(lat, beta, false))
        lhs.mul(th(add_coords(tau, {P.x, P.y})));
    rhs.mul(th(scale_coords(*lat.F, beta, tau)[0],
               scale_coords(*lat.F, beta, tau)[1]));
    return finish("distribution",
                  "d=" + std::to_string(lat.F->d) + " a=(" + alpha.str() + ") b=(" +
                      beta.str() + ") tau=" + coords_str(tau),
                  lhs, rhs, lat.bits);
}

IdentityReport check_galois_action(const Lattice& lat, const QuadInt& alpha,
                                   const QuadInt& c, const Coords& tau) {
    if (c.is_zero()) throw std::invalid_argument("galois action: c must be nonzero");
    mpz_class den = lcm(mpz_class(tau[0].get_den()), mpz_class(tau[1].get_den()));
    if (gcd(c.norm(), den) != 1)
        throw std::invalid_argument("galois action: c must be prime to the level");

    ThetaFn th_a(lat, alpha);
    Coords ctau = scale_coords(*lat.F, c, tau);
    Accum lhs(lat.bits), rhs(lat.bits);
    lhs.mul(th_a(ctau[0], ctau[1]));
    if (c.is_unit()) {
        // theta_(u) = u^{-12} = 1 since w | 12; the identity degenerates to
        // Aut-invariance.
        rhs.mul(th_a(tau[0], tau[1]));
    } else {
        ThetaFn th_ac(lat, alpha * c);
        ThetaFn th_c(lat, c);
        rhs.mul(th_ac(tau[0], tau[1]));
        rhs.mul(th_c(tau[0], tau[1]), -alpha.norm().get_si());
    }
    return finish("galois-action",
                  "d=" + std::to_string(lat.F->d) + " a=(" + alpha.str() + ") c=(" +
                      c.str() + ") tau=" + coords_str(tau),
                  lhs, rhs, lat.bits);
}

IdentityReport check_cross_relation(const Lattice& lat, const QuadInt& a,
                                    const QuadInt& b, const Coords& z) {
    if (gcd(a.norm(), b.norm()) != 1)
        throw std::invalid_argument("cross relation: ideals must be coprime");

    ThetaFn th_a(lat, a), th_b(lat, b);
    Coords az = scale_coords(*lat.F, a, z);
    Coords bz = scale_coords(*lat.F, b, z);
    Accum lhs(lat.bits), rhs(lat.bits);
    lhs.mul(th_b(z[0], z[1]), a.norm().get_si());
    lhs.mul(th_b(az[0], az[1]), -1);
    rhs.mul(th_a(z[0], z[1]), b.norm().get_si());
    rhs.mul(th_a(bz[0], bz[1]), -1);
    return finish("cross-relation",
                  "d=" + std::to_string(lat.F->d) + " a=(" + a.str() + ") b=(" +
                      b.str() + ") z=" + coords_str(z),
                  lhs, rhs, lat.bits);
}

IdentityReport check_norm_relation(const Lattice& lat, const QuadInt& f,
                                   const QuadInt& l, const QuadInt& alpha,
                                   const QuadInt& r) {
    const FieldContext& F = *lat.F;
    QuadInt g = f * l;
    Coords tau = torsion_coords(r, g);

    auto gdiv = prime_ideal_divisors(g);
    for (const auto& q : gdiv)
        if (q.contains(r)) throw BadCosets("norm relation: tau is not primitive");

    long wf = unit_congruence_count(f);
    long wg = unit_congruence_count(g);
    if (wf % wg != 0) throw BadCosets("norm relation: unit counts do not divide");
    long e = wf / wg;

    // Coset representatives of Gal(K(g)/K(f)): residues c = 1 mod f coprime
    // to g, deduplicated under multiplication by units congruent to 1 mod f.
    ResidueBox box = residue_box(g);
    QuadInt one(F, 1, 0);
    std::vector<QuadInt> unit_stab;
    for (const QuadInt& u : F.units)
        if (divides(f, u - one)) unit_stab.push_back(u);

    std::vector<QuadInt> cosets;
    for (const QuadInt& cand : box.all()) {
        bool coprime = true;
        for (const auto& q : gdiv)
            if (q.contains(cand)) { coprime = false; break; }
        if (!coprime || !divides(f, cand - one)) continue;
        bool canonical = true;
        for (const QuadInt& u : unit_stab) {
            QuadInt other = box.reduce(u * cand);
            if (lex_less(other, cand)) { canonical = false; break; }
        }
        if (canonical) cosets.push_back(cand);
    }

    mpz_class expected = euler_phi_ideal(g) * wg / (euler_phi_ideal(f) * wf);
    if (mpz_class(cosets.size()) != expected)
        throw BadCosets("norm relation: found " + std::to_string(cosets.size()) +
                        " cosets, expected " + expected.get_str());

    ThetaFn th(lat, alpha);
    Accum lhs(lat.bits), rhs(lat.bits);
    for (const QuadInt& c : cosets) {
        Coords ct = scale_coords(F, c, tau);
        lhs.mul(th(ct[0], ct[1]), e);
    }

    Coords ltau = scale_coords(F, l, tau);
    rhs.mul(th(ltau[0], ltau[1]));
    bool l_divides_f = divides(l, f);
    if (!l_divides_f) {
        // sigma_l^{-1} acts on the f-torsion value through any residue
        // inverse of l mod (f).
        ResidueBox fbox = residue_box(f);
        QuadInt linv;
        bool found = false;
        for (const QuadInt& cand : fbox.all()) {
            if (fbox.reduce(l * cand - one).is_zero()) {
                linv = cand;
                found = true;
                break;
            }
        }
        if (!found) throw BadCosets("norm relation: l is not invertible mod f");
        Coords back = scale_coords(F, linv, ltau);
        rhs.mul(th(back[0], back[1]), -1);
    }
    return finish(l_divides_f ? "norm-relation-ramified-branch" : "norm-relation",
                  "d=" + std::to_string(F.d) + " f=(" + f.str() + ") l=(" + l.str() +
                      ") a=(" + alpha.str() + ") e=" + std::to_string(e),
                  lhs, rhs, lat.bits);
}

IdentityReport check_fiber_ladder_step(const Lattice& lat, const SplitPrime& sp,
                                       int n, const QuadInt& alpha,
                                       const mpz_class& abar, const mpz_class& b) {
    const FieldContext& F = *lat.F;
    long p = sp.p;
    if (n < 1) throw std::invalid_argument("ladder step: level must be >= 1");
    if (abar % p != 0)
        throw std::invalid_argument("ladder step: abar must be divisible by p");
    mpz_class pn;
    mpz_ui_pow_ui(pn.get_mpz_t(), p, n);
    mpz_class pn1 = pn / p;
    mpz_class ap = abar / p;
    if (n >= 2 && gcd(ap, mpz_class(p)) != 1)
        throw std::invalid_argument("ladder step: abar/p must be a unit at level n");
    if (gcd(b, mpz_class(p)) != 1)
        throw std::invalid_argument("ladder step: b must be a unit");

    QuadInt pibar_n = sp.pi_bar.pow(n);
    QuadInt pi_n = sp.pi.pow(n);
    QuadInt mu(F, pn, 0);

    ThetaFn th(lat, alpha);
    Accum lhs(lat.bits), rhs(lat.bits);
    for (long k = 0; k < p; ++k) {
        mpz_class a = (ap + k * pn1) % pn;
        QuadInt num = pibar_n * QuadInt(F, a, 0) + pi_n * QuadInt(F, b, 0);
        auto xy = torsion_coords(num, mu);
        lhs.mul(th(xy[0], xy[1]));
    }
    // pibar^{-1} abar = pi * (abar/p) exactly, since p = pi * pibar
    QuadInt num_rhs = sp.pi * (pibar_n * QuadInt(F, ap, 0) + pi_n * QuadInt(F, b, 0));
    auto xy = torsion_coords(num_rhs, mu);
    rhs.mul(th(xy[0], xy[1]));
    return finish("fiber-ladder-step",
                  "d=" + std::to_string(F.d) + " p=" + std::to_string(p) + " n=" +
                      std::to_string(n) + " abar=" + abar.get_str() + " b=" +
                      b.get_str() + " a=(" + alpha.str() + ")",
                  lhs, rhs, lat.bits);
}

IdentityReport check_column_norm_step(const Lattice& lat, const SplitPrime& sp,
                                      int n, const QuadInt& alpha,
                                      const mpz_class& a) {
    const FieldContext& F = *lat.F;
    long p = sp.p;
    if (n < 1) throw std::invalid_argument("column norm step: level must be >= 1");
    if (gcd(a, mpz_class(p)) != 1)
        throw std::invalid_argument("column norm step: a must be a unit");
    mpz_class pn;
    mpz_ui_pow_ui(pn.get_mpz_t(), p, n);

    QuadInt pibar_n = sp.pi_bar.pow(n);
    QuadInt pi_n = sp.pi.pow(n);
    QuadInt mu(F, pn, 0);
    QuadInt aw1 = pibar_n * QuadInt(F, a, 0);

    ThetaFn th(lat, alpha);
    Accum lhs(lat.bits), rhs(lat.bits);
    for (mpz_class b = 1; b < pn; ++b) {
        if (b % p == 0) continue;
        auto xy = torsion_coords(aw1 + pi_n * QuadInt(F, b, 0), mu);
        lhs.mul(th(xy[0], xy[1]));
    }
    auto num = torsion_coords(sp.pi_bar.pow(n) * aw1, mu);
    auto den = torsion_coords(sp.pi_bar.pow(n - 1) * aw1, mu);
    rhs.mul(th(num[0], num[1]));
    if (!(den[0] == 0 && den[1] == 0)) {
        rhs.mul(th(den[0], den[1]), -1);
    } else {
        throw std::logic_error("column norm step: denominator point degenerated");
    }
    return finish("column-norm-step",
                  "d=" + std::to_string(F.d) + " p=" + std::to_string(p) + " n=" +
                      std::to_string(n) + " a=" + a.get_str() + " ideal=(" +
                      alpha.str() + ")",
                  lhs, rhs, lat.bits);
}

ExponentConstants exponent_constants(std::pair<long, long> m, const SplitPrime& sp,
                                     int n) {
    if (m.first < 1 || m.second < 1)
        throw std::invalid_argument("exponent constants: m must be >= (1,1)");
    PadicEmbed e = hensel_embed(sp, n);
    std::pair<long, long> mm{m.first - 1, m.second - 1};
    mpz_class x = i_power(e, mm, sp.pi);
    mpz_class y = i_power(e, mm, sp.pi_bar);
    mpz_class p(sp.p);

    auto inv_of = [&](const mpz_class& v, const char* which) {
        mpz_class d = ((1 - v) % e.pn + e.pn) % e.pn;
        mpz_class r;
        if (d % p == 0 || mpz_invert(r.get_mpz_t(), d.get_mpz_t(), e.pn.get_mpz_t()) == 0)
            throw NonInvertibleDenominator(std::string("1 - i^(m-1)(") + which +
                                           ") is not a unit");
        return r;
    };
    mpz_class ix = inv_of(x, "pi");
    mpz_class iy = inv_of(y, "pibar");
    mpz_class one_m_xy = ((1 - x * y) % e.pn + e.pn) % e.pn;

    ExponentConstants out;
    out.fiber = one_m_xy * ix % e.pn * iy % e.pn;
    out.column = one_m_xy * ix % e.pn;
    if (m.first >= 2 && m.second >= 2) {
        if ((out.fiber - 1) % p != 0 || (out.column - 1) % p != 0)
            throw std::logic_error("twist constants left 1 + pZ_p for interior m");
    }
    return out;
}

std::vector<IdentityReport> run_identity_suite(const PrecisionContext& prec,
                                               std::uint64_t seed, int threads) {
    std::mt19937_64 rng(seed);
    const long DEN = 97;
    auto random_point = [&]() -> Coords {
        mpq_class x(1 + static_cast<long>(rng() % (DEN - 1)), DEN);
        mpq_class y(1 + static_cast<long>(rng() % (DEN - 1)), DEN);
        x.canonicalize();
        y.canonicalize();
        return {x, y};
    };

    // Smallest-norm non-unit with gcd(N,6)=1, gcd(N, coprime_to)=1; ties by
    // (a, b). Same convention as the frozen reference fixtures.
    auto pick_ideal = [](const FieldContext& F, const mpz_class& coprime_to,
                         const mpz_class& skip_norm) {
        QuadInt best;
        mpz_class best_norm = -1;
        for (long a = 0; a <= 8; ++a) {
            for (long b = -8; b <= 8; ++b) {
                if (a <= 0) continue;
                QuadInt cand(F, a, b);
                mpz_class n = cand.norm();
                if (n <= 1 || gcd(n, mpz_class(6)) != 1) continue;
                if (gcd(n, coprime_to) != 1 || n == skip_norm) continue;
                if (best_norm < 0 || n < best_norm ||
                    (n == best_norm && lex_less(cand, best))) {
                    best = cand;
                    best_norm = n;
                }
            }
        }
        if (best_norm < 0) throw std::logic_error("no suitable ideal in search box");
        return best;
    };

    struct Job {
        std::function<IdentityReport(const Lattice&)> run;
        int d;
    };
    std::vector<Job> jobs;
    static const int kFields[] = {1, 2, 3, 7, 11, 19, 43, 67, 163};

    for (int d : kFields) {
        const FieldContext& F = make_field(d);
        QuadInt A = pick_ideal(F, 1, -1);
        QuadInt B = pick_ideal(F, A.norm(), -1);
        Coords t1 = random_point(), t2 = random_point(), t3 = random_point();

        // torsion level for the Galois checks: a rational prime coprime to
        // everything in sight
        long q0 = 7;
        while (gcd(mpz_class(q0), 6 * A.norm() * B.norm()) != 1 ||
               !modarith::is_prime(static_cast<uint64_t>(q0)))
            ++q0;
        Coords tq = torsion_coords(QuadInt(F, 1, 0), QuadInt(F, q0, 0));

        jobs.push_back({[=, &F](const Lattice& lat) {
                            return check_distribution(lat, A, B, t1);
                        },
                        d});
        jobs.push_back({[=, &F](const Lattice& lat) {
                            return check_distribution(lat, B, A, t2);
                        },
                        d});
        jobs.push_back({[=, &F](const Lattice& lat) {
                            return check_galois_action(lat, A, B, tq);
                        },
                        d});
        QuadInt u = F.units.at(1);  // a nontrivial unit
        jobs.push_back({[=, &F](const Lattice& lat) {
                            return check_galois_action(lat, A, u, tq);
                        },
                        d});
        // composite multiplier in one step...
        QuadInt B2 = B * B;
        jobs.push_back({[=, &F](const Lattice& lat) {
                            return check_galois_action(lat, A, B2, tq);
                        },
                        d});
        // ...and the same point reached by two chained steps
        jobs.push_back({[=, &F](const Lattice& lat) {
                            return check_galois_action(lat, A, B,
                                                       scale_coords(F, B, tq));
                        },
                        d});
        jobs.push_back({[=, &F](const Lattice& lat) {
                            return check_cross_relation(lat, B, A, t3);
                        },
                        d});
        jobs.push_back({[=, &F](const Lattice& lat) {
                            return check_cross_relation(
                                lat, B, A, scale_coords(F, F.units.at(1), t3));
                        },
                        d});

        // norm relation at the smallest split prime away from 6 N(A)
        long l0 = 5;
        SplitPrime spl{};
        for (;; ++l0) {
            if (!modarith::is_prime(static_cast<uint64_t>(l0))) continue;
            if (gcd(mpz_class(l0), 6 * A.norm()) != 1) continue;
            try {
                spl = split_prime(F, l0);
                break;
            } catch (const MathError&) {
                continue;
            }
        }
        QuadInt one(F, 1, 0);
        jobs.push_back({[=, &F](const Lattice& lat) {
                            return check_norm_relation(lat, spl.pi, spl.pi_bar, A, one);
                        },
                        d});
        jobs.push_back({[=, &F](const Lattice& lat) {
                            return check_norm_relation(lat, spl.pi, spl.pi, A, one);
                        },
                        d});
    }

    // basis-rearrangement ladder at d=1, p=5, levels 1 and 2
    {
        const FieldContext& F1 = make_field(1);
        SplitPrime sp5 = split_prime(F1, 5);
        QuadInt alpha = pick_ideal(F1, mpz_class(5), -1);
        jobs.push_back({[=, &F1](const Lattice& lat) {
                            return check_fiber_ladder_step(lat, sp5, 1, alpha, 0, 1);
                        },
                        1});
        jobs.push_back({[=, &F1](const Lattice& lat) {
                            return check_fiber_ladder_step(lat, sp5, 2, alpha, 5, 1);
                        },
                        1});
        jobs.push_back({[=, &F1](const Lattice& lat) {
                            return check_fiber_ladder_step(lat, sp5, 2, alpha, 10, 3);
                        },
                        1});
        jobs.push_back({[=, &F1](const Lattice& lat) {
                            return check_column_norm_step(lat, sp5, 1, alpha, 1);
                        },
                        1});
        jobs.push_back({[=, &F1](const Lattice& lat) {
                            return check_column_norm_step(lat, sp5, 2, alpha, 1);
                        },
                        1});
        jobs.push_back({[=, &F1](const Lattice& lat) {
                            return check_column_norm_step(lat, sp5, 2, alpha, 2);
                        },
                        1});
        // the E[pibar^{n-1}]-translate identity behind the column step, as a
        // plain distribution instance
        QuadInt r = sp5.pi_bar * sp5.pi_bar;
        Coords base = torsion_coords(r, QuadInt(F1, 25, 0));
        jobs.push_back({[=, &F1](const Lattice& lat) {
                            return check_distribution(lat, alpha, sp5.pi_bar, base);
                        },
                        1});
    }

    std::map<int, Lattice> lattices;
    for (int d : kFields) lattices.emplace(d, make_lattice(make_field(d), prec));

    std::vector<IdentityReport> out(jobs.size(),
                                    IdentityReport{"", "", Real(prec.bits), Real(prec.bits),
                                                   Real(prec.bits), Real(prec.bits),
                                                   Real(prec.bits), false});
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            out[i] = jobs[i].run(lattices.at(jobs[i].d));
        }
    };
    int nt = threads > 0 ? threads : 1;
    std::vector<std::thread> pool;
    for (int i = 1; i < nt; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return out;
}

}  // namespace cmunits
