#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cmunits/characters.hpp"
#include "cmunits/errors.hpp"
#include "cmunits/modarith.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace cmunits;

namespace {

Real rel_err(const Complex& got, const Complex& want) {
    Real scale = want.abs();
    if (scale < Real::pow2(-10000, 64)) scale = Real(1L, 64);
    return (got - want).abs() / scale;
}

Complex fixture_complex(const nlohmann::json& pair, long bits) {
    return Complex(Real::from_string(pair.at(0).get<std::string>(), bits),
                   Real::from_string(pair.at(1).get<std::string>(), bits));
}

QuadInt fixture_quadint(const FieldContext& F, const nlohmann::json& j) {
    return QuadInt(F, mpz_class(j.at("a").get<std::string>()),
                   mpz_class(j.at("b").get<std::string>()));
}

std::vector<PowerWitness> fixture_witnesses(const nlohmann::json& arr) {
    std::vector<PowerWitness> out;
    for (const auto& t : arr)
        out.push_back(PowerWitness{t.at("q").get<long>(), t.at("omega_root").get<long>(),
                                   t.at("unit_root").get<long>(), t.at("zeta").get<long>(),
                                   t.at("witness").get<bool>()});
    return out;
}

void check_witnesses(const std::vector<PowerWitness>& got, const std::vector<PowerWitness>& want) {
    REQUIRE(got.size() == want.size());
    for (size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i].q == want[i].q);
        CHECK(got[i].omega_root == want[i].omega_root);
        CHECK(got[i].unit_root == want[i].unit_root);
        CHECK(got[i].zeta == want[i].zeta);
        CHECK(got[i].witness == want[i].witness);
    }
}

// a one-element conjugate vector from an exact ring element
AlgebraicUnit exact_unit(const FieldContext& F, const QuadInt& v, long bits) {
    Real om_im = sqrt(Real(4 * F.omega_norm - F.omega_trace * F.omega_trace, bits)) /
                 Real(2L, bits);
    Real om_re = Real(F.omega_trace, bits) / Real(2L, bits);
    Complex z(Real(v.a(), bits) + om_re * Real(v.b(), bits), om_im * Real(v.b(), bits));
    return recognize_unit(F, {z}, bits);
}

}  // namespace

TEST_CASE("transversal: canonical representatives and group law") {
    const FieldContext& F = make_field(1);
    SplitPrime sp = split_prime(F, 5);
    Transversal tv = make_transversal(F, sp);
    nlohmann::json fx = load_fixture("soule_oracle_d1_p5.json");

    REQUIRE(tv.size() == 4);
    CHECK(tv.p() == 5);
    const auto& pairs = fx.at("transversal_pairs");
    for (size_t j = 0; j < tv.size(); ++j) {
        CHECK(tv.crt[j].first == pairs.at(j).at(0).get<long>());
        CHECK(tv.crt[j].second == pairs.at(j).at(1).get<long>());
        CHECK(coprime_ideal(tv.reps[j], QuadInt(F, 5, 0)));
    }

    SUBCASE("identity, inverses, commutativity, associativity") {
        CHECK(tv.crt[0] == std::make_pair(1L, 1L));
        for (size_t j = 0; j < tv.size(); ++j) {
            CHECK(tv.mul(0, j) == j);
            CHECK(tv.mul(j, tv.inv(j)) == 0);
            for (size_t k = 0; k < tv.size(); ++k) {
                CHECK(tv.mul(j, k) == tv.mul(k, j));
                for (size_t l = 0; l < tv.size(); ++l)
                    CHECK(tv.mul(tv.mul(j, k), l) == tv.mul(j, tv.mul(k, l)));
            }
        }
    }
}

TEST_CASE("transversal index_of agrees with a brute-force orbit fold") {
    for (auto [d, p] : std::vector<std::pair<int, long>>{{1, 5}, {3, 7}, {1, 13}}) {
        const FieldContext& F = make_field(d);
        SplitPrime sp = split_prime(F, p);
        Transversal tv = make_transversal(F, sp);
        REQUIRE(tv.size() == static_cast<size_t>((p - 1) * (p - 1) / F.w));

        ResidueBox box = residue_box(QuadInt(F, p, 0));
        for (const QuadInt& x : box.all()) {
            if (!coprime_ideal(x, QuadInt(F, p, 0))) continue;
            long c1 = tv.embed.i1(x).get_si(), c2 = tv.embed.i2(x).get_si();
            // fold by hand: lexicographic minimum over the unit orbit
            std::pair<long, long> best{p, p};
            for (const QuadInt& u : F.units) {
                QuadInt ux = u * x;
                best = std::min(best, {tv.embed.i1(ux).get_si(), tv.embed.i2(ux).get_si()});
            }
            size_t j = tv.index_of(c1, c2);
            REQUIRE(j < tv.size());
            CHECK(tv.crt[j] == best);
        }
    }
}

TEST_CASE("recognize_unit: rounding, collapsing, failure modes") {
    const FieldContext& F = make_field(1);
    long bits = 256;

    SUBCASE("a single exact element is its own minimal polynomial") {
        QuadInt v(F, 2, 3);
        AlgebraicUnit u = exact_unit(F, v, bits);
        REQUIRE(u.minpoly.size() == 2);
        CHECK(u.minpoly[0] == -v);
        CHECK(u.minpoly[1] == QuadInt(F, 1, 0));
        CHECK(u.rounding_residual < Real::pow2(-100, 64));
    }
    SUBCASE("repeated conjugates collapse to one packet") {
        QuadInt v(F, -1, 4);
        AlgebraicUnit single = exact_unit(F, v, bits);
        std::vector<Complex> four(4, single.conjugates[0]);
        AlgebraicUnit u = recognize_unit(F, four, bits);
        CHECK(u.minpoly.size() == 2);
        CHECK(u.minpoly[0] == -v);
        CHECK(u.conjugates.size() == 4);
    }
    SUBCASE("a complex-conjugate pair yields rational coefficients") {
        Complex v(Real(1L, bits), Real(2L, bits));
        AlgebraicUnit u = recognize_unit(F, {v, v.conj()}, bits);
        REQUIRE(u.minpoly.size() == 3);
        CHECK(u.minpoly[0] == QuadInt(F, 5, 0));
        CHECK(u.minpoly[1] == QuadInt(F, -2, 0));
        CHECK(u.minpoly[2] == QuadInt(F, 1, 0));
    }
    SUBCASE("uneven multiplicities are rejected") {
        Complex v(Real(1L, bits), Real(2L, bits));
        Complex w(Real(3L, bits), Real(0L, bits));
        CHECK_THROWS_AS(recognize_unit(F, {v, v, w}, bits), RecognitionFailure);
    }
    SUBCASE("an irrational value cannot round to the lattice") {
        Complex v(sqrt(Real(2L, bits)), Real(0L, bits));
        CHECK_THROWS_AS(recognize_unit(F, {v}, bits), RecognitionFailure);
    }
    SUBCASE("magnitudes beyond the precision budget are refused") {
        // every complex number sits near SOME lattice point, so recognition
        // must reject scales the mantissa cannot resolve to integers
        Complex big(Real::pow2(bits - 50, bits), Real(0L, bits));
        CHECK_THROWS_AS(recognize_unit(F, {big}, bits), RecognitionFailure);
        AlgebraicUnit ok =
            recognize_unit(F, {Complex(Real::pow2(bits - 80, bits), Real(0L, bits))}, bits);
        CHECK(ok.minpoly[0] == -QuadInt(F, mpz_class(1) << (bits - 80), 0));
    }
}

TEST_CASE("conjugate vectors of theta at primitive torsion") {
    const FieldContext& F = make_field(1);
    long bits = 2048;
    Lattice lat = make_lattice(F, PrecisionContext(bits));
    SplitPrime sp = split_prime(F, 5);
    Transversal tv = make_transversal(F, sp);
    QuadInt alpha(F, 3, 2);
    QuadInt five(F, 5, 0);

    auto points = torsion_points(lat, five, true);
    REQUIRE(points.size() == 16);
    const TorsionPoint& base = points.front();
    AlgebraicUnit u = conjugate_vector(lat, alpha, base, tv);
    REQUIRE(u.conjugates.size() == 4);

    SUBCASE("the recognized element is a global unit") {
        REQUIRE(u.minpoly.size() >= 2);
        CHECK(u.minpoly.back() == QuadInt(F, 1, 0));
        CHECK(u.minpoly.front().is_unit());
        CHECK(u.rounding_residual < Real::pow2(-bits / 2 + 8, 64));
    }
    SUBCASE("recognition is stable under precision doubling") {
        Lattice lat2 = make_lattice(F, PrecisionContext(2 * bits));
        auto points2 = torsion_points(lat2, five, true);
        AlgebraicUnit u2 = conjugate_vector(lat2, alpha, points2.front(), tv);
        REQUIRE(u2.minpoly.size() == u.minpoly.size());
        for (size_t i = 0; i < u.minpoly.size(); ++i) CHECK(u2.minpoly[i] == u.minpoly[i]);
    }
    SUBCASE("translating the base permutes the conjugates through the group law") {
        ResidueBox box = residue_box(five);
        for (size_t j = 1; j < tv.size(); ++j) {
            QuadInt shifted = box.reduce(tv.reps[j] * base.residue);
            auto it = std::find_if(points.begin(), points.end(), [&](const TorsionPoint& P) {
                return P.residue == shifted;
            });
            REQUIRE(it != points.end());
            AlgebraicUnit v = conjugate_vector(lat, alpha, *it, tv);
            for (size_t k = 0; k < tv.size(); ++k)
                CHECK(rel_err(v.conjugates[k], u.conjugates[tv.mul(k, j)]) <
                      Real::pow2(-bits / 2 + 16, 64));
        }
    }
    SUBCASE("imprimitive bases and non-coprime ideals are refused") {
        auto all_points = torsion_points(lat, five, false);
        auto imp = std::find_if(all_points.begin(), all_points.end(),
                                [](const TorsionPoint& P) { return !P.primitive; });
        REQUIRE(imp != all_points.end());
        CHECK_THROWS_AS(conjugate_vector(lat, alpha, *imp, tv), std::invalid_argument);
        CHECK_THROWS_AS(conjugate_vector(lat, sp.pi, base, tv), std::invalid_argument);
    }
}

TEST_CASE("isotypic projection: weighted products and the convolution square") {
    const FieldContext& F = make_field(1);
    long bits = 2048;
    Lattice lat = make_lattice(F, PrecisionContext(bits));
    SplitPrime sp = split_prime(F, 5);
    Transversal tv = make_transversal(F, sp);
    QuadInt alpha(F, 3, 2);

    auto points = torsion_points(lat, QuadInt(F, 5, 0), true);
    AlgebraicUnit u = conjugate_vector(lat, alpha, points.front(), tv);
    std::pair<long, long> m{3, 3};

    std::vector<long> e(tv.size());
    for (size_t k = 0; k < tv.size(); ++k)
        e[k] = i_power(tv.embed, {m.first - 1, m.second - 1}, tv.reps[k]).get_si();

    SUBCASE("single application against integer-exponent brute force") {
        AlgebraicUnit w = isotypic_product(u, tv, m);
        REQUIRE(w.conjugates.size() == tv.size());
        for (size_t j = 0; j < tv.size(); ++j) {
            Complex brute = Complex::one(bits);
            for (size_t k = 0; k < tv.size(); ++k)
                brute *= u.conjugates[k].pow_si(e[tv.mul(tv.inv(j), k)]);
            CHECK(rel_err(w.conjugates[j], brute) < Real::pow2(-bits / 2 + 16, 64));
        }
    }
    SUBCASE("two applications compose like the convolution square") {
        AlgebraicUnit w2 = isotypic_product(isotypic_product(u, tv, m), tv, m);
        // conv[c] = sum over a*b = c of e_a e_b, through the group law
        std::vector<long> conv(tv.size(), 0);
        for (size_t a = 0; a < tv.size(); ++a)
            for (size_t c = 0; c < tv.size(); ++c)
                conv[c] += e[a] * e[tv.mul(tv.inv(a), c)];
        for (size_t j = 0; j < tv.size(); ++j) {
            Complex brute = Complex::one(bits);
            for (size_t l = 0; l < tv.size(); ++l)
                brute *= u.conjugates[l].pow_si(conv[tv.mul(tv.inv(j), l)]);
            CHECK(rel_err(w2.conjugates[j], brute) < Real::pow2(-bits / 2 + 24, 64));
        }
    }
    SUBCASE("weight (1,1) folds the whole orbit into the norm") {
        AlgebraicUnit w = isotypic_product(u, tv, {1, 1});
        for (size_t j = 1; j < w.conjugates.size(); ++j)
            CHECK(rel_err(w.conjugates[j], w.conjugates[0]) < Real::pow2(-bits / 2 + 16, 64));
        REQUIRE(w.minpoly.size() == 2);
        CHECK(w.minpoly[0].is_unit());  // norm of a unit
    }
}

TEST_CASE("epsilon pipelines: fold exponent and agreement") {
    const FieldContext& F = make_field(1);
    long bits = 2048;
    Lattice lat = make_lattice(F, PrecisionContext(bits));
    SplitPrime sp = split_prime(F, 5);
    QuadInt alpha(F, 3, 2);

    SUBCASE("interior weight: projection equals direct") {
        EpsilonPipelines pl = epsilon_pipelines(lat, sp, {3, 3}, alpha);
        CHECK(pl.fold_power == 1);
        CHECK(pl.gap < Real::pow2(-bits / 2 + 8, 64));
        REQUIRE(pl.direct.size() == pl.projection.size());
        for (size_t j = 0; j < pl.direct.size(); ++j)
            CHECK(rel_err(pl.projection[j], pl.direct[j]) < Real::pow2(-bits / 2 + 16, 64));
    }
    SUBCASE("edge weight: projection equals direct to the power p-1") {
        EpsilonPipelines pl = epsilon_pipelines(lat, sp, {3, 1}, alpha);
        CHECK(pl.fold_power == 4);
        CHECK(pl.gap < Real::pow2(-bits / 2 + 8, 64));
        for (size_t j = 0; j < pl.direct.size(); ++j)
            CHECK(rel_err(pl.projection[j], pl.direct[j].pow_si(4)) <
                  Real::pow2(-bits / 2 + 16, 64));
    }
}

TEST_CASE("epsilon units reproduce the frozen d=1, p=5 oracle") {
    const FieldContext& F = make_field(1);
    long bits = 2048;
    Lattice lat = make_lattice(F, PrecisionContext(bits));
    SplitPrime sp = split_prime(F, 5);
    nlohmann::json fx = load_fixture("soule_oracle_d1_p5.json");
    QuadInt alpha = QuadInt(F, fx.at("alpha").at("a").get<long>(),
                            fx.at("alpha").at("b").get<long>());
    REQUIRE(sp.pi == QuadInt(F, fx.at("pi").at("a").get<long>(),
                             fx.at("pi").at("b").get<long>()));

    SUBCASE("theta at the one-sided base point is an exact pi power") {
        const auto& tw = fx.at("theta_pib_w1");
        ThetaFn theta(lat, alpha);
        auto w1 = torsion_coords(sp.pi_bar, QuadInt(F, 5, 0));
        AlgebraicUnit rec = recognize_unit(F, {theta(w1).value}, bits);
        REQUIRE(rec.minpoly.size() == 2);
        QuadInt val = -rec.minpoly[0];
        CHECK(val == fixture_quadint(F, tw));

        // valuations: v_pi = 36, v_pibar = 0
        long vp = tw.at("v_pi").get<long>();
        CHECK(vp == 36);
        QuadInt rest = val;
        for (long i = 0; i < vp; ++i) rest = exact_divide(rest, sp.pi);
        CHECK(rest.is_unit());
        CHECK_FALSE(divides(sp.pi_bar, val));
    }
    SUBCASE("interior weight (3,3)") {
        const auto& e33 = fx.at("eps_33");
        AlgebraicUnit u = epsilon_m1a(lat, sp, {3, 3}, alpha);
        REQUIRE(u.minpoly.size() == e33.at("minpoly").size());
        for (size_t i = 0; i < u.minpoly.size(); ++i)
            CHECK(u.minpoly[i] == fixture_quadint(F, e33.at("minpoly").at(i)));
        REQUIRE(u.conjugates.size() == e33.at("conjugates").size());
        for (size_t i = 0; i < u.conjugates.size(); ++i)
            CHECK(rel_err(u.conjugates[i], fixture_complex(e33.at("conjugates").at(i), bits)) <
                  Real::pow2(-110, 64));

        PowerTestReport rep = pth_power_test(u, 5, 4);
        CHECK(rep.verdict == PowerVerdict::NonPower);
        CHECK(rep.primes_used == 4);
        check_witnesses(rep.records, fixture_witnesses(e33.at("test_primes")));
    }
    SUBCASE("edge weight (3,1)") {
        const auto& e31 = fx.at("eps_31");
        AlgebraicUnit u = epsilon_m1a(lat, sp, {3, 1}, alpha);
        REQUIRE(u.minpoly.size() == 2);
        QuadInt val = -u.minpoly[0];
        CHECK(val == fixture_quadint(F, e31.at("value")));

        // the projection carries (p-1) times the one-fiber theta exponent;
        // each theta factor contributes pi-valuation 36, so v_pi = 36 * 40
        long vdir = e31.at("theta_exponent_direct").get<long>();
        long vproj = e31.at("theta_exponent_projection").get<long>();
        CHECK(vproj == 4 * vdir);
        QuadInt rest = val;
        for (long i = 0; i < 36 * vproj; ++i) rest = exact_divide(rest, sp.pi);
        CHECK_FALSE(divides(sp.pi, rest));
        CHECK_FALSE(divides(sp.pi_bar, val));

        PowerTestReport rep = pth_power_test(u, 5, 4);
        CHECK(rep.verdict == PowerVerdict::LikelyPower);
        check_witnesses(rep.records, fixture_witnesses(e31.at("test_primes")));
    }
    SUBCASE("input validation and admissibility") {
        CHECK_THROWS_AS(epsilon_m1a(lat, sp, {1, 1}, alpha), std::invalid_argument);
        CHECK_THROWS_AS(epsilon_m1a(lat, sp, {3, 3}, sp.pi), std::invalid_argument);
        CHECK_THROWS_AS(epsilon_m1a(lat, sp, {3, 3}, QuadInt(F, 2, 1)), std::invalid_argument);
        CHECK_THROWS_AS(epsilon_m1a(lat, sp, {2, 2}, QuadInt(F, 7, 0)), AdmissibilityError);
    }
}

TEST_CASE("p-th power residue scan on synthetic inputs") {
    const FieldContext& F = make_field(1);
    long bits = 512;

    SUBCASE("a rational fifth power never witnesses") {
        AlgebraicUnit u = exact_unit(F, QuadInt(F, 32, 0), bits);
        PowerTestReport rep = pth_power_test(u, 5, 4);
        CHECK(rep.verdict == PowerVerdict::LikelyPower);
        CHECK(rep.primes_used == 4);
        for (const auto& r : rep.records) {
            CHECK(r.zeta == 1);
            CHECK_FALSE(r.witness);
        }
    }
    SUBCASE("2 is not a fifth power, first witness at q=41") {
        AlgebraicUnit u = exact_unit(F, QuadInt(F, 2, 0), bits);
        PowerTestReport rep = pth_power_test(u, 5, 4);
        CHECK(rep.verdict == PowerVerdict::NonPower);
        REQUIRE(!rep.records.empty());
        CHECK(rep.records[0].q == 41);
        CHECK(rep.records[0].omega_root == 9);
        CHECK(rep.records[0].unit_root == 2);
        CHECK(rep.records[0].zeta == 10);
        CHECK(rep.records[0].witness);
    }
    SUBCASE("an exact fifth power of a ring element passes") {
        QuadInt g(F, 3, 1);
        AlgebraicUnit u = exact_unit(F, g.pow(5), bits);
        CHECK(pth_power_test(u, 5, 4).verdict == PowerVerdict::LikelyPower);
    }
    SUBCASE("a fifth power spoiled by one extra factor is caught") {
        QuadInt g(F, 3, 1);
        AlgebraicUnit u = exact_unit(F, g.pow(5) * QuadInt(F, 1, 1), bits);
        CHECK(pth_power_test(u, 5, 6).verdict == PowerVerdict::NonPower);
    }
    SUBCASE("bounded scans degrade honestly") {
        AlgebraicUnit u = exact_unit(F, QuadInt(F, 2, 0), bits);
        CHECK_THROWS_AS(pth_power_test(u, 5, 4, 40), SearchExhausted);
        CHECK_THROWS_AS(pth_power_test(u, 5, 2), std::invalid_argument);
        AlgebraicUnit v = exact_unit(F, QuadInt(F, 32, 0), bits);
        PowerTestReport rep = pth_power_test(v, 5, 4, 45);  // only q=41 usable
        CHECK(rep.verdict == PowerVerdict::Inconclusive);
        CHECK(rep.primes_used == 1);
    }
}

TEST_CASE("surjectivity verdicts across the decision tree") {
    const FieldContext& F = make_field(1);
    PrecisionContext prec(2048);

    SUBCASE("index filter") {
        CHECK(surjectivity_verdict(1, 5, {1, 1}).verdict == Surjectivity::TriviallyZero);
        CHECK(surjectivity_verdict(1, 5, {3, 2}).verdict == Surjectivity::TriviallyZero);
        CHECK(surjectivity_verdict(1, 5, {2, 4}).verdict == Surjectivity::TriviallyZero);
    }
    SUBCASE("unconditional weight classes carry no numeric evidence") {
        for (auto m : std::vector<std::pair<long, long>>{{5, 5}, {9, 9}}) {
            SurjectivityVerdict v = surjectivity_verdict(1, 5, m);
            CHECK(v.verdict == Surjectivity::NotSurjective);
            CHECK_FALSE(v.power_test.has_value());
            CHECK_FALSE(v.unit.has_value());
        }
        for (auto m : std::vector<std::pair<long, long>>{{5, 1}, {1, 5}, {9, 1}}) {
            SurjectivityVerdict v = surjectivity_verdict(1, 5, m);
            CHECK(v.verdict == Surjectivity::Surjective);
            CHECK_FALSE(v.power_test.has_value());
            CHECK_FALSE(v.unit.has_value());
        }
        SurjectivityVerdict v37 = surjectivity_verdict(3, 7, {7, 1});
        CHECK(v37.verdict == Surjectivity::Surjective);
        CHECK_FALSE(v37.power_test.has_value());
    }
    SUBCASE("class-number facts close the (0,0) class without numerics") {
        SurjectivityVerdict open = surjectivity_verdict(1, 5, {4, 4});
        CHECK(open.verdict == Surjectivity::Inconclusive);
        CHECK_FALSE(open.power_test.has_value());
        VerdictConfig cfg;
        cfg.h_mod_p_coprime = true;
        SurjectivityVerdict closed = surjectivity_verdict(1, 5, {4, 4}, {}, cfg);
        CHECK(closed.verdict == Surjectivity::Surjective);
        CHECK_FALSE(closed.power_test.has_value());
    }
    SUBCASE("numeric route: NonPower proves surjectivity") {
        SurjectivityVerdict v = surjectivity_verdict(1, 5, {3, 3}, QuadInt(F, 3, 2), {}, prec);
        CHECK(v.verdict == Surjectivity::Surjective);
        REQUIRE(v.power_test.has_value());
        CHECK(v.power_test->verdict == PowerVerdict::NonPower);
        REQUIRE(v.unit.has_value());
        // the auxiliary ideal is printed in the evidence trail
        bool mentioned = false;
        for (const auto& s : v.evidence)
            if (s.find("3+2w") != std::string::npos) mentioned = true;
        CHECK(mentioned);
    }
    SUBCASE("weight shifts by p-1 land on the same verdict") {
        SurjectivityVerdict a = surjectivity_verdict(1, 5, {3, 3}, QuadInt(F, 3, 2), {}, prec);
        SurjectivityVerdict b = surjectivity_verdict(1, 5, {7, 7}, QuadInt(F, 3, 2), {}, prec);
        CHECK(a.verdict == b.verdict);
    }
    SUBCASE("automatic auxiliary ideal choice") {
        SurjectivityVerdict v = surjectivity_verdict(1, 5, {2, 2}, {}, {}, prec);
        CHECK(v.verdict == Surjectivity::Surjective);
        bool mentioned = false;
        for (const auto& s : v.evidence)
            if (s.find("2-3w") != std::string::npos) mentioned = true;
        CHECK(mentioned);
    }
    SUBCASE("mixed weight class records the generation test") {
        VerdictConfig cfg;
        cfg.h_mod_p_coprime = true;
        cfg.unique_prime_above_pi = true;
        SurjectivityVerdict v = surjectivity_verdict(1, 13, {5, 13}, {}, cfg);
        CHECK(v.verdict == Surjectivity::Surjective);
        REQUIRE(v.frobenius_generates.has_value());
        CHECK(*v.frobenius_generates);
        CHECK_FALSE(v.power_test.has_value());
    }
    SUBCASE("an inadmissible explicit ideal is rejected") {
        CHECK_THROWS_AS(surjectivity_verdict(1, 5, {2, 2}, QuadInt(F, 7, 0), {}, prec),
                        AdmissibilityError);
    }
    SUBCASE("under-precision recognition downgrades to Inconclusive, never fabricates") {
        // the (3,3) minpoly coefficients are ~700 bits; 256-bit recognition
        // must refuse rather than round to wrong integers
        SurjectivityVerdict v =
            surjectivity_verdict(1, 5, {3, 3}, QuadInt(F, 3, 2), {}, PrecisionContext(256));
        CHECK(v.verdict == Surjectivity::Inconclusive);
        CHECK_FALSE(v.power_test.has_value());
        CHECK_FALSE(v.unit.has_value());
        bool mentioned = false;
        for (const auto& s : v.evidence)
            if (s.find("recognition unreliable") != std::string::npos) mentioned = true;
        CHECK(mentioned);
    }
    SUBCASE("verdict names render") {
        CHECK(std::string(to_string(Surjectivity::Surjective)) == "Surjective");
        CHECK(std::string(to_string(Surjectivity::TriviallyZero)) == "TriviallyZero");
        CHECK(std::string(to_string(PowerVerdict::NonPower)) == "NonPower");
    }
}
