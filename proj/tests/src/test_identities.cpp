#include <map>
#include <set>
#include <string>
#include <vector>

#include "cmunits/errors.hpp"
#include "cmunits/identities.hpp"
#include "doctest.h"

using namespace cmunits;

static Real tol_for(long bits) { return Real::pow2(-bits / 2 + 8, 64); }

TEST_CASE("scale_coords implements multiplication on lattice coordinates") {
    const FieldContext& F = make_field(3);
    Coords z{mpq_class(1, 7), mpq_class(2, 5)};
    // omega * (x + y*omega) = -n*y + (x + t*y) omega with t=1, n=1
    Coords wz = scale_coords(F, QuadInt(F, 0, 1), z);
    CHECK(wz[0] == mpq_class(3, 5));   // -2/5 mod 1
    CHECK(wz[1] == mpq_class(1, 7) + mpq_class(2, 5));
    // multiplying by 1 fixes, composition matches product
    CHECK(scale_coords(F, QuadInt(F, 1, 0), z) == z);
    QuadInt c1(F, 2, -1), c2(F, 1, 3);
    CHECK(scale_coords(F, c1, scale_coords(F, c2, z)) == scale_coords(F, c1 * c2, z));
}

TEST_CASE("exponent constants: frozen values at d=1, p=5") {
    const FieldContext& F = make_field(1);
    SplitPrime sp = split_prime(F, 5);

    // m=(2,2): x = y = N(pi) = 5 mod p^n, so at n=2
    //   fiber  = (1-25)/((1-5)^2) = 1/16 = 11 mod 25
    //   column = 1/(1-5) = -1/4 = 6 mod 25
    ExponentConstants c2 = exponent_constants({2, 2}, sp, 2);
    CHECK(c2.fiber == 11);
    CHECK(c2.column == 6);
    // same input at n=3: 1/16 = 61, -1/4 = 6 mod 125 (hand derivation)
    ExponentConstants c3 = exponent_constants({2, 2}, sp, 3);
    CHECK(c3.fiber == 61);
    CHECK(c3.column == 6);
    // m=(3,3): x = y = 25 = 0 mod 25, both constants collapse to 1
    ExponentConstants c33 = exponent_constants({3, 3}, sp, 2);
    CHECK(c33.fiber == 1);
    CHECK(c33.column == 1);

    // interior weights land in 1 + pZ_p
    for (auto m : std::vector<std::pair<long, long>>{{2, 2}, {2, 4}, {4, 2}, {3, 5}, {6, 6}}) {
        for (int n = 1; n <= 3; ++n) {
            ExponentConstants c = exponent_constants(m, sp, n);
            CHECK(c.fiber % 5 == 1);
            CHECK(c.column % 5 == 1);
        }
    }

    CHECK_THROWS_AS(exponent_constants({1, 1}, sp, 2), NonInvertibleDenominator);
    CHECK_THROWS_AS(exponent_constants({0, 2}, sp, 2), std::invalid_argument);
}

TEST_CASE("individual identity checks pass at fresh parameters") {
    const FieldContext& F = make_field(1);
    long bits = 192;
    Lattice lat = make_lattice(F, PrecisionContext(bits));
    QuadInt A(F, 1, -2);   // norm 5
    QuadInt B(F, 3, 2);    // norm 13, coprime to A

    SUBCASE("distribution") {
        IdentityReport r = check_distribution(lat, A, B, {mpq_class(1, 7), mpq_class(3, 11)});
        CHECK(r.pass);
        CHECK(r.residual < tol_for(bits));
        CHECK(r.name == "distribution");
        CHECK(r.parameters.rfind("d=1 ", 0) == 0);
    }
    SUBCASE("galois action at a rational torsion level") {
        Coords tq = torsion_coords(QuadInt(F, 1, 0), QuadInt(F, 7, 0));
        CHECK(check_galois_action(lat, A, B, tq).pass);
        CHECK(check_galois_action(lat, A, F.units.at(1), tq).pass);
        CHECK(check_galois_action(lat, A, B * B, tq).name == "galois-action");
        CHECK(check_galois_action(lat, A, B * B, tq).pass);
    }
    SUBCASE("cross relation, also at a unit-rotated point") {
        Coords z{mpq_class(2, 9), mpq_class(5, 13)};
        IdentityReport r = check_cross_relation(lat, B, A, z);
        CHECK(r.pass);
        CHECK(r.name == "cross-relation");
        CHECK(check_cross_relation(lat, B, A, scale_coords(F, F.units.at(1), z)).pass);
    }
    SUBCASE("norm relation, split and ramified branches") {
        SplitPrime spl = split_prime(F, 13);
        QuadInt one(F, 1, 0);
        IdentityReport split_branch = check_norm_relation(lat, spl.pi, spl.pi_bar, A, one);
        CHECK(split_branch.pass);
        CHECK(split_branch.name == "norm-relation");
        IdentityReport ram_branch = check_norm_relation(lat, spl.pi, spl.pi, A, one);
        CHECK(ram_branch.pass);
        CHECK(ram_branch.name == "norm-relation-ramified-branch");
    }
    SUBCASE("basis rearrangement ladder at p=5") {
        SplitPrime sp = split_prime(F, 5);
        QuadInt alpha(F, 2, -3);  // norm 13, coprime to 30
        CHECK(check_fiber_ladder_step(lat, sp, 1, alpha, 0, 1).pass);
        CHECK(check_fiber_ladder_step(lat, sp, 2, alpha, 5, 1).pass);
        CHECK(check_fiber_ladder_step(lat, sp, 2, alpha, 20, 7).pass);
        CHECK(check_column_norm_step(lat, sp, 1, alpha, 1).pass);
        CHECK(check_column_norm_step(lat, sp, 2, alpha, 3).pass);
        CHECK(check_fiber_ladder_step(lat, sp, 2, alpha, 5, 1).name == "fiber-ladder-step");
        CHECK(check_column_norm_step(lat, sp, 1, alpha, 1).name == "column-norm-step");
    }
}

TEST_CASE("identity checks validate their inputs") {
    const FieldContext& F = make_field(1);
    Lattice lat = make_lattice(F, PrecisionContext(128));
    QuadInt A(F, 1, -2), unit(F, 0, 1);
    Coords z{mpq_class(1, 7), mpq_class(1, 7)};

    CHECK_THROWS_AS(check_distribution(lat, A, unit, z), std::invalid_argument);
    CHECK_THROWS_AS(check_distribution(lat, A, A, z), std::invalid_argument);
    CHECK_THROWS_AS(check_cross_relation(lat, A, A * A, z), std::invalid_argument);
    // c must be prime to the torsion level
    CHECK_THROWS_AS(
        check_galois_action(lat, A, QuadInt(F, 7, 0), {mpq_class(1, 7), mpq_class(0)}),
        std::invalid_argument);
    SplitPrime sp13 = split_prime(F, 13);
    // r inside a prime of (f*l) is not a primitive torsion residue
    CHECK_THROWS_AS(check_norm_relation(lat, sp13.pi, sp13.pi_bar, A, sp13.pi),
                    BadCosets);
    SplitPrime sp5 = split_prime(F, 5);
    QuadInt alpha(F, 2, -3);
    CHECK_THROWS_AS(check_fiber_ladder_step(lat, sp5, 2, alpha, 3, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_fiber_ladder_step(lat, sp5, 2, alpha, 25, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_fiber_ladder_step(lat, sp5, 1, alpha, 0, 5),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_column_norm_step(lat, sp5, 1, alpha, 5), std::invalid_argument);
    CHECK_THROWS_AS(check_column_norm_step(lat, sp5, 0, alpha, 1), std::invalid_argument);
}

TEST_CASE("full identity battery: size, coverage, determinism") {
    PrecisionContext prec(192);
    std::vector<IdentityReport> reps = run_identity_suite(prec, 12345, 3);
    CHECK(reps.size() == 97);

    std::set<std::string> names;
    std::map<std::string, std::set<std::string>> fields_by_name;
    for (const auto& r : reps) {
        CHECK(r.pass);
        CHECK(r.residual < tol_for(192));
        REQUIRE(r.parameters.rfind("d=", 0) == 0);
        names.insert(r.name);
        fields_by_name[r.name].insert(r.parameters.substr(0, r.parameters.find(' ')));
    }
    CHECK(names == std::set<std::string>{"distribution", "galois-action", "cross-relation",
                                         "norm-relation", "norm-relation-ramified-branch",
                                         "fiber-ladder-step", "column-norm-step"});
    // the portable families cover all nine fields
    for (const char* fam : {"distribution", "galois-action", "cross-relation", "norm-relation"})
        CHECK(fields_by_name[fam].size() == 9);
    // the ladder steps are pinned to d=1, p=5
    CHECK(fields_by_name["fiber-ladder-step"] == std::set<std::string>{"d=1"});
    CHECK(fields_by_name["column-norm-step"] == std::set<std::string>{"d=1"});

    // same seed, different worker count: byte-identical report stream
    std::vector<IdentityReport> again = run_identity_suite(prec, 12345, 1);
    REQUIRE(again.size() == reps.size());
    for (size_t i = 0; i < reps.size(); ++i) {
        CHECK(again[i].name == reps[i].name);
        CHECK(again[i].parameters == reps[i].parameters);
        CHECK(again[i].residual == reps[i].residual);
    }

    // a different seed moves the sample points but not the outcome
    std::vector<IdentityReport> other = run_identity_suite(prec, 999, 2);
    CHECK(other.size() == 97);
    bool some_param_changed = false;
    for (size_t i = 0; i < other.size(); ++i) {
        CHECK(other[i].pass);
        if (other[i].parameters != reps[i].parameters) some_param_changed = true;
    }
    CHECK(some_param_changed);
}
