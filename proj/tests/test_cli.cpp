#include <doctest.h>

#include <sstream>

#include "dgc/suites.hpp"
#include "helpers.hpp"

using namespace dgc;

TEST_CASE("parse/export round-trips on all bundled fixtures") {
    for (const char* f : {"m2x2.dgc", "kx2.dgc", "quiver2.dgc", "bigraded.dgc", "additive3.dgc"}) {
        INFO(f);
        Presentation P = load_fixture(f);
        std::string text = export_presentation(P);
        std::istringstream in(text);
        Presentation Q = parse_presentation(in);
        CHECK(same_presentation(P, Q));
        // export is deterministic
        CHECK(export_presentation(Q) == text);
    }
}

TEST_CASE("reports are deterministic for fixed inputs") {
    Presentation P = load_fixture("kx2.dgc");
    SuiteParams sp;
    sp.R = 2;
    VerificationReport r1 = run_suite("bar", P, sp);
    VerificationReport r2 = run_suite("bar", P, sp);
    REQUIRE(r1.checks.size() == r2.checks.size());
    for (size_t i = 0; i < r1.checks.size(); ++i) {
        CHECK(r1.checks[i].name == r2.checks[i].name);
        CHECK(r1.checks[i].status == r2.checks[i].status);
        CHECK(r1.checks[i].witness == r2.checks[i].witness);
    }
    CHECK(r1.params == r2.params);
}

TEST_CASE("suites run on their fixtures") {
    SuiteParams sp;
    sp.R = 2;
    sp.rmax = 1;
    CHECK(run_suite("axioms", load_fixture("m2x2.dgc"), sp).all_passed());
    CHECK(run_suite("counterexample", load_fixture("m2x2.dgc"), sp).all_passed());
    CHECK(run_suite("bar", load_fixture("kx2.dgc"), sp).all_passed());
    // every envelope view of every fixture passes the axiom suite
    for (const char* f : {"m2x2.dgc", "kx2.dgc", "quiver2.dgc", "bigraded.dgc", "additive3.dgc"}) {
        INFO(f);
        CHECK(run_suite("envelopes", load_fixture(f), sp).all_passed());
    }
    CHECK_THROWS_AS(run_suite("nope", load_fixture("kx2.dgc"), sp), error);

    // counterexample is inapplicable without a twix block, and does not fail
    VerificationReport r = run_suite("counterexample", load_fixture("kx2.dgc"), sp);
    CHECK(r.all_passed());
    bool inapp = false;
    for (const Check& c : r.checks) inapp = inapp || c.status == CheckStatus::Inapplicable;
    CHECK(inapp);
}

TEST_CASE("a perturbed fixture is rejected with a witness") {
    // d(x) = one has the wrong degree and must be refused by validation
    std::string text = R"(
ring q
grading {
 rank 1
 pairing 1
 iota [1]
}
objects P
hom P P {
 one [0]
 x [0]
}
diff P P {
 x : one 1
}
comp P P P {
 one one : one 1
 one x : x 1
 x one : x 1
}
unit P one
)";
    std::istringstream in(text);
    Presentation P = parse_presentation(in);
    VerificationReport rep = check_axioms(P.cat);
    CHECK_FALSE(rep.all_passed());
}

TEST_CASE("export of a zero differential yields no d-lines") {
    Presentation P = load_fixture("kx2.dgc");
    std::string text = export_presentation(P);
    CHECK(text.find("diff") == std::string::npos);
}

TEST_CASE("bigraded fixture: pairing and iota survive the round trip") {
    Presentation P = load_fixture("bigraded.dgc");
    CHECK(P.cat.grading.rank == 2);
    CHECK(P.cat.grading.iota == Degree({1, 0}));
    CHECK(P.cat.grading.pair(Degree({0, 1}), Degree({0, 1})) == 1);
    std::string text = export_presentation(P);
    std::istringstream in(text);
    Presentation Q = parse_presentation(in);
    CHECK(Q.cat.grading.pairing == P.cat.grading.pairing);
}

TEST_CASE("bimodule blocks: parse, instantiate, validate, round trip") {
    std::string text = R"(
ring q
grading {
 rank 1
 pairing 1
 iota [1]
}
objects U V
hom U U {
 idU [0]
}
hom V V {
 idV [0]
}
hom U V {
 a [0]
}
comp U U U {
 idU idU : idU 1
}
comp V V V {
 idV idV : idV 1
}
comp U U V {
 a idU : a 1
}
comp U V V {
 idV a : a 1
}
unit U idU
unit V idV
bimodule F {
 component U U {
  m [0]
 }
 component V U {
  am [0]
 }
 actl V U U {
  a m : am 1
 }
}
)";
    std::istringstream in(text);
    Presentation P = parse_presentation(in);
    REQUIRE(P.bimodules.size() == 1);
    Bimodule B = instantiate_bimodule(P.cat, P.bimodule_named("F"));
    CHECK(check_bimodule_axioms(B, "F").all_passed());
    CHECK(B.comp[1][0].dim() == 1);
    // the non-unit left action moves m to am
    Morphism a = P.cat.basis_morphism(0, 1, 0);
    BimElt m = B.basis(0, 0, 0);
    CHECK(B.act_left(a, m).v == svec_unit(0, Scalar(P.cat.ring, 1)));
    // round trip
    std::string out = export_presentation(P);
    std::istringstream in2(out);
    Presentation Q = parse_presentation(in2);
    CHECK(same_presentation(P, Q));
    CHECK(export_presentation(Q) == out);
}

TEST_CASE("mod-p presentations parse and verify") {
    std::string text = R"(
ring fp 5
grading {
 rank 1
 pairing 1
 iota [1]
}
objects P
hom P P {
 one [0]
 x [0]
}
comp P P P {
 one one : one 1
 one x : x 1
 x one : x 1
 x x : x 3
}
unit P one
)";
    // x*x = 3x over F_5: associativity (xx)x = 3xx = 9x = 4x, x(xx) = 3xx = 4x
    std::istringstream in(text);
    Presentation P = parse_presentation(in);
    CHECK(P.cat.ring.p == 5);
    CHECK(check_axioms(P.cat).all_passed());
    SuiteParams sp;
    sp.R = 2;
    CHECK(run_suite("bar", P, sp).all_passed());
}
