#include <doctest.h>

#include "helpers.hpp"
#include "dgc/bimodule.hpp"

using namespace dgc;

TEST_CASE("all bundled fixtures satisfy the dg-category axioms") {
    for (const char* f : {"m2x2.dgc", "kx2.dgc", "quiver2.dgc", "bigraded.dgc", "additive3.dgc"}) {
        Presentation P = load_fixture(f);
        VerificationReport rep = check_axioms(P.cat, f);
        INFO(f);
        for (const Check& c : rep.checks) {
            INFO(c.name << " witness: " << c.witness);
            CHECK(c.status == CheckStatus::Pass);
        }
    }
}

TEST_CASE("m2x2: composition and differential match the matrix-algebra example") {
    DgCat C = load_fixture("m2x2.dgc").cat;
    int X = C.object("X");
    auto mor = [&](const char* l) { return C.basis_morphism(X, X, C.hom[X][X].find(l)); };
    Morphism e12 = mor("e12"), e21 = mor("e21"), e11 = mor("e11");

    // e12 o e21 = e11
    CHECK(C.describe(C.compose(e12, e21)) == "e11");
    // e12 o e12 = 0
    CHECK(C.compose(e12, e12).is_zero());
    // id o f = f
    CHECK(C.compose(C.identity(X), e12).v == e12.v);
    // d(id) = 0, d(e12) = id, d(e21) = 0 (commutator oracle below)
    CHECK(C.is_closed(C.identity(X)));
    CHECK(C.differential(e12).v == C.identity(X).v);
    CHECK(C.is_closed(e21));
    CHECK(C.differential(e11).v == e21.v);

    // brute-force commutator oracle: d(f) = e21 o f - (-1)^{<iota,|f|>} f o e21
    for (const char* l : {"id", "e11", "e12", "e21"}) {
        Morphism f = mor(l);
        Morphism comm = DgCat::add(
            C.compose(e21, f),
            DgCat::scale(C.compose(f, e21),
                         sign_scalar(C.ring, 1 + C.grading.pair(C.grading.iota, f.deg))));
        CHECK(C.differential(f).v == comm.v);
    }
}

TEST_CASE("perturbed differential fails d^2 = 0 with witness") {
    Presentation P = load_fixture("m2x2.dgc");
    DgCat C = P.cat;
    int X = C.object("X");
    int i12 = C.hom[X][X].find("e12");
    int i11 = C.hom[X][X].find("e11");
    // d(e12) += e12 breaks homogeneity; perturb by a degree-valid entry instead:
    // d(e11) += id would break degree; use d(e12) += e11 (degree 0 = -1 + 1 ok).
    C.diff[X][X].add_at(i11, i12, Scalar(C.ring, 1));
    VerificationReport rep = check_axioms(C, "perturbed");
    bool dsq_failed = false;
    for (const Check& c : rep.checks)
        if (c.name == "d^2 = 0" && c.status == CheckStatus::Fail) {
            dsq_failed = true;
            CHECK(c.witness.find("e12") != std::string::npos);
        }
    CHECK(dsq_failed);
}

TEST_CASE("one-object trivial category passes") {
    DgCat k = unit_category(Ring{0}, classical_spec());
    CHECK(check_axioms(k).all_passed());
}

TEST_CASE("is_closed / is_exact / is_isomorphism") {
    DgCat C = load_fixture("m2x2.dgc").cat;
    int X = C.object("X");
    Morphism id = C.identity(X);
    CHECK(C.is_closed(id));

    // id is exact with witness h = e12 (the contracting homotopy)
    auto h = C.is_exact(id);
    REQUIRE(h.has_value());
    CHECK(C.describe(*h) == "e12");
    CHECK(C.differential(*h).v == id.v);

    // e21 is closed but not exact: d has image spanned by {id-ish, e21}? solve
    auto w = C.is_exact(C.basis_morphism(X, X, C.hom[X][X].find("e21")));
    CHECK(w.has_value()); // d(e11) = e21, so e21 is exact with witness e11
    CHECK(C.describe(*w) == "e11");

    // identity is an isomorphism; the zero morphism is not
    auto inv = C.is_isomorphism(id);
    REQUIRE(inv.has_value());
    CHECK(inv->v == id.v);
    Morphism z = C.zero_morphism(X, X, deg1(0));
    CHECK_FALSE(C.is_isomorphism(z).has_value());

    // e12 + e21 is a degree-mixing candidate; morphisms are strictly homogeneous
    // so test the homogeneous invertible e11 - ... instead: id - 2 e11 squares to id
    Morphism m = DgCat::add(id, DgCat::scale(C.basis_morphism(X, X, C.hom[X][X].find("e11")),
                                             Scalar(C.ring, -2)));
    auto minv = C.is_isomorphism(m);
    REQUIRE(minv.has_value());
    CHECK(C.compose(m, *minv).v == id.v);
}

TEST_CASE("error paths: composition mismatch, pairing rank mismatch") {
    DgCat Q = load_fixture("quiver2.dgc").cat;
    Morphism a = Q.basis_morphism(0, 1, 0); // U -> V
    CHECK_THROWS_AS(Q.compose(a, a), error); // a o a needs V = U
    GradingSpec g = classical_spec();
    CHECK_THROWS_AS(g.pair(deg1(1), Degree({1, 2})), error);
    CHECK(3 * deg1(2) == deg1(6));
}

TEST_CASE("zero-object category (empty objects block) parses") {
    std::istringstream in("ring q\ngrading {\n rank 1\n pairing 1\n iota [1]\n}\n");
    Presentation P = parse_presentation(in);
    CHECK(P.cat.nobj() == 0);
    CHECK(check_axioms(P.cat).all_passed());
}

TEST_CASE("parse rejects malformed input with line numbers") {
    std::istringstream in("ring q\ngrading {\n rank 1\n pairing 1\n iota [1]\n}\nobjects X\nhom X X {\n f [zzz]\n}\n");
    CHECK_THROWS(parse_presentation(in));
}
