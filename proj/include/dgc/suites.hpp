// Named verification suites driven by the CLI: each keys the checks of one
// part of the library to a parsed presentation.

#pragma once

#include "dgc/morita.hpp"
#include "dgc/opposite.hpp"
#include "dgc/parse.hpp"

namespace dgc {

struct SuiteParams {
    int R = 2;
    int rmax = 2;
    int nmax = 3;
    std::optional<Window> window;
    unsigned long long seed = 0;
};

inline Window default_window(const DgCat& C, int R) {
    // conservative reliable window for bar-based checks: reliable degrees
    // intersected with the degree support of the truncated bar
    Window w;
    if (C.grading.rank < 1) return w;
    long long mu_lo = 0, mu_hi = 0;
    bool any = false;
    for (int x = 0; x < C.nobj(); ++x)
        for (int y = 0; y < C.nobj(); ++y)
            for (const Degree& d : C.hom[x][y].deg) {
                if (!any) mu_lo = mu_hi = d.c[0];
                mu_lo = std::min<long long>(mu_lo, d.c[0]);
                mu_hi = std::max<long long>(mu_hi, d.c[0]);
                any = true;
            }
    if (!any) return w;
    long long support_lo = (R + 2) * mu_lo - R * C.grading.iota.c[0];
    long long support_hi = std::max<long long>((R + 2) * mu_hi - R * C.grading.iota.c[0], 2 * mu_hi);
    long long lo = 0, hi = 0;
    bool found = false;
    for (long long d = support_lo - 1; d <= support_hi + 1; ++d) {
        Degree delta = static_cast<int>(d) * C.grading.iota;
        if (bar_degree_reliable(C, R, delta)) {
            if (!found || d < lo) lo = d;
            if (!found || d > hi) hi = d;
            found = true;
        }
    }
    if (found) {
        w.lo = std::max(lo * C.grading.iota.c[0], support_lo);
        w.hi = std::min(hi * C.grading.iota.c[0], support_hi);
        if (*w.lo > *w.hi) std::swap(*w.lo, *w.hi);
    }
    return w;
}

inline VerificationReport suite_axioms(const Presentation& P, const SuiteParams&) {
    VerificationReport rep = check_axioms(P.cat, "fixture");
    rep.suite = "axioms";
    for (const auto& [name, T] : P.twix) {
        auto bad = check_matrix_mc(P.cat, T);
        rep.add("twix '" + name + "' Maurer-Cartan", !bad.has_value(),
                bad ? "residual at (" + std::to_string(bad->first.first) + "," +
                          std::to_string(bad->first.second) + ")"
                    : "");
    }
    return rep;
}

// views instantiated for a fixture: eta objects plus a shifted object, a sum,
// any twix blocks, and a cone when a closed degree-zero arrow exists
struct FixtureViews {
    std::shared_ptr<EnvelopeView> sb, add, tw, pretr;
    std::optional<Morphism> cone_arrow;
};

inline FixtureViews make_views(const Presentation& P) {
    const DgCat& C = P.cat;
    FixtureViews v;
    v.sb = std::make_shared<EnvelopeView>(C, EnvKind::SB);
    v.sb->add_object(sb_object(C, 0, C.grading.iota));
    v.add = std::make_shared<EnvelopeView>(C, EnvKind::Add);
    if (C.nobj() >= 2)
        v.add->add_object(add_object(C, {0, 1}));
    else if (C.nobj() == 1)
        v.add->add_object(add_object(C, {0, 0}, C.obj[0] + "+" + C.obj[0]));
    v.tw = std::make_shared<EnvelopeView>(C, EnvKind::Tw);
    for (const auto& [name, T] : P.twix)
        if (T.size() == 1 && T.ent[0].shift.is_zero()) v.tw->add_object(T);
    v.pretr = std::make_shared<EnvelopeView>(C, EnvKind::Pretr);
    for (int x = 0; x < C.nobj() && !v.cone_arrow; ++x)
        for (int y = 0; y < C.nobj() && !v.cone_arrow; ++y)
            for (int i = 0; i < C.hom[x][y].dim(); ++i) {
                Morphism f = C.basis_morphism(x, y, i);
                if (!f.deg.is_zero() || !C.is_closed(f)) continue;
                if (x == y && f.v == C.unit[x]) continue;
                v.cone_arrow = f;
                break;
            }
    if (v.cone_arrow) v.pretr->add_object(cone(C, *v.cone_arrow));
    return v;
}

inline VerificationReport suite_envelopes(const Presentation& P, const SuiteParams&) {
    VerificationReport rep;
    rep.suite = "envelopes";
    const DgCat& C = P.cat;
    FixtureViews v = make_views(P);
    for (auto& [kindname, view] :
         std::initializer_list<std::pair<const char*, std::shared_ptr<EnvelopeView>>>{
             {"SB", v.sb}, {"Add", v.add}, {"Tw", v.tw}, {"pretr", v.pretr}}) {
        VerificationReport sub = check_axioms(view->cat(), kindname);
        rep.add(std::string(kindname) + " envelope axioms", sub.all_passed(),
                sub.all_passed() ? "" : sub.checks.front().witness);
    }
    // sigma/pi and psi structure identities on every instantiated object
    bool sp = true;
    std::string spw;
    for (auto& view : {v.sb, v.add, v.tw, v.pretr}) {
        const DgCat& E = view->cat();
        for (int t = view->base_objects(); t < view->nobj() && sp; ++t) {
            const TwixObject& T = view->object(t);
            for (int a = 0; a < T.size() && sp; ++a) {
                Morphism lhs = E.differential(view->sigma(t, a));
                Morphism rhs = E.zero_morphism(lhs.src, lhs.dst, lhs.deg);
                for (int b = 0; b < T.size(); ++b) {
                    Morphism tw = T.twist_at(C, b, a);
                    if (tw.is_zero()) continue;
                    rhs = DgCat::add(rhs, E.compose(view->sigma(t, b), view->eta_morphism(tw)));
                }
                if (lhs.v != rhs.v) {
                    sp = false;
                    spw = "d(sigma) at " + T.name;
                }
                for (int b = 0; b < T.size() && sp; ++b) {
                    Morphism ps = E.compose(view->pi(t, a), view->sigma(t, b));
                    SVec want = (a == b) ? C.unit[T.ent[a].obj] : SVec{};
                    if (ps.v != want) {
                        sp = false;
                        spw = "pi o sigma at " + T.name;
                    }
                }
            }
        }
    }
    rep.add("sigma/pi realization identities", sp, spw);
    // cones pass MC and one-sidedness; Cone(id) eliminates to zero
    if (v.cone_arrow) {
        TwixObject cn = cone(C, *v.cone_arrow);
        rep.add("cone passes matrix MC", !check_matrix_mc(C, cn).has_value());
        rep.add("cone is one-sided", is_one_sided(cn).has_value());
    } else {
        rep.add_status("cone construction", CheckStatus::Inapplicable, "no closed degree-0 arrow");
    }
    {
        TwixObject cid = cone(C, C.identity(0));
        Elimination e = gaussian_eliminate(C, cid, 1, 0);
        rep.add("Cone(id) eliminates to the zero object", e.out.size() == 0);
    }
    // nonpositive grading certificate
    {
        TwixObject probe = cone(C, C.identity(0));
        auto cert = nonpositive_implies_onesided(C, probe);
        if (cert == OneSidedCert::Certified) rep.add("nonpositive grading forces one-sidedness", true);
        else rep.add_status("nonpositive grading forces one-sidedness", CheckStatus::Inapplicable,
                            "hypotheses not met");
    }
    // eta is fully faithful; mu_SB satisfies the unit law
    DgFunctor eta = eta_functor(*v.sb);
    rep.add("eta fully faithful dg functor",
            check_dg_functor(eta).all_passed() && is_fully_faithful(eta));
    {
        EnvelopeView outer(v.sb->cat(), EnvKind::SB);
        DgFunctor eta2 = eta_functor(outer);
        DgFunctor comp = compose(mu_sb(outer, *v.sb, *v.sb), eta2);
        rep.add("mu_SB o eta = id", is_identity_on_basis(comp));
    }
    return rep;
}

inline VerificationReport suite_signs(const Presentation& P, const SuiteParams& sp) {
    VerificationReport rep;
    rep.suite = "signs";
    const DgCat& C = P.cat;
    const GradingSpec& g = C.grading;
    // star closed form vs transposition oracle, all degree tuples in {-2..2}^6
    // along multiples of iota (plus mixed tuples for higher rank)
    {
        long long mism = 0;
        auto sweep = [&](auto mk) {
            for (int i = -2; i <= 2; ++i)
                for (int ip = -2; ip <= 2; ++ip)
                    for (int j = -2; j <= 2; ++j)
                        for (int jp = -2; jp <= 2; ++jp)
                            for (int k = -2; k <= 2; ++k)
                                for (int l = -2; l <= 2; ++l)
                                    if (star_sb_sign_oracle(g, mk(i), mk(ip), mk(j), mk(jp), mk(k),
                                                            mk(l)) !=
                                        star_sb_sign_closed(g, mk(i), mk(ip), mk(j), mk(jp), mk(k),
                                                            mk(l)))
                                        ++mism;
        };
        sweep([&](int t) { return t * g.iota; });
        if (g.rank >= 2) {
            for (int c = 0; c < g.rank; ++c)
                sweep([&](int t) {
                    Degree d = Degree::zero(g.rank);
                    d.c[c] = t;
                    return d;
                });
        }
        rep.add("star sign closed form == transposition oracle", mism == 0,
                std::to_string(mism) + " mismatches");
    }
    // opposite rules: dg functor + double-op canonical identification over views
    {
        DgCat Cop = opposite(C);
        EnvelopeView V(C, EnvKind::SB);
        V.add_object(sb_object(C, 0, g.iota));
        V.add_object(sb_object(C, 0, (-2) * g.iota));
        EnvelopeView Vop(Cop, EnvKind::SB);
        Vop.add_object(sb_object(Cop, 0, -g.iota));
        Vop.add_object(sb_object(Cop, 0, 2 * g.iota));
        EnvelopeView Vback(C, EnvKind::SB);
        Vback.add_object(sb_object(C, 0, g.iota));
        Vback.add_object(sb_object(C, 0, (-2) * g.iota));
        OpIso iso1 = envelope_op_iso(V, Vop);
        OpIso iso2 = envelope_op_iso(Vop, Vback);
        rep.add("op iso is a dg functor", check_dg_functor(iso1.fwd).all_passed());
        rep.add("op iso fully faithful", is_fully_faithful(iso1.fwd));
        bool invol = true;
        for (int x = 0; x < V.nobj() && invol; ++x)
            for (int y = 0; y < V.nobj() && invol; ++y) {
                const GradedModule& H = V.cat().hom[x][y];
                for (int i = 0; i < H.dim(); ++i) {
                    Morphism fop{y, x, H.deg[i], svec_unit(i, Scalar(C.ring, 1))};
                    Morphism once = iso1.fwd.apply(fop);
                    Morphism opop = iso2.fwd.apply(Morphism{once.dst, once.src, once.deg, once.v});
                    const ViewBasisInfo& e = V.basis_info(x, y)[i];
                    Degree ia = V.object(y).ent[e.a].shift;
                    Degree jb = V.object(x).ent[e.b].shift;
                    int sg = g.pair(ia, ia) + g.pair(jb, jb);
                    if (!(opop.src == x && opop.dst == y &&
                          opop.v == svec_scale(svec_unit(i, Scalar(C.ring, 1)),
                                               sign_scalar(C.ring, sg)))) {
                        invol = false;
                        break;
                    }
                }
            }
        rep.add("double op == canonical sign identification", invol);
    }
    // expansion sign: brute sigma difference vs closed form
    {
        long long mism = 0;
        for (int r = 0; r <= sp.rmax && r <= 3; ++r) {
            std::vector<int> ks(r + 2, 0), ns(r + 1, 0);
            std::function<void(int)> sweep_k = [&](int u) {
                if (u == r + 2) {
                    std::function<void(int)> sweep_n = [&](int v2) {
                        if (v2 == r + 1) {
                            if (expansion_sign_brute(ks, ns) != expansion_sign_closed(ks, ns))
                                ++mism;
                            return;
                        }
                        for (int n = 0; n <= sp.nmax; ++n) {
                            ns[v2] = n;
                            sweep_n(v2 + 1);
                        }
                    };
                    sweep_n(0);
                    return;
                }
                for (int k = 0; k <= 1; ++k) {
                    ks[u] = k;
                    sweep_k(u + 1);
                }
            };
            sweep_k(0);
        }
        rep.add("alpha-expansion sign == brute sigma difference", mism == 0);
    }
    return rep;
}

inline VerificationReport suite_bar(const Presentation& P, const SuiteParams& sp) {
    VerificationReport rep;
    rep.suite = "bar";
    const DgCat& C = P.cat;
    auto bar = bar_truncated(C, sp.R);
    bool dsq = true;
    for (int x = 0; x < C.nobj() && dsq; ++x)
        for (int y = 0; y < C.nobj(); ++y)
            if (!(bar->bim.diff[x][y] * bar->bim.diff[x][y]).is_zero()) dsq = false;
    rep.add("Bar_R d^2 = 0", dsq);
    rep.add("bar bimodule axioms", check_bimodule_axioms(bar->bim).all_passed());
    Bimodule unit = identity_bimodule(C);
    BimoduleMap eps = bar_counit(*bar, unit);
    rep.add("counit is a chain map", map_is_closed(eps));
    rep.add("counit is equivariant", check_bimodule_map(eps).all_passed());
    Window win = sp.window ? *sp.window : default_window(C, sp.R);
    if (win.lo || win.hi) {
        std::string w;
        bool q = is_quasi_iso(eps, win, &w);
        rep.add("Cone(counit) acyclic in window " + win.str(), q, w);
    } else {
        rep.add_status("Cone(counit) acyclic", CheckStatus::Unreliable,
                       "no certifiable window at this truncation");
    }
    // primed convention is an isomorphism of complexes squaring to identity
    BimoduleMap prim = primed_iso(*bar);
    BimoduleMap sq = map_compose(prim, prim);
    bool invol = true;
    BimoduleMap idm = identity_map(bar->bim);
    for (size_t x = 0; x < sq.comp.size() && invol; ++x)
        for (size_t y = 0; y < sq.comp[x].size(); ++y)
            if (!(sq.comp[x][y] == idm.comp[x][y])) invol = false;
    rep.add("primed conversion squares to the identity", invol);
    return rep;
}

inline VerificationReport suite_xi(const Presentation& P, const SuiteParams& sp) {
    VerificationReport rep;
    rep.suite = "xi";
    const DgCat& C = P.cat;
    FixtureViews v = make_views(P);
    auto run = [&](const char* name, const EnvelopeView& V, auto make_xi, int Rsrc, int Rtgt,
                   bool boundary_exact) {
        auto src = bar_truncated(V.cat(), Rsrc);
        std::vector<int> interior;
        for (int i = 0; i < V.base_objects(); ++i) interior.push_back(i);
        auto tgt = bar_relative(V.cat(), interior, Rtgt);
        Bimodule unit = identity_bimodule(V.cat());
        BimoduleMap es = bar_counit(*src, unit);
        BimoduleMap et = bar_counit(*tgt, unit);
        BimoduleMap xi = make_xi(V, *src, *tgt);
        if (boundary_exact) rep.add(std::string(name) + " closed", map_is_closed(xi));
        else {
            std::string w;
            rep.add(std::string(name) + " chain map below truncation boundary",
                    is_chain_map_below_level(xi, *tgt, tgt->R - 1, &w), w);
        }
        rep.add(std::string(name) + " bimodule-equivariant", check_bimodule_map(xi).all_passed());
        rep.add(std::string(name) + " counit-compatible", check_counit_compat(xi, es, et));
    };
    run("Xi_SB", *v.sb, [](const EnvelopeView& V, const BarComplex& s, const BarComplex& t) {
        return xi_sb(V, s, t);
    }, sp.rmax, sp.rmax, true);
    run("Xi_A", *v.add, [](const EnvelopeView& V, const BarComplex& s, const BarComplex& t) {
        return xi_add(V, s, t);
    }, sp.rmax, sp.rmax, true);
    if (v.tw->nobj() > v.tw->base_objects())
        run("Xi_Tw", *v.tw, [](const EnvelopeView& V, const BarComplex& s, const BarComplex& t) {
            return xi_tw(V, s, t);
        }, std::min(sp.rmax, 1), std::min(sp.rmax, 1) + 3, false);
    else rep.add_status("Xi_Tw", CheckStatus::Inapplicable, "no twisted object declared");
    if (v.pretr->nobj() > v.pretr->base_objects()) {
        int extra = 0;
        for (int i = 0; i < v.pretr->nobj(); ++i)
            extra = std::max(extra, v.pretr->object(i).size() - 1);
        run("Xi_pretr", *v.pretr,
            [](const EnvelopeView& V, const BarComplex& s, const BarComplex& t) {
                return xi_pretr(V, s, t);
            }, sp.rmax, sp.rmax + extra * (sp.rmax + 1), true);
    } else rep.add_status("Xi_pretr", CheckStatus::Inapplicable, "no cone instance available");
    return rep;
}

inline VerificationReport suite_idempotents(const Presentation& P, const SuiteParams& sp) {
    VerificationReport rep;
    rep.suite = "idempotents";
    const DgCat& C = P.cat;
    Bimodule unit = identity_bimodule(C);
    std::vector<int> objs;
    for (int i = 0; i < C.nobj(); ++i) objs.push_back(i);
    auto X = counital_CxC(C, objs, unit);
    int N = 3;
    auto AC = build_AC(C, X->bim, X->eps, N);
    rep.add("A_C matrix MC at truncation", !check_lft_mc(AC->A).has_value());
    rep.add("P_C matrix MC at truncation", !check_lft_mc(AC->P).has_value());
    BimoduleMap Delta = comultiplication(*X, AC->chain);
    DecMap dR{map_scale(Delta, Scalar(C.ring, -1)), -C.grading.iota, (-2) * C.grading.iota};
    BimoduleMap hz;
    hz.src = hz.tgt = &AC->chain.power(1);
    hz.deg = -C.grading.iota;
    hz.init_shapes();
    DecMap h{hz, -C.grading.iota, -C.grading.iota};
    rep.merge(verify_H_contraction(*AC, dR, h, N), "H");
    auto bar = bar_relative(C, objs, std::min(sp.R, 2));
    rep.merge(bar_equals_PC(C, objs, std::min(sp.R, 2), *bar, *AC, *X), "BarPC");
    return rep;
}

inline VerificationReport suite_morita(const Presentation& P, const SuiteParams& sp) {
    VerificationReport rep;
    rep.suite = "morita";
    const DgCat& C = P.cat;
    Window win = sp.window ? *sp.window : default_window(C, sp.R);
    {
        EnvelopeView SB(C, EnvKind::SB);
        SB.add_object(sb_object(C, 0, C.grading.iota));
        MoritaWitness mw = morita_witness(C, SB, EnvKind::SB, sp.R, win);
        rep.merge(mw.report, "SB");
    }
    {
        EnvelopeView AD(C, EnvKind::Add);
        if (C.nobj() >= 2) AD.add_object(add_object(C, {0, 1}));
        else AD.add_object(add_object(C, {0, 0}, "double"));
        MoritaWitness mw = morita_witness(C, AD, EnvKind::Add, sp.R, win);
        rep.merge(mw.report, "Add");
    }
    return rep;
}

inline VerificationReport suite_counterexample(const Presentation& P, const SuiteParams&) {
    VerificationReport rep;
    rep.suite = "counterexample";
    const DgCat& C = P.cat;
    // needs a declared single-entry twisted object (the fixture's twix block)
    const TwixObject* T = nullptr;
    for (const auto& [name, t] : P.twix)
        if (t.size() == 1 && t.ent[0].shift.is_zero() && t.twist.count({0, 0})) T = &t;
    if (!T) {
        rep.add_status("counterexample", CheckStatus::Inapplicable, "no twix block declared");
        return rep;
    }
    int X = T->ent[0].obj;
    auto h = is_contractible(C, X);
    rep.add("base object is contractible", h.has_value());
    if (h) rep.add("contracting homotopy is e12", C.describe(*h) == "e12", C.describe(*h));
    EnvelopeView V(C, EnvKind::Tw);
    int t = V.add_object(*T);
    rep.add("End(tw) has zero differential", V.cat().diff[t][t].is_zero());
    rep.add("tw is not contractible", !is_contractible(V.cat(), t).has_value());
    auto ranks = homology_ranks(C.grading, end_complex(V.cat(), t));
    bool ok = ranks[-C.grading.iota] == 1 && ranks[Degree::zero(C.grading.rank)] == 2 &&
              ranks[C.grading.iota] == 1;
    rep.add("End(tw) homology ranks (1,2,1) in degrees (-1,0,1)", ok);
    return rep;
}

inline VerificationReport run_suite(const std::string& name, const Presentation& P,
                                    const SuiteParams& sp) {
    VerificationReport rep;
    if (name == "axioms") rep = suite_axioms(P, sp);
    else if (name == "envelopes") rep = suite_envelopes(P, sp);
    else if (name == "signs") rep = suite_signs(P, sp);
    else if (name == "bar") rep = suite_bar(P, sp);
    else if (name == "xi") rep = suite_xi(P, sp);
    else if (name == "idempotents") rep = suite_idempotents(P, sp);
    else if (name == "morita") rep = suite_morita(P, sp);
    else if (name == "counterexample") rep = suite_counterexample(P, sp);
    else throw error("unknown suite '" + name + "'");
    rep.param("R", std::to_string(sp.R));
    rep.param("r", std::to_string(sp.rmax));
    rep.param("nmax", std::to_string(sp.nmax));
    rep.param("seed", std::to_string(sp.seed));
    if (sp.window) rep.param("window", sp.window->str());
    return rep;
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"axioms", "envelopes", "signs",      "bar",
                                                "xi",     "idempotents", "morita",
                                                "counterexample"};
    return names;
}

} // namespace dgc
