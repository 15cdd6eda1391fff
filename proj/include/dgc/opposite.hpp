// Opposite dg categories and the envelope compatibility isomorphisms
// E(C)^op ~= E(C^op) with their sign rules.

#pragma once

#include <memory>

#include "dgc/envelope.hpp"

namespace dgc {

// hom_op(x,y) := hom(y,x); f^op o g^op = (-1)^{<|f|,|g|>} (g o f)^op.
inline DgCat opposite(const DgCat& C) {
    DgCat O;
    O.ring = C.ring;
    O.grading = C.grading;
    for (const auto& o : C.obj) O.add_object(o);
    O.init_tables();
    int n = C.nobj();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            O.hom[x][y] = C.hom[y][x];
            O.diff[x][y] = C.diff[y][x];
        }
    O.finalize_shapes();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                // g^op in hom_op(y,z) = hom(z,y); f^op in hom_op(x,y) = hom(y,x)
                auto& table = O.comp[x][y][z];
                for (int gi = 0; gi < O.hom[y][z].dim(); ++gi)
                    for (int fi = 0; fi < O.hom[x][y].dim(); ++fi) {
                        Morphism g = C.basis_morphism(z, y, gi);
                        Morphism f = C.basis_morphism(y, x, fi);
                        int sg = C.grading.pair(g.deg, f.deg);
                        table[gi][fi] =
                            svec_scale(C.compose(f, g).v, sign_scalar(C.ring, sg));
                    }
            }
    O.unit = C.unit;
    return O;
}

// Object rule of the op isomorphism: shifts negate; the twist picks up
// (-1)^{1 + <i_a + i_b, iota> + <iota, i_b>} and transposes.
inline TwixObject op_object(const DgCat& C, const TwixObject& t) {
    TwixObject r;
    r.name = t.name + "^op";
    for (const auto& e : t.ent) r.ent.push_back({e.name, -e.shift, e.obj});
    const GradingSpec& g = C.grading;
    for (const auto& [ab, m] : t.twist) {
        const auto& [a, b] = ab;
        int sg = 1 + g.pair(t.ent[a].shift + t.ent[b].shift, g.iota) + g.pair(g.iota, t.ent[b].shift);
        // alpha_{a,b}: X_b -> X_a in C becomes a morphism X_a^op -> X_b^op of
        // C^op whose coefficient vector over hom_op(X_a, X_b) = hom(X_b, X_a)
        // is unchanged apart from the sign.
        Morphism s;
        s.src = t.ent[a].obj;
        s.dst = t.ent[b].obj;
        s.deg = m.deg;
        s.v = svec_scale(m.v, sign_scalar(C.ring, sg));
        r.twist[{b, a}] = std::move(s);
    }
    return r;
}

// Invertible dg functor data  E(C)^op -> E(C^op), per kind via the unified
// twisted-complex sign rule (f_{a,b}) |-> (-1)^{<i_a + j_b, l + j_b>} f_{a,b}^op.
struct OpIso {
    std::shared_ptr<DgCat> op_of_E; // opposite of the materialized view category
    DgFunctor fwd;                  // op_of_E -> Vop.cat()
    DgFunctor bwd;                  // Vop.cat() -> op_of_E (inverse, from the same rule)
};

inline OpIso envelope_op_iso(const EnvelopeView& V, const EnvelopeView& Vop) {
    OpIso iso;
    iso.op_of_E = std::make_shared<DgCat>(opposite(V.cat()));
    DgFunctor& F = iso.fwd;
    F.src = iso.op_of_E.get();
    F.dst = &Vop.cat();
    const GradingSpec& g = V.base().grading;
    for (int i = 0; i < V.nobj(); ++i)
        F.ob.push_back(find_view_object(Vop, op_object(V.base(), V.object(i))));
    F.init_shapes();
    // hom_{op_of_E}(x, y) = hom_V(y, x): a morphism y -> x with target-object x
    for (int x = 0; x < V.nobj(); ++x)
        for (int y = 0; y < V.nobj(); ++y) {
            const GradedModule& H = V.cat().hom[y][x];
            const TwixObject& TX = V.object(x); // target of the original morphism
            const TwixObject& TY = V.object(y); // source
            for (int i = 0; i < H.dim(); ++i) {
                const ViewBasisInfo& e = V.basis_info(y, x)[i];
                const Degree& ia = TX.ent[e.a].shift;
                const Degree& jb = TY.ent[e.b].shift;
                int sg = g.pair(ia + jb, H.deg[i] + jb);
                F.on[x][y].add_at(Vop.view_basis_index(F.ob[x], F.ob[y], e.b, e.a, e.bi), i,
                                  sign_scalar(V.base().ring, sg));
            }
        }
    // the rule maps basis to +/- basis; the inverse is the transposed signed bijection
    DgFunctor& B = iso.bwd;
    B.src = &Vop.cat();
    B.dst = iso.op_of_E.get();
    B.ob.assign(V.nobj(), -1);
    for (int x = 0; x < V.nobj(); ++x) B.ob[F.ob[x]] = x;
    B.init_shapes();
    for (int x = 0; x < V.nobj(); ++x)
        for (int y = 0; y < V.nobj(); ++y)
            B.on[F.ob[x]][F.ob[y]] = F.on[x][y].transpose();
    return iso;
}

// Double application of the op iso, compared against the canonical
// identification: objects return with <iota,->-conjugated twists, morphisms
// with the sign (-1)^{<i_a,i_a> + <j_b,j_b>}; after conjugating by
// nu = diag((-1)^{<i_a,i_a>}) this is the identity on every basis morphism.
inline VerificationReport involution_check(const EnvelopeView& V, const std::string& name = "") {
    VerificationReport rep;
    rep.suite = name.empty() ? "op-involution" : name;
    const DgCat& C = V.base();
    const GradingSpec& g = C.grading;
    DgCat Cop = opposite(C);

    EnvelopeView Vop(Cop, V.kind() == EnvKind::Pretr ? EnvKind::Twix : V.kind());
    for (int i = V.base_objects(); i < V.nobj(); ++i)
        Vop.add_object(op_object(C, V.object(i)));
    EnvelopeView Vback(C, V.kind() == EnvKind::Pretr ? EnvKind::Twix : V.kind());
    for (int i = V.base_objects(); i < V.nobj(); ++i)
        Vback.add_object(op_object(Cop, Vop.object(i)));

    // object check: the double-op twist is the <iota,->-conjugation
    bool objs_ok = true;
    std::string ow;
    for (int i = V.base_objects(); i < V.nobj() && objs_ok; ++i) {
        const TwixObject& T = V.object(i);
        const TwixObject& B = Vback.object(i);
        for (int a = 0; a < T.size(); ++a)
            if (!(B.ent[a].shift == T.ent[a].shift) || B.ent[a].obj != T.ent[a].obj) objs_ok = false;
        for (int a = 0; a < T.size() && objs_ok; ++a)
            for (int b = 0; b < T.size(); ++b) {
                Morphism t = T.twist_at(C, a, b);
                Morphism bb = B.twist_at(C, a, b);
                int sg = g.pair(g.iota, T.ent[a].shift) + g.pair(g.iota, T.ent[b].shift);
                if (bb.v != svec_scale(t.v, sign_scalar(C.ring, sg))) {
                    objs_ok = false;
                    ow = T.name;
                }
            }
    }
    rep.add("double-op objects are the twist conjugates", objs_ok, ow);

    OpIso iso1 = envelope_op_iso(V, Vop);
    OpIso iso2 = envelope_op_iso(Vop, Vback);
    rep.add("op iso is a dg functor", check_dg_functor(iso1.fwd).all_passed());
    rep.add("op iso invertible (round trip is the identity)", [&] {
        DgFunctor rt = compose(iso1.bwd, iso1.fwd);
        DgFunctor rt2 = compose(iso1.fwd, iso1.bwd);
        return is_identity_on_basis(rt) && is_identity_on_basis(rt2);
    }());

    bool invol = true;
    std::string iw;
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
                SVec want = svec_scale(svec_unit(Vback.view_basis_index(x, y, e.a, e.b, e.bi),
                                                 Scalar(C.ring, 1)),
                                       sign_scalar(C.ring, sg));
                if (!(opop.src == x && opop.dst == y && opop.v == want)) {
                    invol = false;
                    iw = H.label[i];
                    break;
                }
            }
        }
    rep.add("double op == canonical identification, exactly", invol, iw);
    return rep;
}

// Apply a dg functor entrywise to a twisted complex.
inline TwixObject apply_functor_object(const DgFunctor& F, const TwixObject& t,
                                       const std::string& name = "") {
    TwixObject r;
    r.name = name.empty() ? "F(" + t.name + ")" : name;
    for (const auto& e : t.ent) r.ent.push_back({e.name, e.shift, F.ob[e.obj]});
    for (const auto& [ab, m] : t.twist) r.twist[{ab.first, ab.second}] = F.apply(m);
    return r;
}

// Envelope of a dg functor between two instantiated views: entries and bare
// components map through F.
inline DgFunctor envelope_functor(const DgFunctor& F, const EnvelopeView& Vsrc,
                                  const EnvelopeView& Vtgt) {
    DgFunctor E;
    E.src = &Vsrc.cat();
    E.dst = &Vtgt.cat();
    for (int i = 0; i < Vsrc.nobj(); ++i)
        E.ob.push_back(find_view_object(Vtgt, apply_functor_object(F, Vsrc.object(i))));
    E.init_shapes();
    for (int x = 0; x < Vsrc.nobj(); ++x)
        for (int y = 0; y < Vsrc.nobj(); ++y) {
            const GradedModule& H = Vsrc.cat().hom[x][y];
            for (int i = 0; i < H.dim(); ++i) {
                const ViewBasisInfo& e = Vsrc.basis_info(x, y)[i];
                Morphism bare = F.apply(F.src->basis_morphism(Vsrc.object(x).ent[e.b].obj,
                                                              Vsrc.object(y).ent[e.a].obj, e.bi));
                for (const auto& [bi, s] : bare.v)
                    E.on[x][y].add_at(Vtgt.view_basis_index(E.ob[x], E.ob[y], e.a, e.b, bi), i, s);
            }
        }
    return E;
}

// Contravariant extension: E(C)^op -> E(C^op) -> E(D) for a dg functor
// F: C^op -> D, realized as the composite of the op iso with the envelope of F.
struct ContravariantExtension {
    OpIso iso;
    DgFunctor env_f;    // E(C^op) -> E(D)
    DgFunctor composite; // E(C)^op -> E(D)
};

inline ContravariantExtension contravariant_extend(const DgFunctor& F, const EnvelopeView& V,
                                                   const EnvelopeView& Vop,
                                                   const EnvelopeView& VD) {
    ContravariantExtension r;
    r.iso = envelope_op_iso(V, Vop);
    r.env_f = envelope_functor(F, Vop, VD);
    r.composite = compose(r.env_f, r.iso.fwd);
    return r;
}

} // namespace dgc
