// Tensor products of dg categories and the star embeddings
// E(C) (x) E(D) -> E(C (x) D) with their sign rules.

#pragma once

#include "dgc/envelope.hpp"

namespace dgc {

inline int tensor_obj(const DgCat& D, int x, int y) { return x * D.nobj() + y; }

// Objects are pairs, hom complexes are tensor products, composition carries
// the interchange sign (f' (x) g') o (f (x) g) = (-1)^{<|g'|,|f|>} (f'f) (x) (g'g).
inline DgCat tensor_category(const DgCat& C, const DgCat& D) {
    if (C.ring != D.ring) throw error("tensor_category: coefficient rings differ");
    if (C.grading.rank != D.grading.rank || C.grading.pairing != D.grading.pairing ||
        !(C.grading.iota == D.grading.iota))
        throw error("tensor_category: grading specs differ");
    DgCat T;
    T.ring = C.ring;
    T.grading = C.grading;
    for (int x = 0; x < C.nobj(); ++x)
        for (int y = 0; y < D.nobj(); ++y) T.add_object("(" + C.obj[x] + "," + D.obj[y] + ")");
    T.init_tables();
    auto hom_index = [&](int, int, int y, int yp, int mi, int ni) {
        return mi * D.hom[y][yp].dim() + ni;
    };
    for (int x = 0; x < C.nobj(); ++x)
        for (int y = 0; y < D.nobj(); ++y)
            for (int xp = 0; xp < C.nobj(); ++xp)
                for (int yp = 0; yp < D.nobj(); ++yp) {
                    GradedModule& H = T.hom[tensor_obj(D, x, y)][tensor_obj(D, xp, yp)];
                    for (int mi = 0; mi < C.hom[x][xp].dim(); ++mi)
                        for (int ni = 0; ni < D.hom[y][yp].dim(); ++ni)
                            H.add(C.hom[x][xp].label[mi] + "(x)" + D.hom[y][yp].label[ni],
                                  C.hom[x][xp].deg[mi] + D.hom[y][yp].deg[ni]);
                    // d(m (x) n) = dm (x) n + (-1)^{<iota,|m|>} m (x) dn
                    SMat Dm(H.dim(), H.dim(), T.ring);
                    for (int mi = 0; mi < C.hom[x][xp].dim(); ++mi)
                        for (int ni = 0; ni < D.hom[y][yp].dim(); ++ni) {
                            int col = hom_index(x, xp, y, yp, mi, ni);
                            for (const auto& [k, s] : C.diff[x][xp].apply(svec_unit(mi, Scalar(T.ring, 1))))
                                Dm.add_at(hom_index(x, xp, y, yp, k, ni), col, s);
                            Scalar sg = sign_scalar(
                                T.ring, T.grading.pair(T.grading.iota, C.hom[x][xp].deg[mi]));
                            for (const auto& [k, s] : D.diff[y][yp].apply(svec_unit(ni, Scalar(T.ring, 1))))
                                Dm.add_at(hom_index(x, xp, y, yp, mi, k), col, sg * s);
                        }
                    T.diff[tensor_obj(D, x, y)][tensor_obj(D, xp, yp)] = std::move(Dm);
                }
    T.finalize_shapes();
    for (int x = 0; x < C.nobj(); ++x)
        for (int y = 0; y < D.nobj(); ++y)
            for (int xp = 0; xp < C.nobj(); ++xp)
                for (int yp = 0; yp < D.nobj(); ++yp)
                    for (int xpp = 0; xpp < C.nobj(); ++xpp)
                        for (int ypp = 0; ypp < D.nobj(); ++ypp) {
                            int ox = tensor_obj(D, x, y), oy = tensor_obj(D, xp, yp),
                                oz = tensor_obj(D, xpp, ypp);
                            auto& table = T.comp[ox][oy][oz];
                            for (int g1 = 0; g1 < C.hom[xp][xpp].dim(); ++g1)
                                for (int g2 = 0; g2 < D.hom[yp][ypp].dim(); ++g2)
                                    for (int f1 = 0; f1 < C.hom[x][xp].dim(); ++f1)
                                        for (int f2 = 0; f2 < D.hom[y][yp].dim(); ++f2) {
                                            Morphism gC = C.basis_morphism(xp, xpp, g1);
                                            Morphism gD = D.basis_morphism(yp, ypp, g2);
                                            Morphism fC = C.basis_morphism(x, xp, f1);
                                            Morphism fD = D.basis_morphism(y, yp, f2);
                                            int sg = T.grading.pair(gD.deg, fC.deg);
                                            Morphism cc = C.compose(gC, fC);
                                            Morphism dd = D.compose(gD, fD);
                                            SVec out;
                                            for (const auto& [ci, cs] : cc.v)
                                                for (const auto& [di, ds] : dd.v)
                                                    out = svec_add(
                                                        out,
                                                        svec_unit(ci * D.hom[y][ypp].dim() + di,
                                                                  cs * ds * sign_scalar(T.ring, sg)));
                                            table[g1 * D.hom[yp][ypp].dim() + g2]
                                                 [f1 * D.hom[y][yp].dim() + f2] = std::move(out);
                                        }
                        }
    for (int x = 0; x < C.nobj(); ++x)
        for (int y = 0; y < D.nobj(); ++y) {
            SVec u;
            for (const auto& [ci, cs] : C.unit[x])
                for (const auto& [di, ds] : D.unit[y])
                    u = svec_add(u, svec_unit(ci * D.hom[y][y].dim() + di, cs * ds));
            T.unit[tensor_obj(D, x, y)] = std::move(u);
        }
    return T;
}

// Star of twisted complexes: entries are pairs with added shifts; the twist is
// alpha * id + id * beta with the componentwise SB star signs.
inline TwixObject star_object(const DgCat& C, const DgCat& D, const DgCat& CD,
                              const TwixObject& TX, const TwixObject& TY,
                              const std::string& name = "") {
    const GradingSpec& g = C.grading;
    TwixObject r;
    r.name = name.empty() ? TX.name + "*" + TY.name : name;
    for (const auto& ea : TX.ent)
        for (const auto& eb : TY.ent)
            r.ent.push_back({ea.name + "." + eb.name, ea.shift + eb.shift,
                             tensor_obj(D, ea.obj, eb.obj)});
    auto entry = [&](int a, int b) { return a * TY.size() + b; };
    auto tensor_vec = [&](int x, int xp, int y, int yp, const SVec& m, const SVec& n) {
        SVec out;
        for (const auto& [mi, ms] : m)
            for (const auto& [ni, ns] : n)
                out = svec_add(out, svec_unit(mi * D.hom[y][yp].dim() + ni, ms * ns));
        return out;
    };
    // alpha * id: component ((a',b),(a,b)), sign (-1)^{<iota - i_{a'} + i_a, j_b>}
    for (const auto& [ab, al] : TX.twist) {
        const auto& [ap, a] = ab;
        for (int b = 0; b < TY.size(); ++b) {
            int sg = g.pair(g.iota - TX.ent[ap].shift + TX.ent[a].shift, TY.ent[b].shift);
            Morphism m;
            m.src = tensor_obj(D, TX.ent[a].obj, TY.ent[b].obj);
            m.dst = tensor_obj(D, TX.ent[ap].obj, TY.ent[b].obj);
            m.deg = g.iota - r.ent[entry(ap, b)].shift + r.ent[entry(a, b)].shift;
            m.v = svec_scale(tensor_vec(TX.ent[a].obj, TX.ent[ap].obj, TY.ent[b].obj,
                                        TY.ent[b].obj, al.v, D.unit[TY.ent[b].obj]),
                             sign_scalar(C.ring, sg));
            if (!m.v.empty()) r.twist[{entry(ap, b), entry(a, b)}] = std::move(m);
        }
    }
    // id * beta: component ((a,b'),(a,b)), sign (-1)^{<i_a, iota>}
    for (const auto& [bb, be] : TY.twist) {
        const auto& [bp, b] = bb;
        for (int a = 0; a < TX.size(); ++a) {
            int sg = g.pair(TX.ent[a].shift, g.iota);
            Morphism m;
            m.src = tensor_obj(D, TX.ent[a].obj, TY.ent[b].obj);
            m.dst = tensor_obj(D, TX.ent[a].obj, TY.ent[bp].obj);
            m.deg = g.iota - r.ent[entry(a, bp)].shift + r.ent[entry(a, b)].shift;
            m.v = svec_scale(tensor_vec(TX.ent[a].obj, TX.ent[a].obj, TY.ent[b].obj,
                                        TY.ent[bp].obj, C.unit[TX.ent[a].obj], be.v),
                             sign_scalar(C.ring, sg));
            auto key = std::make_pair(entry(a, bp), entry(a, b));
            if (r.twist.count(key))
                r.twist[key] = DgCat::add(r.twist[key], m);
            else if (!m.v.empty())
                r.twist[key] = std::move(m);
        }
    }
    // product order witness when both factors are one-sided
    auto ox = is_one_sided(TX), oy = is_one_sided(TY);
    if (ox && oy) {
        std::vector<int> pos(r.size());
        std::vector<std::pair<std::pair<int, int>, int>> keys;
        for (int a = 0; a < TX.size(); ++a)
            for (int b = 0; b < TY.size(); ++b)
                keys.push_back({{(*ox)[a], (*oy)[b]}, entry(a, b)});
        std::sort(keys.begin(), keys.end());
        for (size_t i = 0; i < keys.size(); ++i) pos[keys[i].second] = static_cast<int>(i);
        r.order = pos;
    }
    return r;
}

// Star of view morphisms via the componentwise rule
// (f * g)_{(a',b'),(a,b)} = (-1)^{<k - i'_{a'} + i_a, j'_{b'}> + <i_a, l>} f_{a',a} (x) g_{b',b}.
inline Morphism star_morphism(const EnvelopeView& VC, const EnvelopeView& VD,
                              const EnvelopeView& VCD, const Morphism& f, const Morphism& g,
                              int star_src, int star_tgt) {
    const DgCat& C = VC.base();
    const DgCat& D = VD.base();
    const GradingSpec& gr = C.grading;
    const TwixObject& FS = VC.object(f.src);
    const TwixObject& FT = VC.object(f.dst);
    const TwixObject& GS = VD.object(g.src);
    const TwixObject& GT = VD.object(g.dst);
    Morphism out = VCD.cat().zero_morphism(star_src, star_tgt, f.deg + g.deg);
    for (int ap = 0; ap < FT.size(); ++ap)
        for (int a = 0; a < FS.size(); ++a) {
            Morphism fc = VC.bare_component(f, ap, a);
            if (fc.is_zero()) continue;
            for (int bp = 0; bp < GT.size(); ++bp)
                for (int b = 0; b < GS.size(); ++b) {
                    Morphism gc = VD.bare_component(g, bp, b);
                    if (gc.is_zero()) continue;
                    int sg = gr.pair(f.deg - FT.ent[ap].shift + FS.ent[a].shift, GT.ent[bp].shift) +
                             gr.pair(FS.ent[a].shift, g.deg);
                    int tgt_entry = ap * GT.size() + bp;
                    int src_entry = a * GS.size() + b;
                    int ddim = D.hom[GS.ent[b].obj][GT.ent[bp].obj].dim();
                    for (const auto& [mi, ms] : fc.v)
                        for (const auto& [ni, ns] : gc.v) {
                            int bi = mi * ddim + ni;
                            out.v = svec_add(
                                out.v, svec_unit(VCD.view_basis_index(star_src, star_tgt, tgt_entry,
                                                                      src_entry, bi),
                                                 ms * ns * sign_scalar(C.ring, sg)));
                        }
                }
        }
    return out;
}

} // namespace dgc
