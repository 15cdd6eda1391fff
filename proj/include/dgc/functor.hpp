// Extensional dg functor data: an object map plus one linear map per hom pair.

#pragma once

#include "dgc/category.hpp"

namespace dgc {

struct DgFunctor {
    const DgCat* src = nullptr;
    const DgCat* dst = nullptr;
    std::vector<int> ob;                       // object map
    std::vector<std::vector<SMat>> on;         // [x][y]: hom_src(x,y) -> hom_dst(F x, F y)

    void init_shapes() {
        int n = src->nobj();
        on.assign(n, std::vector<SMat>(n));
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                on[x][y] = SMat(dst->hom[ob[x]][ob[y]].dim(), src->hom[x][y].dim(), dst->ring);
    }

    Morphism apply(const Morphism& f) const {
        Morphism r = dst->zero_morphism(ob[f.src], ob[f.dst], f.deg);
        r.v = on[f.src][f.dst].apply(f.v);
        return r;
    }
};

inline DgFunctor compose(const DgFunctor& g, const DgFunctor& f) {
    if (f.dst != g.src) throw error("DgFunctor compose: endpoint mismatch");
    DgFunctor r;
    r.src = f.src;
    r.dst = g.dst;
    r.ob.resize(f.ob.size());
    for (size_t i = 0; i < f.ob.size(); ++i) r.ob[i] = g.ob[f.ob[i]];
    int n = r.src->nobj();
    r.on.assign(n, std::vector<SMat>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) r.on[x][y] = g.on[f.ob[x]][f.ob[y]] * f.on[x][y];
    return r;
}

// d-compatibility, composition, units, and degree preservation, exhaustively
// over basis morphisms.
inline VerificationReport check_dg_functor(const DgFunctor& F, const std::string& name = "") {
    VerificationReport rep;
    rep.suite = name.empty() ? "dg-functor" : name;
    const DgCat& A = *F.src;
    const DgCat& B = *F.dst;
    int n = A.nobj();

    bool dok = true, degok = true;
    std::string dw, gw;
    for (int x = 0; x < n && dok; ++x)
        for (int y = 0; y < n && dok; ++y)
            for (int i = 0; i < A.hom[x][y].dim(); ++i) {
                Morphism f = A.basis_morphism(x, y, i);
                Morphism lhs = F.apply(A.differential(f));
                Morphism rhs = B.differential(F.apply(f));
                if (lhs.v != rhs.v) {
                    dok = false;
                    dw = A.hom[x][y].label[i];
                    break;
                }
                for (const auto& [j, s] : F.apply(f).v) {
                    (void)s;
                    if (B.hom[F.ob[x]][F.ob[y]].deg[j] != f.deg) { degok = false; gw = A.hom[x][y].label[i]; }
                }
            }
    rep.add("commutes with d", dok, dw);
    rep.add("degree preserving", degok, gw);

    bool cok = true;
    std::string cw;
    for (int x = 0; x < n && cok; ++x)
        for (int y = 0; y < n && cok; ++y)
            for (int z = 0; z < n && cok; ++z)
                for (int gi = 0; gi < A.hom[y][z].dim() && cok; ++gi)
                    for (int fi = 0; fi < A.hom[x][y].dim(); ++fi) {
                        Morphism g = A.basis_morphism(y, z, gi);
                        Morphism f = A.basis_morphism(x, y, fi);
                        if (F.apply(A.compose(g, f)).v != B.compose(F.apply(g), F.apply(f)).v) {
                            cok = false;
                            cw = A.hom[y][z].label[gi] + " o " + A.hom[x][y].label[fi];
                            break;
                        }
                    }
    rep.add("respects composition", cok, cw);

    bool uok = true;
    std::string uw;
    for (int x = 0; x < n; ++x)
        if (F.apply(A.identity(x)).v != B.unit[F.ob[x]]) {
            uok = false;
            uw = "id_" + A.obj[x];
            break;
        }
    rep.add("preserves units", uok, uw);
    return rep;
}

// Fully faithful: every hom map is a bijection on bases (square + invertible).
inline bool is_fully_faithful(const DgFunctor& F) {
    int n = F.src->nobj();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const SMat& m = F.on[x][y];
            if (m.rows != m.cols || rank(m) != m.rows) return false;
        }
    return true;
}

inline bool is_identity_on_basis(const DgFunctor& F) {
    if (F.src->nobj() != F.dst->nobj()) return false;
    for (int x = 0; x < F.src->nobj(); ++x)
        if (F.ob[x] != x) return false;
    for (int x = 0; x < F.src->nobj(); ++x)
        for (int y = 0; y < F.src->nobj(); ++y)
            if (!(F.on[x][y] == SMat::identity(F.src->hom[x][y].dim(), F.src->ring))) return false;
    return true;
}

} // namespace dgc
