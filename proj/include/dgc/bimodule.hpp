// Finitely presented bimodules, bimodule maps, Yoneda modules, and the exact
// coequalizer computing tensor products over a middle category.

#pragma once

#include <functional>
#include <memory>

#include "dgc/functor.hpp"

namespace dgc {

// Homogeneous element of a bimodule component <x|M|y>.
struct BimElt {
    int x = -1, y = -1;
    Degree deg;
    SVec v;
    bool is_zero() const { return v.empty(); }
};

struct Bimodule {
    const DgCat* L = nullptr;
    const DgCat* R = nullptr;
    std::vector<std::vector<GradedModule>> comp; // [x][y] = <x|M|y>
    std::vector<std::vector<SMat>> diff;
    // g in <x2|L|x> = hom_L(x -> x2) acting on <x|M|y>, landing in <x2|M|y>
    std::function<SVec(int x2, int x, int y, int gi, int mi)> actL;
    // g' in <y|R|y2> = hom_R(y2 -> y) acting on <x|M|y>, landing in <x|M|y2>
    std::function<SVec(int x, int y, int y2, int mi, int gi)> actR;

    void init_shapes() {
        comp.assign(L->nobj(), std::vector<GradedModule>(R->nobj()));
        diff.assign(L->nobj(), std::vector<SMat>(R->nobj()));
        for (auto& row : comp)
            for (auto& m : row) m.ring = L->ring;
    }
    void finalize_shapes() {
        for (int x = 0; x < L->nobj(); ++x)
            for (int y = 0; y < R->nobj(); ++y)
                if (diff[x][y].rows == 0 && diff[x][y].cols == 0)
                    diff[x][y] = SMat(comp[x][y].dim(), comp[x][y].dim(), L->ring);
    }

    BimElt zero(int x, int y, Degree d) const { return BimElt{x, y, std::move(d), {}}; }
    BimElt basis(int x, int y, int i) const {
        return BimElt{x, y, comp[x][y].deg[i], svec_unit(i, Scalar(L->ring, 1))};
    }
    BimElt d(const BimElt& m) const {
        return BimElt{m.x, m.y, m.deg + L->grading.iota, diff[m.x][m.y].apply(m.v)};
    }
    BimElt act_left(const Morphism& g, const BimElt& m) const {
        if (g.src != m.x) throw error("act_left: object mismatch");
        BimElt r = zero(g.dst, m.y, g.deg + m.deg);
        for (const auto& [gi, gs] : g.v)
            for (const auto& [mi, ms] : m.v)
                r.v = svec_axpy(r.v, gs * ms, actL(g.dst, m.x, m.y, gi, mi));
        return r;
    }
    BimElt act_right(const BimElt& m, const Morphism& g) const {
        if (g.dst != m.y) throw error("act_right: object mismatch");
        BimElt r = zero(m.x, g.src, m.deg + g.deg);
        for (const auto& [mi, ms] : m.v)
            for (const auto& [gi, gs] : g.v)
                r.v = svec_axpy(r.v, ms * gs, actR(m.x, m.y, g.src, mi, gi));
        return r;
    }
    static BimElt add(const BimElt& a, const BimElt& b) {
        if (a.x != b.x || a.y != b.y || a.deg != b.deg) throw error("BimElt add: mismatch");
        return BimElt{a.x, a.y, a.deg, svec_add(a.v, b.v)};
    }
    static BimElt scale(const BimElt& a, const Scalar& c) {
        return BimElt{a.x, a.y, a.deg, svec_scale(a.v, c)};
    }
};

// Per-component linear maps of a fixed degree.
struct BimoduleMap {
    const Bimodule* src = nullptr;
    const Bimodule* tgt = nullptr;
    Degree deg;
    std::vector<std::vector<SMat>> comp; // [x][y]

    void init_shapes() {
        comp.assign(src->L->nobj(), std::vector<SMat>(src->R->nobj()));
        for (int x = 0; x < src->L->nobj(); ++x)
            for (int y = 0; y < src->R->nobj(); ++y)
                comp[x][y] = SMat(tgt->comp[x][y].dim(), src->comp[x][y].dim(), src->L->ring);
    }
    BimElt apply(const BimElt& m) const {
        return BimElt{m.x, m.y, m.deg + deg, comp[m.x][m.y].apply(m.v)};
    }
};

inline BimoduleMap identity_map(const Bimodule& m) {
    BimoduleMap f;
    f.src = f.tgt = &m;
    f.deg = Degree::zero(m.L->grading.rank);
    f.comp.assign(m.L->nobj(), {});
    for (int x = 0; x < m.L->nobj(); ++x)
        for (int y = 0; y < m.R->nobj(); ++y)
            f.comp[x].push_back(SMat::identity(m.comp[x][y].dim(), m.L->ring));
    return f;
}

inline BimoduleMap map_add(const BimoduleMap& a, const BimoduleMap& b) {
    if (a.src != b.src || a.tgt != b.tgt || a.deg != b.deg) throw error("BimoduleMap add: mismatch");
    BimoduleMap r = a;
    for (size_t x = 0; x < r.comp.size(); ++x)
        for (size_t y = 0; y < r.comp[x].size(); ++y) r.comp[x][y] = a.comp[x][y] + b.comp[x][y];
    return r;
}
inline BimoduleMap map_scale(const BimoduleMap& a, const Scalar& c) {
    BimoduleMap r = a;
    for (auto& row : r.comp)
        for (auto& m : row) m = SMat::scale(m, c);
    return r;
}
inline BimoduleMap map_compose(const BimoduleMap& g, const BimoduleMap& f) {
    if (f.tgt != g.src) throw error("BimoduleMap compose: endpoint mismatch");
    BimoduleMap r;
    r.src = f.src;
    r.tgt = g.tgt;
    r.deg = f.deg + g.deg;
    r.comp.assign(f.comp.size(), {});
    for (size_t x = 0; x < f.comp.size(); ++x)
        for (size_t y = 0; y < f.comp[x].size(); ++y) r.comp[x].push_back(g.comp[x][y] * f.comp[x][y]);
    return r;
}

// d(phi) = d_tgt o phi - (-1)^{<iota,|phi|>} phi o d_src, componentwise.
inline BimoduleMap map_differential(const BimoduleMap& f) {
    BimoduleMap r = f;
    r.deg = f.deg + f.src->L->grading.iota;
    const GradingSpec& g = f.src->L->grading;
    Scalar sg = sign_scalar(f.src->L->ring, 1 + g.pair(g.iota, f.deg));
    for (size_t x = 0; x < f.comp.size(); ++x)
        for (size_t y = 0; y < f.comp[x].size(); ++y)
            r.comp[x][y] = f.tgt->diff[x][y] * f.comp[x][y] +
                           SMat::scale(f.comp[x][y] * f.src->diff[x][y], sg);
    return r;
}

inline bool map_is_zero(const BimoduleMap& f) {
    for (const auto& row : f.comp)
        for (const auto& m : row)
            if (!m.is_zero()) return false;
    return true;
}
inline bool map_is_closed(const BimoduleMap& f) { return map_is_zero(map_differential(f)); }

// Closed degree-zero map with every component invertible.
inline bool map_is_iso(const BimoduleMap& f) {
    if (!f.deg.is_zero() || !map_is_closed(f)) return false;
    for (const auto& row : f.comp)
        for (const auto& m : row)
            if (m.rows != m.cols || rank(m) != m.rows) return false;
    return true;
}

// Equivariance of a degree-l map: phi(g.m) = (-1)^{<l,|g|>} g.phi(m), phi(m.g') = phi(m).g'.
inline VerificationReport check_bimodule_map(const BimoduleMap& f, const std::string& name = "") {
    VerificationReport rep;
    rep.suite = name.empty() ? "bimodule-map" : name;
    const Bimodule& M = *f.src;
    const Bimodule& N = *f.tgt;
    const DgCat& L = *M.L;
    const DgCat& R = *M.R;
    bool lok = true, rok = true;
    std::string lw, rw;
    for (int x2 = 0; x2 < L.nobj() && lok; ++x2)
        for (int x = 0; x < L.nobj() && lok; ++x)
            for (int y = 0; y < R.nobj() && lok; ++y)
                for (int gi = 0; gi < L.hom[x][x2].dim() && lok; ++gi)
                    for (int mi = 0; mi < M.comp[x][y].dim(); ++mi) {
                        Morphism g = L.basis_morphism(x, x2, gi);
                        BimElt m = M.basis(x, y, mi);
                        BimElt lhs = f.apply(M.act_left(g, m));
                        BimElt rhs = Bimodule::scale(
                            N.act_left(g, f.apply(m)),
                            sign_scalar(L.ring, L.grading.pair(f.deg, g.deg)));
                        if (lhs.v != rhs.v) {
                            lok = false;
                            lw = L.hom[x][x2].label[gi] + " . " + M.comp[x][y].label[mi];
                            break;
                        }
                    }
    rep.add("left equivariance", lok, lw);
    for (int x = 0; x < L.nobj() && rok; ++x)
        for (int y = 0; y < R.nobj() && rok; ++y)
            for (int y2 = 0; y2 < R.nobj() && rok; ++y2)
                for (int gi = 0; gi < R.hom[y2][y].dim() && rok; ++gi)
                    for (int mi = 0; mi < M.comp[x][y].dim(); ++mi) {
                        Morphism g = R.basis_morphism(y2, y, gi);
                        BimElt m = M.basis(x, y, mi);
                        BimElt lhs = f.apply(M.act_right(m, g));
                        BimElt rhs = N.act_right(f.apply(m), g);
                        if (lhs.v != rhs.v) {
                            rok = false;
                            rw = M.comp[x][y].label[mi] + " . " + R.hom[y2][y].label[gi];
                            break;
                        }
                    }
    rep.add("right equivariance", rok, rw);
    return rep;
}

// Action maps must be degree-zero chain maps satisfying associativity and unit
// laws; checked exhaustively on basis elements.
inline VerificationReport check_bimodule_axioms(const Bimodule& M, const std::string& name = "") {
    VerificationReport rep;
    rep.suite = name.empty() ? "bimodule-axioms" : name;
    const DgCat& L = *M.L;
    const DgCat& R = *M.R;

    bool dsq = true;
    std::string dw;
    for (int x = 0; x < L.nobj() && dsq; ++x)
        for (int y = 0; y < R.nobj(); ++y)
            if (!(M.diff[x][y] * M.diff[x][y]).is_zero()) {
                dsq = false;
                dw = "component (" + L.obj[x] + "," + R.obj[y] + ")";
                break;
            }
    rep.add("d^2 = 0", dsq, dw);

    bool unit = true;
    std::string uw;
    for (int x = 0; x < L.nobj() && unit; ++x)
        for (int y = 0; y < R.nobj() && unit; ++y)
            for (int mi = 0; mi < M.comp[x][y].dim(); ++mi) {
                BimElt m = M.basis(x, y, mi);
                if (M.act_left(L.identity(x), m).v != m.v || M.act_right(m, R.identity(y)).v != m.v) {
                    unit = false;
                    uw = M.comp[x][y].label[mi];
                    break;
                }
            }
    rep.add("unit action", unit, uw);

    bool chain = true;
    std::string cw;
    for (int x2 = 0; x2 < L.nobj() && chain; ++x2)
        for (int x = 0; x < L.nobj() && chain; ++x)
            for (int y = 0; y < R.nobj() && chain; ++y)
                for (int gi = 0; gi < L.hom[x][x2].dim() && chain; ++gi)
                    for (int mi = 0; mi < M.comp[x][y].dim(); ++mi) {
                        Morphism g = L.basis_morphism(x, x2, gi);
                        BimElt m = M.basis(x, y, mi);
                        // d(g.m) = d(g).m + (-1)^{<iota,|g|>} g.d(m)
                        BimElt lhs = M.d(M.act_left(g, m));
                        BimElt rhs = Bimodule::add(
                            M.act_left(L.differential(g), m),
                            Bimodule::scale(M.act_left(g, M.d(m)),
                                            sign_scalar(L.ring, L.grading.pair(L.grading.iota, g.deg))));
                        if (lhs.v != rhs.v) {
                            chain = false;
                            cw = "left Leibniz at " + L.hom[x][x2].label[gi] + " . " +
                                 M.comp[x][y].label[mi];
                            break;
                        }
                    }
    for (int x = 0; x < L.nobj() && chain; ++x)
        for (int y = 0; y < R.nobj() && chain; ++y)
            for (int y2 = 0; y2 < R.nobj() && chain; ++y2)
                for (int gi = 0; gi < R.hom[y2][y].dim() && chain; ++gi)
                    for (int mi = 0; mi < M.comp[x][y].dim(); ++mi) {
                        Morphism g = R.basis_morphism(y2, y, gi);
                        BimElt m = M.basis(x, y, mi);
                        // d(m.g) = d(m).g + (-1)^{<iota,|m|>} m.d(g)
                        BimElt lhs = M.d(M.act_right(m, g));
                        BimElt rhs = Bimodule::add(
                            M.act_right(M.d(m), g),
                            Bimodule::scale(M.act_right(m, R.differential(g)),
                                            sign_scalar(L.ring, L.grading.pair(L.grading.iota, m.deg))));
                        if (lhs.v != rhs.v) {
                            chain = false;
                            cw = "right Leibniz at " + M.comp[x][y].label[mi] + " . " +
                                 R.hom[y2][y].label[gi];
                            break;
                        }
                    }
    rep.add("actions are chain maps", chain, cw);

    bool assoc = true;
    std::string aw;
    for (int x3 = 0; x3 < L.nobj() && assoc; ++x3)
        for (int x2 = 0; x2 < L.nobj() && assoc; ++x2)
            for (int x = 0; x < L.nobj() && assoc; ++x)
                for (int y = 0; y < R.nobj() && assoc; ++y)
                    for (int g2 = 0; g2 < L.hom[x2][x3].dim() && assoc; ++g2)
                        for (int g1 = 0; g1 < L.hom[x][x2].dim() && assoc; ++g1)
                            for (int mi = 0; mi < M.comp[x][y].dim(); ++mi) {
                                Morphism a = L.basis_morphism(x2, x3, g2);
                                Morphism b = L.basis_morphism(x, x2, g1);
                                BimElt m = M.basis(x, y, mi);
                                if (M.act_left(L.compose(a, b), m).v !=
                                    M.act_left(a, M.act_left(b, m)).v) {
                                    assoc = false;
                                    aw = "left assoc";
                                    break;
                                }
                            }
    for (int x = 0; x < L.nobj() && assoc; ++x)
        for (int y = 0; y < R.nobj() && assoc; ++y)
            for (int y2 = 0; y2 < R.nobj() && assoc; ++y2)
                for (int y3 = 0; y3 < R.nobj() && assoc; ++y3)
                    for (int g1 = 0; g1 < R.hom[y2][y].dim() && assoc; ++g1)
                        for (int g2 = 0; g2 < R.hom[y3][y2].dim() && assoc; ++g2)
                            for (int mi = 0; mi < M.comp[x][y].dim(); ++mi) {
                                Morphism a = R.basis_morphism(y2, y, g1);
                                Morphism b = R.basis_morphism(y3, y2, g2);
                                BimElt m = M.basis(x, y, mi);
                                if (M.act_right(M.act_right(m, a), b).v !=
                                    M.act_right(m, R.compose(a, b)).v) {
                                    assoc = false;
                                    aw = "right assoc";
                                    break;
                                }
                            }
    // middle commutation (g.m).g' = g.(m.g')
    for (int x2 = 0; x2 < L.nobj() && assoc; ++x2)
        for (int x = 0; x < L.nobj() && assoc; ++x)
            for (int y = 0; y < R.nobj() && assoc; ++y)
                for (int y2 = 0; y2 < R.nobj() && assoc; ++y2)
                    for (int gi = 0; gi < L.hom[x][x2].dim() && assoc; ++gi)
                        for (int hi = 0; hi < R.hom[y2][y].dim() && assoc; ++hi)
                            for (int mi = 0; mi < M.comp[x][y].dim(); ++mi) {
                                Morphism g = L.basis_morphism(x, x2, gi);
                                Morphism h = R.basis_morphism(y2, y, hi);
                                BimElt m = M.basis(x, y, mi);
                                if (M.act_right(M.act_left(g, m), h).v !=
                                    M.act_left(g, M.act_right(m, h)).v) {
                                    assoc = false;
                                    aw = "middle commutation";
                                    break;
                                }
                            }
    rep.add("action associativity", assoc, aw);
    return rep;
}

// <x|C|y> := hom(y -> x) with actions by composition.
inline Bimodule identity_bimodule(const DgCat& C) {
    Bimodule M;
    M.L = M.R = &C;
    M.init_shapes();
    for (int x = 0; x < C.nobj(); ++x)
        for (int y = 0; y < C.nobj(); ++y) {
            M.comp[x][y] = C.hom[y][x];
            M.diff[x][y] = C.diff[y][x];
        }
    const DgCat* Cp = &C;
    M.actL = [Cp](int x2, int x, int y, int gi, int mi) {
        Morphism g = Cp->basis_morphism(x, x2, gi);
        Morphism m = Cp->basis_morphism(y, x, mi);
        return Cp->compose(g, m).v;
    };
    M.actR = [Cp](int x, int y, int y2, int mi, int gi) {
        Morphism m = Cp->basis_morphism(y, x, mi);
        Morphism g = Cp->basis_morphism(y2, y, gi);
        return Cp->compose(m, g).v;
    };
    M.finalize_shapes();
    return M;
}

// One-object unit category k with End = k id.
inline DgCat unit_category(Ring ring, const GradingSpec& g) {
    DgCat C;
    C.ring = ring;
    C.grading = g;
    C.add_object("*");
    C.init_tables();
    C.hom[0][0].add("1", Degree::zero(g.rank));
    C.finalize_shapes();
    C.comp[0][0][0][0][0] = svec_unit(0, Scalar(ring, 1));
    C.unit[0] = svec_unit(0, Scalar(ring, 1));
    return C;
}

// Right module <X| over C: component <X|C|y> = hom(y -> X), left cat = k.
inline Bimodule yoneda_bra(const DgCat& k, const DgCat& C, int X) {
    Bimodule M;
    M.L = &k;
    M.R = &C;
    M.init_shapes();
    for (int y = 0; y < C.nobj(); ++y) {
        M.comp[0][y] = C.hom[y][X];
        M.diff[0][y] = C.diff[y][X];
    }
    const DgCat* Cp = &C;
    M.actL = [Cp, X](int, int, int y, int, int mi) {
        return Cp->basis_morphism(y, X, mi).v; // unit of k acts trivially
    };
    M.actR = [Cp, X](int, int y, int y2, int mi, int gi) {
        return Cp->compose(Cp->basis_morphism(y, X, mi), Cp->basis_morphism(y2, y, gi)).v;
    };
    M.finalize_shapes();
    return M;
}

// Left module |X> over C: component <y|X> = hom(X -> y), right cat = k.
inline Bimodule yoneda_ket(const DgCat& C, const DgCat& k, int X) {
    Bimodule M;
    M.L = &C;
    M.R = &k;
    M.init_shapes();
    for (int y = 0; y < C.nobj(); ++y) {
        M.comp[y][0] = C.hom[X][y];
        M.diff[y][0] = C.diff[X][y];
    }
    const DgCat* Cp = &C;
    M.actL = [Cp, X](int y2, int y, int, int gi, int mi) {
        return Cp->compose(Cp->basis_morphism(y, y2, gi), Cp->basis_morphism(X, y, mi)).v;
    };
    M.actR = [Cp, X](int y, int, int, int mi, int) { return Cp->basis_morphism(X, y, mi).v; };
    M.finalize_shapes();
    return M;
}

// The contravariant Yoneda functor on a morphism f: X -> X' gives
// |X'> -> |X>, m |-> (-1)^{<|m|,|f|>} m o f.
inline BimoduleMap yoneda_ket_on_morphism(const DgCat& C, const Bimodule& ketXp, const Bimodule& ketX,
                                          const Morphism& f) {
    BimoduleMap r;
    r.src = &ketXp;
    r.tgt = &ketX;
    r.deg = f.deg;
    r.init_shapes();
    for (int y = 0; y < C.nobj(); ++y)
        for (int mi = 0; mi < ketXp.comp[y][0].dim(); ++mi) {
            Morphism m = C.basis_morphism(f.dst, y, mi);
            Morphism mf = DgCat::scale(C.compose(m, f),
                                       sign_scalar(C.ring, C.grading.pair(m.deg, f.deg)));
            for (const auto& [i, s] : mf.v) r.comp[y][0].add_at(i, mi, s);
        }
    return r;
}

// Restriction of scalars along functors on either side.
inline Bimodule restrict_bimodule(const Bimodule& M, const DgFunctor* FL, const DgFunctor* FR) {
    Bimodule r;
    r.L = FL ? FL->src : M.L;
    r.R = FR ? FR->src : M.R;
    r.init_shapes();
    auto mapL = [FL](int x) { return FL ? FL->ob[x] : x; };
    auto mapR = [FR](int y) { return FR ? FR->ob[y] : y; };
    for (int x = 0; x < r.L->nobj(); ++x)
        for (int y = 0; y < r.R->nobj(); ++y) {
            r.comp[x][y] = M.comp[mapL(x)][mapR(y)];
            r.diff[x][y] = M.diff[mapL(x)][mapR(y)];
        }
    const Bimodule* Mp = &M;
    r.actL = [Mp, FL, mapL, mapR](int x2, int x, int y, int gi, int mi) {
        if (!FL) return Mp->actL(x2, x, y, gi, mi);
        Morphism g = FL->apply(FL->src->basis_morphism(x, x2, gi));
        BimElt m = Mp->basis(mapL(x), mapR(y), mi);
        return Mp->act_left(g, m).v;
    };
    r.actR = [Mp, FR, mapL, mapR](int x, int y, int y2, int mi, int gi) {
        if (!FR) return Mp->actR(x, y, y2, mi, gi);
        Morphism g = FR->apply(FR->src->basis_morphism(y2, y, gi));
        BimElt m = Mp->basis(mapL(x), mapR(y), mi);
        return Mp->act_right(m, g).v;
    };
    r.finalize_shapes();
    return r;
}

// Left shift q^j M: degrees bump by j, differential and the left action pick
// up shift signs, the right action is untouched.
inline Bimodule shift_bimodule(const Bimodule& M, const Degree& j,
                               std::shared_ptr<const Bimodule>* keep_alive = nullptr) {
    Bimodule r;
    r.L = M.L;
    r.R = M.R;
    r.init_shapes();
    const GradingSpec& g = M.L->grading;
    Scalar dsign = sign_scalar(M.L->ring, g.pair(j, g.iota));
    for (int x = 0; x < M.L->nobj(); ++x)
        for (int y = 0; y < M.R->nobj(); ++y) {
            r.comp[x][y] = module_shift(M.comp[x][y], j);
            r.diff[x][y] = SMat::scale(M.diff[x][y], dsign);
        }
    auto Mcopy = std::make_shared<Bimodule>(M);
    if (keep_alive) *keep_alive = Mcopy;
    const GradingSpec* gp = &M.L->grading;
    Degree jj = j;
    Ring ring = M.L->ring;
    r.actL = [Mcopy, gp, jj, ring](int x2, int x, int y, int gi, int mi) {
        Degree gdeg = Mcopy->L->hom[x][x2].deg[gi];
        Scalar sg = sign_scalar(ring, gp->pair(jj, gdeg));
        return svec_scale(Mcopy->actL(x2, x, y, gi, mi), sg);
    };
    r.actR = [Mcopy](int x, int y, int y2, int mi, int gi) { return Mcopy->actR(x, y, y2, mi, gi); };
    r.finalize_shapes();
    return r;
}

// Tensor over the middle category: exact coequalizer with explicit lift and
// projection per component, so maps on factors can be pushed to the quotient.
struct TensorOver {
    Bimodule bim;
    std::vector<std::vector<std::vector<std::tuple<int, int, int>>>> big; // [x][z]: (y, mi, ni)
    std::vector<std::vector<Quotient>> q;                                 // [x][z]
    std::shared_ptr<const Bimodule> A, B;

    int big_index(int x, int z, int y, int mi, int ni) const {
        const auto& list = big[x][z];
        for (size_t i = 0; i < list.size(); ++i)
            if (list[i] == std::make_tuple(y, mi, ni)) return static_cast<int>(i);
        throw error("TensorOver: big index lookup failed");
    }
    // class of a simple tensor m (x) n
    BimElt simple(int x, int z, int y, const SVec& m, const SVec& n, Degree deg) const {
        SVec bigv;
        for (const auto& [mi, ms] : m)
            for (const auto& [ni, ns] : n)
                bigv = svec_add(bigv, svec_unit(big_index(x, z, y, mi, ni), ms * ns));
        return BimElt{x, z, deg, q[x][z].proj.apply(bigv)};
    }
};

inline std::shared_ptr<TensorOver> tensor_over(const Bimodule& A0, const Bimodule& B0) {
    if (A0.R != B0.L) throw error("tensor_over: middle categories differ");
    auto T = std::make_shared<TensorOver>();
    T->A = std::make_shared<Bimodule>(A0);
    T->B = std::make_shared<Bimodule>(B0);
    const Bimodule& A = *T->A;
    const Bimodule& B = *T->B;
    const DgCat& mid = *A.R;
    Ring ring = A.L->ring;
    Bimodule& M = T->bim;
    M.L = A.L;
    M.R = B.R;
    M.init_shapes();
    int nx = M.L->nobj(), nz = M.R->nobj(), ny = mid.nobj();
    T->big.assign(nx, std::vector<std::vector<std::tuple<int, int, int>>>(nz));
    T->q.assign(nx, std::vector<Quotient>(nz));
    for (int x = 0; x < nx; ++x)
        for (int z = 0; z < nz; ++z) {
            auto& list = T->big[x][z];
            std::map<std::tuple<int, int, int>, int> idx;
            for (int y = 0; y < ny; ++y)
                for (int mi = 0; mi < A.comp[x][y].dim(); ++mi)
                    for (int ni = 0; ni < B.comp[y][z].dim(); ++ni) {
                        idx[{y, mi, ni}] = static_cast<int>(list.size());
                        list.push_back({y, mi, ni});
                    }
            int dim = static_cast<int>(list.size());
            // balancing relations (m.g) (x) n - m (x) (g.n)
            std::vector<SVec> rel;
            for (int y1 = 0; y1 < ny; ++y1)
                for (int y2 = 0; y2 < ny; ++y2)
                    for (int gi = 0; gi < mid.hom[y2][y1].dim(); ++gi)
                        for (int mi = 0; mi < A.comp[x][y1].dim(); ++mi)
                            for (int ni = 0; ni < B.comp[y2][z].dim(); ++ni) {
                                SVec v;
                                SVec mg = A.actR(x, y1, y2, mi, gi);
                                for (const auto& [k, s] : mg)
                                    v = svec_add(v, svec_unit(idx.at({y2, k, ni}), s));
                                SVec gn = B.actL(y1, y2, z, gi, ni);
                                for (const auto& [k, s] : gn)
                                    v = svec_add(v, svec_unit(idx.at({y1, mi, k}), -s));
                                if (!v.empty()) rel.push_back(std::move(v));
                            }
            SMat relm(static_cast<int>(rel.size()), dim, ring);
            relm.row = std::move(rel);
            relm.rows = static_cast<int>(relm.row.size());
            T->q[x][z] = quotient_by_rows(dim, relm);
            const Quotient& Q = T->q[x][z];
            GradedModule& comp = M.comp[x][z];
            for (size_t k = 0; k < Q.basis.size(); ++k) {
                auto [y, mi, ni] = list[Q.basis[k]];
                comp.add(A.comp[x][y].label[mi] + "*" + B.comp[y][z].label[ni],
                         A.comp[x][y].deg[mi] + B.comp[y][z].deg[ni]);
            }
            // differential: d(m (x) n) = dm (x) n + (-1)^{<iota,|m|>} m (x) dn
            SMat Dbig(dim, dim, ring);
            for (int col = 0; col < dim; ++col) {
                auto [y, mi, ni] = list[col];
                // dm (x) n
                SVec dm = A.diff[x][y].apply(svec_unit(mi, Scalar(ring, 1)));
                for (const auto& [k, s] : dm) Dbig.add_at(idx.at({y, k, ni}), col, s);
                // (-1)^{<iota,|m|>} m (x) dn
                Scalar sg = sign_scalar(ring, M.L->grading.pair(M.L->grading.iota, A.comp[x][y].deg[mi]));
                SVec dn = B.diff[y][z].apply(svec_unit(ni, Scalar(ring, 1)));
                for (const auto& [k, s] : dn) Dbig.add_at(idx.at({y, mi, k}), col, sg * s);
            }
            M.diff[x][z] = Q.proj * Dbig * Q.lift;
        }
    // actions through lifts
    std::weak_ptr<TensorOver> Tw = T;
    M.actL = [Tw](int x2, int x, int y, int gi, int mi) {
        auto Tp = Tw.lock();
        const auto& Q = Tp->q[x][y];
        SVec lift = Q.lift.apply(svec_unit(mi, Scalar(Tp->bim.L->ring, 1)));
        SVec outBig;
        for (const auto& [bigi, s] : lift) {
            auto [ymid, ai, bi] = Tp->big[x][y][bigi];
            SVec gm = Tp->A->actL(x2, x, ymid, gi, ai);
            for (const auto& [k, t] : gm)
                outBig = svec_add(outBig, svec_unit(Tp->big_index(x2, y, ymid, k, bi), s * t));
        }
        return Tp->q[x2][y].proj.apply(outBig);
    };
    M.actR = [Tw](int x, int y, int y2, int mi, int gi) {
        auto Tp = Tw.lock();
        const auto& Q = Tp->q[x][y];
        SVec lift = Q.lift.apply(svec_unit(mi, Scalar(Tp->bim.L->ring, 1)));
        SVec outBig;
        for (const auto& [bigi, s] : lift) {
            auto [ymid, ai, bi] = Tp->big[x][y][bigi];
            SVec ng = Tp->B->actR(ymid, y, y2, bi, gi);
            for (const auto& [k, t] : ng)
                outBig = svec_add(outBig, svec_unit(Tp->big_index(x, y2, ymid, ai, k), s * t));
        }
        return Tp->q[x][y2].proj.apply(outBig);
    };
    M.finalize_shapes();
    return T;
}

} // namespace dgc
