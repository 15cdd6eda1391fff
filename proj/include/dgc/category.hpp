// Finitely presented dg categories: based hom modules, differentials,
// composition structure constants, units, and the axiom checkers.

#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "dgc/module.hpp"
#include "dgc/report.hpp"

namespace dgc {

// Homogeneous morphism, a sparse coefficient vector over the hom basis.
struct Morphism {
    int src = -1, dst = -1;
    Degree deg;
    SVec v;

    bool is_zero() const { return v.empty(); }
};

struct DgCat {
    Ring ring;
    GradingSpec grading;
    std::vector<std::string> obj;
    std::map<std::string, int> obj_index;

    // hom[x][y]: morphisms x -> y
    std::vector<std::vector<GradedModule>> hom;
    // diff[x][y]: degree-iota endomap of hom[x][y]
    std::vector<std::vector<SMat>> diff;
    // comp[x][y][z][gi][fi]: coefficients of (g in hom(y,z)) o (f in hom(x,y)) in hom(x,z)
    std::vector<std::vector<std::vector<std::vector<std::vector<SVec>>>>> comp;
    // unit[x]: coefficients of id_x in hom(x,x), degree 0, closed
    std::vector<SVec> unit;

    int add_object(const std::string& name) {
        if (obj_index.count(name)) throw error("DgCat: duplicate object '" + name + "'");
        obj_index[name] = static_cast<int>(obj.size());
        obj.push_back(name);
        return static_cast<int>(obj.size()) - 1;
    }
    int nobj() const { return static_cast<int>(obj.size()); }
    int object(const std::string& name) const {
        auto it = obj_index.find(name);
        if (it == obj_index.end()) throw error("DgCat: unknown object '" + name + "'");
        return it->second;
    }

    void init_tables() {
        int n = nobj();
        hom.assign(n, std::vector<GradedModule>(n));
        diff.assign(n, std::vector<SMat>(n));
        comp.assign(n, {});
        for (int x = 0; x < n; ++x) {
            comp[x].assign(n, {});
            for (int y = 0; y < n; ++y) {
                hom[x][y].ring = ring;
                comp[x][y].assign(n, {});
            }
        }
        unit.assign(n, {});
    }
    void finalize_shapes() {
        int n = nobj();
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                if (diff[x][y].rows == 0 && diff[x][y].cols == 0)
                    diff[x][y] = SMat(hom[x][y].dim(), hom[x][y].dim(), ring);
                for (int z = 0; z < n; ++z) {
                    auto& t = comp[x][y][z];
                    t.resize(hom[y][z].dim());
                    for (auto& row : t) row.resize(hom[x][y].dim());
                }
            }
    }

    Morphism zero_morphism(int x, int y, Degree d) const { return Morphism{x, y, std::move(d), {}}; }
    Morphism basis_morphism(int x, int y, int i) const {
        return Morphism{x, y, hom[x][y].deg[i], svec_unit(i, Scalar(ring, 1))};
    }
    Morphism identity(int x) const {
        return Morphism{x, x, Degree::zero(grading.rank), unit[x]};
    }

    Morphism compose(const Morphism& g, const Morphism& f) const {
        if (f.dst != g.src) throw error("compose: object mismatch");
        Morphism r = zero_morphism(f.src, g.dst, g.deg + f.deg);
        const auto& table = comp[f.src][f.dst][g.dst];
        for (const auto& [gi, gs] : g.v)
            for (const auto& [fi, fs] : f.v)
                r.v = svec_axpy(r.v, gs * fs, table[gi][fi]);
        return r;
    }

    Morphism differential(const Morphism& f) const {
        Morphism r = zero_morphism(f.src, f.dst, f.deg + grading.iota);
        r.v = diff[f.src][f.dst].apply(f.v);
        return r;
    }

    bool is_closed(const Morphism& f) const { return differential(f).is_zero(); }

    static Morphism add(const Morphism& a, const Morphism& b) {
        if (a.src != b.src || a.dst != b.dst || a.deg != b.deg)
            throw error("Morphism add: mismatch");
        return Morphism{a.src, a.dst, a.deg, svec_add(a.v, b.v)};
    }
    static Morphism scale(const Morphism& a, const Scalar& c) {
        return Morphism{a.src, a.dst, a.deg, svec_scale(a.v, c)};
    }

    // Degree-homogeneous projection of a sparse vector over a module basis.
    SVec project_degree(const GradedModule& m, const SVec& v, const Degree& d) const {
        SVec r;
        for (const auto& [i, s] : v)
            if (m.deg[i] == d) r.emplace_back(i, s);
        return r;
    }

    // Solve d(h) = f; returns the homogeneous witness when one exists.
    std::optional<Morphism> is_exact(const Morphism& f) const {
        auto sol = solve(diff[f.src][f.dst], f.v);
        if (!sol) return std::nullopt;
        Morphism h = zero_morphism(f.src, f.dst, f.deg - grading.iota);
        h.v = project_degree(hom[f.src][f.dst], *sol, h.deg);
        return h;
    }

    // Two-sided inverse of f (not required closed or degree zero).
    std::optional<Morphism> is_isomorphism(const Morphism& f) const {
        int x = f.src, y = f.dst;
        int gdim = hom[y][x].dim();
        int r1 = hom[y][y].dim(), r2 = hom[x][x].dim();
        SMat sys(r1 + r2, gdim, ring);
        for (int gi = 0; gi < gdim; ++gi) {
            Morphism gb = basis_morphism(y, x, gi);
            for (const auto& [i, s] : compose(f, gb).v) sys.add_at(i, gi, s);
            for (const auto& [i, s] : compose(gb, f).v) sys.add_at(r1 + i, gi, s);
        }
        SVec b = unit[y];
        for (const auto& [i, s] : unit[x]) b = svec_add(b, svec_unit(r1 + i, s));
        auto sol = solve(sys, b);
        if (!sol) return std::nullopt;
        // units are degree 0, so the degree (-|f|) slice of any solution is an inverse
        Morphism g = zero_morphism(y, x, -f.deg);
        g.v = project_degree(hom[y][x], *sol, g.deg);
        if (compose(f, g).v != unit[y] || compose(g, f).v != unit[x]) return std::nullopt;
        return g;
    }

    std::string describe(const Morphism& f) const {
        if (f.v.empty()) return "0";
        std::string s;
        for (const auto& [i, c] : f.v) {
            if (!s.empty()) s += " + ";
            std::string cs = c.str();
            if (cs != "1") s += cs + "*";
            s += hom[f.src][f.dst].label[i];
        }
        return s;
    }
};

// Exhaustive dg-category axiom suite: d homogeneity, d^2 = 0, Leibniz,
// associativity on basis triples, degree-additive composition, unit laws.
inline VerificationReport check_axioms(const DgCat& C, const std::string& name = "") {
    VerificationReport rep;
    rep.suite = name.empty() ? "axioms" : "axioms(" + name + ")";
    int n = C.nobj();

    bool homog = true;
    std::string hw;
    for (int x = 0; x < n && homog; ++x)
        for (int y = 0; y < n && homog; ++y) {
            try {
                validate_homogeneous(LinearMap{C.grading.iota, C.diff[x][y]}, C.hom[x][y], C.hom[x][y]);
            } catch (const error& e) {
                homog = false;
                hw = C.obj[x] + "->" + C.obj[y] + ": " + e.what();
            }
        }
    rep.add("differential degree iota", homog, hw);

    bool dsq = true;
    std::string dw;
    for (int x = 0; x < n && dsq; ++x)
        for (int y = 0; y < n && dsq; ++y) {
            SMat s = C.diff[x][y] * C.diff[x][y];
            if (!s.is_zero()) {
                dsq = false;
                for (int i = 0; i < C.hom[x][y].dim(); ++i)
                    if (!C.diff[x][y].apply(C.differential(C.basis_morphism(x, y, i)).v).empty()) {
                        dw = "d^2 != 0 at " + C.hom[x][y].label[i];
                        break;
                    }
            }
        }
    rep.add("d^2 = 0", dsq, dw);

    bool addok = true;
    std::string aw;
    for (int x = 0; x < n && addok; ++x)
        for (int y = 0; y < n && addok; ++y)
            for (int z = 0; z < n && addok; ++z)
                for (int gi = 0; gi < C.hom[y][z].dim() && addok; ++gi)
                    for (int fi = 0; fi < C.hom[x][y].dim() && addok; ++fi)
                        for (const auto& [ri, s] : C.comp[x][y][z][gi][fi]) {
                            (void)s;
                            if (C.hom[x][z].deg[ri] != C.hom[y][z].deg[gi] + C.hom[x][y].deg[fi]) {
                                addok = false;
                                aw = C.hom[y][z].label[gi] + " o " + C.hom[x][y].label[fi];
                                break;
                            }
                        }
    rep.add("composition degree-additive", addok, aw);

    bool leib = true;
    std::string lw;
    for (int x = 0; x < n && leib; ++x)
        for (int y = 0; y < n && leib; ++y)
            for (int z = 0; z < n && leib; ++z)
                for (int gi = 0; gi < C.hom[y][z].dim() && leib; ++gi)
                    for (int fi = 0; fi < C.hom[x][y].dim(); ++fi) {
                        Morphism g = C.basis_morphism(y, z, gi);
                        Morphism f = C.basis_morphism(x, y, fi);
                        Morphism lhs = C.differential(C.compose(g, f));
                        Morphism rhs = DgCat::add(
                            C.compose(C.differential(g), f),
                            DgCat::scale(C.compose(g, C.differential(f)),
                                         sign_scalar(C.ring, C.grading.pair(C.grading.iota, g.deg))));
                        if (lhs.v != rhs.v) {
                            leib = false;
                            lw = "d(" + C.hom[y][z].label[gi] + " o " + C.hom[x][y].label[fi] + ")";
                            break;
                        }
                    }
    rep.add("Leibniz", leib, lw);

    bool assoc = true;
    std::string sw;
    for (int x = 0; x < n && assoc; ++x)
        for (int y = 0; y < n && assoc; ++y)
            for (int z = 0; z < n && assoc; ++z)
                for (int w = 0; w < n && assoc; ++w)
                    for (int hi = 0; hi < C.hom[z][w].dim() && assoc; ++hi)
                        for (int gi = 0; gi < C.hom[y][z].dim() && assoc; ++gi)
                            for (int fi = 0; fi < C.hom[x][y].dim(); ++fi) {
                                Morphism h = C.basis_morphism(z, w, hi);
                                Morphism g = C.basis_morphism(y, z, gi);
                                Morphism f = C.basis_morphism(x, y, fi);
                                if (C.compose(C.compose(h, g), f).v != C.compose(h, C.compose(g, f)).v) {
                                    assoc = false;
                                    sw = C.hom[z][w].label[hi] + "," + C.hom[y][z].label[gi] + "," +
                                         C.hom[x][y].label[fi];
                                    break;
                                }
                            }
    rep.add("associativity", assoc, sw);

    bool units = true;
    std::string uw;
    for (int x = 0; x < n && units; ++x) {
        Morphism idx = C.identity(x);
        if (!C.is_closed(idx)) {
            units = false;
            uw = "id_" + C.obj[x] + " not closed";
            break;
        }
        for (const auto& [i, s] : idx.v) {
            (void)s;
            if (!C.hom[x][x].deg[i].is_zero()) {
                units = false;
                uw = "id_" + C.obj[x] + " not degree 0";
            }
        }
        for (int y = 0; y < n && units; ++y) {
            for (int fi = 0; fi < C.hom[x][y].dim(); ++fi) {
                Morphism f = C.basis_morphism(x, y, fi);
                if (C.compose(C.identity(y), f).v != f.v || C.compose(f, idx).v != f.v) {
                    units = false;
                    uw = "unit law at " + C.hom[x][y].label[fi];
                    break;
                }
            }
        }
    }
    rep.add("units", units, uw);
    return rep;
}

} // namespace dgc
