// Exact homology computation, contractibility, quasi-isomorphism detection,
// exactness certificates, and reliable-window bookkeeping for truncations.

#pragma once

#include "dgc/bar.hpp"

namespace dgc {

struct FiniteComplex {
    GradedModule mod;
    SMat d; // degree iota
};

// exact rank of d restricted to the degree-delta slice of the source
inline int slice_rank(const FiniteComplex& cx, const Degree& delta) {
    std::vector<int> cols = cx.mod.slice(delta);
    SMat m(cx.d.rows, static_cast<int>(cols.size()), cx.d.ring);
    SMat tr = cx.d.transpose();
    for (size_t j = 0; j < cols.size(); ++j)
        for (const auto& [i, s] : tr.row[cols[j]]) m.add_at(i, static_cast<int>(j), s);
    return rank(m);
}

// homology rank per degree: dim_delta - rank(d|_delta) - rank(d|_{delta - iota})
inline std::map<Degree, int> homology_ranks(const GradingSpec& g, const FiniteComplex& cx) {
    std::map<Degree, int> out;
    for (const Degree& d : cx.mod.degrees_present()) {
        int dim = static_cast<int>(cx.mod.slice(d).size());
        int r1 = slice_rank(cx, d);
        int r2 = slice_rank(cx, d - g.iota);
        out[d] = dim - r1 - r2;
    }
    return out;
}

inline FiniteComplex end_complex(const DgCat& C, int x) {
    return FiniteComplex{C.hom[x][x], C.diff[x][x]};
}
inline FiniteComplex component_complex(const Bimodule& M, int x, int y) {
    return FiniteComplex{M.comp[x][y], M.diff[x][y]};
}

// contracting homotopy h with d(h) = id, when one exists
inline std::optional<Morphism> is_contractible(const DgCat& C, int x) {
    return C.is_exact(C.identity(x));
}

// Componentwise mapping cone of a closed degree-zero bimodule map:
// q^{-iota} M (+) N with differential [[-d_M, 0], [phi, d_N]].
inline Bimodule bimodule_cone(const BimoduleMap& phi, std::shared_ptr<Bimodule>* keep_src = nullptr,
                              std::shared_ptr<Bimodule>* keep_tgt = nullptr) {
    const Bimodule& M = *phi.src;
    const Bimodule& N = *phi.tgt;
    const DgCat& L = *M.L;
    Bimodule cone;
    cone.L = M.L;
    cone.R = M.R;
    cone.init_shapes();
    const GradingSpec& g = L.grading;
    auto Mi = std::make_shared<Bimodule>(M);
    auto Ni = std::make_shared<Bimodule>(N);
    if (keep_src) *keep_src = Mi;
    if (keep_tgt) *keep_tgt = Ni;
    for (int x = 0; x < M.L->nobj(); ++x)
        for (int y = 0; y < M.R->nobj(); ++y) {
            GradedModule& c = cone.comp[x][y];
            int mdim = M.comp[x][y].dim();
            for (int i = 0; i < mdim; ++i)
                c.add("s:" + M.comp[x][y].label[i], M.comp[x][y].deg[i] - g.iota);
            for (int i = 0; i < N.comp[x][y].dim(); ++i)
                c.add("t:" + N.comp[x][y].label[i], N.comp[x][y].deg[i]);
            SMat D(c.dim(), c.dim(), L.ring);
            SMat mtr = M.diff[x][y].transpose();
            SMat ptr = phi.comp[x][y].transpose();
            for (int j = 0; j < mdim; ++j) {
                for (const auto& [i, s] : mtr.row[j]) D.add_at(i, j, -s);
                for (const auto& [i, s] : ptr.row[j]) D.add_at(mdim + i, j, s);
            }
            SMat tr = N.diff[x][y].transpose();
            for (int j = 0; j < N.comp[x][y].dim(); ++j)
                for (const auto& [i, s] : tr.row[j]) D.add_at(mdim + i, mdim + j, s);
            cone.diff[x][y] = std::move(D);
        }
    cone.actL = [Mi, Ni, g](int x2, int x, int y, int gi, int mi) -> SVec {
        int mdim = Mi->comp[x][y].dim();
        int mdim2 = Mi->comp[x2][y].dim();
        if (mi < mdim) {
            Degree gd = Mi->L->hom[x][x2].deg[gi];
            Scalar sg = sign_scalar(Mi->L->ring, g.pair(g.iota, gd));
            SVec v = Mi->actL(x2, x, y, gi, mi);
            return svec_scale(v, sg);
        }
        SVec v = Ni->actL(x2, x, y, gi, mi - mdim);
        SVec out;
        for (const auto& [k, s] : v) out.emplace_back(k + mdim2, s);
        return out;
    };
    cone.actR = [Mi, Ni](int x, int y, int y2, int mi, int gi) -> SVec {
        int mdim = Mi->comp[x][y].dim();
        int mdim2 = Mi->comp[x][y2].dim();
        if (mi < mdim) return Mi->actR(x, y, y2, mi, gi);
        SVec v = Ni->actR(x, y, y2, mi - mdim, gi);
        SVec out;
        for (const auto& [k, s] : v) out.emplace_back(k + mdim2, s);
        return out;
    };
    cone.finalize_shapes();
    return cone;
}

// A window of degrees, read on the first grading coordinate.
struct Window {
    std::optional<long long> lo, hi;
    bool contains(const Degree& d) const {
        if (d.rank() == 0) return true;
        long long c = d.c[0];
        if (lo && c < *lo) return false;
        if (hi && c > *hi) return false;
        return true;
    }
    std::string str() const {
        std::string s = lo ? std::to_string(*lo) : "-inf";
        s += "..";
        s += hi ? std::to_string(*hi) : "+inf";
        return s;
    }
};

// Quasi-isomorphism iff Cone(phi) is acyclic, checked componentwise on the
// degrees inside the window.
inline bool is_quasi_iso(const BimoduleMap& phi, const Window& win, std::string* witness = nullptr) {
    Bimodule cone = bimodule_cone(phi);
    const GradingSpec& g = phi.src->L->grading;
    for (int x = 0; x < phi.src->L->nobj(); ++x)
        for (int y = 0; y < phi.src->R->nobj(); ++y) {
            auto ranks = homology_ranks(g, component_complex(cone, x, y));
            for (const auto& [d, r] : ranks)
                if (r != 0 && win.contains(d)) {
                    if (witness)
                        *witness = "cone homology rank " + std::to_string(r) + " at degree " +
                                   d.str() + ", component (" + phi.src->L->obj[x] + "," +
                                   phi.src->R->obj[y] + ")";
                    return false;
                }
        }
    return true;
}

// Reliable degrees of an r <= R truncated bar complex over D: degree delta is
// reliable when no word of the untruncated complex with r > R can have degree
// in {delta - iota, delta, delta + iota}. Word degrees at level r lie in the
// componentwise box (r+2) [mu-, mu+] - r iota.
inline bool bar_degree_reliable(const DgCat& D, int R, const Degree& delta, int horizon = 256) {
    int rank = D.grading.rank;
    std::vector<long long> lo(rank, 0), hi(rank, 0);
    bool any = false;
    for (int x = 0; x < D.nobj(); ++x)
        for (int y = 0; y < D.nobj(); ++y)
            for (const Degree& d : D.hom[x][y].deg) {
                for (int c = 0; c < rank; ++c) {
                    if (!any) { lo[c] = hi[c] = d.c[c]; }
                    else {
                        lo[c] = std::min<long long>(lo[c], d.c[c]);
                        hi[c] = std::max<long long>(hi[c], d.c[c]);
                    }
                }
                any = true;
            }
    if (!any) return true;
    auto box_misses = [&](long long r, const Degree& dd) {
        for (int c = 0; c < rank; ++c) {
            long long L = (r + 2) * lo[c] - r * D.grading.iota.c[c];
            long long H = (r + 2) * hi[c] - r * D.grading.iota.c[c];
            if (dd.c[c] < L || dd.c[c] > H) return true;
        }
        return false;
    };
    std::vector<Degree> probes{delta - D.grading.iota, delta, delta + D.grading.iota};
    for (long long r = R + 1; r <= R + horizon; ++r)
        for (const Degree& p : probes)
            if (!box_misses(r, p)) return false;
    // beyond the horizon: require a coordinate with monotone escape
    for (const Degree& p : probes) {
        bool esc = false;
        for (int c = 0; c < rank && !esc; ++c) {
            long long r = R + horizon;
            long long L = (r + 2) * lo[c] - r * D.grading.iota.c[c];
            long long H = (r + 2) * hi[c] - r * D.grading.iota.c[c];
            if (hi[c] - D.grading.iota.c[c] < 0 && p.c[c] > H) esc = true; // box drifts down
            if (lo[c] - D.grading.iota.c[c] > 0 && p.c[c] < L) esc = true; // box drifts up
        }
        if (!esc) return false;
    }
    return true;
}

// The canonical contraction Bar_R(C) (x)_C M -> M, w (x) m -> eps(w).m.
inline BimoduleMap counit_contract_left(const TensorOver& T, const BarComplex& bar) {
    const Bimodule& M = *T.B;
    BimoduleMap r;
    r.src = &T.bim;
    r.tgt = &M;
    r.deg = Degree::zero(bar.D->grading.rank);
    r.init_shapes();
    const DgCat& C = *bar.D;
    for (int x = 0; x < T.bim.L->nobj(); ++x)
        for (int z = 0; z < T.bim.R->nobj(); ++z) {
            const Quotient& Q = T.q[x][z];
            for (size_t col = 0; col < Q.basis.size(); ++col) {
                SVec lift = Q.lift.apply(svec_unit(static_cast<int>(col), Scalar(C.ring, 1)));
                SVec out;
                for (const auto& [bigi, s] : lift) {
                    auto [y, wi, mi] = T.big[x][z][bigi];
                    const BarWord& w = bar.words[x][y][wi];
                    if (w.r != 0) continue;
                    Morphism ew = C.compose(bar.entry_morphism(w, 0), bar.entry_morphism(w, 1));
                    BimElt m = M.basis(y, z, mi);
                    BimElt em = M.act_left(ew, m);
                    out = svec_add(out, svec_scale(em.v, s));
                }
                for (const auto& [k, s] : out) r.comp[x][z].add_at(k, static_cast<int>(col), s);
            }
        }
    return r;
}

// M (x)_D Bar_R(D) -> M, m (x) w -> m.eps(w).
inline BimoduleMap counit_contract_right(const TensorOver& T, const BarComplex& bar) {
    const Bimodule& M = *T.A;
    BimoduleMap r;
    r.src = &T.bim;
    r.tgt = &M;
    r.deg = Degree::zero(bar.D->grading.rank);
    r.init_shapes();
    const DgCat& D = *bar.D;
    for (int x = 0; x < T.bim.L->nobj(); ++x)
        for (int z = 0; z < T.bim.R->nobj(); ++z) {
            const Quotient& Q = T.q[x][z];
            for (size_t col = 0; col < Q.basis.size(); ++col) {
                SVec lift = Q.lift.apply(svec_unit(static_cast<int>(col), Scalar(D.ring, 1)));
                SVec out;
                for (const auto& [bigi, s] : lift) {
                    auto [y, mi, wi] = T.big[x][z][bigi];
                    const BarWord& w = bar.words[y][z][wi];
                    if (w.r != 0) continue;
                    Morphism ew = D.compose(bar.entry_morphism(w, 0), bar.entry_morphism(w, 1));
                    BimElt m = M.basis(x, y, mi);
                    BimElt me = M.act_right(m, ew);
                    out = svec_add(out, svec_scale(me.v, s));
                }
                for (const auto& [k, s] : out) r.comp[x][z].add_at(k, static_cast<int>(col), s);
            }
        }
    return r;
}

struct ExactnessReport {
    bool acyclic = false, projective = false, left_exact = false, right_exact = false;
    bool exact() const { return left_exact && right_exact; }
};

// Properties of a (C,D)-bimodule via truncated-bar homology in the window
// (certificates at truncation scale).
inline ExactnessReport exactness_checks(const Bimodule& B, const BarComplex& barC,
                                        const BarComplex& barD, const Window& win) {
    ExactnessReport rep;
    // acyclic: Bar (x) B (x) Bar ~ 0
    auto T1 = tensor_over(barC.bim, B);
    auto T2 = tensor_over(T1->bim, barD.bim);
    bool ac = true;
    const GradingSpec& g = B.L->grading;
    for (int x = 0; x < B.L->nobj() && ac; ++x)
        for (int y = 0; y < B.R->nobj() && ac; ++y) {
            auto ranks = homology_ranks(g, component_complex(T2->bim, x, y));
            for (const auto& [d, r] : ranks)
                if (r != 0 && win.contains(d)) ac = false;
        }
    rep.acyclic = ac;
    // projective: the double contraction Bar (x) B (x) Bar -> B is a quasi-iso
    BimoduleMap cR = counit_contract_right(*T2, barD); // T2.bim -> copy of T1.bim
    BimoduleMap cL = counit_contract_left(*T1, barC);  // T1.bim -> B
    cL.src = cR.tgt; // T2 holds a structurally identical copy of T1.bim
    BimoduleMap total = map_compose(cL, cR);
    rep.projective = is_quasi_iso(total, win);
    // left exact: Bar_C (x) B -> B quasi-iso; right exact: B (x) Bar_D -> B
    rep.left_exact = is_quasi_iso(cL, win);
    auto TR = tensor_over(B, barD.bim);
    rep.right_exact = is_quasi_iso(counit_contract_right(*TR, barD), win);
    return rep;
}

// Basis of the space of equivariant degree-l maps M -> N (bimodule maps with
// the left (-1)^{<l,|g|>} convention), plus the differential between slices.
struct MapSpace {
    std::vector<BimoduleMap> basis;
};

inline MapSpace equivariant_map_space(const Bimodule& M, const Bimodule& N, const Degree& l) {
    const DgCat& L = *M.L;
    const DgCat& R = *M.R;
    Ring ring = L.ring;
    // unknowns: entries phi[x][y](i,j) with deg_N(i) = deg_M(j) + l
    std::vector<std::tuple<int, int, int, int>> unk;
    std::map<std::tuple<int, int, int, int>, int> uidx;
    for (int x = 0; x < L.nobj(); ++x)
        for (int y = 0; y < R.nobj(); ++y)
            for (int i = 0; i < N.comp[x][y].dim(); ++i)
                for (int j = 0; j < M.comp[x][y].dim(); ++j)
                    if (N.comp[x][y].deg[i] == M.comp[x][y].deg[j] + l) {
                        uidx[{x, y, i, j}] = static_cast<int>(unk.size());
                        unk.push_back({x, y, i, j});
                    }
    // constraints; entries at degree-impossible positions are structurally zero
    std::vector<SVec> rows;
    auto coeff = [&](SVec& row, int x, int y, int i, int j, const Scalar& c) {
        auto it = uidx.find({x, y, i, j});
        if (it == uidx.end()) return;
        row = svec_add(row, svec_unit(it->second, c));
    };
    // left equivariance: phi(g.m) - (-1)^{<l,|g|>} g.phi(m) = 0
    for (int x2 = 0; x2 < L.nobj(); ++x2)
        for (int x = 0; x < L.nobj(); ++x)
            for (int y = 0; y < R.nobj(); ++y)
                for (int gi = 0; gi < L.hom[x][x2].dim(); ++gi)
                    for (int mj = 0; mj < M.comp[x][y].dim(); ++mj) {
                        SVec gm = M.actL(x2, x, y, gi, mj);
                        Scalar sg = sign_scalar(ring, L.grading.pair(l, L.hom[x][x2].deg[gi]));
                        for (int i = 0; i < N.comp[x2][y].dim(); ++i) {
                            SVec row;
                            for (const auto& [k, s] : gm) coeff(row, x2, y, i, k, s);
                            // minus g.phi(m): phi(m) = sum_j2 phi_{j2, mj} e_{j2}; g.e_{j2}
                            for (int j2 = 0; j2 < N.comp[x][y].dim(); ++j2) {
                                SVec gn = N.actL(x2, x, y, gi, j2);
                                Scalar c = -sg * svec_get(gn, i, ring);
                                coeff(row, x, y, j2, mj, c);
                            }
                            if (!row.empty()) rows.push_back(std::move(row));
                        }
                    }
    // right equivariance: phi(m.g) - phi(m).g = 0
    for (int x = 0; x < L.nobj(); ++x)
        for (int y = 0; y < R.nobj(); ++y)
            for (int y2 = 0; y2 < R.nobj(); ++y2)
                for (int gi = 0; gi < R.hom[y2][y].dim(); ++gi)
                    for (int mj = 0; mj < M.comp[x][y].dim(); ++mj) {
                        SVec mg = M.actR(x, y, y2, mj, gi);
                        for (int i = 0; i < N.comp[x][y2].dim(); ++i) {
                            SVec row;
                            for (const auto& [k, s] : mg) coeff(row, x, y2, i, k, s);
                            for (int j2 = 0; j2 < N.comp[x][y].dim(); ++j2) {
                                SVec ng = N.actR(x, y, y2, j2, gi);
                                Scalar c = -svec_get(ng, i, ring);
                                coeff(row, x, y, j2, mj, c);
                            }
                            if (!row.empty()) rows.push_back(std::move(row));
                        }
                    }
    SMat sys(0, static_cast<int>(unk.size()), ring);
    for (auto& row : rows) {
        sys.row.push_back(std::move(row));
        sys.rows++;
    }
    std::vector<SVec> ker = kernel(sys);
    MapSpace out;
    for (const SVec& v : ker) {
        BimoduleMap f;
        f.src = &M;
        f.tgt = &N;
        f.deg = l;
        f.init_shapes();
        for (const auto& [ui, s] : v) {
            auto [x, y, i, j] = unk[ui];
            f.comp[x][y].add_at(i, j, s);
        }
        out.basis.push_back(std::move(f));
    }
    return out;
}

// Homology ranks of the complex of equivariant maps Hom(M, N) at the listed
// degrees (needs degrees l - iota, l, l + iota to be meaningful at l).
inline std::map<Degree, int> hom_complex_homology(const Bimodule& M, const Bimodule& N,
                                                  const std::vector<Degree>& degrees) {
    const GradingSpec& g = M.L->grading;
    Ring ring = M.L->ring;
    std::map<Degree, MapSpace> spaces;
    auto space_at = [&](const Degree& l) -> MapSpace& {
        auto it = spaces.find(l);
        if (it == spaces.end()) it = spaces.emplace(l, equivariant_map_space(M, N, l)).first;
        return it->second;
    };
    // coordinates of d(phi) in the basis at l + iota via exact solve
    auto dmatrix = [&](const Degree& l) {
        MapSpace& src = space_at(l);
        MapSpace& tgt = space_at(l + g.iota);
        // express each d(basis) in tgt basis: build linear system over the
        // flattened entries
        auto flatten = [&](const BimoduleMap& f) {
            SVec v;
            int off = 0;
            for (size_t x = 0; x < f.comp.size(); ++x)
                for (size_t y = 0; y < f.comp[x].size(); ++y) {
                    SMat tr = f.comp[x][y].transpose();
                    for (int j = 0; j < tr.rows; ++j)
                        for (const auto& [i, s] : tr.row[j])
                            v = svec_add(v, svec_unit(off + j * f.comp[x][y].rows + i, s));
                    off += f.comp[x][y].rows * f.comp[x][y].cols;
                }
            return v;
        };
        std::vector<SVec> cols;
        int dim = 0;
        for (const BimoduleMap& b : tgt.basis) {
            SVec v = flatten(b);
            for (const auto& [i, s] : v) dim = std::max(dim, i + 1);
            cols.push_back(v);
        }
        SMat m(dim, static_cast<int>(cols.size()), ring);
        for (size_t j = 0; j < cols.size(); ++j)
            for (const auto& [i, s] : cols[j]) m.add_at(i, static_cast<int>(j), s);
        SMat out(static_cast<int>(tgt.basis.size()), static_cast<int>(src.basis.size()), ring);
        for (size_t j = 0; j < src.basis.size(); ++j) {
            SVec v = flatten(map_differential(src.basis[j]));
            SVec padded;
            for (const auto& [i, s] : v)
                if (i < dim) padded.push_back({i, s});
                else throw error("hom_complex: differential leaves the map space");
            auto sol = solve(m, padded);
            if (!sol) throw error("hom_complex: differential not expressible in basis");
            for (const auto& [i, s] : *sol) out.add_at(i, static_cast<int>(j), s);
        }
        return out;
    };
    std::map<Degree, int> ranks;
    for (const Degree& l : degrees) {
        int dim = static_cast<int>(space_at(l).basis.size());
        SMat d_at = dmatrix(l);
        SMat d_below = dmatrix(l - g.iota);
        ranks[l] = dim - rank(d_at) - rank(d_below);
    }
    return ranks;
}

// Solve for closed degree-0 theta with eps2 o theta = eps1 + d(h): the counit
// order relation between counital objects.
inline std::optional<BimoduleMap> counit_order(const Bimodule& C1, const BimoduleMap& eps1,
                                               const Bimodule& C2, const BimoduleMap& eps2) {
    const GradingSpec& g = C1.L->grading;
    MapSpace thetas = equivariant_map_space(C1, C2, Degree::zero(g.rank));
    MapSpace hs = equivariant_map_space(C1, *eps1.tgt, -g.iota);
    Ring ring = C1.L->ring;
    // unknowns: coefficients of theta in thetas.basis and h in hs.basis
    // constraints: d(theta) = 0 and eps2 o theta - d(h) = eps1, flattened
    auto flatten = [&](const BimoduleMap& f, std::map<std::tuple<int, int, int, int>, int>& pos,
                       int& dim) {
        SVec v;
        for (size_t x = 0; x < f.comp.size(); ++x)
            for (size_t y = 0; y < f.comp[x].size(); ++y)
                for (int i = 0; i < f.comp[x][y].rows; ++i)
                    for (const auto& [j, s] : f.comp[x][y].row[i]) {
                        auto key = std::make_tuple(static_cast<int>(x), static_cast<int>(y), i, j);
                        auto it = pos.find(key);
                        if (it == pos.end()) it = pos.emplace(key, dim++).first;
                        v = svec_add(v, svec_unit(it->second, s));
                    }
        return v;
    };
    std::map<std::tuple<int, int, int, int>, int> posA, posB;
    int dimA = 0, dimB = 0;
    std::vector<SVec> colA1, colA2, colB;
    for (const auto& th : thetas.basis) colA1.push_back(flatten(map_differential(th), posA, dimA));
    for (const auto& th : thetas.basis) colA2.push_back(flatten(map_compose(eps2, th), posB, dimB));
    for (const auto& h : hs.basis) colB.push_back(flatten(map_differential(h), posB, dimB));
    SVec rhs = flatten(eps1, posB, dimB);
    int nT = static_cast<int>(thetas.basis.size()), nH = static_cast<int>(hs.basis.size());
    SMat sys(dimA + dimB, nT + nH, ring);
    for (int j = 0; j < nT; ++j) {
        for (const auto& [i, s] : colA1[j]) sys.add_at(i, j, s);
        for (const auto& [i, s] : colA2[j]) sys.add_at(dimA + i, j, s);
    }
    for (int j = 0; j < nH; ++j)
        for (const auto& [i, s] : colB[j]) sys.add_at(dimA + i, nT + j, -s);
    SVec b;
    for (const auto& [i, s] : rhs) b = svec_add(b, svec_unit(dimA + i, s));
    auto sol = solve(sys, b);
    if (!sol) return std::nullopt;
    BimoduleMap theta;
    theta.src = &C1;
    theta.tgt = &C2;
    theta.deg = Degree::zero(g.rank);
    theta.init_shapes();
    for (const auto& [j, s] : *sol) {
        if (j >= nT) continue;
        for (size_t x = 0; x < theta.comp.size(); ++x)
            for (size_t y = 0; y < theta.comp[x].size(); ++y)
                theta.comp[x][y] = theta.comp[x][y] + SMat::scale(thetas.basis[j].comp[x][y], s);
    }
    return theta;
}

} // namespace dgc
