// The comparison chain maps Xi_SB, Xi_A, Xi_Tw, Xi_pretr from the bar complex
// of an envelope to the relative bar complex over the base objects, and the
// isomorphism D (x)_C Bar(C) (x)_C D ~= Bar(D, Obj C).

#pragma once

#include "dgc/bar.hpp"
#include "dgc/envelope.hpp"

namespace dgc {

template <class WordFn>
inline BimoduleMap assemble_bar_map(const BarComplex& src, const Bimodule& tgt, WordFn&& fn) {
    BimoduleMap r;
    r.src = &src.bim;
    r.tgt = &tgt;
    r.deg = Degree::zero(src.D->grading.rank);
    r.init_shapes();
    const DgCat& D = *src.D;
    for (int Y = 0; Y < D.nobj(); ++Y)
        for (int Yp = 0; Yp < D.nobj(); ++Yp)
            for (size_t i = 0; i < src.words[Y][Yp].size(); ++i) {
                BimElt e = fn(src.words[Y][Yp][i]);
                for (const auto& [k, s] : e.v) r.comp[Y][Yp].add_at(k, static_cast<int>(i), s);
            }
    return r;
}

inline Degree word_degree(const EnvelopeView& V, const BarWord& w) {
    Degree d = Degree::zero(V.cat().grading.rank);
    const DgCat& D = V.cat();
    for (int u = 0; u <= w.r + 1; ++u) {
        int src = (u <= w.r) ? w.xobj[u] : w.Yp;
        int dst = (u == 0) ? w.Y : w.xobj[u - 1];
        d = d + D.hom[src][dst].deg[w.entry[u]];
    }
    return d - w.r * D.grading.iota;
}

// Xi_SB on a word over an SB view:
//   [f_0^{i_{-1}}_{i_0}, ...] -> (-1)^{r <iota, j>} phi_{Y,j} . [f_0,...,f_{r+1}] . phi_{Y',j'}^{-1}.
inline BimElt xi_sb_word(const EnvelopeView& V, const BarComplex& tgt, const BarWord& w) {
    const DgCat& D = V.cat();
    const GradingSpec& g = D.grading;
    std::vector<Morphism> inner;
    for (int u = 0; u <= w.r + 1; ++u) {
        auto pair = std::pair<int, int>{(u <= w.r) ? w.xobj[u] : w.Yp, (u == 0) ? w.Y : w.xobj[u - 1]};
        const ViewBasisInfo& e = V.basis_info(pair.first, pair.second)[w.entry[u]];
        inner.push_back(V.eta_morphism(V.base().basis_morphism(
            V.object(pair.first).ent[e.b].obj, V.object(pair.second).ent[e.a].obj, e.bi)));
    }
    BimElt e0 = word_class(tgt, inner);
    BimElt e1 = tgt.bim.act_right(e0, V.pi(w.Yp, 0));
    BimElt e2 = tgt.bim.act_left(V.sigma(w.Y, 0), e1);
    int j = g.pair(g.iota, V.object(w.Y).ent[0].shift);
    return Bimodule::scale(e2, sign_scalar(D.ring, w.r * j));
}

inline BimoduleMap xi_sb(const EnvelopeView& V, const BarComplex& src, const BarComplex& tgt) {
    return assemble_bar_map(src, tgt.bim,
                            [&](const BarWord& w) { return xi_sb_word(V, tgt, w); });
}

// Xi_A: sum over index tuples of sigma . [components] . pi, no signs. On a
// basis word the tuple is forced by the entries' components.
inline BimElt xi_add_word(const EnvelopeView& V, const BarComplex& tgt, const BarWord& w) {
    std::vector<ViewBasisInfo> info;
    for (int u = 0; u <= w.r + 1; ++u) {
        auto pair = std::pair<int, int>{(u <= w.r) ? w.xobj[u] : w.Yp, (u == 0) ? w.Y : w.xobj[u - 1]};
        info.push_back(V.basis_info(pair.first, pair.second)[w.entry[u]]);
    }
    // f_u has target component a in X_{u-1} and source component b in X_u; the
    // tuple sum collapses to the single consistent assignment, if any
    BimElt zero = tgt.bim.zero(w.Y, w.Yp, word_degree(V, w));
    for (int u = 0; u <= w.r; ++u)
        if (info[u].b != info[u + 1].a) return zero;
    std::vector<Morphism> inner;
    for (int u = 0; u <= w.r + 1; ++u) {
        auto pair = std::pair<int, int>{(u <= w.r) ? w.xobj[u] : w.Yp, (u == 0) ? w.Y : w.xobj[u - 1]};
        inner.push_back(V.eta_morphism(V.base().basis_morphism(
            V.object(pair.first).ent[info[u].b].obj, V.object(pair.second).ent[info[u].a].obj,
            info[u].bi)));
    }
    BimElt e0 = word_class(tgt, inner);
    BimElt e1 = tgt.bim.act_right(e0, V.pi(w.Yp, info[w.r + 1].b));
    return tgt.bim.act_left(V.sigma(w.Y, info[0].a), e1);
}

inline BimoduleMap xi_add(const EnvelopeView& V, const BarComplex& src, const BarComplex& tgt) {
    return assemble_bar_map(src, tgt.bim,
                            [&](const BarWord& w) { return xi_add_word(V, tgt, w); });
}

// nilpotency degree of a Maurer-Cartan endomorphism in the base category
inline int nilpotency_degree(const DgCat& C, const Morphism& alpha, int bound = 64) {
    if (alpha.is_zero()) return 1;
    Morphism p = alpha;
    int nu = 1;
    while (!p.is_zero()) {
        ++nu;
        if (nu > bound) return -1;
        p = C.compose(p, alpha);
    }
    return nu;
}

// Xi_Tw on a word over a Tw view. The image lives in the completed bar complex,
// represented here by its components up to the target truncation: insertion
// vectors run over r + n_0 + ... + n_r <= R_tgt. Inserted alphas are tensor
// slots, so the sum never terminates on its own; the map is a chain map into
// the completed bar and is certified exactly below the truncation boundary
// (see is_chain_map_below_level). Interior twists must be nilpotent, which is
// the admissibility gate for this operation.
inline BimElt xi_tw_word(const EnvelopeView& V, const BarComplex& tgt, const BarWord& w,
                         int nil_bound = 64) {
    const DgCat& D = V.cat();
    const DgCat& C = V.base();
    const GradingSpec& g = D.grading;
    int r = w.r;
    std::vector<Morphism> alpha(r + 1);
    for (int u = 0; u <= r; ++u) {
        alpha[u] = V.object(w.xobj[u]).twist_at(C, 0, 0);
        if (nilpotency_degree(C, alpha[u], nil_bound) < 0)
            throw error("xi_tw: twist of '" + V.object(w.xobj[u]).name + "' is not nilpotent");
    }
    // bare entries (Tw views: bare = same coefficients between eta objects)
    std::vector<Morphism> bare(r + 2);
    std::vector<int> k(r + 2);
    for (int u = 0; u <= r + 1; ++u) {
        auto pair = std::pair<int, int>{(u <= r) ? w.xobj[u] : w.Yp, (u == 0) ? w.Y : w.xobj[u - 1]};
        const ViewBasisInfo& e = V.basis_info(pair.first, pair.second)[w.entry[u]];
        bare[u] = V.eta_morphism(C.basis_morphism(V.object(pair.first).ent[0].obj,
                                                  V.object(pair.second).ent[0].obj, e.bi));
        k[u] = g.pair(g.iota, D.hom[pair.first][pair.second].deg[w.entry[u]]);
    }
    BimElt acc = tgt.bim.zero(w.Y, w.Yp, word_degree(V, w));
    Morphism psiYp_inv = V.psi_inverse(w.Yp);
    Morphism psiY = V.psi(w.Y);
    int budget = tgt.R - r; // total insertions allowed by the truncation
    std::vector<int> n(r + 1, 0);
    while (true) {
        int total = 0;
        for (int x : n) total += x;
        if (total <= budget) {
            bool vanishes = false;
            for (int u = 0; u <= r; ++u)
                if (n[u] > 0 && alpha[u].is_zero()) vanishes = true;
            if (!vanishes) {
                int sgn = expansion_sign_closed(k, n);
                std::vector<Morphism> inner;
                for (int u = 0; u <= r + 1; ++u) {
                    inner.push_back(bare[u]);
                    if (u <= r)
                        for (int t = 0; t < n[u]; ++t) inner.push_back(V.eta_morphism(alpha[u]));
                }
                BimElt e0 = word_class(tgt, inner);
                BimElt e1 = tgt.bim.act_left(psiY, tgt.bim.act_right(e0, psiYp_inv));
                acc = Bimodule::add(acc, Bimodule::scale(e1, sign_scalar(D.ring, sgn)));
            }
        }
        int u = 0;
        while (u <= r) {
            if (++n[u] <= budget) break;
            n[u] = 0;
            ++u;
        }
        if (u > r) break;
    }
    return acc;
}

inline BimoduleMap xi_tw(const EnvelopeView& V, const BarComplex& src, const BarComplex& tgt,
                         int nil_bound = 64) {
    return assemble_bar_map(src, tgt.bim,
                            [&](const BarWord& w) { return xi_tw_word(V, tgt, w, nil_bound); });
}

// Chain-map certificate away from the truncation boundary: the defect
// d o Phi - Phi o d must vanish on every matrix entry whose target word has
// r <= max_level. For maps into a plain (untruncated-image) bar use
// max_level = tgt.R.
inline bool is_chain_map_below_level(const BimoduleMap& phi, const BarComplex& tgt, int max_level,
                                     std::string* witness = nullptr) {
    BimoduleMap defect = map_differential(phi);
    for (int Y = 0; Y < tgt.D->nobj(); ++Y)
        for (int Yp = 0; Yp < tgt.D->nobj(); ++Yp)
            for (int i = 0; i < defect.comp[Y][Yp].rows; ++i) {
                if (tgt.words[Y][Yp][i].r > max_level) continue;
                if (!defect.comp[Y][Yp].row[i].empty()) {
                    if (witness)
                        *witness = "defect at target word " + tgt.describe(tgt.words[Y][Yp][i]);
                    return false;
                }
            }
    return true;
}

// Xi_pretr on a general word, via the equivariant reduction to the id-boundary
// word: Xi([f_0,...,f_{r+1}]) = (-1)^{r <iota,|f_0|>} f_0 . Xi([id, f_1..f_r, id]) . f_{r+1}.
inline BimElt xi_pretr_word(const EnvelopeView& V, const BarComplex& tgt, const BarWord& w) {
    const DgCat& D = V.cat();
    const DgCat& C = V.base();
    const GradingSpec& g = D.grading;
    int r = w.r;

    // view entry morphisms
    std::vector<Morphism> f(r + 2);
    std::vector<int> k(r + 2, 0);
    for (int u = 0; u <= r + 1; ++u) {
        int src = (u <= r) ? w.xobj[u] : w.Yp;
        int dst = (u == 0) ? w.Y : w.xobj[u - 1];
        f[u] = D.basis_morphism(src, dst, w.entry[u]);
        k[u] = g.pair(g.iota, f[u].deg);
    }

    // block structure: block u ranges over entries of the interior object X_u
    std::vector<const TwixObject*> Xu(r + 1);
    for (int u = 0; u <= r; ++u) Xu[u] = &V.object(w.xobj[u]);

    // fixed block endpoints from the interior entries' components
    // (for basis f_u, u = 1..r: target component in X_{u-1}, source in X_u)
    std::vector<int> fixed_last(r + 1, -1), fixed_first(r + 1, -1);
    for (int u = 1; u <= r; ++u) {
        auto pair = std::pair<int, int>{w.xobj[u], w.xobj[u - 1]};
        const ViewBasisInfo& e = V.basis_info(pair.first, pair.second)[w.entry[u]];
        fixed_last[u - 1] = e.a;
        fixed_first[u] = e.b;
    }

    // enumerate twist-chains per block: sequences a_0..a_m with
    // twist(a_{v-1}, a_v) != 0; one-sidedness bounds the length
    auto chains_of = [&](int u) {
        std::vector<std::vector<int>> out;
        const TwixObject& T = *Xu[u];
        std::function<void(std::vector<int>&)> dfs = [&](std::vector<int>& cur) {
            bool end_ok = fixed_last[u] < 0 || cur.back() == fixed_last[u];
            if (end_ok) out.push_back(cur);
            for (const auto& [ab, m] : T.twist) {
                if (m.is_zero() || ab.first != cur.back()) continue;
                cur.push_back(ab.second);
                dfs(cur);
                cur.pop_back();
            }
        };
        for (int a0 = 0; a0 < T.size(); ++a0) {
            if (fixed_first[u] >= 0 && a0 != fixed_first[u]) continue;
            std::vector<int> cur{a0};
            dfs(cur);
        }
        return out;
    };
    std::vector<std::vector<std::vector<int>>> chains(r + 1);
    for (int u = 0; u <= r; ++u) chains[u] = chains_of(u);

    // degree of Xi([id, f_1, ..., f_r, id]) between the interior boundaries
    Degree iddeg = Degree::zero(g.rank);
    for (int u = 1; u <= r; ++u) iddeg = iddeg + f[u].deg;
    iddeg = iddeg - r * g.iota;
    BimElt acc = tgt.bim.zero(w.xobj.empty() ? w.Y : w.xobj[0], w.xobj.empty() ? w.Yp : w.xobj[r],
                              iddeg);
    // iterate over the product of block chains
    std::vector<size_t> pick(r + 1, 0);
    if (std::any_of(chains.begin(), chains.end(), [](const auto& c) { return c.empty(); }))
        return acc;
    while (true) {
        long long N = 0;
        for (int u = 0; u <= r; ++u) N += static_cast<long long>(chains[u][pick[u]].size()) - 1;
        // sgn = (r+N)<iota, i_{a_0}> + binom(N+1,2) + sum (r-u) n_u + sum_{1<=u<=u'} k_u n_{u'}
        const std::vector<int>& c0 = chains[0][pick[0]];
        long long sgn = (r + N) * g.pair(g.iota, Xu[0]->ent[c0.front()].shift);
        sgn += (N + 1) * N / 2;
        for (int u = 0; u <= r; ++u)
            sgn += static_cast<long long>(r - u) * (chains[u][pick[u]].size() - 1);
        for (int u = 1; u <= r; ++u)
            for (int up = u; up <= r; ++up)
                sgn += static_cast<long long>(k[u]) * (chains[up][pick[up]].size() - 1);
        // inner word [id, h_1, ..., h_s, id]
        std::vector<Morphism> inner;
        int a_first = c0.front();
        inner.push_back(V.eta_morphism(C.identity(Xu[0]->ent[a_first].obj)));
        for (int u = 0; u <= r; ++u) {
            const std::vector<int>& ch = chains[u][pick[u]];
            if (u >= 1) {
                // h at the block boundary: bare component of f_u at (prev_last, ch.front())
                Morphism comp = V.bare_component(f[u], fixed_last[u - 1], ch.front());
                inner.push_back(V.eta_morphism(comp));
            }
            for (size_t v = 1; v < ch.size(); ++v)
                inner.push_back(V.eta_morphism(Xu[u]->twist_at(C, ch[v - 1], ch[v])));
        }
        int a_last = chains[r][pick[r]].back();
        inner.push_back(V.eta_morphism(C.identity(Xu[r]->ent[a_last].obj)));

        BimElt e0 = word_class(tgt, inner);
        BimElt e1 = tgt.bim.act_right(e0, V.pi(w.xobj[r], a_last));
        BimElt e2 = tgt.bim.act_left(V.sigma(w.xobj[0], a_first), e1);
        acc = Bimodule::add(acc, Bimodule::scale(e2, sign_scalar(D.ring, static_cast<int>(sgn % 2))));

        int u = 0;
        while (u <= r) {
            if (++pick[u] < chains[u].size()) break;
            pick[u] = 0;
            ++u;
        }
        if (u > r) break;
    }
    // equivariant reduction: f_0 . ( ... ) . f_{r+1} with the relation sign
    BimElt e3 = tgt.bim.act_left(f[0], tgt.bim.act_right(acc, f[r + 1]));
    return Bimodule::scale(e3, sign_scalar(D.ring, r * k[0]));
}

inline BimoduleMap xi_pretr(const EnvelopeView& V, const BarComplex& src, const BarComplex& tgt) {
    return assemble_bar_map(src, tgt.bim,
                            [&](const BarWord& w) { return xi_pretr_word(V, tgt, w); });
}

// The isomorphism D (x)_C Bar(C) (x)_C D -> Bar(D, Obj C) sending
// g (x) [w] (x) g' to g . [w] . g'.
struct RelativeBarIso {
    Bimodule Nl, Nr;                 // 1_D restricted on one side to C
    std::shared_ptr<TensorOver> NB;  // Nl (x)_C Bar(C)
    std::shared_ptr<TensorOver> T;   // (Nl (x)_C Bar(C)) (x)_C Nr
    BimoduleMap iso;                 // T -> relative bar
};

inline std::shared_ptr<RelativeBarIso> relative_bar_iso(const EnvelopeView& V,
                                                        const BarComplex& barC,
                                                        const BarComplex& rel,
                                                        const Bimodule& unitD,
                                                        const DgFunctor& eta) {
    auto R = std::make_shared<RelativeBarIso>();
    R->Nl = restrict_bimodule(unitD, nullptr, &eta);
    R->Nr = restrict_bimodule(unitD, &eta, nullptr);
    R->NB = tensor_over(R->Nl, barC.bim);
    R->T = tensor_over(R->NB->bim, R->Nr);
    const DgCat& D = V.cat();
    const DgCat& C = V.base();
    BimoduleMap& iso = R->iso;
    iso.src = &R->T->bim;
    iso.tgt = &rel.bim;
    iso.deg = Degree::zero(D.grading.rank);
    iso.init_shapes();
    for (int Y = 0; Y < D.nobj(); ++Y)
        for (int Yp = 0; Yp < D.nobj(); ++Yp) {
            const auto& Q2 = R->T->q[Y][Yp];
            for (size_t col = 0; col < Q2.basis.size(); ++col) {
                SVec lift2 = Q2.lift.apply(svec_unit(static_cast<int>(col), Scalar(D.ring, 1)));
                BimElt out = rel.bim.zero(Y, Yp, R->T->bim.comp[Y][Yp].deg[col]);
                for (const auto& [bigi2, s2] : lift2) {
                    auto [y2, mi, gpi] = R->T->big[Y][Yp][bigi2];
                    // mi indexes NB.bim.comp[Y][y2]; lift again
                    SVec lift1 = R->NB->q[Y][y2].lift.apply(svec_unit(mi, Scalar(D.ring, 1)));
                    Morphism gp = D.basis_morphism(Yp, eta.ob[y2], gpi); // in <y2|D|Yp>
                    for (const auto& [bigi1, s1] : lift1) {
                        auto [y1, gi, wi] = R->NB->big[Y][y2][bigi1];
                        Morphism gl = D.basis_morphism(eta.ob[y1], Y, gi);
                        // the C-word as a relative word between eta objects
                        const BarWord& w = barC.words[y1][y2][wi];
                        std::vector<Morphism> inner;
                        for (int u = 0; u <= w.r + 1; ++u) {
                            auto [src, dst] = barC.entry_pair(w, u);
                            inner.push_back(eta.apply(C.basis_morphism(src, dst, w.entry[u])));
                        }
                        BimElt e0 = word_class(rel, inner);
                        BimElt e1 = rel.bim.act_left(gl, rel.bim.act_right(e0, gp));
                        out.v = svec_add(out.v, svec_scale(e1.v, s1 * s2));
                    }
                }
                for (const auto& [k, s] : out.v)
                    iso.comp[Y][Yp].add_at(k, static_cast<int>(col), s);
            }
        }
    return R;
}

} // namespace dgc
