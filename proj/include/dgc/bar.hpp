// Truncated (relative) bar complexes. Words [f_0, ..., f_{r+1}] over chosen
// interior objects, with the bar differential, the sign-twisted bimodule
// action, the counit, and the primed sign convention.

#pragma once

#include "dgc/bimodule.hpp"
#include "dgc/koszul.hpp"

namespace dgc {

struct BarWord {
    int r = 0;
    int Y = -1, Yp = -1;      // boundary objects
    std::vector<int> xobj;    // interior objects X_0..X_r
    std::vector<int> entry;   // basis indices of f_0..f_{r+1}
    Degree deg;
};

class BarComplex {
  public:
    const DgCat* D = nullptr;
    std::vector<int> interior;
    int R = 0;
    Bimodule bim;
    std::vector<std::vector<std::vector<BarWord>>> words; // [Y][Yp], aligned with bim bases

    const BarWord& word(int Y, int Yp, int i) const { return words[Y][Yp][i]; }
    int word_index(int Y, int Yp, const std::vector<int>& xo, const std::vector<int>& en) const {
        auto it = index_[Y][Yp].find(std::make_pair(xo, en));
        if (it == index_[Y][Yp].end()) return -1;
        return it->second;
    }

    // k_u = <iota, |f_u|> for u = 0..r+1
    std::vector<int> ks(const BarWord& w) const {
        std::vector<int> k;
        const GradingSpec& g = D->grading;
        for (int u = 0; u <= w.r + 1; ++u) k.push_back(g.pair(g.iota, entry_degree(w, u)));
        return k;
    }
    Degree entry_degree(const BarWord& w, int u) const {
        auto [src, dst] = entry_pair(w, u);
        return D->hom[src][dst].deg[w.entry[u]];
    }
    // hom pair (src, dst) of entry u
    std::pair<int, int> entry_pair(const BarWord& w, int u) const {
        int src = (u <= w.r) ? w.xobj[u] : w.Yp;
        int dst = (u == 0) ? w.Y : w.xobj[u - 1];
        return {src, dst};
    }
    Morphism entry_morphism(const BarWord& w, int u) const {
        auto [src, dst] = entry_pair(w, u);
        return D->basis_morphism(src, dst, w.entry[u]);
    }

    // sigma(k_0..k_r) of the primed convention for this word
    int sigma_of(const BarWord& w) const { return sigma_exponent(ks(w)); }

    std::string describe(const BarWord& w) const {
        std::string s = "[";
        for (int u = 0; u <= w.r + 1; ++u) {
            if (u) s += "|";
            auto [src, dst] = entry_pair(w, u);
            s += D->hom[src][dst].label[w.entry[u]];
        }
        return s + "]";
    }

    friend std::shared_ptr<BarComplex> bar_relative(const DgCat& D, std::vector<int> interior, int R);

  private:
    std::vector<std::vector<std::map<std::pair<std::vector<int>, std::vector<int>>, int>>> index_;
    std::weak_ptr<BarComplex> self_;
};

// The element of the bar complex given by a word whose entries are arbitrary
// morphisms (multilinear expansion over the basis words).
inline BimElt word_class(const BarComplex& B, const std::vector<Morphism>& entries) {
    int r = static_cast<int>(entries.size()) - 2;
    if (r < 0) throw error("word_class: need at least two entries");
    const DgCat& D = *B.D;
    int Y = entries[0].dst, Yp = entries[r + 1].src;
    Degree deg = Degree::zero(D.grading.rank);
    for (const auto& e : entries) deg = deg + e.deg;
    deg = deg - r * D.grading.iota;
    BimElt out = B.bim.zero(Y, Yp, deg);
    // chain consistency
    for (int u = 0; u <= r; ++u)
        if (entries[u].src != entries[u + 1].dst) throw error("word_class: non-composable chain");
    std::vector<int> xo;
    for (int u = 0; u <= r; ++u) xo.push_back(entries[u].src);
    // iterate over the product of supports
    std::vector<int> pos(entries.size(), 0);
    for (const auto& e : entries)
        if (e.v.empty()) return out;
    while (true) {
        Scalar c(D.ring, 1);
        std::vector<int> en;
        for (size_t u = 0; u < entries.size(); ++u) {
            c = c * entries[u].v[pos[u]].second;
            en.push_back(entries[u].v[pos[u]].first);
        }
        int wi = B.word_index(Y, Yp, xo, en);
        if (wi < 0) throw error("word_class: word outside the truncated basis");
        out.v = svec_add(out.v, svec_unit(wi, c));
        // advance
        size_t u = 0;
        while (u < entries.size()) {
            if (static_cast<size_t>(++pos[u]) < entries[u].v.size()) break;
            pos[u] = 0;
            ++u;
        }
        if (u == entries.size()) break;
    }
    return out;
}

inline std::shared_ptr<BarComplex> bar_relative(const DgCat& D, std::vector<int> interior, int R) {
    auto B = std::make_shared<BarComplex>();
    B->self_ = B;
    B->D = &D;
    B->interior = std::move(interior);
    B->R = R;
    int n = D.nobj();
    B->words.assign(n, std::vector<std::vector<BarWord>>(n));
    B->index_.assign(n, std::vector<std::map<std::pair<std::vector<int>, std::vector<int>>, int>>(n));
    Bimodule& M = B->bim;
    M.L = M.R = &D;
    M.init_shapes();

    // enumerate words
    for (int Y = 0; Y < n; ++Y)
        for (int Yp = 0; Yp < n; ++Yp) {
            auto& list = B->words[Y][Yp];
            auto& idx = B->index_[Y][Yp];
            GradedModule& comp = M.comp[Y][Yp];
            for (int r = 0; r <= R; ++r) {
                // choose interior objects X_0..X_r and entries
                std::vector<int> xo(r + 1);
                std::function<void(int)> rec_obj = [&](int u) {
                    if (u > r) {
                        // entries: f_0 in hom(X_0,Y), f_u in hom(X_u, X_{u-1}), f_{r+1} in hom(Yp, X_r)
                        std::vector<int> en(r + 2);
                        std::function<void(int)> rec_ent = [&](int v) {
                            if (v > r + 1) {
                                BarWord w;
                                w.r = r;
                                w.Y = Y;
                                w.Yp = Yp;
                                w.xobj = xo;
                                w.entry = en;
                                Degree deg = Degree::zero(D.grading.rank);
                                for (int u2 = 0; u2 <= r + 1; ++u2) deg = deg + B->entry_degree(w, u2);
                                w.deg = deg - r * D.grading.iota;
                                idx[{xo, en}] = static_cast<int>(list.size());
                                comp.add("w" + std::to_string(list.size()) + ":" + B->describe(w),
                                         w.deg);
                                list.push_back(std::move(w));
                                return;
                            }
                            int src = (v <= r) ? xo[v] : Yp;
                            int dst = (v == 0) ? Y : xo[v - 1];
                            for (int bi = 0; bi < D.hom[src][dst].dim(); ++bi) {
                                en[v] = bi;
                                rec_ent(v + 1);
                            }
                        };
                        rec_ent(0);
                        return;
                    }
                    for (int x : B->interior) {
                        xo[u] = x;
                        rec_obj(u + 1);
                    }
                };
                rec_obj(0);
            }
        }

    // differential
    for (int Y = 0; Y < n; ++Y)
        for (int Yp = 0; Yp < n; ++Yp) {
            const auto& list = B->words[Y][Yp];
            SMat Dm(static_cast<int>(list.size()), static_cast<int>(list.size()), D.ring);
            for (size_t col = 0; col < list.size(); ++col) {
                const BarWord& w = list[col];
                std::vector<int> k = B->ks(w);
                // internal terms: (-1)^{r + k_0 + ... + k_{u-1}} [.., d(f_u), ..]
                int pre = w.r;
                for (int u = 0; u <= w.r + 1; ++u) {
                    Morphism df = D.differential(B->entry_morphism(w, u));
                    if (!df.is_zero()) {
                        for (const auto& [bi, s] : df.v) {
                            std::vector<int> en = w.entry;
                            en[u] = bi;
                            int wi = B->word_index(Y, Yp, w.xobj, en);
                            if (wi < 0) throw error("bar: differential image missing");
                            Dm.add_at(wi, static_cast<int>(col), s * sign_scalar(D.ring, pre));
                        }
                    }
                    pre += k[u];
                }
                // bar terms: (-1)^u [.., f_u o f_{u+1}, ..] (only for r >= 1)
                if (w.r >= 1)
                    for (int u = 0; u <= w.r; ++u) {
                        Morphism c = D.compose(B->entry_morphism(w, u), B->entry_morphism(w, u + 1));
                        if (c.is_zero()) continue;
                        std::vector<int> xo = w.xobj;
                        xo.erase(xo.begin() + u);
                        for (const auto& [bi, s] : c.v) {
                            std::vector<int> en = w.entry;
                            en.erase(en.begin() + u);
                            en[u] = bi;
                            int wi = B->word_index(Y, Yp, xo, en);
                            if (wi < 0) throw error("bar: bar-term image missing");
                            Dm.add_at(wi, static_cast<int>(col), s * sign_scalar(D.ring, u));
                        }
                    }
            }
            M.diff[Y][Yp] = std::move(Dm);
        }
    M.finalize_shapes();

    std::weak_ptr<BarComplex> wp = B;
    // left action: g . [f_0,...] = (-1)^{r <iota,|g|>} [g f_0, ...]
    M.actL = [wp](int Y2, int Y, int Yp, int gi, int wi) {
        auto Bp = wp.lock();
        const DgCat& D = *Bp->D;
        const BarWord& w = Bp->words[Y][Yp][wi];
        Morphism g = D.basis_morphism(Y, Y2, gi);
        Morphism f0 = D.compose(g, Bp->entry_morphism(w, 0));
        SVec out;
        Scalar sg = sign_scalar(D.ring, w.r * D.grading.pair(D.grading.iota, g.deg));
        for (const auto& [bi, s] : f0.v) {
            std::vector<int> en = w.entry;
            en[0] = bi;
            int ni = Bp->word_index(Y2, Yp, w.xobj, en);
            if (ni < 0) throw error("bar: action image missing");
            out = svec_add(out, svec_unit(ni, s * sg));
        }
        return out;
    };
    // right action: [..., f_{r+1}] . g' = [..., f_{r+1} g'], no sign
    M.actR = [wp](int Y, int Yp, int Y2p, int wi, int gi) {
        auto Bp = wp.lock();
        const DgCat& D = *Bp->D;
        const BarWord& w = Bp->words[Y][Yp][wi];
        Morphism g = D.basis_morphism(Y2p, Yp, gi);
        Morphism fr = D.compose(Bp->entry_morphism(w, w.r + 1), g);
        SVec out;
        for (const auto& [bi, s] : fr.v) {
            std::vector<int> en = w.entry;
            en[w.r + 1] = bi;
            int ni = Bp->word_index(Y, Y2p, w.xobj, en);
            if (ni < 0) throw error("bar: action image missing");
            out = svec_add(out, svec_unit(ni, s));
        }
        return out;
    };
    return B;
}

inline std::shared_ptr<BarComplex> bar_truncated(const DgCat& D, int R) {
    std::vector<int> all;
    for (int i = 0; i < D.nobj(); ++i) all.push_back(i);
    return bar_relative(D, std::move(all), R);
}

// counit: [f_0, f_1] -> f_0 o f_1, zero on longer words.
inline BimoduleMap bar_counit(const BarComplex& B, const Bimodule& unit_bim) {
    BimoduleMap eps;
    eps.src = &B.bim;
    eps.tgt = &unit_bim;
    eps.deg = Degree::zero(B.D->grading.rank);
    eps.init_shapes();
    const DgCat& D = *B.D;
    for (int Y = 0; Y < D.nobj(); ++Y)
        for (int Yp = 0; Yp < D.nobj(); ++Yp)
            for (size_t i = 0; i < B.words[Y][Yp].size(); ++i) {
                const BarWord& w = B.words[Y][Yp][i];
                if (w.r != 0) continue;
                Morphism c = D.compose(B.entry_morphism(w, 0), B.entry_morphism(w, 1));
                for (const auto& [bi, s] : c.v) eps.comp[Y][Yp].add_at(bi, static_cast<int>(i), s);
            }
    return eps;
}

// primed convention: [.]' = (-1)^{sigma(k_0..k_r)} [.], a diagonal isomorphism.
inline BimoduleMap primed_iso(const BarComplex& B) {
    BimoduleMap P;
    P.src = P.tgt = &B.bim;
    P.deg = Degree::zero(B.D->grading.rank);
    P.init_shapes();
    for (int Y = 0; Y < B.D->nobj(); ++Y)
        for (int Yp = 0; Yp < B.D->nobj(); ++Yp)
            for (size_t i = 0; i < B.words[Y][Yp].size(); ++i)
                P.comp[Y][Yp].add_at(static_cast<int>(i), static_cast<int>(i),
                                     sign_scalar(B.D->ring, B.sigma_of(B.words[Y][Yp][i])));
    return P;
}

// Counit compatibility eps_tgt o Phi = eps_src, as exact matrix equality.
inline bool check_counit_compat(const BimoduleMap& Phi, const BimoduleMap& eps_src,
                                const BimoduleMap& eps_tgt) {
    BimoduleMap lhs = map_compose(eps_tgt, Phi);
    for (size_t x = 0; x < lhs.comp.size(); ++x)
        for (size_t y = 0; y < lhs.comp[x].size(); ++y)
            if (!(lhs.comp[x][y] == eps_src.comp[x][y])) return false;
    return true;
}

} // namespace dgc
