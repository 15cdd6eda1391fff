// Envelope constructions. A single derived-category engine handles all five
// kinds: every envelope object is a formal twisted complex
//   tw_alpha( (+)_a q^{i_a} X_a ),
// and SB / Add / Tw / pretr are the evident restrictions on entries, shifts,
// twists, and one-sidedness. Hom modules, differentials, and composition are
// derived from the base category and memoized per object pair.

#pragma once

#include <mutex>
#include <optional>
#include <set>

#include "dgc/functor.hpp"

namespace dgc {

enum class EnvKind { SB, Add, Tw, Twix, Pretr };

inline const char* kind_name(EnvKind k) {
    switch (k) {
        case EnvKind::SB: return "SB";
        case EnvKind::Add: return "Add";
        case EnvKind::Tw: return "Tw";
        case EnvKind::Twix: return "Twix";
        case EnvKind::Pretr: return "pretr";
    }
    return "?";
}

struct TwixEntry {
    std::string name;
    Degree shift;
    int obj = -1;
};

struct TwixObject {
    std::string name;
    std::vector<TwixEntry> ent;
    // twist[(a,b)]: base morphism X_b -> X_a of degree iota - i_a + i_b
    std::map<std::pair<int, int>, Morphism> twist;
    std::optional<std::vector<int>> order; // positions: a > b iff order[a] > order[b]

    int size() const { return static_cast<int>(ent.size()); }
    Morphism twist_at(const DgCat& base, int a, int b) const {
        auto it = twist.find({a, b});
        if (it != twist.end()) return it->second;
        Degree d = base.grading.iota - ent[a].shift + ent[b].shift;
        return base.zero_morphism(ent[b].obj, ent[a].obj, d);
    }
};

// eta(X): the singleton zero-shift zero-twist complex.
inline TwixObject eta_object(const DgCat& base, int x) {
    TwixObject t;
    t.name = base.obj[x];
    t.ent.push_back({"0", Degree::zero(base.grading.rank), x});
    return t;
}

inline TwixObject sb_object(const DgCat& base, int x, const Degree& shift) {
    TwixObject t;
    t.name = "q" + shift.str() + base.obj[x];
    t.ent.push_back({"0", shift, x});
    return t;
}

inline TwixObject add_object(const DgCat& base, const std::vector<int>& xs, const std::string& name = "") {
    TwixObject t;
    t.name = name;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (!t.name.empty() && name.empty()) t.name += "+";
        if (name.empty()) t.name += base.obj[xs[i]];
        t.ent.push_back({"s" + std::to_string(i), Degree::zero(base.grading.rank), xs[i]});
    }
    return t;
}

inline TwixObject tw_object(const DgCat& base, int x, const Morphism& alpha, const std::string& name = "") {
    TwixObject t;
    t.name = name.empty() ? "tw(" + base.obj[x] + ")" : name;
    t.ent.push_back({"0", Degree::zero(base.grading.rank), x});
    if (!alpha.is_zero()) t.twist[{0, 0}] = alpha;
    return t;
}

// Matrix Maurer-Cartan: (-1)^{<iota,i_a>} d(alpha_{a,b}) + sum_c alpha_{a,c} o alpha_{c,b} = 0.
// Returns the first failing (a,b) with the residual morphism as witness.
inline std::optional<std::pair<std::pair<int, int>, Morphism>> check_matrix_mc(const DgCat& base,
                                                                               const TwixObject& t) {
    for (int a = 0; a < t.size(); ++a)
        for (int b = 0; b < t.size(); ++b) {
            Degree d = base.grading.iota + base.grading.iota - t.ent[a].shift + t.ent[b].shift;
            Morphism res = base.zero_morphism(t.ent[b].obj, t.ent[a].obj, d);
            auto it = t.twist.find({a, b});
            if (it != t.twist.end()) {
                int sg = base.grading.pair(base.grading.iota, t.ent[a].shift);
                res = DgCat::add(res, DgCat::scale(base.differential(it->second), sign_scalar(base.ring, sg)));
            }
            for (int c = 0; c < t.size(); ++c) {
                auto ac = t.twist.find({a, c});
                auto cb = t.twist.find({c, b});
                if (ac != t.twist.end() && cb != t.twist.end())
                    res = DgCat::add(res, base.compose(ac->second, cb->second));
            }
            if (!res.is_zero()) return std::make_pair(std::make_pair(a, b), res);
        }
    return std::nullopt;
}

// Topological order making the twist strictly lower triangular (alpha_{a,b} = 0
// unless a > b). Ties broken lexicographically on entry names.
inline std::optional<std::vector<int>> is_one_sided(const TwixObject& t) {
    int n = t.size();
    for (const auto& [ab, m] : t.twist)
        if (ab.first == ab.second && !m.is_zero()) return std::nullopt;
    std::vector<int> pos(n, -1);
    std::set<int> remaining;
    for (int i = 0; i < n; ++i) remaining.insert(i);
    int next = 0;
    while (!remaining.empty()) {
        // candidates: no nonzero twist out of a into a remaining entry (nothing below)
        std::vector<int> cands;
        for (int a : remaining) {
            bool ok = true;
            for (int b : remaining)
                if (b != a) {
                    auto it = t.twist.find({a, b});
                    if (it != t.twist.end() && !it->second.is_zero()) { ok = false; break; }
                }
            if (ok) cands.push_back(a);
        }
        if (cands.empty()) return std::nullopt;
        int pick = cands[0];
        for (int c : cands)
            if (t.ent[c].name < t.ent[pick].name) pick = c;
        pos[pick] = next++;
        remaining.erase(pick);
    }
    return pos;
}

// Degree argument for non-positive gradings: with a declared Gamma^-,
// iota > 0, and all base morphisms in degrees <= 0, every valid twist entry
// forces i_a >= i_b + iota, so the shift functional orders any Twix object.
enum class OneSidedCert { Certified, Inapplicable };
inline OneSidedCert nonpositive_implies_onesided(const DgCat& base, const TwixObject& t,
                                                 std::optional<std::vector<int>>* order_out = nullptr) {
    const GradingSpec& g = base.grading;
    if (!g.neg_functional) return OneSidedCert::Inapplicable;
    if (g.functional(g.iota) <= 0) return OneSidedCert::Inapplicable;
    for (int x = 0; x < base.nobj(); ++x)
        for (int y = 0; y < base.nobj(); ++y)
            for (const Degree& d : base.hom[x][y].deg)
                if (!g.nonpositive(d)) return OneSidedCert::Inapplicable;
    if (order_out) {
        std::vector<int> idx(t.size());
        for (int i = 0; i < t.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](int a, int b) {
            long long fa = g.functional(t.ent[a].shift), fb = g.functional(t.ent[b].shift);
            if (fa != fb) return fa < fb;
            return t.ent[a].name < t.ent[b].name;
        });
        std::vector<int> pos(t.size());
        for (int i = 0; i < t.size(); ++i) pos[idx[i]] = i;
        *order_out = pos;
    }
    return OneSidedCert::Certified;
}

// Derived basis bookkeeping: view basis element = (target entry, source entry,
// base hom basis index), derived degree = base degree + i_a - j_b.
struct ViewBasisInfo {
    int a, b, bi;
};

class EnvelopeView {
  public:
    EnvelopeView(const DgCat& base, EnvKind kind) : base_(&base), kind_(kind) {
        for (int x = 0; x < base.nobj(); ++x) objs_.push_back(eta_object(base, x));
    }

    const DgCat& base() const { return *base_; }
    EnvKind kind() const { return kind_; }
    int nobj() const { return static_cast<int>(objs_.size()); }
    const TwixObject& object(int i) const { return objs_[i]; }
    int base_objects() const { return base_->nobj(); }

    int add_object(TwixObject t) {
        validate(t);
        if (cat_built_) throw error("EnvelopeView: add_object after materialization");
        objs_.push_back(std::move(t));
        return nobj() - 1;
    }

    // Fully materialized presentation of the instantiated view.
    const DgCat& cat() const {
        std::lock_guard<std::mutex> lock(mu_);
        if (!cat_built_) build();
        return cat_;
    }
    const std::vector<ViewBasisInfo>& basis_info(int x, int y) const {
        cat();
        return info_[x][y];
    }
    int view_basis_index(int x, int y, int a, int b, int bi) const {
        cat();
        auto it = rindex_[x][y].find(std::make_tuple(a, b, bi));
        if (it == rindex_[x][y].end()) throw error("EnvelopeView: basis lookup failed");
        return it->second;
    }

    // Express a matrix of base morphisms as a morphism of the view.
    Morphism assemble(int x, int y, const Degree& deg,
                      const std::vector<std::pair<std::pair<int, int>, Morphism>>& bare) const {
        cat();
        Morphism r = cat_.zero_morphism(x, y, deg);
        for (const auto& [ab, m] : bare)
            for (const auto& [bi, s] : m.v)
                r.v = svec_add(r.v, svec_unit(view_basis_index(x, y, ab.first, ab.second, bi), s));
        return r;
    }
    // Bare (a,b)-component of a view morphism.
    Morphism bare_component(const Morphism& f, int a, int b) const {
        cat();
        const TwixObject& S = objs_[f.src];
        const TwixObject& T = objs_[f.dst];
        Morphism r = base_->zero_morphism(S.ent[b].obj, T.ent[a].obj,
                                          f.deg - T.ent[a].shift + S.ent[b].shift);
        for (const auto& [i, s] : f.v) {
            const ViewBasisInfo& bi = info_[f.src][f.dst][i];
            if (bi.a == a && bi.b == b) r.v = svec_add(r.v, svec_unit(bi.bi, s));
        }
        return r;
    }

    // Structural inclusion / projection of the a-th entry, through eta objects.
    // sigma_a: eta(X_a) -> T of degree i_a; pi_a: T -> eta(X_a) of degree -i_a.
    Morphism sigma(int t, int a) const {
        const TwixObject& T = objs_[t];
        int e = T.ent[a].obj; // eta objects sit at view indices 0..base objects-1
        Morphism id = base_->identity(e);
        return assemble(e, t, T.ent[a].shift, {{{a, 0}, id}});
    }
    Morphism pi(int t, int a) const {
        const TwixObject& T = objs_[t];
        int e = T.ent[a].obj;
        Morphism id = base_->identity(e);
        return assemble(t, e, -T.ent[a].shift, {{{0, a}, id}});
    }
    // psi_{X,alpha} = id^alpha_0: eta(X) -> tw_alpha(X) for single-entry objects.
    Morphism psi(int t) const {
        const TwixObject& T = objs_[t];
        if (T.size() != 1) throw error("psi: single-entry objects only");
        return sigma(t, 0);
    }
    Morphism psi_inverse(int t) const {
        const TwixObject& T = objs_[t];
        if (T.size() != 1) throw error("psi: single-entry objects only");
        return pi(t, 0);
    }

    // Morphism of eta objects from a base morphism.
    Morphism eta_morphism(const Morphism& f) const {
        return assemble(f.src, f.dst, f.deg, {{{0, 0}, f}});
    }

  private:
    const DgCat* base_;
    EnvKind kind_;
    std::vector<TwixObject> objs_;
    mutable std::mutex mu_;
    mutable bool cat_built_ = false;
    mutable DgCat cat_;
    mutable std::vector<std::vector<std::vector<ViewBasisInfo>>> info_;
    mutable std::vector<std::vector<std::map<std::tuple<int, int, int>, int>>> rindex_;

    void validate(TwixObject& t) const {
        const GradingSpec& g = base_->grading;
        for (const auto& [ab, m] : t.twist) {
            const auto& [a, b] = ab;
            if (a < 0 || a >= t.size() || b < 0 || b >= t.size())
                throw error("TwixObject: twist index out of range");
            if (m.src != t.ent[b].obj || m.dst != t.ent[a].obj)
                throw error("TwixObject '" + t.name + "': twist (" + std::to_string(a) + "," +
                            std::to_string(b) + ") endpoint mismatch");
            Degree want = g.iota - t.ent[a].shift + t.ent[b].shift;
            if (m.deg != want)
                throw error("TwixObject '" + t.name + "': twist degree must be iota - i_a + i_b");
        }
        switch (kind_) {
            case EnvKind::SB:
                if (t.size() != 1 || !t.twist.empty()) throw error("SB objects are single shifted entries");
                break;
            case EnvKind::Add:
                for (const auto& e : t.ent)
                    if (!e.shift.is_zero()) throw error("Add objects carry no shifts");
                if (!t.twist.empty()) throw error("Add objects carry no twist");
                break;
            case EnvKind::Tw:
                if (t.size() != 1) throw error("Tw objects are single entries");
                if (!t.ent[0].shift.is_zero()) throw error("Tw objects carry no shift");
                break;
            case EnvKind::Twix:
                break;
            case EnvKind::Pretr: {
                auto ord = is_one_sided(t);
                if (!ord) throw error("pretr object '" + t.name + "' rejected: not one-sided");
                t.order = *ord;
                break;
            }
        }
        if (kind_ == EnvKind::Tw || kind_ == EnvKind::Twix || kind_ == EnvKind::Pretr) {
            auto bad = check_matrix_mc(*base_, t);
            if (bad)
                throw error("object '" + t.name + "' rejected: Maurer-Cartan fails at (" +
                            std::to_string(bad->first.first) + "," + std::to_string(bad->first.second) +
                            "), residual " + base_->describe(bad->second));
        }
    }

    void build() const {
        DgCat C;
        C.ring = base_->ring;
        C.grading = base_->grading;
        int n = nobj();
        for (int i = 0; i < n; ++i) {
            std::string nm = objs_[i].name;
            if (C.obj_index.count(nm)) nm += "#" + std::to_string(i);
            C.add_object(nm);
        }
        C.init_tables();
        info_.assign(n, std::vector<std::vector<ViewBasisInfo>>(n));
        rindex_.assign(n, std::vector<std::map<std::tuple<int, int, int>, int>>(n));

        // hom modules
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                const TwixObject& S = objs_[x];
                const TwixObject& T = objs_[y];
                GradedModule& M = C.hom[x][y];
                for (int a = 0; a < T.size(); ++a)
                    for (int b = 0; b < S.size(); ++b) {
                        const GradedModule& H = base_->hom[S.ent[b].obj][T.ent[a].obj];
                        for (int bi = 0; bi < H.dim(); ++bi) {
                            std::string lab = H.label[bi];
                            if (T.size() > 1 || S.size() > 1)
                                lab += "[" + T.ent[a].name + "," + S.ent[b].name + "]";
                            Degree d = H.deg[bi] + T.ent[a].shift - S.ent[b].shift;
                            int idx = M.add(lab, d);
                            info_[x][y].push_back({a, b, bi});
                            rindex_[x][y][std::make_tuple(a, b, bi)] = idx;
                        }
                    }
            }
        // differentials
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                const TwixObject& S = objs_[x];
                const TwixObject& T = objs_[y];
                GradedModule& M = C.hom[x][y];
                SMat D(M.dim(), M.dim(), C.ring);
                for (int col = 0; col < M.dim(); ++col) {
                    const ViewBasisInfo& e = info_[x][y][col];
                    Degree k = M.deg[col];
                    Morphism m = base_->basis_morphism(S.ent[e.b].obj, T.ent[e.a].obj, e.bi);
                    // (-1)^{<iota, i_a>} d_C(m) at (a,b)
                    {
                        int sg = C.grading.pair(C.grading.iota, T.ent[e.a].shift);
                        Morphism dm = DgCat::scale(base_->differential(m), sign_scalar(C.ring, sg));
                        for (const auto& [bi, s] : dm.v)
                            D.add_at(rindex_[x][y].at(std::make_tuple(e.a, e.b, bi)), col, s);
                    }
                    // + alpha_{a', a} o m at (a', b), alpha = twist of target
                    for (const auto& [ab, al] : T.twist) {
                        if (ab.second != e.a) continue;
                        Morphism c = base_->compose(al, m);
                        for (const auto& [bi, s] : c.v)
                            D.add_at(rindex_[x][y].at(std::make_tuple(ab.first, e.b, bi)), col, s);
                    }
                    // - (-1)^{<iota,k>} m o beta_{b, b'} at (a, b'), beta = twist of source
                    for (const auto& [ab, be] : S.twist) {
                        if (ab.first != e.b) continue;
                        int sg = 1 + C.grading.pair(C.grading.iota, k);
                        Morphism c = DgCat::scale(base_->compose(m, be), sign_scalar(C.ring, sg));
                        for (const auto& [bi, s] : c.v)
                            D.add_at(rindex_[x][y].at(std::make_tuple(e.a, ab.second, bi)), col, s);
                    }
                }
                C.diff[x][y] = std::move(D);
            }
        C.finalize_shapes();
        // composition: plain matrix product of bare components
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z) {
                    auto& table = C.comp[x][y][z];
                    for (int gi = 0; gi < C.hom[y][z].dim(); ++gi) {
                        const ViewBasisInfo& ge = info_[y][z][gi];
                        for (int fi = 0; fi < C.hom[x][y].dim(); ++fi) {
                            const ViewBasisInfo& fe = info_[x][y][fi];
                            if (fe.a != ge.b) continue;
                            Morphism g = base_->basis_morphism(objs_[y].ent[ge.b].obj,
                                                               objs_[z].ent[ge.a].obj, ge.bi);
                            Morphism f = base_->basis_morphism(objs_[x].ent[fe.b].obj,
                                                               objs_[y].ent[fe.a].obj, fe.bi);
                            Morphism c = base_->compose(g, f);
                            SVec out;
                            for (const auto& [bi, s] : c.v)
                                out = svec_add(out,
                                               svec_unit(rindex_[x][z].at(std::make_tuple(ge.a, fe.b, bi)), s));
                            table[gi][fi] = std::move(out);
                        }
                    }
                }
        // units
        for (int x = 0; x < n; ++x) {
            SVec u;
            for (int a = 0; a < objs_[x].size(); ++a) {
                int ob = objs_[x].ent[a].obj;
                for (const auto& [bi, s] : base_->unit[ob])
                    u = svec_add(u, svec_unit(rindex_[x][x].at(std::make_tuple(a, a, bi)), s));
            }
            C.unit[x] = std::move(u);
        }
        cat_ = std::move(C);
        cat_built_ = true;
    }
};

// Extension of X by Y along a closed degree-iota morphism.
inline TwixObject extension(const DgCat& base, const Morphism& xi, const std::string& name = "") {
    if (xi.deg != base.grading.iota) throw error("extension: connecting map must have degree iota");
    if (!base.is_closed(xi)) throw error("extension: connecting map must be closed");
    TwixObject t;
    t.name = name.empty() ? "ext(" + base.obj[xi.src] + "," + base.obj[xi.dst] + ")" : name;
    Degree z = Degree::zero(base.grading.rank);
    t.ent.push_back({"x", z, xi.src});
    t.ent.push_back({"y", z, xi.dst});
    if (!xi.is_zero()) t.twist[{1, 0}] = xi;
    t.order = std::vector<int>{0, 1};
    return t;
}

// Cone(f) = tw( q^{-iota} X (+) Y ) with connecting bare component f.
inline TwixObject cone(const DgCat& base, const Morphism& f, const std::string& name = "") {
    if (!f.deg.is_zero()) throw error("cone: morphism must have degree zero");
    if (!base.is_closed(f)) throw error("cone: morphism must be closed");
    TwixObject t;
    t.name = name.empty() ? "Cone(" + base.obj[f.src] + "->" + base.obj[f.dst] + ")" : name;
    t.ent.push_back({"x", -base.grading.iota, f.src});
    t.ent.push_back({"y", Degree::zero(base.grading.rank), f.dst});
    if (!f.is_zero()) t.twist[{1, 0}] = f;
    t.order = std::vector<int>{0, 1};
    return t;
}

// Cocone(f) = tw( X (+) q^{iota} Y ).
inline TwixObject cocone(const DgCat& base, const Morphism& f, const std::string& name = "") {
    if (!f.deg.is_zero()) throw error("cocone: morphism must have degree zero");
    if (!base.is_closed(f)) throw error("cocone: morphism must be closed");
    TwixObject t;
    t.name = name.empty() ? "Cocone(" + base.obj[f.src] + "->" + base.obj[f.dst] + ")" : name;
    t.ent.push_back({"x", Degree::zero(base.grading.rank), f.src});
    t.ent.push_back({"y", base.grading.iota, f.dst});
    if (!f.is_zero()) t.twist[{1, 0}] = f;
    t.order = std::vector<int>{0, 1};
    return t;
}

// Gaussian elimination of an invertible twist entry alpha_{a,b}. Returns the
// reduced complex together with the round-trip homotopy data: p o s = id and
// id - s o p = d(h) with h = phi^{-1} at (b,a).
struct Elimination {
    TwixObject out;
    // bare-component maps between the old complex T and the reduced one:
    std::vector<std::pair<std::pair<int, int>, Morphism>> p; // T -> out
    std::vector<std::pair<std::pair<int, int>, Morphism>> s; // out -> T
    Morphism h;                                              // at (b,a) in T
    int a, b;
    std::vector<int> kept; // old entry index per new entry
};

inline Elimination gaussian_eliminate(const DgCat& base, const TwixObject& t, int a, int b) {
    auto it = t.twist.find({a, b});
    if (it == t.twist.end()) throw error("gaussian_eliminate: twist entry is zero");
    Morphism phi = it->second;
    auto inv = base.is_isomorphism(phi);
    if (!inv) throw error("gaussian_eliminate: selected entry is not invertible");
    Elimination r;
    r.a = a;
    r.b = b;
    r.h = *inv;
    TwixObject out;
    out.name = t.name + "/elim(" + t.ent[a].name + "," + t.ent[b].name + ")";
    std::vector<int> newidx(t.size(), -1);
    for (int i = 0; i < t.size(); ++i) {
        if (i == a || i == b) continue;
        newidx[i] = out.size();
        r.kept.push_back(i);
        out.ent.push_back(t.ent[i]);
    }
    for (int c = 0; c < t.size(); ++c) {
        if (c == a || c == b) continue;
        for (int d = 0; d < t.size(); ++d) {
            if (d == a || d == b) continue;
            Morphism v = t.twist_at(base, c, d);
            Morphism corr = base.compose(base.compose(t.twist_at(base, c, b), *inv),
                                         t.twist_at(base, a, d));
            v = DgCat::add(v, DgCat::scale(corr, Scalar(base.ring, -1)));
            if (!v.is_zero()) out.twist[{newidx[c], newidx[d]}] = v;
        }
    }
    if (t.order) out.order = is_one_sided(out) ? is_one_sided(out) : std::nullopt;
    // round-trip data
    for (int c = 0; c < t.size(); ++c) {
        if (c == a || c == b) continue;
        Morphism idc = base.identity(t.ent[c].obj);
        r.p.push_back({{newidx[c], c}, idc});
        r.s.push_back({{c, newidx[c]}, idc});
        Morphism pa = DgCat::scale(base.compose(t.twist_at(base, c, b), *inv), Scalar(base.ring, -1));
        if (!pa.is_zero()) r.p.push_back({{newidx[c], a}, pa});
        Morphism sb = DgCat::scale(base.compose(*inv, t.twist_at(base, a, c)), Scalar(base.ring, -1));
        if (!sb.is_zero()) r.s.push_back({{b, newidx[c]}, sb});
    }
    r.out = std::move(out);
    return r;
}

// Structural lookup of an object inside a view (entries and twist must match).
inline int find_view_object(const EnvelopeView& V, const TwixObject& t) {
    for (int i = 0; i < V.nobj(); ++i) {
        const TwixObject& o = V.object(i);
        if (o.size() != t.size()) continue;
        bool ok = true;
        for (int e = 0; e < o.size(); ++e)
            if (o.ent[e].obj != t.ent[e].obj || !(o.ent[e].shift == t.ent[e].shift)) ok = false;
        if (!ok) continue;
        for (int a = 0; a < o.size() && ok; ++a)
            for (int b = 0; b < o.size(); ++b)
                if (o.twist_at(V.base(), a, b).v != t.twist_at(V.base(), a, b).v) ok = false;
        if (ok) return i;
    }
    throw error("find_view_object: no structural match for '" + t.name + "'");
}

// eta: fully faithful embedding of the base category onto the eta objects.
inline DgFunctor eta_functor(const EnvelopeView& V) {
    DgFunctor F;
    F.src = &V.base();
    F.dst = &V.cat();
    for (int x = 0; x < V.base().nobj(); ++x) F.ob.push_back(x);
    F.init_shapes();
    for (int x = 0; x < V.base().nobj(); ++x)
        for (int y = 0; y < V.base().nobj(); ++y)
            for (int bi = 0; bi < V.base().hom[x][y].dim(); ++bi)
                F.on[x][y].add_at(V.view_basis_index(x, y, 0, 0, bi), bi, Scalar(V.base().ring, 1));
    return F;
}

// The shift dg functor q^k on an SB view: q^i X -> q^{i+k} X with sign
// (-1)^{<k, |f| + j - i>} on morphisms (the exponent is the SB degree).
inline DgFunctor shift_functor(const Degree& k, const EnvelopeView& src, const EnvelopeView& tgt) {
    if (src.kind() != EnvKind::SB || tgt.kind() != EnvKind::SB)
        throw error("shift_functor: SB views only");
    DgFunctor F;
    F.src = &src.cat();
    F.dst = &tgt.cat();
    for (int i = 0; i < src.nobj(); ++i) {
        TwixObject t = src.object(i);
        t.ent[0].shift = t.ent[0].shift + k;
        F.ob.push_back(find_view_object(tgt, t));
    }
    F.init_shapes();
    const GradingSpec& g = src.base().grading;
    for (int x = 0; x < src.nobj(); ++x)
        for (int y = 0; y < src.nobj(); ++y) {
            const GradedModule& M = src.cat().hom[x][y];
            for (int i = 0; i < M.dim(); ++i) {
                const ViewBasisInfo& e = src.basis_info(x, y)[i];
                int sgn = g.pair(k, M.deg[i]);
                F.on[x][y].add_at(tgt.view_basis_index(F.ob[x], F.ob[y], 0, 0, e.bi), i,
                                  sign_scalar(src.base().ring, sgn));
            }
        }
    return F;
}

// mu for SB: flatten an SB view over an SB view; q^i(q^{i'}X) -> q^{i+i'}X,
// (f^{i'}_{j'})^i_j -> f^{i+i'}_{j+j'}, no signs.
inline DgFunctor mu_sb(const EnvelopeView& outer, const EnvelopeView& inner, const EnvelopeView& tgt) {
    DgFunctor F;
    F.src = &outer.cat();
    F.dst = &tgt.cat();
    for (int i = 0; i < outer.nobj(); ++i) {
        const TwixObject& t = outer.object(i);
        int o = t.ent[0].obj; // inner view object
        TwixObject flat = inner.object(o);
        flat.ent[0].shift = flat.ent[0].shift + t.ent[0].shift;
        F.ob.push_back(find_view_object(tgt, flat));
    }
    F.init_shapes();
    for (int x = 0; x < outer.nobj(); ++x)
        for (int y = 0; y < outer.nobj(); ++y) {
            const GradedModule& M = outer.cat().hom[x][y];
            for (int i = 0; i < M.dim(); ++i) {
                const ViewBasisInfo& e = outer.basis_info(x, y)[i]; // (0,0,bi) into inner.cat()
                int ox = outer.object(x).ent[0].obj, oy = outer.object(y).ent[0].obj;
                const ViewBasisInfo& ie = inner.basis_info(ox, oy)[e.bi];
                F.on[x][y].add_at(tgt.view_basis_index(F.ob[x], F.ob[y], 0, 0, ie.bi), i,
                                  Scalar(outer.base().ring, 1));
            }
        }
    return F;
}

// mu for Add: flatten formal sums of formal sums by concatenating entries.
inline DgFunctor mu_add(const EnvelopeView& outer, const EnvelopeView& inner, const EnvelopeView& tgt) {
    DgFunctor F;
    F.src = &outer.cat();
    F.dst = &tgt.cat();
    std::vector<std::vector<int>> offset(outer.nobj());
    for (int i = 0; i < outer.nobj(); ++i) {
        const TwixObject& t = outer.object(i);
        TwixObject flat;
        flat.name = t.name + "~flat";
        for (int a = 0; a < t.size(); ++a) {
            offset[i].push_back(flat.size());
            const TwixObject& in = inner.object(t.ent[a].obj);
            for (const auto& en : in.ent)
                flat.ent.push_back({t.ent[a].name + "." + en.name, en.shift, en.obj});
        }
        F.ob.push_back(find_view_object(tgt, flat));
    }
    F.init_shapes();
    for (int x = 0; x < outer.nobj(); ++x)
        for (int y = 0; y < outer.nobj(); ++y) {
            const GradedModule& M = outer.cat().hom[x][y];
            for (int i = 0; i < M.dim(); ++i) {
                const ViewBasisInfo& e = outer.basis_info(x, y)[i];
                int ox = outer.object(x).ent[e.b].obj, oy = outer.object(y).ent[e.a].obj;
                const ViewBasisInfo& ie = inner.basis_info(ox, oy)[e.bi];
                int a = offset[y][e.a] + ie.a, b = offset[x][e.b] + ie.b;
                F.on[x][y].add_at(tgt.view_basis_index(F.ob[x], F.ob[y], a, b, ie.bi), i,
                                  Scalar(outer.base().ring, 1));
            }
        }
    return F;
}

// mu for Tw: tw_alpha(tw_{alpha'}(X)) -> tw_{alpha + alpha'}(X), identity on
// underlying morphisms. The nested Maurer-Cartan equation was already enforced
// when the outer object was admitted.
inline DgFunctor mu_tw(const EnvelopeView& outer, const EnvelopeView& inner, const EnvelopeView& tgt) {
    DgFunctor F;
    F.src = &outer.cat();
    F.dst = &tgt.cat();
    for (int i = 0; i < outer.nobj(); ++i) {
        const TwixObject& t = outer.object(i);
        int o = t.ent[0].obj;
        TwixObject flat = inner.object(o);
        flat.name = t.name + "~flat";
        Morphism total = flat.twist_at(inner.base(), 0, 0);
        auto it = t.twist.find({0, 0});
        if (it != t.twist.end()) {
            // the outer twist is a morphism of inner.cat(); its bare component
            // over the base is the same coefficient vector
            Morphism bare = inner.bare_component(
                Morphism{o, o, it->second.deg, it->second.v}, 0, 0);
            total = DgCat::add(total, bare);
        }
        flat.twist.clear();
        if (!total.is_zero()) flat.twist[{0, 0}] = total;
        F.ob.push_back(find_view_object(tgt, flat));
    }
    F.init_shapes();
    for (int x = 0; x < outer.nobj(); ++x)
        for (int y = 0; y < outer.nobj(); ++y) {
            const GradedModule& M = outer.cat().hom[x][y];
            for (int i = 0; i < M.dim(); ++i) {
                const ViewBasisInfo& e = outer.basis_info(x, y)[i];
                int ox = outer.object(x).ent[0].obj, oy = outer.object(y).ent[0].obj;
                const ViewBasisInfo& ie = inner.basis_info(ox, oy)[e.bi];
                F.on[x][y].add_at(tgt.view_basis_index(F.ob[x], F.ob[y], 0, 0, ie.bi), i,
                                  Scalar(outer.base().ring, 1));
            }
        }
    return F;
}

// Flattened cone of a view morphism: q^{-iota}-shifted source entries followed
// by target entries; the left shift flips the source twist.
inline TwixObject cone_of_view_morphism(const EnvelopeView& V, const Morphism& F,
                                        const std::string& name = "") {
    const DgCat& base = V.base();
    if (!F.deg.is_zero()) throw error("cone: morphism must have degree zero");
    if (!V.cat().is_closed(F)) throw error("cone: morphism must be closed");
    const TwixObject& S = V.object(F.src);
    const TwixObject& T = V.object(F.dst);
    TwixObject t;
    t.name = name.empty() ? "Cone(" + S.name + "->" + T.name + ")" : name;
    for (const auto& e : S.ent) t.ent.push_back({"x." + e.name, e.shift - base.grading.iota, e.obj});
    int off = S.size();
    for (const auto& e : T.ent) t.ent.push_back({"y." + e.name, e.shift, e.obj});
    for (const auto& [ab, m] : S.twist)
        t.twist[{ab.first, ab.second}] = DgCat::scale(m, Scalar(base.ring, -1));
    for (const auto& [ab, m] : T.twist) t.twist[{off + ab.first, off + ab.second}] = m;
    for (int a = 0; a < T.size(); ++a)
        for (int b = 0; b < S.size(); ++b) {
            Morphism c = V.bare_component(F, a, b);
            if (!c.is_zero()) t.twist[{off + a, b}] = c;
        }
    return t;
}

} // namespace dgc
