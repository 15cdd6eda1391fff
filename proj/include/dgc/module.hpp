// Graded modules with chosen bases, homogeneous linear maps, tensor and shift.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "dgc/grading.hpp"
#include "dgc/linalg.hpp"

namespace dgc {

struct GradedModule {
    Ring ring;
    std::vector<std::string> label;
    std::vector<Degree> deg;
    std::map<std::string, int> index;

    int dim() const { return static_cast<int>(label.size()); }

    int add(const std::string& lab, Degree d) {
        if (index.count(lab)) throw error("GradedModule: duplicate basis label '" + lab + "'");
        index[lab] = dim();
        label.push_back(lab);
        deg.push_back(std::move(d));
        return dim() - 1;
    }
    int find(const std::string& lab) const {
        auto it = index.find(lab);
        if (it == index.end()) throw error("GradedModule: unknown basis label '" + lab + "'");
        return it->second;
    }
    std::vector<int> slice(const Degree& d) const {
        std::vector<int> r;
        for (int i = 0; i < dim(); ++i)
            if (deg[i] == d) r.push_back(i);
        return r;
    }
    std::vector<Degree> degrees_present() const {
        std::vector<Degree> ds;
        for (const Degree& d : deg)
            if (std::find(ds.begin(), ds.end(), d) == ds.end()) ds.push_back(d);
        std::sort(ds.begin(), ds.end());
        return ds;
    }
};

// Homogeneous linear map of a stated degree between based graded modules,
// matrix indexed (target basis row, source basis column).
struct LinearMap {
    Degree deg;
    SMat m;
};

inline void validate_homogeneous(const LinearMap& f, const GradedModule& src, const GradedModule& tgt) {
    if (f.m.rows != tgt.dim() || f.m.cols != src.dim()) throw error("LinearMap: shape mismatch");
    for (int i = 0; i < f.m.rows; ++i)
        for (const auto& [j, s] : f.m.row[i]) {
            (void)s;
            if (tgt.deg[i] != src.deg[j] + f.deg)
                throw error("LinearMap: entry (" + tgt.label[i] + "," + src.label[j] +
                            ") violates homogeneity");
        }
}

// Tensor product of based modules: basis = ordered pairs, degrees add.
inline GradedModule module_tensor(const GradedModule& a, const GradedModule& b) {
    GradedModule t;
    t.ring = a.ring;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < b.dim(); ++j)
            t.add(a.label[i] + "(x)" + b.label[j], a.deg[i] + b.deg[j]);
    return t;
}

inline int tensor_index(const GradedModule&, const GradedModule& b, int i, int j) {
    return i * b.dim() + j;
}

// (f (x) g)(m (x) n) = (-1)^{<|g|,|m|>} f(m) (x) g(n).
inline LinearMap map_tensor(const GradingSpec& g, const LinearMap& f, const GradedModule& fsrc,
                            const GradedModule& ftgt, const LinearMap& h, const GradedModule& hsrc,
                            const GradedModule& htgt) {
    LinearMap t;
    t.deg = f.deg + h.deg;
    t.m = SMat(ftgt.dim() * htgt.dim(), fsrc.dim() * hsrc.dim(), f.m.ring);
    for (int i = 0; i < f.m.rows; ++i)
        for (const auto& [j, fs] : f.m.row[i])
            for (int k = 0; k < h.m.rows; ++k)
                for (const auto& [l, hs] : h.m.row[k]) {
                    int sgn = g.pair(h.deg, fsrc.deg[j]);
                    Scalar c = fs * hs * sign_scalar(f.m.ring, sgn);
                    t.m.add_at(tensor_index(ftgt, htgt, i, k), tensor_index(fsrc, hsrc, j, l), c);
                }
    return t;
}

// Left shift q^j M: degrees bump by j. Maps acquire (-1)^{<j,|f|>}; the right
// shift leaves maps alone.
inline GradedModule module_shift(const GradedModule& m, const Degree& j) {
    GradedModule s = m;
    for (Degree& d : s.deg) d = d + j;
    return s;
}

inline LinearMap map_shift_left(const GradingSpec& g, const LinearMap& f, const Degree& j) {
    LinearMap r = f;
    r.m = SMat::scale(f.m, sign_scalar(f.m.ring, g.pair(j, f.deg)));
    return r;
}

inline LinearMap map_shift_right(const LinearMap& f, const Degree&) { return f; }

// The comparison isomorphism q^j M -> M q^j carries (-1)^{<j,|m|>} on basis m.
inline LinearMap shift_comparison_iso(const GradingSpec& g, const GradedModule& m, const Degree& j) {
    LinearMap r;
    r.deg = Degree::zero(g.rank);
    r.m = SMat(m.dim(), m.dim(), m.ring);
    for (int i = 0; i < m.dim(); ++i)
        r.m.row[i] = svec_unit(i, sign_scalar(m.ring, g.pair(j, m.deg[i])));
    return r;
}

} // namespace dgc
