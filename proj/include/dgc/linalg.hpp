// Sparse exact linear algebra: vectors, matrices, rank, solve, kernel, quotients.

#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "dgc/scalar.hpp"

namespace dgc {

// Sparse vector: sorted (index, nonzero scalar) pairs.
using SVec = std::vector<std::pair<int, Scalar>>;

inline SVec svec_unit(int i, Scalar c) {
    if (c.is_zero()) return {};
    return {{i, std::move(c)}};
}

inline SVec svec_add(const SVec& a, const SVec& b) {
    SVec r;
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) r.push_back(a[i++]);
        else if (i == a.size() || b[j].first < a[i].first) r.push_back(b[j++]);
        else {
            Scalar s = a[i].second + b[j].second;
            if (!s.is_zero()) r.emplace_back(a[i].first, std::move(s));
            ++i; ++j;
        }
    }
    return r;
}

inline SVec svec_scale(const SVec& a, const Scalar& c) {
    if (c.is_zero()) return {};
    SVec r;
    r.reserve(a.size());
    for (const auto& [i, s] : a) {
        Scalar t = s * c;
        if (!t.is_zero()) r.emplace_back(i, std::move(t));
    }
    return r;
}

inline SVec svec_axpy(const SVec& a, const Scalar& c, const SVec& b) { // a + c*b
    return svec_add(a, svec_scale(b, c));
}

inline Scalar svec_get(const SVec& a, int i, Ring ring) {
    auto it = std::lower_bound(a.begin(), a.end(), i,
                               [](const auto& p, int k) { return p.first < k; });
    if (it != a.end() && it->first == i) return it->second;
    return Scalar(ring, 0);
}

// Sparse matrix, stored by rows.
struct SMat {
    int rows = 0, cols = 0;
    Ring ring;
    std::vector<SVec> row;

    SMat() = default;
    SMat(int r, int c, Ring rg) : rows(r), cols(c), ring(rg), row(static_cast<size_t>(r)) {}

    static SMat identity(int n, Ring rg) {
        SMat m(n, n, rg);
        for (int i = 0; i < n; ++i) m.row[i] = svec_unit(i, Scalar(rg, 1));
        return m;
    }
    static SMat zero(int r, int c, Ring rg) { return SMat(r, c, rg); }

    bool is_zero() const {
        for (const auto& r : row)
            if (!r.empty()) return false;
        return true;
    }
    void add_at(int r, int c, const Scalar& v) {
        row[r] = svec_add(row[r], svec_unit(c, v));
    }
    Scalar at(int r, int c) const { return svec_get(row[r], c, ring); }

    friend SMat operator+(const SMat& a, const SMat& b) {
        SMat r(a.rows, a.cols, a.ring);
        for (int i = 0; i < a.rows; ++i) r.row[i] = svec_add(a.row[i], b.row[i]);
        return r;
    }
    friend SMat operator-(const SMat& a, const SMat& b) { return a + scale(b, Scalar(a.ring, -1)); }
    static SMat scale(const SMat& a, const Scalar& c) {
        SMat r(a.rows, a.cols, a.ring);
        for (int i = 0; i < a.rows; ++i) r.row[i] = svec_scale(a.row[i], c);
        return r;
    }
    friend bool operator==(const SMat& a, const SMat& b) {
        return a.rows == b.rows && a.cols == b.cols && a.row == b.row;
    }

    // column vector action: (this * v)
    SVec apply(const SVec& v) const {
        // compute via columns of v: result_i = sum_j m[i][j] v[j]; iterate rows
        SVec r;
        for (int i = 0; i < rows; ++i) {
            Scalar acc(ring, 0);
            size_t a = 0, b = 0;
            const SVec& ri = row[i];
            while (a < ri.size() && b < v.size()) {
                if (ri[a].first < v[b].first) ++a;
                else if (v[b].first < ri[a].first) ++b;
                else { acc = acc + ri[a].second * v[b].second; ++a; ++b; }
            }
            if (!acc.is_zero()) r.emplace_back(i, std::move(acc));
        }
        return r;
    }

    friend SMat operator*(const SMat& a, const SMat& b) {
        SMat r(a.rows, b.cols, a.ring);
        for (int i = 0; i < a.rows; ++i) {
            SVec acc;
            for (const auto& [k, s] : a.row[i]) acc = svec_axpy(acc, s, b.row[k]);
            r.row[i] = std::move(acc);
        }
        return r;
    }
    SMat transpose() const {
        SMat r(cols, rows, ring);
        for (int i = 0; i < rows; ++i)
            for (const auto& [j, s] : row[i]) r.row[j].emplace_back(i, s);
        return r;
    }
};

// Row echelon data over the field.
struct Echelon {
    SMat mat;                 // reduced rows (non-zero rows only)
    std::vector<int> pivot;   // pivot column per reduced row
    int rank() const { return static_cast<int>(pivot.size()); }
};

inline Echelon echelonize(const SMat& m) {
    Echelon e;
    e.mat = SMat(0, m.cols, m.ring);
    for (int i = 0; i < m.rows; ++i) {
        SVec r = m.row[i];
        for (size_t k = 0; k < e.pivot.size() && !r.empty();) {
            Scalar c = svec_get(r, e.pivot[k], m.ring);
            if (!c.is_zero()) r = svec_axpy(r, -c, e.mat.row[k]);
            ++k;
        }
        if (r.empty()) continue;
        Scalar lead = r.front().second;
        r = svec_scale(r, lead.inverse());
        // back-substitute into existing rows
        for (size_t k = 0; k < e.pivot.size(); ++k) {
            Scalar c = svec_get(e.mat.row[k], r.front().first, m.ring);
            if (!c.is_zero()) e.mat.row[k] = svec_axpy(e.mat.row[k], -c, r);
        }
        e.pivot.push_back(r.front().first);
        e.mat.row.push_back(std::move(r));
        e.mat.rows++;
    }
    // sort rows by pivot for determinism
    std::vector<size_t> idx(e.pivot.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return e.pivot[a] < e.pivot[b]; });
    SMat sorted(e.mat.rows, e.mat.cols, e.mat.ring);
    std::vector<int> piv(e.pivot.size());
    for (size_t i = 0; i < idx.size(); ++i) {
        sorted.row[i] = e.mat.row[idx[i]];
        piv[i] = e.pivot[idx[i]];
    }
    e.mat = std::move(sorted);
    e.pivot = std::move(piv);
    return e;
}

inline int rank(const SMat& m) { return echelonize(m).rank(); }

// Solve m * x = b for a column vector x (m acts on column vectors). Returns one solution.
inline std::optional<SVec> solve(const SMat& m, const SVec& b) {
    // Row-reduce the augmented transpose: unknowns are coordinates of x.
    // Work with columns: x = sum x_j e_j, m e_j = column j. Build matrix whose rows are columns of m.
    SMat cols = m.transpose(); // row j = column j of m
    // Augment each row with the unknown index bookkeeping: reduce b against columns.
    Echelon e;
    e.mat = SMat(0, m.rows, m.ring);
    std::vector<SVec> expr; // expr[k]: combination of unknowns producing e.mat.row[k]
    std::vector<int> piv;
    for (int j = 0; j < cols.rows; ++j) {
        SVec r = cols.row[j];
        SVec ex = svec_unit(j, Scalar(m.ring, 1));
        for (size_t k = 0; k < piv.size() && !r.empty(); ++k) {
            Scalar c = svec_get(r, piv[k], m.ring);
            if (!c.is_zero()) {
                r = svec_axpy(r, -c, e.mat.row[k]);
                ex = svec_axpy(ex, -c, expr[k]);
            }
        }
        if (r.empty()) continue;
        Scalar lead = r.front().second;
        Scalar li = lead.inverse();
        r = svec_scale(r, li);
        ex = svec_scale(ex, li);
        piv.push_back(r.front().first);
        e.mat.row.push_back(std::move(r));
        e.mat.rows++;
        expr.push_back(std::move(ex));
    }
    // reduce b
    SVec r = b;
    SVec x;
    for (size_t k = 0; k < piv.size() && !r.empty(); ++k) {
        Scalar c = svec_get(r, piv[k], m.ring);
        if (!c.is_zero()) {
            r = svec_axpy(r, -c, e.mat.row[k]);
            x = svec_axpy(x, c, expr[k]);
        }
    }
    if (!r.empty()) return std::nullopt;
    return x;
}

// Basis of the kernel of m acting on column vectors.
inline std::vector<SVec> kernel(const SMat& m) {
    SMat cols = m.transpose();
    Echelon e;
    e.mat = SMat(0, m.rows, m.ring);
    std::vector<SVec> expr;
    std::vector<int> piv;
    std::vector<SVec> ker;
    for (int j = 0; j < cols.rows; ++j) {
        SVec r = cols.row[j];
        SVec ex = svec_unit(j, Scalar(m.ring, 1));
        for (size_t k = 0; k < piv.size() && !r.empty(); ++k) {
            Scalar c = svec_get(r, piv[k], m.ring);
            if (!c.is_zero()) {
                r = svec_axpy(r, -c, e.mat.row[k]);
                ex = svec_axpy(ex, -c, expr[k]);
            }
        }
        if (r.empty()) {
            ker.push_back(std::move(ex));
            continue;
        }
        Scalar li = r.front().second.inverse();
        piv.push_back(r.front().first);
        e.mat.row.push_back(svec_scale(r, li));
        e.mat.rows++;
        expr.push_back(svec_scale(ex, li));
    }
    return ker;
}

// Quotient of the free module on `dim` generators by the row space of `rel`.
// Basis of the quotient = non-pivot coordinates; proj maps old coords to quotient coords.
struct Quotient {
    std::vector<int> basis;   // surviving coordinate indices, increasing
    SMat proj;                // (basis.size() x dim): coordinates of image of e_j
    SMat lift;                // (dim x basis.size()): representative of each quotient basis vector
};

inline Quotient quotient_by_rows(int dim, const SMat& rel) {
    Echelon e = echelonize(rel);
    Quotient q;
    std::vector<int> pivrow(static_cast<size_t>(dim), -1);
    for (size_t k = 0; k < e.pivot.size(); ++k) pivrow[e.pivot[k]] = static_cast<int>(k);
    std::vector<int> pos(static_cast<size_t>(dim), -1);
    for (int j = 0; j < dim; ++j)
        if (pivrow[j] < 0) {
            pos[j] = static_cast<int>(q.basis.size());
            q.basis.push_back(j);
        }
    q.proj = SMat(static_cast<int>(q.basis.size()), dim, rel.ring);
    q.lift = SMat(dim, static_cast<int>(q.basis.size()), rel.ring);
    for (int j = 0; j < dim; ++j) {
        if (pivrow[j] < 0) {
            q.proj.row[pos[j]].emplace_back(j, Scalar(rel.ring, 1));
            q.lift.row[j].emplace_back(pos[j], Scalar(rel.ring, 1));
        } else {
            // e_j = -sum_{k != j} row[j][k] e_k modulo relations (row normalized with pivot 1 at j)
            for (const auto& [k, s] : e.mat.row[pivrow[j]]) {
                if (k == j) continue;
                if (pos[k] < 0) throw error("quotient: non-reduced echelon");
                q.proj.row[pos[k]] = svec_add(q.proj.row[pos[k]], svec_unit(j, -s));
            }
        }
    }
    return q;
}

} // namespace dgc
