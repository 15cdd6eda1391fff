// Grading group Z^n with symmetric mod-2 pairing and distinguished degree iota.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dgc/scalar.hpp"

namespace dgc {

struct Degree {
    std::vector<int> c;

    Degree() = default;
    explicit Degree(std::vector<int> v) : c(std::move(v)) {}
    static Degree zero(int rank) { return Degree(std::vector<int>(rank, 0)); }

    int rank() const { return static_cast<int>(c.size()); }
    bool is_zero() const {
        for (int x : c)
            if (x) return false;
        return true;
    }

    friend Degree operator+(const Degree& a, const Degree& b) {
        check(a, b);
        Degree r = a;
        for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
        return r;
    }
    friend Degree operator-(const Degree& a, const Degree& b) {
        check(a, b);
        Degree r = a;
        for (size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
        return r;
    }
    friend Degree operator-(const Degree& a) {
        Degree r = a;
        for (int& x : r.c) x = -x;
        return r;
    }
    friend Degree operator*(int n, const Degree& a) {
        Degree r = a;
        for (int& x : r.c) x *= n;
        return r;
    }
    friend bool operator==(const Degree& a, const Degree& b) { return a.c == b.c; }
    friend bool operator!=(const Degree& a, const Degree& b) { return a.c != b.c; }
    friend bool operator<(const Degree& a, const Degree& b) { return a.c < b.c; }

    std::string str() const {
        std::string s = "[";
        for (size_t i = 0; i < c.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(c[i]);
        }
        return s + "]";
    }

  private:
    static void check(const Degree& a, const Degree& b) {
        if (a.c.size() != b.c.size()) throw error("Degree: rank mismatch");
    }
};

struct GradingSpec {
    int rank = 1;
    std::vector<uint8_t> pairing; // rank x rank, row-major, entries in {0,1}
    Degree iota;
    // Optional sub-semigroup Gamma^- declared by an integer functional:
    // Gamma^- = { d != 0 : neg_functional . d < 0 }.
    std::optional<std::vector<long long>> neg_functional;

    uint8_t pairing_at(int i, int j) const { return pairing[static_cast<size_t>(i) * rank + j]; }

    // <a,b> in Z/2.
    int pair(const Degree& a, const Degree& b) const {
        if (a.rank() != rank || b.rank() != rank) throw error("pair: degree rank mismatch");
        long long acc = 0;
        for (int i = 0; i < rank; ++i) {
            if (!a.c[i]) continue;
            for (int j = 0; j < rank; ++j)
                if (pairing_at(i, j)) acc += static_cast<long long>(a.c[i]) * b.c[j];
        }
        return static_cast<int>(((acc % 2) + 2) % 2);
    }

    void validate() const {
        if (rank < 0) throw error("GradingSpec: negative rank");
        if (static_cast<int>(pairing.size()) != rank * rank) throw error("GradingSpec: pairing size");
        for (int i = 0; i < rank; ++i)
            for (int j = 0; j < rank; ++j)
                if (pairing_at(i, j) != pairing_at(j, i)) throw error("GradingSpec: pairing not symmetric");
        if (iota.rank() != rank) throw error("GradingSpec: iota rank");
        if (pair(iota, iota) != 1) throw error("GradingSpec: <iota,iota> must be 1");
        if (neg_functional && static_cast<int>(neg_functional->size()) != rank)
            throw error("GradingSpec: negcone functional rank");
    }

    long long functional(const Degree& d) const {
        if (!neg_functional) throw error("GradingSpec: no negcone declared");
        long long v = 0;
        for (int i = 0; i < rank; ++i) v += (*neg_functional)[i] * d.c[i];
        return v;
    }
    // d <= 0 in the declared partial order, i.e. d in Gamma^- or d = 0.
    bool nonpositive(const Degree& d) const { return d.is_zero() || functional(d) < 0; }
};

// Gamma = Z, <i,j> = ij mod 2, iota = 1.
inline GradingSpec classical_spec() {
    GradingSpec g;
    g.rank = 1;
    g.pairing = {1};
    g.iota = Degree({1});
    g.validate();
    return g;
}

inline Degree deg1(int v) { return Degree({v}); }

} // namespace dgc
