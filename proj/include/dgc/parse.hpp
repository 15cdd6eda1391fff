// Line-oriented presentation file format (.dgc): named blocks for the grading,
// ring, objects, hom bases, differentials, structure constants, units, and
// optional twisted-complex declarations. Hand-writable; see README for the
// grammar.

#pragma once

#include <fstream>
#include <sstream>

#include "dgc/bimodule.hpp"
#include "dgc/envelope.hpp"

namespace dgc {

// declarative bimodule data from a file: components with bases, differentials,
// and sparse action tables (instantiated against the presentation's category)
struct BimodulePresentation {
    std::string name;
    std::map<std::pair<int, int>, GradedModule> comp;
    std::map<std::pair<int, int>, SMat> diff;
    // actl[(x2, x, y)][(gi, mi)] = result in comp[x2][y]
    std::map<std::tuple<int, int, int>, std::map<std::pair<int, int>, SVec>> actl;
    // actr[(x, y, y2)][(mi, gi)] = result in comp[x][y2]
    std::map<std::tuple<int, int, int>, std::map<std::pair<int, int>, SVec>> actr;
};

struct Presentation {
    DgCat cat;
    std::vector<std::pair<std::string, TwixObject>> twix;
    std::vector<BimodulePresentation> bimodules;

    const TwixObject& twix_named(const std::string& n) const {
        for (const auto& [name, t] : twix)
            if (name == n) return t;
        throw error("presentation: no twix block named '" + n + "'");
    }
    const BimodulePresentation& bimodule_named(const std::string& n) const {
        for (const auto& b : bimodules)
            if (b.name == n) return b;
        throw error("presentation: no bimodule block named '" + n + "'");
    }
};

// Build a live bimodule over C from parsed data. C must outlive the result.
inline Bimodule instantiate_bimodule(const DgCat& C, const BimodulePresentation& B) {
    Bimodule M;
    M.L = M.R = &C;
    M.init_shapes();
    for (const auto& [xy, mod] : B.comp) M.comp[xy.first][xy.second] = mod;
    for (const auto& [xy, d] : B.diff) M.diff[xy.first][xy.second] = d;
    auto data = std::make_shared<BimodulePresentation>(B);
    const DgCat* Cp = &C;
    // the unit acts as the identity automatically (units are basis vectors in
    // parsed presentations), so tables only list non-unit actions
    M.actL = [data, Cp](int x2, int x, int y, int gi, int mi) -> SVec {
        if (x2 == x && Cp->unit[x] == svec_unit(gi, Scalar(Cp->ring, 1)))
            return svec_unit(mi, Scalar(Cp->ring, 1));
        auto it = data->actl.find({x2, x, y});
        if (it == data->actl.end()) return {};
        auto jt = it->second.find({gi, mi});
        return jt == it->second.end() ? SVec{} : jt->second;
    };
    M.actR = [data, Cp](int x, int y, int y2, int mi, int gi) -> SVec {
        if (y2 == y && Cp->unit[y] == svec_unit(gi, Scalar(Cp->ring, 1)))
            return svec_unit(mi, Scalar(Cp->ring, 1));
        auto it = data->actr.find({x, y, y2});
        if (it == data->actr.end()) return {};
        auto jt = it->second.find({mi, gi});
        return jt == it->second.end() ? SVec{} : jt->second;
    };
    M.finalize_shapes();
    return M;
}

namespace detail {

struct Tok {
    std::vector<std::string> words;
    int line;
};

inline std::vector<Tok> tokenize(std::istream& in) {
    std::vector<Tok> out;
    std::string line;
    int ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        // pad braces and separators; commas inside [..] belong to degree vectors
        std::string padded;
        int depth = 0;
        for (char c : line) {
            if (c == '[') ++depth;
            if (c == ']') --depth;
            if (c == '{' || c == '}' || c == ':' || (c == ',' && depth == 0)) {
                padded += ' ';
                padded += c;
                padded += ' ';
            } else padded += c;
        }
        std::istringstream ss(padded);
        std::vector<std::string> words;
        std::string w;
        while (ss >> w) words.push_back(w);
        // split the line at braces so single-line blocks parse too
        Tok cur;
        cur.line = ln;
        auto flush = [&]() {
            if (!cur.words.empty()) out.push_back(cur);
            cur.words.clear();
        };
        for (const std::string& word : words) {
            if (word == "{") {
                cur.words.push_back(word);
                flush();
            } else if (word == "}") {
                flush();
                cur.words.push_back(word);
                flush();
            } else cur.words.push_back(word);
        }
        flush();
    }
    return out;
}

inline error perr(int line, const std::string& msg) {
    return error("parse error (line " + std::to_string(line) + "): " + msg);
}

inline Degree parse_degree(const std::string& s, int rank, int line) {
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw perr(line, "expected [d,...], got '" + s + "'");
    std::vector<int> c;
    std::string body = s.substr(1, s.size() - 2);
    std::istringstream ss(body);
    std::string part;
    while (std::getline(ss, part, ','))
        if (!part.empty()) c.push_back(std::stoi(part));
    if (body.empty()) c.clear();
    if (static_cast<int>(c.size()) != rank)
        throw perr(line, "degree rank mismatch: '" + s + "'");
    return Degree(c);
}

// entries "label coeff , label coeff , ..." following a ':'
inline SVec parse_combination(const std::vector<std::string>& w, size_t from, const GradedModule& m,
                              Ring ring, int line) {
    SVec v;
    size_t i = from;
    while (i < w.size()) {
        if (w[i] == ",") { ++i; continue; }
        if (i + 1 >= w.size()) throw perr(line, "dangling term '" + w[i] + "'");
        int idx;
        try {
            idx = m.find(w[i]);
        } catch (const error&) {
            throw perr(line, "unknown basis label '" + w[i] + "'");
        }
        Scalar c = Scalar::parse(ring, w[i + 1]);
        v = svec_add(v, svec_unit(idx, c));
        i += 2;
    }
    return v;
}

} // namespace detail

inline Presentation parse_presentation(std::istream& in) {
    using namespace detail;
    auto toks = tokenize(in);
    Presentation P;
    DgCat& C = P.cat;
    bool ring_set = false, grading_set = false, objects_set = false;

    size_t i = 0;
    auto expect_brace = [&](size_t& k, const Tok& t) {
        if (k >= t.words.size() || t.words[k] != "{") throw perr(t.line, "expected '{'");
        ++k;
    };

    while (i < toks.size()) {
        const Tok& t = toks[i];
        const auto& w = t.words;
        if (w[0] == "ring") {
            if (w.size() >= 2 && w[1] == "q") C.ring = Ring{0};
            else if (w.size() >= 3 && w[1] == "fp") C.ring = Ring{std::stoll(w[2])};
            else throw perr(t.line, "ring must be 'ring q' or 'ring fp <p>'");
            ring_set = true;
            ++i;
        } else if (w[0] == "grading") {
            size_t k = 1;
            expect_brace(k, t);
            ++i;
            GradingSpec g;
            g.rank = -1;
            while (i < toks.size() && toks[i].words[0] != "}") {
                const Tok& u = toks[i];
                if (u.words[0] == "rank") g.rank = std::stoi(u.words.at(1));
                else if (u.words[0] == "pairing") {
                    for (size_t j = 1; j < u.words.size(); ++j)
                        g.pairing.push_back(static_cast<uint8_t>(std::stoi(u.words[j]) & 1));
                } else if (u.words[0] == "iota") g.iota = parse_degree(u.words.at(1), g.rank, u.line);
                else if (u.words[0] == "negcone") {
                    Degree d = parse_degree(u.words.at(1), g.rank, u.line);
                    g.neg_functional = std::vector<long long>(d.c.begin(), d.c.end());
                } else throw perr(u.line, "unknown grading field '" + u.words[0] + "'");
                ++i;
            }
            if (i == toks.size()) throw perr(t.line, "unterminated grading block");
            ++i;
            g.validate();
            C.grading = g;
            grading_set = true;
        } else if (w[0] == "objects") {
            if (!grading_set || !ring_set) throw perr(t.line, "objects before ring/grading");
            for (size_t j = 1; j < w.size(); ++j) C.add_object(w[j]);
            C.init_tables();
            objects_set = true;
            ++i;
        } else if (w[0] == "hom") {
            if (!objects_set) throw perr(t.line, "hom before objects");
            int x = C.object(w.at(1)), y = C.object(w.at(2));
            size_t k = 3;
            expect_brace(k, t);
            ++i;
            while (i < toks.size() && toks[i].words[0] != "}") {
                const Tok& u = toks[i];
                C.hom[x][y].add(u.words.at(0), parse_degree(u.words.at(1), C.grading.rank, u.line));
                ++i;
            }
            if (i == toks.size()) throw perr(t.line, "unterminated hom block");
            ++i;
        } else if (w[0] == "diff") {
            int x = C.object(w.at(1)), y = C.object(w.at(2));
            size_t k = 3;
            expect_brace(k, t);
            ++i;
            SMat D(C.hom[x][y].dim(), C.hom[x][y].dim(), C.ring);
            while (i < toks.size() && toks[i].words[0] != "}") {
                const Tok& u = toks[i];
                int src = C.hom[x][y].find(u.words.at(0));
                if (u.words.at(1) != ":") throw perr(u.line, "expected ':'");
                SVec img = parse_combination(u.words, 2, C.hom[x][y], C.ring, u.line);
                for (const auto& [r, s] : img) D.add_at(r, src, s);
                ++i;
            }
            if (i == toks.size()) throw perr(t.line, "unterminated diff block");
            ++i;
            C.diff[x][y] = std::move(D);
        } else if (w[0] == "comp") {
            int x = C.object(w.at(1)), y = C.object(w.at(2)), z = C.object(w.at(3));
            size_t k = 4;
            expect_brace(k, t);
            ++i;
            auto& table = C.comp[x][y][z];
            table.assign(C.hom[y][z].dim(), std::vector<SVec>(C.hom[x][y].dim()));
            while (i < toks.size() && toks[i].words[0] != "}") {
                const Tok& u = toks[i];
                int gi = C.hom[y][z].find(u.words.at(0));
                int fi = C.hom[x][y].find(u.words.at(1));
                if (u.words.at(2) != ":") throw perr(u.line, "expected ':'");
                table[gi][fi] = parse_combination(u.words, 3, C.hom[x][z], C.ring, u.line);
                ++i;
            }
            if (i == toks.size()) throw perr(t.line, "unterminated comp block");
            ++i;
        } else if (w[0] == "unit") {
            int x = C.object(w.at(1));
            int ui = C.hom[x][x].find(w.at(2));
            if (!C.hom[x][x].deg[ui].is_zero()) throw perr(t.line, "unit must have degree 0");
            C.unit[x] = svec_unit(ui, Scalar(C.ring, 1));
            ++i;
        } else if (w[0] == "twix") {
            std::string name = w.at(1);
            size_t k = 2;
            expect_brace(k, t);
            ++i;
            TwixObject T;
            T.name = name;
            while (i < toks.size() && toks[i].words[0] != "}") {
                const Tok& u = toks[i];
                if (u.words[0] == "entry") {
                    // entry <name> <shift> <object>
                    T.ent.push_back({u.words.at(1), parse_degree(u.words.at(2), C.grading.rank, u.line),
                                     C.object(u.words.at(3))});
                } else if (u.words[0] == "twist") {
                    // twist <a> <b> : combination   (component X_b -> X_a)
                    int a = -1, b = -1;
                    for (int e = 0; e < T.size(); ++e) {
                        if (T.ent[e].name == u.words.at(1)) a = e;
                        if (T.ent[e].name == u.words.at(2)) b = e;
                    }
                    if (a < 0 || b < 0) throw perr(u.line, "twist refers to unknown entry");
                    if (u.words.at(3) != ":") throw perr(u.line, "expected ':'");
                    const GradedModule& H = C.hom[T.ent[b].obj][T.ent[a].obj];
                    Morphism m = C.zero_morphism(T.ent[b].obj, T.ent[a].obj,
                                                 C.grading.iota - T.ent[a].shift + T.ent[b].shift);
                    m.v = parse_combination(u.words, 4, H, C.ring, u.line);
                    T.twist[{a, b}] = std::move(m);
                } else throw perr(u.line, "unknown twix field '" + u.words[0] + "'");
                ++i;
            }
            if (i == toks.size()) throw perr(t.line, "unterminated twix block");
            ++i;
            P.twix.emplace_back(name, std::move(T));
        } else if (w[0] == "bimodule") {
            std::string name = w.at(1);
            size_t k = 2;
            expect_brace(k, t);
            ++i;
            BimodulePresentation B;
            B.name = name;
            auto comp_of = [&](int x, int y) -> GradedModule& {
                auto it = B.comp.find({x, y});
                if (it == B.comp.end()) {
                    GradedModule m;
                    m.ring = C.ring;
                    it = B.comp.emplace(std::make_pair(x, y), std::move(m)).first;
                }
                return it->second;
            };
            while (i < toks.size() && toks[i].words[0] != "}") {
                const Tok& u = toks[i];
                if (u.words[0] == "component") {
                    int x = C.object(u.words.at(1)), y = C.object(u.words.at(2));
                    GradedModule& m = comp_of(x, y);
                    ++i;
                    while (i < toks.size() && toks[i].words[0] != "}") {
                        const Tok& v = toks[i];
                        m.add(v.words.at(0), parse_degree(v.words.at(1), C.grading.rank, v.line));
                        ++i;
                    }
                    if (i == toks.size()) throw perr(u.line, "unterminated component block");
                    ++i;
                } else if (u.words[0] == "diff") {
                    int x = C.object(u.words.at(1)), y = C.object(u.words.at(2));
                    GradedModule& m = comp_of(x, y);
                    SMat D(m.dim(), m.dim(), C.ring);
                    ++i;
                    while (i < toks.size() && toks[i].words[0] != "}") {
                        const Tok& v = toks[i];
                        int src = m.find(v.words.at(0));
                        if (v.words.at(1) != ":") throw perr(v.line, "expected ':'");
                        for (const auto& [r, s] : parse_combination(v.words, 2, m, C.ring, v.line))
                            D.add_at(r, src, s);
                        ++i;
                    }
                    if (i == toks.size()) throw perr(u.line, "unterminated diff block");
                    ++i;
                    B.diff[{x, y}] = std::move(D);
                } else if (u.words[0] == "actl" || u.words[0] == "actr") {
                    bool left = u.words[0] == "actl";
                    int a = C.object(u.words.at(1)), b = C.object(u.words.at(2)),
                        c = C.object(u.words.at(3));
                    // actl x2 x y: g in hom(x -> x2), m in comp[x][y] -> comp[x2][y]
                    // actr x y y2: m in comp[x][y], g in hom(y2 -> y) -> comp[x][y2]
                    ++i;
                    while (i < toks.size() && toks[i].words[0] != "}") {
                        const Tok& v = toks[i];
                        if (left) {
                            int gi = C.hom[b][a].find(v.words.at(0));
                            int mi = comp_of(b, c).find(v.words.at(1));
                            if (v.words.at(2) != ":") throw perr(v.line, "expected ':'");
                            B.actl[{a, b, c}][{gi, mi}] =
                                parse_combination(v.words, 3, comp_of(a, c), C.ring, v.line);
                        } else {
                            int mi = comp_of(a, b).find(v.words.at(0));
                            int gi = C.hom[c][b].find(v.words.at(1));
                            if (v.words.at(2) != ":") throw perr(v.line, "expected ':'");
                            B.actr[{a, b, c}][{mi, gi}] =
                                parse_combination(v.words, 3, comp_of(a, c), C.ring, v.line);
                        }
                        ++i;
                    }
                    if (i == toks.size()) throw perr(u.line, "unterminated action block");
                    ++i;
                } else throw perr(u.line, "unknown bimodule field '" + u.words[0] + "'");
            }
            if (i == toks.size()) throw perr(t.line, "unterminated bimodule block");
            ++i;
            P.bimodules.push_back(std::move(B));
        } else {
            throw perr(t.line, "unknown block '" + w[0] + "'");
        }
    }
    if (!ring_set) throw error("parse error: missing ring block");
    if (!grading_set) throw error("parse error: missing grading block");
    if (!objects_set) {
        C.init_tables(); // the zero category
    }
    C.finalize_shapes();
    return P;
}

inline Presentation parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open '" + path + "'");
    return parse_presentation(in);
}

inline std::string export_presentation(const Presentation& P) {
    const DgCat& C = P.cat;
    std::ostringstream out;
    out << "ring " << (C.ring.is_rational() ? "q" : "fp " + std::to_string(C.ring.p)) << "\n";
    out << "grading {\n  rank " << C.grading.rank << "\n  pairing";
    for (uint8_t b : C.grading.pairing) out << " " << int(b);
    out << "\n  iota " << C.grading.iota.str() << "\n";
    if (C.grading.neg_functional) {
        out << "  negcone [";
        for (size_t i = 0; i < C.grading.neg_functional->size(); ++i)
            out << (i ? "," : "") << (*C.grading.neg_functional)[i];
        out << "]\n";
    }
    out << "}\n";
    out << "objects";
    for (const auto& o : C.obj) out << " " << o;
    out << "\n";
    auto emit_comb = [&](const SVec& v, const GradedModule& m) {
        std::string s;
        for (const auto& [idx, c] : v) {
            if (!s.empty()) s += " , ";
            s += m.label[idx] + " " + c.str();
        }
        return s;
    };
    for (int x = 0; x < C.nobj(); ++x)
        for (int y = 0; y < C.nobj(); ++y) {
            if (C.hom[x][y].dim() == 0) continue;
            out << "hom " << C.obj[x] << " " << C.obj[y] << " {\n";
            for (int i = 0; i < C.hom[x][y].dim(); ++i)
                out << "  " << C.hom[x][y].label[i] << " " << C.hom[x][y].deg[i].str() << "\n";
            out << "}\n";
        }
    for (int x = 0; x < C.nobj(); ++x)
        for (int y = 0; y < C.nobj(); ++y) {
            if (C.diff[x][y].is_zero()) continue;
            out << "diff " << C.obj[x] << " " << C.obj[y] << " {\n";
            SMat tr = C.diff[x][y].transpose();
            for (int j = 0; j < tr.rows; ++j)
                if (!tr.row[j].empty())
                    out << "  " << C.hom[x][y].label[j] << " : " << emit_comb(tr.row[j], C.hom[x][y])
                        << "\n";
            out << "}\n";
        }
    for (int x = 0; x < C.nobj(); ++x)
        for (int y = 0; y < C.nobj(); ++y)
            for (int z = 0; z < C.nobj(); ++z) {
                const auto& table = C.comp[x][y][z];
                bool any = false;
                for (const auto& row : table)
                    for (const auto& v : row)
                        if (!v.empty()) any = true;
                if (!any) continue;
                out << "comp " << C.obj[x] << " " << C.obj[y] << " " << C.obj[z] << " {\n";
                for (size_t gi = 0; gi < table.size(); ++gi)
                    for (size_t fi = 0; fi < table[gi].size(); ++fi)
                        if (!table[gi][fi].empty())
                            out << "  " << C.hom[y][z].label[gi] << " " << C.hom[x][y].label[fi]
                                << " : " << emit_comb(table[gi][fi], C.hom[x][z]) << "\n";
                out << "}\n";
            }
    for (int x = 0; x < C.nobj(); ++x)
        if (!C.unit[x].empty())
            out << "unit " << C.obj[x] << " " << C.hom[x][x].label[C.unit[x].front().first] << "\n";
    for (const auto& [name, T] : P.twix) {
        out << "twix " << name << " {\n";
        for (const auto& e : T.ent)
            out << "  entry " << e.name << " " << e.shift.str() << " " << C.obj[e.obj] << "\n";
        for (const auto& [ab, m] : T.twist)
            out << "  twist " << T.ent[ab.first].name << " " << T.ent[ab.second].name << " : "
                << emit_comb(m.v, C.hom[m.src][m.dst]) << "\n";
        out << "}\n";
    }
    for (const auto& B : P.bimodules) {
        out << "bimodule " << B.name << " {\n";
        for (const auto& [xy, m] : B.comp) {
            if (m.dim() == 0) continue;
            out << "  component " << C.obj[xy.first] << " " << C.obj[xy.second] << " {\n";
            for (int i = 0; i < m.dim(); ++i)
                out << "    " << m.label[i] << " " << m.deg[i].str() << "\n";
            out << "  }\n";
        }
        for (const auto& [xy, d] : B.diff) {
            if (d.is_zero()) continue;
            const GradedModule& m = B.comp.at(xy);
            out << "  diff " << C.obj[xy.first] << " " << C.obj[xy.second] << " {\n";
            SMat tr = d.transpose();
            for (int j = 0; j < tr.rows; ++j)
                if (!tr.row[j].empty())
                    out << "    " << m.label[j] << " : " << emit_comb(tr.row[j], m) << "\n";
            out << "  }\n";
        }
        for (const auto& [key, table] : B.actl) {
            auto [a, b, c] = key;
            out << "  actl " << C.obj[a] << " " << C.obj[b] << " " << C.obj[c] << " {\n";
            for (const auto& [gm, v] : table)
                out << "    " << C.hom[b][a].label[gm.first] << " "
                    << B.comp.at({b, c}).label[gm.second] << " : "
                    << emit_comb(v, B.comp.at({a, c})) << "\n";
            out << "  }\n";
        }
        for (const auto& [key, table] : B.actr) {
            auto [a, b, c] = key;
            out << "  actr " << C.obj[a] << " " << C.obj[b] << " " << C.obj[c] << " {\n";
            for (const auto& [mg, v] : table)
                out << "    " << B.comp.at({a, b}).label[mg.first] << " "
                    << C.hom[c][b].label[mg.second] << " : " << emit_comb(v, B.comp.at({a, c}))
                    << "\n";
            out << "  }\n";
        }
        out << "}\n";
    }
    return out.str();
}

inline bool same_presentation(const Presentation& a, const Presentation& b) {
    const DgCat &A = a.cat, &B = b.cat;
    if (A.ring != B.ring || A.obj != B.obj) return false;
    if (A.grading.rank != B.grading.rank || A.grading.pairing != B.grading.pairing ||
        !(A.grading.iota == B.grading.iota))
        return false;
    for (int x = 0; x < A.nobj(); ++x)
        for (int y = 0; y < A.nobj(); ++y) {
            if (A.hom[x][y].label != B.hom[x][y].label || A.hom[x][y].deg != B.hom[x][y].deg)
                return false;
            if (!(A.diff[x][y] == B.diff[x][y])) return false;
            for (int z = 0; z < A.nobj(); ++z)
                if (A.comp[x][y][z] != B.comp[x][y][z]) return false;
        }
    for (int x = 0; x < A.nobj(); ++x)
        if (A.unit[x] != B.unit[x]) return false;
    if (a.twix.size() != b.twix.size()) return false;
    for (size_t i = 0; i < a.twix.size(); ++i) {
        if (a.twix[i].first != b.twix[i].first) return false;
        const TwixObject &S = a.twix[i].second, &T = b.twix[i].second;
        if (S.size() != T.size()) return false;
        for (int e = 0; e < S.size(); ++e)
            if (S.ent[e].name != T.ent[e].name || !(S.ent[e].shift == T.ent[e].shift) ||
                S.ent[e].obj != T.ent[e].obj)
                return false;
        if (S.twist.size() != T.twist.size()) return false;
        for (const auto& [ab, m] : S.twist) {
            auto it = T.twist.find(ab);
            if (it == T.twist.end() || it->second.v != m.v) return false;
        }
    }
    if (a.bimodules.size() != b.bimodules.size()) return false;
    for (size_t i = 0; i < a.bimodules.size(); ++i) {
        const BimodulePresentation &S = a.bimodules[i], &T = b.bimodules[i];
        if (S.name != T.name) return false;
        for (const auto& [xy, m] : S.comp) {
            if (m.dim() == 0) continue;
            auto it = T.comp.find(xy);
            if (it == T.comp.end() || it->second.label != m.label || it->second.deg != m.deg)
                return false;
        }
        for (const auto& [xy, d] : S.diff) {
            if (d.is_zero()) continue;
            auto it = T.diff.find(xy);
            if (it == T.diff.end() || !(it->second == d)) return false;
        }
        if (S.actl != T.actl || S.actr != T.actr) return false;
    }
    return true;
}

} // namespace dgc
