#pragma once

#include "chart.hpp"
#include "ring.hpp"
#include "snf.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace rgrade {

/******** names of the standard modules ********/

/* Every module appearing in the block tables: a ring P_l / Pb_l, or an ideal of
 * one generated by a prefix (2, vb_{l+1}, ..., vb_{l+m}). */
struct StandardName
{
    Coeff coeff = Coeff::Z;
    int level = 0;
    bool ideal = false;
    bool has2 = false;     // ideal contains the generator 2 (integral only)
    int vcount = 0;        // ideal contains vb_{level+1} .. vb_{level+vcount}

    bool operator==(const StandardName&) const = default;

    int quotientLevel() const { return level + vcount; }  // ring mod the v-generators

    std::string str() const
    {
        std::string ring = coeff == Coeff::Z ? (level == 0 ? "P" : "P_" + std::to_string(level))
                                             : "Pb" + std::to_string(level);
        if (!ideal)
            return ring;
        std::string g;
        if (has2)
            g = "2";
        for (int i = 1; i <= vcount; ++i) {
            if (!g.empty())
                g += ",";
            g += "v" + std::to_string(level + i);
        }
        return "(" + g + ")" + ring;
    }
};

inline StandardName ringP() { return {}; }
inline StandardName ringPb(int level) { return {Coeff::F2, level, false, false, 0}; }

inline StandardName idealName(Coeff c, int level, bool has2, int vcount)
{
    StandardName s{c, level, true, has2, vcount};
    if (c == Coeff::F2 && has2)
        throw std::invalid_argument("idealName: generator 2 is zero mod 2");
    if (!has2 && vcount == 0)
        throw std::invalid_argument("idealName: empty generator list");
    return s;
}

/* Parse "P", "Pb2", "(2,v1)P", "(v2,v3)Pb1", ... */
inline StandardName parseStandardName(const std::string& s, int n)
{
    auto ringOf = [&](const std::string& r) -> std::pair<Coeff, int> {
        if (r == "P")
            return {Coeff::Z, 0};
        if (r == "F2")
            return {Coeff::F2, n};
        if (r.rfind("P_", 0) == 0)
            return {Coeff::Z, std::stoi(r.substr(2))};
        if (r.rfind("Pb", 0) == 0)
            return {Coeff::F2, std::stoi(r.substr(2))};
        throw std::invalid_argument("parseStandardName: bad ring '" + r + "'");
    };
    if (s.empty())
        throw std::invalid_argument("parseStandardName: empty");
    if (s[0] != '(') {
        auto [c, l] = ringOf(s);
        return {c, l, false, false, 0};
    }
    auto close = s.find(')');
    if (close == std::string::npos)
        throw std::invalid_argument("parseStandardName: missing ')'");
    auto [c, l] = ringOf(s.substr(close + 1));
    StandardName out{c, l, true, false, 0};
    std::stringstream ss(s.substr(1, close - 1));
    std::string tok;
    std::vector<int> vs;
    while (std::getline(ss, tok, ',')) {
        if (tok == "2")
            out.has2 = true;
        else if (tok.size() >= 2 && tok[0] == 'v')
            vs.push_back(std::stoi(tok.substr(1)));
        else
            throw std::invalid_argument("parseStandardName: bad generator '" + tok + "'");
    }
    for (size_t i = 0; i < vs.size(); ++i)
        if (vs[i] != out.level + 1 + int(i))
            throw std::invalid_argument("parseStandardName: generators must be the prefix of the ring's variables");
    out.vcount = int(vs.size());
    if (out.level + out.vcount > n)
        throw std::invalid_argument("parseStandardName: generator beyond vb_n");
    if (out.coeff == Coeff::F2 && out.has2)
        throw std::invalid_argument("parseStandardName: 2 is not a generator mod 2");
    if (out.ideal && !out.has2 && out.vcount == 0)
        throw std::invalid_argument("parseStandardName: empty ideal");
    return out;
}

/* Graded-piece sizes by monomial counting (the production fast path and the
 * shape every brute-force check reduces to). */
inline AbGroup standardDims(const GeneratorDegrees& gd, const StandardName& m, int k)
{
    if (k < 0)
        return {};
    int full = ringDim(gd, m.level, k);
    if (!m.ideal) {
        return m.coeff == Coeff::Z ? groupZ(full) : groupF2(full);
    }
    if (m.coeff == Coeff::Z) {
        if (m.has2)
            return groupZ(full);  // contains 2 * (every monomial)
        int quot = ringDim(gd, m.quotientLevel(), k);
        return groupZ(full - quot);
    }
    int quot = ringDim(gd, m.quotientLevel(), k);
    return groupF2(full - quot);
}

/******** finite presentations over P ********/

struct PolyTerm
{
    i64 c;
    std::vector<int> expo;  // length n, exponents of vb_1..vb_n
};
using Poly = std::vector<PolyTerm>;

struct Relation
{
    int degree;                     // common rho-degree of all entries
    std::vector<Poly> entries;      // one per generator
};

/* A finitely presented graded module over P = Z_(2)[vb_1..vb_n].
 * Mod-2 quotients are presented integrally with 2e relations. */
struct PresentedModule
{
    GeneratorDegrees gd;
    Coeff coeff = Coeff::Z;
    std::optional<StandardName> name;  // set for standard modules
    std::vector<int> genDegrees;       // rho-degree of each generator
    std::vector<Relation> relations;
    RODegree basepoint{0, 0};

    explicit PresentedModule(int n) : gd(n) {}
};

namespace detail {

inline Poly monoPoly(i64 c, int n, int var /*1-based, 0 = unit*/)
{
    PolyTerm t{c, std::vector<int>(size_t(n), 0)};
    if (var > 0)
        t.expo[size_t(var - 1)] = 1;
    return {t};
}

}  // namespace detail

/* Presentation of a standard module; basepoint = absolute position of rho-degree 0. */
inline PresentedModule standardModule(const GeneratorDegrees& gd, const StandardName& name,
                                      RODegree basepoint = {0, 0})
{
    if (name.level < 0 || name.level > gd.n)
        throw std::invalid_argument("standardModule: bad ring level");
    if (name.level + name.vcount > gd.n)
        throw std::invalid_argument("standardModule: ideal generator not in ring");
    const int n = gd.n;
    PresentedModule mod(n);
    mod.coeff = name.coeff;
    mod.name = name;
    mod.basepoint = basepoint;

    // generator degrees and their ring elements
    struct G
    {
        int var;  // 0 for the generator 2, else the vb index
        i64 c;    // leading coefficient: 2 for var==0, 1 otherwise
        int deg;
    };
    std::vector<G> gens;
    if (!name.ideal)
        gens.push_back({-1, 1, 0});  // the unit generator
    else {
        if (name.has2)
            gens.push_back({0, 2, 0});
        for (int i = 1; i <= name.vcount; ++i)
            gens.push_back({name.level + i, 1, gd.weight(name.level + i)});
    }
    for (auto& g : gens)
        mod.genDegrees.push_back(g.deg);

    auto zeroEntries = [&] { return std::vector<Poly>(gens.size()); };

    // ambient ring relations: killed variables and, mod 2, the 2e relations
    for (size_t gi = 0; gi < gens.size(); ++gi) {
        for (int i = 1; i <= name.level; ++i) {
            Relation r{gens[gi].deg + gd.weight(i), zeroEntries()};
            r.entries[gi] = detail::monoPoly(1, n, i);
            mod.relations.push_back(std::move(r));
        }
        if (name.coeff == Coeff::F2) {
            Relation r{gens[gi].deg, zeroEntries()};
            r.entries[gi] = detail::monoPoly(2, n, 0);
            mod.relations.push_back(std::move(r));
        }
    }

    // Koszul syzygies between the ideal generators (they form a regular sequence)
    for (size_t i = 0; i < gens.size(); ++i)
        for (size_t j = i + 1; j < gens.size(); ++j) {
            Relation r{gens[i].deg + gens[j].deg, zeroEntries()};
            r.entries[i] = detail::monoPoly(gens[j].c, n, gens[j].var > 0 ? gens[j].var : 0);
            r.entries[j] = detail::monoPoly(-gens[i].c, n, gens[i].var > 0 ? gens[i].var : 0);
            mod.relations.push_back(std::move(r));
        }
    return mod;
}

/******** graded pieces ********/

/* Basis of the degree-k piece of the free cover: pairs (generator, monomial). */
struct DegreeBasis
{
    struct Elt
    {
        int gen;
        std::vector<int> expo;
    };
    std::vector<Elt> elems;
    std::map<std::pair<int, std::vector<int>>, int> index;

    int size() const { return int(elems.size()); }
    int find(int gen, const std::vector<int>& expo) const
    {
        auto it = index.find({gen, expo});
        return it == index.end() ? -1 : it->second;
    }
};

inline DegreeBasis degreeBasis(const PresentedModule& m, int k)
{
    DegreeBasis b;
    for (int g = 0; g < int(m.genDegrees.size()); ++g) {
        for (auto& expo : monomialsOfDegree(m.gd, 0, k - m.genDegrees[size_t(g)])) {
            b.index[{g, expo}] = b.size();
            b.elems.push_back({g, expo});
        }
    }
    return b;
}

/* Columns: all monomial multiples of the relations landing in degree k. */
inline IntMat relationMatrix(const PresentedModule& m, int k, const DegreeBasis& rows)
{
    std::vector<std::vector<i64>> cols;
    for (auto& rel : m.relations) {
        for (auto& mono : monomialsOfDegree(m.gd, 0, k - rel.degree)) {
            std::vector<i64> col(size_t(rows.size()), 0);
            for (int g = 0; g < int(rel.entries.size()); ++g) {
                for (auto& term : rel.entries[size_t(g)]) {
                    std::vector<int> e = term.expo;
                    for (size_t i = 0; i < e.size(); ++i)
                        e[i] += mono[i];
                    int r = rows.find(g, e);
                    if (r < 0)
                        throw std::logic_error("relationMatrix: monomial out of basis");
                    col[size_t(r)] = addc(col[size_t(r)], term.c);
                }
            }
            cols.push_back(std::move(col));
        }
    }
    IntMat a(rows.size(), int(cols.size()));
    for (int j = 0; j < a.cols; ++j)
        for (int i = 0; i < a.rows; ++i)
            a.at(i, j) = cols[size_t(j)][size_t(i)];
    return a;
}

/* Exact degree-k piece as a canonical 2-local abelian group. */
inline AbGroup gradedPiece(const PresentedModule& m, int k)
{
    DegreeBasis rows = degreeBasis(m, k);
    if (rows.size() == 0)
        return {};
    return cokernel(relationMatrix(m, k, rows)).group;
}

/* Matrix of multiplication by vb_j^t from degree k to degree k + t*w_j,
 * on the free covers. */
inline IntMat mulMatrix(const PresentedModule& m, int j, int t, const DegreeBasis& from,
                        const DegreeBasis& to)
{
    IntMat a(to.size(), from.size());
    for (int c = 0; c < from.size(); ++c) {
        std::vector<int> e = from.elems[size_t(c)].expo;
        e[size_t(j - 1)] += t;
        int r = to.find(from.elems[size_t(c)].gen, e);
        if (r < 0)
            throw std::logic_error("mulMatrix: image out of basis");
        a.at(r, c) = 1;
    }
    return a;
}

/******** charts of modules ********/

/* Places gradedPiece(M, k) at basepoint + k*rho, clipped to the window. */
inline Chart moduleChart(const PresentedModule& m, Window window)
{
    Chart c;
    c.window = window;
    int kmin = std::max(window.xmin - m.basepoint.x, window.ymin - m.basepoint.y);
    int kmax = std::min(window.xmax - m.basepoint.x, window.ymax - m.basepoint.y);
    for (int k = std::max(kmin, 0); k <= kmax; ++k)
        c.add(m.basepoint + k * kRho, gradedPiece(m, k));
    return c;
}

/* Graded dual: the group at basepoint + k*rho moves to basepoint - k*rho.
 * Free ranks and F2 ranks are preserved (Hom to Z / Hom to F2). */
inline Chart dualChart(const Chart& in, RODegree basepoint)
{
    Chart out;
    auto& w = in.window;
    out.window = {2 * basepoint.x - w.xmax, 2 * basepoint.x - w.xmin, 2 * basepoint.y - w.ymax,
                  2 * basepoint.y - w.ymin};
    for (auto& [v, g] : in.entries)
        out.add(2 * basepoint - v, g);
    return out;
}

}  // namespace rgrade
