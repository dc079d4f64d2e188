#pragma once

#include "module.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>

namespace rgrade {

/******** degreewise lattice models of the standard modules ********/

/* A standard module piece-by-piece: monomial-indexed lattice bases on which
 * multiplication by vb_j^t lands on a single basis element (or dies).  Mod-2
 * modules carry a 2*id relation block per piece; the integral ideal
 * (2, vb_1..vb_m)P uses the honest lattice basis {divisible monomials} u
 * {2 * non-divisible monomials}. */
class LatticeModel
{
public:
    struct Basis
    {
        std::vector<std::vector<int>> expo;  // full exponent vectors, vb_1..vb_n
        std::vector<i64> scale;              // 1, or 2 for the doubled generators
        std::map<std::vector<int>, int> idx;
        int size() const { return int(expo.size()); }
    };

    LatticeModel(const GeneratorDegrees& gd, const StandardName& name) : gd_(gd), name_(name)
    {
        if (name.ideal && name.coeff == Coeff::Z && !name.has2)
            throw std::invalid_argument("LatticeModel: integral v-ideal without 2 not supported");
    }

    const GeneratorDegrees& gd() const { return gd_; }
    const StandardName& name() const { return name_; }
    bool mod2() const { return name_.coeff == Coeff::F2; }

    const Basis& basis(int k) const
    {
        std::lock_guard<std::mutex> lock(mtx_);
        auto it = cache_.find(k);
        if (it != cache_.end())
            return *it->second;
        auto b = std::make_unique<Basis>(buildBasis(k));
        auto* p = b.get();
        cache_.emplace(k, std::move(b));
        return *p;
    }

    /* image of basis element b of degree k under vb_j^t; nullopt when zero */
    std::optional<std::pair<int, i64>> mulImage(int k, int b, int j, int t) const
    {
        if (j <= name_.level)
            return std::nullopt;  // killed variable of the ambient ring
        const Basis& from = basis(k);
        const Basis& to = basis(k + t * gd_.weight(j));
        std::vector<int> e = from.expo[size_t(b)];
        e[size_t(j - 1)] += t;
        auto it = to.idx.find(e);
        if (it == to.idx.end())
            throw std::logic_error("LatticeModel::mulImage: image not in basis");
        i64 coeff = from.scale[size_t(b)] / to.scale[size_t(it->second)];
        return std::make_pair(it->second, coeff);
    }

private:
    Basis buildBasis(int k) const
    {
        Basis b;
        if (k < 0)
            return b;
        bool divisibleOnly = name_.ideal && !name_.has2;   // F2 prefix ideal
        bool latticeWith2 = name_.ideal && name_.has2;     // (2, vb..)P
        for (auto& expo : monomialsOfDegree(gd_, name_.level, k)) {
            // expo is over vb_{level+1}..vb_n; extend to the full variable list
            std::vector<int> full(size_t(gd_.n), 0);
            for (size_t i = 0; i < expo.size(); ++i)
                full[size_t(name_.level) + i] = expo[i];
            bool divisible = false;
            for (int i = 0; i < name_.vcount; ++i)
                if (full[size_t(name_.level + i)] > 0)
                    divisible = true;
            if (divisibleOnly && !divisible)
                continue;
            i64 scale = latticeWith2 && !divisible ? 2 : 1;
            b.idx[full] = b.size();
            b.expo.push_back(full);
            b.scale.push_back(scale);
        }
        return b;
    }

    GeneratorDegrees gd_;
    StandardName name_;
    mutable std::mutex mtx_;
    mutable std::map<int, std::unique_ptr<Basis>> cache_;
};

/******** stable Koszul complexes, one internal degree at a time ********/

/* Koszul cochain complex on (vb_1^t, .., vb_n^t) in internal rho-degree d:
 * C^i = sum over |S| = i of M_{d + t*sigma_S}.  Nodes are (S, basis element);
 * the differential maps each node to single nodes, so the complex splits into
 * small connected components. */
struct KoszulHomology
{
    std::vector<AbGroup> h;  // h[i], i = 0..n

    struct Component
    {
        std::vector<int> nodes;                   // global node ids, sorted
        std::map<int, int> nodeSlot;              // node id -> position within its term
        std::vector<HomologyGroup> hom;           // per cohomological degree
    };
    // internals kept for the comparison maps
    std::vector<int> nodeMask;                    // per node: subset bitmask
    std::vector<int> nodeBasis;                   // per node: basis index in its piece
    std::vector<int> nodeComp;                    // per node: component index
    std::vector<Component> comps;
    std::vector<std::vector<int>> compCoordOffset;  // [i][comp] -> offset into h[i] coords
    std::vector<int> maskOffset;                    // node id offset per mask
    int n = 0;
};

namespace koszul_detail {

inline int sigmaOf(const GeneratorDegrees& gd, int mask)
{
    int s = 0;
    for (int j = 1; j <= gd.n; ++j)
        if (mask & (1 << (j - 1)))
            s += gd.weight(j);
    return s;
}

inline int koszulSign(int j, int mask)  // (-1)^{#elements of mask below j}
{
    int below = mask & ((1 << (j - 1)) - 1);
    return __builtin_popcount(unsigned(below)) % 2 == 0 ? 1 : -1;
}

struct DSU
{
    std::vector<int> p;
    explicit DSU(int n) : p(size_t(n)) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[size_t(x)] == x ? x : p[size_t(x)] = find(p[size_t(x)]); }
    void unite(int a, int b) { p[size_t(find(a))] = find(b); }
};

}  // namespace koszul_detail

inline KoszulHomology koszulHomologyAt(const LatticeModel& model, int d, int t)
{
    using namespace koszul_detail;
    const GeneratorDegrees& gd = model.gd();
    const int n = gd.n;
    const int nMasks = 1 << n;

    KoszulHomology out;
    out.n = n;
    out.maskOffset.assign(size_t(nMasks) + 1, 0);
    std::vector<const LatticeModel::Basis*> pieceBasis(size_t(nMasks));
    for (int mask = 0; mask < nMasks; ++mask) {
        pieceBasis[size_t(mask)] = &model.basis(d + t * sigmaOf(gd, mask));
        out.maskOffset[size_t(mask) + 1] =
            out.maskOffset[size_t(mask)] + pieceBasis[size_t(mask)]->size();
    }
    const int nNodes = out.maskOffset[size_t(nMasks)];
    out.nodeMask.resize(size_t(nNodes));
    out.nodeBasis.resize(size_t(nNodes));
    for (int mask = 0; mask < nMasks; ++mask)
        for (int b = 0; b < pieceBasis[size_t(mask)]->size(); ++b) {
            int id = out.maskOffset[size_t(mask)] + b;
            out.nodeMask[size_t(id)] = mask;
            out.nodeBasis[size_t(id)] = b;
        }

    // differential edges
    struct Edge
    {
        int src, dst;
        i64 c;
    };
    std::vector<Edge> edges;
    for (int id = 0; id < nNodes; ++id) {
        int mask = out.nodeMask[size_t(id)];
        int deg = d + t * sigmaOf(gd, mask);
        for (int j = 1; j <= n; ++j) {
            if (mask & (1 << (j - 1)))
                continue;
            auto im = model.mulImage(deg, out.nodeBasis[size_t(id)], j, t);
            if (!im)
                continue;
            int dstMask = mask | (1 << (j - 1));
            int dst = out.maskOffset[size_t(dstMask)] + im->first;
            edges.push_back({id, dst, koszulSign(j, mask) * im->second});
        }
    }

    // connected components
    DSU dsu(nNodes);
    for (auto& e : edges)
        dsu.unite(e.src, e.dst);
    std::map<int, int> rootToComp;
    for (int id = 0; id < nNodes; ++id) {
        int r = dsu.find(id);
        if (!rootToComp.count(r))
            rootToComp[r] = int(rootToComp.size());
    }
    out.comps.resize(rootToComp.size());
    out.nodeComp.resize(size_t(nNodes));
    for (int id = 0; id < nNodes; ++id) {
        int c = rootToComp[dsu.find(id)];
        out.nodeComp[size_t(id)] = c;
        out.comps[size_t(c)].nodes.push_back(id);
    }

    // per-component homology
    out.h.assign(size_t(n) + 1, AbGroup());
    out.compCoordOffset.assign(size_t(n) + 1, std::vector<int>(out.comps.size() + 1, 0));
    std::vector<std::vector<Edge>> compEdges(out.comps.size());
    for (auto& e : edges)
        compEdges[size_t(out.nodeComp[size_t(e.src)])].push_back(e);

    for (size_t ci = 0; ci < out.comps.size(); ++ci) {
        auto& comp = out.comps[ci];
        // local term sizes and node slots per cohomological degree
        std::vector<std::vector<int>> termNodes(size_t(n) + 1);
        for (int id : comp.nodes) {
            int i = __builtin_popcount(unsigned(out.nodeMask[size_t(id)]));
            comp.nodeSlot[id] = int(termNodes[size_t(i)].size());
            termNodes[size_t(i)].push_back(id);
        }
        std::vector<IntMat> rel(size_t(n) + 2), dmat(size_t(n) + 2);
        for (int i = 0; i <= n + 1; ++i) {
            int rows = i <= n ? int(termNodes[size_t(i)].size()) : 0;
            if (model.mod2()) {
                rel[size_t(i)] = IntMat(rows, rows);
                for (int r = 0; r < rows; ++r)
                    rel[size_t(i)].at(r, r) = 2;
            }
            else
                rel[size_t(i)] = IntMat(rows, 0);
        }
        for (int i = 0; i <= n + 1; ++i) {
            int rows = i + 1 <= n ? int(termNodes[size_t(i) + 1].size()) : 0;
            int cols = i <= n ? int(termNodes[size_t(i)].size()) : 0;
            dmat[size_t(i)] = IntMat(rows, cols);
        }
        for (auto& e : compEdges[ci]) {
            int i = __builtin_popcount(unsigned(out.nodeMask[size_t(e.src)]));
            dmat[size_t(i)].at(comp.nodeSlot[e.dst], comp.nodeSlot[e.src]) = e.c;
        }
        comp.hom.resize(size_t(n) + 1);
        for (int i = 0; i <= n; ++i) {
            IntMat dIn = i == 0 ? IntMat(int(termNodes[0].size()), 0) : dmat[size_t(i) - 1];
            if (i == 0)
                dIn = IntMat(int(termNodes[0].size()), 0);
            comp.hom[size_t(i)] =
                homologyAt(rel[size_t(i)], dIn, rel[size_t(i) + 1], dmat[size_t(i)]);
            out.compCoordOffset[size_t(i)][ci + 1] =
                out.compCoordOffset[size_t(i)][ci] + comp.hom[size_t(i)].pres.coords();
            out.h[size_t(i)] = out.h[size_t(i)] + comp.hom[size_t(i)].group;
        }
    }
    return out;
}

/* Matrix of the comparison map H^i(K_t) -> H^i(K_{t+1}) (multiplication by
 * prod_{j in S} vb_j on the e_S component) in canonical coordinates. */
inline IntMat comparisonMatrix(const LatticeModel& model, int d, int t, const KoszulHomology& src,
                               const KoszulHomology& tgt, int i)
{
    using namespace koszul_detail;
    const GeneratorDegrees& gd = model.gd();
    const int n = gd.n;

    auto mapNode = [&](int id) -> std::optional<std::pair<int, i64>> {
        int mask = src.nodeMask[size_t(id)];
        int deg = d + t * sigmaOf(gd, mask);
        int b = src.nodeBasis[size_t(id)];
        i64 coeff = 1;
        for (int j = 1; j <= n; ++j) {
            if (!(mask & (1 << (j - 1))))
                continue;
            auto im = model.mulImage(deg, b, j, 1);
            if (!im)
                return std::nullopt;
            deg += gd.weight(j);
            b = im->first;
            coeff = mulc(coeff, im->second);
        }
        return std::make_pair(tgt.maskOffset[size_t(mask)] + b, coeff);
    };

    int srcCoords = 0, tgtCoords = 0;
    for (auto& c : src.comps)
        srcCoords += c.hom[size_t(i)].pres.coords();
    for (auto& c : tgt.comps)
        tgtCoords += c.hom[size_t(i)].pres.coords();
    IntMat out(tgtCoords, srcCoords);

    for (size_t ci = 0; ci < src.comps.size(); ++ci) {
        auto& comp = src.comps[ci];
        auto& hg = comp.hom[size_t(i)];
        int colBase = src.compCoordOffset[size_t(i)][ci];
        // rows of gens are the term-i nodes of this component in slot order
        std::vector<int> termNodes;
        for (int id : comp.nodes)
            if (__builtin_popcount(unsigned(src.nodeMask[size_t(id)])) == i)
                termNodes.push_back(id);
        for (int g = 0; g < hg.gens.cols; ++g) {
            // push the generator cycle through the comparison map
            std::map<size_t, std::vector<i64>> imageByTargetComp;  // comp -> local vector
            for (int r = 0; r < hg.gens.rows; ++r) {
                i64 v = hg.gens.at(r, g);
                if (v == 0)
                    continue;
                auto im = mapNode(termNodes[size_t(r)]);
                if (!im)
                    continue;
                int tgtNode = im->first;
                size_t tc = size_t(tgt.nodeComp[size_t(tgtNode)]);
                auto& vec = imageByTargetComp[tc];
                auto& tcomp = tgt.comps[tc];
                int tTermSize = 0;
                for (int id2 : tcomp.nodes)
                    if (__builtin_popcount(unsigned(tgt.nodeMask[size_t(id2)])) == i)
                        ++tTermSize;
                if (vec.empty())
                    vec.assign(size_t(tTermSize), 0);
                // slot of tgtNode within its term
                int slot = 0;
                for (int id2 : tcomp.nodes) {
                    if (id2 == tgtNode)
                        break;
                    if (__builtin_popcount(unsigned(tgt.nodeMask[size_t(id2)])) == i)
                        ++slot;
                }
                vec[size_t(slot)] = addc(vec[size_t(slot)], mulc(v, im->second));
            }
            for (auto& [tc, vec] : imageByTargetComp) {
                auto coords = tgt.comps[tc].hom[size_t(i)].classOf(vec);
                int rowBase = tgt.compCoordOffset[size_t(i)][tc];
                for (size_t r = 0; r < coords.size(); ++r)
                    out.at(rowBase + int(r), colBase + g) =
                        addc(out.at(rowBase + int(r), colBase + g), coords[r]);
            }
        }
    }
    return out;
}

}  // namespace rgrade
