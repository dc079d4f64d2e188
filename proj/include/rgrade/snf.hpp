#pragma once

#include "abgroup.hpp"

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace rgrade {

/******** overflow-checked int64 arithmetic ********/

using i64 = int64_t;

inline i64 addc(i64 a, i64 b)
{
    i64 r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("integer overflow in add");
    return r;
}

inline i64 mulc(i64 a, i64 b)
{
    i64 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("integer overflow in mul");
    return r;
}

inline i64 negc(i64 a)
{
    if (a == INT64_MIN)
        throw std::overflow_error("integer overflow in neg");
    return -a;
}

/******** dense integer matrices ********/

struct IntMat
{
    int rows = 0;
    int cols = 0;
    std::vector<i64> a;  // row-major

    IntMat() = default;
    IntMat(int r, int c) : rows(r), cols(c), a(size_t(r) * size_t(c), 0) {}

    i64& at(int r, int c) { return a[size_t(r) * cols + c]; }
    i64 at(int r, int c) const { return a[size_t(r) * cols + c]; }

    static IntMat identity(int n)
    {
        IntMat m(n, n);
        for (int i = 0; i < n; ++i)
            m.at(i, i) = 1;
        return m;
    }

    IntMat mul(const IntMat& o) const
    {
        IntMat r(rows, o.cols);
        for (int i = 0; i < rows; ++i)
            for (int k = 0; k < cols; ++k) {
                i64 v = at(i, k);
                if (v == 0)
                    continue;
                for (int j = 0; j < o.cols; ++j)
                    if (o.at(k, j) != 0)
                        r.at(i, j) = addc(r.at(i, j), mulc(v, o.at(k, j)));
            }
        return r;
    }

    std::vector<i64> mulVec(const std::vector<i64>& x) const
    {
        std::vector<i64> r(size_t(rows), 0);
        for (int i = 0; i < rows; ++i) {
            i64 s = 0;
            for (int j = 0; j < cols; ++j)
                if (at(i, j) != 0 && x[size_t(j)] != 0)
                    s = addc(s, mulc(at(i, j), x[size_t(j)]));
            r[size_t(i)] = s;
        }
        return r;
    }

    IntMat hcat(const IntMat& o) const
    {
        IntMat r(rows, cols + o.cols);
        for (int i = 0; i < rows; ++i) {
            for (int j = 0; j < cols; ++j)
                r.at(i, j) = at(i, j);
            for (int j = 0; j < o.cols; ++j)
                r.at(i, cols + j) = o.at(i, j);
        }
        return r;
    }

    std::vector<i64> col(int j) const
    {
        std::vector<i64> c(size_t(rows));
        for (int i = 0; i < rows; ++i)
            c[size_t(i)] = at(i, j);
        return c;
    }
};

/******** Smith normal form ********/

/* U * A_orig * V = D with U, V unimodular and D diagonal,
 * d_1 | d_2 | ... | d_r, d_i > 0. */
struct SmithForm
{
    IntMat u, v, d;
    int rank = 0;
    std::vector<i64> diag;  // the positive invariant factors, length == rank
};

namespace detail {

inline void swapRows(IntMat& m, int r1, int r2)
{
    for (int j = 0; j < m.cols; ++j)
        std::swap(m.at(r1, j), m.at(r2, j));
}

inline void swapCols(IntMat& m, int c1, int c2)
{
    for (int i = 0; i < m.rows; ++i)
        std::swap(m.at(i, c1), m.at(i, c2));
}

inline void addRow(IntMat& m, int dst, int src, i64 c)  // row dst += c * row src
{
    for (int j = 0; j < m.cols; ++j)
        if (m.at(src, j) != 0)
            m.at(dst, j) = addc(m.at(dst, j), mulc(c, m.at(src, j)));
}

inline void addCol(IntMat& m, int dst, int src, i64 c)
{
    for (int i = 0; i < m.rows; ++i)
        if (m.at(i, src) != 0)
            m.at(i, dst) = addc(m.at(i, dst), mulc(c, m.at(i, src)));
}

inline void negRow(IntMat& m, int r)
{
    for (int j = 0; j < m.cols; ++j)
        m.at(r, j) = negc(m.at(r, j));
}

}  // namespace detail

inline SmithForm smithNormalForm(IntMat a)
{
    using namespace detail;
    SmithForm s;
    const int rows = a.rows, cols = a.cols;
    s.u = IntMat::identity(rows);
    s.v = IntMat::identity(cols);

    int p = 0;
    while (p < rows && p < cols) {
        // pick the nonzero entry of least magnitude in the trailing block
        int pr = -1, pc = -1;
        i64 best = 0;
        for (int i = p; i < rows; ++i)
            for (int j = p; j < cols; ++j) {
                i64 v = a.at(i, j);
                if (v != 0 && (pr < 0 || std::llabs(v) < best)) {
                    pr = i;
                    pc = j;
                    best = std::llabs(v);
                }
            }
        if (pr < 0)
            break;
        if (pr != p) {
            swapRows(a, p, pr);
            swapRows(s.u, p, pr);
        }
        if (pc != p) {
            swapCols(a, p, pc);
            swapCols(s.v, p, pc);
        }

        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = p + 1; i < rows; ++i) {
                if (a.at(i, p) == 0)
                    continue;
                i64 q = a.at(i, p) / a.at(p, p);
                if (q != 0) {
                    addRow(a, i, p, negc(q));
                    addRow(s.u, i, p, negc(q));
                }
                if (a.at(i, p) != 0) {  // remainder smaller than pivot: swap up and restart
                    swapRows(a, p, i);
                    swapRows(s.u, p, i);
                    clean = false;
                }
            }
            for (int j = p + 1; j < cols; ++j) {
                if (a.at(p, j) == 0)
                    continue;
                i64 q = a.at(p, j) / a.at(p, p);
                if (q != 0) {
                    addCol(a, j, p, negc(q));
                    addCol(s.v, j, p, negc(q));
                }
                if (a.at(p, j) != 0) {
                    swapCols(a, p, j);
                    swapCols(s.v, p, j);
                    clean = false;
                }
            }
        }

        // pivot must divide every remaining entry; if not, mix that row in and redo
        bool divides = true;
        for (int i = p + 1; i < rows && divides; ++i)
            for (int j = p + 1; j < cols && divides; ++j)
                if (a.at(i, j) % a.at(p, p) != 0) {
                    addRow(a, p, i, 1);
                    addRow(s.u, p, i, 1);
                    divides = false;
                }
        if (!divides)
            continue;

        if (a.at(p, p) < 0) {
            negRow(a, p);
            negRow(s.u, p);
        }
        ++p;
    }

    s.rank = p;
    for (int i = 0; i < p; ++i)
        s.diag.push_back(a.at(i, i));
    s.d = std::move(a);
    return s;
}

/* Basis of ker(A) as columns; the basis spans a direct summand of Z^cols. */
inline IntMat kernelBasis(const IntMat& a)
{
    SmithForm s = smithNormalForm(a);
    IntMat k(a.cols, a.cols - s.rank);
    for (int j = s.rank; j < a.cols; ++j)
        for (int i = 0; i < a.cols; ++i)
            k.at(i, j - s.rank) = s.v.at(i, j);
    return k;
}

/* One integer solution of A x = b, if any. */
inline bool solve(const SmithForm& s, const std::vector<i64>& b, std::vector<i64>& x)
{
    std::vector<i64> c = s.u.mulVec(b);
    std::vector<i64> y(size_t(s.v.cols), 0);
    for (int i = 0; i < s.rank; ++i) {
        if (c[size_t(i)] % s.diag[size_t(i)] != 0)
            return false;
        y[size_t(i)] = c[size_t(i)] / s.diag[size_t(i)];
    }
    for (int i = s.rank; i < int(c.size()); ++i)
        if (c[size_t(i)] != 0)
            return false;
    x = s.v.mulVec(y);
    return true;
}

/******** cokernels and 2-localization ********/

inline int twoValuation(i64 d)
{
    int e = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++e;
    }
    return e;
}

/* Z^rows / colspan(A), 2-localized, plus the data needed to map vectors to
 * canonical coordinates (torsion coords first, then free coords). */
struct Cokernel
{
    AbGroup group;              // 2-localized canonical form
    IntMat u;                   // row transform from the SNF
    std::vector<i64> torsMod;   // 2-power moduli, one per torsion coordinate
    std::vector<int> torsRow;   // row of u giving each torsion coordinate
    std::vector<int> freeRow;   // rows of u giving free coordinates

    int coords() const { return int(torsMod.size() + freeRow.size()); }

    std::vector<i64> classOf(const std::vector<i64>& x) const
    {
        std::vector<i64> ux = u.mulVec(x);
        std::vector<i64> c;
        c.reserve(size_t(coords()));
        for (size_t t = 0; t < torsMod.size(); ++t) {
            i64 m = torsMod[t];
            i64 v = ux[size_t(torsRow[t])] % m;
            if (v < 0)
                v += m;
            c.push_back(v);
        }
        for (int r : freeRow)
            c.push_back(ux[size_t(r)]);
        return c;
    }
};

inline Cokernel cokernel(const IntMat& a)
{
    Cokernel c;
    SmithForm s = smithNormalForm(a);
    c.u = std::move(s.u);
    std::vector<int> torsExp;
    for (int i = 0; i < s.rank; ++i) {
        i64 d = s.diag[size_t(i)];
        if (d == 1)
            continue;
        int e = twoValuation(d);
        if (e == 0)
            continue;  // odd torsion is invisible 2-locally
        torsExp.push_back(e);
        c.torsMod.push_back(i64(1) << e);
        c.torsRow.push_back(i);
    }
    for (int i = s.rank; i < a.rows; ++i)
        c.freeRow.push_back(i);
    c.group = AbGroup(int(c.freeRow.size()), torsExp);
    return c;
}

/******** homology of complexes of finitely presented abelian groups ********/

/* Term i of a cochain complex: coker(rel_i) with the differential given on
 * the free covers; covers must satisfy d_{i+1} d_i = 0 exactly. */
struct FpComplex
{
    std::vector<IntMat> rel;  // rel[i]: presentation of term i (rows = cover rank)
    std::vector<IntMat> d;    // d[i]: cover of term i -> cover of term i+1
};

/* H^i together with a way to map cover vectors to canonical coordinates. */
struct HomologyGroup
{
    AbGroup group;
    IntMat gens;      // columns: cover vectors generating ker(d_i) mod rel
    Cokernel pres;    // presentation of H^i on those generators
    SmithForm gsnf;   // SNF of gens, for expressing cycles in the generators

    /* canonical coordinates of the homology class of a cycle x */
    std::vector<i64> classOf(const std::vector<i64>& x) const
    {
        std::vector<i64> z;
        if (!solve(gsnf, x, z))
            throw std::runtime_error("homology classOf: vector is not a cycle");
        return pres.classOf(z);
    }
};

/* Homology at position i: {x : d_i x in im rel_{i+1}} / (im d_{i-1} + im rel_i).
 * Pass zero-column matrices for missing neighbours. */
inline HomologyGroup homologyAt(const IntMat& relHere, const IntMat& dIn, const IntMat& relNext,
                                const IntMat& dOut)
{
    HomologyGroup h;
    const int b = relHere.rows;
    if (dOut.cols != b || dIn.rows != b || relNext.rows != dOut.rows)
        throw std::invalid_argument("homologyAt: inconsistent shapes");

    // generators of the cycle subgroup: project ker[dOut | relNext] to the first block
    IntMat big = dOut.hcat(relNext);
    IntMat kb = kernelBasis(big);
    IntMat gens(b, kb.cols);
    for (int i = 0; i < b; ++i)
        for (int j = 0; j < kb.cols; ++j)
            gens.at(i, j) = kb.at(i, j);
    h.gens = gens;
    h.gsnf = smithNormalForm(gens);

    // relations on those generators: syzygies plus boundaries and term relations
    IntMat bdry = dIn.hcat(relHere);
    IntMat relColumns(kb.cols, bdry.cols);
    for (int j = 0; j < bdry.cols; ++j) {
        std::vector<i64> z;
        if (!solve(h.gsnf, bdry.col(j), z))
            throw std::runtime_error("homologyAt: boundary is not a cycle");
        for (int i = 0; i < kb.cols; ++i)
            relColumns.at(i, j) = z[size_t(i)];
    }
    IntMat syz = kernelBasis(gens);
    IntMat allRel = relColumns.hcat(syz);

    h.pres = cokernel(allRel);
    h.group = h.pres.group;
    return h;
}

/* Matrix of a map between groups in canonical coordinates; f is given on the
 * source homology generators (columns = images in target canonical coords). */
inline bool isIsomorphism(const AbGroup& src, const AbGroup& tgt, const IntMat& mapInTargetCoords)
{
    if (!(src == tgt))
        return false;
    if (src.isZero())
        return true;
    // surjective endomorphism-shape between equal f.g. groups is an isomorphism
    int nt = tgt.torsionRank();
    IntMat rel(mapInTargetCoords.rows, nt);
    for (int t = 0; t < nt; ++t)
        rel.at(t, t) = i64(1) << tgt.torsion[size_t(t)];
    IntMat full = mapInTargetCoords.hcat(rel);
    Cokernel c = cokernel(full);
    return c.group.isZero();
}

}  // namespace rgrade
