#pragma once

#include "grading.hpp"

#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace rgrade {

/* The rings in play, all quotients of P = Z_(2)[vb_1..vb_n]:
 * level l integral = Z[vb_{l+1}..vb_n], level l mod-2 = F2[vb_{l+1}..vb_n].
 * vb_i raises rho-degree by w_i = 2^i - 1. */

enum class Coeff
{
    Z,   // 2-local integral
    F2,  // mod 2
};

inline std::string coeffStr(Coeff c) { return c == Coeff::Z ? "Z" : "F2"; }

/* Number of monomials of rho-degree k in the variables of ring level `level`. */
inline int ringDim(const GeneratorDegrees& gd, int level, int k)
{
    if (k < 0)
        return 0;
    if (level >= gd.n)
        return k == 0 ? 1 : 0;
    static std::map<std::pair<int, int>, std::vector<int>> cache;  // (n, level) -> dims
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto& dims = cache[{gd.n, level}];
    if (k >= int(dims.size())) {
        size_t old = dims.size();
        dims.resize(size_t(k) + 1, 0);
        if (old == 0) {
            dims[0] = 1;
            old = 1;
        }
        // rebuild from scratch: classic bounded-knapsack count, variables w_{level+1}..w_n
        std::fill(dims.begin(), dims.end(), 0);
        dims[0] = 1;
        for (int i = level + 1; i <= gd.n; ++i) {
            int w = gd.weight(i);
            for (int d = w; d < int(dims.size()); ++d)
                dims[size_t(d)] += dims[size_t(d - w)];
        }
    }
    return dims[size_t(k)];
}

/* Exponent vectors (e_{level+1}..e_n) with sum e_i * w_i = k. */
inline std::vector<std::vector<int>> monomialsOfDegree(const GeneratorDegrees& gd, int level, int k)
{
    std::vector<std::vector<int>> out;
    if (k < 0)
        return out;
    std::vector<int> expo(size_t(gd.n - level), 0);
    auto rec = [&](auto&& self, int idx, int rem) -> void {
        if (idx == gd.n - level) {
            if (rem == 0)
                out.push_back(expo);
            return;
        }
        int w = gd.weight(level + 1 + idx);
        // last variable: take exactly rem/w if divisible
        for (int e = 0; e * w <= rem; ++e) {
            expo[size_t(idx)] = e;
            self(self, idx + 1, rem - e * w);
        }
        expo[size_t(idx)] = 0;
    };
    rec(rec, 0, k);
    return out;
}

inline std::string ringName(int level, Coeff c, int n)
{
    if (c == Coeff::Z)
        return level == 0 ? "P" : "P_" + std::to_string(level);
    if (level >= n)
        return "F2";
    return "Pb_" + std::to_string(level);
}

}  // namespace rgrade
