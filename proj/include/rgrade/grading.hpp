#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rgrade {

/* Degrees x + y*sigma in RO(Q) for Q of order 2, displayed at (x, y).
 * rho = 1 + sigma, so the diagonal through delta is {delta + k*rho}. */
struct RODegree
{
    int x = 0;
    int y = 0;

    friend RODegree operator+(RODegree a, RODegree b) { return {a.x + b.x, a.y + b.y}; }
    friend RODegree operator-(RODegree a, RODegree b) { return {a.x - b.x, a.y - b.y}; }
    RODegree operator-() const { return {-x, -y}; }
    friend RODegree operator*(int c, RODegree a) { return {c * a.x, c * a.y}; }
    auto operator<=>(const RODegree&) const = default;

    int diagonal() const { return x - y; }
    int total() const { return x + y; }
    std::string str() const { return "(" + std::to_string(x) + "," + std::to_string(y) + ")"; }
};

inline constexpr RODegree kRho{1, 1};
inline constexpr RODegree kSigma{0, 1};
inline constexpr RODegree kDegA{0, -1};   // Euler class a, degree -sigma
inline constexpr RODegree kDegU{2, -2};   // orientation class u, degree 2(1-sigma)

inline int diagonalOf(RODegree v) { return v.diagonal(); }

/* An H^i class of internal degree V contributes to the chart at (x - i, y);
 * a d_r differential drops display x by exactly 1. */
inline RODegree displayPosition(int i, RODegree v)
{
    if (i < 0)
        throw std::invalid_argument("displayPosition: cohomological degree must be >= 0");
    return {v.x - i, v.y};
}

/* Degrees of the generators for a given chromatic height n. */
struct GeneratorDegrees
{
    int n;
    std::vector<int> w;  // w[i-1] = 2^i - 1 = rho-degree of vbar_i

    explicit GeneratorDegrees(int n_) : n(n_)
    {
        if (n < 1)
            throw std::invalid_argument("GeneratorDegrees: n must be >= 1");
        for (int i = 1; i <= n; ++i)
            w.push_back((1 << i) - 1);
    }

    int weight(int i) const { return w.at(size_t(i - 1)); }  // i in 1..n
    int dn() const { return (1 << (n + 1)) - n - 2; }        // D_n = w_1 + ... + w_n
    RODegree degU() const
    {
        int p = 1 << (n + 1);
        return {p, -p};  // U = u^{2^n}, degree 2^{n+1}(1-sigma)
    }
};

}  // namespace rgrade
