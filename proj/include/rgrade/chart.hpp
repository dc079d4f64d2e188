#pragma once

#include "abgroup.hpp"
#include "grading.hpp"

#include <map>
#include <string>
#include <vector>

namespace rgrade {

struct Window
{
    int xmin = 0, xmax = 0, ymin = 0, ymax = 0;

    bool contains(RODegree v) const
    {
        return v.x >= xmin && v.x <= xmax && v.y >= ymin && v.y <= ymax;
    }
    bool empty() const { return xmin > xmax || ymin > ymax; }
    int spanX() const { return xmax - xmin; }
    int spanY() const { return ymax - ymin; }
    bool operator==(const Window&) const = default;
};

/* Structure lines drawn on top of a chart (multiplication by a, vbar towers). */
struct ChartAnnotation
{
    enum class Kind
    {
        ALine,        // vertical, multiplication by a
        DiagonalLine, // vbar tower along rho
        Arrow,        // differential
        Marker,       // reflection point
    } kind;
    RODegree from;
    RODegree to;
    std::string label;
};

/* A finite window of RO(Q)-graded 2-local abelian groups. */
struct Chart
{
    Window window;
    std::map<RODegree, AbGroup> entries;
    std::vector<ChartAnnotation> annotations;

    void add(RODegree v, const AbGroup& g)
    {
        if (g.isZero() || !window.contains(v))
            return;
        auto it = entries.find(v);
        if (it == entries.end())
            entries.emplace(v, g);
        else
            it->second = it->second + g;
    }

    const AbGroup& at(RODegree v) const
    {
        static const AbGroup zero;
        auto it = entries.find(v);
        return it == entries.end() ? zero : it->second;
    }

    bool operator==(const Chart& o) const
    {
        return window == o.window && entries == o.entries;
    }
};

struct ChartDiff
{
    RODegree degree;
    AbGroup lhs;
    AbGroup rhs;
};

inline std::vector<ChartDiff> diffCharts(const Chart& a, const Chart& b)
{
    std::vector<ChartDiff> out;
    auto ia = a.entries.begin();
    auto ib = b.entries.begin();
    while (ia != a.entries.end() || ib != b.entries.end()) {
        if (ib == b.entries.end() || (ia != a.entries.end() && ia->first < ib->first)) {
            out.push_back({ia->first, ia->second, AbGroup()});
            ++ia;
        }
        else if (ia == a.entries.end() || ib->first < ia->first) {
            out.push_back({ib->first, AbGroup(), ib->second});
            ++ib;
        }
        else {
            if (!(ia->second == ib->second))
                out.push_back({ia->first, ia->second, ib->second});
            ++ia;
            ++ib;
        }
    }
    return out;
}

}  // namespace rgrade
