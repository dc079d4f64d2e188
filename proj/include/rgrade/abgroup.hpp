#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace rgrade {

/* A finitely generated 2-local abelian group in canonical form:
 * Z^free + sum of Z/2^e over the sorted exponent multiset. */
struct AbGroup
{
    int free = 0;
    std::vector<int> torsion;  // exponents e >= 1, parts Z/2^e, sorted ascending

    AbGroup() = default;
    AbGroup(int free_, std::vector<int> torsion_ = {}) : free(free_), torsion(std::move(torsion_))
    {
        canonicalize();
    }

    void canonicalize()
    {
        torsion.erase(std::remove_if(torsion.begin(), torsion.end(), [](int e) { return e <= 0; }),
                      torsion.end());
        std::sort(torsion.begin(), torsion.end());
    }

    bool isZero() const { return free == 0 && torsion.empty(); }
    int torsionRank() const { return int(torsion.size()); }

    friend AbGroup operator+(const AbGroup& a, const AbGroup& b)  // direct sum
    {
        AbGroup r;
        r.free = a.free + b.free;
        r.torsion = a.torsion;
        r.torsion.insert(r.torsion.end(), b.torsion.begin(), b.torsion.end());
        r.canonicalize();
        return r;
    }

    bool operator==(const AbGroup&) const = default;

    std::string str() const
    {
        if (isZero())
            return "0";
        std::string s;
        auto app = [&s](const std::string& t) {
            if (!s.empty())
                s += "+";
            s += t;
        };
        if (free == 1)
            app("Z");
        else if (free > 1)
            app("Z^" + std::to_string(free));
        int i = 0;
        while (i < int(torsion.size())) {
            int j = i;
            while (j < int(torsion.size()) && torsion[j] == torsion[i])
                ++j;
            std::string part = torsion[i] == 1 ? "F2" : "Z/" + std::to_string(int64_t(1) << torsion[i]);
            if (j - i > 1)
                part += "^" + std::to_string(j - i);
            app(part);
            i = j;
        }
        return s;
    }
};

inline AbGroup groupZ(int rank = 1) { return AbGroup(rank); }
inline AbGroup groupF2(int rank = 1) { return AbGroup(0, std::vector<int>(size_t(rank), 1)); }

}  // namespace rgrade
