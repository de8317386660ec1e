#pragma once

#include <string>
#include <vector>

#include "kirbycalc/rational.hpp"

namespace kirby {

using IntMatrix = std::vector<std::vector<Int>>;

// Finitely generated abelian group: torsion d1 | d2 | ... (each >= 2) plus free rank.
struct AbelianGroup {
    std::vector<Int> torsion;
    int free_rank = 0;

    bool trivial() const { return torsion.empty() && free_rank == 0; }
    bool cyclic() const { return torsion.size() <= 1 && free_rank == 0; }
    bool finite() const { return free_rank == 0; }
    // order of the torsion part (meaningful when finite)
    Int order() const {
        Int o = 1;
        for (const auto& d : torsion) o *= d;
        return o;
    }
    std::string str() const;

    friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) {
        return a.torsion == b.torsion && a.free_rank == b.free_rank;
    }
};

// Smith normal form: u * m * v = d with u, v unimodular and d diagonal with
// the divisibility chain. cokernel() is Z^cols / rowspan(m).
struct SmithResult {
    IntMatrix d, u, v;
    AbelianGroup cokernel;
};

SmithResult smith_normal_form(const IntMatrix& m);

IntMatrix matmul(const IntMatrix& a, const IntMatrix& b);
Int det(IntMatrix m);  // by fraction-free elimination; square input

}  // namespace kirby
