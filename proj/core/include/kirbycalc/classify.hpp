#pragma once

#include <string>

#include "kirbycalc/rational.hpp"

namespace kirby {

// Classification of the closed manifolds the engine can name.
// Lens stores p >= 2 and q normalized to 1 <= q < p with gcd(p,q) = 1;
// L(1,*) is ThreeSphere and L(0,*) is S1xS2. The orientation sign remembers
// which side of the mirror the defining fraction was on.
struct ClosedManifoldClass {
    enum class Kind { ThreeSphere, S1xS2, Lens, ConnectedSumOrUnresolved };

    Kind kind = Kind::ThreeSphere;
    Int p = 1, q = 0;
    int orientation_sign = +1;
    std::string description;  // for ConnectedSumOrUnresolved

    static ClosedManifoldClass three_sphere(int sign = +1);
    static ClosedManifoldClass s1xs2();
    static ClosedManifoldClass lens(const Int& p, const Int& q, int sign = +1);
    static ClosedManifoldClass unresolved(const std::string& description);

    bool is_lens_like() const { return kind != Kind::ConnectedSumOrUnresolved; }
    std::string str() const;

    friend bool operator==(const ClosedManifoldClass& a, const ClosedManifoldClass& b) {
        return a.kind == b.kind && a.p == b.p && a.q == b.q &&
               a.description == b.description;
    }
};

// Class of f-surgery on the unknot (the terminal single-component diagram).
ClosedManifoldClass lens_from_fraction(const Slope& f);

// Lens space comparison. Oriented: q' = q or q q' = 1 (mod p).
// Unoriented: additionally q' = -q or q q' = -1 (mod p).
bool lens_equivalent(const ClosedManifoldClass& a, const ClosedManifoldClass& b,
                     bool oriented);

}  // namespace kirby
