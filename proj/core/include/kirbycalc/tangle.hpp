#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "kirbycalc/classify.hpp"
#include "kirbycalc/rational.hpp"

namespace kirby {

struct TangleError : std::runtime_error {
    explicit TangleError(const std::string& m) : std::runtime_error(m) {}
};

struct RationalTangle {
    Slope fraction;
};

// Algebraic tangle: a composition tree of rational leaves, integer twist
// boxes, horizontal sums and vertical stacks, with at most one open slot.
struct TangleExpr {
    enum class Kind { Leaf, Slot, Twist, HSum, VStack };

    Kind kind = Kind::Slot;
    Slope leaf;                     // Kind::Leaf
    Int twist = 0;                  // Kind::Twist
    std::vector<TangleExpr> kids;   // Kind::HSum / Kind::VStack

    static TangleExpr make_leaf(const Slope& s);
    static TangleExpr make_slot();
    static TangleExpr make_twist(const Int& t);
    static TangleExpr hsum(std::vector<TangleExpr> kids);
    static TangleExpr vstack(std::vector<TangleExpr> kids);

    int slot_count() const;
    std::string sexpr() const;
};

// Tangle fraction: leaves evaluate to their slope, a twist box t to t/1,
// horizontal sums add, vertical stacks combine harmonically 1/(sum of 1/F).
// Returns nullopt for a composition the extended rationals cannot resolve.
// Throws TangleError if a slot is still present.
std::optional<Slope> fraction(const TangleExpr& t);

TangleExpr insert(const TangleExpr& templ, const RationalTangle& r);

// Rational tangle of the twist sequence [a,b,...,c]; its fraction equals
// cf_evaluate([a,b,...,c]).
TangleExpr cf_tangle(const ContinuedFraction& cf);

// Two-bridge link b(p,q) under the numerator closure: p >= 0, for p >= 2 the
// class is normalized to 1 <= q < p; b(1,0) is the unknot, b(0,1) the unlink.
struct TwoBridgeLink {
    Int p = 1, q = 0;

    bool is_unknot() const { return p == 1; }
    bool is_unlink() const { return p == 0; }
    std::string str() const;
    friend bool operator==(const TwoBridgeLink& a, const TwoBridgeLink& b) {
        return a.p == b.p && a.q == b.q;
    }
};

TwoBridgeLink two_bridge_from_fraction(const Slope& s);
bool two_bridge_equivalent(const TwoBridgeLink& a, const TwoBridgeLink& b,
                           bool oriented);
ClosedManifoldClass double_branched_cover(const TwoBridgeLink& l);

// A framing of a four-punctured sphere: the ordered curve pair whose lifts,
// oriented so that m . l = +1, form a basis of the covering torus. A recorded
// basis change acts on slopes as a determinant +-1 fractional-linear map.
struct Framing {
    std::string sphere_m = "m^", sphere_l = "l^";
    std::string torus_m = "m", torus_l = "l";
    int orientation_sign = +1;
    std::array<Int, 4> change = {1, 0, 0, 1};  // row-major (a b; c d)
};

// Identity on slopes expressed in the framed basis; with a recorded basis
// change, applies the corresponding fractional-linear map.
Slope filling_correspondence(const Framing& f, const Slope& r);

}  // namespace kirby
