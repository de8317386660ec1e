#include "kirbycalc/tangle.hpp"

#include <sstream>

namespace kirby {

TangleExpr TangleExpr::make_leaf(const Slope& s) {
    TangleExpr t;
    t.kind = Kind::Leaf;
    t.leaf = s;
    return t;
}

TangleExpr TangleExpr::make_slot() {
    TangleExpr t;
    t.kind = Kind::Slot;
    return t;
}

TangleExpr TangleExpr::make_twist(const Int& n) {
    TangleExpr t;
    t.kind = Kind::Twist;
    t.twist = n;
    return t;
}

TangleExpr TangleExpr::hsum(std::vector<TangleExpr> kids) {
    TangleExpr t;
    t.kind = Kind::HSum;
    t.kids = std::move(kids);
    return t;
}

TangleExpr TangleExpr::vstack(std::vector<TangleExpr> kids) {
    TangleExpr t;
    t.kind = Kind::VStack;
    t.kids = std::move(kids);
    return t;
}

int TangleExpr::slot_count() const {
    switch (kind) {
        case Kind::Slot: return 1;
        case Kind::HSum:
        case Kind::VStack: {
            int n = 0;
            for (const auto& k : kids) n += k.slot_count();
            return n;
        }
        default: return 0;
    }
}

std::string TangleExpr::sexpr() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Leaf: os << "(leaf " << leaf.str() << ")"; break;
        case Kind::Slot: os << "(slot)"; break;
        case Kind::Twist: os << "(twist " << twist << ")"; break;
        case Kind::HSum:
        case Kind::VStack:
            os << (kind == Kind::HSum ? "(hsum" : "(vstack");
            for (const auto& k : kids) os << " " << k.sexpr();
            os << ")";
            break;
    }
    return os.str();
}

std::optional<Slope> fraction(const TangleExpr& t) {
    switch (t.kind) {
        case TangleExpr::Kind::Slot:
            throw TangleError("fraction of a tangle with an open slot");
        case TangleExpr::Kind::Leaf:
            return t.leaf;
        case TangleExpr::Kind::Twist:
            return Slope(t.twist, 1);
        case TangleExpr::Kind::HSum: {
            Slope acc(0);
            for (const auto& k : t.kids) {
                auto f = fraction(k);
                if (!f) return std::nullopt;
                auto s = add_checked(acc, *f);
                if (!s) return std::nullopt;
                acc = *s;
            }
            return acc;
        }
        case TangleExpr::Kind::VStack: {
            Slope acc(0);
            for (const auto& k : t.kids) {
                auto f = fraction(k);
                if (!f) return std::nullopt;
                auto s = add_checked(acc, recip(*f));
                if (!s) return std::nullopt;
                acc = *s;
            }
            return recip(acc);
        }
    }
    return std::nullopt;
}

namespace {

bool insert_first_slot(TangleExpr& t, const Slope& s) {
    if (t.kind == TangleExpr::Kind::Slot) {
        t = TangleExpr::make_leaf(s);
        return true;
    }
    for (auto& k : t.kids)
        if (insert_first_slot(k, s)) return true;
    return false;
}

}  // namespace

TangleExpr insert(const TangleExpr& templ, const RationalTangle& r) {
    int n = templ.slot_count();
    if (n == 0) throw TangleError("insert: template has no slot");
    if (n > 1) throw TangleError("insert: template has more than one slot");
    TangleExpr out = templ;
    insert_first_slot(out, r.fraction);
    return out;
}

namespace {

// mutual recursion: S(list) has fraction 1/(a - 1/(b - ...)),
// N(list) has fraction -(a - 1/(b - ...))
TangleExpr cf_neg(const ContinuedFraction& cf, size_t from);

TangleExpr cf_inv(const ContinuedFraction& cf, size_t from) {
    if (from >= cf.size()) return TangleExpr::make_leaf(Slope::infinity());
    if (from + 1 == cf.size()) return TangleExpr::make_leaf(Slope(1, cf[from]));
    return TangleExpr::vstack(
        {TangleExpr::make_leaf(Slope(1, cf[from])), cf_neg(cf, from + 1)});
}

TangleExpr cf_neg(const ContinuedFraction& cf, size_t from) {
    if (from + 1 == cf.size()) return TangleExpr::make_twist(-cf[from]);
    return TangleExpr::hsum(
        {TangleExpr::make_twist(-cf[from]), cf_inv(cf, from + 1)});
}

}  // namespace

TangleExpr cf_tangle(const ContinuedFraction& cf) { return cf_inv(cf, 0); }

std::string TwoBridgeLink::str() const {
    std::ostringstream os;
    os << "b(" << p << "," << q << ")";
    return os.str();
}

TwoBridgeLink two_bridge_from_fraction(const Slope& s) {
    TwoBridgeLink l;
    if (s.is_infinity()) return l;  // the infinity tangle closes to the unknot
    if (s.is_zero()) {
        l.p = 0;
        l.q = 1;
        return l;
    }
    Int p = s.num() < 0 ? Int(-s.num()) : s.num();
    if (p == 1) return l;
    Int q = s.num() < 0 ? Int(-s.den()) : s.den();
    q %= p;
    if (q < 0) q += p;
    l.p = p;
    l.q = q;
    return l;
}

bool two_bridge_equivalent(const TwoBridgeLink& a, const TwoBridgeLink& b,
                           bool oriented) {
    if (a.p != b.p) return false;
    if (a.p == 0 || a.p == 1) return true;
    const Int& p = a.p;
    Int qa = a.q % p, qb = b.q % p;
    if (qa < 0) qa += p;
    if (qb < 0) qb += p;
    if (qa == qb || (qa * qb) % p == 1 % p) return true;
    if (!oriented &&
        ((qa + qb) % p == 0 || (qa * qb + 1) % p == 0))
        return true;
    return false;
}

ClosedManifoldClass double_branched_cover(const TwoBridgeLink& l) {
    if (l.is_unknot()) return ClosedManifoldClass::three_sphere();
    if (l.is_unlink()) return ClosedManifoldClass::s1xs2();
    return ClosedManifoldClass::lens(l.p, l.q);
}

Slope filling_correspondence(const Framing& f, const Slope& r) {
    const Int &a = f.change[0], &b = f.change[1], &c = f.change[2], &d = f.change[3];
    Int dt = a * d - b * c;
    if (dt != 1 && dt != -1)
        throw TangleError("framing change matrix must have determinant +-1");
    return Slope(a * r.num() + b * r.den(), c * r.num() + d * r.den());
}

}  // namespace kirby
