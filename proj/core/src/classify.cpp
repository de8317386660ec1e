#include "kirbycalc/classify.hpp"

#include <sstream>

namespace kirby {

ClosedManifoldClass ClosedManifoldClass::three_sphere(int sign) {
    ClosedManifoldClass c;
    c.kind = Kind::ThreeSphere;
    c.p = 1;
    c.q = 0;
    c.orientation_sign = sign;
    return c;
}

ClosedManifoldClass ClosedManifoldClass::s1xs2() {
    ClosedManifoldClass c;
    c.kind = Kind::S1xS2;
    c.p = 0;
    c.q = 1;
    return c;
}

ClosedManifoldClass ClosedManifoldClass::lens(const Int& p, const Int& q, int sign) {
    if (p == 0) return s1xs2();
    Int pp = p < 0 ? Int(-p) : p;
    if (pp == 1) return three_sphere(sign);
    Int qq = q % pp;
    if (qq < 0) qq += pp;
    ClosedManifoldClass c;
    c.kind = Kind::Lens;
    c.p = pp;
    c.q = qq;
    c.orientation_sign = sign;
    return c;
}

ClosedManifoldClass ClosedManifoldClass::unresolved(const std::string& description) {
    ClosedManifoldClass c;
    c.kind = Kind::ConnectedSumOrUnresolved;
    c.description = description;
    return c;
}

std::string ClosedManifoldClass::str() const {
    switch (kind) {
        case Kind::ThreeSphere: return "S3";
        case Kind::S1xS2: return "S1xS2";
        case Kind::Lens: {
            std::ostringstream os;
            os << "L(" << p << "," << q << ")";
            return os.str();
        }
        default: return "unresolved:" + description;
    }
}

ClosedManifoldClass lens_from_fraction(const Slope& f) {
    if (f.is_infinity()) return ClosedManifoldClass::three_sphere();
    if (f.is_zero()) return ClosedManifoldClass::s1xs2();
    int sign = f.num() > 0 ? +1 : -1;
    Int q = f.num() > 0 ? f.den() : Int(-f.den());
    return ClosedManifoldClass::lens(f.num(), q, sign);
}

bool lens_equivalent(const ClosedManifoldClass& a, const ClosedManifoldClass& b,
                     bool oriented) {
    using K = ClosedManifoldClass::Kind;
    if (a.kind != b.kind) return false;
    if (a.kind == K::ThreeSphere || a.kind == K::S1xS2) return true;
    if (a.kind != K::Lens) return false;
    if (a.p != b.p) return false;
    const Int& p = a.p;
    Int qa = a.q % p, qb = b.q % p;
    if (qa < 0) qa += p;
    if (qb < 0) qb += p;
    if (qa == qb) return true;
    if ((qa * qb) % p == 1 % p) return true;
    if (!oriented) {
        if ((qa + qb) % p == 0) return true;
        if ((qa * qb + 1) % p == 0) return true;
    }
    return false;
}

}  // namespace kirby
