#include "kirbycalc/rational.hpp"

#include <sstream>

namespace kirby {

namespace {

Int gcd_abs(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// ceil(n/d) for d > 0
Int ceil_div(const Int& n, const Int& d) {
    Int q = n / d;  // truncates toward zero
    if (n > 0 && q * d != n) ++q;
    return q;
}

}  // namespace

Slope::Slope(Int n, Int d) {
    if (d == 0) {
        if (n == 0) throw ArithmeticBottom();
        n = 1;
    }
    Int g = gcd_abs(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    if (d < 0) {
        n = -n;
        d = -d;
    }
    num_ = std::move(n);
    den_ = std::move(d);
}

std::string Slope::str() const {
    std::ostringstream os;
    os << num_ << "/" << den_;
    return os.str();
}

Slope Slope::parse(const std::string& text) {
    auto pos = text.find('/');
    try {
        if (pos == std::string::npos) return Slope(Int(text), Int(1));
        return Slope(Int(text.substr(0, pos)), Int(text.substr(pos + 1)));
    } catch (const std::exception&) {
        throw ParseError("bad slope: '" + text + "'");
    }
}

Slope add(const Slope& a, const Slope& b) {
    return Slope(a.num() * b.den() + b.num() * a.den(), a.den() * b.den());
}

Slope sub(const Slope& a, const Slope& b) {
    return Slope(a.num() * b.den() - b.num() * a.den(), a.den() * b.den());
}

Slope neg(const Slope& a) { return Slope(-a.num(), a.den()); }

Slope recip(const Slope& a) { return Slope(a.den(), a.num()); }

std::optional<Slope> add_checked(const Slope& a, const Slope& b) {
    try {
        return add(a, b);
    } catch (const ArithmeticBottom&) {
        return std::nullopt;
    }
}

Slope slope_mirror(const Slope& s) { return neg(s); }

Slope slope_twist(const Slope& s, const Int& t) {
    return Slope(s.num(), s.den() + t * s.num());
}

Slope slope_invert(const Slope& s) { return recip(s); }

Slope cf_evaluate(const ContinuedFraction& cf) {
    if (cf.empty()) return Slope::infinity();
    Slope v(cf.back(), 1);
    for (auto it = cf.rbegin() + 1; it != cf.rend(); ++it)
        v = sub(Slope(*it, 1), recip(v));
    return recip(v);
}

ContinuedFraction cf_expand(const Slope& s) {
    if (s.is_infinity()) return {};
    if (s.is_zero()) return {Int(0), Int(0)};
    // digits for v = 1/s with v = a - 1/(b - ...), ceiling-based
    Slope t = recip(s);
    ContinuedFraction out;
    while (true) {
        Int a = ceil_div(t.num(), t.den());
        out.push_back(a);
        Slope rem = sub(Slope(a, 1), t);  // in [0, 1)
        if (rem.is_zero()) break;
        t = recip(rem);
    }
    return out;
}

std::string cf_str(const ContinuedFraction& cf) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < cf.size(); ++i) {
        if (i) os << ",";
        os << cf[i];
    }
    os << "]";
    return os.str();
}

ContinuedFraction cf_parse(const std::string& text) {
    std::string t = text;
    if (t.size() < 2 || t.front() != '[' || t.back() != ']')
        throw ParseError("bad continued fraction: '" + text + "'");
    t = t.substr(1, t.size() - 2);
    ContinuedFraction out;
    std::istringstream is(t);
    std::string item;
    while (std::getline(is, item, ',')) {
        if (item.empty()) throw ParseError("bad continued fraction: '" + text + "'");
        out.emplace_back(item);
    }
    return out;
}

}  // namespace kirby
