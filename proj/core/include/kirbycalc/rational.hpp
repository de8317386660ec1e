#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kirby {

using Int = boost::multiprecision::cpp_int;

// 0/0 encountered in extended-rational arithmetic.
struct ArithmeticBottom : std::runtime_error {
    ArithmeticBottom() : std::runtime_error("0/0 in extended rational arithmetic") {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& m) : std::runtime_error(m) {}
};

// Reduced fraction p/q on the projective line: gcd(|p|,|q|) = 1, q >= 0,
// infinity is exactly (1,0), zero exactly (0,1).
class Slope {
public:
    Slope() : num_(0), den_(1) {}
    Slope(Int n, Int d);
    explicit Slope(long long n) : Slope(Int(n), Int(1)) {}

    static Slope infinity() { return Slope(1, 0); }

    const Int& num() const { return num_; }
    const Int& den() const { return den_; }
    bool is_infinity() const { return den_ == 0; }
    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    friend
    bool operator==(const Slope& a, const Slope& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Slope& a, const Slope& b) { return !(a == b); }
    friend bool operator<(const Slope& a, const Slope& b) {  // ordering for containers
        return a.num_ != b.num_ ? a.num_ < b.num_ : a.den_ < b.den_;
    }

    std::string str() const;
    static Slope parse(const std::string& text);

private:
    Int num_, den_;
};

// Projective arithmetic; throws ArithmeticBottom on 0/0 (e.g. infinity + infinity).
Slope add(const Slope& a, const Slope& b);
Slope sub(const Slope& a, const Slope& b);
Slope neg(const Slope& a);
Slope recip(const Slope& a);

// Checked variants used where a bottom value means "unresolved", not a bug.
std::optional<Slope> add_checked(const Slope& a, const Slope& b);

// Negation, the twist action q -> q + t*p, and inversion from the spec drawer.
Slope slope_mirror(const Slope& s);
Slope slope_twist(const Slope& s, const Int& t);
Slope slope_invert(const Slope& s);

// Continued fractions in the subtractive style:
// [a,b,...,c] evaluates to 1/(a - 1/(b - ... - 1/c)).
// The empty list evaluates to infinity by convention.
using ContinuedFraction = std::vector<Int>;

Slope cf_evaluate(const ContinuedFraction& cf);
ContinuedFraction cf_expand(const Slope& s);

std::string cf_str(const ContinuedFraction& cf);
ContinuedFraction cf_parse(const std::string& text);

}  // namespace kirby
