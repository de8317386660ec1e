#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "kirbycalc/rational.hpp"

namespace kirby {

// Integer polynomial expressions over named values: literals, identifiers,
// unary minus, +, -, * and parentheses. Used by the catalog data file.
class Expr {
public:
    static Expr parse(const std::string& text);
    Int eval(const std::map<std::string, Int>& env) const;
    const std::string& text() const { return text_; }

private:
    struct Node;
    std::shared_ptr<const Node> root_;
    std::string text_;
};

using Env = std::map<std::string, Int>;

}  // namespace kirby
