#include "kirbycalc/expr.hpp"

#include <cctype>

namespace kirby {

struct Expr::Node {
    enum class Op { Num, Var, Neg, Add, Sub, Mul } op;
    Int value;
    std::string name;
    std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

struct Parser {
    const std::string& s;
    size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    NodePtr make(Expr::Node n) { return std::make_shared<Expr::Node>(std::move(n)); }

    NodePtr factor() {
        skip();
        if (pos >= s.size()) throw ParseError("expression ends unexpectedly: '" + s + "'");
        char c = s[pos];
        if (c == '-') {
            ++pos;
            return make({Expr::Node::Op::Neg, 0, "", factor(), nullptr});
        }
        if (c == '(') {
            ++pos;
            NodePtr e = expr();
            if (!eat(')')) throw ParseError("missing ')' in '" + s + "'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            return make({Expr::Node::Op::Num, Int(s.substr(start, pos - start)), "",
                         nullptr, nullptr});
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos;
            while (pos < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
                ++pos;
            return make({Expr::Node::Op::Var, 0, s.substr(start, pos - start), nullptr,
                         nullptr});
        }
        throw ParseError("unexpected character '" + std::string(1, c) + "' in '" + s + "'");
    }

    NodePtr term() {
        NodePtr lhs = factor();
        while (true) {
            skip();
            if (pos < s.size() && s[pos] == '*') {
                ++pos;
                lhs = make({Expr::Node::Op::Mul, 0, "", lhs, factor()});
            } else {
                return lhs;
            }
        }
    }

    NodePtr expr() {
        NodePtr lhs = term();
        while (true) {
            skip();
            if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
                char op = s[pos++];
                lhs = make({op == '+' ? Expr::Node::Op::Add : Expr::Node::Op::Sub, 0, "",
                            lhs, term()});
            } else {
                return lhs;
            }
        }
    }
};

Int eval_node(const Expr::Node& n, const Env& env) {
    switch (n.op) {
        case Expr::Node::Op::Num: return n.value;
        case Expr::Node::Op::Var: {
            auto it = env.find(n.name);
            if (it == env.end()) throw ParseError("unknown identifier '" + n.name + "'");
            return it->second;
        }
        case Expr::Node::Op::Neg: return -eval_node(*n.lhs, env);
        case Expr::Node::Op::Add: return eval_node(*n.lhs, env) + eval_node(*n.rhs, env);
        case Expr::Node::Op::Sub: return eval_node(*n.lhs, env) - eval_node(*n.rhs, env);
        case Expr::Node::Op::Mul: return eval_node(*n.lhs, env) * eval_node(*n.rhs, env);
    }
    throw ParseError("corrupt expression");
}

}  // namespace

Expr Expr::parse(const std::string& text) {
    Parser p(text);
    Expr e;
    e.root_ = p.expr();
    p.skip();
    if (p.pos != text.size())
        throw ParseError("trailing input in expression '" + text + "'");
    e.text_ = text;
    return e;
}

Int Expr::eval(const Env& env) const {
    if (!root_) throw ParseError("empty expression");
    return eval_node(*root_, env);
}

}  // namespace kirby
