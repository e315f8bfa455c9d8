#include "et14/material.hpp"

#include <cctype>
#include <sstream>

namespace et14 {

struct Expr::Node {
    enum class Kind { Const, Var, Add, Sub, Mul, Div, Neg, Pow };
    Kind kind;
    Rational value;  // Const
    V var = V::Rho;  // Var
    long exponent = 1;  // Pow
    std::shared_ptr<const Node> lhs, rhs;
};

struct ExprDetail {
    using Node = Expr::Node;
    using NodePtr = std::shared_ptr<const Node>;

    static NodePtr make(Node n) { return std::make_shared<const Node>(std::move(n)); }
    static NodePtr node(const Expr& e) { return e.node_; }
    static Expr wrap(NodePtr n) { return Expr(std::move(n)); }

    static Expr binary(Node::Kind k, const Expr& a, const Expr& b) {
        Node n;
        n.kind = k;
        n.lhs = node(a);
        n.rhs = node(b);
        return wrap(make(std::move(n)));
    }
};

Expr Expr::constant(const Rational& c) {
    Node n;
    n.kind = Node::Kind::Const;
    n.value = c;
    return ExprDetail::wrap(ExprDetail::make(std::move(n)));
}

Expr Expr::rho() {
    Node n;
    n.kind = Node::Kind::Var;
    n.var = V::Rho;
    return ExprDetail::wrap(ExprDetail::make(std::move(n)));
}

Expr Expr::temperature() {
    Node n;
    n.kind = Node::Kind::Var;
    n.var = V::T;
    return ExprDetail::wrap(ExprDetail::make(std::move(n)));
}

Expr operator+(const Expr& a, const Expr& b) {
    return ExprDetail::binary(Expr::Node::Kind::Add, a, b);
}
Expr operator-(const Expr& a, const Expr& b) {
    return ExprDetail::binary(Expr::Node::Kind::Sub, a, b);
}
Expr operator*(const Expr& a, const Expr& b) {
    return ExprDetail::binary(Expr::Node::Kind::Mul, a, b);
}
Expr operator/(const Expr& a, const Expr& b) {
    return ExprDetail::binary(Expr::Node::Kind::Div, a, b);
}

Expr Expr::operator-() const {
    Node n;
    n.kind = Node::Kind::Neg;
    n.lhs = node_;
    return ExprDetail::wrap(ExprDetail::make(std::move(n)));
}

Expr Expr::pow(long e) const {
    Node n;
    n.kind = Node::Kind::Pow;
    n.exponent = e;
    n.lhs = node_;
    return ExprDetail::wrap(ExprDetail::make(std::move(n)));
}

Expr Expr::diff(V v) const {
    const Node& n = *node_;
    switch (n.kind) {
        case Node::Kind::Const:
            return constant(0);
        case Node::Kind::Var:
            return constant(n.var == v ? 1 : 0);
        case Node::Kind::Add:
            return Expr(n.lhs).diff(v) + Expr(n.rhs).diff(v);
        case Node::Kind::Sub:
            return Expr(n.lhs).diff(v) - Expr(n.rhs).diff(v);
        case Node::Kind::Mul:
            return Expr(n.lhs).diff(v) * Expr(n.rhs) + Expr(n.lhs) * Expr(n.rhs).diff(v);
        case Node::Kind::Div:
            return (Expr(n.lhs).diff(v) * Expr(n.rhs) - Expr(n.lhs) * Expr(n.rhs).diff(v)) /
                   (Expr(n.rhs) * Expr(n.rhs));
        case Node::Kind::Neg:
            return -Expr(n.lhs).diff(v);
        case Node::Kind::Pow:
            if (n.exponent == 0) return constant(0);
            return constant(n.exponent) * Expr(n.lhs).pow(n.exponent - 1) * Expr(n.lhs).diff(v);
    }
    throw DomainError("unreachable expression kind");
}

Rational Expr::eval(const EqState& s) const {
    const Node& n = *node_;
    switch (n.kind) {
        case Node::Kind::Const:
            return n.value;
        case Node::Kind::Var:
            return n.var == V::Rho ? s.rho : s.T;
        case Node::Kind::Add:
            return Expr(n.lhs).eval(s) + Expr(n.rhs).eval(s);
        case Node::Kind::Sub:
            return Expr(n.lhs).eval(s) - Expr(n.rhs).eval(s);
        case Node::Kind::Mul:
            return Expr(n.lhs).eval(s) * Expr(n.rhs).eval(s);
        case Node::Kind::Div: {
            Rational den = Expr(n.rhs).eval(s);
            if (den == 0) throw DivisionByZeroError("division by zero in material expression");
            return Expr(n.lhs).eval(s) / den;
        }
        case Node::Kind::Neg:
            return -Expr(n.lhs).eval(s);
        case Node::Kind::Pow:
            return rat_pow(Expr(n.lhs).eval(s), n.exponent);
    }
    throw DomainError("unreachable expression kind");
}

std::string Expr::to_string() const {
    const Node& n = *node_;
    switch (n.kind) {
        case Node::Kind::Const:
            return rat_to_string(n.value);
        case Node::Kind::Var:
            return n.var == V::Rho ? "rho" : "T";
        case Node::Kind::Add:
            return "(" + Expr(n.lhs).to_string() + " + " + Expr(n.rhs).to_string() + ")";
        case Node::Kind::Sub:
            return "(" + Expr(n.lhs).to_string() + " - " + Expr(n.rhs).to_string() + ")";
        case Node::Kind::Mul:
            return "(" + Expr(n.lhs).to_string() + " * " + Expr(n.rhs).to_string() + ")";
        case Node::Kind::Div:
            return "(" + Expr(n.lhs).to_string() + " / " + Expr(n.rhs).to_string() + ")";
        case Node::Kind::Neg:
            return "(-" + Expr(n.lhs).to_string() + ")";
        case Node::Kind::Pow:
            return Expr(n.lhs).to_string() + "^" + std::to_string(n.exponent);
    }
    return "?";
}

namespace {

struct ExprParser {
    const std::string& s;
    const std::map<std::string, Rational>& params;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    long integer() {
        skip_ws();
        bool neg = eat('-');
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw ConfigError("expected integer in expression: " + s);
        long v = std::stol(s.substr(start, pos - start));
        return neg ? -v : v;
    }

    Expr primary() {
        skip_ws();
        if (eat('(')) {
            Expr e = expression();
            if (!eat(')')) throw ConfigError("missing ')' in expression: " + s);
            return e;
        }
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            long num = integer();
            if (eat('/')) return Expr::constant(rat(num, integer()));
            return Expr::constant(rat(num));
        }
        size_t start = pos;
        while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) ||
                                  s[pos] == '_'))
            ++pos;
        std::string name = s.substr(start, pos - start);
        if (name == "rho") return Expr::rho();
        if (name == "T") return Expr::temperature();
        auto it = params.find(name);
        if (it != params.end()) return Expr::constant(it->second);
        throw ConfigError("unknown symbol '" + name + "' in expression: " + s);
    }

    Expr unary() {
        if (eat('-')) return -unary();
        Expr e = primary();
        if (eat('^')) return e.pow(integer());
        return e;
    }

    Expr term() {
        Expr e = unary();
        for (;;) {
            if (eat('*'))
                e = e * unary();
            else if (eat('/'))
                e = e / unary();
            else
                return e;
        }
    }

    Expr expression() {
        Expr e = term();
        for (;;) {
            if (eat('+'))
                e = e + term();
            else if (eat('-'))
                e = e - term();
            else
                return e;
        }
    }
};

}  // namespace

Expr Expr::parse(const std::string& text, const std::map<std::string, Rational>& params) {
    ExprParser p{text, params};
    Expr e = p.expression();
    p.skip_ws();
    if (p.pos != text.size())
        throw ConfigError("trailing characters in expression: " + text.substr(p.pos));
    return e;
}

SymbolicMaterial::SymbolicMaterial(Expr p_in, Expr eps_in, Expr phi001_in, Expr phi011_in)
    : p(std::move(p_in)), eps(std::move(eps_in)), phi001(std::move(phi001_in)),
      phi011(std::move(phi011_in)),
      dp_drho_(p.diff(Expr::V::Rho)), dp_dT_(p.diff(Expr::V::T)),
      deps_drho_(eps.diff(Expr::V::Rho)), deps_dT_(eps.diff(Expr::V::T)),
      dphi001_drho_(phi001.diff(Expr::V::Rho)), dphi001_dT_(phi001.diff(Expr::V::T)),
      dphi011_drho_(phi011.diff(Expr::V::Rho)), dphi011_dT_(phi011.diff(Expr::V::T)) {}

MaterialPoint SymbolicMaterial::at(const EqState& s) const {
    if (s.rho <= 0 || s.T <= 0) throw DomainError("equilibrium state needs rho > 0 and T > 0");
    MaterialPoint m;
    m.p = p.eval(s);
    m.eps = eps.eval(s);
    m.phi001 = phi001.eval(s);
    m.phi011 = phi011.eval(s);
    m.dp_drho = dp_drho_.eval(s);
    m.dp_dT = dp_dT_.eval(s);
    m.deps_drho = deps_drho_.eval(s);
    m.deps_dT = deps_dT_.eval(s);
    m.dphi001_drho = dphi001_drho_.eval(s);
    m.dphi001_dT = dphi001_dT_.eval(s);
    m.dphi011_drho = dphi011_drho_.eval(s);
    m.dphi011_dT = dphi011_dT_.eval(s);
    return m;
}

SymbolicMaterial parse_material(const std::string& text) {
    std::map<std::string, Rational> params;
    std::map<std::string, Expr> fields;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            for (char c : line)
                if (!std::isspace(static_cast<unsigned char>(c)))
                    throw ConfigError("bad material line: " + line);
            continue;
        }
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        auto trim = [](std::string& t) {
            while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front())))
                t.erase(t.begin());
            while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
        };
        trim(key);
        trim(value);
        if (key.rfind("param ", 0) == 0) {
            std::string name = key.substr(6);
            trim(name);
            params[name] = rat_from_string(value);
        } else {
            fields.insert_or_assign(key, Expr::parse(value, params));
        }
    }
    for (const char* required : {"p", "epsilon", "phi001", "phi011"})
        if (!fields.contains(required))
            throw ConfigError(std::string("material file is missing '") + required + "'");
    return SymbolicMaterial(fields.at("p"), fields.at("epsilon"), fields.at("phi001"),
                            fields.at("phi011"));
}

SymbolicMaterial polytropic_gas(const Rational& c_v) {
    const Expr rho = Expr::rho();
    const Expr T = Expr::temperature();
    const Expr cv = Expr::constant(c_v);
    return SymbolicMaterial(rho * T, cv * T,
                            Expr::constant(2) * (cv + Expr::constant(1)) * rho * T.pow(2),
                            Expr::constant(-6) * (cv + Expr::constant(2)) * rho * T.pow(3));
}

}  // namespace et14
