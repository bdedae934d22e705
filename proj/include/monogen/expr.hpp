#pragma once

#include "arith.hpp"
#include "tower_ring.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace monogen {

struct ExprError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// value of a template: a rational scalar or a ring element
struct Value {
    std::optional<TowerElement> elem;
    Rational scalar = 0;

    Value() = default;
    Value(Rational q) : scalar(std::move(q)) {}
    Value(TowerElement e) : elem(std::move(e)) {}

    bool is_scalar() const { return !elem.has_value(); }
    TowerElement as_element(const TowerPtr& ring) const {
        return elem ? *elem : TowerElement::scalar(ring, scalar);
    }
};

inline const TowerPtr* ring_of(const Value& a, const Value& b) {
    if (a.elem) return &a.elem->spec();
    if (b.elem) return &b.elem->spec();
    return nullptr;
}

inline Value operator+(const Value& a, const Value& b) {
    if (auto r = ring_of(a, b)) return a.as_element(*r) + b.as_element(*r);
    return Value(a.scalar + b.scalar);
}
inline Value operator-(const Value& a, const Value& b) {
    if (auto r = ring_of(a, b)) return a.as_element(*r) - b.as_element(*r);
    return Value(a.scalar - b.scalar);
}
inline Value operator*(const Value& a, const Value& b) {
    if (a.is_scalar() && b.is_scalar()) return Value(a.scalar * b.scalar);
    if (a.is_scalar()) return *b.elem * a.scalar;
    if (b.is_scalar()) return *a.elem * b.scalar;
    return *a.elem * *b.elem;
}

class Expr {
public:
    using Bindings = std::map<std::string, Value>;

    static Expr parse(const std::string& text) {
        Parser p{text, 0};
        Expr e;
        e.root_ = p.expr();
        p.skip();
        if (p.pos != text.size()) throw ExprError("trailing input in template: " + text);
        e.text_ = text;
        return e;
    }

    Value eval(const Bindings& env) const { return eval(*root_, env); }
    const std::string& text() const { return text_; }

private:
    struct Node {
        char op;  // 'n' number, 's' symbol, '+', '-', '*', '/', '^', 'u' negate
        Rational num;
        std::string name;
        std::unique_ptr<Node> a, b;
    };
    using NodePtr = std::shared_ptr<Node>;

    struct Parser {
        const std::string& s;
        size_t pos;

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
        static std::unique_ptr<Node> bin(char op, std::unique_ptr<Node> a, std::unique_ptr<Node> b) {
            auto n = std::make_unique<Node>();
            n->op = op;
            n->a = std::move(a);
            n->b = std::move(b);
            return n;
        }
        std::unique_ptr<Node> expr() {
            auto left = term();
            for (;;) {
                if (eat('+')) left = bin('+', std::move(left), term());
                else if (eat('-')) left = bin('-', std::move(left), term());
                else return left;
            }
        }
        std::unique_ptr<Node> term() {
            auto left = unary();
            for (;;) {
                if (eat('*')) left = bin('*', std::move(left), unary());
                else if (eat('/')) left = bin('/', std::move(left), unary());
                else return left;
            }
        }
        std::unique_ptr<Node> unary() {
            if (eat('-')) return bin('u', unary(), nullptr);
            if (eat('+')) return unary();
            return power();
        }
        std::unique_ptr<Node> power() {
            auto base = atom();
            if (eat('^')) {
                skip();
                size_t start = pos;
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
                if (start == pos) throw ExprError("exponent must be a nonnegative integer: " + s);
                auto e = std::make_unique<Node>();
                e->op = 'n';
                e->num = Rational(s.substr(start, pos - start));
                return bin('^', std::move(base), std::move(e));
            }
            return base;
        }
        std::unique_ptr<Node> atom() {
            skip();
            if (eat('(')) {
                auto e = expr();
                if (!eat(')')) throw ExprError("missing ')' in template: " + s);
                return e;
            }
            auto n = std::make_unique<Node>();
            if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                size_t start = pos;
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
                n->op = 'n';
                n->num = Rational(s.substr(start, pos - start));
                return n;
            }
            if (pos < s.size() && (std::isalpha(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) {
                size_t start = pos;
                while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
                n->op = 's';
                n->name = s.substr(start, pos - start);
                return n;
            }
            throw ExprError("unexpected character in template: " + s);
        }
    };

    static Value eval(const Node& n, const Bindings& env) {
        switch (n.op) {
            case 'n': return Value(n.num);
            case 's': {
                auto it = env.find(n.name);
                if (it == env.end()) throw ExprError("unbound symbol '" + n.name + "'");
                return it->second;
            }
            case '+': return eval(*n.a, env) + eval(*n.b, env);
            case '-': return eval(*n.a, env) - eval(*n.b, env);
            case '*': return eval(*n.a, env) * eval(*n.b, env);
            case 'u': return Value(Rational(-1)) * eval(*n.a, env);
            case '/': {
                Value d = eval(*n.b, env);
                if (!d.is_scalar()) throw ExprError("division by a ring element");
                if (d.scalar == 0) throw ExprError("division by zero in template");
                return eval(*n.a, env) * Value(Rational(1 / d.scalar));
            }
            case '^': {
                Value b = eval(*n.a, env);
                unsigned long e = n.b->num.get_num().get_ui();
                if (b.is_scalar()) return Value(pow_rat(b.scalar, e));
                return b.elem->pow(e);
            }
        }
        throw ExprError("bad template node");
    }

    std::shared_ptr<Node> root_;
    std::string text_;
};

}  // namespace monogen
