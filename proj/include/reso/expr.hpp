#pragma once

#include <cctype>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "reso/phase.hpp"
#include "reso/symbol.hpp"

namespace reso {

/// Parser for the symbol mini-language: arithmetic over
///   |xi|, |eta|, |xi-eta|, xi.eta, xi1..xi3, eta1..eta3, phi
/// with + - * / ^, parentheses, numeric literals, and sqrt/exp/cos/sin/abs.
/// "phi" is bound to a caller-supplied phase and rejected otherwise.
class SymbolExpr {
 public:
  using Env = std::function<double(const std::string&)>;

  static SymbolExpr parse(const std::string& text) { return SymbolExpr(text); }

  double evaluate(const Vec& xi, const Vec& eta, const std::optional<Phase>& phase = {}) const {
    Env env = [&](const std::string& atom) -> double {
      if (atom == "|xi|") return norm(xi);
      if (atom == "|eta|") return norm(eta);
      if (atom == "|xi-eta|") return norm(xi - eta);
      if (atom == "xi.eta") return dot(xi, eta);
      if (atom == "xi1") return xi[0];
      if (atom == "xi2") return xi[1];
      if (atom == "xi3") return xi[2];
      if (atom == "eta1") return eta[0];
      if (atom == "eta2") return eta[1];
      if (atom == "eta3") return eta[2];
      if (atom == "phi") {
        if (!phase) throw std::invalid_argument("symbol expression uses 'phi' but no phase is configured");
        return phase_value(*phase, xi, eta);
      }
      throw std::invalid_argument("unknown atom in symbol expression: " + atom);
    };
    return root_->value(env);
  }

  const std::string& text() const { return text_; }

 private:
  struct Node {
    virtual ~Node() = default;
    virtual double value(const Env& env) const = 0;
  };
  using NodePtr = std::unique_ptr<Node>;

  struct Literal : Node {
    double v;
    explicit Literal(double x) : v(x) {}
    double value(const Env&) const override { return v; }
  };
  struct Atom : Node {
    std::string name;
    explicit Atom(std::string n) : name(std::move(n)) {}
    double value(const Env& env) const override { return env(name); }
  };
  struct Unary : Node {
    char op;
    NodePtr arg;
    double value(const Env& env) const override { return -arg->value(env); }
  };
  struct Binary : Node {
    char op;
    NodePtr lhs, rhs;
    double value(const Env& env) const override {
      double a = lhs->value(env), b = rhs->value(env);
      switch (op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        case '/': return a / b;
        default: return std::pow(a, b);
      }
    }
  };
  struct Call : Node {
    std::string fn;
    NodePtr arg;
    double value(const Env& env) const override {
      double a = arg->value(env);
      if (fn == "sqrt") return std::sqrt(a);
      if (fn == "exp") return std::exp(a);
      if (fn == "cos") return std::cos(a);
      if (fn == "sin") return std::sin(a);
      return std::abs(a);
    }
  };

  explicit SymbolExpr(const std::string& text) : text_(text) {
    tokenize();
    pos_ = 0;
    root_ = parse_sum();
    if (pos_ != tokens_.size())
      throw std::invalid_argument("symbol expression: trailing input at '" + tokens_[pos_] + "'");
  }

  void tokenize() {
    static const std::vector<std::string> atoms = {
        "|xi-eta|", "|xi|", "|eta|", "xi.eta", "xi1", "xi2", "xi3",
        "eta1",     "eta2", "eta3",  "phi",    "sqrt", "exp", "cos", "sin", "abs"};
    std::size_t i = 0;
    while (i < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[i]))) {
        ++i;
        continue;
      }
      bool matched = false;
      for (const auto& a : atoms) {
        if (text_.compare(i, a.size(), a) == 0) {
          tokens_.push_back(a);
          i += a.size();
          matched = true;
          break;
        }
      }
      if (matched) continue;
      char c = text_[i];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        std::size_t j = i;
        while (j < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[j])) || text_[j] == '.' ||
                text_[j] == 'e' || text_[j] == 'E' ||
                ((text_[j] == '+' || text_[j] == '-') && (text_[j - 1] == 'e' || text_[j - 1] == 'E'))))
          ++j;
        tokens_.push_back(text_.substr(i, j - i));
        i = j;
        continue;
      }
      if (std::string("+-*/^()").find(c) != std::string::npos) {
        tokens_.push_back(std::string(1, c));
        ++i;
        continue;
      }
      throw std::invalid_argument(std::string("symbol expression: unexpected character '") + c + "'");
    }
  }

  const std::string& peek() const {
    static const std::string empty;
    return pos_ < tokens_.size() ? tokens_[pos_] : empty;
  }
  std::string take() { return tokens_[pos_++]; }
  void expect(const std::string& t) {
    if (peek() != t) throw std::invalid_argument("symbol expression: expected '" + t + "'");
    ++pos_;
  }

  NodePtr parse_sum() {
    NodePtr lhs = parse_product();
    while (peek() == "+" || peek() == "-") {
      auto node = std::make_unique<Binary>();
      node->op = take()[0];
      node->lhs = std::move(lhs);
      node->rhs = parse_product();
      lhs = std::move(node);
    }
    return lhs;
  }
  NodePtr parse_product() {
    NodePtr lhs = parse_unary();
    while (peek() == "*" || peek() == "/") {
      auto node = std::make_unique<Binary>();
      node->op = take()[0];
      node->lhs = std::move(lhs);
      node->rhs = parse_unary();
      lhs = std::move(node);
    }
    return lhs;
  }
  // unary minus binds looser than ^, so -x^2 means -(x^2)
  NodePtr parse_unary() {
    if (peek() == "-") {
      take();
      auto node = std::make_unique<Unary>();
      node->op = '-';
      node->arg = parse_unary();
      return node;
    }
    return parse_power();
  }
  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (peek() == "^") {
      auto node = std::make_unique<Binary>();
      node->op = take()[0];
      node->lhs = std::move(base);
      node->rhs = parse_unary();  // right associative, allows 2^-3
      return node;
    }
    return base;
  }
  NodePtr parse_primary() {
    if (pos_ >= tokens_.size()) throw std::invalid_argument("symbol expression: unexpected end");
    std::string t = take();
    if (t == "(") {
      NodePtr inner = parse_sum();
      expect(")");
      return inner;
    }
    if (t == "sqrt" || t == "exp" || t == "cos" || t == "sin" || t == "abs") {
      expect("(");
      auto node = std::make_unique<Call>();
      node->fn = t;
      node->arg = parse_sum();
      expect(")");
      return node;
    }
    if (std::isdigit(static_cast<unsigned char>(t[0])) || t[0] == '.')
      return std::make_unique<Literal>(std::stod(t));
    return std::make_unique<Atom>(t);
  }

  std::string text_;
  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
  NodePtr root_;
};

/// Wraps an expression as a BilinearSymbol with user-declared homogeneity
/// and singular axes.
inline BilinearSymbol symbol_from_expression(const std::string& text, double homogeneity,
                                             bool sing_xi, bool sing_eta, bool sing_delta,
                                             std::optional<Phase> phase = {}) {
  auto expr = std::make_shared<SymbolExpr>(SymbolExpr::parse(text));
  BilinearSymbol s;
  s.eval = [expr, phase](const Vec& xi, const Vec& eta) {
    return Complex(expr->evaluate(xi, eta, phase), 0.0);
  };
  s.homogeneity = homogeneity;
  s.singular_xi = sing_xi;
  s.singular_eta = sing_eta;
  s.singular_delta = sing_delta;
  s.name = "expr:" + text;
  return s;
}

}  // namespace reso
