#include "opident/cli/parser.hpp"

#include <cctype>

namespace opident::cli {

namespace {

enum class Tok { End, Ident, Number, Lambda, Plus, Minus, Star, Compose, Caret, LParen, RParen };

struct Token {
  Tok kind = Tok::End;
  std::size_t offset = 0;
  std::string text;
};

constexpr std::string_view kLambdaUtf8 = "\xCE\xBB";        // λ
constexpr std::string_view kComposeUtf8 = "\xE2\x88\x98";   // ∘

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const unsigned char ch = static_cast<unsigned char>(s[i]);
    if (std::isspace(ch)) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (s.substr(i, kLambdaUtf8.size()) == kLambdaUtf8) {
      out.push_back({Tok::Lambda, start, "L"});
      i += kLambdaUtf8.size();
      continue;
    }
    if (s.substr(i, kComposeUtf8.size()) == kComposeUtf8) {
      out.push_back({Tok::Compose, start, "o"});
      i += kComposeUtf8.size();
      continue;
    }
    if (std::isdigit(ch)) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i < s.size() && s[i] == '/') {
        ++i;
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) {
          throw ParseError("expected denominator", i);
        }
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      }
      out.push_back({Tok::Number, start, std::string(s.substr(start, i - start))});
      continue;
    }
    if (std::isalpha(ch) || ch == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      std::string word(s.substr(start, i - start));
      if (word == "o") {
        out.push_back({Tok::Compose, start, word});
      } else if (word == "L") {
        out.push_back({Tok::Lambda, start, word});
      } else {
        out.push_back({Tok::Ident, start, std::move(word)});
      }
      continue;
    }
    Tok kind;
    switch (ch) {
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '*': kind = Tok::Star; break;
      case '^': kind = Tok::Caret; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      default: throw ParseError("unexpected character '" + std::string(1, s[i]) + "'", i);
    }
    out.push_back({kind, start, std::string(1, s[i])});
    ++i;
  }
  out.push_back({Tok::End, s.size(), ""});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ExprNode parse() {
    if (peek().kind == Tok::End) throw ParseError("empty expression", peek().offset);
    ExprNode e = sum();
    if (peek().kind != Tok::End) throw ParseError("unexpected '" + peek().text + "'", peek().offset);
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }

  ExprNode sum() {
    ExprNode lhs = signed_term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const Token op = take();
      ExprNode rhs = signed_term();
      lhs = binary(op.kind == Tok::Plus ? ExprNode::Kind::Sum : ExprNode::Kind::Difference, op.offset,
                   std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  ExprNode signed_term() {
    if (peek().kind == Tok::Minus) {
      const Token op = take();
      ExprNode n;
      n.kind = ExprNode::Kind::Negate;
      n.offset = op.offset;
      n.args.push_back(signed_term());
      return n;
    }
    return product();
  }

  ExprNode product() {
    ExprNode lhs = composition();
    while (peek().kind == Tok::Star) {
      const Token op = take();
      lhs = binary(ExprNode::Kind::Product, op.offset, std::move(lhs), composition());
    }
    return lhs;
  }

  ExprNode composition() {
    ExprNode lhs = power();
    while (peek().kind == Tok::Compose) {
      const Token op = take();
      lhs = binary(ExprNode::Kind::Compose, op.offset, std::move(lhs), power());
    }
    return lhs;
  }

  ExprNode power() {
    ExprNode base = atom();
    while (peek().kind == Tok::Caret) {
      const Token op = take();
      const Token& e = peek();
      if (e.kind != Tok::Number || e.text.find('/') != std::string::npos) {
        throw ParseError("exponent must be a nonnegative integer", e.offset);
      }
      unsigned long v = 0;
      try {
        v = std::stoul(e.text);
      } catch (const std::exception&) {
        throw ParseError("exponent too large", e.offset);
      }
      if (v > 10000) throw ParseError("exponent too large", e.offset);
      take();
      ExprNode n;
      n.kind = ExprNode::Kind::Power;
      n.offset = op.offset;
      n.exponent = static_cast<unsigned>(v);
      n.args.push_back(std::move(base));
      base = std::move(n);
    }
    return base;
  }

  ExprNode atom() {
    const Token& t = peek();
    ExprNode n;
    n.offset = t.offset;
    switch (t.kind) {
      case Tok::Ident:
        n.kind = t.text == "D" ? ExprNode::Kind::D : ExprNode::Kind::Generator;
        if (n.kind == ExprNode::Kind::Generator) n.name = t.text;
        take();
        return n;
      case Tok::Lambda:
        n.kind = ExprNode::Kind::Lambda;
        take();
        return n;
      case Tok::Number:
        n.kind = ExprNode::Kind::Rational;
        try {
          n.value = Rational::parse(t.text);
        } catch (const std::exception&) {
          throw ParseError("bad rational '" + t.text + "'", t.offset);
        }
        take();
        return n;
      case Tok::LParen: {
        take();
        n.kind = ExprNode::Kind::Group;
        if (peek().kind == Tok::RParen) throw ParseError("empty parentheses", peek().offset);
        n.args.push_back(sum());
        if (peek().kind != Tok::RParen) throw ParseError("expected ')'", peek().offset);
        take();
        return n;
      }
      case Tok::End:
        throw ParseError("unexpected end of input", t.offset);
      default:
        throw ParseError("unexpected '" + t.text + "'", t.offset);
    }
  }

  static ExprNode binary(ExprNode::Kind kind, std::size_t offset, ExprNode lhs, ExprNode rhs) {
    ExprNode n;
    n.kind = kind;
    n.offset = offset;
    n.args.push_back(std::move(lhs));
    n.args.push_back(std::move(rhs));
    return n;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

ExprNode parse_operator_expr(std::string_view text) { return Parser(lex(text)).parse(); }

OperatorElem elaborate(const ExprNode& ast, const SignaturePtr& sig) {
  using K = ExprNode::Kind;
  switch (ast.kind) {
    case K::D:
      return OperatorElem::derivation(sig, 1);
    case K::Generator:
      if (!sig->index_of(ast.name)) {
        throw ElaborationError("unknown generator '" + ast.name + "' for signature " + sig->name() + " at offset " +
                               std::to_string(ast.offset));
      }
      return OperatorElem(FuncElem::generator(sig, ast.name));
    case K::Lambda:
      return OperatorElem(FuncElem::lambda(sig));
    case K::Rational:
      return OperatorElem(FuncElem::constant(sig, LambdaPoly(ast.value)));
    case K::Negate:
      return -elaborate(ast.args[0], sig);
    case K::Group:
      return elaborate(ast.args[0], sig);
    case K::Sum:
      return elaborate(ast.args[0], sig) + elaborate(ast.args[1], sig);
    case K::Difference:
      return elaborate(ast.args[0], sig) - elaborate(ast.args[1], sig);
    case K::Compose:
      return op_compose(elaborate(ast.args[0], sig), elaborate(ast.args[1], sig));
    case K::Power:
      return op_power(elaborate(ast.args[0], sig), ast.exponent);
    case K::Product: {
      OperatorElem a = elaborate(ast.args[0], sig);
      OperatorElem b = elaborate(ast.args[1], sig);
      if (a.order() <= 0) return a.coeff(0) * b;
      if (b.order() <= 0) return b.coeff(0) * a;
      throw ElaborationError("'*' between two operators containing D at offset " + std::to_string(ast.offset) +
                             "; use 'o' for composition");
    }
  }
  throw std::logic_error("unknown node kind");
}

std::string to_sexpr(const ExprNode& ast) {
  using K = ExprNode::Kind;
  auto bin = [&](const char* op) { return "(" + to_sexpr(ast.args[0]) + " " + op + " " + to_sexpr(ast.args[1]) + ")"; };
  switch (ast.kind) {
    case K::D: return "D";
    case K::Generator: return ast.name;
    case K::Lambda: return "L";
    case K::Rational: return ast.value.to_string();
    case K::Negate: return "(-" + to_sexpr(ast.args[0]) + ")";
    case K::Group: return to_sexpr(ast.args[0]);
    case K::Sum: return bin("+");
    case K::Difference: return bin("-");
    case K::Product: return bin("*");
    case K::Compose: return bin("o");
    case K::Power: return "(" + to_sexpr(ast.args[0]) + "^" + std::to_string(ast.exponent) + ")";
  }
  return "?";
}

}  // namespace opident::cli
