#include "lie/parse.hpp"

#include <cctype>

namespace lie {

ParseError::ParseError(std::size_t column, const std::string& message)
    : InputError("parse error at column " + std::to_string(column) + ": " + message), column_(column) {}

namespace {

struct Token {
  enum class Kind { kEnd, kInt, kIdent, kSymbol };
  Kind kind = Kind::kEnd;
  std::string text;
  std::size_t column = 0;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    Token t;
    t.column = i + 1;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Token::Kind::kInt;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) t.text += s[i++];
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Token::Kind::kIdent;
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) t.text += s[i++];
    } else if (std::string_view("+-*/^()[],:").find(c) != std::string_view::npos) {
      t.kind = Token::Kind::kSymbol;
      t.text = std::string(1, c);
      ++i;
    } else {
      throw ParseError(i + 1, std::string("unexpected character '") + c + "'");
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.column = s.size() + 1;
  out.push_back(end);
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  std::unique_ptr<Expr> parse() {
    if (peek().kind == Token::Kind::kEnd) throw ParseError(peek().column, "empty expression");
    auto e = expr();
    if (peek().kind != Token::Kind::kEnd) throw ParseError(peek().column, "unexpected '" + peek().text + "'");
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool is(const char* sym) const { return peek().kind == Token::Kind::kSymbol && peek().text == sym; }
  const Token& take() { return toks_[pos_++]; }
  void expect(const char* sym) {
    if (!is(sym)) {
      const Token& t = peek();
      throw ParseError(t.column, std::string("expected '") + sym + "'" +
                                     (t.kind == Token::Kind::kEnd ? " before end of input" : ", found '" + t.text + "'"));
    }
    ++pos_;
  }

  static std::unique_ptr<Expr> node(Expr::Kind k, std::size_t column) {
    auto e = std::make_unique<Expr>();
    e->kind = k;
    e->column = column;
    return e;
  }
  static std::unique_ptr<Expr> binary(Expr::Kind k, std::size_t column, std::unique_ptr<Expr> a,
                                      std::unique_ptr<Expr> b) {
    auto e = node(k, column);
    e->args.push_back(std::move(a));
    e->args.push_back(std::move(b));
    return e;
  }

  std::unique_ptr<Expr> expr() {
    auto lhs = term();
    while (is("+") || is("-")) {
      const Token& op = take();
      lhs = binary(op.text == "+" ? Expr::Kind::kAdd : Expr::Kind::kSub, op.column, std::move(lhs), term());
    }
    return lhs;
  }

  std::unique_ptr<Expr> term() {
    auto lhs = unary();
    while (is("*") || is("/")) {
      const Token& op = take();
      lhs = binary(op.text == "*" ? Expr::Kind::kMul : Expr::Kind::kDiv, op.column, std::move(lhs), unary());
    }
    return lhs;
  }

  std::unique_ptr<Expr> unary() {
    if (is("-")) {
      auto e = node(Expr::Kind::kNeg, take().column);
      e->args.push_back(unary());
      return e;
    }
    auto base = atom();
    if (is("^")) {
      auto e = node(Expr::Kind::kPow, take().column);
      bool neg = false;
      if (is("-")) {
        take();
        neg = true;
      }
      if (peek().kind != Token::Kind::kInt) throw ParseError(peek().column, "expected an integer exponent");
      e->exponent = small_int(take());
      if (neg) e->exponent = -e->exponent;
      e->args.push_back(std::move(base));
      return e;
    }
    return base;
  }

  static int small_int(const Token& t) {
    if (t.text.size() > 6) throw ParseError(t.column, "integer too large");
    return std::stoi(t.text);
  }

  long signed_int() {
    bool neg = false;
    if (is("-")) {
      take();
      neg = true;
    }
    if (peek().kind != Token::Kind::kInt) throw ParseError(peek().column, "expected an integer");
    long v = small_int(take());
    return neg ? -v : v;
  }

  Rational signed_rational() {
    const std::size_t col = peek().column;
    Rational v(signed_int());
    if (is("/")) {
      take();
      if (peek().kind != Token::Kind::kInt) throw ParseError(peek().column, "expected a denominator");
      const Token& d = take();
      if (std::stol(d.text) == 0) throw ParseError(col, "zero denominator");
      v /= Rational(Integer(d.text));
    }
    v.canonicalize();
    return v;
  }

  std::unique_ptr<Expr> atom() {
    const Token& t = peek();
    if (t.kind == Token::Kind::kInt) {
      take();
      auto e = node(Expr::Kind::kNumber, t.column);
      e->number = Rational(Integer(t.text));
      return e;
    }
    if (is("(")) {
      take();
      auto e = expr();
      expect(")");
      return e;
    }
    if (t.kind != Token::Kind::kIdent) {
      throw ParseError(t.column, t.kind == Token::Kind::kEnd ? "unexpected end of input" : "unexpected '" + t.text + "'");
    }
    take();
    if (is("[")) {
      take();
      auto e = node(Expr::Kind::kAtom, t.column);
      e->name = t.text;
      e->index.push_back(signed_int());
      while (is(",")) {
        take();
        e->index.push_back(signed_int());
      }
      expect("]");
      return e;
    }
    if (is(":")) {
      take();
      expect("[");
      auto e = node(Expr::Kind::kValues, t.column);
      e->name = t.text;
      e->values.push_back(signed_rational());
      while (is(",")) {
        take();
        e->values.push_back(signed_rational());
      }
      expect("]");
      return e;
    }
    if (is("(")) {
      take();
      auto e = node(Expr::Kind::kCall, t.column);
      e->name = t.text;
      e->args.push_back(expr());
      expect(")");
      return e;
    }
    if (t.text == "v0") return node(Expr::Kind::kVector, t.column);
    throw ParseError(t.column, "unknown name '" + t.text + "'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// Walks the tree with a domain-specific set of operations.
template <class Ops>
typename Ops::Value evaluate(const Expr& e, const Ops& ops) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::kNumber:
      return ops.number(e.number);
    case K::kAtom:
      return ops.atom(e);
    case K::kValues:
      return ops.values(e);
    case K::kVector:
      return ops.vector(e);
    case K::kCall:
      if (e.name != "inv") throw ParseError(e.column, "unknown function '" + e.name + "'");
      return ops.div(e, ops.number(Rational(1)), evaluate(*e.args[0], ops));
    case K::kNeg:
      return ops.neg(evaluate(*e.args[0], ops));
    case K::kAdd:
      return ops.add(e, evaluate(*e.args[0], ops), evaluate(*e.args[1], ops));
    case K::kSub:
      return ops.add(e, evaluate(*e.args[0], ops), ops.neg(evaluate(*e.args[1], ops)));
    case K::kMul:
      return ops.mul(e, evaluate(*e.args[0], ops), evaluate(*e.args[1], ops));
    case K::kDiv:
      return ops.div(e, evaluate(*e.args[0], ops), evaluate(*e.args[1], ops));
    case K::kPow:
      return ops.pow(e, evaluate(*e.args[0], ops), e.exponent);
  }
  throw InternalError("unhandled expression kind");
}

[[noreturn]] void unsupported(const Expr& e, const std::string& what) { throw ParseError(e.column, what); }

void require_name(const Expr& e, std::initializer_list<const char*> names) {
  for (const char* n : names)
    if (e.name == n) return;
  std::string list;
  for (const char* n : names) list += (list.empty() ? "" : ", ") + std::string(n) + "[..]";
  unsupported(e, "unknown name '" + e.name + "' (expected " + list + ")");
}

/// Coroot coordinates for roots, the vector itself otherwise.
IntVec coroot_or_self(const RootSystem& rs, const IntVec& v) {
  if (auto a = rs.find_positive(v)) return rs.coroot(*a);
  if (auto a = rs.find_positive(negate(v))) return negate(rs.coroot(*a));
  return v;
}

// --- Lie algebra -------------------------------------------------------------

struct LieValue {
  bool scalar = true;
  Rational c = 0;
  LieElement x;
};

struct LieOps {
  using Value = LieValue;
  const ChevalleyBasis& g;

  Value number(const Rational& r) const { return {true, r, {}}; }
  Value atom(const Expr& e) const {
    require_name(e, {"e", "h"});
    const RootSystem& rs = g.roots();
    IntVec v = atom_vector(e, rs.rank());
    Value out{false, 0, {}};
    if (e.name == "e") {
      int s = g.symbol_for(v);
      if (s < 0) unsupported(e, "e" + to_string(v) + " is not a root vector");
      out.x.add(s, Rational(1));
    } else {
      IntVec c = coroot_or_self(rs, v);
      for (int i = 0; i < rs.rank(); ++i) out.x.add(g.cartan(i), Rational(c[i]));
      if (out.x.is_zero()) return number(0);
    }
    return out;
  }
  Value values(const Expr& e) const {
    if (e.name != "h") unsupported(e, "only h:[..] takes root values");
    std::vector<Rational> a;
    try {
      a = g.cartan_from_root_values(e.values);
    } catch (const InputError& err) {
      throw ParseError(e.column, err.what());
    }
    Value out{false, 0, {}};
    for (int i = 0; i < g.roots().rank(); ++i) out.x.add(g.cartan(i), a[i]);
    if (out.x.is_zero()) return number(0);
    return out;
  }
  Value vector(const Expr& e) const { unsupported(e, "v0 is not an element of the Lie algebra"); }
  Value neg(const Value& a) const { return {a.scalar, -a.c, -a.x}; }
  Value add(const Expr& e, const Value& a, const Value& b) const {
    if (a.scalar && b.scalar) return number(a.c + b.c);
    auto is_null = [](const Value& v) { return v.scalar && sgn(v.c) == 0; };
    if (is_null(a)) return b;
    if (is_null(b)) return a;
    if (a.scalar || b.scalar) unsupported(e, "cannot add a number to a Lie algebra element");
    return {false, 0, a.x + b.x};
  }
  Value mul(const Expr& e, const Value& a, const Value& b) const {
    if (a.scalar && b.scalar) return number(a.c * b.c);
    if (a.scalar) return {false, 0, b.x.scaled(a.c)};
    if (b.scalar) return {false, 0, a.x.scaled(b.c)};
    unsupported(e, "products of Lie algebra elements are not defined (use brackets in U(g))");
  }
  Value div(const Expr& e, const Value& a, const Value& b) const {
    if (!b.scalar) unsupported(e, "division by a Lie algebra element");
    if (sgn(b.c) == 0) unsupported(e, "division by zero");
    return mul(e, a, number(1 / b.c));
  }
  Value pow(const Expr& e, const Value& a, int n) const {
    if (!a.scalar) unsupported(e, "powers of Lie algebra elements are not defined");
    Rational r = 1;
    Rational base = n < 0 ? Rational(1 / a.c) : a.c;
    if (n < 0 && sgn(a.c) == 0) unsupported(e, "division by zero");
    for (int i = 0; i < std::abs(n); ++i) r *= base;
    return number(r);
  }
};

// --- coefficient ring --------------------------------------------------------

struct CoeffOps {
  using Value = LocRat;
  const CoefficientRing& ring;

  Value number(const Rational& r) const { return LocRat(ring, r); }
  Value atom(const Expr& e) const {
    const char* name = ring.kind() == RingKind::kClassical ? "H" : "h";
    require_name(e, {name});
    return LocRat::named(ring, atom_vector(e, ring.roots().rank()));
  }
  Value values(const Expr& e) const { unsupported(e, "root values are not a coefficient"); }
  Value vector(const Expr& e) const { unsupported(e, "v0 is not a coefficient"); }
  Value neg(const Value& a) const { return -a; }
  Value add(const Expr&, const Value& a, const Value& b) const { return a + b; }
  Value mul(const Expr&, const Value& a, const Value& b) const { return a * b; }
  Value div(const Expr& e, const Value& a, const Value& b) const {
    if (b.is_zero()) unsupported(e, "division by zero");
    try {
      return a / b;
    } catch (const EngineError& err) {
      throw ParseError(e.column, err.what());
    }
  }
  Value pow(const Expr& e, const Value& a, int n) const {
    if (n < 0) return div(e, number(1), a.pow(-n));
    return a.pow(n);
  }
};

// --- functions on g ----------------------------------------------------------

struct PolyOps {
  using Value = PolyFunc;
  const ClassicalContext& ctx;
  CoeffOps coeffs{ctx.ring()};

  Value number(const Rational& r) const { return PolyFunc(LocRat(ctx.ring(), r)); }
  Value atom(const Expr& e) const {
    require_name(e, {"E", "H"});
    if (e.name == "H") return PolyFunc(coeffs.atom(e));
    IntVec v = atom_vector(e, ctx.roots().rank());
    if (ctx.lie().symbol_for(v) < 0) unsupported(e, "E" + to_string(v) + " is not a root coordinate");
    return ctx.e_hat(v);
  }
  Value values(const Expr& e) const { unsupported(e, "root values are not a function"); }
  Value vector(const Expr& e) const { unsupported(e, "v0 is not a function on g"); }
  Value neg(const Value& a) const { return -a; }
  Value add(const Expr&, const Value& a, const Value& b) const { return a + b; }
  Value mul(const Expr&, const Value& a, const Value& b) const { return a * b; }
  Value div(const Expr& e, const Value& a, const Value& b) const {
    if (b.degree() > 0) unsupported(e, "division by a non-constant function of the coordinates E[..]");
    return a * coeffs.div(e, coeffs.number(1), b.constant_part());
  }
  Value pow(const Expr& e, const Value& a, int n) const {
    if (n < 0) return div(e, number(1), a.pow(-n));
    return a.pow(n);
  }
};

// --- U(g)' -------------------------------------------------------------------

struct UValue {
  UElement u;
  bool vector = false;
};

struct UOps {
  using Value = UValue;
  const QuantumContext& q;
  std::shared_ptr<const PbwBasis> basis;
  CoeffOps coeffs{q.ring()};

  Value scalar(const LocRat& c) const { return {q.scalar(basis, c), false}; }
  static bool is_scalar(const UElement& u) {
    for (const auto& [m, c] : u.terms())
      for (int x : m)
        if (x != 0) return false;
    return true;
  }
  Value number(const Rational& r) const { return scalar(LocRat(q.ring(), r)); }
  Value atom(const Expr& e) const {
    require_name(e, {"E", "F", "h"});
    if (e.name == "h") return scalar(coeffs.atom(e));
    IntVec v = atom_vector(e, q.roots().rank());
    auto beta = q.roots().find_positive(v);
    if (!beta) unsupported(e, e.name + to_string(v) + " needs a positive root");
    const auto& g = q.lie();
    return {q.generator(basis, e.name == "E" ? g.positive(*beta) : g.negative(*beta)), false};
  }
  Value values(const Expr& e) const { unsupported(e, "root values are not an element of U(g)"); }
  Value vector(const Expr&) const { return {q.one(basis), true}; }
  Value neg(const Value& a) const { return {-a.u, a.vector}; }
  Value add(const Expr& e, const Value& a, const Value& b) const {
    if (a.vector != b.vector) {
      if (a.u.is_zero()) return b;
      if (b.u.is_zero()) return a;
      unsupported(e, "cannot add a vector (ending in v0) and an algebra element");
    }
    return {a.u + b.u, a.vector};
  }
  Value mul(const Expr& e, const Value& a, const Value& b) const {
    if (a.vector) unsupported(e, "v0 must be the last factor");
    return {q.multiply(a.u, b.u), b.vector};
  }
  Value div(const Expr& e, const Value& a, const Value& b) const {
    if (b.vector || !is_scalar(b.u)) unsupported(e, "division by an element that is not in D(h)");
    LocRat inv = coeffs.div(e, coeffs.number(1), b.u.scalar_part());
    if (a.vector) unsupported(e, "v0 must be the last factor");
    return {q.right_scalar(a.u, inv), false};
  }
  Value pow(const Expr& e, const Value& a, int n) const {
    if (a.vector) unsupported(e, "powers of a vector are not defined");
    if (n < 0) {
      if (!is_scalar(a.u)) unsupported(e, "negative powers need an element of D(h)");
      return scalar(coeffs.pow(e, a.u.scalar_part(), n));
    }
    UElement r = q.one(basis);
    for (int i = 0; i < n; ++i) r = q.multiply(r, a.u);
    return {r, false};
  }
};

}  // namespace

std::unique_ptr<Expr> parse_expr(std::string_view text) { return Parser(text).parse(); }

IntVec atom_vector(const Expr& atom, int rank) {
  const auto& idx = atom.index;
  if (static_cast<int>(idx.size()) == rank) return IntVec(idx.begin(), idx.end());
  if (idx.size() == 1 && rank > 1) {
    long i = idx[0];
    long a = i < 0 ? -i : i;
    if (a < 1 || a > rank)
      throw ParseError(atom.column, "index " + std::to_string(i) + " outside 1.." + std::to_string(rank));
    IntVec v(rank, 0);
    v[a - 1] = i < 0 ? -1 : 1;
    return v;
  }
  throw ParseError(atom.column, atom.name + "[..] needs " + std::to_string(rank) + " entries, got " +
                                    std::to_string(idx.size()));
}

LieElement parse_lie(const ChevalleyBasis& g, std::string_view text) {
  auto e = parse_expr(text);
  LieValue v = evaluate(*e, LieOps{g});
  if (v.scalar) {
    if (sgn(v.c) != 0) throw ParseError(1, "a number is not a Lie algebra element");
    return {};
  }
  return v.x;
}

PolyFunc parse_poly(const ClassicalContext& ctx, std::string_view text) {
  auto e = parse_expr(text);
  return evaluate(*e, PolyOps{ctx});
}

LocRat parse_coeff(const CoefficientRing& ring, std::string_view text) {
  auto e = parse_expr(text);
  return evaluate(*e, CoeffOps{ring});
}

ParsedU parse_u(const QuantumContext& q, const std::shared_ptr<const PbwBasis>& basis, std::string_view text) {
  auto e = parse_expr(text);
  UValue v = evaluate(*e, UOps{q, basis});
  if (v.vector) return {q.quotient(v.u), true};
  return {v.u, false};
}

}  // namespace lie
