#pragma once

// Text forms of Lie elements, functions on g/b and elements of U(g)'.
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' ['-'] int)?
//   atom   := int | '(' expr ')' | name '[' ints ']' | name ':[' rationals ']'
//           | 'inv(' expr ')' | 'v0'
//
// Bracket vectors are in simple-root coordinates. In rank > 1 a single entry
// [i] abbreviates the i-th unit vector (sign kept), so h[2] is h_{alpha_2}.

#include "lie/chevalley.hpp"
#include "lie/classical.hpp"
#include "lie/quantum.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace lie {

class ParseError : public InputError {
 public:
  ParseError(std::size_t column, const std::string& message);
  /// 1-based column of the offending token.
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

struct Expr {
  enum class Kind { kNumber, kAtom, kValues, kVector, kNeg, kAdd, kSub, kMul, kDiv, kPow, kCall };
  Kind kind;
  std::size_t column = 0;
  Rational number;                  // kNumber
  std::string name;                 // kAtom, kValues, kCall
  std::vector<long> index;          // kAtom
  std::vector<Rational> values;     // kValues
  int exponent = 0;                 // kPow
  std::vector<std::unique_ptr<Expr>> args;
};

std::unique_ptr<Expr> parse_expr(std::string_view text);

/// Root-lattice vector of an atom; expands the single-index shorthand.
IntVec atom_vector(const Expr& atom, int rank);

/// e[v] root vectors, h[v] coroots (sum v_i h_i when v is not a root),
/// h:[x_1..x_r] the Cartan element with alpha_i(h) = x_i.
LieElement parse_lie(const ChevalleyBasis& g, std::string_view text);

/// E[v] coordinates, H[v] = v(h), inv(.) and '/' for admissible divisors.
PolyFunc parse_poly(const ClassicalContext& ctx, std::string_view text);

/// Element of the coefficient ring: h[v] or H[v] atoms (matching the ring).
LocRat parse_coeff(const CoefficientRing& ring, std::string_view text);

/// E[v], F[v] root generators (v positive), h[v] Cartan scalars, and a final
/// v0 that turns the result into a vector (image in the quotient).
struct ParsedU {
  UElement value;
  bool is_vector = false;
};
ParsedU parse_u(const QuantumContext& q, const std::shared_ptr<const PbwBasis>& basis, std::string_view text);

}  // namespace lie
