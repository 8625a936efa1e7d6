#ifndef NILCERT_EXPR_HPP
#define NILCERT_EXPR_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "nilcert/word.hpp"

namespace nilcert {

// Word expression tree. The surface grammar produces Generator, Concat,
// Power and Commutator nodes; Conjugate exists for programmatic use and is
// lowered by the serializer.
class WordExpr {
public:
  enum class Kind { Generator, Concat, Power, Commutator, Conjugate };

  static WordExpr generator(uint32_t gen, int sign = 1);
  static WordExpr concat(std::vector<WordExpr> children);
  static WordExpr identity() { return concat({}); }
  static WordExpr power(WordExpr base, int64_t exponent);
  static WordExpr commutator(WordExpr left, WordExpr right);
  static WordExpr conjugate(WordExpr base, WordExpr by);

  Kind kind() const { return kind_; }
  uint32_t gen() const { return gen_; }
  int sign() const { return sign_; }
  int64_t exponent() const { return exponent_; }
  const std::vector<WordExpr>& children() const { return children_; }

  bool operator==(const WordExpr& o) const;

  // Evaluation into an arbitrary group: Ctx provides
  //   G one() const; G mul(G, G) const; G inv(G) const; G leaf(gen, sign) const;
  template <class Ctx>
  auto eval(const Ctx& ctx) const -> decltype(ctx.one()) {
    using G = decltype(ctx.one());
    switch (kind_) {
      case Kind::Generator:
        return ctx.leaf(gen_, sign_);
      case Kind::Concat: {
        G acc = ctx.one();
        for (const WordExpr& c : children_) acc = ctx.mul(acc, c.eval(ctx));
        return acc;
      }
      case Kind::Power: {
        G base = children_[0].eval(ctx);
        if (exponent_ < 0) base = ctx.inv(base);
        int64_t m = exponent_ < 0 ? -exponent_ : exponent_;
        G acc = ctx.one();
        for (int64_t i = 0; i < m; ++i) acc = ctx.mul(acc, base);
        return acc;
      }
      case Kind::Commutator: {
        G u = children_[0].eval(ctx);
        G v = children_[1].eval(ctx);
        return ctx.mul(ctx.mul(u, v), ctx.mul(ctx.inv(u), ctx.inv(v)));
      }
      case Kind::Conjugate: {
        G x = children_[0].eval(ctx);
        G g = children_[1].eval(ctx);
        return ctx.mul(ctx.mul(g, x), ctx.inv(g));
      }
    }
    throw std::logic_error("unreachable");
  }

  // Total number of generator leaves counted with multiplicity through
  // powers and brackets (the letter count before any cancellation).
  int64_t letter_count() const;

private:
  Kind kind_ = Kind::Concat;
  uint32_t gen_ = 0;
  int sign_ = 1;
  int64_t exponent_ = 0;
  std::vector<WordExpr> children_;
};

struct FreeGroupCtx {
  ReducedWord one() const { return {}; }
  ReducedWord mul(const ReducedWord& a, const ReducedWord& b) const { return a * b; }
  ReducedWord inv(const ReducedWord& a) const { return a.inverse(); }
  ReducedWord leaf(uint32_t gen, int sign) const { return ReducedWord::generator(gen, sign); }
};

struct ParseError : std::runtime_error {
  size_t offset;  // byte offset into the input
  ParseError(std::string msg, size_t off)
      : std::runtime_error(std::move(msg)), offset(off) {}
};

// Grammar:
//   word    := factor*                 (empty input and "1" mean the identity)
//   factor  := atom ("^" sint)?
//   atom    := ident | "1" | "[" word "," word "]" | "(" word ")"
//   sint    := ("-")? digit+
//   ident   := letter (letter|digit)*
WordExpr parse_word(std::string_view text, const Alphabet& X);

std::string serialize_expr(const WordExpr& e, const Alphabet& X);

inline ReducedWord eval_expr(const WordExpr& e) { return e.eval(FreeGroupCtx{}); }

// parse + evaluate
ReducedWord read_word(std::string_view text, const Alphabet& X);

}  // namespace nilcert

#endif
