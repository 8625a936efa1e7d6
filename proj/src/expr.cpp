#include "nilcert/expr.hpp"

#include <cctype>

namespace nilcert {

WordExpr WordExpr::generator(uint32_t gen, int sign) {
  WordExpr e;
  e.kind_ = Kind::Generator;
  e.gen_ = gen;
  e.sign_ = sign < 0 ? -1 : 1;
  return e;
}

WordExpr WordExpr::concat(std::vector<WordExpr> children) {
  WordExpr e;
  e.kind_ = Kind::Concat;
  e.children_ = std::move(children);
  return e;
}

WordExpr WordExpr::power(WordExpr base, int64_t exponent) {
  WordExpr e;
  e.kind_ = Kind::Power;
  e.exponent_ = exponent;
  e.children_.push_back(std::move(base));
  return e;
}

WordExpr WordExpr::commutator(WordExpr left, WordExpr right) {
  WordExpr e;
  e.kind_ = Kind::Commutator;
  e.children_.push_back(std::move(left));
  e.children_.push_back(std::move(right));
  return e;
}

WordExpr WordExpr::conjugate(WordExpr base, WordExpr by) {
  WordExpr e;
  e.kind_ = Kind::Conjugate;
  e.children_.push_back(std::move(base));
  e.children_.push_back(std::move(by));
  return e;
}

bool WordExpr::operator==(const WordExpr& o) const {
  if (kind_ != o.kind_) return false;
  switch (kind_) {
    case Kind::Generator:
      return gen_ == o.gen_ && sign_ == o.sign_;
    case Kind::Power:
      if (exponent_ != o.exponent_) return false;
      break;
    default:
      break;
  }
  return children_ == o.children_;
}

int64_t WordExpr::letter_count() const {
  switch (kind_) {
    case Kind::Generator:
      return 1;
    case Kind::Concat: {
      int64_t n = 0;
      for (const auto& c : children_) n += c.letter_count();
      return n;
    }
    case Kind::Power: {
      int64_t m = exponent_ < 0 ? -exponent_ : exponent_;
      return m * children_[0].letter_count();
    }
    case Kind::Commutator:
      return 2 * (children_[0].letter_count() + children_[1].letter_count());
    case Kind::Conjugate:
      return children_[0].letter_count() + 2 * children_[1].letter_count();
  }
  return 0;
}

namespace {

class Parser {
public:
  Parser(std::string_view text, const Alphabet& X) : text_(text), X_(X) {}

  WordExpr parse() {
    WordExpr w = word();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    return w;
  }

private:
  std::string_view text_;
  const Alphabet& X_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek_is(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  WordExpr word() {
    std::vector<WordExpr> factors;
    for (;;) {
      skip_ws();
      if (pos_ >= text_.size()) break;
      char c = text_[pos_];
      if (c == ']' || c == ')' || c == ',') break;
      factors.push_back(factor());
    }
    if (factors.size() == 1) return factors[0];
    return WordExpr::concat(std::move(factors));
  }

  WordExpr factor() {
    WordExpr a = atom();
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      return WordExpr::power(std::move(a), sint());
    }
    return a;
  }

  int64_t sint() {
    skip_ws();
    bool neg = false;
    if (pos_ < text_.size() && text_[pos_] == '-') {
      neg = true;
      ++pos_;
    }
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected integer exponent");
    int64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > (int64_t{1} << 40)) fail("exponent too large");
      ++pos_;
    }
    return neg ? -v : v;
  }

  WordExpr atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected atom");
    char c = text_[pos_];
    if (c == '[') {
      ++pos_;
      WordExpr l = word();
      expect(',');
      WordExpr r = word();
      expect(']');
      return WordExpr::commutator(std::move(l), std::move(r));
    }
    if (c == '(') {
      ++pos_;
      WordExpr w = word();
      expect(')');
      return w;
    }
    if (c == '1') {
      ++pos_;
      return WordExpr::identity();
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("expected generator, '[', '(' or '1'");
    size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string_view name = text_.substr(start, pos_ - start);
    auto idx = X_.index(name);
    if (!idx) {
      pos_ = start;
      fail("unknown generator '" + std::string(name) + "'");
    }
    return WordExpr::generator(*idx);
  }
};

// An atom in the grammar sense; parenthesize anything else.
std::string atom_str(const WordExpr& e, const Alphabet& X) {
  if (e.kind() == WordExpr::Kind::Generator && e.sign() > 0) return X.name(e.gen());
  if (e.kind() == WordExpr::Kind::Commutator) return serialize_expr(e, X);
  return "(" + serialize_expr(e, X) + ")";
}

}  // namespace

WordExpr parse_word(std::string_view text, const Alphabet& X) {
  return Parser(text, X).parse();
}

std::string serialize_expr(const WordExpr& e, const Alphabet& X) {
  switch (e.kind()) {
    case WordExpr::Kind::Generator:
      return e.sign() > 0 ? X.name(e.gen()) : X.name(e.gen()) + "^-1";
    case WordExpr::Kind::Concat: {
      if (e.children().empty()) return "1";
      std::string out;
      for (const auto& c : e.children()) {
        if (!out.empty()) out += ' ';
        bool needs_paren = c.kind() == WordExpr::Kind::Concat || c.kind() == WordExpr::Kind::Conjugate;
        out += needs_paren ? atom_str(c, X) : serialize_expr(c, X);
      }
      return out;
    }
    case WordExpr::Kind::Power:
      return atom_str(e.children()[0], X) + "^" + std::to_string(e.exponent());
    case WordExpr::Kind::Commutator:
      return "[" + serialize_expr(e.children()[0], X) + "," +
             serialize_expr(e.children()[1], X) + "]";
    case WordExpr::Kind::Conjugate: {
      std::string g = atom_str(e.children()[1], X);
      return g + " " + atom_str(e.children()[0], X) + " " + g + "^-1";
    }
  }
  throw std::logic_error("unreachable");
}

ReducedWord read_word(std::string_view text, const Alphabet& X) {
  return eval_expr(parse_word(text, X));
}

}  // namespace nilcert
