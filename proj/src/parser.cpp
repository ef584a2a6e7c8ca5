#include "diffeolin/parser.hpp"

#include <cctype>

namespace diffeolin {

namespace {

std::string join(const std::set<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  FunctionExpr parse() {
    FunctionExpr f = expr();
    skip();
    if (pos_ < text_.size()) fail({"'+'", "'-'", "'*'", "end of input"});
    return f;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(std::set<std::string> expected, const std::string& detail = "") {
    throw ParseError(pos_, std::move(expected), detail);
  }

  FunctionExpr expr() {
    FunctionExpr acc;
    bool negate = false;
    if (accept('-')) negate = true;
    else accept('+');
    acc = negate ? -term() : term();
    for (;;) {
      if (accept('+')) acc = acc + term();
      else if (accept('-')) acc = acc - term();
      else return acc;
    }
  }

  FunctionExpr term() {
    FunctionExpr acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  FunctionExpr factor() {
    if (accept('-')) return -factor();
    FunctionExpr base = primary();
    if (accept('^')) {
      const std::size_t at = pos_;
      const Rational e = integer();
      if (!e.get_num().fits_ulong_p()) {
        pos_ = at;
        fail({"exponent"}, "exponent too large");
      }
      FunctionExpr out = FunctionExpr::constant(1);
      for (unsigned long i = 0; i < e.get_num().get_ui(); ++i) out = out * base;
      return out;
    }
    return base;
  }

  Rational integer() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail({"integer"});
    if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E')) {
      pos_ = start;
      fail({"integer", "p/q rational"}, "floating-point literals are not allowed");
    }
    return Rational(mpz_class(std::string(text_.substr(start, pos_ - start))));
  }

  FunctionExpr primary() {
    skip();
    if (pos_ >= text_.size()) fail({"number", "'x'", "'abs'", "'('"});
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rational value = integer();
      if (accept('/')) {
        const std::size_t at = pos_;
        const Rational den = integer();
        if (den == 0) {
          pos_ = at;
          fail({"non-zero denominator"}, "division by zero");
        }
        value /= den;
      }
      return FunctionExpr::constant(value);
    }
    if (c == '.') fail({"number", "'x'", "'abs'", "'('"}, "floating-point literals are not allowed");
    if (c == 'x') {
      ++pos_;
      return FunctionExpr::x_pow(1);
    }
    if (text_.substr(pos_, 3) == "abs") {
      pos_ += 3;
      if (!accept('(')) fail({"'('"});
      skip();
      if (pos_ >= text_.size() || text_[pos_] != 'x') fail({"'x'"}, "only abs(x) is supported");
      ++pos_;
      if (!accept(')')) fail({"')'"});
      return FunctionExpr::abs_x_pow(0);
    }
    if (accept('(')) {
      FunctionExpr inner = expr();
      if (!accept(')')) fail({"')'", "'+'", "'-'", "'*'"});
      return inner;
    }
    fail({"number", "'x'", "'abs'", "'('"});
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ParseError::ParseError(std::size_t position, std::set<std::string> expected, const std::string& detail)
    : std::invalid_argument("parse error at position " + std::to_string(position) + ": expected " + join(expected) +
                            (detail.empty() ? "" : " (" + detail + ")")),
      position_(position),
      expected_(std::move(expected)) {}

FunctionExpr parse_expr(std::string_view text) { return Parser(text).parse(); }

}  // namespace diffeolin
