#pragma once

#include "diffeolin/rational.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <string>

namespace diffeolin {

/// Basis element of the function algebra: x^k (Mono) or |x|·x^k (AbsMono).
/// Mono atoms are C^∞; AbsMono of degree k is C^k at the origin but not C^{k+1}.
struct Atom {
  enum class Kind : std::uint8_t { Mono, AbsMono };

  Kind kind = Kind::Mono;
  unsigned degree = 0;

  static constexpr Atom mono(unsigned k) { return {Kind::Mono, k}; }
  static constexpr Atom abs_mono(unsigned k) { return {Kind::AbsMono, k}; }

  friend constexpr auto operator<=>(const Atom&, const Atom&) = default;
};

/// Coefficient map degree -> rational; zero coefficients are never stored.
using Polynomial = std::map<unsigned, Rational>;

/// Element of span_Q{ x^k, |x|·x^k }. Canonical: no stored zero
/// coefficients, so equality is structural. Immutable in practice: every
/// operation returns a new value.
class FunctionExpr {
 public:
  using Terms = std::map<Atom, Rational>;

  FunctionExpr() = default;
  explicit FunctionExpr(Terms terms);

  static FunctionExpr constant(const Rational& c);
  static FunctionExpr atom(Atom a, const Rational& coeff = 1);
  static FunctionExpr x_pow(unsigned k, const Rational& coeff = 1) { return atom(Atom::mono(k), coeff); }
  static FunctionExpr abs_x_pow(unsigned k, const Rational& coeff = 1) { return atom(Atom::abs_mono(k), coeff); }
  /// p(x) + |x|·q(x)
  static FunctionExpr from_parts(const Polynomial& smooth, const Polynomial& singular);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(Atom a) const;
  /// Largest atom degree present, 0 for the zero function.
  unsigned max_degree() const;

  Polynomial smooth_part() const;
  Polynomial singular_part() const;

  Rational eval(const Rational& x) const;

  /// Evaluation in any field-like numeric type constructible from double.
  /// `convert` maps each exact coefficient into T without loss.
  template <class T, class Convert>
  T eval_as(T x, Convert&& convert) const;

  FunctionExpr operator-() const;
  friend FunctionExpr operator+(const FunctionExpr& f, const FunctionExpr& g);
  friend FunctionExpr operator-(const FunctionExpr& f, const FunctionExpr& g);
  friend FunctionExpr operator*(const FunctionExpr& f, const FunctionExpr& g);
  friend FunctionExpr operator*(const Rational& c, const FunctionExpr& f);
  friend bool operator==(const FunctionExpr&, const FunctionExpr&) = default;

  /// Text in the expression grammar, e.g. "3*x^2 - 1/2*abs(x)*x".
  std::string to_string() const;

 private:
  Terms terms_;
};

FunctionExpr add(const FunctionExpr& f, const FunctionExpr& g);
FunctionExpr multiply(const FunctionExpr& f, const FunctionExpr& g);

/// Coefficients of the |x|·x^k atoms. f is C^∞ iff this is empty, and the
/// map is linear in f.
Polynomial singular_residue(const FunctionExpr& f);

bool is_smooth(const FunctionExpr& f);

/// f(c·x). |c·x|·(c·x)^k = |c|·c^k·|x|·x^k keeps the algebra closed.
FunctionExpr compose_scale(const FunctionExpr& f, const Rational& c);

/// Polynomial helpers shared by the plot machinery.
Polynomial poly_add(const Polynomial& a, const Polynomial& b);
Polynomial poly_scale(const Polynomial& a, const Rational& c);
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);

template <class T, class Convert>
T FunctionExpr::eval_as(T x, Convert&& convert) const {
  // Horner on the smooth and singular parts separately.
  auto horner = [&](const Polynomial& p) {
    if (p.empty()) return T(0);
    T acc(0);
    unsigned deg = p.rbegin()->first;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
      while (deg > it->first) {
        acc = acc * x;
        --deg;
      }
      acc = acc + convert(it->second);
    }
    while (deg > 0) {
      acc = acc * x;
      --deg;
    }
    return acc;
  };
  const T ax = x < T(0) ? T(-x) : x;
  return horner(smooth_part()) + ax * horner(singular_part());
}

}  // namespace diffeolin
