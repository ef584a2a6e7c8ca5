#include "diffeolin/atom_algebra.hpp"

#include <sstream>

namespace diffeolin {

namespace {

void accumulate(FunctionExpr::Terms& terms, Atom a, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms.try_emplace(a, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

void accumulate(Polynomial& p, unsigned k, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = p.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

Rational power(const Rational& base, unsigned k) {
  Rational out = 1;
  for (unsigned i = 0; i < k; ++i) out *= base;
  return out;
}

}  // namespace

FunctionExpr::FunctionExpr(Terms terms) {
  for (auto& [a, c] : terms) accumulate(terms_, a, c);
}

FunctionExpr FunctionExpr::constant(const Rational& c) { return atom(Atom::mono(0), c); }

FunctionExpr FunctionExpr::atom(Atom a, const Rational& coeff) {
  FunctionExpr f;
  accumulate(f.terms_, a, coeff);
  return f;
}

FunctionExpr FunctionExpr::from_parts(const Polynomial& smooth, const Polynomial& singular) {
  FunctionExpr f;
  for (const auto& [k, c] : smooth) accumulate(f.terms_, Atom::mono(k), c);
  for (const auto& [k, c] : singular) accumulate(f.terms_, Atom::abs_mono(k), c);
  return f;
}

Rational FunctionExpr::coefficient(Atom a) const {
  auto it = terms_.find(a);
  return it == terms_.end() ? Rational(0) : it->second;
}

unsigned FunctionExpr::max_degree() const {
  unsigned d = 0;
  for (const auto& [a, c] : terms_) d = std::max(d, a.degree);
  return d;
}

Polynomial FunctionExpr::smooth_part() const {
  Polynomial p;
  for (const auto& [a, c] : terms_)
    if (a.kind == Atom::Kind::Mono) p.emplace(a.degree, c);
  return p;
}

Polynomial FunctionExpr::singular_part() const {
  Polynomial p;
  for (const auto& [a, c] : terms_)
    if (a.kind == Atom::Kind::AbsMono) p.emplace(a.degree, c);
  return p;
}

Rational FunctionExpr::eval(const Rational& x) const {
  const Rational ax = abs(x);
  Rational acc = 0;
  for (const auto& [a, c] : terms_) {
    Rational term = c * power(x, a.degree);
    if (a.kind == Atom::Kind::AbsMono) term *= ax;
    acc += term;
  }
  return acc;
}

FunctionExpr FunctionExpr::operator-() const {
  FunctionExpr out = *this;
  for (auto& [a, c] : out.terms_) c = -c;
  return out;
}

FunctionExpr operator+(const FunctionExpr& f, const FunctionExpr& g) {
  FunctionExpr out = f;
  for (const auto& [a, c] : g.terms_) accumulate(out.terms_, a, c);
  return out;
}

FunctionExpr operator-(const FunctionExpr& f, const FunctionExpr& g) { return f + (-g); }

FunctionExpr operator*(const FunctionExpr& f, const FunctionExpr& g) {
  FunctionExpr out;
  for (const auto& [a, ca] : f.terms_) {
    for (const auto& [b, cb] : g.terms_) {
      const unsigned deg = a.degree + b.degree;
      const bool a_abs = a.kind == Atom::Kind::AbsMono;
      const bool b_abs = b.kind == Atom::Kind::AbsMono;
      Atom product;
      if (a_abs && b_abs) {
        product = Atom::mono(deg + 2);  // |x|^2 = x^2
      } else if (a_abs || b_abs) {
        product = Atom::abs_mono(deg);
      } else {
        product = Atom::mono(deg);
      }
      accumulate(out.terms_, product, ca * cb);
    }
  }
  return out;
}

FunctionExpr operator*(const Rational& c, const FunctionExpr& f) {
  if (c == 0) return {};
  FunctionExpr out = f;
  for (auto& [a, coeff] : out.terms_) coeff *= c;
  return out;
}

std::string FunctionExpr::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [a, c] : terms_) {
    const bool negative = c < 0;
    const Rational mag = abs(c);
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;

    std::string atom_text;
    if (a.kind == Atom::Kind::AbsMono) {
      atom_text = "abs(x)";
      if (a.degree == 1) atom_text += "*x";
      if (a.degree > 1) atom_text += "*x^" + std::to_string(a.degree);
    } else if (a.degree == 1) {
      atom_text = "x";
    } else if (a.degree > 1) {
      atom_text = "x^" + std::to_string(a.degree);
    }

    if (atom_text.empty()) {
      os << diffeolin::to_string(mag);
    } else if (mag == 1) {
      os << atom_text;
    } else {
      os << diffeolin::to_string(mag) << '*' << atom_text;
    }
  }
  return os.str();
}

FunctionExpr add(const FunctionExpr& f, const FunctionExpr& g) { return f + g; }

FunctionExpr multiply(const FunctionExpr& f, const FunctionExpr& g) { return f * g; }

Polynomial singular_residue(const FunctionExpr& f) { return f.singular_part(); }

bool is_smooth(const FunctionExpr& f) { return singular_residue(f).empty(); }

FunctionExpr compose_scale(const FunctionExpr& f, const Rational& c) {
  FunctionExpr::Terms terms;
  const Rational abs_c = abs(c);
  for (const auto& [a, coeff] : f.terms()) {
    Rational factor = power(c, a.degree);
    if (a.kind == Atom::Kind::AbsMono) factor *= abs_c;
    terms[a] = coeff * factor;
  }
  return FunctionExpr(std::move(terms));
}

Polynomial poly_add(const Polynomial& a, const Polynomial& b) {
  Polynomial out = a;
  for (const auto& [k, c] : b) accumulate(out, k, c);
  return out;
}

Polynomial poly_scale(const Polynomial& a, const Rational& c) {
  if (c == 0) return {};
  Polynomial out = a;
  for (auto& [k, coeff] : out) coeff *= c;
  return out;
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [i, ci] : a)
    for (const auto& [j, cj] : b) accumulate(out, i + j, ci * cj);
  return out;
}

}  // namespace diffeolin
