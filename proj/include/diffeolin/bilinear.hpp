#pragma once

#include "diffeolin/smoothhom.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace diffeolin {

/// Bilinear map left × right -> codomain, stored as the codomain vectors
/// b(v_i, w_j) at flat index (i·m + j)·q + k.
class BilinearForm {
 public:
  BilinearForm(DiffSpace left, DiffSpace right, DiffSpace codomain);
  BilinearForm(DiffSpace left, DiffSpace right, DiffSpace codomain, std::vector<Rational> coefficients);

  const DiffSpace& left() const { return left_; }
  const DiffSpace& right() const { return right_; }
  const DiffSpace& codomain() const { return codomain_; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  Vector value(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const Vector& value);
  /// b(v, w) for arbitrary vectors.
  Vector evaluate(const Vector& v, const Vector& w) const;

  /// (w, v) ↦ b(v, w)
  BilinearForm transposed() const;

  friend bool operator==(const BilinearForm& a, const BilinearForm& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
    return (i * right_.dim() + j) * codomain_.dim() + k;
  }

  DiffSpace left_;
  DiffSpace right_;
  DiffSpace codomain_;
  std::vector<Rational> coeffs_;
};

struct BilinearDecision {
  Smoothness verdict = Smoothness::Unknown;
  /// For NotSmooth: plots (p, q) of left and right with b(p, q) not a plot.
  std::optional<std::pair<Plot, Plot>> witness;
  std::string reason;
};

/// Smoothness w.r.t. the product diffeology. Codomain must be Fine or Coarse.
BilinearDecision is_smooth_bilinear(const BilinearForm& b);

/// B^∞(V, W) ⊆ B(V, W) ≅ Q^{n·n·q} for V × V -> W.
Subspace smooth_bilinear_basis(const DiffSpace& v, const DiffSpace& w);

/// v ↦ (w ↦ b(v, w)): images[i] is the q×m matrix of F(v_i).
struct CurriedMap {
  DiffSpace domain;
  DiffSpace inner;
  DiffSpace codomain;
  std::vector<Matrix> images;

  friend bool operator==(const CurriedMap& a, const CurriedMap& b) { return a.images == b.images; }
};

/// Coefficient reshuffle without smoothness checks.
CurriedMap to_curried(const BilinearForm& b);

/// Requires b smooth. Asserts that every F(v_i) is a smooth linear map.
CurriedMap curry(const BilinearForm& b, const MembershipConfig& config = {});

BilinearForm uncurry(const CurriedMap& g);

/// Smoothness of G: V -> L^∞(V', W) read off the curried form: every G(v_i)
/// must be smooth and, through the evaluation criterion for functional
/// diffeologies, (u, v') ↦ G(p(u))(v') must be a plot for every plot p of V
/// and constant v'.
BilinearDecision is_smooth_curried(const CurriedMap& g, const MembershipConfig& config = {});

/// Linear maps G: V -> L(V, W) whose uncurried form is smooth, as a subspace
/// of Q^{n·q·n} with G(v_i)[k][j] at index i·q·n + k·n + j.
Subspace smooth_curried_basis(const DiffSpace& v, const DiffSpace& w);

/// Reinterprets a point of Q^{n·n·q} (bilinear layout) as a form.
BilinearForm bilinear_from_coordinates(const DiffSpace& v, const DiffSpace& w, const Vector& coords);
/// Flattens a curried map into the layout of smooth_curried_basis.
Vector curried_coordinates(const CurriedMap& g);
/// Inverse of curried_coordinates for G: V -> L(V, W).
CurriedMap curried_from_coordinates(const DiffSpace& v, const DiffSpace& w, const Vector& coords);

}  // namespace diffeolin
