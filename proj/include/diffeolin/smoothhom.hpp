#pragma once

#include "diffeolin/diffspace.hpp"

#include <optional>
#include <string>
#include <vector>

namespace diffeolin {

enum class Smoothness { Smooth, NotSmooth, Unknown };
std::string to_string(Smoothness s);
/// NotSmooth dominates, then Unknown.
Smoothness combine(Smoothness a, Smoothness b);

/// Linear map between diffeological vector spaces, matrix in the fixed
/// bases (codomain.dim × domain.dim).
class LinearMap {
 public:
  LinearMap(DiffSpace domain, DiffSpace codomain, Matrix matrix);

  static LinearMap identity(const DiffSpace& v);

  const DiffSpace& domain() const { return domain_; }
  const DiffSpace& codomain() const { return codomain_; }
  const Matrix& matrix() const { return matrix_; }

  /// this ∘ inner
  LinearMap after(const LinearMap& inner) const;

 private:
  DiffSpace domain_;
  DiffSpace codomain_;
  Matrix matrix_;
};

struct SmoothDecision {
  Smoothness verdict = Smoothness::Unknown;
  /// For NotSmooth: a plot of the domain whose image is not a plot of the
  /// codomain.
  std::optional<Plot> witness;
  std::string reason;
};

/// Decides whether f maps plots to plots. Smooth and NotSmooth are certified;
/// Unknown means the conservative fragment cannot settle the question.
SmoothDecision is_smooth_linear(const LinearMap& f, const MembershipConfig& config = {});

/// Smooth linear functionals V -> R with the functional diffeology.
/// Coordinates of an element are taken w.r.t. the rows of `annihilator`.
struct DualSpace {
  DiffSpace base;
  Subspace annihilator;
  DiffSpace space;

  std::size_t dim() const { return annihilator.dim(); }
  /// The functional on R^{base.dim} with the given coordinates.
  Vector functional(const Vector& coords) const;
};

/// Errors: UnsupportedError for a dual of a dual.
DualSpace diffeological_dual(const DiffSpace& v);

/// L^∞(V, W) inside L(V, W) ≅ Q^{m·n}, entry (i, j) of the m×n matrix at
/// index i·n + j. Only Fine and Coarse codomains are supported.
Subspace smooth_hom_basis(const DiffSpace& v, const DiffSpace& w);

/// f*: W* -> V*, g ↦ g ∘ f, in annihilator coordinates. Requires f smooth.
LinearMap dual_map(const LinearMap& f, const MembershipConfig& config = {});

/// Full linear dual carrying the pushforward of V's diffeology along `iso`.
DiffSpace hat_dual(const DiffSpace& v, const Matrix& iso);

struct WellposednessReport {
  struct Violation {
    std::size_t sample;
    Membership first;
    Membership second;
  };
  std::vector<Membership> first;
  std::vector<Membership> second;
  std::vector<Violation> violations;
  /// Verdict under the second diffeology of iso2·iso1⁻¹ applied to the
  /// sample; every plot of the first must land on a plot of the second.
  std::vector<Membership> transported;
  std::size_t transport_failures = 0;

  bool consistent() const { return violations.empty(); }
};

/// Compares plot membership of each sample under the two pushforward
/// diffeologies, and checks that iso2·iso1⁻¹ carries plots to plots.
WellposednessReport hat_dual_wellposed(const DiffSpace& v, const Matrix& iso1, const Matrix& iso2,
                                       const std::vector<Plot>& samples, const MembershipConfig& config = {});

}  // namespace diffeolin
