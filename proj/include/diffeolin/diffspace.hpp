#pragma once

#include "diffeolin/atom_algebra.hpp"
#include "diffeolin/linalg.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace diffeolin {

/// Raised when a dimension or shape precondition is violated.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an operation is asked about a diffeology it does not model.
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// One-variable plot R -> R^n, one coordinate function per basis vector.
class Plot {
 public:
  Plot() = default;
  explicit Plot(std::vector<FunctionExpr> components);

  static Plot zero(std::size_t n);
  static Plot constant(const Vector& v);
  /// x ↦ |x|·x^degree · direction
  static Plot kink(const Vector& direction, unsigned degree = 0);

  std::size_t target_dim() const { return components_.size(); }
  const std::vector<FunctionExpr>& components() const { return components_; }
  const FunctionExpr& operator[](std::size_t i) const { return components_.at(i); }

  /// Row d holds the coefficient vector of |x|·x^d; zero rows are kept so
  /// that row index == degree. Empty (0 rows) when the plot is classically
  /// smooth.
  Matrix residue_matrix() const;
  bool is_classically_smooth() const;
  unsigned max_degree() const;

  /// x ↦ m · p(x)
  Plot transformed(const Matrix& m) const;
  /// x ↦ λ(x) · p(x)
  Plot scaled(const FunctionExpr& lambda) const;
  /// x ↦ p(c·x)
  Plot reparametrized(const Rational& c) const;
  /// Coordinates of p followed by those of q.
  static Plot concat(const Plot& p, const Plot& q);
  /// Coordinates [offset, offset + n).
  Plot slice(std::size_t offset, std::size_t n) const;

  friend Plot operator+(const Plot& a, const Plot& b);
  friend Plot operator-(const Plot& a, const Plot& b);
  friend bool operator==(const Plot&, const Plot&) = default;

  std::string to_string() const;

 private:
  std::vector<FunctionExpr> components_;
};

class DiffSpace;

namespace descriptor {
struct Fine {};
struct Coarse {};
struct Generated {
  std::vector<Plot> generators;
};
struct DualOf {
  std::shared_ptr<const DiffSpace> base;
  Subspace annihilator;  // rows: functionals on R^{base.dim} that are smooth
};
struct TensorOf {
  std::shared_ptr<const DiffSpace> left;
  std::shared_ptr<const DiffSpace> right;
};
struct SumOf {
  std::shared_ptr<const DiffSpace> left;
  std::shared_ptr<const DiffSpace> right;
};
struct Pushforward {
  std::shared_ptr<const DiffSpace> base;
  Matrix iso;
  Matrix inverse;
};
}  // namespace descriptor

using Descriptor = std::variant<descriptor::Fine, descriptor::Coarse, descriptor::Generated, descriptor::DualOf,
                                descriptor::TensorOf, descriptor::SumOf, descriptor::Pushforward>;

/// Singular filtration F_0 ⊆ F_1 ⊆ ... of a space: F_d is spanned by the
/// directions r for which x ↦ |x|·x^d·r is known to be a plot. The last
/// entry is the singular span S, and F_d = S for every d past the end.
using Filtration = std::vector<Subspace>;

/// Finite-dimensional diffeological vector space R^n with a descriptor.
/// Values are immutable and cheap to copy. The singular filtration is
/// computed once, at construction.
class DiffSpace {
 public:
  /// Low-level constructor used by the module factories below and by the
  /// dual/tensor constructors of smoothhom and tensor.
  DiffSpace(std::size_t dim, Descriptor descriptor, Filtration filtration);

  std::size_t dim() const { return dim_; }
  const Descriptor& descriptor() const { return *descriptor_; }
  const Filtration& filtration() const { return *filtration_; }
  /// F_d with the stabilization convention.
  const Subspace& filtration_at(unsigned d) const;
  /// Index past which the filtration is constant.
  unsigned filtration_depth() const { return static_cast<unsigned>(filtration_->size() - 1); }

  template <class T>
  bool is() const {
    return std::holds_alternative<T>(*descriptor_);
  }
  template <class T>
  const T& as() const {
    return std::get<T>(*descriptor_);
  }

  std::string kind_name() const;
  std::string describe() const;

 private:
  std::size_t dim_;
  std::shared_ptr<const Descriptor> descriptor_;
  std::shared_ptr<const Filtration> filtration_;
};

DiffSpace make_fine(std::size_t n);
DiffSpace make_coarse(std::size_t n);
/// Vector space diffeology generated by all smooth maps plus `generators`.
DiffSpace make_generated(std::size_t n, std::vector<Plot> generators);
DiffSpace direct_sum(const DiffSpace& v, const DiffSpace& w);
/// Pushforward of the diffeology of v along an invertible square matrix.
DiffSpace make_pushforward(const DiffSpace& v, const Matrix& iso);

/// Obstruction space S_V: the annihilator of S_V is exactly the set of
/// smooth linear functionals. Supported for every descriptor; for DualOf it
/// is {0}, since evaluation at a fixed vector is smooth on any dual.
Subspace singular_span(const DiffSpace& v);

// --- plot membership -------------------------------------------------------

enum class Membership { Plot, NotPlot, Unknown };
std::string to_string(Membership m);

/// One term λ(x)·g(c·x) of a factorization through generator g.
struct FactorTerm {
  std::size_t generator = 0;
  Rational scale = 1;
  FunctionExpr multiplier;
};

struct PlotDecision {
  Membership verdict = Membership::Unknown;
  /// For NotPlot: a smooth linear functional (row vector) under which the
  /// candidate composes to a non-smooth function.
  std::optional<Vector> certificate;
  /// For Plot on a generated space: c − Σ λ_t(x)·g_t(c_t·x) is classically
  /// smooth.
  std::vector<FactorTerm> factorization;
  std::string reason;
};

struct MembershipConfig {
  /// Extra multiplier degrees beyond the largest residue degree in play.
  /// Default: 8.
  std::optional<unsigned> slack_degree;

  /// Reads DIFFEOLIN_SLACK_DEGREE when set; throws std::invalid_argument
  /// on a malformed value.
  static MembershipConfig from_environment();
};

/// Conservative membership test. Plot and NotPlot verdicts are certified;
/// Unknown is returned when neither certificate can be produced.
PlotDecision is_plot(const DiffSpace& v, const Plot& candidate, const MembershipConfig& config = {});

/// Plot assembled from a factorization (without the smooth remainder).
Plot assemble_factorization(const DiffSpace& v, const std::vector<FactorTerm>& terms);

}  // namespace diffeolin
