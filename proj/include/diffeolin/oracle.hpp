#pragma once

#include "diffeolin/diffspace.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace diffeolin {

/// Numeric smoothness classifier at the origin. Independent of the symbolic
/// side: it only ever sees point values.
struct OracleConfig {
  unsigned max_order = 8;
  /// Half-widths h = 2^-e for e in [min_exponent, max_exponent].
  unsigned min_exponent = 2;
  unsigned max_exponent = 20;
  double growth_threshold = 10.0;
  unsigned agreement_policy = 3;
  /// Multiple of the estimated rounding noise below which a divided
  /// difference is not trusted.
  double noise_safety = 64.0;

  std::vector<double> scales() const;
};

struct OracleClass {
  enum class Kind { CInfinityLikely, NonSmoothAt0, SmoothUpTo };
  Kind kind = Kind::CInfinityLikely;
  /// NonSmoothAt0: the failing order. SmoothUpTo: the last order before one
  /// whose differences grew without reaching the divergence threshold.
  unsigned order = 0;

  std::string to_string() const;
  bool smooth_like() const { return kind != Kind::NonSmoothAt0; }
  friend bool operator==(const OracleClass&, const OracleClass&) = default;
};

/// One divided difference value. `status` is "noise" when the value sits
/// under the rounding floor, otherwise the outcome for its order:
/// "divergent", "bounded" or "inconclusive".
struct OracleSample {
  unsigned order;
  double scale;
  double value;
  bool trusted;
  std::string status;
};

using QuadFunction = std::function<__float128(__float128)>;

OracleClass classify(const QuadFunction& f, const OracleConfig& config = {}, std::vector<OracleSample>* trace = nullptr);
OracleClass classify(const FunctionExpr& f, const OracleConfig& config = {}, std::vector<OracleSample>* trace = nullptr);

/// Quad-precision evaluator for an expression (coefficients rounded once).
QuadFunction compile(const FunctionExpr& f);

struct CrossValidationTrial {
  Plot sample;
  FunctionExpr composed;  // functional ∘ sample
  bool symbolic_smooth;
  OracleClass numeric;
  bool agrees;
};

struct CrossValidationReport {
  std::string symbolic_verdict;  // is_smooth_linear of the functional
  std::vector<CrossValidationTrial> trials;
  std::size_t agreements = 0;
  bool skipped = false;  // coarse spaces have no sampled representation
  /// The symbolic map verdict is Smooth iff every trial composition is
  /// numerically smooth.
  bool verdict_consistent = true;

  double agreement_rate() const { return trials.empty() ? 1.0 : double(agreements) / double(trials.size()); }
};

/// Samples λ(x)·g(c·x) + s(x) from a Fine or Generated space, composes with
/// `functional` and compares the numeric class against the exact one.
CrossValidationReport cross_validate(const DiffSpace& space, const Vector& functional, std::size_t trials,
                                     std::uint64_t seed = 0x5eed, const OracleConfig& config = {});

}  // namespace diffeolin
