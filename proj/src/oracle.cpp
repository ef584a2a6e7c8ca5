#include "diffeolin/oracle.hpp"

#include "diffeolin/smoothhom.hpp"

#include <gmp.h>

#include <cmath>
#include <random>

namespace diffeolin {

namespace {

using quad = __float128;

constexpr quad kUnitRoundoff = 1.0Q / 5192296858534827628530496329220096.0Q;  // 2^-112

quad abs_q(quad x) { return x < 0 ? -x : x; }

bool finite_q(quad x) { return x == x && abs_q(x) <= 1.0e4000Q; }

quad to_quad(const mpz_class& z) {
  const mpz_srcptr raw = z.get_mpz_t();
  const std::size_t limbs = mpz_size(raw);
  quad out = 0;
  for (std::size_t i = limbs; i-- > 0;) out = out * 18446744073709551616.0Q + static_cast<quad>(mpz_getlimbn(raw, i));
  return mpz_sgn(raw) < 0 ? -out : out;
}

quad to_quad(const Rational& r) { return to_quad(r.get_num()) / to_quad(r.get_den()); }

/// Value and absolute-term magnitude of a compiled expression.
struct Compiled {
  std::vector<std::pair<unsigned, quad>> smooth;
  std::vector<std::pair<unsigned, quad>> singular;

  static quad power(quad x, unsigned k) {
    quad r = 1;
    while (k--) r *= x;
    return r;
  }
  quad value(quad x) const {
    quad s = 0, t = 0;
    for (const auto& [k, c] : smooth) s += c * power(x, k);
    for (const auto& [k, c] : singular) t += c * power(x, k);
    return s + abs_q(x) * t;
  }
  quad magnitude(quad x) const {
    const quad ax = abs_q(x);
    quad m = 0;
    for (const auto& [k, c] : smooth) m += abs_q(c) * power(ax, k);
    for (const auto& [k, c] : singular) m += abs_q(c) * power(ax, k + 1);
    return m;
  }
};

Compiled compile_terms(const FunctionExpr& f) {
  Compiled c;
  for (const auto& [k, v] : f.smooth_part()) c.smooth.emplace_back(k, to_quad(v));
  for (const auto& [k, v] : f.singular_part()) c.singular.emplace_back(k, to_quad(v));
  return c;
}

quad binomial(unsigned n, unsigned k) {
  quad r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * static_cast<quad>(n - k + i) / static_cast<quad>(i);
  return r;
}

enum class OrderStatus { Bounded, Divergent, Inconclusive, Overflow };

OracleClass classify_impl(const QuadFunction& f, const QuadFunction& magnitude, const OracleConfig& config,
                          std::vector<OracleSample>* trace) {
  if (config.max_order < 2) throw std::invalid_argument("oracle: max_order must be at least 2");
  if (config.growth_threshold <= 0 || config.noise_safety <= 0 || config.agreement_policy == 0)
    throw std::invalid_argument("oracle: thresholds must be positive");
  const std::vector<double> hs = config.scales();
  const quad eval_noise = kUnitRoundoff * 16;

  std::optional<unsigned> inconclusive_at;
  for (unsigned k = 1; k <= config.max_order; ++k) {
    std::vector<quad> values, noise;
    bool overflow = false;
    for (double hd : hs) {
      const quad h = hd;
      quad sum = 0, mag = 0;
      for (unsigned i = 0; i <= k; ++i) {
        const quad x = (static_cast<quad>(k) / 2 - static_cast<quad>(i)) * h;
        const quad w = binomial(k, i) * ((i % 2) ? -1 : 1);
        const quad fx = f(x);
        sum += w * fx;
        mag += abs_q(w) * (magnitude ? magnitude(x) : abs_q(fx));
      }
      quad hk = 1;
      for (unsigned i = 0; i < k; ++i) hk *= h;
      const quad d = sum / hk;
      if (!finite_q(d)) overflow = true;
      values.push_back(d);
      noise.push_back(eval_noise * mag / hk);
    }

    std::vector<bool> trusted(values.size());
    for (std::size_t s = 0; s < values.size(); ++s)
      trusted[s] = finite_q(values[s]) && noise[s] * static_cast<quad>(config.noise_safety) < abs_q(values[s]);

    OrderStatus status = overflow ? OrderStatus::Overflow : OrderStatus::Bounded;
    if (!overflow) {
      // Increments between successive scales; a divergent order shows a run
      // of same-sign, strictly growing, significant increments.
      std::size_t run = 0;
      quad first = 0, previous = 0;
      for (std::size_t s = 0; s + 1 < values.size(); ++s) {
        const quad e = values[s + 1] - values[s];
        const bool significant = abs_q(e) > static_cast<quad>(config.noise_safety) * (noise[s] + noise[s + 1]);
        if (significant && run > 0 && abs_q(e) > abs_q(previous) && (e > 0) == (previous > 0)) {
          ++run;
        } else if (significant) {
          run = 1;
          first = e;
        } else {
          run = 0;
        }
        previous = e;
        if (run > config.agreement_policy) {
          if (abs_q(e) >= static_cast<quad>(config.growth_threshold) * abs_q(first)) {
            status = OrderStatus::Divergent;
            break;
          }
          status = OrderStatus::Inconclusive;
        }
      }
    }

    if (trace) {
      const char* label = status == OrderStatus::Divergent      ? "divergent"
                          : status == OrderStatus::Inconclusive ? "inconclusive"
                          : status == OrderStatus::Overflow     ? "overflow"
                                                                : "bounded";
      for (std::size_t s = 0; s < values.size(); ++s)
        trace->push_back({k, hs[s], static_cast<double>(values[s]), trusted[s], trusted[s] ? label : "noise"});
    }
    if (status == OrderStatus::Divergent || status == OrderStatus::Overflow)
      return {OracleClass::Kind::NonSmoothAt0, k};
    if (status == OrderStatus::Inconclusive && !inconclusive_at) inconclusive_at = k;
  }
  if (inconclusive_at) return {OracleClass::Kind::SmoothUpTo, *inconclusive_at - 1};
  return {OracleClass::Kind::CInfinityLikely, config.max_order};
}

}  // namespace

std::vector<double> OracleConfig::scales() const {
  if (min_exponent > max_exponent) throw std::invalid_argument("oracle: empty scale grid");
  std::vector<double> out;
  for (unsigned e = min_exponent; e <= max_exponent; ++e) out.push_back(std::ldexp(1.0, -static_cast<int>(e)));
  return out;
}

std::string OracleClass::to_string() const {
  switch (kind) {
    case Kind::CInfinityLikely: return "CInfinityLikely";
    case Kind::NonSmoothAt0: return "NonSmoothAt0(" + std::to_string(order) + ")";
    case Kind::SmoothUpTo: return "SmoothUpTo(" + std::to_string(order) + ")";
  }
  return "?";
}

QuadFunction compile(const FunctionExpr& f) {
  auto c = std::make_shared<const Compiled>(compile_terms(f));
  return [c](quad x) { return c->value(x); };
}

OracleClass classify(const QuadFunction& f, const OracleConfig& config, std::vector<OracleSample>* trace) {
  return classify_impl(f, nullptr, config, trace);
}

OracleClass classify(const FunctionExpr& f, const OracleConfig& config, std::vector<OracleSample>* trace) {
  auto c = std::make_shared<const Compiled>(compile_terms(f));
  return classify_impl([c](quad x) { return c->value(x); }, [c](quad x) { return c->magnitude(x); }, config, trace);
}

namespace {

Rational random_rational(std::mt19937_64& rng, long bound) {
  std::uniform_int_distribution<long> num(-bound, bound);
  std::uniform_int_distribution<long> den(1, 4);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

FunctionExpr random_polynomial(std::mt19937_64& rng, unsigned max_degree) {
  Polynomial p;
  std::uniform_int_distribution<unsigned> deg(0, max_degree);
  const unsigned d = deg(rng);
  for (unsigned k = 0; k <= d; ++k)
    if (Rational c = random_rational(rng, 5); c != 0) p.emplace(k, c);
  return FunctionExpr::from_parts(p, {});
}

}  // namespace

CrossValidationReport cross_validate(const DiffSpace& space, const Vector& functional, std::size_t trials,
                                     std::uint64_t seed, const OracleConfig& config) {
  if (functional.size() != space.dim()) throw DimensionError("cross_validate: functional has the wrong length");
  CrossValidationReport report;
  const auto symbolic = is_smooth_linear(LinearMap(space, make_fine(1), Matrix::row_vector(functional)));
  report.symbolic_verdict = to_string(symbolic.verdict);
  if (space.is<descriptor::Coarse>()) {
    report.skipped = true;
    return report;
  }
  if (!space.is<descriptor::Fine>() && !space.is<descriptor::Generated>())
    throw UnsupportedError("cross_validate: space must be fine, coarse or generated, got " + space.kind_name());

  std::mt19937_64 rng(seed);
  const std::vector<Plot> gens =
      space.is<descriptor::Generated>() ? space.as<descriptor::Generated>().generators : std::vector<Plot>{};
  static const long scales[][2] = {{1, 1}, {-1, 1}, {2, 1}, {-2, 1}, {1, 2}, {-1, 2}, {3, 1}};
  bool any_numeric_kink = false, all_numeric_smooth = true;
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<FunctionExpr> smooth(space.dim());
    for (auto& s : smooth) s = random_polynomial(rng, 3);
    Plot sample(std::move(smooth));
    if (!gens.empty()) {
      const std::size_t g = t < gens.size() ? t : std::uniform_int_distribution<std::size_t>(0, gens.size() - 1)(rng);
      if (t < gens.size()) {
        sample = gens[g];  // bare generator first
      } else {
        const auto& c = scales[std::uniform_int_distribution<std::size_t>(0, 6)(rng)];
        FunctionExpr lambda = random_polynomial(rng, 2);
        if (lambda.coefficient(Atom::mono(0)) == 0) lambda = lambda + FunctionExpr::constant(1);
        sample = sample + gens[g].reparametrized(Rational(c[0], c[1])).scaled(lambda);
      }
    }
    FunctionExpr composed;
    for (std::size_t i = 0; i < functional.size(); ++i)
      if (functional[i] != 0) composed = composed + functional[i] * sample[i];
    const bool exact = is_smooth(composed);
    const OracleClass numeric = classify(composed, config);
    const bool agrees = exact == numeric.smooth_like();
    if (agrees) ++report.agreements;
    any_numeric_kink = any_numeric_kink || !numeric.smooth_like();
    all_numeric_smooth = all_numeric_smooth && numeric.smooth_like();
    report.trials.push_back({std::move(sample), std::move(composed), exact, numeric, agrees});
  }
  if (symbolic.verdict == Smoothness::Smooth) report.verdict_consistent = all_numeric_smooth;
  if (symbolic.verdict == Smoothness::NotSmooth) report.verdict_consistent = trials == 0 || any_numeric_kink;
  return report;
}

}  // namespace diffeolin
