#include "diffeolin/diffspace.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <sstream>

namespace diffeolin {

// --- Plot ------------------------------------------------------------------

Plot::Plot(std::vector<FunctionExpr> components) : components_(std::move(components)) {}

Plot Plot::zero(std::size_t n) { return Plot(std::vector<FunctionExpr>(n)); }

Plot Plot::constant(const Vector& v) {
  std::vector<FunctionExpr> comps;
  comps.reserve(v.size());
  for (const auto& x : v) comps.push_back(FunctionExpr::constant(x));
  return Plot(std::move(comps));
}

Plot Plot::kink(const Vector& direction, unsigned degree) {
  std::vector<FunctionExpr> comps;
  comps.reserve(direction.size());
  for (const auto& x : direction) comps.push_back(FunctionExpr::abs_x_pow(degree, x));
  return Plot(std::move(comps));
}

Matrix Plot::residue_matrix() const {
  const std::size_t n = components_.size();
  bool any = false;
  unsigned top = 0;
  for (const auto& f : components_) {
    for (const auto& [k, c] : f.singular_part()) {
      any = true;
      top = std::max(top, k);
    }
  }
  if (!any) return Matrix(0, n);
  Matrix r(top + 1, n);
  for (std::size_t j = 0; j < n; ++j)
    for (const auto& [k, c] : components_[j].singular_part()) r(k, j) = c;
  return r;
}

bool Plot::is_classically_smooth() const {
  return std::all_of(components_.begin(), components_.end(), [](const FunctionExpr& f) { return is_smooth(f); });
}

unsigned Plot::max_degree() const {
  unsigned d = 0;
  for (const auto& f : components_) d = std::max(d, f.max_degree());
  return d;
}

Plot Plot::transformed(const Matrix& m) const {
  if (m.cols() != components_.size()) throw DimensionError("Plot::transformed: matrix width differs from plot dimension");
  std::vector<FunctionExpr> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) out[i] = out[i] + m(i, j) * components_[j];
  return Plot(std::move(out));
}

Plot Plot::scaled(const FunctionExpr& lambda) const {
  std::vector<FunctionExpr> out;
  out.reserve(components_.size());
  for (const auto& f : components_) out.push_back(lambda * f);
  return Plot(std::move(out));
}

Plot Plot::reparametrized(const Rational& c) const {
  std::vector<FunctionExpr> out;
  out.reserve(components_.size());
  for (const auto& f : components_) out.push_back(compose_scale(f, c));
  return Plot(std::move(out));
}

Plot Plot::concat(const Plot& p, const Plot& q) {
  std::vector<FunctionExpr> out = p.components_;
  out.insert(out.end(), q.components_.begin(), q.components_.end());
  return Plot(std::move(out));
}

Plot Plot::slice(std::size_t offset, std::size_t n) const {
  if (offset + n > components_.size()) throw DimensionError("Plot::slice out of range");
  return Plot(std::vector<FunctionExpr>(components_.begin() + static_cast<std::ptrdiff_t>(offset),
                                        components_.begin() + static_cast<std::ptrdiff_t>(offset + n)));
}

Plot operator+(const Plot& a, const Plot& b) {
  if (a.target_dim() != b.target_dim()) throw DimensionError("Plot sum: dimension mismatch");
  std::vector<FunctionExpr> out(a.target_dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.components_[i] + b.components_[i];
  return Plot(std::move(out));
}

Plot operator-(const Plot& a, const Plot& b) {
  if (a.target_dim() != b.target_dim()) throw DimensionError("Plot difference: dimension mismatch");
  std::vector<FunctionExpr> out(a.target_dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.components_[i] - b.components_[i];
  return Plot(std::move(out));
}

std::string Plot::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i) s += ", ";
    s += components_[i].to_string();
  }
  return s + ")";
}

// --- DiffSpace -------------------------------------------------------------

DiffSpace::DiffSpace(std::size_t dim, Descriptor descriptor, Filtration filtration)
    : dim_(dim),
      descriptor_(std::make_shared<const Descriptor>(std::move(descriptor))),
      filtration_(std::make_shared<const Filtration>(std::move(filtration))) {
  if (filtration_->empty()) throw std::logic_error("DiffSpace: empty filtration");
  for (const auto& f : *filtration_)
    if (f.ambient_dim() != dim_) throw std::logic_error("DiffSpace: filtration ambient dimension mismatch");
}

const Subspace& DiffSpace::filtration_at(unsigned d) const {
  const auto& f = *filtration_;
  return d < f.size() ? f[d] : f.back();
}

std::string DiffSpace::kind_name() const {
  struct Namer {
    std::string operator()(const descriptor::Fine&) const { return "fine"; }
    std::string operator()(const descriptor::Coarse&) const { return "coarse"; }
    std::string operator()(const descriptor::Generated&) const { return "generated"; }
    std::string operator()(const descriptor::DualOf&) const { return "dual"; }
    std::string operator()(const descriptor::TensorOf&) const { return "tensor"; }
    std::string operator()(const descriptor::SumOf&) const { return "sum"; }
    std::string operator()(const descriptor::Pushforward&) const { return "pushforward"; }
  };
  return std::visit(Namer{}, *descriptor_);
}

std::string DiffSpace::describe() const {
  std::ostringstream os;
  const std::string rn = "R^" + std::to_string(dim_);
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, descriptor::Fine>) {
          os << "fine " << rn;
        } else if constexpr (std::is_same_v<T, descriptor::Coarse>) {
          os << "coarse " << rn;
        } else if constexpr (std::is_same_v<T, descriptor::Generated>) {
          os << "generated " << rn << " {";
          for (std::size_t i = 0; i < d.generators.size(); ++i) os << (i ? ", " : "") << d.generators[i].to_string();
          os << '}';
        } else if constexpr (std::is_same_v<T, descriptor::DualOf>) {
          os << "dual(" << d.base->describe() << ")";
        } else if constexpr (std::is_same_v<T, descriptor::TensorOf>) {
          os << "(" << d.left->describe() << ") ⊗ (" << d.right->describe() << ")";
        } else if constexpr (std::is_same_v<T, descriptor::SumOf>) {
          os << "(" << d.left->describe() << ") ⊕ (" << d.right->describe() << ")";
        } else {
          os << "pushforward(" << d.base->describe() << ", " << d.iso.to_string() << ")";
        }
      },
      *descriptor_);
  return os.str();
}

DiffSpace make_fine(std::size_t n) {
  if (n == 0) throw DimensionError("make_fine: dimension must be positive");
  return DiffSpace(n, descriptor::Fine{}, {Subspace::zero(n)});
}

DiffSpace make_coarse(std::size_t n) {
  if (n == 0) throw DimensionError("make_coarse: dimension must be positive");
  return DiffSpace(n, descriptor::Coarse{}, {Subspace::full(n)});
}

DiffSpace make_generated(std::size_t n, std::vector<Plot> generators) {
  if (n == 0) throw DimensionError("make_generated: dimension must be positive");
  unsigned depth = 0;
  std::vector<Matrix> residues;
  for (const auto& g : generators) {
    if (g.target_dim() != n)
      throw DimensionError("make_generated: generator " + g.to_string() + " has dimension " +
                           std::to_string(g.target_dim()) + ", expected " + std::to_string(n));
    residues.push_back(g.residue_matrix());
    if (residues.back().rows() > 0) depth = std::max(depth, static_cast<unsigned>(residues.back().rows() - 1));
  }
  Filtration filtration;
  std::vector<Vector> rows;
  for (unsigned d = 0; d <= depth; ++d) {
    for (const auto& r : residues)
      if (d < r.rows() && !is_zero(r.row(d))) rows.push_back(r.row(d));
    filtration.push_back(Subspace::span(n, rows));
  }
  return DiffSpace(n, descriptor::Generated{std::move(generators)}, std::move(filtration));
}

DiffSpace direct_sum(const DiffSpace& v, const DiffSpace& w) {
  const unsigned depth = std::max(v.filtration_depth(), w.filtration_depth());
  Filtration filtration;
  for (unsigned d = 0; d <= depth; ++d)
    filtration.push_back(Subspace::direct_sum(v.filtration_at(d), w.filtration_at(d)));
  return DiffSpace(v.dim() + w.dim(),
                   descriptor::SumOf{std::make_shared<const DiffSpace>(v), std::make_shared<const DiffSpace>(w)},
                   std::move(filtration));
}

DiffSpace make_pushforward(const DiffSpace& v, const Matrix& iso) {
  if (iso.rows() != v.dim() || iso.cols() != v.dim())
    throw DimensionError("pushforward: isomorphism must be " + std::to_string(v.dim()) + "x" + std::to_string(v.dim()));
  auto inv = inverse(iso);
  if (!inv) throw std::invalid_argument("pushforward: matrix is singular");
  Filtration filtration;
  for (const auto& f : v.filtration()) filtration.push_back(f.image(iso));
  return DiffSpace(v.dim(), descriptor::Pushforward{std::make_shared<const DiffSpace>(v), iso, *inv},
                   std::move(filtration));
}

Subspace singular_span(const DiffSpace& v) { return v.filtration().back(); }

// --- membership ------------------------------------------------------------

std::string to_string(Membership m) {
  switch (m) {
    case Membership::Plot: return "Plot";
    case Membership::NotPlot: return "NotPlot";
    case Membership::Unknown: return "Unknown";
  }
  return "?";
}

MembershipConfig MembershipConfig::from_environment() {
  MembershipConfig cfg;
  if (const char* env = std::getenv("DIFFEOLIN_SLACK_DEGREE"); env && *env) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (!end || *end != '\0' || value < 0 || value > 256)
      throw std::invalid_argument(std::string("DIFFEOLIN_SLACK_DEGREE must be an integer in [0, 256], got '") + env + "'");
    cfg.slack_degree = static_cast<unsigned>(value);
  }
  return cfg;
}

namespace {

/// NotPlot certificate: some residue row leaves the singular span, so a
/// smooth functional sees a bare kink.
std::optional<Vector> obstruction_certificate(const Subspace& span, const Matrix& residue) {
  if (residue.rows() == 0) return std::nullopt;
  const Subspace ann = span.annihilator();
  for (std::size_t d = 0; d < residue.rows(); ++d) {
    const Vector row = residue.row(d);
    if (span.contains(row)) continue;
    for (std::size_t a = 0; a < ann.dim(); ++a) {
      const Vector functional = ann.basis_vector(a);
      if (dot(functional, row) != 0) return functional;
    }
  }
  return std::nullopt;
}

bool residue_in_filtration(const DiffSpace& v, const Matrix& residue) {
  for (std::size_t d = 0; d < residue.rows(); ++d) {
    const Vector row = residue.row(d);
    if (!is_zero(row) && !v.filtration_at(static_cast<unsigned>(d)).contains(row)) return false;
  }
  return true;
}

Membership combine(Membership a, Membership b) {
  if (a == Membership::NotPlot || b == Membership::NotPlot) return Membership::NotPlot;
  if (a == Membership::Unknown || b == Membership::Unknown) return Membership::Unknown;
  return Membership::Plot;
}

struct Piece {
  std::size_t generator;
  unsigned degree;
  Vector direction;
};

/// Weights w_c (c = 1..|degrees|) with Σ_c w_c·c^{k+1} = [k == target] for
/// every k in `degrees`: Σ_c w_c·g(c·x) then has residue |x|·x^target·r_target.
Vector isolation_weights(const std::vector<unsigned>& degrees, unsigned target) {
  const std::size_t m = degrees.size();
  Matrix system(m, m);
  Vector rhs(m);
  for (std::size_t row = 0; row < m; ++row) {
    for (std::size_t c = 0; c < m; ++c) {
      Rational p = 1;
      for (unsigned e = 0; e <= degrees[row]; ++e) p *= static_cast<long>(c + 1);
      system(row, c) = p;
    }
    rhs[row] = degrees[row] == target ? 1 : 0;
  }
  auto w = solve(system, rhs);
  if (!w) throw std::logic_error("isolation_weights: singular generalized Vandermonde system");
  return *w;
}

PlotDecision is_plot_generated(const DiffSpace& v, const descriptor::Generated& gen, const Plot& candidate,
                               const Matrix& residue, const MembershipConfig& config) {
  PlotDecision out;
  const std::size_t n = v.dim();

  // Homogeneous residue pieces |x|·x^k·r_{ik}. The span of the linear
  // reparametrizations g_i(c·x) over c contains each piece separately.
  std::vector<Piece> pieces;
  std::vector<std::vector<unsigned>> piece_degrees(gen.generators.size());
  unsigned max_degree = residue.rows() > 0 ? static_cast<unsigned>(residue.rows() - 1) : 0;
  for (std::size_t i = 0; i < gen.generators.size(); ++i) {
    const Matrix r = gen.generators[i].residue_matrix();
    for (std::size_t k = 0; k < r.rows(); ++k) {
      if (is_zero(r.row(k))) continue;
      pieces.push_back({i, static_cast<unsigned>(k), r.row(k)});
      piece_degrees[i].push_back(static_cast<unsigned>(k));
      max_degree = std::max(max_degree, static_cast<unsigned>(k));
    }
  }

  const unsigned slack = config.slack_degree.value_or(8);
  const unsigned multiplier_degree = max_degree + slack;
  const unsigned top = max_degree + multiplier_degree;

  // Unknown a_{p,e}: coefficient of x^e in the multiplier of piece p.
  const std::size_t unknowns = pieces.size() * (multiplier_degree + 1);
  Matrix system((top + 1) * n, unknowns);
  Vector rhs((top + 1) * n);
  for (std::size_t p = 0; p < pieces.size(); ++p) {
    for (unsigned e = 0; e <= multiplier_degree; ++e) {
      const unsigned t = pieces[p].degree + e;
      for (std::size_t j = 0; j < n; ++j) system(t * n + j, p * (multiplier_degree + 1) + e) = pieces[p].direction[j];
    }
  }
  for (std::size_t d = 0; d < residue.rows(); ++d)
    for (std::size_t j = 0; j < n; ++j) rhs[d * n + j] = residue(d, j);

  if (auto solution = pieces.empty() ? std::optional<Vector>{} : solve(system, rhs); solution) {
    std::map<std::pair<std::size_t, long>, FunctionExpr> merged;
    for (std::size_t p = 0; p < pieces.size(); ++p) {
      Polynomial mult;
      for (unsigned e = 0; e <= multiplier_degree; ++e) {
        const Rational& a = (*solution)[p * (multiplier_degree + 1) + e];
        if (a != 0) mult.emplace(e, a);
      }
      if (mult.empty()) continue;
      const Vector weights = isolation_weights(piece_degrees[pieces[p].generator], pieces[p].degree);
      for (std::size_t c = 0; c < weights.size(); ++c) {
        if (weights[c] == 0) continue;
        auto& slot = merged[{pieces[p].generator, static_cast<long>(c + 1)}];
        slot = slot + FunctionExpr::from_parts(poly_scale(mult, weights[c]), {});
      }
    }
    for (auto& [key, mult] : merged) {
      if (mult.is_zero()) continue;
      out.factorization.push_back({key.first, Rational(key.second), std::move(mult)});
    }
    if (!(candidate - assemble_factorization(v, out.factorization)).is_classically_smooth())
      throw std::logic_error("is_plot: factorization does not reproduce the candidate residue");
    out.verdict = Membership::Plot;
    out.reason = "residue factors through the generators";
    return out;
  }
  if (residue.rows() == 0) {
    out.verdict = Membership::Plot;
    out.reason = "classically smooth";
    return out;
  }
  if (auto cert = obstruction_certificate(singular_span(v), residue)) {
    out.verdict = Membership::NotPlot;
    out.certificate = std::move(cert);
    out.reason = "residue leaves the singular span";
    return out;
  }
  out.verdict = Membership::Unknown;
  out.reason = "residue lies in the singular span but no polynomial factorization within the slack bound";
  return out;
}

}  // namespace

Plot assemble_factorization(const DiffSpace& v, const std::vector<FactorTerm>& terms) {
  if (!v.is<descriptor::Generated>()) throw UnsupportedError("factorizations exist only for generated spaces");
  const auto& gens = v.as<descriptor::Generated>().generators;
  Plot acc = Plot::zero(v.dim());
  for (const auto& t : terms) acc = acc + gens.at(t.generator).reparametrized(t.scale).scaled(t.multiplier);
  return acc;
}

PlotDecision is_plot(const DiffSpace& v, const Plot& candidate, const MembershipConfig& config) {
  if (candidate.target_dim() != v.dim())
    throw DimensionError("is_plot: plot has dimension " + std::to_string(candidate.target_dim()) + ", space has " +
                         std::to_string(v.dim()));
  const Matrix residue = candidate.residue_matrix();

  return std::visit(
      [&](const auto& d) -> PlotDecision {
        using T = std::decay_t<decltype(d)>;
        PlotDecision out;
        if constexpr (std::is_same_v<T, descriptor::Coarse>) {
          out.verdict = Membership::Plot;
          out.reason = "coarse: every map is a plot";
        } else if constexpr (std::is_same_v<T, descriptor::Fine> || std::is_same_v<T, descriptor::DualOf>) {
          if (residue.rows() == 0) {
            out.verdict = Membership::Plot;
            out.reason = "classically smooth";
          } else {
            out.verdict = Membership::NotPlot;
            out.certificate = obstruction_certificate(singular_span(v), residue);
            out.reason = "non-smooth coordinate";
          }
        } else if constexpr (std::is_same_v<T, descriptor::Generated>) {
          out = is_plot_generated(v, d, candidate, residue, config);
        } else if constexpr (std::is_same_v<T, descriptor::Pushforward>) {
          out = is_plot(*d.base, candidate.transformed(d.inverse), config);
          out.factorization.clear();
          if (out.certificate) out.certificate = (Matrix::row_vector(*out.certificate) * d.inverse).row(0);
          out.reason = "via inverse isomorphism: " + out.reason;
        } else if constexpr (std::is_same_v<T, descriptor::SumOf>) {
          const std::size_t n = d.left->dim();
          const auto left = is_plot(*d.left, candidate.slice(0, n), config);
          const auto right = is_plot(*d.right, candidate.slice(n, d.right->dim()), config);
          out.verdict = combine(left.verdict, right.verdict);
          if (out.verdict == Membership::NotPlot) {
            Vector cert(v.dim());
            if (left.verdict == Membership::NotPlot && left.certificate) {
              std::copy(left.certificate->begin(), left.certificate->end(), cert.begin());
            } else if (right.certificate) {
              std::copy(right.certificate->begin(), right.certificate->end(), cert.begin() + static_cast<long>(n));
            }
            out.certificate = cert;
          }
          out.reason = "components: " + to_string(left.verdict) + ", " + to_string(right.verdict);
        } else {
          // Tensor products: filtration membership, with the singular-span
          // obstruction as the negative certificate.
          if (residue_in_filtration(v, residue)) {
            out.verdict = Membership::Plot;
            out.reason = "residue lies in the tensor filtration";
          } else if (auto cert = obstruction_certificate(singular_span(v), residue)) {
            out.verdict = Membership::NotPlot;
            out.certificate = std::move(cert);
            out.reason = "residue leaves the tensor singular span";
          } else {
            out.verdict = Membership::Unknown;
            out.reason = "residue in the singular span but not in the filtration";
          }
        }
        return out;
      },
      v.descriptor());
}

}  // namespace diffeolin
