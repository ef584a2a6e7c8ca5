#include "diffeolin/smoothhom.hpp"

#include "diffeolin/bilinear.hpp"

#include <algorithm>

namespace diffeolin {

std::string to_string(Smoothness s) {
  switch (s) {
    case Smoothness::Smooth: return "Smooth";
    case Smoothness::NotSmooth: return "NotSmooth";
    case Smoothness::Unknown: return "Unknown";
  }
  return "?";
}

Smoothness combine(Smoothness a, Smoothness b) {
  if (a == Smoothness::NotSmooth || b == Smoothness::NotSmooth) return Smoothness::NotSmooth;
  if (a == Smoothness::Unknown || b == Smoothness::Unknown) return Smoothness::Unknown;
  return Smoothness::Smooth;
}

LinearMap::LinearMap(DiffSpace domain, DiffSpace codomain, Matrix matrix)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != codomain_.dim() || matrix_.cols() != domain_.dim())
    throw DimensionError("linear map: matrix is " + std::to_string(matrix_.rows()) + "x" +
                         std::to_string(matrix_.cols()) + ", expected " + std::to_string(codomain_.dim()) + "x" +
                         std::to_string(domain_.dim()));
}

LinearMap LinearMap::identity(const DiffSpace& v) { return LinearMap(v, v, Matrix::identity(v.dim())); }

LinearMap LinearMap::after(const LinearMap& inner) const {
  if (inner.codomain().dim() != domain_.dim()) throw DimensionError("composition: dimension mismatch");
  return LinearMap(inner.domain(), codomain_, matrix_ * inner.matrix());
}

namespace {

SmoothDecision smooth(std::string reason) { return {Smoothness::Smooth, std::nullopt, std::move(reason)}; }

/// Rank-one test for M = A ⊗ B with A: n'×n, B: m'×m (Van Loan–Pitsianis
/// rearrangement).
std::optional<std::pair<Matrix, Matrix>> kronecker_factors(const Matrix& m, std::size_t n_out, std::size_t n_in,
                                                           std::size_t m_out, std::size_t m_in) {
  Matrix r(n_out * n_in, m_out * m_in);
  for (std::size_t io = 0; io < n_out; ++io)
    for (std::size_t i = 0; i < n_in; ++i)
      for (std::size_t jo = 0; jo < m_out; ++jo)
        for (std::size_t j = 0; j < m_in; ++j) r(io * n_in + i, jo * m_in + j) = m(io * m_out + jo, i * m_in + j);
  if (rank(r) != 1) return std::nullopt;
  std::size_t p = r.rows(), q = 0;
  for (std::size_t i = 0; i < r.rows() && p == r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j)
      if (r(i, j) != 0) {
        p = i;
        q = j;
        break;
      }
  Matrix a(n_out, n_in), b(m_out, m_in);
  for (std::size_t io = 0; io < n_out; ++io)
    for (std::size_t i = 0; i < n_in; ++i) a(io, i) = r(io * n_in + i, q);
  for (std::size_t jo = 0; jo < m_out; ++jo)
    for (std::size_t j = 0; j < m_in; ++j) b(jo, j) = r(p, jo * m_in + j) / r(p, q);
  if (!(kron(a, b) == m)) return std::nullopt;
  return std::make_pair(std::move(a), std::move(b));
}

Plot embed(const Plot& p, std::size_t offset, std::size_t total) {
  std::vector<FunctionExpr> comps(total);
  for (std::size_t i = 0; i < p.target_dim(); ++i) comps[offset + i] = p[i];
  return Plot(std::move(comps));
}

}  // namespace

SmoothDecision is_smooth_linear(const LinearMap& f, const MembershipConfig& config) {
  const DiffSpace& v = f.domain();
  const DiffSpace& w = f.codomain();
  const Matrix& m = f.matrix();

  if (w.is<descriptor::Coarse>()) return smooth("coarse codomain");
  if (m.is_zero()) return smooth("zero map");

  if (w.is<descriptor::Pushforward>()) {
    const auto& d = w.as<descriptor::Pushforward>();
    auto out = is_smooth_linear(LinearMap(v, *d.base, d.inverse * m), config);
    out.reason = "through the codomain isomorphism: " + out.reason;
    return out;
  }

  if (w.is<descriptor::DualOf>()) {
    // x ↦ f(x) is smooth into Z* iff (x, z) ↦ f(x)(z) is smooth.
    const auto& d = w.as<descriptor::DualOf>();
    const Matrix pairing = m.transpose() * d.annihilator.basis();  // n × dim Z
    std::vector<Rational> coeffs;
    coeffs.reserve(pairing.rows() * pairing.cols());
    for (std::size_t i = 0; i < pairing.rows(); ++i)
      for (std::size_t j = 0; j < pairing.cols(); ++j) coeffs.push_back(pairing(i, j));
    const auto b = is_smooth_bilinear(BilinearForm(v, *d.base, make_fine(1), std::move(coeffs)));
    SmoothDecision out{b.verdict, std::nullopt, "evaluation pairing: " + b.reason};
    if (b.witness) out.witness = b.witness->first;
    return out;
  }

  if (v.is<descriptor::Pushforward>()) {
    const auto& d = v.as<descriptor::Pushforward>();
    auto out = is_smooth_linear(LinearMap(*d.base, w, m * d.iso), config);
    if (out.witness) out.witness = out.witness->transformed(d.iso);
    out.reason = "through the domain isomorphism: " + out.reason;
    return out;
  }

  if (w.is<descriptor::SumOf>()) {
    const auto& d = w.as<descriptor::SumOf>();
    const std::size_t n1 = d.left->dim();
    const auto left = is_smooth_linear(LinearMap(v, *d.left, m.block(0, 0, n1, v.dim())), config);
    if (left.verdict == Smoothness::NotSmooth) return left;
    const auto right = is_smooth_linear(LinearMap(v, *d.right, m.block(n1, 0, d.right->dim(), v.dim())), config);
    if (right.verdict == Smoothness::NotSmooth) return right;
    return {combine(left.verdict, right.verdict), std::nullopt,
            "components: " + to_string(left.verdict) + ", " + to_string(right.verdict)};
  }

  if (v.is<descriptor::SumOf>()) {
    const auto& d = v.as<descriptor::SumOf>();
    const std::size_t n1 = d.left->dim();
    const std::size_t n2 = d.right->dim();
    auto left = is_smooth_linear(LinearMap(*d.left, w, m.block(0, 0, w.dim(), n1)), config);
    if (left.verdict == Smoothness::NotSmooth) {
      left.witness = embed(*left.witness, 0, v.dim());
      return left;
    }
    auto right = is_smooth_linear(LinearMap(*d.right, w, m.block(0, n1, w.dim(), n2)), config);
    if (right.verdict == Smoothness::NotSmooth) {
      right.witness = embed(*right.witness, n1, v.dim());
      return right;
    }
    return {combine(left.verdict, right.verdict), std::nullopt,
            "restrictions: " + to_string(left.verdict) + ", " + to_string(right.verdict)};
  }

  const Subspace s = singular_span(v);
  if (s.image(m).dim() == 0) return smooth("kills the singular span of the domain");

  // Filtration plots |x|·x^d·r of the domain, pushed forward.
  for (unsigned d = 0; d <= v.filtration_depth(); ++d) {
    const Subspace& fd = v.filtration_at(d);
    for (std::size_t a = 0; a < fd.dim(); ++a) {
      const Plot p = Plot::kink(fd.basis_vector(a), d);
      const auto image = is_plot(w, p.transformed(m), config);
      if (image.verdict == Membership::NotPlot) return {Smoothness::NotSmooth, p, "image of a singular plot: " + image.reason};
    }
  }
  // For a fine codomain the singular span maps to a non-zero subspace, so
  // the loop above has already returned.

  if (v.is<descriptor::Generated>()) {
    Smoothness verdict = Smoothness::Smooth;
    for (const auto& g : v.as<descriptor::Generated>().generators) {
      const auto image = is_plot(w, g.transformed(m), config);
      if (image.verdict == Membership::NotPlot) return {Smoothness::NotSmooth, g, "image of a generator: " + image.reason};
      if (image.verdict == Membership::Unknown) verdict = Smoothness::Unknown;
    }
    return {verdict, std::nullopt,
            verdict == Smoothness::Smooth ? "generators map to plots" : "membership of a generator image is unknown"};
  }

  if (v.is<descriptor::TensorOf>() && w.is<descriptor::TensorOf>()) {
    const auto& dv = v.as<descriptor::TensorOf>();
    const auto& dw = w.as<descriptor::TensorOf>();
    if (auto factors = kronecker_factors(m, dw.left->dim(), dv.left->dim(), dw.right->dim(), dv.right->dim())) {
      const auto a = is_smooth_linear(LinearMap(*dv.left, *dw.left, factors->first), config);
      const auto b = is_smooth_linear(LinearMap(*dv.right, *dw.right, factors->second), config);
      if (a.verdict == Smoothness::Smooth && b.verdict == Smoothness::Smooth)
        return smooth("tensor product of smooth maps");
    }
  }

  return {Smoothness::Unknown, std::nullopt, "no certificate in the supported fragment"};
}

// --- duals -----------------------------------------------------------------

Vector DualSpace::functional(const Vector& coords) const {
  if (coords.size() != dim()) throw DimensionError("dual element: wrong number of coordinates");
  Vector out(base.dim());
  for (std::size_t a = 0; a < coords.size(); ++a) {
    if (coords[a] == 0) continue;
    const Vector row = annihilator.basis_vector(a);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += coords[a] * row[i];
  }
  return out;
}

DualSpace diffeological_dual(const DiffSpace& v) {
  if (v.is<descriptor::DualOf>()) throw UnsupportedError("dual of a dual space is not supported");
  Subspace ann = singular_span(v).annihilator();
  const std::size_t k = ann.dim();
  DiffSpace space(k, descriptor::DualOf{std::make_shared<const DiffSpace>(v), ann}, {Subspace::zero(k)});
  return {v, std::move(ann), std::move(space)};
}

Subspace smooth_hom_basis(const DiffSpace& v, const DiffSpace& w) {
  const std::size_t n = v.dim();
  const std::size_t m = w.dim();
  if (w.is<descriptor::Coarse>()) return Subspace::full(m * n);
  if (!w.is<descriptor::Fine>())
    throw UnsupportedError("smooth_hom_basis: codomain must be fine or coarse, got " + w.kind_name());
  const Subspace s = singular_span(v);
  if (s.dim() == 0) return Subspace::full(m * n);
  Matrix constraints(m * s.dim(), m * n);
  for (std::size_t a = 0; a < s.dim(); ++a) {
    const Vector r = s.basis_vector(a);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) constraints(a * m + i, i * n + j) = r[j];
  }
  return Subspace::span(m * n, nullspace(constraints));
}

LinearMap dual_map(const LinearMap& f, const MembershipConfig& config) {
  const auto verdict = is_smooth_linear(f, config);
  if (verdict.verdict != Smoothness::Smooth)
    throw std::invalid_argument("dual_map: map is " + to_string(verdict.verdict) + " (" + verdict.reason + ")");
  const DualSpace dv = diffeological_dual(f.domain());
  const DualSpace dw = diffeological_dual(f.codomain());
  Matrix out(dv.dim(), dw.dim());
  for (std::size_t b = 0; b < dw.dim(); ++b) {
    const Vector pulled = (Matrix::row_vector(dw.annihilator.basis_vector(b)) * f.matrix()).row(0);
    const auto coords = dv.annihilator.coordinates(pulled);
    if (!coords) throw std::logic_error("dual_map: pulled-back functional is not smooth");
    for (std::size_t a = 0; a < dv.dim(); ++a) out(a, b) = (*coords)[a];
  }
  // Column b of `out` expresses g_b ∘ f in the domain dual basis.
  if (!(dv.annihilator.basis().transpose() * out == f.matrix().transpose() * dw.annihilator.basis().transpose()))
    throw std::logic_error("dual_map: coordinate identity failed");
  LinearMap result(dw.space, dv.space, std::move(out));
  if (is_smooth_linear(result, config).verdict != Smoothness::Smooth)
    throw std::logic_error("dual_map: dual map is not smooth");
  return result;
}

DiffSpace hat_dual(const DiffSpace& v, const Matrix& iso) { return make_pushforward(v, iso); }

WellposednessReport hat_dual_wellposed(const DiffSpace& v, const Matrix& iso1, const Matrix& iso2,
                                       const std::vector<Plot>& samples, const MembershipConfig& config) {
  const DiffSpace d1 = hat_dual(v, iso1);
  const DiffSpace d2 = hat_dual(v, iso2);
  const Matrix transport = iso2 * d1.as<descriptor::Pushforward>().inverse;
  WellposednessReport report;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto a = is_plot(d1, samples[i], config).verdict;
    const auto b = is_plot(d2, samples[i], config).verdict;
    const auto t = is_plot(d2, samples[i].transformed(transport), config).verdict;
    report.first.push_back(a);
    report.second.push_back(b);
    report.transported.push_back(t);
    if (a != b) report.violations.push_back({i, a, b});
    if (a == Membership::Plot && t != Membership::Plot) ++report.transport_failures;
  }
  return report;
}

}  // namespace diffeolin
