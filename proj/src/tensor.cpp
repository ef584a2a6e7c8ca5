#include "diffeolin/tensor.hpp"

#include <algorithm>

namespace diffeolin {

namespace {

Vector kron(const Vector& a, const Vector& b) {
  Vector out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(x * y);
  return out;
}

Plot tensor_plot(const Plot& p, const Plot& q) {
  std::vector<FunctionExpr> comps;
  comps.reserve(p.target_dim() * q.target_dim());
  for (const auto& f : p.components())
    for (const auto& g : q.components()) comps.push_back(f * g);
  return Plot(std::move(comps));
}

/// Plots of a factor that the product check is run on: generators,
/// filtration kinks and basis constants.
std::vector<Plot> probe_plots(const DiffSpace& v) {
  std::vector<Plot> out;
  if (v.is<descriptor::Generated>()) {
    const auto& gens = v.as<descriptor::Generated>().generators;
    out.insert(out.end(), gens.begin(), gens.end());
  }
  for (unsigned d = 0; d <= v.filtration_depth(); ++d) {
    const Subspace& fd = v.filtration_at(d);
    for (std::size_t a = 0; a < fd.dim(); ++a) out.push_back(Plot::kink(fd.basis_vector(a), d));
  }
  for (std::size_t i = 0; i < v.dim(); ++i) out.push_back(Plot::constant(unit_vector(v.dim(), i)));
  return out;
}

Filtration block_filtration(const DiffSpace& v, const DiffSpace& w) {
  const unsigned depth = std::max(v.filtration_depth(), w.filtration_depth());
  Filtration f;
  for (unsigned d = 0; d <= depth; ++d) f.push_back(tensor_block_span(v.filtration_at(d), w.filtration_at(d)));
  return f;
}

DiffSpace tensor_unchecked(const DiffSpace& v, const DiffSpace& w) {
  return DiffSpace(v.dim() * w.dim(),
                   descriptor::TensorOf{std::make_shared<const DiffSpace>(v), std::make_shared<const DiffSpace>(w)},
                   block_filtration(v, w));
}

void require_fine_or_coarse(const DiffSpace& w, const char* what) {
  if (!w.is<descriptor::Fine>() && !w.is<descriptor::Coarse>())
    throw UnsupportedError(std::string(what) + " must be fine or coarse, got " + w.kind_name());
}

}  // namespace

Subspace tensor_block_span(const Subspace& left, const Subspace& right) {
  const std::size_t n = left.ambient_dim();
  const std::size_t m = right.ambient_dim();
  std::vector<Vector> gens;
  for (std::size_t a = 0; a < left.dim(); ++a)
    for (std::size_t j = 0; j < m; ++j) gens.push_back(kron(left.basis_vector(a), unit_vector(m, j)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t b = 0; b < right.dim(); ++b) gens.push_back(kron(unit_vector(n, i), right.basis_vector(b)));
  return Subspace::span(n * m, gens);
}

DiffSpace tensor_product(const DiffSpace& v, const DiffSpace& w) {
  for (const DiffSpace* f : {&v, &w})
    if (f->is<descriptor::Pushforward>() || f->is<descriptor::DualOf>())
      throw UnsupportedError("tensor_product: " + f->kind_name() + " factors are not supported");
  DiffSpace t = tensor_unchecked(v, w);
  for (const auto& p : probe_plots(v)) {
    for (const auto& q : probe_plots(w)) {
      const Matrix r = tensor_plot(p, q).residue_matrix();
      for (std::size_t d = 0; d < r.rows(); ++d)
        if (!t.filtration_at(static_cast<unsigned>(d)).contains(r.row(d)))
          throw std::logic_error("tensor_product: product plot " + p.to_string() + " ⊗ " + q.to_string() +
                                 " leaves the block filtration");
    }
  }
  return t;
}

LinearMap tensor_of_maps(const LinearMap& f, const LinearMap& g, const MembershipConfig& config) {
  for (const LinearMap* h : {&f, &g}) {
    const auto verdict = is_smooth_linear(*h, config);
    if (verdict.verdict != Smoothness::Smooth)
      throw std::invalid_argument("tensor_of_maps: factor is " + to_string(verdict.verdict) + " (" + verdict.reason + ")");
  }
  LinearMap out(tensor_product(f.domain(), g.domain()), tensor_product(f.codomain(), g.codomain()),
                kron(f.matrix(), g.matrix()));
  const auto verdict = is_smooth_linear(out, config);
  if (verdict.verdict != Smoothness::Smooth)
    throw std::logic_error("tensor_of_maps: product map is " + to_string(verdict.verdict));
  return out;
}

Distribution distribute(const DiffSpace& v1, const DiffSpace& v2, const DiffSpace& v3, const MembershipConfig& config) {
  const std::size_t n1 = v1.dim(), n2 = v2.dim(), n3 = v3.dim();
  const DiffSpace domain = tensor_product(v1, direct_sum(v2, v3));
  const DiffSpace codomain = direct_sum(tensor_product(v1, v2), tensor_product(v1, v3));
  Matrix p(n1 * (n2 + n3), n1 * (n2 + n3));
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2 + n3; ++j) {
      const std::size_t from = i * (n2 + n3) + j;
      const std::size_t to = j < n2 ? i * n2 + j : n1 * n2 + i * n3 + (j - n2);
      p(to, from) = 1;
    }
  }
  LinearMap forward(domain, codomain, p);
  LinearMap inverse(codomain, domain, p.transpose());
  auto fv = is_smooth_linear(forward, config);
  auto iv = is_smooth_linear(inverse, config);
  return {std::move(forward), std::move(inverse), std::move(fv), std::move(iv), singular_span(domain).dim(),
          singular_span(codomain).dim()};
}

TensorDualIso tensor_dual_iso(const DiffSpace& v, const DiffSpace& w) {
  DualSpace dv = diffeological_dual(v);
  DualSpace dw = diffeological_dual(w);
  DualSpace dt = diffeological_dual(tensor_product(v, w));
  const std::size_t kv = dv.dim(), kw = dw.dim();
  Matrix f(dt.dim(), kv * kw);
  for (std::size_t a = 0; a < kv; ++a) {
    for (std::size_t b = 0; b < kw; ++b) {
      const auto coords = dt.annihilator.coordinates(kron(dv.annihilator.basis_vector(a), dw.annihilator.basis_vector(b)));
      if (!coords) throw std::logic_error("tensor_dual_iso: product functional is not smooth on the tensor product");
      for (std::size_t c = 0; c < dt.dim(); ++c) f(c, a * kw + b) = (*coords)[c];
    }
  }
  if (rank(f) != kv * kw) throw std::logic_error("tensor_dual_iso: map is not injective");
  if (dt.dim() != kv * kw) throw std::logic_error("tensor_dual_iso: dimensions differ");
  DiffSpace domain = tensor_unchecked(dv.space, dw.space);
  LinearMap map(std::move(domain), dt.space, std::move(f));
  return {std::move(dv), std::move(dw), std::move(dt), std::move(map)};
}

namespace {

HatReport finish(Matrix h, const Subspace& smooth_target) {
  HatReport r;
  r.domain_dim = h.cols();
  r.full_target_dim = h.rows();
  r.smooth_target_dim = smooth_target.dim();
  r.values_in_smooth = true;
  for (std::size_t c = 0; c < h.cols(); ++c) r.values_in_smooth = r.values_in_smooth && smooth_target.contains(h.col(c));
  r.injective = rank(h) == h.cols();
  r.isomorphism = r.values_in_smooth && r.injective && r.smooth_target_dim == r.domain_dim;
  r.matrix = std::move(h);
  return r;
}

}  // namespace

HatReport hat_F(const DiffSpace& v, const DiffSpace& w) {
  require_fine_or_coarse(w, "hat_F: W");
  const DualSpace dv = diffeological_dual(v);
  const std::size_t n = v.dim(), m = w.dim(), k = dv.dim();
  Matrix h(m * k, n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t a = 0; a < k; ++a) h(j * k + a, i * m + j) = dv.annihilator.basis()(a, i);
  return finish(std::move(h), smooth_hom_basis(dv.space, w));
}

HatReport hat_G(const DiffSpace& v, const DiffSpace& w) {
  require_fine_or_coarse(v, "hat_G: V");
  const DualSpace dw = diffeological_dual(w);
  const std::size_t n = v.dim(), m = w.dim(), k = dw.dim();
  Matrix h(n * k, n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t b = 0; b < k; ++b) h(i * k + b, i * m + j) = dw.annihilator.basis()(b, j);
  return finish(std::move(h), smooth_hom_basis(dw.space, v));
}

EndoReport endo_remark_check(const DiffSpace& v) {
  EndoReport r;
  r.dual_tensor_dim = diffeological_dual(v).dim() * v.dim();
  if (v.is<descriptor::Fine>() || v.is<descriptor::Coarse>()) {
    r.smooth_endo_dim = smooth_hom_basis(v, v).dim();
    r.equal = *r.smooth_endo_dim == r.dual_tensor_dim;
  }
  return r;
}

}  // namespace diffeolin
