#include "diffeolin/bilinear.hpp"

namespace diffeolin {

BilinearForm::BilinearForm(DiffSpace left, DiffSpace right, DiffSpace codomain)
    : left_(std::move(left)), right_(std::move(right)), codomain_(std::move(codomain)) {
  coeffs_.assign(left_.dim() * right_.dim() * codomain_.dim(), Rational(0));
}

BilinearForm::BilinearForm(DiffSpace left, DiffSpace right, DiffSpace codomain, std::vector<Rational> coefficients)
    : left_(std::move(left)), right_(std::move(right)), codomain_(std::move(codomain)), coeffs_(std::move(coefficients)) {
  const std::size_t expected = left_.dim() * right_.dim() * codomain_.dim();
  if (coeffs_.size() != expected)
    throw DimensionError("bilinear form: " + std::to_string(coeffs_.size()) + " coefficients, expected " +
                         std::to_string(expected));
}

Vector BilinearForm::value(std::size_t i, std::size_t j) const {
  if (i >= left_.dim() || j >= right_.dim()) throw DimensionError("bilinear form: index out of range");
  Vector out(codomain_.dim());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = coeffs_[index(i, j, k)];
  return out;
}

void BilinearForm::set(std::size_t i, std::size_t j, const Vector& value) {
  if (i >= left_.dim() || j >= right_.dim() || value.size() != codomain_.dim())
    throw DimensionError("bilinear form: bad index or value dimension");
  for (std::size_t k = 0; k < value.size(); ++k) coeffs_[index(i, j, k)] = value[k];
}

Vector BilinearForm::evaluate(const Vector& v, const Vector& w) const {
  if (v.size() != left_.dim() || w.size() != right_.dim()) throw DimensionError("bilinear form: argument dimension");
  Vector out(codomain_.dim());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (w[j] == 0) continue;
      const Rational s = v[i] * w[j];
      for (std::size_t k = 0; k < out.size(); ++k) out[k] += s * coeffs_[index(i, j, k)];
    }
  }
  return out;
}

BilinearForm BilinearForm::transposed() const {
  BilinearForm t(right_, left_, codomain_);
  for (std::size_t i = 0; i < left_.dim(); ++i)
    for (std::size_t j = 0; j < right_.dim(); ++j) t.set(j, i, value(i, j));
  return t;
}

namespace {

void require_fine_or_coarse(const DiffSpace& w, const char* what) {
  if (!w.is<descriptor::Fine>() && !w.is<descriptor::Coarse>())
    throw UnsupportedError(std::string(what) + ": codomain must be fine or coarse, got " + w.kind_name());
}

/// First filtration direction r of `side` (degree d) and basis index j of the
/// other factor with b(r, e_j) != 0; `value(r, j)` evaluates the pairing.
template <class Value>
std::optional<std::pair<Plot, Plot>> singular_pairing(const DiffSpace& side, std::size_t other_dim, bool side_is_left,
                                                      Value&& value) {
  for (unsigned d = 0; d <= side.filtration_depth(); ++d) {
    const Subspace& fd = side.filtration_at(d);
    for (std::size_t a = 0; a < fd.dim(); ++a) {
      const Vector r = fd.basis_vector(a);
      for (std::size_t j = 0; j < other_dim; ++j) {
        if (is_zero(value(r, j))) continue;
        Plot kink = Plot::kink(r, d);
        Plot constant = Plot::constant(unit_vector(other_dim, j));
        if (side_is_left) return std::make_pair(std::move(kink), std::move(constant));
        return std::make_pair(std::move(constant), std::move(kink));
      }
    }
  }
  return std::nullopt;
}

}  // namespace

BilinearDecision is_smooth_bilinear(const BilinearForm& b) {
  require_fine_or_coarse(b.codomain(), "is_smooth_bilinear");
  if (b.codomain().is<descriptor::Coarse>()) return {Smoothness::Smooth, std::nullopt, "coarse codomain"};

  const std::size_t n = b.left().dim();
  const std::size_t m = b.right().dim();
  auto left = singular_pairing(b.left(), m, true,
                               [&](const Vector& r, std::size_t j) { return b.evaluate(r, unit_vector(m, j)); });
  if (left) return {Smoothness::NotSmooth, std::move(left), "pairs a singular direction of the left factor non-trivially"};
  auto right = singular_pairing(b.right(), n, false,
                                [&](const Vector& r, std::size_t i) { return b.evaluate(unit_vector(n, i), r); });
  if (right)
    return {Smoothness::NotSmooth, std::move(right), "pairs a singular direction of the right factor non-trivially"};
  return {Smoothness::Smooth, std::nullopt, "vanishes on both singular spans"};
}

Subspace smooth_bilinear_basis(const DiffSpace& v, const DiffSpace& w) {
  require_fine_or_coarse(w, "smooth_bilinear_basis");
  const std::size_t n = v.dim();
  const std::size_t q = w.dim();
  const std::size_t total = n * n * q;
  if (w.is<descriptor::Coarse>()) return Subspace::full(total);
  const Subspace s = singular_span(v);
  if (s.dim() == 0) return Subspace::full(total);

  auto at = [&](std::size_t i, std::size_t j, std::size_t k) { return (i * n + j) * q + k; };
  Matrix constraints(0, total);
  for (std::size_t a = 0; a < s.dim(); ++a) {
    const Vector r = s.basis_vector(a);
    for (std::size_t other = 0; other < n; ++other) {
      for (std::size_t k = 0; k < q; ++k) {
        Vector first(total), second(total);
        for (std::size_t t = 0; t < n; ++t) {
          first[at(t, other, k)] += r[t];   // b(r, e_other)_k
          second[at(other, t, k)] += r[t];  // b(e_other, r)_k
        }
        constraints.append_row(first);
        constraints.append_row(second);
      }
    }
  }
  return Subspace::span(total, nullspace(constraints));
}

CurriedMap to_curried(const BilinearForm& b) {
  const std::size_t n = b.left().dim();
  const std::size_t m = b.right().dim();
  const std::size_t q = b.codomain().dim();
  CurriedMap g{b.left(), b.right(), b.codomain(), {}};
  g.images.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Matrix image(q, m);
    for (std::size_t j = 0; j < m; ++j) {
      const Vector val = b.value(i, j);
      for (std::size_t k = 0; k < q; ++k) image(k, j) = val[k];
    }
    g.images.push_back(std::move(image));
  }
  return g;
}

CurriedMap curry(const BilinearForm& b, const MembershipConfig& config) {
  const auto verdict = is_smooth_bilinear(b);
  if (verdict.verdict != Smoothness::Smooth)
    throw std::invalid_argument("curry: bilinear map is " + to_string(verdict.verdict) + " (" + verdict.reason + ")");
  CurriedMap g = to_curried(b);
  for (std::size_t i = 0; i < g.images.size(); ++i) {
    const auto image = is_smooth_linear(LinearMap(g.inner, g.codomain, g.images[i]), config);
    if (image.verdict != Smoothness::Smooth)
      throw std::logic_error("curry: image of basis vector " + std::to_string(i) + " is " + to_string(image.verdict));
  }
  return g;
}

BilinearForm uncurry(const CurriedMap& g) {
  const std::size_t n = g.domain.dim();
  const std::size_t m = g.inner.dim();
  const std::size_t q = g.codomain.dim();
  if (g.images.size() != n) throw DimensionError("uncurry: one image per domain basis vector required");
  BilinearForm b(g.domain, g.inner, g.codomain);
  for (std::size_t i = 0; i < n; ++i) {
    if (g.images[i].rows() != q || g.images[i].cols() != m) throw DimensionError("uncurry: image has the wrong shape");
    for (std::size_t j = 0; j < m; ++j) b.set(i, j, g.images[i].col(j));
  }
  return b;
}

BilinearDecision is_smooth_curried(const CurriedMap& g, const MembershipConfig& config) {
  const std::size_t n = g.domain.dim();
  const std::size_t m = g.inner.dim();
  if (g.images.size() != n) throw DimensionError("is_smooth_curried: one image per domain basis vector required");

  Smoothness verdict = Smoothness::Smooth;
  for (std::size_t i = 0; i < n; ++i) {
    const auto image = is_smooth_linear(LinearMap(g.inner, g.codomain, g.images[i]), config);
    if (image.verdict == Smoothness::NotSmooth)
      return {Smoothness::NotSmooth, std::make_pair(Plot::constant(unit_vector(n, i)), *image.witness),
              "G(v_" + std::to_string(i) + ") is not smooth: " + image.reason};
    verdict = combine(verdict, image.verdict);
  }

  // A plot p of V is a plot of L^∞(V', W) after G iff u ↦ G(p(u))(v') is a
  // plot of W for every constant v'. Singular plots of V are |x|·x^d·r with
  // r in the filtration; smooth ones are harmless.
  for (unsigned d = 0; d <= g.domain.filtration_depth(); ++d) {
    const Subspace& fd = g.domain.filtration_at(d);
    for (std::size_t a = 0; a < fd.dim(); ++a) {
      const Vector r = fd.basis_vector(a);
      Matrix gr(g.codomain.dim(), m);
      for (std::size_t i = 0; i < n; ++i)
        if (r[i] != 0) gr = gr + r[i] * g.images[i];
      for (std::size_t j = 0; j < m; ++j) {
        const auto image = is_plot(g.codomain, Plot::kink(gr.col(j), d), config);
        if (image.verdict == Membership::NotPlot)
          return {Smoothness::NotSmooth, std::make_pair(Plot::kink(r, d), Plot::constant(unit_vector(m, j))),
                  "evaluation along a singular plot of the domain is not a plot"};
        if (image.verdict == Membership::Unknown) verdict = combine(verdict, Smoothness::Unknown);
      }
    }
  }
  return {verdict, std::nullopt,
          verdict == Smoothness::Smooth ? "every image smooth and evaluation along plots smooth"
                                        : "some membership question is undecided"};
}

Subspace smooth_curried_basis(const DiffSpace& v, const DiffSpace& w) {
  require_fine_or_coarse(w, "smooth_curried_basis");
  const std::size_t n = v.dim();
  const std::size_t q = w.dim();
  const std::size_t total = n * q * n;
  if (w.is<descriptor::Coarse>()) return Subspace::full(total);
  const Subspace s = singular_span(v);
  if (s.dim() == 0) return Subspace::full(total);

  auto at = [&](std::size_t i, std::size_t k, std::size_t j) { return i * q * n + k * n + j; };
  Matrix constraints(0, total);
  for (std::size_t a = 0; a < s.dim(); ++a) {
    const Vector r = s.basis_vector(a);
    for (std::size_t k = 0; k < q; ++k) {
      for (std::size_t other = 0; other < n; ++other) {
        Vector outer(total), inner(total);
        for (std::size_t t = 0; t < n; ++t) {
          outer[at(t, k, other)] += r[t];  // G(r) v_other, component k
          inner[at(other, k, t)] += r[t];  // G(v_other) r, component k
        }
        constraints.append_row(outer);
        constraints.append_row(inner);
      }
    }
  }
  return Subspace::span(total, nullspace(constraints));
}

BilinearForm bilinear_from_coordinates(const DiffSpace& v, const DiffSpace& w, const Vector& coords) {
  return BilinearForm(v, v, w, coords);
}

Vector curried_coordinates(const CurriedMap& g) {
  Vector out;
  for (const auto& image : g.images)
    for (std::size_t k = 0; k < image.rows(); ++k)
      for (std::size_t j = 0; j < image.cols(); ++j) out.push_back(image(k, j));
  return out;
}

CurriedMap curried_from_coordinates(const DiffSpace& v, const DiffSpace& w, const Vector& coords) {
  const std::size_t n = v.dim();
  const std::size_t q = w.dim();
  if (coords.size() != n * q * n) throw DimensionError("curried_from_coordinates: wrong number of coordinates");
  CurriedMap g{v, v, w, {}};
  for (std::size_t i = 0; i < n; ++i) {
    Matrix image(q, n);
    for (std::size_t k = 0; k < q; ++k)
      for (std::size_t j = 0; j < n; ++j) image(k, j) = coords[i * q * n + k * n + j];
    g.images.push_back(std::move(image));
  }
  return g;
}

}  // namespace diffeolin
