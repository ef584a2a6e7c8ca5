#include "diffeolin/verify.hpp"

#include "diffeolin/bilinear.hpp"
#include "diffeolin/oracle.hpp"
#include "diffeolin/tensor.hpp"

#include <chrono>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>

#ifndef DIFFEOLIN_DATA_DIR
#define DIFFEOLIN_DATA_DIR "data"
#endif

namespace diffeolin {

bool VerifyReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

std::string bundled_examples_path() {
  if (const char* dir = std::getenv("DIFFEOLIN_DATA_DIR"); dir && *dir) return std::string(dir) + "/paper-examples.json";
  return std::string(DIFFEOLIN_DATA_DIR) + "/paper-examples.json";
}

namespace {

CheckResult timed(std::string name, const std::function<void(CheckResult&)>& body) {
  const auto start = std::chrono::steady_clock::now();
  CheckResult r;
  r.name = std::move(name);
  try {
    body(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail += (r.detail.empty() ? "" : "; ") + std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

/// Counts cases and keeps the first failure message.
struct Tally {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first;

  void expect(bool ok, const std::string& what) {
    ++cases;
    if (ok) return;
    if (failures++ == 0) first = what;
  }
  void finish(CheckResult& r, const std::string& extra = "") const {
    r.passed = failures == 0;
    r.detail = std::to_string(cases) + " cases, " + std::to_string(failures) + " failures";
    if (!extra.empty()) r.detail += "; " + extra;
    if (failures) r.detail += "; first: " + first;
  }
};

Plot kink(std::size_t n, std::size_t i, unsigned degree = 0) { return Plot::kink(unit_vector(n, i), degree); }

DiffSpace kinked(std::size_t n, std::size_t k) {
  std::vector<Plot> gens;
  for (std::size_t i = 0; i < k; ++i) gens.push_back(kink(n, i));
  return make_generated(n, std::move(gens));
}

Rational small_rational(std::mt19937_64& rng, long bound = 3) {
  Rational r(std::uniform_int_distribution<long>(-bound, bound)(rng), std::uniform_int_distribution<long>(1, 3)(rng));
  r.canonicalize();
  return r;
}

std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = small_rational(rng);
  return m;
}

Matrix random_invertible(std::mt19937_64& rng, std::size_t n) {
  for (;;) {
    Matrix m = random_matrix(rng, n, n);
    if (rank(m) == n) return m;
  }
}

/// Generators used by the exhaustive sweeps: coordinate kinks, a degree-one
/// kink and a kink mixed with a smooth term.
std::vector<Plot> generator_catalogue(std::size_t n) {
  std::vector<Plot> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(kink(n, i));
  out.push_back(kink(n, 0, 1));
  if (n >= 2) {
    std::vector<FunctionExpr> comps(n);
    comps[0] = FunctionExpr::abs_x_pow(0) + FunctionExpr::x_pow(2);
    comps[1] = FunctionExpr::abs_x_pow(0);
    out.emplace_back(std::move(comps));
  }
  return out;
}

/// All generated spaces of dimension n with at most two catalogue generators.
std::vector<DiffSpace> generated_sweep(std::size_t n) {
  const auto cat = generator_catalogue(n);
  std::vector<DiffSpace> out{make_generated(n, {})};
  for (std::size_t a = 0; a < cat.size(); ++a) {
    out.push_back(make_generated(n, {cat[a]}));
    for (std::size_t b = a + 1; b < cat.size(); ++b) out.push_back(make_generated(n, {cat[a], cat[b]}));
  }
  return out;
}

DiffSpace random_generated(std::mt19937_64& rng, std::size_t n) {
  const auto cat = generator_catalogue(n);
  std::vector<Plot> gens;
  const std::size_t count = pick(rng, 1, 2);
  for (std::size_t i = 0; i < count; ++i) gens.push_back(cat[pick(rng, 0, cat.size() - 1)]);
  return make_generated(n, std::move(gens));
}

/// Fine, coarse or generated.
DiffSpace random_basic(std::mt19937_64& rng, std::size_t n) {
  switch (pick(rng, 0, 2)) {
    case 0: return make_fine(n);
    case 1: return make_coarse(n);
    default: return random_generated(rng, n);
  }
}

/// Any supported non-dual space of dimension n.
DiffSpace random_space(std::mt19937_64& rng, std::size_t n) {
  switch (pick(rng, 0, 4)) {
    case 3:
      if (n >= 2) {
        const std::size_t left = pick(rng, 1, n - 1);
        return direct_sum(random_basic(rng, left), random_basic(rng, n - left));
      }
      return random_basic(rng, n);
    case 4: return make_pushforward(random_generated(rng, n), random_invertible(rng, n));
    default: return random_basic(rng, n);
  }
}

FunctionExpr random_polynomial(std::mt19937_64& rng, unsigned max_degree) {
  Polynomial p;
  for (unsigned k = 0; k <= pick(rng, 0, max_degree); ++k)
    if (Rational c = small_rational(rng); c != 0) p.emplace(k, c);
  return FunctionExpr::from_parts(p, {});
}

Plot random_smooth_plot(std::mt19937_64& rng, std::size_t n) {
  std::vector<FunctionExpr> comps(n);
  for (auto& c : comps) c = random_polynomial(rng, 2);
  return Plot(std::move(comps));
}

/// λ(x)·g(c·x) + s(x) through a random generator, or a smooth plot.
Plot random_plot_of(std::mt19937_64& rng, const DiffSpace& v) {
  Plot s = random_smooth_plot(rng, v.dim());
  if (v.is<descriptor::Generated>()) {
    const auto& gens = v.as<descriptor::Generated>().generators;
    if (gens.empty()) return s;
    FunctionExpr lambda = random_polynomial(rng, 2) + FunctionExpr::constant(1);
    Rational c = small_rational(rng);
    if (c == 0) c = 1;
    return s + gens[pick(rng, 0, gens.size() - 1)].reparametrized(c).scaled(lambda);
  }
  if (v.is<descriptor::Coarse>()) {
    Vector dir(v.dim());
    for (auto& x : dir) x = small_rational(rng);
    return s + Plot::kink(dir, 0);
  }
  return s;
}

/// Matrix whose rows are a basis of Ann(S_V), times a random mixing matrix.
Matrix killing_map(std::mt19937_64& rng, const DiffSpace& v, std::size_t rows) {
  const Subspace ann = singular_span(v).annihilator();
  if (ann.dim() == 0) return Matrix(rows, v.dim());
  return random_matrix(rng, rows, ann.dim()) * ann.basis();
}

}  // namespace

CheckResult check_dual_dimensions() {
  return timed("dual dimensions", [](CheckResult& r) {
    Tally t;
    for (std::size_t n = 1; n <= 5; ++n) {
      t.expect(diffeological_dual(make_coarse(n)).dim() == 0, "coarse R^" + std::to_string(n));
      t.expect(diffeological_dual(make_fine(n)).dim() == n, "fine R^" + std::to_string(n));
      for (std::size_t k = 1; k < n; ++k)
        t.expect(diffeological_dual(kinked(n, k)).dim() == n - k,
                 std::to_string(k) + " kinks in R^" + std::to_string(n));
    }
    t.finish(r);
  });
}

CheckResult check_bilinear_vanishing() {
  return timed("bilinear vanishing", [](CheckResult& r) {
    Tally t;
    for (std::size_t n = 2; n <= 4; ++n) {
      const auto dim = smooth_bilinear_basis(make_coarse(n), make_fine(1)).dim();
      t.expect(dim == 0, "coarse R^" + std::to_string(n) + " has " + std::to_string(dim) + " smooth forms");
    }
    t.finish(r);
  });
}

CheckResult check_curry_correspondence(std::uint64_t seed) {
  return timed("curry correspondence", [seed](CheckResult& r) {
    std::mt19937_64 rng(seed);
    Tally t;
    std::size_t spaces = 0, smooth_forms = 0;
    const DiffSpace codomains[] = {make_fine(1), make_fine(2), make_coarse(1)};
    for (std::size_t n = 1; n <= 3; ++n) {
      for (const auto& v : generated_sweep(n)) {
        ++spaces;
        const std::string where = v.describe();
        for (const auto& w : codomains) {
          const Subspace bil = smooth_bilinear_basis(v, w);
          const Subspace cur = smooth_curried_basis(v, w);
          t.expect(bil.dim() == cur.dim(), "dimension mismatch on " + where);
          for (std::size_t a = 0; a < bil.dim(); ++a)
            t.expect(cur.contains(curried_coordinates(to_curried(bilinear_from_coordinates(v, w, bil.basis_vector(a))))),
                     "curry leaves the smooth set on " + where);
          for (std::size_t a = 0; a < cur.dim(); ++a)
            t.expect(bil.contains(uncurry(curried_from_coordinates(v, w, cur.basis_vector(a))).coefficients()),
                     "uncurry leaves the smooth set on " + where);
        }
        for (std::size_t f = 0; f < 100; ++f) {
          const DiffSpace& w = codomains[f % 3];
          const std::size_t total = n * n * w.dim();
          Vector coeffs(total);
          if (f % 2 == 0) {
            const Subspace bil = smooth_bilinear_basis(v, w);
            for (std::size_t a = 0; a < bil.dim(); ++a) {
              const Rational c = small_rational(rng);
              const Vector row = bil.basis_vector(a);
              for (std::size_t i = 0; i < total; ++i) coeffs[i] += c * row[i];
            }
          } else {
            for (auto& c : coeffs) c = small_rational(rng);
          }
          const BilinearForm b(v, v, w, coeffs);
          const CurriedMap g = to_curried(b);
          t.expect(uncurry(g) == b, "uncurry(curry(b)) != b on " + where);
          const auto vb = is_smooth_bilinear(b).verdict;
          const auto vg = is_smooth_curried(g).verdict;
          t.expect(vb == vg, "verdicts differ (" + to_string(vb) + " vs " + to_string(vg) + ") on " + where);
          if (vb == Smoothness::Smooth) {
            ++smooth_forms;
            t.expect(curry(b) == g, "curry disagrees with the reshuffle on " + where);
          }

          Vector gc(total);
          for (auto& c : gc) c = small_rational(rng);
          const CurriedMap h = curried_from_coordinates(v, w, gc);
          t.expect(to_curried(uncurry(h)) == h, "curry(uncurry(G)) != G on " + where);
          t.expect(is_smooth_curried(h).verdict == is_smooth_bilinear(uncurry(h)).verdict,
                   "verdicts differ for a random G on " + where);
        }
      }
    }
    t.finish(r, std::to_string(spaces) + " spaces, " + std::to_string(smooth_forms) + " smooth forms");
  });
}

CheckResult check_dual_map_smoothness(std::uint64_t seed) {
  return timed("dual map smoothness", [seed](CheckResult& r) {
    std::mt19937_64 rng(seed);
    Tally t;
    for (std::size_t trial = 0; trial < 200; ++trial) {
      const DiffSpace v = random_space(rng, pick(rng, 1, 4));
      const std::size_t n = v.dim();
      std::optional<LinearMap> f;
      switch (trial % 4) {
        case 0: {
          const std::size_t m = pick(rng, 1, 4);
          f.emplace(v, make_coarse(m), random_matrix(rng, m, n));
          break;
        }
        case 1: {
          const DiffSpace w = random_space(rng, pick(rng, 1, 4));
          f.emplace(v, w, killing_map(rng, v, w.dim()));
          break;
        }
        case 2: {
          Rational c = small_rational(rng);
          f.emplace(v, v, c * Matrix::identity(n) + killing_map(rng, v, n));
          break;
        }
        default: {
          const Matrix iso = random_invertible(rng, n);
          Rational c = small_rational(rng);
          f.emplace(v, make_pushforward(v, iso), iso * (c * Matrix::identity(n) + killing_map(rng, v, n)));
          break;
        }
      }
      const std::string where = "trial " + std::to_string(trial) + " " + v.describe() + " -> " + f->codomain().describe();
      const auto verdict = is_smooth_linear(*f);
      t.expect(verdict.verdict == Smoothness::Smooth, "constructed map judged " + to_string(verdict.verdict) + ": " + where);
      if (verdict.verdict != Smoothness::Smooth) continue;
      try {
        const LinearMap dual = dual_map(*f);
        t.expect(is_smooth_linear(dual).verdict == Smoothness::Smooth, "dual map not smooth: " + where);
      } catch (const std::exception& e) {
        t.expect(false, std::string(e.what()) + ": " + where);
      }
    }

    // Pushforward duals: the transpose of a map from fine to coarse.
    for (std::size_t n = 2; n <= 3; ++n) {
      const DiffSpace v = make_fine(n);
      const DiffSpace w = make_coarse(n);
      Matrix m = random_invertible(rng, n);
      const LinearMap f(v, w, m);
      const LinearMap star = dual_map(f);
      t.expect(star.domain().dim() == 0, "dual of coarse R^" + std::to_string(n) + " is not zero");
      const DiffSpace hat_v = hat_dual(v, Matrix::identity(n));
      const DiffSpace hat_w = hat_dual(w, Matrix::identity(n));
      const LinearMap transpose(hat_w, hat_v, m.transpose());
      const auto verdict = is_smooth_linear(transpose);
      t.expect(verdict.verdict == Smoothness::NotSmooth && verdict.witness.has_value(),
               "hat-dual transpose judged " + to_string(verdict.verdict));
      if (verdict.witness) {
        t.expect(is_plot(hat_w, *verdict.witness).verdict == Membership::Plot, "witness is not a plot of the source");
        t.expect(is_plot(hat_v, verdict.witness->transformed(m.transpose())).verdict == Membership::NotPlot,
                 "witness image is a plot of the target");
      }
    }
    t.finish(r);
  });
}

CheckResult check_tensor_dual_multiplicativity() {
  return timed("tensor dual multiplicativity", [](CheckResult& r) {
    Tally t;
    std::vector<DiffSpace> grid;
    for (std::size_t n = 1; n <= 3; ++n) {
      grid.push_back(make_fine(n));
      grid.push_back(make_coarse(n));
      grid.push_back(make_generated(n, {kink(n, 0)}));
      grid.push_back(n >= 2 ? kinked(n, 2) : make_generated(n, {kink(n, 0), kink(n, 0, 1)}));
    }
    for (const auto& v : grid) {
      for (const auto& w : grid) {
        const std::string where = v.describe() + " ⊗ " + w.describe();
        try {
          const auto iso = tensor_dual_iso(v, w);
          t.expect(iso.product.dim() == iso.left.dim() * iso.right.dim(), "dimension product fails: " + where);
          t.expect(rank(iso.map.matrix()) == iso.map.domain().dim(), "map not injective: " + where);
        } catch (const std::exception& e) {
          t.expect(false, std::string(e.what()) + ": " + where);
        }
      }
    }
    t.finish(r);
  });
}

CheckResult check_non_isomorphisms() {
  return timed("non-isomorphisms", [](CheckResult& r) {
    Tally t;
    const auto f = hat_F(make_coarse(2), make_fine(1));
    t.expect(f.domain_dim == 2 && f.smooth_target_dim == 0 && !f.isomorphism,
             "F: " + std::to_string(f.domain_dim) + " vs " + std::to_string(f.smooth_target_dim));
    const auto g = hat_G(make_coarse(2), make_fine(1));
    t.expect(g.smooth_target_dim == 2 && g.domain_dim == 2, "G: smooth target " + std::to_string(g.smooth_target_dim));
    const auto e = endo_remark_check(make_coarse(2));
    t.expect(e.dual_tensor_dim == 0 && e.smooth_endo_dim == 4u && e.equal == false,
             "endomorphisms: " + std::to_string(e.dual_tensor_dim) + " vs " +
                 std::to_string(e.smooth_endo_dim.value_or(0)));
    t.finish(r);
  });
}

CheckResult check_distributivity(std::uint64_t seed) {
  return timed("distributivity", [seed](CheckResult& r) {
    std::mt19937_64 rng(seed);
    Tally t;
    for (std::size_t trial = 0; trial < 50; ++trial) {
      const DiffSpace v1 = random_basic(rng, pick(rng, 1, 2));
      const DiffSpace v2 = random_basic(rng, pick(rng, 1, 2));
      const DiffSpace v3 = random_basic(rng, pick(rng, 1, 2));
      const std::string where = v1.describe() + "; " + v2.describe() + "; " + v3.describe();
      const auto d = distribute(v1, v2, v3);
      t.expect(d.forward_verdict.verdict == Smoothness::Smooth,
               "forward " + to_string(d.forward_verdict.verdict) + ": " + where);
      t.expect(d.inverse_verdict.verdict == Smoothness::Smooth,
               "inverse " + to_string(d.inverse_verdict.verdict) + ": " + where);
      t.expect(d.domain_singular_dim == d.codomain_singular_dim, "singular spans differ: " + where);
      t.expect(d.inverse.matrix() * d.forward.matrix() == Matrix::identity(d.forward.domain().dim()),
               "not a bijection: " + where);
    }
    t.finish(r);
  });
}

CheckResult check_oracle_agreement(std::uint64_t seed) {
  return timed("oracle agreement", [seed](CheckResult& r) {
    std::mt19937_64 rng(seed);
    Tally atoms;
    for (unsigned k = 0; k <= 6; ++k) {
      const auto mono = classify(FunctionExpr::x_pow(k));
      atoms.expect(mono.kind == OracleClass::Kind::CInfinityLikely, "x^" + std::to_string(k) + " -> " + mono.to_string());
      const auto kinked_atom = classify(FunctionExpr::abs_x_pow(k));
      atoms.expect(kinked_atom == OracleClass{OracleClass::Kind::NonSmoothAt0, k + 2},
                   "abs(x)*x^" + std::to_string(k) + " -> " + kinked_atom.to_string());
    }
    std::size_t agree = 0;
    const std::size_t total = 1000;
    std::string first_disagreement;
    for (std::size_t i = 0; i < total; ++i) {
      FunctionExpr f;
      const std::size_t terms = pick(rng, 1, 5);
      for (std::size_t j = 0; j < terms; ++j) {
        Rational c(std::uniform_int_distribution<long>(-10, 10)(rng), std::uniform_int_distribution<long>(1, 5)(rng));
        c.canonicalize();
        const unsigned degree = static_cast<unsigned>(pick(rng, 0, 6));
        f = f + FunctionExpr::atom(pick(rng, 0, 1) ? Atom::abs_mono(degree) : Atom::mono(degree), c);
      }
      const bool ok = is_smooth(f) == classify(f).smooth_like();
      agree += ok;
      if (!ok && first_disagreement.empty()) first_disagreement = f.to_string();
    }
    const double rate = double(agree) / double(total);
    r.passed = atoms.failures == 0 && rate >= 0.99;
    std::ostringstream os;
    os << "atoms " << atoms.cases - atoms.failures << "/" << atoms.cases << ", random " << agree << "/" << total;
    if (atoms.failures) os << "; first atom failure: " << atoms.first;
    if (!first_disagreement.empty()) os << "; first disagreement: " << first_disagreement;
    r.detail = os.str();
  });
}

CheckResult check_hat_dual_wellposedness(std::uint64_t seed) {
  return timed("hat-dual well-posedness", [seed](CheckResult& r) {
    std::mt19937_64 rng(seed);
    std::size_t mismatches = 0, transport_failures = 0;
    std::string first;
    const std::size_t tuples = 20;
    for (std::size_t i = 0; i < tuples; ++i) {
      const DiffSpace v = random_basic(rng, pick(rng, 2, 3));
      const std::size_t n = v.dim();
      const Matrix iso1 = random_invertible(rng, n);
      const Matrix iso2 = random_invertible(rng, n);
      // Even tuples probe with a plot of the first pushforward diffeology,
      // odd ones with an arbitrary candidate.
      Plot sample = random_plot_of(rng, v).transformed(iso1);
      if (i % 2 == 1) {
        Vector dir(n);
        for (auto& x : dir) x = small_rational(rng);
        sample = random_smooth_plot(rng, n) + Plot::kink(dir, 0);
      }
      const auto report = hat_dual_wellposed(v, iso1, iso2, {sample});
      transport_failures += report.transport_failures;
      if (!report.consistent()) {
        ++mismatches;
        if (first.empty())
          first = v.describe() + ", sample " + sample.to_string() + ": " + to_string(report.first[0]) + " vs " +
                  to_string(report.second[0]);
      }
    }
    r.passed = mismatches == 0;
    r.detail = std::to_string(tuples) + " tuples, " + std::to_string(mismatches) + " verdict mismatches, " +
               std::to_string(transport_failures) + " transport failures";
    if (!first.empty()) r.detail += "; first: " + first;
  });
}

std::vector<CheckResult> replay_examples(const SpaceFile& file, const MembershipConfig& config) {
  std::vector<CheckResult> out;
  auto add = [&](std::string name, const std::function<void(Tally&)>& body) {
    out.push_back(timed(std::move(name), [&](CheckResult& r) {
      Tally t;
      body(t);
      t.finish(r);
    }));
  };
  auto smooth = [&](const std::string& map) { return is_smooth_linear(file.map(map), config).verdict; };

  add("example: coarse space has zero dual", [&](Tally& t) {
    t.expect(diffeological_dual(file.space("coarse_R3")).dim() == 0, "dual of coarse R^3");
    t.expect(smooth("coarse_to_line") == Smoothness::NotSmooth, "non-zero functional on coarse R^3");
  });
  add("example: kinks cut the dual", [&](Tally& t) {
    t.expect(diffeological_dual(file.space("kinks_R4_e1_e2")).dim() == 2, "two kinks in R^4");
    t.expect(diffeological_dual(file.space("kink_R3_e1")).dim() == 2, "one kink in R^3");
    t.expect(smooth("kink3_to_line") == Smoothness::Smooth, "(0,1,1) on one kink in R^3");
    t.expect(smooth("kink2_first_coordinate") == Smoothness::NotSmooth, "(1,0) on one kink in R^2");
  });
  add("example: mixed generator", [&](Tally& t) {
    t.expect(singular_span(file.space("mixed_R2")) == Subspace::span(2, std::vector<Vector>{{1, 1}}), "singular span");
    t.expect(smooth("mixed_difference") == Smoothness::Smooth, "(1,-1)");
    t.expect(smooth("mixed_first") == Smoothness::NotSmooth, "(1,0)");
  });
  add("example: polynomial multiple of a generator", [&](Tally& t) {
    const Plot c({FunctionExpr::abs_x_pow(1), FunctionExpr()});
    t.expect(is_plot(file.space("kink_R2_e1"), c, config).verdict == Membership::Plot, "x*abs(x) e1");
  });
  add("example: no smooth bilinear forms on coarse space", [&](Tally& t) {
    t.expect(smooth_bilinear_basis(file.space("coarse_R2"), file.space("fine_R1")).dim() == 0, "coarse R^2");
  });
  add("example: bilinear and curried forms correspond", [&](Tally& t) {
    const DiffSpace& v = file.space("kink_R3_e1");
    const DiffSpace& w = file.space("fine_R1");
    const Subspace bil = smooth_bilinear_basis(v, w);
    t.expect(bil.dim() == 4 && smooth_curried_basis(v, w).dim() == 4, "dimension 4 on both sides");
    for (std::size_t a = 0; a < bil.dim(); ++a) {
      const BilinearForm b = bilinear_from_coordinates(v, w, bil.basis_vector(a));
      t.expect(uncurry(curry(b, config)) == b, "round trip");
      t.expect(is_smooth_curried(to_curried(b), config).verdict == Smoothness::Smooth, "curried verdict");
    }
  });
  add("example: fine space is self-dual", [&](Tally& t) {
    const DiffSpace& v = file.space("fine_R3");
    const DualSpace d = diffeological_dual(v);
    t.expect(d.dim() == 3, "dual dimension");
    const Matrix to_dual = d.annihilator.basis().transpose();  // coordinates of v_i^* in the dual basis
    t.expect(is_smooth_linear(LinearMap(v, d.space, to_dual), config).verdict == Smoothness::Smooth, "V -> V*");
    t.expect(is_smooth_linear(LinearMap(d.space, v, *inverse(to_dual)), config).verdict == Smoothness::Smooth,
             "V* -> V");
  });
  add("example: pushforward duals", [&](Tally& t) {
    const DiffSpace& fine = file.space("fine_R2");
    const DiffSpace& coarse = file.space("coarse_R2");
    const DiffSpace& kink = file.space("kink_R2_e1");
    const Matrix swap = Matrix::from_rows({{0, 1}, {1, 0}}, 2);
    const Plot bare({FunctionExpr::abs_x_pow(0), FunctionExpr()});
    t.expect(singular_span(hat_dual(fine, Matrix::identity(2))).dim() == 0, "fine stays fine");
    t.expect(is_plot(hat_dual(coarse, swap), bare, config).verdict == Membership::Plot, "coarse stays coarse");
    const DiffSpace swapped = hat_dual(kink, swap);
    t.expect(singular_span(swapped) == singular_span(file.space("kink_R2_e2")), "swap moves the kink");
    const Plot other({FunctionExpr(), FunctionExpr::abs_x_pow(0)});
    t.expect(is_plot(swapped, other, config).verdict == Membership::Plot, "swapped generator");
    const auto report = hat_dual_wellposed(kink, Matrix::identity(2), Matrix::from_rows({{1, 1}, {0, 1}}, 2), {bare}, config);
    t.expect(report.consistent() && report.first[0] == Membership::Plot, "shear keeps the kink line");
  });
  add("example: dual maps", [&](Tally& t) {
    const LinearMap star = dual_map(file.map("kink2_to_line"), config);
    t.expect(star.matrix() == Matrix::from_rows({{1}}, 1), "matrix (1)");
    t.expect(dual_map(file.map("fine_to_coarse"), config).domain().dim() == 0, "coarse codomain has zero dual");
  });
  add("example: transpose between pushforward duals", [&](Tally& t) {
    const LinearMap& f = file.map("fine_to_coarse");
    const LinearMap transpose(hat_dual(f.codomain(), Matrix::identity(2)), hat_dual(f.domain(), Matrix::identity(2)),
                              f.matrix().transpose());
    const auto verdict = is_smooth_linear(transpose, config);
    t.expect(verdict.verdict == Smoothness::NotSmooth && verdict.witness, "NotSmooth with witness");
  });
  add("example: distributivity", [&](Tally& t) {
    const auto d = distribute(file.space("kink_R2_e1"), file.space("fine_R1"), file.space("fine_R1"), config);
    t.expect(d.forward_verdict.verdict == Smoothness::Smooth && d.inverse_verdict.verdict == Smoothness::Smooth,
             "both directions smooth");
    t.expect(d.domain_singular_dim == 2 && d.codomain_singular_dim == 2, "singular spans of dimension 2");
  });
  add("example: tensor product versus smooth maps", [&](Tally& t) {
    const auto f = hat_F(file.space("coarse_R2"), file.space("fine_R1"));
    t.expect(f.domain_dim == 2 && f.smooth_target_dim == 0, "2 vs 0");
    const auto g = hat_G(file.space("coarse_R2"), file.space("fine_R1"));
    t.expect(g.smooth_target_dim == 2, "smooth maps W* -> V");
  });
  add("example: endomorphisms", [&](Tally& t) {
    const auto coarse = endo_remark_check(file.space("coarse_R2"));
    t.expect(coarse.dual_tensor_dim == 0 && coarse.smooth_endo_dim == 4u, "coarse 0 vs 4");
    const auto fine = endo_remark_check(file.space("fine_R3"));
    t.expect(fine.dual_tensor_dim == 9 && fine.equal == true, "fine 9 vs 9");
    const auto kink = endo_remark_check(file.space("kink_R2_e1"));
    t.expect(kink.dual_tensor_dim == 2 && !kink.smooth_endo_dim, "generated side undecided");
  });
  add("example: dual of a tensor product", [&](Tally& t) {
    const auto kinks = tensor_dual_iso(file.space("kink_R2_e1"), file.space("kink_R2_e1"));
    t.expect(kinks.map.matrix().rows() == 1 && kinks.map.matrix().cols() == 1, "1x1");
    const auto zero = tensor_dual_iso(file.space("coarse_R2"), file.space("fine_R1"));
    t.expect(zero.product.dim() == 0 && zero.map.domain().dim() == 0, "both sides zero");
  });
  return out;
}

VerifyReport run_verify(const SpaceFile& file, const MembershipConfig& config) {
  VerifyReport report;
  report.checks = {check_dual_dimensions(),
                   check_bilinear_vanishing(),
                   check_curry_correspondence(),
                   check_dual_map_smoothness(),
                   check_tensor_dual_multiplicativity(),
                   check_non_isomorphisms(),
                   check_distributivity(),
                   check_oracle_agreement(),
                   check_hat_dual_wellposedness()};
  for (auto& c : replay_examples(file, config)) report.checks.push_back(std::move(c));
  return report;
}

}  // namespace diffeolin
