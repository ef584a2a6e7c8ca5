#pragma once

#include "diffeolin/smoothhom.hpp"

#include <optional>

namespace diffeolin {

/// span{ a ⊗ e_j } + span{ e_i ⊗ b } inside Q^{n·m}, basis v_i ⊗ w_j at
/// index i·m + j.
Subspace tensor_block_span(const Subspace& left, const Subspace& right);

/// V ⊗ W with the tensor product diffeology. Factors may be Fine, Coarse,
/// Generated, SumOf or TensorOf. Products of generator pairs are checked to
/// stay inside the block singular span.
DiffSpace tensor_product(const DiffSpace& v, const DiffSpace& w);

/// f ⊗ g between tensor spaces (Kronecker matrix). Requires smooth inputs.
LinearMap tensor_of_maps(const LinearMap& f, const LinearMap& g, const MembershipConfig& config = {});

struct Distribution {
  LinearMap forward;  // V1⊗(V2⊕V3) -> (V1⊗V2)⊕(V1⊗V3)
  LinearMap inverse;
  SmoothDecision forward_verdict;
  SmoothDecision inverse_verdict;
  std::size_t domain_singular_dim = 0;
  std::size_t codomain_singular_dim = 0;
};

Distribution distribute(const DiffSpace& v1, const DiffSpace& v2, const DiffSpace& v3,
                        const MembershipConfig& config = {});

struct TensorDualIso {
  DualSpace left;     // V*
  DualSpace right;    // W*
  DualSpace product;  // (V⊗W)*
  LinearMap map;      // V*⊗W* -> (V⊗W)*
};

/// F(f ⊗ g)(v ⊗ w) = f(v)·g(w) on annihilator bases. Throws std::logic_error
/// if an image functional is not smooth, F is not injective, or the
/// dimensions disagree.
TensorDualIso tensor_dual_iso(const DiffSpace& v, const DiffSpace& w);

struct HatReport {
  Matrix matrix;                  // columns indexed by v_i ⊗ w_j
  std::size_t domain_dim = 0;     // dim V⊗W
  std::size_t full_target_dim = 0;
  std::size_t smooth_target_dim = 0;
  bool values_in_smooth = false;  // every image is a smooth linear map
  bool injective = false;
  bool isomorphism = false;       // onto the smooth maps
};

/// F̂: V⊗W -> L(V*, W), v⊗w ↦ (f ↦ f(v)·w). W must be Fine or Coarse.
HatReport hat_F(const DiffSpace& v, const DiffSpace& w);
/// Ĝ: V⊗W -> L(W*, V), v⊗w ↦ (g ↦ g(w)·v). V must be Fine or Coarse.
HatReport hat_G(const DiffSpace& v, const DiffSpace& w);

struct EndoReport {
  std::size_t dual_tensor_dim = 0;             // dim V* · dim V
  std::optional<std::size_t> smooth_endo_dim;  // dim L^∞(V, V); nullopt when not computable
  std::optional<bool> equal;
};

EndoReport endo_remark_check(const DiffSpace& v);

}  // namespace diffeolin
