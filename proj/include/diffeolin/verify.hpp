#pragma once

#include "diffeolin/space_file.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace diffeolin {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

/// Worked examples, replayed on the named spaces and maps of the bundled
/// file.
std::vector<CheckResult> replay_examples(const SpaceFile& file, const MembershipConfig& config = {});

// Sweeps; each is deterministic for a given seed.
CheckResult check_dual_dimensions();
CheckResult check_bilinear_vanishing();
CheckResult check_curry_correspondence(std::uint64_t seed = 3);
CheckResult check_dual_map_smoothness(std::uint64_t seed = 4);
CheckResult check_tensor_dual_multiplicativity();
CheckResult check_non_isomorphisms();
CheckResult check_distributivity(std::uint64_t seed = 7);
CheckResult check_oracle_agreement(std::uint64_t seed = 8);
CheckResult check_hat_dual_wellposedness(std::uint64_t seed = 9);

/// Sweeps in the order above, then the example replays.
VerifyReport run_verify(const SpaceFile& file, const MembershipConfig& config = {});

/// Location of the bundled data file: $DIFFEOLIN_DATA_DIR, else the
/// build-time data directory.
std::string bundled_examples_path();

}  // namespace diffeolin
