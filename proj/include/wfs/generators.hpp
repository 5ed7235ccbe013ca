#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "wfs/random.hpp"
#include "wfs/scenario.hpp"

// Random scenario factories used by sweeps and tests. Sampling is Haar for
// states, bases, and unitary blocks; channels are mixtures of Haar unitaries
// unless the general Sinkhorn route is requested.

namespace wfs {

enum class OpsKind {
  BlockUnitary,     // one Haar block per setting, sector preserving
  MixtureChannel,   // convex mixture of Haar unitaries on the combined space
  SinkhornChannel,  // general unital channel on the combined space
};

/// Haar-random scenario: |psi> and all n bases Haar, m - 1 nontrivial ops
/// after the mandatory identity.
inline Scenario random_scenario(std::size_t d, std::size_t n, std::size_t m, Dynamics dyn,
                                OpsKind kind, std::mt19937_64& rng,
                                std::size_t extra_junk = 0) {
  if (d < 2 || n < 1 || m < 1) throw std::invalid_argument("dimension mismatch");
  Scenario s;
  s.d = d;
  s.n = n;
  s.extra_junk = extra_junk;
  s.dynamics = dyn;
  s.psi = random_state(d, rng);
  for (std::size_t x = 0; x < n; ++x)
    s.measurements.push_back(FriendMeasurement::from_unitary(random_unitary(d, rng)));
  s.ops.push_back(SuperObserverOp::identity());
  for (std::size_t w = 1; w < m; ++w) {
    switch (kind) {
      case OpsKind::BlockUnitary: {
        std::vector<CMat> blocks;
        for (std::size_t x = 0; x < n; ++x) blocks.push_back(random_unitary(d, rng));
        s.ops.push_back(SuperObserverOp::block_unitary(std::move(blocks)));
        break;
      }
      case OpsKind::MixtureChannel:
        s.ops.push_back(
            SuperObserverOp::unital_channel(random_unital_channel(s.combined_dim(), 8, rng)));
        break;
      case OpsKind::SinkhornChannel:
        s.ops.push_back(SuperObserverOp::unital_channel(
            random_unital_channel_general(s.combined_dim(), 3, rng)));
        break;
    }
  }
  s.validate();
  return s;
}

inline Scenario random_scenario(std::size_t d, std::size_t n, std::size_t m, Dynamics dyn,
                                OpsKind kind, std::uint64_t seed) {
  auto rng = make_stream(seed);
  return random_scenario(d, n, m, dyn, kind, rng);
}

}  // namespace wfs
