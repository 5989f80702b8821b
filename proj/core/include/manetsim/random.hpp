#pragma once

#include <array>
#include <cstdint>
#include <random>

#include "manetsim/errors.hpp"

namespace manetsim {

/// One stream per stochastic concern. Streams are derived independently
/// from the scenario seed so that, e.g., adding attackers never perturbs
/// mobility or traffic draws (paired-seed discipline).
enum class StreamId : std::uint64_t {
  Mobility = 1,
  Traffic = 2,
  PacketSize = 3,
  AttackerChoice = 4,
};

inline constexpr std::array<StreamId, 4> kAllStreams = {
    StreamId::Mobility, StreamId::Traffic, StreamId::PacketSize,
    StreamId::AttackerChoice};

/// Deterministic random stream. Engine is std::mt19937_64, whose output
/// sequence is pinned by the C++ standard; the double-valued draws below are
/// hand-rolled so results do not depend on any library's distribution
/// implementation.
class RandomStream {
 public:
  RandomStream(std::uint64_t scenario_seed, StreamId id);

  std::uint64_t seed() const { return scenario_seed_; }
  StreamId stream_id() const { return id_; }

  /// Raw engine output.
  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [lo, hi). Aborts on lo >= hi.
  double uniform(double lo, double hi);

  /// Exponential with the given mean, strictly positive. Aborts on mean <= 0.
  double exponential(double mean);

  /// Uniform integer in [0, n). Aborts on n == 0.
  std::uint64_t below(std::uint64_t n);

 private:
  std::uint64_t scenario_seed_;
  StreamId id_;
  std::mt19937_64 engine_;
};

/// All named streams of one run, derived from a single scenario seed.
class RandomBundle {
 public:
  explicit RandomBundle(std::uint64_t scenario_seed);

  RandomStream& stream(StreamId id);

 private:
  std::array<RandomStream, 4> streams_;
};

/// SplitMix64 step; used to derive per-stream seeds from the scenario seed.
std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace manetsim
