#include "manetsim/random.hpp"

#include <cmath>
#include <string>

namespace manetsim {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

std::uint64_t derive_seed(std::uint64_t scenario_seed, StreamId id) {
  // Two splitmix steps over (seed, stream id) decorrelate adjacent seeds.
  std::uint64_t state = scenario_seed ^ (static_cast<std::uint64_t>(id) *
                                         0xD6E8FEB86659FD93ULL);
  splitmix64(state);
  return splitmix64(state);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t scenario_seed, StreamId id)
    : scenario_seed_(scenario_seed), id_(id), engine_(derive_seed(scenario_seed, id)) {}

double RandomStream::uniform(double lo, double hi) {
  if (!(lo < hi)) {
    throw ContractViolation("draw_uniform: empty interval [" +
                            std::to_string(lo) + ", " + std::to_string(hi) +
                            ")");
  }
  // 53-bit mantissa draw in [0, 1).
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  double v = lo + u * (hi - lo);
  if (v >= hi) v = std::nextafter(hi, lo);  // rounding guard
  return v;
}

double RandomStream::exponential(double mean) {
  if (!(mean > 0.0)) {
    throw ContractViolation("draw_exponential: mean must be > 0, got " +
                            std::to_string(mean));
  }
  // Lattice offset keeps u strictly inside (0, 1), so the result is > 0.
  const double u = (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  return -mean * std::log(u);
}

std::uint64_t RandomStream::below(std::uint64_t n) {
  if (n == 0) throw ContractViolation("RandomStream::below: n must be > 0");
  return engine_() % n;
}

RandomBundle::RandomBundle(std::uint64_t scenario_seed)
    : streams_{RandomStream(scenario_seed, StreamId::Mobility),
               RandomStream(scenario_seed, StreamId::Traffic),
               RandomStream(scenario_seed, StreamId::PacketSize),
               RandomStream(scenario_seed, StreamId::AttackerChoice)} {}

RandomStream& RandomBundle::stream(StreamId id) {
  return streams_[static_cast<std::uint64_t>(id) - 1];
}

}  // namespace manetsim
