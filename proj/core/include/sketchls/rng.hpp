#pragma once

#include <cstdint>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace sketchls {

/// Derive a child seed from a parent seed and a tag (splitmix64 finalizer over
/// the combined words). Chaining derive_seed calls gives the per-trial seeds
/// used by the experiment harness: every stream is a pure function of the
/// master seed and the coordinates that name it.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t tag);
std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts);

/// Deterministic xoshiro256++ generator seeded via splitmix64 expansion.
/// The stream depends only on the seed, not on the platform or standard
/// library, so results are reproducible bit-for-bit at a fixed seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double();

  /// Standard normal via the Marsaglia polar method (second value cached).
  double next_gaussian();

  /// Uniform index in [0, n); rejection-sampled so every value is exactly
  /// equally likely. n must be positive.
  std::size_t next_index(std::size_t n);

  /// +1 or -1 with equal probability.
  double next_sign();

  /// Independent generator derived from this one's seed and a tag; does not
  /// consume or depend on this generator's position in its stream.
  Rng child(std::uint64_t tag) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t state_[4];
  std::uint64_t seed_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// First `take` entries of a uniformly random permutation of {0, ..., n-1}
/// via a partial Fisher-Yates shuffle. With take == n this is a full random
/// permutation; with take < n it is an ordered uniform sample without
/// replacement.
std::vector<std::size_t> sample_without_replacement(std::size_t take,
                                                    std::size_t n, Rng& rng);

}  // namespace sketchls
