#pragma once

#include <cstdint>
#include <random>

#include "modrep/field.hpp"

namespace modrep {

/// Reference seed used by the suite and the CLI default.
inline constexpr std::uint64_t kReferenceSeed = 0x5EED;

/// Seeded generator. All randomized routines take one of these (or a seed)
/// explicitly; there is no ambient randomness anywhere in the library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }
  /// Uniform-ish in [0, n); n > 0.
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }
  Elem element(const Field& f) { return static_cast<Elem>(below(f.q())); }
  Elem nonzero(const Field& f) { return static_cast<Elem>(1 + below(f.q() - 1)); }
  /// Derive an independent stream, e.g. one per subtask.
  Rng split() { return Rng(gen_() ^ 0x9E3779B97F4A7C15ull); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace modrep
