#pragma once

#include <span>
#include <vector>

#include "modrep/matrix.hpp"

namespace modrep {

/// Smallest row space containing the seed rows and closed under right
/// multiplication by every action matrix.
EchelonForm spin(const Matrix& seeds, std::span<const Matrix> action);
RowSpace spin_space(const Matrix& seeds, std::span<const Matrix> action);

/// How one spin-up basis vector was produced: either a seed vector or the
/// image of an earlier basis vector under one action matrix.
struct SpinStep {
  static constexpr std::size_t kSeed = static_cast<std::size_t>(-1);
  std::size_t parent = kSeed;  // index of an earlier basis vector, or kSeed
  std::size_t index = 0;       // action index, or seed index when parent == kSeed
};

/// Spin-up transcript. `vectors` are the spun vectors in creation order (not
/// echelonized); together they form a basis of the spun space.
struct SpinTranscript {
  Matrix vectors;
  std::vector<SpinStep> steps;
  std::size_t dim() const { return steps.size(); }
};

/// Breadth-first spin of the seeds in order; a seed is only used when it is
/// not already in the span. Stops early once `limit` vectors exist.
SpinTranscript spin_transcript(const Matrix& seeds, std::span<const Matrix> action,
                               std::size_t limit = static_cast<std::size_t>(-1));

/// Rerun a transcript with other seed images and other action matrices (of a
/// possibly different size). Returns the replayed vectors.
Matrix replay(const std::vector<SpinStep>& steps, const Matrix& seed_images, std::span<const Matrix> action);

}  // namespace modrep
