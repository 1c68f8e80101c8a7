#include "modrep/spin.hpp"

#include "modrep/errors.hpp"

namespace modrep {

namespace {

void check_action(const Matrix& seeds, std::span<const Matrix> action) {
  for (const auto& g : action) {
    if (!g.is_square() || g.rows() != seeds.cols()) throw DimensionError("spin: action matrix size mismatch");
    if (g.field_ptr() != seeds.field_ptr()) throw DimensionError("spin: field mismatch");
  }
}

}  // namespace

RowSpace spin_space(const Matrix& seeds, std::span<const Matrix> action) {
  check_action(seeds, action);
  const Field& f = seeds.field();
  RowSpace space(seeds.field_ptr(), seeds.cols());
  std::vector<Word> img(seeds.stride());
  std::size_t done = 0;
  for (std::size_t s = 0; s < seeds.rows(); ++s) {
    space.add(seeds.row_data(s));
    // the basis rows of `space` span the same space as the spun vectors, so
    // closing them under the action is enough
    while (done < space.dim()) {
      for (const auto& g : action) {
        rowops::times_matrix(f, space.basis().row_data(done), g, img.data());
        space.add(img.data());
      }
      ++done;
    }
  }
  return space;
}

EchelonForm spin(const Matrix& seeds, std::span<const Matrix> action) { return spin_space(seeds, action).echelon(); }

SpinTranscript spin_transcript(const Matrix& seeds, std::span<const Matrix> action, std::size_t limit) {
  check_action(seeds, action);
  const Field& f = seeds.field();
  RowSpace space(seeds.field_ptr(), seeds.cols());
  SpinTranscript t{Matrix(seeds.field_ptr(), 0, seeds.cols()), {}};
  std::vector<Word> img(seeds.stride());
  std::size_t done = 0;
  for (std::size_t s = 0; s < seeds.rows() && t.dim() < limit; ++s) {
    if (!space.add(seeds.row_data(s))) continue;
    t.vectors.append_row(seeds.row_data(s));
    t.steps.push_back({SpinStep::kSeed, s});
    while (done < t.dim() && t.dim() < limit) {
      for (std::size_t gi = 0; gi < action.size() && t.dim() < limit; ++gi) {
        rowops::times_matrix(f, t.vectors.row_data(done), action[gi], img.data());
        if (space.add(img.data())) {
          t.vectors.append_row(img.data());
          t.steps.push_back({done, gi});
        }
      }
      ++done;
    }
  }
  return t;
}

Matrix replay(const std::vector<SpinStep>& steps, const Matrix& seed_images, std::span<const Matrix> action) {
  const Field& f = seed_images.field();
  Matrix out(seed_images.field_ptr(), steps.size(), seed_images.cols());
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const auto& st = steps[k];
    if (st.parent == SpinStep::kSeed)
      out.set_row(k, seed_images.row_data(st.index));
    else
      rowops::times_matrix(f, out.row_data(st.parent), action[st.index], out.row_data(k));
  }
  return out;
}

}  // namespace modrep
