#include <algorithm>

#include "modrep/errors.hpp"
#include "modrep/poly.hpp"
#include "modrep/random.hpp"
#include "modrep/spin.hpp"
#include "modrep/structure.hpp"

namespace modrep {

namespace {

// The source module written in the basis of a spin transcript from seeds.
struct Frame {
  SpinTranscript t;
  Matrix tinv;
  std::vector<Matrix> conj;  // T g T^-1
};

Frame make_frame(const Representation& m, const Matrix& seeds) {
  Frame fr;
  fr.t = spin_transcript(seeds, m.gens());
  if (fr.t.dim() != m.dim()) throw DomainError("hom: seed vectors do not generate the source module");
  fr.tinv = invert(fr.t.vectors);
  for (const auto& g : m.gens()) fr.conj.push_back(fr.t.vectors * g * fr.tinv);
  return fr;
}

// All X with g_m X = X g_n such that seed s maps into the row space of
// images[s]. Seeds unused by the transcript carry no unknowns.
std::vector<Matrix> solve_hom(const Representation& m, const Frame& fr, const Representation& n,
                              const std::vector<const Matrix*>& images) {
  const FieldPtr& f = m.field_ptr();
  const std::size_t dm = m.dim(), dn = n.dim(), ng = m.gens().size();
  if (dm == 0 || dn == 0) return {};

  std::size_t k = 0;
  std::vector<std::size_t> offset(fr.t.dim(), 0);
  for (std::size_t j = 0; j < fr.t.dim(); ++j)
    if (fr.t.steps[j].parent == SpinStep::kSeed) {
      offset[j] = k;
      k += images[fr.t.steps[j].index]->rows();
    }
  if (k == 0) return {};

  // phi[j] row i = image of transcript vector j under candidate i
  std::vector<Matrix> phi(dm);
  for (std::size_t j = 0; j < dm; ++j) {
    const auto& st = fr.t.steps[j];
    if (st.parent == SpinStep::kSeed) {
      phi[j] = Matrix(f, k, dn);
      const Matrix& img = *images[st.index];
      for (std::size_t r = 0; r < img.rows(); ++r) phi[j].set_row(offset[j] + r, img.row_data(r));
    } else {
      phi[j] = phi[st.parent] * n.gens()[st.index];
    }
  }
  std::vector<Matrix> y(k, Matrix(f, dm, dn));
  for (std::size_t j = 0; j < dm; ++j)
    for (std::size_t i = 0; i < k; ++i) y[i].set_row(j, phi[j].row_data(i));
  phi.clear();

  std::vector<std::vector<bool>> is_step(dm, std::vector<bool>(ng, false));
  for (const auto& st : fr.t.steps)
    if (st.parent != SpinStep::kSeed) is_step[st.parent][st.index] = true;
  std::size_t nrel = 0;
  for (const auto& row : is_step) nrel += std::count(row.begin(), row.end(), false);

  Matrix constraints(f, k, nrel * dn);
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t col = 0;
    for (std::size_t g = 0; g < ng; ++g) {
      const Matrix r = fr.conj[g] * y[i] - y[i] * n.gens()[g];
      for (std::size_t j = 0; j < dm; ++j) {
        if (is_step[j][g]) continue;
        for (std::size_t c = 0; c < dn; ++c) {
          const Elem v = r(j, c);
          if (v) constraints.set(i, col + c, v);
        }
        col += dn;
      }
    }
  }
  const Matrix sol = nrel == 0 ? Matrix::identity(f, k) : nullspace(constraints);

  std::vector<Matrix> out;
  for (std::size_t l = 0; l < sol.rows(); ++l) {
    Matrix acc(f, dm, dn);
    for (std::size_t i = 0; i < k; ++i) {
      const Elem c = sol(l, i);
      if (c) acc = acc + (c == 1 ? y[i] : scaled(y[i], c));
    }
    out.push_back(fr.tinv * acc);
  }
  return out;
}

Multiset as_multiset(const std::vector<Peakword>& words, const std::vector<std::size_t>& counts) {
  Multiset out;
  for (std::size_t i = 0; i < words.size(); ++i)
    if (counts[i]) out.emplace_back(words[i].id, counts[i]);
  return out;
}

}  // namespace

HomBasis hom_space(const Representation& m, const Representation& n) {
  require_compatible(m, n);
  HomBasis hb{m, n, {}};
  if (m.dim() == 0 || n.dim() == 0) return hb;
  const Frame fr = make_frame(m, Matrix::identity(m.field_ptr(), m.dim()));
  const Matrix all = Matrix::identity(n.field_ptr(), n.dim());
  std::vector<const Matrix*> images(m.dim(), &all);
  hb.basis = solve_hom(m, fr, n, images);
  return hb;
}

PeakwordTable::PeakwordTable(const SimpleCatalog& catalog, std::uint64_t seed, std::size_t budget)
    : catalog_(&catalog), seed_(seed) {
  const auto entries = catalog.entries();
  const std::size_t ns = entries.size();
  std::vector<std::optional<Peakword>> found(ns);
  std::size_t missing = ns;
  const WordGenerator wg(seed);
  for (std::size_t k = 0; k < budget && missing > 0; ++k) {
    std::vector<std::vector<PolyFactor>> fac(ns);
    for (std::size_t s = 0; s < ns; ++s) {
      const auto& mod = entries[s].data.module;
      fac[s] = charpoly_and_factor(wg.evaluate(k, mod.gens(), mod.field_ptr(), mod.dim()));
    }
    for (std::size_t s = 0; s < ns; ++s) {
      if (found[s]) continue;
      const std::size_t e = entries[s].data.endo_dim;
      for (const auto& pf : fac[s]) {
        if (pf.multiplicity * static_cast<std::size_t>(pf.factor.degree()) != e) continue;
        bool peak = true;
        for (std::size_t t = 0; t < ns && peak; ++t) {
          if (t == s) continue;
          for (const auto& other : fac[t])
            if (other.factor == pf.factor) peak = false;
        }
        if (!peak) continue;
        found[s] = Peakword{entries[s].id, k, pf.factor, e};
        --missing;
        break;
      }
    }
  }
  if (missing > 0) {
    std::string ids;
    for (std::size_t s = 0; s < ns; ++s)
      if (!found[s]) ids += " " + entries[s].id;
    throw ResourceError("no peak word found within " + std::to_string(budget) + " words for:" + ids);
  }
  for (auto& w : found) words_.push_back(std::move(*w));
}

const Peakword& PeakwordTable::at(const std::string& id) const {
  for (const auto& w : words_)
    if (w.id == id) return w;
  throw DomainError("no peak word for simple " + id);
}

Matrix PeakwordTable::element(const Representation& m, const std::string& id) const {
  const auto& pw = at(id);
  return evaluate(pw.factor, WordGenerator(seed_).evaluate(pw.word, m.gens(), m.field_ptr(), m.dim()));
}

Matrix PeakwordTable::stable_kernel(const Representation& m, const std::string& id) const {
  if (m.dim() == 0) return Matrix(m.field_ptr(), 0, 0);
  Matrix a = element(m, id);
  Matrix ker = nullspace(a);
  while (ker.rows() > 0 && ker.rows() < m.dim()) {
    a = a * a;
    Matrix next = nullspace(a);
    if (next.rows() == ker.rows()) break;
    ker = std::move(next);
  }
  return rref(ker).matrix;
}

HomBasis hom_space(const Representation& m, const Representation& n, const PeakwordTable& pw) {
  require_compatible(m, n);
  HomBasis hb{m, n, {}};
  if (m.dim() == 0 || n.dim() == 0) return hb;
  Matrix seeds(m.field_ptr(), 0, m.dim());
  std::vector<Matrix> targets;
  std::vector<std::size_t> type;
  for (std::size_t s = 0; s < pw.words().size(); ++s) {
    const Matrix k = pw.stable_kernel(m, pw.words()[s].id);
    if (k.rows() == 0) continue;
    seeds.append_rows(k);
    type.insert(type.end(), k.rows(), targets.size());
    targets.push_back(pw.stable_kernel(n, pw.words()[s].id));
  }
  const Frame fr = make_frame(m, seeds);
  std::vector<const Matrix*> images;
  for (std::size_t t : type) images.push_back(&targets[t]);
  hb.basis = solve_hom(m, fr, n, images);
  return hb;
}

HeadData head(const Representation& m, const PeakwordTable& pw) {
  HeadData out{zero_submodule(m), {}};
  if (m.dim() == 0) return out;
  const auto& words = pw.words();
  std::vector<Matrix> kernels;
  Matrix seeds(m.field_ptr(), 0, m.dim());
  std::vector<std::size_t> type;
  for (std::size_t s = 0; s < words.size(); ++s) {
    kernels.push_back(pw.stable_kernel(m, words[s].id));
    seeds.append_rows(kernels.back());
    type.insert(type.end(), kernels.back().rows(), s);
  }
  const Frame fr = make_frame(m, seeds);
  std::vector<std::size_t> counts(words.size(), 0);
  Matrix maps(m.field_ptr(), m.dim(), 0);
  for (std::size_t s = 0; s < words.size(); ++s) {
    if (kernels[s].rows() == 0) continue;
    const Representation& simple = pw.catalog().entry(words[s].id).data.module;
    std::vector<Matrix> targets;
    for (const auto& w : words) targets.push_back(pw.stable_kernel(simple, w.id));
    std::vector<const Matrix*> images;
    for (std::size_t t : type) images.push_back(&targets[t]);
    const auto homs = solve_hom(m, fr, simple, images);
    counts[s] = homs.size() / words[s].endo_dim;
    for (const auto& x : homs) maps = hstack(maps, x);
  }
  out.radical = Submodule{rref(nullspace(maps))};
  out.head = as_multiset(words, counts);
  return out;
}

Submodule radical(const Representation& m, const PeakwordTable& pw) { return head(m, pw).radical; }

Submodule radical(const Representation& m, SimpleCatalog& catalog) {
  chop(m, catalog, catalog.seed());
  return radical(m, PeakwordTable(catalog, catalog.seed()));
}

SocleData socle_data(const Representation& m, const PeakwordTable& pw) {
  SocleData out{zero_submodule(m), {}};
  if (m.dim() == 0) return out;
  const auto& words = pw.words();
  std::vector<std::size_t> counts(words.size(), 0);
  RowSpace span(m.field_ptr(), m.dim());
  for (std::size_t s = 0; s < words.size(); ++s) {
    const Matrix target = pw.stable_kernel(m, words[s].id);
    if (target.rows() == 0) continue;
    const Representation& simple = pw.catalog().entry(words[s].id).data.module;
    const Matrix seed = pw.stable_kernel(simple, words[s].id).row(0);
    const Frame fr = make_frame(simple, seed);
    const auto homs = solve_hom(simple, fr, m, {&target});
    counts[s] = homs.size() / words[s].endo_dim;
    for (const auto& x : homs) span.add_rows(x);
  }
  out.socle = Submodule{span.echelon()};
  out.constituents = as_multiset(words, counts);
  return out;
}

Submodule socle(const Representation& m, const PeakwordTable& pw) { return socle_data(m, pw).socle; }

Submodule socle(const Representation& m, SimpleCatalog& catalog) {
  chop(m, catalog, catalog.seed());
  return socle(m, PeakwordTable(catalog, catalog.seed()));
}

LoewyData loewy(const Representation& m, const PeakwordTable& pw) {
  LoewyData out{m, {}, {}};
  Representation cur = m;
  Matrix basis = Matrix::identity(m.field_ptr(), m.dim());
  out.series.push_back(basis);
  if (m.dim() == 0) return out;
  while (cur.dim() > 0) {
    auto hd = head(cur, pw);
    if (hd.radical.dim() == cur.dim()) throw DomainError("loewy: module has composition factors missing from the peak word table");
    out.layers.push_back(std::move(hd.head));
    // rows of `basis` are cur's basis vectors in m's coordinates
    basis = hd.radical.basis.matrix * basis;
    out.series.push_back(rref(basis).matrix);
    cur = submodule_action(cur, hd.radical);
  }
  return out;
}

LoewyData loewy(const Representation& m, SimpleCatalog& catalog) {
  chop(m, catalog, catalog.seed());
  return loewy(m, PeakwordTable(catalog, catalog.seed()));
}

Representation heart(const Representation& p, const PeakwordTable& pw) {
  const Submodule rad = radical(p, pw);
  const Submodule soc = socle(p, pw);
  RowSpace rs(p.field_ptr(), p.dim());
  rs.add_rows(rad.basis.matrix);
  for (std::size_t r = 0; r < soc.basis.matrix.rows(); ++r)
    if (!rs.contains(soc.basis.matrix.row_data(r))) throw DomainError("heart: socle is not inside the radical");
  const Representation r = submodule_action(p, rad);
  const Submodule soc_in_rad{rref(sub_coordinates(rad, soc.basis.matrix))};
  return quotient_action(r, soc_in_rad).relabeled("heart of " + p.label());
}

std::optional<Matrix> find_isomorphism(const Representation& m, const Representation& n, const PeakwordTable& pw,
                                       std::uint64_t seed, std::size_t tries) {
  if (m.dim() != n.dim()) return std::nullopt;
  const HomBasis hb = hom_space(m, n, pw);
  if (hb.dim() == 0) return std::nullopt;
  Rng rng(seed);
  const Field& f = m.field();
  for (std::size_t t = 0; t < tries; ++t) {
    Matrix x(m.field_ptr(), m.dim(), m.dim());
    for (const auto& b : hb.basis) x = x + scaled(b, rng.element(f));
    if (inverse(x)) return x;
  }
  return std::nullopt;
}

}  // namespace modrep
