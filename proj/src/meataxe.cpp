#include "modrep/meataxe.hpp"

#include <algorithm>

#include "modrep/errors.hpp"

namespace modrep {

namespace {

constexpr std::uint64_t kFingerprintSeed = 0xF16E4;
constexpr std::size_t kFingerprintWords = 3;
// Null spaces are only computed for this many low-degree factors per word.
constexpr std::size_t kFactorsPerWord = 3;

std::vector<Matrix> transposes(const std::vector<Matrix>& gens) {
  std::vector<Matrix> out;
  for (const auto& g : gens) out.push_back(transpose(g));
  return out;
}

// Proper nonzero submodule of M whose annihilator is the transposed-module
// subspace w (rows).
Submodule annihilator(const Matrix& w) { return Submodule{rref(nullspace(transpose(w)))}; }

}  // namespace

WordGenerator::Recipe WordGenerator::recipe(std::size_t k, std::size_t ngens) const {
  Rng rng(seed_ ^ ((k + 1) * 0x9E3779B97F4A7C15ull));
  Recipe r;
  // later words get more terms; small fields need them to separate simples
  const std::size_t terms = 1 + rng.below(std::min<std::size_t>(3 + k / 100, 8));
  for (std::size_t t = 0; t < terms; ++t) {
    Term term;
    term.coeff = static_cast<std::size_t>(rng.next() >> 8);
    const std::size_t len = ngens == 0 ? 0 : (t == 0 ? 1 + rng.below(4) : rng.below(5));
    for (std::size_t i = 0; i < len; ++i) term.factors.push_back(rng.below(ngens));
    r.push_back(std::move(term));
  }
  return r;
}

Matrix WordGenerator::evaluate(std::size_t k, const std::vector<Matrix>& gens, const FieldPtr& field,
                               std::size_t dim) const {
  const auto r = recipe(k, gens.size());
  Matrix acc(field, dim, dim);
  for (const auto& term : r) {
    Matrix prod = term.factors.empty() ? Matrix::identity(field, dim) : gens[term.factors[0]];
    for (std::size_t i = 1; i < term.factors.size(); ++i) prod = prod * gens[term.factors[i]];
    const Elem c = static_cast<Elem>(1 + term.coeff % (field->q() - 1));
    acc = acc + (c == 1 ? prod : scaled(prod, c));
  }
  return acc;
}

NortonResult norton_test(const Representation& m, std::uint64_t seed, std::size_t budget) {
  const std::size_t n = m.dim();
  if (n == 0) throw DomainError("Norton test on the zero module");
  const WordGenerator wg(seed);
  std::vector<Matrix> gens_t;
  for (std::size_t k = 0; k < budget; ++k) {
    const Matrix w = wg.evaluate(k, m.gens(), m.field_ptr(), n);
    const auto facs = charpoly_and_factor(w);

    std::size_t best_null = n + 1;
    Poly best_f;
    Matrix best_n, best_k;
    for (std::size_t i = 0; i < facs.size() && i < kFactorsPerWord; ++i) {
      Matrix nf = evaluate(facs[i].factor, w);
      Matrix ker = nullspace(nf);
      if (ker.rows() < best_null) {
        best_null = ker.rows();
        best_f = facs[i].factor;
        best_n = std::move(nf);
        best_k = std::move(ker);
      }
      if (best_null == static_cast<std::size_t>(best_f.degree())) break;
    }

    const Matrix v = best_k.row(0);
    EchelonForm s = spin(v, m.gens());
    if (s.rank() < n) return NortonResult{Submodule{std::move(s)}, std::nullopt};

    if (gens_t.empty()) gens_t = transposes(m.gens());
    const Matrix kt = nullspace(transpose(best_n));
    const Matrix u = kt.row(0);
    EchelonForm st = spin(u, gens_t);
    if (st.rank() < n) return NortonResult{annihilator(st.matrix), std::nullopt};

    if (best_null == static_cast<std::size_t>(best_f.degree()))
      return NortonResult{std::nullopt, NortonCertificate{seed, k, best_f, best_null, v, u}};
  }
  throw ResourceError("Norton test: no verdict within " + std::to_string(budget) + " words (dimension " +
                      std::to_string(n) + ")");
}

bool replay_certificate(const Representation& m, const NortonCertificate& cert) {
  const std::size_t n = m.dim();
  const Matrix w = WordGenerator(cert.seed).evaluate(cert.word, m.gens(), m.field_ptr(), n);
  const auto facs = charpoly_and_factor(w);
  if (std::none_of(facs.begin(), facs.end(), [&](const PolyFactor& f) { return f.factor == cert.factor; }))
    return false;
  const Matrix nf = evaluate(cert.factor, w);
  if (nullspace(nf).rows() != cert.nullity || cert.nullity != static_cast<std::size_t>(cert.factor.degree()))
    return false;
  if (!(cert.witness * nf).is_zero() || !(cert.dual_witness * transpose(nf)).is_zero()) return false;
  return spin(cert.witness, m.gens()).rank() == n && spin(cert.dual_witness, transposes(m.gens())).rank() == n;
}

std::vector<std::vector<PolyFactor>> fingerprint(const Representation& s) {
  const WordGenerator wg(kFingerprintSeed);
  std::vector<std::vector<PolyFactor>> out;
  for (std::size_t k = 0; k < kFingerprintWords; ++k)
    out.push_back(charpoly_and_factor(wg.evaluate(k, s.gens(), s.field_ptr(), s.dim())));
  return out;
}

SimpleData analyse_simple(const Representation& s, const NortonCertificate& cert, std::uint64_t seed,
                          std::size_t budget) {
  const std::size_t n = s.dim();
  SimpleData d;
  d.certificate = cert;

  // Every endomorphism is determined by the image of the witness, which lies
  // in the certified null space; solve for the images that commute.
  const Matrix w = WordGenerator(cert.seed).evaluate(cert.word, s.gens(), s.field_ptr(), n);
  const Matrix ker = nullspace(evaluate(cert.factor, w));
  const SpinTranscript t0 = spin_transcript(cert.witness, s.gens());
  const Matrix b0_inv = invert(t0.vectors);
  const std::size_t ng = s.gens().size();
  Matrix resid(s.field_ptr(), ker.rows(), n * n * std::max<std::size_t>(ng, 1));
  for (std::size_t i = 0; i < ker.rows(); ++i) {
    const Matrix phi = b0_inv * replay(t0.steps, ker.row(i), s.gens());
    for (std::size_t g = 0; g < ng; ++g) {
      const Matrix r = s.gens()[g] * phi - phi * s.gens()[g];
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          const Elem v = r(a, b);
          if (v) resid.set(i, (g * n + a) * n + b, v);
        }
    }
  }
  d.endo_dim = nullspace(resid).rows();

  if (cert.nullity == d.endo_dim) {
    d.idword = IdWord{cert.seed, cert.word, cert.factor, cert.nullity};
  } else {
    const WordGenerator wg(seed);
    bool found = false;
    for (std::size_t k = 0; k < budget && !found; ++k) {
      const Matrix wk = wg.evaluate(k, s.gens(), s.field_ptr(), n);
      for (const auto& pf : charpoly_and_factor(wk)) {
        const auto deg = static_cast<std::size_t>(pf.factor.degree());
        if (d.endo_dim % deg != 0) continue;
        if (nullspace(evaluate(pf.factor, wk)).rows() == d.endo_dim) {
          d.idword = IdWord{seed, k, pf.factor, d.endo_dim};
          found = true;
          break;
        }
      }
    }
    if (!found) throw ResourceError("no identifying word within " + std::to_string(budget) + " words");
  }

  const Matrix wid = WordGenerator(d.idword.seed).evaluate(d.idword.word, s.gens(), s.field_ptr(), n);
  d.seed_vector = nullspace(evaluate(d.idword.factor, wid)).row(0);
  const SpinTranscript st = spin_transcript(d.seed_vector, s.gens());
  d.std_steps = st.steps;
  d.std_basis = st.vectors;
  d.module = change_basis(s, st.vectors).relabeled(s.label());
  // keep the certificate valid for the standard-basis module
  d.certificate.witness = cert.witness * invert(st.vectors);
  d.certificate.dual_witness = cert.dual_witness * transpose(st.vectors);
  d.fingerprint = fingerprint(s);
  return d;
}

std::optional<Matrix> isomorphism(const SimpleData& s, const Representation& t) {
  const std::size_t n = s.module.dim();
  if (t.dim() != n || t.field_ptr() != s.module.field_ptr()) return std::nullopt;
  if (fingerprint(t) != s.fingerprint) return std::nullopt;
  const Matrix w = WordGenerator(s.idword.seed).evaluate(s.idword.word, t.gens(), t.field_ptr(), n);
  const Matrix ker = nullspace(evaluate(s.idword.factor, w));
  if (ker.rows() != s.idword.nullity) return std::nullopt;
  const Matrix bt = replay(s.std_steps, ker.row(0), t.gens());
  const auto bt_inv = inverse(bt);
  if (!bt_inv) return std::nullopt;
  for (std::size_t g = 0; g < t.gens().size(); ++g)
    if (!(bt * t.gens()[g] * *bt_inv == s.module.gens()[g])) return std::nullopt;
  return bt;
}

namespace {

SimpleData certified(const Representation& s, std::uint64_t seed) {
  auto r = norton_test(s, seed);
  if (!r.certificate) throw DomainError("module is not irreducible");
  return analyse_simple(s, *r.certificate, seed);
}

}  // namespace

std::optional<Matrix> is_isomorphic(const Representation& s, const Representation& t, std::uint64_t seed) {
  require_compatible(s, t);
  const SimpleData ds = certified(s, seed);
  if (!norton_test(t, seed).certificate) throw DomainError("module is not irreducible");
  auto x = isomorphism(ds, t);
  if (!x) return std::nullopt;
  // x intertwines the standard form with t; move back to s's basis.
  return invert(ds.std_basis) * *x;
}

std::size_t endo_dim(const Representation& s, std::uint64_t seed) { return certified(s, seed).endo_dim; }

std::string simple_label(std::size_t dim, std::size_t n) {
  std::string suffix;
  ++n;
  while (n > 0) {
    --n;
    suffix.insert(suffix.begin(), static_cast<char>('a' + n % 26));
    n /= 26;
  }
  return std::to_string(dim) + suffix;
}

SimpleCatalog::SimpleCatalog(PermGroupPtr group, FieldPtr field, std::uint64_t seed)
    : group_(std::move(group)), field_(std::move(field)), seed_(seed) {
  const Representation k = trivial_module(group_, field_);
  auto r = norton_test(k, seed_);
  classify(k, *r.certificate);
}

std::optional<std::string> SimpleCatalog::find(const Representation& s,
                                               const std::vector<std::vector<PolyFactor>>& fp) const {
  for (const auto& e : entries_) {
    if (e.dim() != s.dim() || e.data.fingerprint != fp) continue;
    if (isomorphism(e.data, s)) return e.id;
  }
  return std::nullopt;
}

std::string SimpleCatalog::classify(const Representation& s, const NortonCertificate& cert) {
  if (!same_group(s.group(), *group_) || s.field_ptr() != field_)
    throw DimensionError("module does not belong to this catalog");
  std::lock_guard<std::mutex> lock(mu_);
  if (auto id = find(s, fingerprint(s))) return *id;
  SimpleData d = analyse_simple(s, cert, seed_);
  const std::string id = simple_label(s.dim(), per_dim_[s.dim()]++);
  d.module = d.module.relabeled(id);
  entries_.push_back(Entry{id, std::move(d)});
  return id;
}

const SimpleCatalog::Entry& SimpleCatalog::entry(const std::string& id) const {
  std::lock_guard<std::mutex> lock(mu_);
  for (const auto& e : entries_)
    if (e.id == id) return e;
  throw DomainError("unknown simple module " + id);
}

std::vector<SimpleCatalog::Entry> SimpleCatalog::entries() const {
  std::lock_guard<std::mutex> lock(mu_);
  return {entries_.begin(), entries_.end()};
}

std::vector<std::string> SimpleCatalog::ids() const {
  std::lock_guard<std::mutex> lock(mu_);
  std::vector<std::string> out;
  for (const auto& e : entries_) out.push_back(e.id);
  return out;
}

std::size_t SimpleCatalog::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_.size();
}

bool SimpleCatalog::is_splitting() const {
  std::lock_guard<std::mutex> lock(mu_);
  return std::all_of(entries_.begin(), entries_.end(), [](const Entry& e) { return e.data.endo_dim == 1; });
}

std::vector<std::string> SimpleCatalog::sorted_ids() const {
  std::lock_guard<std::mutex> lock(mu_);
  std::vector<std::size_t> idx(entries_.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return entries_[a].dim() < entries_[b].dim(); });
  std::vector<std::string> out;
  for (std::size_t i : idx) out.push_back(entries_[i].id);
  return out;
}

std::size_t CompositionData::multiplicity(const std::string& id) const {
  for (const auto& [k, v] : factors)
    if (k == id) return v;
  return 0;
}

std::size_t CompositionData::total_dim(const SimpleCatalog& cat) const {
  std::size_t d = 0;
  for (const auto& [k, v] : factors) d += v * cat.entry(k).dim();
  return d;
}

CompositionData chop(const Representation& m, SimpleCatalog& catalog, std::uint64_t seed, std::size_t budget) {
  std::map<std::string, std::size_t> counts;
  std::vector<Representation> work{m};
  while (!work.empty()) {
    Representation x = std::move(work.back());
    work.pop_back();
    if (x.dim() == 0) continue;
    auto r = norton_test(x, seed, budget);
    if (r.submodule) {
      work.push_back(quotient_action(x, *r.submodule));
      work.push_back(submodule_action(x, *r.submodule));
    } else {
      ++counts[catalog.classify(x, *r.certificate)];
    }
  }
  CompositionData out;
  for (const auto& id : catalog.ids()) {
    auto it = counts.find(id);
    if (it != counts.end()) out.factors.emplace_back(id, it->second);
  }
  return out;
}

}  // namespace modrep
