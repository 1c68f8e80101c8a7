#include <vector>

#include "doctest.h"
#include "modrep/errors.hpp"
#include "modrep/matrix.hpp"
#include "modrep/poly.hpp"
#include "modrep/spin.hpp"

using namespace modrep;

namespace {

using Dense = std::vector<std::vector<Elem>>;

// Unpacked reference arithmetic, independent of the packed row kernels.
Dense unpack(const Matrix& m) {
  Dense d(m.rows(), std::vector<Elem>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) d[i][j] = m(i, j);
  return d;
}

Dense naive_mul(const Field& f, const Dense& a, const Dense& b) {
  Dense c(a.size(), std::vector<Elem>(b.empty() ? 0 : b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < c[i].size(); ++j) c[i][j] = f.add(c[i][j], f.mul(a[i][k], b[k][j]));
  return c;
}

// GF(p^k) product straight from the definition: digit polynomials mod minpoly.
unsigned poly_mul_mod(unsigned a, unsigned b, unsigned p, const std::vector<unsigned>& mp) {
  const std::size_t k = mp.size() - 1;
  std::vector<unsigned> da(k), db(k), prod(2 * k, 0);
  for (std::size_t i = 0; i < k; ++i, a /= p, b /= p) {
    da[i] = a % p;
    db[i] = b % p;
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
  for (std::size_t d = 2 * k - 1; d >= k; --d) {
    const unsigned c = prod[d];
    for (std::size_t i = 0; i <= k; ++i) prod[d - k + i] = (prod[d - k + i] + p * p - c * mp[i]) % p;
  }
  unsigned v = 0, w = 1;
  for (std::size_t i = 0; i < k; ++i, w *= p) v += prod[i] * w;
  return v;
}

std::vector<FieldPtr> test_fields() {
  return {Field::get(2), Field::get(3), Field::get(2, 2), Field::get(3, 2)};
}

}  // namespace

TEST_CASE("field arithmetic examples") {
  auto f3 = Field::get(3);
  CHECK(f3->add(2, 2) == 1);
  auto f2 = Field::get(2);
  CHECK(f2->inv(1) == 1);
  auto f9 = Field::get(FieldSpec{3, 2, {1, 0, 1}});  // x^2 + 1
  const Elem x = 3;                                  // digit vector (0, 1)
  CHECK(f9->mul(x, x) == 2);
  CHECK_THROWS_AS(f9->inv(0), DomainError);
  CHECK_THROWS_AS(Field::get(FieldSpec{3, 2, {2, 0, 1}}), DomainError);  // x^2 + 2 = (x-1)(x+1)
  CHECK_THROWS_AS(Field::get(4), DomainError);
}

TEST_CASE("field tables agree with polynomial arithmetic") {
  for (const auto& f : {Field::get(2, 2), Field::get(3, 2), Field::get(2, 3), Field::get(FieldSpec{3, 2, {1, 0, 1}})}) {
    for (unsigned a = 0; a < f->q(); ++a) {
      for (unsigned b = 0; b < f->q(); ++b)
        CHECK(f->mul(static_cast<Elem>(a), static_cast<Elem>(b)) == poly_mul_mod(a, b, f->p(), f->spec().minpoly));
      if (a) CHECK(f->mul(static_cast<Elem>(a), f->inv(static_cast<Elem>(a))) == 1);
      CHECK(f->pow(f->pth_root(static_cast<Elem>(a)), f->p()) == a);
    }
  }
}

TEST_CASE("rref examples") {
  auto f3 = Field::get(3);
  auto z = rref(Matrix(f3, 3, 4));
  CHECK(z.rank() == 0);
  auto id = Matrix::identity(f3, 5);
  auto e = rref(id);
  CHECK(e.rank() == 5);
  CHECK(e.matrix == id);
  auto a = Matrix::from_rows(f3, {{1, 1, 1}, {1, 1, 1}});
  auto ea = rref(a);
  CHECK(ea.rank() == 1);
  CHECK(ea.pivots == std::vector<std::size_t>{0});
}

TEST_CASE("nullspace examples") {
  auto f2 = Field::get(2);
  CHECK(nullspace(Matrix::identity(f2, 4)).rows() == 0);
  CHECK(nullspace(Matrix(f2, 3, 5)).rows() == 3);
  auto n = nullspace(Matrix::from_rows(f2, {{1, 1}, {1, 1}}));
  REQUIRE(n.rows() == 1);
  CHECK(n == Matrix::from_rows(f2, {{1, 1}}));
}

TEST_CASE("charpoly_and_factor examples") {
  auto f2 = Field::get(2);
  auto fac = charpoly_and_factor(Matrix::identity(f2, 2));
  REQUIRE(fac.size() == 1);
  CHECK(fac[0].factor == Poly(f2, {1, 1}));
  CHECK(fac[0].multiplicity == 2);

  // companion matrix of x^2 + x + 1
  auto comp = Matrix::from_rows(f2, {{0, 1}, {1, 1}});
  fac = charpoly_and_factor(comp);
  REQUIRE(fac.size() == 1);
  CHECK(fac[0].factor == Poly(f2, {1, 1, 1}));
  CHECK(fac[0].multiplicity == 1);

  auto f3 = Field::get(3);
  auto cyc = Matrix::from_rows(f3, {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
  fac = charpoly_and_factor(cyc);
  REQUIRE(fac.size() == 1);
  CHECK(fac[0].factor == Poly::linear(f3, 1));
  CHECK(fac[0].multiplicity == 3);
}

TEST_CASE("spin examples") {
  auto f3 = Field::get(3);
  auto cyc = Matrix::from_rows(f3, {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
  std::vector<Matrix> act{cyc};
  CHECK(spin(Matrix::identity(f3, 3), act).rank() == 3);
  CHECK(spin(Matrix::from_rows(f3, {{1, 1, 1}}), act).rank() == 1);
  CHECK(spin(Matrix::from_rows(f3, {{1, 0, 0}}), act).rank() == 3);
  CHECK_THROWS_AS(spin(Matrix::from_rows(f3, {{1, 0}}), act), DimensionError);
}

TEST_CASE("kronecker examples") {
  auto f3 = Field::get(3);
  CHECK(kronecker(Matrix::identity(f3, 2), Matrix::identity(f3, 3)) == Matrix::identity(f3, 6));
  auto a = Matrix::from_rows(f3, {{1, 2}, {0, 1}});
  CHECK(kronecker(a, Matrix::identity(f3, 1)) == a);
  auto b = Matrix::from_rows(f3, {{2, 1}, {1, 1}});
  auto k = kronecker(a, b);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) CHECK(k(2 * i + r, 2 * j + c) == f3->mul(a(i, j), b(r, c)));
  CHECK_THROWS_AS(kronecker(a, Matrix::identity(Field::get(2), 2)), DimensionError);
}

TEST_CASE("algebra laws and rank-nullity on random matrices") {
  Rng rng(kReferenceSeed);
  for (const auto& f : test_fields()) {
    for (int it = 0; it < 100; ++it) {
      const std::size_t n = 1 + rng.below(9), m = 1 + rng.below(9), k = 1 + rng.below(9), l = 1 + rng.below(9);
      auto a = Matrix::random(f, n, m, rng);
      auto b = Matrix::random(f, m, k, rng);
      auto b2 = Matrix::random(f, m, k, rng);
      auto c = Matrix::random(f, k, l, rng);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + b2) == a * b + a * b2);
      CHECK(rank(a) + nullspace(a).rows() == a.rows());
      CHECK((nullspace(a) * a).is_zero());
      auto e = rref(a);
      CHECK(rref(e.matrix).matrix == e.matrix);
      CHECK(same_row_space(a, e.matrix));
      auto a2 = Matrix::random(f, n, m, rng);
      CHECK(same_row_space(a, a2) == (rref(a).matrix == rref(a2).matrix));
      // (A x B)(C x D) = AC x BD
      auto x = Matrix::random(f, 2, 3, rng), y = Matrix::random(f, 3, 2, rng);
      auto u = Matrix::random(f, 2, 2, rng), v = Matrix::random(f, 2, 3, rng);
      CHECK(kronecker(x, u) * kronecker(y, v) == kronecker(x * y, u * v));
    }
  }
}

TEST_CASE("packed kernels agree with naive reference on 50x50") {
  Rng rng(7);
  for (const auto& f : test_fields()) {
    for (int it = 0; it < 3; ++it) {
      auto a = Matrix::random(f, 50, 50, rng);
      auto b = Matrix::random(f, 50, 50, rng);
      CHECK(unpack(a * b) == naive_mul(*f, unpack(a), unpack(b)));
      auto s = a + b;
      for (std::size_t i = 0; i < 50; ++i)
        for (std::size_t j = 0; j < 50; ++j) CHECK(s(i, j) == f->add(a(i, j), b(i, j)));
    }
    // non-aligned shapes exercise the padding
    auto a = Matrix::random(f, 37, 71, rng);
    auto b = Matrix::random(f, 71, 13, rng);
    CHECK(unpack(a * b) == naive_mul(*f, unpack(a), unpack(b)));
    CHECK(transpose(transpose(a)) == a);
  }
}

TEST_CASE("inverse and charpoly factor certificates") {
  Rng rng(11);
  for (const auto& f : test_fields()) {
    for (int it = 0; it < 30; ++it) {
      const std::size_t n = 1 + rng.below(12);
      auto a = Matrix::random(f, n, n, rng);
      auto inv = inverse(a);
      if (inv) {
        CHECK((a * *inv).is_identity());
      } else {
        CHECK(rank(a) < n);
      }
      const Poly cp = charpoly(a);
      CHECK(cp.degree() == static_cast<int>(n));
      CHECK(evaluate(cp, a).is_zero());  // Cayley-Hamilton
      auto fac = factor(cp, rng);
      Poly prod = Poly::constant(f, 1);
      for (const auto& pf : fac) {
        CHECK(is_irreducible(pf.factor));
        for (unsigned m = 0; m < pf.multiplicity; ++m) prod = prod * pf.factor;
      }
      CHECK(prod == cp);
    }
  }
}

TEST_CASE("factor splits products of known irreducibles") {
  auto f2 = Field::get(2);
  Poly a(f2, {1, 1, 0, 1});     // x^3+x+1
  Poly b(f2, {1, 1, 1});        // x^2+x+1
  Poly c(f2, {1, 1});           // x+1
  auto fac = factor(a * a * b * c * c * c * Poly(f2, {1, 0, 0, 1, 1}));  // x^4+x^3+1
  REQUIRE(fac.size() == 4);
  CHECK(fac[0].factor == c);
  CHECK(fac[0].multiplicity == 3);
  CHECK(fac[1].factor == b);
  CHECK(fac[2].factor == a);
  CHECK(fac[2].multiplicity == 2);
  auto f9 = Field::get(3, 2);
  Rng rng(3);
  for (int it = 0; it < 20; ++it) {
    std::vector<Elem> cs(6);
    for (auto& x : cs) x = rng.element(*f9);
    cs.push_back(1);
    Poly p(f9, cs);
    Poly prod = Poly::constant(f9, 1);
    for (const auto& pf : factor(p, rng)) {
      CHECK(is_irreducible(pf.factor));
      for (unsigned m = 0; m < pf.multiplicity; ++m) prod = prod * pf.factor;
    }
    CHECK(prod == p);
  }
}
