#include "doctest.h"
#include "test_util.hpp"

#include <Eigen/LU>
#include <cmath>

using namespace linrel;
using linrel::test::cols;
using linrel::test::mat;
using linrel::test::span;

namespace {

LinearRelation partial(const Matrix& a, std::initializer_list<std::initializer_list<double>> dom) {
  return from_operator(OperatorSpec{a, span(dom)});
}

// Adjoint straight from the inner-product description:
// (k', h') ∈ S*  iff  <k, k'> = <h, h'> for every (h, k) ∈ S.
LinearRelation adjoint_by_inner_products(const LinearRelation& s) {
  const Index h = s.h_dim();
  const Index k = s.k_dim();
  Matrix conditions(s.dim(), k + h);
  conditions << s.k_block().adjoint(), -s.h_block().adjoint();
  Matrix basis;
  if (s.dim() == 0) {
    basis = Matrix::Identity(k + h, k + h);
  } else {
    Eigen::FullPivLU<Matrix> lu(conditions);
    basis = lu.kernel();
    if (lu.rank() == k + h) basis = Matrix(k + h, 0);
  }
  return from_spanners(k, h, basis);
}

LinearRelation random_relation(test::TestRng& rng, Index h, Index k, Index d, bool cplx) {
  return from_spanners(h, k, rng.gaussian(h + k, d, cplx));
}

LinearRelation random_partial(test::TestRng& rng, Index h, Index k, Index d, bool cplx) {
  return from_operator(OperatorSpec{rng.gaussian(k, h, cplx), orthonormal_basis(rng.gaussian(h, d, cplx))});
}

}  // namespace

TEST_SUITE("relation") {

TEST_CASE("from_operator examples") {
  const LinearRelation id = from_matrix(Matrix::Identity(2, 2));
  CHECK(equals(id.graph(), span({{1, 0, 1, 0}, {0, 1, 0, 1}})).verdict);

  const LinearRelation nil = from_matrix(mat({{0, 1}, {0, 0}}));
  CHECK(equals(nil.graph(), span({{1, 0, 0, 0}, {0, 1, 1, 0}})).verdict);

  const LinearRelation empty = from_operator(OperatorSpec{mat({{3, 1}, {2, 5}}), Subspace::zero(2)});
  CHECK(empty.dim() == 0);
  CHECK_THROWS_AS(from_operator(OperatorSpec{Matrix::Identity(2, 2), Subspace::zero(3)}), DimensionError);
}

TEST_CASE("from_spanners examples") {
  const LinearRelation pure = from_spanners(2, 2, cols({{0, 0, 1, 0}}));
  CHECK(equals(multivalued_part(pure), span({{1, 0}})).verdict);
  CHECK_FALSE(is_operator(pure).verdict);

  CHECK(from_spanners(2, 3, Matrix(5, 0)).dim() == 0);

  // (0,k) = a(e1,e1) + b(e1,e2) forces a + b = 0, k = a(e1 - e2).
  const LinearRelation r = from_spanners(2, 2, cols({{1, 0, 1, 0}, {1, 0, 0, 1}}));
  CHECK(r.dim() == 2);
  CHECK(equals(multivalued_part(r), span({{1, -1}})).verdict);

  CHECK_THROWS_AS(from_spanners(2, 2, Matrix(3, 1)), DimensionError);
}

TEST_CASE("parts examples") {
  const RelationParts id = parts(from_matrix(Matrix::Identity(2, 2)));
  CHECK(id.dom.is_full());
  CHECK(id.ran.is_full());
  CHECK(id.ker.is_zero());
  CHECK(id.mul.is_zero());

  const RelationParts z = parts(LinearRelation::zero(2, 3));
  CHECK((z.dom.dim() + z.ran.dim() + z.ker.dim() + z.mul.dim()) == 0);

  // dom span{e1}, S e1 = e2.
  const RelationParts p = parts(partial(mat({{0, 0}, {1, 0}}), {{1, 0}}));
  CHECK(equals(p.dom, span({{1, 0}})).verdict);
  CHECK(equals(p.ran, span({{0, 1}})).verdict);
  CHECK(p.ker.is_zero());
  CHECK(p.mul.is_zero());
}

TEST_CASE("roundoff in a graph block does not count as rank") {
  // {0} x span{(1,1,0)} whose H-block carries 1e-17 noise, as an SVD leaves it.
  Matrix g = Matrix::Zero(5, 1);
  g(0, 0) = 1e-17;
  g(1, 0) = -3e-17;
  g(2, 0) = g(3, 0) = 1.0 / std::sqrt(2.0);
  const LinearRelation s = from_spanners(2, 3, g);
  CHECK(domain(s).is_zero());
  CHECK(kernel(s).is_zero());
  CHECK(multivalued_part(s).dim() == 1);
  CHECK(multivalued_part(adjoint(s)).is_full());
}

TEST_CASE("flip_v examples") {
  const LinearRelation f = flip_v(from_matrix(Matrix::Identity(3, 3)));
  CHECK(graph_equals(f, from_matrix(-Matrix::Identity(3, 3))).verdict);

  const LinearRelation z = flip_v(from_matrix(Matrix::Zero(2, 2)));
  CHECK(multivalued_part(z).is_full());

  const LinearRelation s = from_spanners(2, 2, cols({{1, 0, 2, 0}}));
  CHECK(equals(flip_v(s).graph(), span({{2, 0, -1, 0}})).verdict);

  // Applying V twice negates every pair, which preserves the graph.
  CHECK(graph_equals(flip_v(flip_v(s)), s).verdict);
}

TEST_CASE("flip_w examples") {
  const LinearRelation f = flip_w(from_matrix(Matrix::Identity(2, 2)));
  CHECK(equals(f.graph(), span({{-1, 0, 1, 0}, {0, -1, 0, 1}})).verdict);
  CHECK(flip_w(LinearRelation::zero(2, 1)).dim() == 0);
  CHECK(equals(flip_w(from_spanners(1, 1, cols({{1, 2}}))).graph(), span({{-2, 1}})).verdict);
}

TEST_CASE("adjoint examples") {
  const Matrix a = mat({{1, 2, 0}, {0, -1, 3}});
  const LinearRelation adj = adjoint(from_matrix(a));
  CHECK(adj.h_dim() == 2);
  CHECK(adj.k_dim() == 3);
  CHECK(graph_equals(adj, from_matrix(a.adjoint())).verdict);

  // H = R^2, K = R, dom S = span{e1}, S(x,0) = x. Solving <x,k'> = <(x,0),h'>
  // gives h' = (k', s) for free s.
  const LinearRelation s = partial(mat({{1, 0}}), {{1, 0}});
  const LinearRelation sa = adjoint(s);
  CHECK(equals(sa.graph(), span({{1, 1, 0}, {0, 0, 1}})).verdict);
  CHECK(is_everywhere_defined(sa).verdict);
  CHECK(equals(multivalued_part(sa), span({{0, 1}})).verdict);

  CHECK(adjoint(LinearRelation::zero(2, 3)).graph().is_full());
}

TEST_CASE("adjoint matches the inner-product oracle") {
  test::TestRng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const bool cplx = trial % 2 == 0;
    const Index h = rng.uniform(0, 4);
    const Index k = rng.uniform(0, 4);
    const LinearRelation r = random_relation(rng, h, k, rng.uniform(0, h + k), cplx);
    CHECK(graph_equals(adjoint(r), adjoint_by_inner_products(r)).verdict);
  }
}

TEST_CASE("intersect and vee") {
  const LinearRelation r = from_spanners(2, 2, cols({{1, 2, 0, 1}, {0, 1, 1, 1}}));
  CHECK(graph_equals(intersect(r, r), r).verdict);
  CHECK(graph_equals(vee(r, r), r).verdict);

  const LinearRelation id = from_matrix(Matrix::Identity(3, 3));
  CHECK(intersect(id, from_matrix(-Matrix::Identity(3, 3))).dim() == 0);

  const LinearRelation s = partial(Matrix::Identity(2, 2), {{1, 0}});
  CHECK(graph_equals(intersect(s, from_matrix(Matrix::Identity(2, 2))), s).verdict);
  CHECK_THROWS_AS(intersect(s, LinearRelation::zero(2, 3)), DimensionError);
}

TEST_CASE("compose examples") {
  const LinearRelation r = from_spanners(2, 2, cols({{1, 2, 0, 1}, {0, 0, 1, 1}}));
  CHECK(graph_equals(compose(from_matrix(Matrix::Identity(2, 2)), r), r).verdict);

  const Matrix a = mat({{1, 2}, {0, 1}, {3, -1}});
  const Matrix b = mat({{2, 0, 1}, {1, 1, 0}});
  CHECK(graph_equals(compose(from_matrix(b), from_matrix(a)), from_matrix(b * a)).verdict);

  // T∘S with T zero and S: e1 -> e2 on span{e1}.
  const LinearRelation ts = compose(from_matrix(Matrix::Zero(2, 2)), partial(mat({{0, 0}, {1, 0}}), {{1, 0}}));
  CHECK(equals(ts.graph(), span({{1, 0, 0, 0}})).verdict);

  CHECK_THROWS_AS(compose(from_matrix(Matrix::Zero(2, 3)), from_matrix(Matrix::Zero(2, 2))), DimensionError);
}

TEST_CASE("add_scalar, scale, inverse examples") {
  CHECK(graph_equals(add_scalar(from_matrix(Matrix::Zero(2, 2)), 1.0), from_matrix(Matrix::Identity(2, 2))).verdict);
  const LinearRelation r = from_spanners(2, 2, cols({{1, 2, 0, 1}}));
  CHECK(graph_equals(add_scalar(r, 0.0), r).verdict);
  const LinearRelation shifted = add_scalar(partial(Matrix::Identity(2, 2), {{1, 0}}), 1.0);
  CHECK(equals(shifted.graph(), span({{1, 0, 2, 0}})).verdict);
  CHECK_THROWS_AS(add_scalar(LinearRelation::zero(1, 2), 1.0), DimensionError);

  CHECK(graph_equals(scale(from_matrix(mat({{1, 2}, {3, 4}})), -1.0), from_matrix(mat({{-1, -2}, {-3, -4}}))).verdict);

  CHECK(graph_equals(inverse(from_matrix(Matrix::Identity(2, 2))), from_matrix(Matrix::Identity(2, 2))).verdict);
  CHECK(graph_equals(inverse(from_matrix(mat({{2}}))), from_matrix(mat({{0.5}}))).verdict);
  const LinearRelation inv = inverse(partial(mat({{0, 0}, {1, 0}}), {{1, 0}}));
  CHECK(equals(domain(inv), span({{0, 1}})).verdict);
  CHECK(equals(inv.graph(), span({{0, 1, 1, 0}})).verdict);
}

TEST_CASE("predicates") {
  const LinearRelation id = from_matrix(Matrix::Identity(2, 2));
  CHECK(is_operator(id).verdict);
  CHECK(is_everywhere_defined(id).verdict);
  CHECK(is_surjective(id).verdict);
  CHECK(is_symmetric(id).verdict);

  Matrix pure(4, 2);
  pure << Matrix::Zero(2, 2), Matrix::Identity(2, 2);
  CHECK_FALSE(is_operator(from_spanners(2, 2, pure)).verdict);

  CHECK(is_symmetric(from_matrix(mat({{0, 1}, {1, 0}}))).verdict);
  CHECK_FALSE(is_symmetric(from_matrix(mat({{0, 1}, {0, 0}}))).verdict);
  CHECK_THROWS_AS(is_symmetric(LinearRelation::zero(2, 3)), DimensionError);
}

TEST_CASE("pairing_defect examples") {
  const Matrix a = mat({{1, 2}, {3, 4}, {5, 6}});
  CHECK(pairing_defect(from_matrix(a), from_matrix(a.adjoint())) < 1e-12);
  // |1·1·1 - 1·2·1| = 1
  CHECK(pairing_defect(from_matrix(mat({{1}})), from_matrix(mat({{2}}))) == doctest::Approx(1.0));
  // ran S ⟂ dom T and ran T ⟂ dom S: every pairing vanishes.
  const LinearRelation s = partial(mat({{0, 0}, {1, 0}}), {{1, 0}});
  const LinearRelation t = partial(mat({{0, 0}, {0, 1}}), {{1, 0}});
  CHECK(pairing_defect(s, t) < 1e-15);

  Matrix pure(2, 1);
  pure << 0, 1;
  CHECK_THROWS_AS(pairing_defect(from_spanners(1, 1, pure), from_matrix(mat({{1}}))), PreconditionError);
}

TEST_CASE("to_matrix recovers the matrix") {
  const Matrix a = mat({{1, 2, 0}, {0, -1, 3}});
  CHECK(test::max_abs_diff(to_matrix(from_matrix(a)), a) < 1e-12);
  CHECK_THROWS_AS(to_matrix(partial(Matrix::Identity(2, 2), {{1, 0}})), PreconditionError);
}

TEST_CASE("relation calculus properties") {
  test::TestRng rng(2024);
  const TolerancePolicy tol;
  for (int trial = 0; trial < 150; ++trial) {
    const bool cplx = trial % 2 == 1;
    const Index h = rng.uniform(0, 4);
    const Index k = rng.uniform(0, 4);
    const LinearRelation r = trial % 3 == 0 ? random_partial(rng, h, k, rng.uniform(0, h), cplx)
                                            : random_relation(rng, h, k, rng.uniform(0, h + k), cplx);
    const LinearRelation ra = adjoint(r);

    CHECK(graph_equals(adjoint(ra), r).verdict);

    const LinearRelation v = flip_v(r);
    CHECK(sum(ra.graph(), v.graph()).is_full());
    CHECK(intersect(ra.graph(), v.graph()).is_zero());

    const RelationParts p = parts(r, tol);
    const RelationParts pa = parts(ra, tol);
    CHECK(equals(pa.ker, complement(p.ran)).verdict);
    CHECK(equals(pa.mul, complement(p.dom)).verdict);
    CHECK(r.dim() == p.dom.dim() + p.mul.dim());
    CHECK(r.dim() == p.ran.dim() + p.ker.dim());

    // Antitonicity with a random superset.
    const Matrix extra = rng.gaussian(h + k, 1, cplx);
    Matrix bigger(h + k, r.dim() + 1);
    bigger << r.graph().basis(), extra;
    const LinearRelation t = from_spanners(h, k, bigger);
    CHECK(graph_contains(t, r).verdict);
    CHECK(graph_contains(ra, adjoint(t)).verdict);
  }
}

TEST_CASE("adjoint of total operators is the conjugate transpose") {
  test::TestRng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix a = rng.gaussian(rng.uniform(1, 5), rng.uniform(1, 5), trial % 2 == 0);
    CHECK(graph_equals(adjoint(from_matrix(a)), from_matrix(a.adjoint())).verdict);
  }
}

TEST_CASE("composition is associative") {
  test::TestRng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const bool cplx = trial % 2 == 0;
    const Index d0 = rng.uniform(1, 4), d1 = rng.uniform(1, 4), d2 = rng.uniform(1, 4),
                d3 = rng.uniform(1, 4);
    const LinearRelation a = random_relation(rng, d0, d1, rng.uniform(0, d0 + d1), cplx);
    const LinearRelation b = trial % 2 ? random_partial(rng, d1, d2, rng.uniform(0, d1), cplx)
                                       : random_relation(rng, d1, d2, rng.uniform(0, d1 + d2), cplx);
    const LinearRelation c = random_relation(rng, d2, d3, rng.uniform(0, d2 + d3), cplx);
    CHECK(graph_equals(compose(c, compose(b, a)), compose(compose(c, b), a)).verdict);
  }
}

TEST_CASE("pairing defect vanishes on restrictions of the adjoint") {
  test::TestRng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const bool cplx = trial % 2 == 0;
    const Index h = rng.uniform(1, 5), k = rng.uniform(1, 5);
    const Matrix a = rng.gaussian(k, h, cplx);
    const LinearRelation t = from_operator(OperatorSpec{a.adjoint(), orthonormal_basis(rng.gaussian(k, rng.uniform(0, k), cplx))});
    CHECK(pairing_defect(from_matrix(a), t) <= 1e-10);
  }
}

}  // TEST_SUITE
