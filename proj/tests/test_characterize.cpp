#include "doctest.h"
#include "test_util.hpp"

#include "linrel/characterize.hpp"
#include "linrel/generate.hpp"

using namespace linrel;
using linrel::test::mat;
using linrel::test::span;

namespace {

LinearRelation op(std::initializer_list<std::initializer_list<double>> rows) {
  return from_matrix(mat(rows));
}

LinearRelation partial(const Matrix& a, std::initializer_list<std::initializer_list<double>> dom) {
  return from_operator(OperatorSpec{a, span(dom)});
}

GenConfig config(std::uint64_t seed, FieldTag field) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.field = field;
  return cfg;
}

void check_all(const CriterionReport& r, bool expected) {
  INFO(r.criterion_id);
  for (const auto& c : r.conditions) {
    INFO(c.name << ": " << c.result.trace);
    CHECK(c.result.verdict == expected);
  }
  CHECK(r.overall.verdict == expected);
}

}  // namespace

TEST_SUITE("characterize") {

TEST_CASE("oracle examples") {
  const Matrix a = mat({{1, 2, 0}, {0, -1, 4}});
  CHECK(oracle_mutually_adjoint(from_matrix(a), from_matrix(a.adjoint())).verdict);
  const LinearRelation swap = op({{0, 1}, {1, 0}});
  CHECK(oracle_mutually_adjoint(swap, swap).verdict);
  CHECK_FALSE(oracle_mutually_adjoint(op({{1}}), op({{2}})).verdict);
  CHECK_THROWS_AS(oracle_mutually_adjoint(from_matrix(a), from_matrix(a)), DimensionError);
}

TEST_CASE("oracle rejects partial and multivalued pairs") {
  // S partial: S* has a multivalued part, so it cannot equal an operator T.
  const LinearRelation s = partial(mat({{1, 0}, {0, 1}}), {{1, 0}});
  CHECK_FALSE(oracle_mutually_adjoint(s, adjoint(s)).verdict);
  const LinearRelation z = LinearRelation::zero(1, 1);
  CHECK_FALSE(oracle_mutually_adjoint(z, LinearRelation::full(1, 1)).verdict);
}

TEST_CASE("oracle consistency on total operators") {
  for (FieldTag f : {FieldTag::Real, FieldTag::Complex}) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const LinearRelation s = random_operator(config(seed, f), 1 + seed % 5, 1 + seed % 4,
                                               1 + seed % 5);
      CHECK(oracle_mutually_adjoint(s, adjoint(s)).verdict);
    }
  }
}

TEST_CASE("arens_inclusion examples") {
  const LinearRelation t = op({{1, 0}, {0, 1}});
  check_all(arens_inclusion(t, t), true);
  check_all(arens_inclusion(partial(mat({{1, 0}, {0, 1}}), {{1, 0}}), t), true);
  check_all(arens_inclusion(op({{1}}), op({{2}})), false);
  CHECK_THROWS_AS(arens_inclusion(op({{1}}), t), DimensionError);
}

TEST_CASE("arens_equality examples") {
  const LinearRelation r = random_relation(config(4, FieldTag::Complex), 3, 2, 3);
  check_all(arens_equality(r, rebase(r, config(5, FieldTag::Complex))), true);
  check_all(arens_equality(op({{1}}), op({{-1}})), false);

  const CriterionReport z = arens_equality(op({{0, 0}}), partial(mat({{0, 0}}), {{1, 0}}));
  CHECK_FALSE(z.condition("i").verdict);
  CHECK_FALSE(z.condition("ii").verdict);
  CHECK_FALSE(z.overall.verdict);
  CHECK(z.statements_agree());
}

TEST_CASE("arens_equality_under_inclusion examples") {
  const LinearRelation id = op({{1, 0}, {0, 1}});
  check_all(arens_equality_under_inclusion(partial(mat({{1, 0}, {0, 1}}), {{1, 0}}), id), false);
  check_all(arens_equality_under_inclusion(id, id), true);

  const LinearRelation zero_on_e1 = partial(mat({{0, 0}, {0, 0}}), {{1, 0}});
  const LinearRelation proj_e1 = op({{1, 0}, {0, 0}});
  CHECK_THROWS_AS(arens_equality_under_inclusion(zero_on_e1, proj_e1), PreconditionError);
}

TEST_CASE("gen_stone examples") {
  const Matrix a = mat({{2, 1}, {0, 1}});
  const CriterionReport good = gen_stone(from_matrix(a), from_matrix(a.adjoint()));
  check_all(good, true);
  CHECK(good.conclusion_verified->verdict);

  check_all(gen_stone(op({{1}}), op({{2}})), false);

  const CriterionReport zero = gen_stone(op({{0}}), op({{0}}));
  check_all(zero, false);
  CHECK(zero.conclusion_verified->verdict);  // converse fails

  CHECK_THROWS_AS(gen_stone(LinearRelation::full(1, 1), op({{1}})), PreconditionError);
}

TEST_CASE("surjective_pair examples") {
  const Matrix a = mat({{2, 1}, {0, 1}});
  const CriterionReport good = surjective_pair(from_matrix(a), from_matrix(a.adjoint()));
  check_all(good, true);
  CHECK(good.conclusion_verified->verdict);

  const LinearRelation empty = from_operator(OperatorSpec{mat({{1}}), Subspace::zero(1)});
  const CriterionReport bad = surjective_pair(empty, op({{1}}));
  CHECK_FALSE(bad.condition("ran S = K").verdict);
  CHECK_FALSE(bad.overall.verdict);

  const LinearRelation swap = op({{0, 1}, {1, 0}});
  const CriterionReport sym = surjective_pair(swap, swap);
  check_all(sym, true);
  CHECK(sym.conclusion_verified->verdict);
}

TEST_CASE("selfadjoint_via_range examples") {
  const CriterionReport diag = selfadjoint_via_range(op({{2, 0}, {0, 3}}));
  check_all(diag, true);
  CHECK(diag.conclusion_verified->verdict);

  const CriterionReport nil = selfadjoint_via_range(op({{0, 1}, {0, 0}}));
  check_all(nil, false);
  CHECK_FALSE(nil.conclusion_verified->verdict);

  const CriterionReport zero = selfadjoint_via_range(op({{0, 0}, {0, 0}}));
  check_all(zero, false);
  CHECK(zero.conclusion_verified->verdict);
}

TEST_CASE("stone_surjective_symmetric examples") {
  const CriterionReport inv = stone_surjective_symmetric(op({{2, 1}, {1, 3}}));
  check_all(inv, true);
  CHECK(inv.conclusion_verified->verdict);

  const CriterionReport zero = stone_surjective_symmetric(op({{0, 0}, {0, 0}}));
  CHECK(zero.condition("S ⊆ S*").verdict);
  CHECK_FALSE(zero.condition("ran S = H").verdict);
  CHECK(zero.conclusion_verified->verdict);

  // P A P restricted to ran P: symmetric, but ran is too small.
  const Matrix a = mat({{2, 1, 0}, {1, 3, 1}, {0, 1, 4}});
  const Matrix p = mat({{1, 0, 0}, {0, 1, 0}, {0, 0, 0}});
  const LinearRelation s = from_operator(OperatorSpec{p * a * p, span({{1, 0, 0}, {0, 1, 0}})});
  const CriterionReport r = stone_surjective_symmetric(s);
  CHECK(r.condition("S ⊆ S*").verdict);
  CHECK_FALSE(r.condition("ran S = H").verdict);
  CHECK_FALSE(r.overall.verdict);
}

TEST_CASE("adjoint_identification examples") {
  const Matrix a = mat({{1, 2}, {3, 4}, {0, 1}});
  const CriterionReport good = adjoint_identification(from_matrix(a.adjoint()), from_matrix(a));
  CHECK(good.statement("i").verdict);
  CHECK(good.statement("ii").verdict);

  const CriterionReport bad = adjoint_identification(op({{1}}), op({{2}}));
  CHECK(bad.condition("ii.a").verdict);
  CHECK_FALSE(bad.condition("ii.b").verdict);
  CHECK_FALSE(bad.statement("i").verdict);
  CHECK(bad.statements_agree());

  const LinearRelation z = op({{0, 0}, {0, 0}});
  const CriterionReport zero = adjoint_identification(z, z);
  CHECK(zero.condition("ii.a").verdict);
  CHECK(zero.condition("ii.b").verdict);
  CHECK(zero.statement("i").verdict);
}

TEST_CASE("von_neumann_ranges examples") {
  const Matrix a = mat({{1, 2}, {3, 4}, {0, 1}});
  const CriterionReport good = von_neumann_ranges(from_matrix(a), from_matrix(a.adjoint()));
  check_all(good, true);
  CHECK(good.statement("i").verdict);

  // S: e1 -> e2 on span{e1}; T = 0 on R^2.
  const LinearRelation s = partial(mat({{0, 0}, {1, 0}}), {{1, 0}});
  const LinearRelation t = op({{0, 0}, {0, 0}});
  const LinearRelation s0 = intersect(s, adjoint(t));
  const LinearRelation t0 = intersect(t, adjoint(s));
  CHECK(s0.dim() == 0);
  CHECK(range(add_scalar(compose(t0, s0), 1.0)).is_zero());
  const CriterionReport bad = von_neumann_ranges(s, t);
  CHECK_FALSE(bad.condition("ran(I+T0S0) = H").verdict);
  CHECK_FALSE(bad.statement("i").verdict);

  const CriterionReport scalars = von_neumann_ranges(op({{1}}), op({{2}}));
  CHECK_FALSE(scalars.condition("ran(I+T0S0) = H").verdict);
  CHECK_FALSE(scalars.statement("i").verdict);

  CHECK_THROWS_AS(von_neumann_ranges(op({{1, 0}}), op({{1, 0}})), DimensionError);
}

TEST_CASE("closedness_via_ranges examples") {
  check_all(closedness_via_ranges(op({{0, 1}, {0, 0}})), true);
  check_all(closedness_via_ranges(op({{0, 0}, {0, 0}})), true);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const LinearRelation s = random_operator(config(seed, FieldTag::Complex), 1 + seed % 4,
                                             1 + seed % 3, 1 + seed % 4);
    check_all(closedness_via_ranges(s), true);
  }
  CHECK_THROWS_AS(closedness_via_ranges(partial(mat({{1, 0}}), {{1, 0}})), PreconditionError);
}

TEST_CASE("symmetric_adjoint_characterization examples") {
  const CriterionReport sym = symmetric_adjoint_characterization(op({{2, 1}, {1, -1}}));
  CHECK(sym.statement("i").verdict);
  CHECK(sym.statement("ii").verdict);

  const CriterionReport nil = symmetric_adjoint_characterization(op({{0, 1}, {0, 0}}));
  CHECK(nil.condition("ii.a").verdict);
  CHECK_FALSE(nil.condition("ii.b").verdict);
  CHECK_FALSE(nil.statement("i").verdict);

  const CriterionReport zero = symmetric_adjoint_characterization(op({{0, 0}, {0, 0}}));
  CHECK(zero.statement("i").verdict);
  CHECK(zero.statement("ii").verdict);

  CHECK_THROWS_AS(symmetric_adjoint_characterization(op({{1, 0}})), DimensionError);
}

TEST_CASE("report accessors") {
  const CriterionReport r = arens_inclusion(op({{1}}), op({{1}}));
  CHECK_THROWS_AS(r.condition("iv"), std::out_of_range);
  CHECK(r.decisive(TolerancePolicy{}));
}

TEST_CASE("equivalences agree on generated instances") {
  const TolerancePolicy tol;
  int decided = 0;
  for (FieldTag f : {FieldTag::Real, FieldTag::Complex}) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      const GenConfig cfg = config(seed, f);
      const Index h = 1 + seed % 3;
      const Index k = 1 + (seed / 3) % 3;
      const LinearRelation big = random_relation(cfg, h, k, 1 + seed % (h + k));
      const LinearRelation small = random_subrelation(big, cfg.child(1), big.dim() / 2);
      const LinearRelation other = random_relation(cfg.child(2), h, k, big.dim());

      for (const CriterionReport& r :
           {arens_inclusion(small, big), arens_inclusion(other, big),
            arens_equality(big, rebase(big, cfg.child(3))), arens_equality(small, big),
            arens_equality_under_inclusion(small, big)}) {
        if (!r.decisive(tol)) continue;
        ++decided;
        INFO(r.criterion_id << " seed " << seed);
        CHECK(r.statements_agree());
      }

      const AdjointPair p = random_adjoint_pair(cfg, h, k);
      const LinearRelation t_pert = perturb_pairing(p.s, p.t, 0.1, cfg.child(4)).t;
      const LinearRelation s_part = restrict_to_partial(p.s, cfg.child(5), h - 1);
      for (const CriterionReport& r :
           {adjoint_identification(p.t, p.s), adjoint_identification(p.s, t_pert),
            adjoint_identification(s_part, p.t), von_neumann_ranges(p.s, p.t),
            von_neumann_ranges(p.s, t_pert), von_neumann_ranges(s_part, p.t)}) {
        if (!r.decisive(tol)) continue;
        ++decided;
        INFO(r.criterion_id << " seed " << seed);
        CHECK(r.statements_agree());
      }

      const LinearRelation sym = random_symmetric(cfg, h);
      const Matrix sym_m = to_matrix(sym);
      // A real 1x1 Hermitian has no skew direction to move along.
      GenConfig pert_cfg = cfg.child(6);
      if (h == 1) pert_cfg.field = FieldTag::Complex;
      const LinearRelation sym_pert =
          from_matrix(perturb_off_class(to_matrix(sym), OperatorClass::SelfAdjoint, 0.1, pert_cfg));
      for (const CriterionReport& r :
           {symmetric_adjoint_characterization(sym), symmetric_adjoint_characterization(sym_pert),
            symmetric_adjoint_characterization(restrict_to_partial(sym, cfg.child(7), h - 1))}) {
        if (!r.decisive(tol)) continue;
        ++decided;
        INFO(r.criterion_id << " seed " << seed);
        CHECK(r.statements_agree());
      }
    }
  }
  CHECK(decided > 1500);
}

TEST_CASE("implications hold on generated instances") {
  for (FieldTag f : {FieldTag::Real, FieldTag::Complex}) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const GenConfig cfg = config(seed, f);
      const Index h = 1 + seed % 4;
      const AdjointPair square = random_adjoint_pair(cfg, h, h);
      const LinearRelation sym = random_symmetric(cfg.child(1), h);
      std::vector<CriterionReport> reports = {
          gen_stone(square.s, square.t),
          gen_stone(square.s, perturb_pairing(square.s, square.t, 0.1, cfg.child(2)).t),
          surjective_pair(square.s, square.t),
          selfadjoint_via_range(sym),
          selfadjoint_via_range(square.s),
          stone_surjective_symmetric(sym),
          stone_surjective_symmetric(restrict_to_partial(sym, cfg.child(3), h - 1)),
      };
      for (const auto& r : reports) {
        INFO(r.criterion_id << " seed " << seed);
        if (r.overall.verdict) CHECK(r.conclusion_verified->verdict);
      }
    }
  }
}

}  // TEST_SUITE
