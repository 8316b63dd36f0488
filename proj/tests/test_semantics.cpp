#include <gtest/gtest.h>

#include <random>

#include "dialectic/laws.hpp"
#include "dialectic/semantics.hpp"

using namespace dialectic;

namespace {

struct fixture {
  language L = three_atom_language();
  model_handle M = parse_model_descriptor("rel:2,2");
  structure_frame F = default_frame(M);
  std::vector<classical_structure> S = all_structures(L, F);
};

const fixture& fx() {
  static fixture f;
  return f;
}

// interpretation by recursion over the Boolean category tables
term ref_interpret(const classical_structure& S, const language& L, const formula& f) {
  const auto& C = *S.cat;
  switch (f->kind) {
    case op::atom: return term{S.type_map[L.atom(f->atom).source], S.type_map[L.atom(f->atom).target], S.atom_map[f->atom]};
    case op::dual: {
      term a{S.type_map[L.atom(f->atom).source], S.type_map[L.atom(f->atom).target], S.atom_map[f->atom]};
      return C.neg(a);
    }
    case op::id: return C.identity(S.type_map[f->source]);
    case op::zero: return C.zero(S.type_map[f->source], S.type_map[f->target]);
    case op::one: return C.one(S.type_map[f->source], S.type_map[f->target]);
    case op::otimes: return C.otimes(ref_interpret(S, L, f->left), ref_interpret(S, L, f->right));
    case op::nabla: return C.nabla(ref_interpret(S, L, f->left), ref_interpret(S, L, f->right));
    case op::oplus: return C.oplus(ref_interpret(S, L, f->left), ref_interpret(S, L, f->right));
    case op::triangle: return C.triangle(ref_interpret(S, L, f->left), ref_interpret(S, L, f->right));
  }
  return {};
}

}  // namespace

TEST(semantics, structures_enumerate_the_center) {
  const auto& f = fx();
  // three atoms, four central terms per homset
  EXPECT_EQ(f.S.size(), 64u);
  EXPECT_THROW(all_structures(f.L, f.F, 10), model_error);
}

TEST(semantics, interpretation_matches_reference) {
  const auto& f = fx();
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    formula g = random_formula(f.L, idx(rng() % 2), idx(rng() % 2), 4, rng);
    const auto& S = f.S[rng() % f.S.size()];
    EXPECT_EQ(interpret(S, g), ref_interpret(S, f.L, g)) << to_infix(f.L, g);
  }
}

TEST(semantics, interpretation_commutes_with_negation) {
  const auto& f = fx();
  std::mt19937_64 rng(4);
  for (int i = 0; i < 500; ++i) {
    formula g = random_formula(f.L, 0, 1, 4, rng);
    const auto& S = f.S[rng() % f.S.size()];
    EXPECT_EQ(interpret(S, negate(g)), S.cat->neg(interpret(S, g)));
  }
}

TEST(semantics, polar_and_antipolar_readings) {
  const auto& f = fx();
  std::mt19937_64 rng(6);
  for (int i = 0; i < 300; ++i) {
    sequent s = random_sequent(f.L, rng() % 4, 2, rng);
    const auto& S = f.S[rng() % f.S.size()];
    EXPECT_EQ(interpret_sequent(S, s, polarity::polar), interpret(S, tensor_product(s)));
    EXPECT_EQ(interpret_sequent(S, s, polarity::antipolar), interpret(S, tensor_sum(s)));
    // the antipolar reading of the negated vector is the negated polar one
    EXPECT_EQ(interpret_sequent(S, vector_negation(s), polarity::antipolar),
              S.cat->neg(interpret_sequent(S, s, polarity::polar)));
  }
}

TEST(semantics, validity) {
  const auto& f = fx();
  formula a = f_atom(f.L, 0);
  for (const auto& S : f.S) {
    EXPECT_TRUE(is_valid(S, entails(a, a)));
    EXPECT_TRUE(is_valid(S, orthogonal(a, negate(a))));
    EXPECT_TRUE(is_valid(S, entails(f_zero(0, 0), a)));
  }
}

TEST(semantics, unmapped_atoms_and_bad_maps) {
  const auto& f = fx();
  auto S = make_structure(f.L, f.F, {0, 0, npos});
  EXPECT_THROW(interpret(S, f_atom(f.L, 2)), model_error);
  EXPECT_NO_THROW(interpret(S, f_atom(f.L, 0)));
  EXPECT_THROW(make_structure(f.L, f.F, {0, 0, 99}), type_error);
}

TEST(semantics, soundness_of_random_derivations) {
  const auto& f = fx();
  std::mt19937_64 rng(8);
  std::vector<derivation> D;
  for (int i = 0; i < 200; ++i) D.push_back(random_derivation(f.L, 6, rng));
  report r = soundness_harness(f.L, D, f.S);
  EXPECT_TRUE(r.ok()) << r.text();
  EXPECT_TRUE(soundness_harness(f.L, D, f.S, {}, exec::serial).text() == r.text());
}

TEST(semantics, harness_rejects_unsound_rules) {
  const auto& f = fx();
  rule_table fake;
  fake["weakening"] = [](const std::vector<assertion>&, const assertion&) -> std::optional<std::string> {
    return std::nullopt;
  };
  formula a = f_atom(f.L, 0);
  report r = soundness_harness(f.L, {derivation{"weakening", {}, entails(a, f_otimes(a, a))}}, f.S, fake);
  EXPECT_FALSE(r.ok());
  report bad = soundness_harness(f.L, {derivation{"reflexivity", {}, entails(a, f_oplus(a, a))}}, f.S);
  EXPECT_FALSE(bad.find("derivations check")->passed());
}

TEST(semantics, semidecision) {
  const auto& f = fx();
  formula a = f_atom(f.L, 0), b = f_atom(f.L, 1), c = f_atom(f.L, 2);
  auto r = tautology_semidecision(f.L, entails(a, f_otimes(a, a)), {f.F});
  EXPECT_TRUE(r.refuted);
  ASSERT_TRUE(r.witness);
  EXPECT_FALSE(is_valid(*r.witness, entails(a, f_otimes(a, a))));
  auto mix = tautology_semidecision(f.L, entails(f_otimes(b, c), f_nabla(b, c)), {f.F});
  EXPECT_FALSE(mix.refuted);
  EXPECT_GT(mix.tried, 0u);
}

TEST(semantics, equivalence_modulo_structures) {
  const auto& f = fx();
  formula a = f_atom(f.L, 0);
  auto sep = [&](const formula& x, const formula& y) {
    for (const auto& S : f.S)
      if (interpret(S, x) != interpret(S, y)) return true;
    return false;
  };
  EXPECT_EQ(equal_modulo(f.L, a, f_otimes(f_id(0), a), 3, sep), equivalence::equivalent);
  EXPECT_EQ(equal_modulo(f.L, a, f_otimes(a, a), 3, sep), equivalence::inequivalent_by_model);
  // equivalent formulas are interpreted alike
  std::mt19937_64 rng(10);
  for (int i = 0; i < 40; ++i) {
    formula g = random_formula(f.L, 0, 0, 2, rng), h = random_formula(f.L, 0, 0, 2, rng);
    if (equal_modulo(f.L, g, h, 3, sep) == equivalence::equivalent)
      for (const auto& S : f.S) EXPECT_EQ(interpret(S, g), interpret(S, h));
  }
}

TEST(semantics, structure_file) {
  const auto& f = fx();
  auto S = parse_structure(f.L,
                           "model rel:2,2\ntype x -> t0\ntype y -> t1\n"
                           "atom a -> {0.1|1.0}\natom b -> {0.0|1.1}\n# c unmapped\n");
  EXPECT_EQ(S.type_map, (std::vector<idx>{0, 1}));
  EXPECT_EQ(S.atom_map[2], npos);
  formula a = f_atom(f.L, 0);
  EXPECT_TRUE(is_valid(S, entails(f_otimes(a, a), f_id(0))));
  try {
    parse_structure(f.L, "model rel:2,2\ntype x -> t0\ntype y -> t1\natom a -> {0.1}\n", "s.str");
    FAIL();
  } catch (const parse_error& e) {
    EXPECT_EQ(e.line, 4);
  }
  EXPECT_THROW(parse_structure(f.L, "model rel:2,2\ntype x -> t5\n"), parse_error);
}

TEST(semantics, non_boolean_center_is_rejected) {
  EXPECT_THROW(validated_center(make_rel({1, 2})), model_error);
}
