#include <gtest/gtest.h>

#include "dialectic/biposet.hpp"
#include "dialectic/models.hpp"
#include "oracle.hpp"

using namespace dialectic;

namespace {

const finite_biposet& rel22() {
  static auto H = make_rel({2, 2});
  return H->base();
}

bool all_pass(const report& r) {
  for (const auto& c : r.checks())
    if (!c.passed()) {
      ADD_FAILURE() << c.name << ": " << (c.examples.empty() ? "" : c.examples.front());
      return false;
    }
  return true;
}

// the two element chain with composition min and unit 1
finite_biposet::builder chain_builder() {
  finite_biposet::builder b({"t"});
  b.set_homset(0, 0, {"0", "1"}, [](idx a, idx c) { return a <= c; });
  b.set_composition(0, 0, 0, [](idx s, idx r) { return std::min(s, r); });
  b.set_identity(0, 1);
  return b;
}

}  // namespace

TEST(biposet, composition_matches_relational_product) {
  const auto& B = rel22();
  for (idx s = 0; s < 16; ++s)
    for (idx r = 0; r < 16; ++r)
      EXPECT_EQ(B.compose({0, 1, s}, {1, 0, r}).elem, oracle::rel_compose(2, 2, 2, s, r));
  EXPECT_EQ(B.identity(0).elem, oracle::rel_identity(2));
}

TEST(biposet, names_and_lookup) {
  const auto& B = rel22();
  EXPECT_EQ(B.describe(B.identity(0)), "{0.0|1.1}:t0->t0");
  auto t = B.find_term(0, 1, "{0.1|1.0}");
  ASSERT_TRUE(t);
  EXPECT_EQ(t->elem, idx(0b0110));
  EXPECT_FALSE(B.find_term(0, 1, "{9.9}"));
  EXPECT_EQ(B.find_type("t1"), idx(1));
  EXPECT_FALSE(B.find_type("t7"));
}

TEST(biposet, type_mismatch_is_an_error) {
  const auto& B = rel22();
  EXPECT_THROW(B.compose({0, 1, 0}, {0, 1, 0}), type_error);
  EXPECT_THROW(B.join({0, 1, 0}, {1, 0, 0}), type_error);
}

TEST(biposet, builder_rejects_incomplete_models) {
  finite_biposet::builder b({"t"});
  b.set_homset(0, 0, {"0", "1"}, [](idx a, idx c) { return a <= c; });
  EXPECT_THROW(b.build(), model_error);
  auto c = chain_builder();
  EXPECT_THROW(c.set_identity(0, 5), model_error);
  EXPECT_NO_THROW(chain_builder().build());
}

TEST(biposet, chain_lattice_is_derived) {
  auto B = chain_builder().build();
  EXPECT_TRUE(B.has_joins());
  EXPECT_TRUE(B.has_meets());
  EXPECT_EQ(B.join({0, 0, 0}, {0, 0, 1}).elem, idx(1));
  EXPECT_TRUE(all_pass(validate_biposet(B, parse_biposet_flags("cHc"))));
}

TEST(biposet, validator_passes_default_models) {
  for (const char* d : {"bool2", "powerset:2", "rel:2,2", "trop:8", "lang:ab,2"}) {
    auto M = parse_model_descriptor(d);
    EXPECT_TRUE(all_pass(validate_biposet(M.heyting->base(), parse_biposet_flags("cHc")))) << d;
  }
}

TEST(biposet, injected_fault_is_found) {
  const auto& B = rel22();
  // {0.0}∘{0.0} = {0.0}; overwrite it with the empty relation
  auto bad = B.with_composition_cell(0, 0, 0, 1, 1, 0);
  report r = validate_biposet(bad, parse_biposet_flags("biposet"));
  EXPECT_FALSE(r.ok());
  const check* assoc = r.find("associativity");
  const check* unit = r.find("unitality");
  ASSERT_TRUE(assoc && unit);
  EXPECT_GT(assoc->violations + unit->violations + r.find("monotonicity")->violations, 0u);
  EXPECT_FALSE(assoc->examples.empty() && unit->examples.empty());
}

TEST(biposet, serial_and_parallel_validation_agree) {
  auto bad = rel22().with_composition_cell(0, 1, 0, 3, 5, 15);
  auto f = parse_biposet_flags("cHc");
  report a = validate_biposet(bad, f, exec::serial), b = validate_biposet(bad, f, exec::parallel);
  ASSERT_EQ(a.checks().size(), b.checks().size());
  for (std::size_t i = 0; i < a.checks().size(); ++i) {
    EXPECT_EQ(a.checks()[i].violations, b.checks()[i].violations);
    EXPECT_EQ(a.checks()[i].examples, b.checks()[i].examples);
  }
  EXPECT_EQ(a.text(), b.text());
}

TEST(biposet, flags_parse) {
  auto f = parse_biposet_flags("join,meet");
  EXPECT_TRUE(f.join_bisemilattice && f.meet_bisemilattice && !f.complete_heyting);
  EXPECT_TRUE(parse_biposet_flags("cHc").complete_heyting);
  EXPECT_ANY_THROW(parse_biposet_flags("nonsense"));
}

TEST(biposet, orthogonality_matches_definition) {
  const auto& B = rel22();
  const std::uint64_t id = oracle::rel_identity(2);
  for (idx r = 0; r < 16; ++r)
    for (idx s = 0; s < 16; ++s) {
      auto v = orthogonality(B, {0, 1, r}, {1, 0, s});
      bool at_target = oracle::subset(oracle::rel_compose(2, 2, 2, s, r), id);
      bool at_source = oracle::subset(oracle::rel_compose(2, 2, 2, r, s), id);
      EXPECT_EQ(v.semi_at_target, at_target);
      EXPECT_EQ(v.semi_at_source, at_source);
      EXPECT_EQ(v.orthogonal, at_target && at_source);
    }
}

TEST(biposet, orthogonality_ideal_is_down_closed) {
  const auto& B = rel22();
  for (idx r = 0; r < 16; ++r) {
    auto I = orthogonality_ideal(B, {0, 1, r});
    ASSERT_FALSE(I.empty());
    std::uint64_t top = 0;
    for (auto t : I) top |= t.elem;
    EXPECT_EQ(top, oracle::rel_negation(2, 2, r));
    for (auto t : I)
      for (idx s = 0; s < 16; ++s)
        if (oracle::subset(s, t.elem))
          EXPECT_NE(std::find(I.begin(), I.end(), term{1, 0, s}), I.end());
  }
}

TEST(biposet, functional_adjoint_is_the_converse) {
  const auto& B = rel22();
  for (idx f = 0; f < 16; ++f) {
    auto info = functional_adjoint(B, {0, 1, f});
    EXPECT_EQ(bool(info), oracle::rel_functional(2, 2, f)) << f;
    if (!info) continue;
    EXPECT_EQ(info->adjoint.elem, oracle::rel_converse(2, 2, f));
    bool bijective = f == 0b1001 || f == 0b0110;
    EXPECT_EQ(info->inverse, bijective);
  }
}

TEST(biposet, center_of_relations) {
  const auto& B = rel22();
  auto C = quasisymmetry_center(B);
  EXPECT_TRUE(all_pass(C.checks));
  for (idx r = 0; r < 16; ++r) {
    // quasisymmetric: semi-orthogonality at both ends agrees for every s
    bool q = true;
    for (idx s = 0; s < 16 && q; ++s) {
      auto v = orthogonality(B, {0, 1, r}, {1, 0, s});
      q = v.semi_at_source == v.semi_at_target;
    }
    EXPECT_EQ(C.quasisymmetric(B, {0, 1, r}), q) << r;
  }
  EXPECT_TRUE(C.quasisymmetric(B, B.identity(0)));
}

TEST(biposet, sub_biposet_keeps_closed_sets) {
  const auto& B = rel22();
  std::vector<std::vector<idx>> kept(4);
  // keep ⊥ and the identity on the diagonal homsets, ⊥ elsewhere
  for (idx y = 0; y < 2; ++y)
    for (idx x = 0; x < 2; ++x) {
      kept[y * 2 + x].push_back(0);
      if (y == x) kept[y * 2 + x].push_back(B.identity(x).elem);
    }
  auto s = sub_biposet(B, kept);
  EXPECT_EQ(s.sub.hom_size(0, 0), 2u);
  EXPECT_EQ(s.embedding[0], (std::vector<idx>{0, 9}));
  kept[0] = {0};
  EXPECT_THROW(sub_biposet(B, kept), model_error);
}

TEST(biposet, direct_inverse_image_is_adjoint) {
  const auto& B = rel22();
  for (idx f : {idx(0b1001), idx(0b0110), idx(0b0101)}) {
    auto p = direct_inverse_image(B, {0, 1, f});
    EXPECT_TRUE(p.verdict().is_adjoint);
  }
}

TEST(biposet, derived_laws_hold) {
  EXPECT_TRUE(all_pass(biposet_laws(rel22())));
  EXPECT_TRUE(all_pass(biposet_laws(make_tropical(8)->base())));
}

TEST(biposet, model_file_round_trip) {
  const char* text =
      "types t\n"
      "hom t t: 0 1\n"
      "le t t: 0<=1\n"
      "comp t t t: (0,0)->0 (0,1)->0 (1,0)->0 (1,1)->1\n"
      "id t: 1\n";
  auto B = parse_model_file(text);
  EXPECT_EQ(B.hom_size(0, 0), 2u);
  EXPECT_EQ(B.compose({0, 0, 1}, {0, 0, 1}).elem, idx(1));
  EXPECT_TRUE(all_pass(validate_biposet(B, parse_biposet_flags("join"))));
}

TEST(biposet, model_file_errors_carry_positions) {
  try {
    parse_model_file("types t\nhom t t: 0 1\ncomp t t t: (0,0)->0 (0,1)->7\n", "m.txt");
    FAIL();
  } catch (const parse_error& e) {
    EXPECT_EQ(e.line, 3);
    EXPECT_EQ(e.col, 22);
    EXPECT_NE(std::string(e.what()).find("m.txt:3:22"), std::string::npos);
  }
  EXPECT_THROW(parse_model_file("hom t t: 0\n"), parse_error);
  EXPECT_THROW(parse_model_file("types t\nhom t u: 0\n"), parse_error);
  EXPECT_ANY_THROW(parse_model_file("types t\nhom t t: 0 1\nid t: 1\n"));
}
