#include <gtest/gtest.h>

#include "dialectic/heyting.hpp"
#include "dialectic/models.hpp"
#include "oracle.hpp"

using namespace dialectic;

namespace {

bool all_pass(const report& r) {
  bool ok = true;
  for (const auto& c : r.checks())
    if (!c.passed()) {
      ADD_FAILURE() << c.name << ": " << (c.examples.empty() ? "" : c.examples.front());
      ok = false;
    }
  return ok;
}

}  // namespace

TEST(heyting, relation_implications_match_reference) {
  auto H = make_rel({2, 1});
  const std::vector<std::size_t> n{2, 1};
  for (idx z = 0; z < 2; ++z)
    for (idx y = 0; y < 2; ++y)
      for (idx x = 0; x < 2; ++x) {
        const auto& B = H->base();
        for (idx s = 0; s < B.hom_size(z, x); ++s)
          for (idx r = 0; r < B.hom_size(y, x); ++r)
            EXPECT_EQ(H->right_raw(z, y, x, s, r), oracle::rel_right_imply(n[z], n[y], n[x], s, r));
        for (idx r = 0; r < B.hom_size(y, x); ++r)
          for (idx t = 0; t < B.hom_size(y, z); ++t)
            EXPECT_EQ(H->left_raw(y, x, z, r, t), oracle::rel_left_imply(n[y], n[x], n[z], r, t));
      }
}

TEST(heyting, sweep_and_closed_form_agree) {
  auto a = make_rel({2, 2}, exec::parallel, true);
  auto b = make_rel({2, 2}, exec::parallel, false);
  for (idx y = 0; y < 2; ++y)
    for (idx x = 0; x < 2; ++x)
      for (idx r = 0; r < 16; ++r) {
        term t{y, x, r};
        EXPECT_EQ(a->negation(t), b->negation(t));
        for (idx s = 0; s < 16; ++s) EXPECT_EQ(a->right_raw(y, y, x, s, r), b->right_raw(y, y, x, s, r));
      }
}

TEST(heyting, tropical_implication_is_truncated_subtraction) {
  auto H = make_tropical(8);
  oracle::tropical ref{8};
  for (idx s = 0; s < 10; ++s)
    for (idx r = 0; r < 10; ++r) {
      EXPECT_EQ(H->right_raw(0, 0, 0, s, r), ref.right_imply(s, r)) << s << "⟜" << r;
      EXPECT_EQ(H->left_raw(0, 0, 0, r, s), ref.right_imply(s, r));
    }
}

TEST(heyting, language_quotients_match_reference) {
  auto H = make_language("ab", 2);
  oracle::languages ref("ab", 2);
  for (std::uint64_t r = 0; r < ref.count(); r += 7)
    for (std::uint64_t t = 0; t < ref.count(); t += 3) {
      std::uint64_t left = 0, right = 0;
      for (std::uint64_t u = 0; u < ref.count(); ++u) {
        if (oracle::subset(ref.concat(r, u), t)) left |= u;
        if (oracle::subset(ref.concat(u, r), t)) right |= u;
      }
      EXPECT_EQ(H->left_raw(0, 0, 0, idx(r), idx(t)), left);
      EXPECT_EQ(H->right_raw(0, 0, 0, idx(t), idx(r)), right);
    }
}

TEST(heyting, negation_is_largest_orthogonal) {
  auto H = make_rel({2, 3});
  const std::vector<std::size_t> n{2, 3};
  for (idx y = 0; y < 2; ++y)
    for (idx x = 0; x < 2; ++x)
      for (idx r = 0; r < H->base().hom_size(y, x); ++r)
        EXPECT_EQ(H->negation_raw(y, x, r), oracle::rel_negation(n[y], n[x], r));
}

TEST(heyting, dialectical_axioms_on_default_models) {
  for (const char* d : {"bool2", "powerset:3", "rel:2,2", "rel:1,2", "trop:8", "lang:ab,2", "mat:bool2:2,2"}) {
    auto M = parse_model_descriptor(d);
    EXPECT_TRUE(all_pass(audit_dialectical_axioms(*M.heyting))) << d;
  }
}

TEST(heyting, serial_and_parallel_audits_agree) {
  auto H = make_language("ab", 2);
  EXPECT_EQ(audit_dialectical_axioms(*H, exec::serial).text(), audit_dialectical_axioms(*H, exec::parallel).text());
  EXPECT_EQ(heyting_laws(*H, exec::serial).text(), heyting_laws(*H, exec::parallel).text());
}

TEST(heyting, broken_implication_is_rejected) {
  finite_biposet::builder b({"t"});
  b.set_homset(0, 0, {"0", "1", "2"}, [](idx a, idx c) { return a <= c; });
  b.set_composition(0, 0, 0, [](idx s, idx r) { return std::min(s, r); });
  b.set_identity(0, 2);
  auto base = std::make_shared<finite_biposet>(b.build());
  heyting_model::closed_forms wrong;
  wrong.left = [](idx, idx, idx, idx, idx) { return idx(0); };
  wrong.right = [](idx, idx, idx, idx, idx) { return idx(0); };
  EXPECT_THROW(heyting_model::build(base, wrong), model_error);
  EXPECT_NO_THROW(heyting_model::build(base));
}

TEST(heyting, laws_pass_on_default_models) {
  for (const char* d : {"bool2", "powerset:2", "rel:2,2", "trop:8", "lang:ab,2"}) {
    auto M = parse_model_descriptor(d);
    EXPECT_TRUE(all_pass(heyting_laws(*M.heyting))) << d;
  }
}

TEST(heyting, negation_spot_values) {
  auto H = make_rel({2, 2});
  const auto& B = H->base();
  EXPECT_EQ(H->negation(B.identity(0)), B.identity(0));
  EXPECT_EQ(H->negation(B.bottom(0, 1)), B.top(1, 0));
  EXPECT_EQ(H->negation(B.top(0, 0)), B.bottom(0, 0));
  // ¬ of a bijection is its inverse
  EXPECT_EQ(H->negation({0, 1, 0b0110}).elem, idx(0b0110));
  auto T = make_tropical(8);
  EXPECT_EQ(T->negation({0, 0, 0}).elem, idx(0));
  EXPECT_EQ(T->negation({0, 0, 9}).elem, idx(0));
}

TEST(heyting, closed_terms_and_connectives) {
  auto H = make_rel({2, 2});
  auto closed = H->dn_closed_terms(0, 0);
  for (auto t : closed) EXPECT_TRUE(H->dn_closed(t));
  for (auto t : closed)
    for (auto u : closed) {
      auto c = classical_connectives(*H, t, u);
      EXPECT_TRUE(H->dn_closed(c.otimes));
      EXPECT_EQ(c.otimes, H->double_negation(H->compose(t, u)));
      auto b = boolean_connectives(*H, t, u);
      EXPECT_EQ(b.triangle, H->base().meet(t, u));
    }
}

TEST(heyting, functoriality_and_center) {
  for (const char* d : {"rel:2,2", "trop:8"}) {
    auto M = parse_model_descriptor(d);
    report r = functoriality_lemma_check(*M.heyting);
    EXPECT_TRUE(all_pass(r)) << d;
    EXPECT_GT(r.find("functoriality lemma")->instances, 0u);
  }
}

TEST(heyting, boolean_center_sizes) {
  EXPECT_EQ(boolean_center(make_bool2()).cat.hom_size(0, 0), 1u);
  EXPECT_EQ(boolean_center(make_tropical(8)).cat.hom_size(0, 0), 1u);
  auto r = boolean_center(make_rel({2, 2}));
  for (idx y = 0; y < 2; ++y)
    for (idx x = 0; x < 2; ++x) EXPECT_EQ(r.cat.hom_size(y, x), 4u);
  EXPECT_TRUE(all_pass(validate_boolean_category(r.cat)));
  EXPECT_TRUE(r.cat.find_term(0, 0, "{0.1|1.0}"));
  EXPECT_EQ(boolean_center(make_language("ab", 2)).cat.hom_size(0, 0), 5u);
}

TEST(heyting, center_round_trip) {
  auto c = boolean_center(make_rel({2, 2}));
  auto hc = heyting_center(c.cat);
  ASSERT_TRUE(hc.model);
  EXPECT_TRUE(all_pass(hc.checks));
  auto back = boolean_center(hc.model);
  EXPECT_TRUE(all_pass(compare_boolean_categories(c.cat, back.cat)));
}

TEST(heyting, boolean_validator_detects_tampering) {
  auto c = boolean_center(make_rel({2, 2}));
  // rebuild with the negation table of one homset scrambled
  std::vector<std::string> types{"t0", "t1"};
  std::vector<boolean_category::hom_data> homs;
  for (idx y = 0; y < 2; ++y)
    for (idx x = 0; x < 2; ++x) homs.push_back(c.cat.hom(y, x));
  std::swap(homs[0].neg[0], homs[0].neg[1]);
  std::vector<std::vector<idx>> ot(8), ns(8);
  for (idx z = 0; z < 2; ++z)
    for (idx y = 0; y < 2; ++y)
      for (idx x = 0; x < 2; ++x)
        for (idx s = 0; s < 4; ++s)
          for (idx r = 0; r < 4; ++r) {
            ot[(z * 2 + y) * 2 + x].push_back(c.cat.otimes_raw(z, y, x, s, r));
            ns[(z * 2 + y) * 2 + x].push_back(c.cat.nabla_raw(z, y, x, s, r));
          }
  boolean_category bad(types, homs, ot, ns, {c.cat.identity_raw(0), c.cat.identity_raw(1)});
  EXPECT_FALSE(validate_boolean_category(bad).ok());
  EXPECT_FALSE(compare_boolean_categories(c.cat, bad).ok());
}

TEST(heyting, pole_of_central_terms) {
  auto H = make_rel({2, 2});
  auto C = quasisymmetry_center(H->base());
  for (idx r = 0; r < 16; ++r) {
    term t{0, 0, r};
    auto p = pole(*H, t);
    if (C.quasisymmetric(H->base(), t) && H->dn_closed(t)) {
      ASSERT_TRUE(p);
      EXPECT_EQ(*p, t);
    }
  }
}
