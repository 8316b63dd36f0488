#include <gtest/gtest.h>

#include "dialectic/comodal.hpp"
#include "dialectic/models.hpp"
#include "oracle.hpp"

using namespace dialectic;

namespace {

bool all_pass(const report& r) {
  bool ok = true;
  for (const auto& c : r.checks())
    if (!c.passed() && c.applicable) {
      ADD_FAILURE() << c.name << ": " << (c.examples.empty() ? "" : c.examples.front());
      ok = false;
    }
  return ok;
}

heyting_ptr rel22() {
  static auto H = make_rel({2, 2});
  return H;
}

std::uint64_t diagonal_mask(std::size_t n, std::uint64_t subset) {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (subset >> i & 1) m |= std::uint64_t(1) << (i * n + i);
  return m;
}

}  // namespace

TEST(comodal, relational_comonoids_are_coreflexives) {
  auto H = make_rel({3});
  auto L = comonoids_at(H->base(), 0);
  std::vector<idx> want;
  for (std::uint64_t s = 0; s < 8; ++s) want.push_back(idx(diagonal_mask(3, s)));
  std::sort(want.begin(), want.end());
  EXPECT_EQ(L.members, want);
  EXPECT_TRUE(L.standard);
  EXPECT_TRUE(all_pass(L.checks));
}

TEST(comodal, language_and_tropical_comonoids) {
  auto L = comonoids_at(make_language("ab", 2)->base(), 0);
  EXPECT_EQ(L.members, (std::vector<idx>{0, 1}));
  // under saturation the cap is idempotent as well
  auto T = comonoids_at(make_tropical(8)->base(), 0);
  EXPECT_EQ(T.members, (std::vector<idx>{0, 8, 9}));
}

TEST(comodal, interior_is_intersection_with_identity) {
  auto H = rel22();
  const auto& B = H->base();
  auto L = comonoids_at(B, 0);
  for (idx p = 0; p < 16; ++p)
    EXPECT_EQ(interior(B, L, {0, 0, p}).elem, p & oracle::rel_identity(2));
  EXPECT_THROW(interior(B, L, {0, 1, 0}), std::exception);
}

TEST(comodal, comonoid_laws_hold) {
  for (const char* d : {"bool2", "powerset:2", "rel:2,2", "rel:1,3", "lang:ab,2"}) {
    auto M = parse_model_descriptor(d);
    EXPECT_TRUE(all_pass(comonoid_laws(*M.heyting))) << d;
  }
}

TEST(comodal, hoare_triples_match_reference) {
  const auto& B = rel22()->base();
  for (std::uint64_t v = 0; v < 4; ++v)
    for (std::uint64_t u = 0; u < 4; ++u)
      for (idx r = 0; r < 16; ++r) {
        // {v} r {u}: every r-step out of v lands in u
        bool want = true;
        for (std::size_t i = 0; i < 2; ++i)
          for (std::size_t j = 0; j < 2; ++j)
            if ((v >> i & 1) && oracle::has(r, 2, i, j) && !(u >> j & 1)) want = false;
        hoare_triple t{{0, 0, idx(diagonal_mask(2, v))}, {0, 1, r}, {1, 1, idx(diagonal_mask(2, u))}};
        EXPECT_EQ(hoare(B, t), want);
      }
}

TEST(comodal, hoare_composition) {
  const auto& B = rel22()->base();
  hoare_triple a{{0, 0, 9}, {0, 1, 0b0110}, {1, 1, 9}};
  hoare_triple b{{1, 1, 9}, {1, 0, 0b0001}, {0, 0, 9}};
  auto c = hoare_compose(B, a, b);
  EXPECT_EQ(c.flow, B.compose(a.flow, b.flow));
  EXPECT_EQ(c.pre, a.pre);
  EXPECT_EQ(c.post, b.post);
  hoare_triple mismatched{{1, 1, 1}, {1, 0, 0b0001}, {0, 0, 9}};
  EXPECT_THROW(hoare_compose(B, a, mismatched), shape_error);
  EXPECT_TRUE(hoare(B, hoare_identity(B, {0, 0, 1})));
  EXPECT_TRUE(all_pass(hoare_laws(B)));
}

TEST(comodal, domains_match_reference) {
  const auto& B = rel22()->base();
  for (idx y = 0; y < 2; ++y)
    for (idx x = 0; x < 2; ++x)
      for (idx r = 0; r < 16; ++r) {
        auto d = domain_totalization(B, {y, x, r});
        EXPECT_EQ(d.domain.elem, oracle::rel_domain(2, 2, r));
        EXPECT_EQ(d.totalization, B.compose(d.domain, {y, x, r}));
        EXPECT_EQ(d.total, d.domain == B.identity(y));
      }
  EXPECT_TRUE(all_pass(domain_laws(B)));
}

TEST(comodal, truncated_models_break_domain_closure) {
  report r = domain_laws(make_tropical(8)->base());
  const check* c = r.find("totals closed under composition");
  ASSERT_TRUE(c);
  EXPECT_GT(c->violations, 0u);
  EXPECT_TRUE(r.find("domain of identity")->passed());
  EXPECT_TRUE(r.find("functional terms total")->passed());
}

TEST(comodal, filters_are_upward_closed) {
  const auto& B = rel22()->base();
  for (idx r = 0; r < 16; ++r) {
    auto f = filters_of(B, {0, 1, r});
    EXPECT_TRUE(all_pass(f.checks));
    std::uint64_t dom = oracle::rel_domain(2, 2, r);
    for (idx v : f.source) EXPECT_TRUE(oracle::subset(dom, v));
    std::size_t above = 0;
    for (std::uint64_t s = 0; s < 4; ++s) above += oracle::subset(dom, diagonal_mask(2, s));
    EXPECT_EQ(f.source.size(), above);
  }
}

TEST(comodal, comonoid_images_of_a_function) {
  const auto& B = rel22()->base();
  auto p = comonoid_images(B, {0, 1, 0b0101});
  EXPECT_TRUE(p.verdict().is_adjoint);
  EXPECT_THROW(comonoid_images(B, {0, 1, 0b0111}), type_error);
}

TEST(comodal, topotypes_count_topologies) {
  // the topologies on 1, 2 and 3 points
  EXPECT_EQ(all_topotypes(make_rel({1})->base(), 0).size(), 1u);
  EXPECT_EQ(all_topotypes(make_rel({2})->base(), 0).size(), 4u);
  EXPECT_EQ(all_topotypes(make_rel({3})->base(), 0).size(), 29u);
}

TEST(comodal, topotype_closure_and_literals) {
  auto H = make_rel({3});
  const auto& B = H->base();
  // {0} and {1} generate {0,1}
  auto cl = close_topotype(B, 0, {1, 16});
  EXPECT_EQ(cl.closed.members, (std::vector<idx>{0, 1, 16, 17, 273}));
  auto t = parse_topotype(B, "topo t0: {{0.0}, {0.0|1.1}}");
  EXPECT_EQ(t.members, (std::vector<idx>{0, 1, 17, 273}));
  EXPECT_THROW(parse_topotype(B, "topo t0: {{0.0}, {1.1}}"), model_error);
  EXPECT_THROW(parse_topotype(B, "topo t0: {{0.1}}"), model_error);
  EXPECT_THROW(parse_topotype(B, "topo t9: {}"), parse_error);
  EXPECT_THROW(parse_topotype(B, "topo t0: {{5.5}}"), parse_error);
  EXPECT_EQ(indiscrete(B, 0).members, (std::vector<idx>{0, 273}));
}

TEST(comodal, decomposition_round_trips) {
  const auto& B = rel22()->base();
  auto Vs = all_topotypes(B, 0), Us = all_topotypes(B, 1);
  for (const auto& V : Vs)
    for (const auto& U : Us)
      for (idx r = 0; r < 16; ++r) {
        term t{0, 1, r};
        auto R = decompose(B, t, V, U);
        EXPECT_TRUE(validate_topomatrix(B, R).ok());
        EXPECT_EQ(join_term(B, R), t);
      }
  EXPECT_THROW(decompose(B, {1, 1, 0}, Vs[0], Us[0]), shape_error);
}

TEST(comodal, a_non_coprocess_matrix_is_rejected) {
  const auto& B = rel22()->base();
  auto V = all_topotypes(B, 0).back();
  auto R = decompose(B, {0, 0, 15}, V, V);
  // put the whole relation in the ⊥ row
  R.entries[0] = {0, 0, 15};
  EXPECT_FALSE(validate_topomatrix(B, R).ok());
}

TEST(comodal, representation_laws_hold) {
  const auto& B = rel22()->base();
  std::vector<std::pair<topotype, topotype>> pairs;
  for (idx y = 0; y < 2; ++y)
    for (idx x = 0; x < 2; ++x)
      for (const auto& V : all_topotypes(B, y))
        for (const auto& U : all_topotypes(B, x)) pairs.emplace_back(V, U);
  EXPECT_TRUE(all_pass(representation_laws(B, pairs)));
}

TEST(comodal, flow_identities_hold) {
  EXPECT_TRUE(all_pass(flow_decomposition_identities(*rel22())));
  EXPECT_TRUE(all_pass(flow_decomposition_identities(*make_rel({2, 1}))));
}

TEST(comodal, subtype_order) {
  auto H = make_rel({1, 2});
  const auto& B = H->base();
  // the two points of t1 as subtypes t0 -> t1, and the identity
  term p0{0, 1, 0b01}, whole = B.identity(1);
  EXPECT_TRUE(subtype_le(B, p0, whole));
  EXPECT_FALSE(subtype_le(B, whole, p0));
}
