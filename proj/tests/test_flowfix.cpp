#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "dialectic/flowfix.hpp"
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

// rel with a singleton last so that Obj(x) is the powerset of x
struct rel_fixture {
  std::vector<std::size_t> n{2, 3, 1};
  heyting_ptr H = make_rel(n);
  idx one = 2;
};

const rel_fixture& rf() {
  static rel_fixture f;
  return f;
}

std::uint64_t bits(std::size_t n) { return (std::uint64_t(1) << n) - 1; }

}  // namespace

TEST(flowfix, separator_is_the_singleton) {
  EXPECT_EQ(find_separator(rf().H->base()), idx(2));
  EXPECT_TRUE(check_separator(rf().H->base(), 2).ok());
  EXPECT_EQ(find_separator(make_rel({2, 1})->base()), idx(1));
}

TEST(flowfix, behavior_is_image_and_preimage) {
  const auto& f = rf();
  const auto& B = f.H->base();
  for (idx y = 0; y < 2; ++y)
    for (idx x = 0; x < 2; ++x)
      for (idx r = 0; r < B.hom_size(y, x); ++r) {
        auto p = behavior(*f.H, f.one, {y, x, r});
        for (std::uint64_t phi = 0; phi <= bits(f.n[y]); ++phi)
          EXPECT_EQ(p.left()(idx(phi)), oracle::rel_compose(1, f.n[y], f.n[x], phi, r));
        for (std::uint64_t psi = 0; psi <= bits(f.n[x]); ++psi)
          EXPECT_EQ(p.right()(idx(psi)), oracle::rel_right_imply(1, f.n[y], f.n[x], psi, r));
      }
  EXPECT_TRUE(all_pass(behavior_laws(*f.H, f.one)));
}

TEST(flowfix, flow_variants_match_reference) {
  const auto& f = rf();
  const auto& B = f.H->base();
  const idx y = 0, x = 1;
  const std::size_t ny = f.n[y], nx = f.n[x];
  std::mt19937_64 rng(2);
  for (int k = 0; k < 60; ++k) {
    idx s = idx(rng() % B.hom_size(y, x)), r = idx(rng() % B.hom_size(y, x));
    dialectical_system sys{{y, x, s}, {y, x, r}};
    auto yy = yinyang(*f.H, f.one, sys, flow_variant::yinyang);
    auto yg = yinyang(*f.H, f.one, sys, flow_variant::yangyin);
    auto ry = yinyang(*f.H, f.one, sys, flow_variant::reverse_yinyang);
    auto rg = yinyang(*f.H, f.one, sys, flow_variant::reverse_yangyin);
    for (std::uint64_t phi = 0; phi <= bits(nx); ++phi) {
      EXPECT_EQ(yy(idx(phi)), oracle::rel_compose(1, ny, nx, oracle::rel_right_imply(1, ny, nx, phi, r), s));
      // φ: x -> 1
      EXPECT_EQ(rg(idx(phi)), oracle::rel_left_imply(ny, nx, 1, r, oracle::rel_compose(ny, nx, 1, s, phi)));
    }
    for (std::uint64_t psi = 0; psi <= bits(ny); ++psi) {
      EXPECT_EQ(yg(idx(psi)), oracle::rel_right_imply(1, ny, nx, oracle::rel_compose(1, ny, nx, psi, s), r));
      EXPECT_EQ(ry(idx(psi)), oracle::rel_compose(ny, nx, 1, s, oracle::rel_left_imply(ny, nx, 1, r, psi)));
    }
  }
  EXPECT_THROW(yinyang(*f.H, f.one, {{0, 1, 0}, {1, 0, 0}}), type_error);
}

TEST(flowfix, kleene_fixpoints_match_reference) {
  const auto& f = rf();
  const auto& B = f.H->base();
  std::mt19937_64 rng(4);
  for (int k = 0; k < 100; ++k) {
    idx s = idx(rng() % B.hom_size(1, 1)), r = idx(rng() % B.hom_size(1, 1));
    auto F = yinyang(*f.H, f.one, {{1, 1, s}, {1, 1, r}});
    // iterate directly on sets from the empty set and from everything
    std::uint64_t lo = 0, hi = bits(3);
    for (int i = 0; i < 16; ++i) {
      lo = oracle::rel_compose(1, 3, 3, oracle::rel_right_imply(1, 3, 3, lo, r), s);
      hi = oracle::rel_compose(1, 3, 3, oracle::rel_right_imply(1, 3, 3, hi, r), s);
    }
    auto least = fixpoints(B, F, extremal::least);
    auto greatest = fixpoints(B, F, extremal::greatest);
    EXPECT_EQ(least.point, lo);
    EXPECT_EQ(greatest.point, hi);
    EXPECT_TRUE(all_pass(least.checks));
    EXPECT_TRUE(all_pass(greatest.checks));
    EXPECT_LE(least.iterations, 4u);
  }
}

TEST(flowfix, identity_system_fixes_everything) {
  const auto& f = rf();
  const auto& B = f.H->base();
  auto F = yinyang(*f.H, f.one, {B.identity(1), B.identity(1)});
  for (idx phi = 0; phi < 8; ++phi) EXPECT_EQ(F(phi), phi);
  EXPECT_EQ(fixpoints(B, F, extremal::least).point, idx(0));
  EXPECT_TRUE(all_pass(yinyang_laws(*f.H, f.one)));
}

TEST(flowfix, decomposition_over_topotypes) {
  auto H = make_rel({2, 1});
  const auto& B = H->base();
  for (const auto& V : all_topotypes(B, 0))
    for (idx s = 0; s < 16; s += 3)
      for (idx r = 0; r < 16; r += 5) EXPECT_TRUE(all_pass(flow_decompose(*H, 1, {{0, 0, s}, {0, 0, r}}, V)));
  EXPECT_THROW(flow_decompose(*H, 1, {{0, 0, 1}, {0, 0, 1}}, all_topotypes(B, 1)[0]), shape_error);
  topotype broken{0, {0, 1}};
  EXPECT_THROW(flow_decompose(*H, 1, {{0, 0, 1}, {0, 0, 1}}, broken), shape_error);
}

TEST(flowfix, transitive_closure_program) {
  auto P = parse_horn(
      "% chain\n"
      "domain n{1..3}\n"
      "pred e/2 domain n\n"
      "pred path/2 domain n\n"
      "fact e(1,2).\nfact e(2,3).\n"
      "rule path(X,Y) :- e(X,Y).\n"
      "rule path(X,Z) :- e(X,Y), path(Y,Z).\n");
  EXPECT_EQ(P.atoms.size(), 18u);
  auto R = horn_eval(P);
  std::vector<std::string> got;
  for (auto a : R.atoms) got.push_back(P.atom_name(a));
  EXPECT_EQ(got, (std::vector<std::string>{"e(1,2)", "e(2,3)", "path(1,2)", "path(1,3)", "path(2,3)"}));
  EXPECT_EQ(P.atom_index(1, {0, 2}), 9u + 2u);
}

TEST(flowfix, horn_matrices_encode_clauses) {
  auto P = parse_horn("domain d{a,b}\npred p/1 domain d\npred q/1 domain d\nfact p(a).\nrule q(X) :- p(X).\n");
  auto M = horn_matrices_of(P);
  ASSERT_EQ(M.S.rows, P.clauses.size());
  for (std::size_t c = 0; c < P.clauses.size(); ++c) {
    for (std::size_t a = 0; a < P.atoms.size(); ++a) {
      EXPECT_EQ(M.S.get(c, a), a == P.clauses[c].head);
      bool in_body = std::find(P.clauses[c].body.begin(), P.clauses[c].body.end(), a) != P.clauses[c].body.end();
      EXPECT_EQ(M.R.get(c, a), in_body);
    }
  }
  bit_vector none(M.R.words, 0);
  auto en = enabled_clauses(M.R, none);
  // only the fact has an empty body
  EXPECT_EQ(en[0] & 0b111, 0b001u);
  EXPECT_EQ(heads_of(M.S, en), heads_of(M.S, en, exec::serial));
}

TEST(flowfix, random_programs_match_naive_evaluation) {
  std::mt19937_64 rng(17);
  const std::vector<std::pair<std::string, int>> preds{{"p", 1}, {"q", 1}, {"e", 2}, {"r", 2}};
  const std::vector<std::string> vars{"X", "Y", "Z"}, vals{"1", "2", "3"};
  for (int trial = 0; trial < 60; ++trial) {
    struct lit {
      int pred;
      std::vector<std::string> args;
    };
    struct rule {
      lit head;
      std::vector<lit> body;
    };
    auto random_lit = [&](bool ground) {
      lit l{int(rng() % preds.size()), {}};
      for (int k = 0; k < preds[l.pred].second; ++k)
        l.args.push_back(ground ? vals[rng() % 3] : (rng() % 4 ? vars[rng() % 3] : vals[rng() % 3]));
      return l;
    };
    auto show = [&](const lit& l) {
      std::string s = preds[l.pred].first + "(";
      for (std::size_t k = 0; k < l.args.size(); ++k) s += (k ? "," : "") + l.args[k];
      return s + ")";
    };
    std::string text = "domain d{1..3}\n";
    for (const auto& [name, ar] : preds) text += "pred " + name + "/" + std::to_string(ar) + " domain d\n";
    std::vector<rule> rules;
    for (int k = 0; k < 3; ++k) rules.push_back({random_lit(true), {}});
    for (int k = 0; k < 4; ++k) {
      rule r{random_lit(false), {}};
      for (std::size_t b = 0; b < 1 + rng() % 2; ++b) r.body.push_back(random_lit(false));
      rules.push_back(r);
    }
    for (const auto& r : rules) {
      if (r.body.empty()) {
        text += "fact " + show(r.head) + ".\n";
        continue;
      }
      text += "rule " + show(r.head) + " :-";
      for (std::size_t b = 0; b < r.body.size(); ++b) text += (b ? ", " : " ") + show(r.body[b]);
      text += ".\n";
    }
    // substitution over every assignment of X, Y, Z
    std::set<std::string> model;
    for (bool grew = true; grew;) {
      grew = false;
      for (const auto& r : rules)
        for (int a = 0; a < 27; ++a) {
          std::map<std::string, std::string> env{{"X", vals[a % 3]}, {"Y", vals[a / 3 % 3]}, {"Z", vals[a / 9]}};
          auto inst = [&](lit l) {
            for (auto& s : l.args)
              if (env.count(s)) s = env[s];
            return show(l);
          };
          bool fire = true;
          for (const auto& b : r.body) fire = fire && model.count(inst(b));
          if (fire && model.insert(inst(r.head)).second) grew = true;
        }
    }
    auto P = parse_horn(text);
    auto R = horn_eval(P);
    std::set<std::string> got;
    for (auto a : R.atoms) got.insert(P.atom_name(a));
    EXPECT_EQ(got, model) << text;
    EXPECT_LE(R.iterations, P.atoms.size());
    EXPECT_EQ(horn_eval(P, exec::serial).atoms, R.atoms);
  }
}

TEST(flowfix, horn_parse_errors) {
  auto line_of = [](const std::string& text) {
    try {
      parse_horn(text, "p.dl");
    } catch (const parse_error& e) {
      return e.line;
    }
    return -1;
  };
  EXPECT_EQ(line_of("domain d{1..2}\npred p/1 domain d\nfact p(7).\n"), 3);
  EXPECT_EQ(line_of("domain d{1..2}\npred p/1 domain d\nfact q(1).\n"), 3);
  EXPECT_EQ(line_of("domain d{1..2}\npred p/1 domain d\nfact p(1,2).\n"), 3);
  EXPECT_EQ(line_of("domain d{1..2}\npred p/1 domain e\n"), 2);
  EXPECT_EQ(line_of("domain d{1..2}\npred p/1 domain d\nrule p(X) p(X).\n"), 3);
  EXPECT_EQ(line_of("bogus\n"), 1);
}
