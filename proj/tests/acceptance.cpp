// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dialectic/calculus.hpp"
#include "dialectic/comodal.hpp"
#include "dialectic/flowfix.hpp"
#include "dialectic/heyting.hpp"
#include "dialectic/laws.hpp"
#include "dialectic/models.hpp"
#include "dialectic/semantics.hpp"
#include "oracle.hpp"

using namespace dialectic;

namespace {

struct outcome {
  bool ok = true;
  std::ostringstream detail;
  void fail(const std::string& why) {
    ok = false;
    detail << " [" << why << "]";
  }
  void need(bool cond, const std::string& why) {
    if (!cond) fail(why);
  }
};

void need_report(outcome& o, const report& r, const std::string& where) {
  for (const auto& c : r.checks())
    if (!c.passed()) {
      std::string ex = c.examples.empty() ? "" : ": " + c.examples.front();
      o.fail(where + " " + c.name + " x" + std::to_string(c.violations) + ex);
    }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// both residuations by direct enumeration of typed triples
std::uint64_t residuation_failures(const heyting_model& H, std::uint64_t& instances) {
  const finite_biposet& B = H.base();
  const idx T = idx(B.type_count());
  std::uint64_t bad = 0;
  for (idx z = 0; z < T; ++z)
    for (idx y = 0; y < T; ++y)
      for (idx x = 0; x < T; ++x) {
        // t: z->y, r: y->x, s: z->x
        for (idx s = 0; s < B.hom_size(z, x); ++s)
          for (idx r = 0; r < B.hom_size(y, x); ++r) {
            const idx q = H.right_raw(z, y, x, s, r);
            for (idx t = 0; t < B.hom_size(z, y); ++t) {
              ++instances;
              bad += B.hom(z, x).le(B.compose_raw(z, y, x, t, r), s) != B.hom(z, y).le(t, q);
            }
          }
        // r: y->x, s: x->z, t: y->z
        for (idx r = 0; r < B.hom_size(y, x); ++r)
          for (idx t = 0; t < B.hom_size(y, z); ++t) {
            const idx q = H.left_raw(y, x, z, r, t);
            for (idx s = 0; s < B.hom_size(x, z); ++s) {
              ++instances;
              bad += B.hom(y, z).le(B.compose_raw(y, x, z, r, s), t) != B.hom(x, z).le(s, q);
            }
          }
      }
  return bad;
}

outcome dialectical_axioms() {
  outcome o;
  auto t0 = std::chrono::steady_clock::now();
  std::uint64_t instances = 0;
  for (const char* d : {"rel:2,2", "trop:8", "lang:ab,2"}) {
    auto M = parse_model_descriptor(d);
    need_report(o, audit_dialectical_axioms(*M.heyting), d);
    std::uint64_t bad = residuation_failures(*M.heyting, instances);
    o.need(bad == 0, std::string(d) + " enumeration " + std::to_string(bad));
  }
  // the implications agree with reference computations
  {
    auto H = make_rel({2, 2});
    const std::vector<std::size_t> n{2, 2};
    std::uint64_t bad = 0;
    for (idx z = 0; z < 2; ++z)
      for (idx y = 0; y < 2; ++y)
        for (idx x = 0; x < 2; ++x) {
          for (idx s = 0; s < 16; ++s)
            for (idx r = 0; r < 16; ++r)
              bad += H->right_raw(z, y, x, s, r) != oracle::rel_right_imply(n[z], n[y], n[x], s, r);
          for (idx r = 0; r < 16; ++r)
            for (idx t = 0; t < 16; ++t)
              bad += H->left_raw(y, x, z, r, t) != oracle::rel_left_imply(n[y], n[x], n[z], r, t);
        }
    o.need(bad == 0, "rel implications differ from reference " + std::to_string(bad));
  }
  {
    auto H = make_tropical(8);
    oracle::tropical ref{8};
    std::uint64_t bad = 0;
    for (idx s = 0; s <= 9; ++s)
      for (idx r = 0; r <= 9; ++r) bad += H->right_raw(0, 0, 0, s, r) != ref.right_imply(s, r);
    o.need(bad == 0, "tropical implication differs from reference");
  }
  {
    auto H = make_language("ab", 2);
    oracle::languages ref("ab", 2);
    std::uint64_t bad = 0;
    for (std::uint64_t s = 0; s < ref.count(); s += 3)
      for (std::uint64_t r = 0; r < ref.count(); r += 5) {
        std::uint64_t q = 0;
        for (std::uint64_t t = 0; t < ref.count(); ++t)
          if (oracle::subset(ref.concat(t, r), s)) q |= t;
        bad += H->right_raw(0, 0, 0, idx(s), idx(r)) != q;
      }
    o.need(bad == 0, "language implication differs from reference");
  }
  const double secs = seconds_since(t0);
  o.need(secs < 30.0, "runtime over 30 s");
  o.detail << instances << " residuation instances, " << secs << " s";
  return o;
}

outcome tensor_negation() {
  outcome o;
  auto H = make_rel({2, 2});
  const finite_biposet& B = H->base();
  std::uint64_t pairs = 0, bad = 0;
  for (idx y = 0; y < 2; ++y)
    for (idx x = 0; x < 2; ++x)
      for (idx r = 0; r < 16; ++r) {
        term rt{y, x, r};
        term n = H->negation(rt);
        if (n.elem != oracle::rel_negation(2, 2, r)) ++bad;
        for (idx s = 0; s < 16; ++s) {
          ++pairs;
          term st{x, y, s};
          bad += orthogonality(B, rt, st).orthogonal != B.entails(st, n);
        }
      }
  o.need(bad == 0, std::to_string(bad) + " violations");
  for (idx x = 0; x < 2; ++x) o.need(H->negation(B.identity(x)) == B.identity(x), "¬id != id");
  for (idx y = 0; y < 2; ++y)
    for (idx x = 0; x < 2; ++x)
      o.need(H->negation(B.bottom(y, x)) == B.top(x, y), "¬⊥ != ⊤");
  term neg_top = H->negation(B.top(0, 0));
  o.need(neg_top == B.bottom(0, 0) && B.name(neg_top) == "{}", "¬⊤ not empty");
  o.detail << pairs << " opposed pairs";
  return o;
}

outcome double_negation_closure() {
  outcome o;
  std::uint64_t n = 0;
  for (const char* d : {"bool2", "powerset:2", "rel:2,2", "trop:8", "lang:ab,2", "mat:bool2:2,2"}) {
    auto M = parse_model_descriptor(d);
    const heyting_model& H = *M.heyting;
    const finite_biposet& B = H.base();
    std::uint64_t bad_closure = 0, bad_dm = 0;
    for (idx y = 0; y < B.type_count(); ++y)
      for (idx x = 0; x < B.type_count(); ++x) {
        const std::size_t k = B.hom_size(y, x);
        for (idx a = 0; a < k; ++a) {
          term at{y, x, a};
          term da = H.double_negation(at);
          bad_closure += !B.entails(at, da);
          bad_closure += H.double_negation(da) != da;
          for (idx b = 0; b < k; ++b) {
            ++n;
            term bt{y, x, b};
            if (B.entails(at, bt)) bad_closure += !B.entails(da, H.double_negation(bt));
            bad_dm += H.negation(B.join(at, bt)) != B.meet(H.negation(at), H.negation(bt));
          }
        }
      }
    o.need(bad_closure == 0, std::string(d) + " closure " + std::to_string(bad_closure));
    o.need(bad_dm == 0, std::string(d) + " demorgan " + std::to_string(bad_dm));
    report r = heyting_laws(H);
    for (const char* name : {"double negation closure", "demorgan"}) {
      const check* c = r.find(name);
      o.need(c && c->passed() && c->instances > 0, std::string(d) + " " + name);
    }
  }
  o.detail << n << " pairs over 6 models";
  return o;
}

outcome functoriality() {
  outcome o;
  std::uint64_t pairs = 0;
  for (const char* d : {"rel:2,2", "trop:8"}) {
    auto M = parse_model_descriptor(d);
    const heyting_model& H = *M.heyting;
    const finite_biposet& B = H.base();
    need_report(o, functoriality_lemma_check(H), d);
    auto C = quasisymmetry_center(B);
    const idx T = idx(B.type_count());
    std::uint64_t bad = 0;
    for (idx z = 0; z < T; ++z)
      for (idx y = 0; y < T; ++y)
        for (idx x = 0; x < T; ++x)
          for (idx s = 0; s < B.hom_size(z, y); ++s)
            for (idx r = 0; r < B.hom_size(y, x); ++r) {
              term st{z, y, s}, rt{y, x, r};
              if (!C.quasisymmetric(B, st) || !C.quasisymmetric(B, rt)) continue;
              ++pairs;
              bad += !B.entails(B.compose(H.double_negation(st), H.double_negation(rt)),
                                H.double_negation(B.compose(st, rt)));
            }
    o.need(bad == 0, std::string(d) + " " + std::to_string(bad));
  }
  o.need(pairs > 0, "no quasisymmetric pairs");
  o.detail << pairs << " quasisymmetric composable pairs";
  return o;
}

outcome center_reflection() {
  outcome o;
  std::uint64_t checks = 0;
  for (const char* d : {"bool2", "trop:8", "rel:2,2"}) {
    auto M = parse_model_descriptor(d);
    auto C = boolean_center(M.heyting);
    report r = validate_boolean_category(C.cat);
    need_report(o, r, d);
    for (const char* name : {"involution", "pole distributivity", "antipole distributivity",
                             "orthogonality-entailment", "orthogonality preserves composition", "mix"})
      o.need(r.find(name) != nullptr, std::string(d) + " missing " + name);
    checks += r.checks().size();
  }
  // round trip on the quasisymmetric center of rel:2,2
  auto C = boolean_center(make_rel({2, 2}));
  auto hc = heyting_center(C.cat);
  need_report(o, hc.checks, "heyting center");
  if (!hc.model) {
    o.fail("heyting center rejected");
  } else {
    auto back = boolean_center(hc.model);
    need_report(o, compare_boolean_categories(C.cat, back.cat), "round trip");
    o.need(back.cat.hom_size(0, 0) == 4, "round trip carrier size");
  }
  o.detail << checks << " axiom checks over 3 centers, round trip on rel:2,2";
  return o;
}

outcome soundness() {
  outcome o;
  language L = three_atom_language();
  auto M = parse_model_descriptor("rel:2,2");
  structure_frame F = default_frame(M);
  auto S = all_structures(L, F);
  std::mt19937_64 rng(20261014);
  std::vector<derivation> D;
  std::size_t deepest = 0;
  for (int i = 0; i < 1000; ++i) {
    D.push_back(random_derivation(L, 6, rng));
    deepest = std::max(deepest, D.back().depth());
  }
  o.need(deepest <= 6, "derivation deeper than 6");
  o.need(S.size() >= 3, "fewer than 3 structures");
  report r = soundness_harness(L, D, S);
  need_report(o, r, "harness");
  rule_table fake;
  fake["weakening"] = [](const std::vector<assertion>& p, const assertion& c) -> std::optional<std::string> {
    if (p.empty() && c.kind == assertion::entail && c.rhs->kind == op::otimes && same(c.rhs->left, c.lhs) &&
        same(c.rhs->right, c.lhs))
      return std::nullopt;
    return "not an instance";
  };
  formula a = f_atom(L, 0);
  derivation w{"weakening", {}, entails(a, f_otimes(a, a))};
  report neg = soundness_harness(L, {w}, S, fake);
  const check* nc = neg.find("derived assertions valid");
  o.need(nc && nc->violations > 0, "weakening not refuted");
  o.detail << D.size() << " derivations (max depth " << deepest << ") in " << S.size()
           << " structures; weakening refuted in " << (nc ? nc->violations : 0);
  return o;
}

outcome syntax_involution() {
  outcome o;
  language L = three_atom_language();
  std::mt19937_64 rng(7);
  std::uint64_t bad = 0, formulas = 0;
  for (int i = 0; i < 10000; ++i) {
    idx y = idx(rng() % 2), x = idx(rng() % 2);
    formula f = random_formula(L, y, x, 5, rng);
    ++formulas;
    bad += !same(negate(negate(f)), f);
  }
  o.need(bad == 0, "involution " + std::to_string(bad));
  std::uint64_t bad_dm = 0, seqs = 0;
  for (int i = 0; i < 1000; ++i) {
    sequent s = random_sequent(L, 1 + rng() % 4, 3, rng);
    ++seqs;
    bad_dm += !same(negate(tensor_product(s)), tensor_sum(vector_negation(s)));
  }
  o.need(bad_dm == 0, "sequent demorgan " + std::to_string(bad_dm));
  o.detail << formulas << " formulas, " << seqs << " sequents";
  return o;
}

outcome representation() {
  outcome o;
  auto H = make_rel({2, 2});
  const finite_biposet& B = H->base();
  std::vector<std::pair<topotype, topotype>> all;
  for (idx y = 0; y < 2; ++y)
    for (idx x = 0; x < 2; ++x)
      for (const auto& V : all_topotypes(B, y))
        for (const auto& U : all_topotypes(B, x)) all.emplace_back(V, U);
  std::mt19937_64 rng(3);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(24);
  report r = representation_laws(B, all);
  need_report(o, r, "laws");
  // ⋁∘# and #∘⋁ by direct comparison on every term of every chosen pair
  std::uint64_t bad = 0, terms = 0;
  for (const auto& [V, U] : all)
    for (idx e = 0; e < B.hom_size(V.type, U.type); ++e) {
      ++terms;
      term t{V.type, U.type, e};
      auto R = decompose(B, t, V, U);
      bad += join_term(B, R) != t;
      bad += decompose(B, join_term(B, R), V, U).entries != R.entries;
    }
  o.need(bad == 0, "round trips " + std::to_string(bad));
  // ι, π inverse at every topotype
  for (idx x = 0; x < 2; ++x)
    for (const auto& U : all_topotypes(B, x)) {
      auto ip = matrix_product(B, iota(B, U), pi(B, U));
      auto pi_ = matrix_product(B, pi(B, U), iota(B, U));
      o.need(ip.entries == topo_identity(B, U).entries, "ι∘π != id");
      o.need(pi_.entries == topo_identity(B, indiscrete(B, x)).entries, "π∘ι != id");
    }
  // composition on one pair, exhaustively: s: 0 -> 1, r: 1 -> 0
  auto W = all_topotypes(B, 0).back(), V = all_topotypes(B, 1).back(), U = all_topotypes(B, 0).back();
  std::uint64_t comp_bad = 0, comp_n = 0;
  for (idx s = 0; s < 16; ++s)
    for (idx q = 0; q < 16; ++q) {
      ++comp_n;
      term st{0, 1, s}, rt{1, 0, q};
      auto lhs = decompose(B, B.compose(st, rt), W, U);
      auto rhs = matrix_product(B, decompose(B, st, W, V), decompose(B, rt, V, U));
      comp_bad += lhs.entries != rhs.entries;
    }
  o.need(comp_bad == 0, "composition " + std::to_string(comp_bad));
  o.detail << all.size() << " topotype pairs, " << terms << " terms, " << comp_n << " composable pairs";
  return o;
}

// Obj(x) in rel with 1 the singleton: φ ⊆ x as a mask of length |x|
std::uint64_t ref_yinyang(std::size_t ny, std::size_t nx, std::uint64_t s, std::uint64_t r,
                          std::uint64_t phi) {
  return oracle::rel_compose(1, ny, nx, oracle::rel_right_imply(1, ny, nx, phi, r), s);
}

outcome flow_decomposition() {
  outcome o;
  auto H = make_rel({2, 1});
  const finite_biposet& B = H->base();
  auto one = find_separator(B);
  o.need(one && *one == 1, "separator is not the singleton");
  if (!one) return o;
  const std::vector<std::size_t> n{2, 1};
  std::uint64_t systems = 0, bad = 0;
  for (idx y = 0; y < 2; ++y) {
    auto Om = comonoids_at(B, y);
    topotype V = close_topotype(B, y, Om.members).closed;
    o.need(V.members.size() == (std::size_t(1) << n[y]), "topotype not all coreflexives");
    for (idx x = 0; x < 2; ++x)
      for (idx s = 0; s < B.hom_size(y, x); ++s)
        for (idx q = 0; q < B.hom_size(y, x); ++q) {
          ++systems;
          dialectical_system sys{{y, x, s}, {y, x, q}};
          report r = flow_decompose(*H, *one, sys, V);
          need_report(o, r, B.describe(sys.s));
          for (const char* name : {"join of comonoid flows is identity", "flow decomposes over the topotype"}) {
            const check* c = r.find(name);
            o.need(c && c->instances > 0, std::string("missing ") + name);
          }
          // the same identity recomputed on sets
          auto F = yinyang(*H, *one, sys);
          for (idx phi = 0; phi < B.hom_size(1, x); ++phi) {
            std::uint64_t whole = ref_yinyang(n[y], n[x], s, q, phi), parts = 0;
            for (idx v : V.members)
              parts |= ref_yinyang(n[y], n[x], oracle::rel_compose(n[y], n[y], n[x], v, s),
                                   oracle::rel_compose(n[y], n[y], n[x], v, q), phi);
            bad += F(phi) != whole;
            bad += parts != whole;
          }
        }
  }
  o.need(bad == 0, "reference flow " + std::to_string(bad));
  o.detail << systems << " parallel pairs";
  return o;
}

outcome horn() {
  outcome o;
  const std::string program =
      "domain n{1..4}\n"
      "pred e/2 domain n\n"
      "pred path/2 domain n\n"
      "fact e(1,2).\nfact e(2,3).\nfact e(3,4).\nfact e(4,1).\n"
      "rule path(X,Y) :- e(X,Y).\n"
      "rule path(X,Z) :- e(X,Y), path(Y,Z).\n";
  auto t0 = std::chrono::steady_clock::now();
  horn_program P = parse_horn(program);
  horn_result R = horn_eval(P);
  const double secs = seconds_since(t0);
  std::set<std::pair<int, int>> edges{{0, 1}, {1, 2}, {2, 3}, {3, 0}}, edge_got, path_got;
  for (auto a : R.atoms) {
    const auto& g = P.atoms[a];
    std::pair<int, int> p{int(g.args[0]), int(g.args[1])};
    (P.preds[g.pred].name == "e" ? edge_got : path_got).insert(p);
  }
  o.need(edge_got == edges, "edges");
  o.need(path_got == oracle::transitive_closure(4, edges), "closure differs from reference");
  std::vector<oracle::ground_clause> G;
  for (const auto& c : P.clauses) G.push_back({c.head, c.body});
  auto naive = oracle::least_model(G);
  o.need(std::vector<std::size_t>(naive.begin(), naive.end()) == R.atoms, "differs from naive evaluation");
  o.need(R.iterations <= P.atoms.size(), "more iterations than atoms");
  o.need(secs < 1.0, "runtime over 1 s");
  o.detail << R.atoms.size() << " atoms derived of " << P.atoms.size() << " in " << R.iterations
           << " iterations, " << secs * 1e3 << " ms";
  return o;
}

outcome domains() {
  outcome o;
  auto H = make_rel({2, 2});
  const finite_biposet& B = H->base();
  report r = domain_laws(B);
  for (const char* name : {"domain of identity", "domain of bottom", "functional terms total",
                           "totals closed under composition"}) {
    const check* c = r.find(name);
    o.need(c && c->passed() && c->instances > 0, name);
  }
  need_report(o, r, "rel:2,2");
  std::uint64_t bad = 0, terms = 0;
  auto total = [&](term t) { return domain_totalization(B, t).domain == B.identity(t.source); };
  for (idx y = 0; y < 2; ++y) {
    bad += domain_totalization(B, B.identity(y)).domain != B.identity(y);
    for (idx x = 0; x < 2; ++x) {
      bad += domain_totalization(B, B.bottom(y, x)).domain != B.bottom(y, y);
      for (idx e = 0; e < 16; ++e) {
        ++terms;
        term t{y, x, e};
        auto d = domain_totalization(B, t);
        bad += d.domain.elem != oracle::rel_domain(2, 2, e);
        if (oracle::rel_functional(2, 2, e)) bad += !total(t);
        for (idx z = 0; z < 2; ++z)
          for (idx f = 0; f < 16; ++f) {
            term u{x, z, f};
            if (total(t) && total(u)) bad += !total(B.compose(t, u));
          }
      }
    }
  }
  o.need(bad == 0, std::to_string(bad) + " violations");
  o.detail << terms << " terms";
  return o;
}

outcome tropical_spots() {
  outcome o;
  auto H = make_tropical(8);
  const finite_biposet& B = H->base();
  auto t = [](idx v) { return term{0, 0, v}; };
  o.need(H->right_imply(t(5), t(3)) == t(2), "5⟜3 != 2");
  o.need(H->right_imply(t(3), t(5)) == t(0), "3⟜5 != 0");
  o.need(H->left_imply(t(3), t(5)) == t(2), "3⊸5 != 2");
  o.need(B.identity(0) == t(0), "unit is not 0");
  for (idx a = 0; a <= 9; ++a) {
    o.need(B.compose(t(0), t(a)) == t(a) && B.compose(t(a), t(0)) == t(a), "0 not neutral");
  }
  o.detail << "5⟜3 = " << B.name(H->right_imply(t(5), t(3))) << ", 3⟜5 = " << B.name(H->right_imply(t(3), t(5)));
  return o;
}

}  // namespace

int main() {
  struct criterion {
    const char* name;
    std::function<outcome()> run;
  };
  const std::vector<criterion> all{
      {"dialectical axioms", dialectical_axioms},
      {"tensor negation", tensor_negation},
      {"double negation closure", double_negation_closure},
      {"functoriality", functoriality},
      {"center reflection", center_reflection},
      {"soundness", soundness},
      {"syntax involution", syntax_involution},
      {"representation", representation},
      {"flow decomposition", flow_decomposition},
      {"horn evaluation", horn},
      {"domains", domains},
      {"tropical spot values", tropical_spots},
  };
  int failures = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    outcome o;
    try {
      o = all[i].run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failures += !o.ok;
    std::printf("%s %2zu %s: %s\n", o.ok ? "PASS" : "FAIL", i + 1, all[i].name, o.detail.str().c_str());
  }
  return failures;
}
