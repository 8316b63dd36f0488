#include "dialectic/laws.hpp"

#include <algorithm>
#include <random>

#include "dialectic/flowfix.hpp"

namespace dialectic {

language three_atom_language() {
  language L;
  idx x = L.add_type("x"), y = L.add_type("y");
  L.add_atom("a", x, x);
  L.add_atom("b", x, y);
  L.add_atom("c", y, x);
  return L;
}

structure_frame default_frame(const model_handle& M, exec e) {
  const idx T = idx(M.heyting->type_count());
  return {M.descriptor, validated_center(M.heyting, e), {0, T > 1 ? idx(1) : idx(0)}};
}

namespace {

std::vector<topotype> chosen_topotypes(const finite_biposet& B, idx x, const law_options& opt) {
  std::vector<topotype> out;
  for (const auto& lit : opt.topotypes) {
    topotype t = parse_topotype(B, lit);
    if (t.type == x) out.push_back(std::move(t));
  }
  if (opt.topotypes.empty()) out = all_topotypes(B, x);
  return out;
}

idx need_separator(const finite_biposet& B, exec e) {
  auto one = find_separator(B, e);
  if (!one) throw capability_error("no separating type");
  return *one;
}

template <class T>
void thin(std::vector<T>& v, std::size_t limit, std::uint64_t seed) {
  if (v.size() <= limit) return;
  std::mt19937_64 rng(seed);
  std::shuffle(v.begin(), v.end(), rng);
  v.resize(limit);
}

report center_reflection(const model_handle& M, const law_options& opt) {
  report rep;
  auto c = boolean_center(M.heyting, opt.mode);
  rep.merge(validate_boolean_category(c.cat, opt.mode), "center: ");
  auto hc = heyting_center(c.cat, opt.mode);
  rep.merge(hc.checks, "heyting center: ");
  auto& round = rep.add("round trip through the heyting center");
  round.instances = 1;
  if (!hc.model) {
    round.violations = 1;
    round.examples.push_back("heyting center is not a Heyting model");
    return rep;
  }
  auto back = boolean_center(hc.model, opt.mode);
  report cmp = compare_boolean_categories(c.cat, back.cat);
  if (!cmp.ok()) {
    round.violations = 1;
    for (const auto& k : cmp.checks())
      for (const auto& ex : k.examples)
        if (round.examples.size() < 8) round.examples.push_back(k.name + ": " + ex);
  }
  return rep;
}

report flow_decomposition_fact(const model_handle& M, const law_options& opt) {
  const heyting_model& H = *M.heyting;
  const finite_biposet& B = H.base();
  const idx one = need_separator(B, opt.mode);
  report rep;
  check unity{"join of comonoid flows is identity"}, dec{"flow decomposes over the topotype"};
  std::uint64_t pairs_seen = 0, pairs_total = 0;
  for (idx y = 0; y < B.type_count(); ++y) {
    std::vector<topotype> Vs;
    if (opt.topotypes.empty())
      Vs = {close_topotype(B, y, comonoids_at(B, y, opt.mode).members).closed};
    else
      Vs = chosen_topotypes(B, y, opt);
    for (const auto& V : Vs)
      for (idx x = 0; x < B.type_count(); ++x) {
        const std::uint64_t n = B.hom_size(y, x), N = n * n;
        const std::uint64_t budget = 4096;
        pairs_total += N;
        for (std::uint64_t k = 0; k < std::min(N, budget); ++k) {
          std::uint64_t i = N <= budget ? k : mix64(opt.seed * 77 + k) % N;
          ++pairs_seen;
          dialectical_system sys{{y, x, idx(i / n)}, {y, x, idx(i % n)}};
          report r = flow_decompose(H, one, sys, V);
          for (auto [into, from] : {std::pair{&unity, r.find(unity.name)}, std::pair{&dec, r.find(dec.name)}}) {
            into->instances += from->instances;
            into->violations += from->violations;
            for (const auto& ex : from->examples)
              if (into->examples.size() < 8)
                into->examples.push_back(B.describe(sys.s) + ", " + B.describe(sys.r) + ": " + ex);
          }
        }
      }
  }
  if (pairs_seen < pairs_total)
    dec.note = "sampled " + std::to_string(pairs_seen) + " of " + std::to_string(pairs_total) + " systems";
  rep.add(std::move(unity));
  rep.add(std::move(dec));
  return rep;
}

report representation(const model_handle& M, const law_options& opt) {
  const finite_biposet& B = M.heyting->base();
  std::vector<std::pair<topotype, topotype>> pairs;
  for (idx y = 0; y < B.type_count(); ++y)
    for (idx x = 0; x < B.type_count(); ++x) {
      auto Vs = chosen_topotypes(B, y, opt), Us = chosen_topotypes(B, x, opt);
      for (const auto& V : Vs)
        for (const auto& U : Us) pairs.emplace_back(V, U);
    }
  const std::size_t total = pairs.size();
  thin(pairs, 64, opt.seed);
  report rep = representation_laws(B, pairs, opt.mode);
  if (pairs.size() < total) {
    auto& n = rep.add("topotype pairs");
    n.instances = pairs.size();
    n.note = "sampled " + std::to_string(pairs.size()) + " of " + std::to_string(total);
  }
  return rep;
}

report soundness(const model_handle& M, const law_options& opt) {
  language L = three_atom_language();
  structure_frame F;
  try {
    F = default_frame(M, opt.mode);
  } catch (const model_error& e) {
    throw capability_error(std::string("no Boolean center: ") + e.what());
  }
  std::vector<classical_structure> S;
  try {
    S = all_structures(L, F, 512);
  } catch (const model_error&) {
    // too many assignments: a seeded sample
    std::mt19937_64 rng(opt.seed);
    for (int k = 0; k < 512; ++k) {
      std::vector<idx> map;
      for (idx a = 0; a < L.atom_count(); ++a) {
        std::size_t n = F.cat->hom_size(F.type_map[L.atom(a).source], F.type_map[L.atom(a).target]);
        map.push_back(idx(rng() % n));
      }
      S.push_back(make_structure(L, F, map));
    }
  }
  std::mt19937_64 rng(opt.seed);
  std::vector<derivation> D;
  for (std::size_t i = 0; i < opt.derivations; ++i) D.push_back(random_derivation(L, opt.depth, rng));
  report rep = soundness_harness(L, D, S, {}, opt.mode);
  // the same harness must reject weakening
  rule_table fake;
  fake["weakening"] = [](const std::vector<assertion>& p, const assertion& c) -> std::optional<std::string> {
    if (!p.empty() || c.kind != assertion::entail) return "expected α ⊢ α⊗α";
    if (c.rhs->kind == op::otimes && same(c.rhs->left, c.lhs) && same(c.rhs->right, c.lhs)) return std::nullopt;
    return "expected α ⊢ α⊗α";
  };
  formula a = f_atom(L, 0);
  report neg = soundness_harness(L, {derivation{"weakening", {}, entails(a, f_otimes(a, a))}}, S, fake, opt.mode);
  auto& nc = rep.add("weakening refuted");
  nc.instances = 1;
  // the control only bites where some endoterm is not below its square
  const idx tx = F.type_map[L.atom(0).source];
  bool idempotent = true;
  for (idx e = 0; e < F.cat->hom_size(tx, tx) && idempotent; ++e) {
    term t{tx, tx, e};
    idempotent = F.cat->le(t, F.cat->otimes(t, t));
  }
  if (idempotent) {
    nc.applicable = false;
    nc.note = "a ⪯ a⊗a throughout the center, so weakening is valid here";
  } else if (neg.ok()) {
    nc.violations = 1;
    nc.examples.push_back("no structure refutes a ⊢ a⊗a");
  }
  return rep;
}

std::vector<law_entry> build_registry() {
  auto H = [](const model_handle& M) -> const heyting_model& { return *M.heyting; };
  auto B = [](const model_handle& M) -> const finite_biposet& { return M.heyting->base(); };
  std::vector<law_entry> v{
      {"behavior", "flow of objects forms an adjoint pair, functorially",
       [=](const model_handle& M, const law_options& o) {
         return behavior_laws(H(M), need_separator(B(M), o.mode), o.mode, 200'000, o.seed);
       }},
      {"biposet-axioms", "ordered category and bisemilattice axioms",
       [=](const model_handle& M, const law_options& o) {
         return validate_biposet(B(M), parse_biposet_flags("cHc"), o.mode);
       }},
      {"biposet-laws", "orthoterms, orthogonality ideals, adjoint uniqueness",
       [=](const model_handle& M, const law_options& o) {
         return biposet_laws(B(M), o.mode, 4'000'000, o.seed);
       }},
      {"center-reflection", "the Boolean center validates and round-trips", center_reflection},
      {"comonoids", "interior modality and comonoid implication",
       [=](const model_handle& M, const law_options& o) { return comonoid_laws(H(M), o.mode); }},
      {"dialectical-axioms", "both residuations, exhaustive",
       [=](const model_handle& M, const law_options& o) { return audit_dialectical_axioms(H(M), o.mode); }},
      {"domains", "domain and totalization",
       [=](const model_handle& M, const law_options& o) { return domain_laws(B(M), o.mode); }},
      {"flow-decomposition", "yin-yang flow is the join of its component flows", flow_decomposition_fact},
      {"flow-identities", "the eight component/whole flow identities",
       [=](const model_handle& M, const law_options& o) {
         return flow_decomposition_identities(H(M), o.mode, 200'000, o.seed);
       }},
      {"functoriality", "¬¬s∘¬¬r ⪯ ¬¬(s∘r) on quasisymmetric pairs",
       [=](const model_handle& M, const law_options& o) { return functoriality_lemma_check(H(M), o.mode); }},
      {"heyting-laws", "derived laws, negation, double negation, DeMorgan",
       [=](const model_handle& M, const law_options& o) {
         return heyting_laws(H(M), o.mode, 4'000'000, o.seed);
       }},
      {"hoare", "assertional category of Hoare triples",
       [=](const model_handle& M, const law_options& o) { return hoare_laws(B(M), o.mode, 2'000'000, o.seed); }},
      {"representation", "terms and topomatrices correspond", representation},
      {"soundness", "derivable assertions hold in every structure of the center", soundness},
      {"yinyang", "flow along r decreases, identity and functional flows",
       [=](const model_handle& M, const law_options& o) {
         return yinyang_laws(H(M), need_separator(B(M), o.mode), o.mode);
       }},
  };
  std::sort(v.begin(), v.end(), [](const law_entry& a, const law_entry& b) { return a.name < b.name; });
  return v;
}

}  // namespace

const std::vector<law_entry>& law_registry() {
  static const std::vector<law_entry> reg = build_registry();
  return reg;
}

std::vector<law_outcome> run_laws(const model_handle& M, const std::vector<std::string>& names,
                                  const law_options& opt, int jobs) {
  std::vector<const law_entry*> todo;
  for (const auto& l : law_registry())
    if (names.empty() || std::find(names.begin(), names.end(), l.name) != names.end()) todo.push_back(&l);
  for (const auto& n : names)
    if (std::none_of(todo.begin(), todo.end(), [&](const law_entry* l) { return l->name == n; }))
      throw std::invalid_argument("unknown law '" + n + "'");
  std::vector<law_outcome> out(todo.size());
  law_options inner = opt;
  if (jobs > 1) inner.mode = exec::serial;
  auto one = [&](std::size_t i) {
    out[i].name = todo[i]->name;
    try {
      out[i].result = todo[i]->run(M, inner);
    } catch (const capability_error& e) {
      out[i].applicable = false;
      out[i].reason = e.what();
    } catch (const model_error& e) {
      out[i].applicable = false;
      out[i].reason = e.what();
    } catch (const std::exception& e) {
      auto& c = out[i].result.add("law raised an error");
      c.instances = 1;
      c.violations = 1;
      c.examples.push_back(e.what());
    }
  };
  const auto n = static_cast<std::int64_t>(todo.size());
  if (jobs > 1) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
    for (std::int64_t i = 0; i < n; ++i) one(std::size_t(i));
  } else {
    for (std::int64_t i = 0; i < n; ++i) one(std::size_t(i));
  }
  return out;
}

}  // namespace dialectic
