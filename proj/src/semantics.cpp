#include "dialectic/semantics.hpp"

#include <sstream>

#include "dialectic/models.hpp"

namespace dialectic {

boolean_ptr validated_center(const heyting_ptr& H, exec e) {
  auto c = boolean_center(H, e);
  report r = validate_boolean_category(c.cat, e);
  if (!r.ok()) throw model_error("Boolean center does not validate:\n" + r.text());
  return std::make_shared<const boolean_category>(std::move(c.cat));
}

classical_structure make_structure(const language& L, const structure_frame& F,
                                   std::vector<idx> atom_map) {
  if (!F.cat) throw type_error("structure without a category");
  if (F.type_map.size() != L.type_count()) throw type_error("type map does not cover the language");
  for (idx t : F.type_map)
    if (t >= F.cat->type_count()) throw type_error("type sent outside the category");
  if (atom_map.size() != L.atom_count()) throw type_error("atom map does not cover the language");
  for (idx a = 0; a < L.atom_count(); ++a) {
    if (atom_map[a] == npos) continue;
    idx y = F.type_map[L.atom(a).source], x = F.type_map[L.atom(a).target];
    if (atom_map[a] >= F.cat->hom_size(y, x))
      throw type_error("atom " + L.atom(a).name + " sent outside its homset");
  }
  return {F.name, F.cat, F.type_map, std::move(atom_map)};
}

term interpret(const classical_structure& S, const formula& f) {
  const boolean_category& B = *S.cat;
  const idx y = S.type_map[f->source], x = S.type_map[f->target];
  switch (f->kind) {
    case op::atom:
    case op::dual: {
      if (f->atom >= S.atom_map.size() || S.atom_map[f->atom] == npos)
        throw model_error("unmapped atom in structure " + S.name);
      if (f->kind == op::atom) return term{y, x, S.atom_map[f->atom]};
      return B.neg(term{x, y, S.atom_map[f->atom]});
    }
    case op::id: return B.identity(y);
    case op::zero: return B.zero(y, x);
    case op::one: return B.one(y, x);
    case op::otimes: return B.otimes(interpret(S, f->left), interpret(S, f->right));
    case op::nabla: return B.nabla(interpret(S, f->left), interpret(S, f->right));
    case op::oplus: return B.oplus(interpret(S, f->left), interpret(S, f->right));
    case op::triangle: return B.triangle(interpret(S, f->left), interpret(S, f->right));
  }
  throw model_error("bad formula");
}

term interpret_sequent(const classical_structure& S, const sequent& s, polarity p) {
  return interpret(S, p == polarity::polar ? tensor_product(s) : tensor_sum(s));
}

bool is_valid(const classical_structure& S, const assertion& a) {
  term l = interpret(S, a.lhs), r = interpret(S, a.rhs);
  if (a.kind == assertion::entail) return S.cat->le(l, r);
  return S.cat->orthogonal(l, r);
}

namespace {

struct flat_node {
  std::size_t derivation;
  std::string path;
  const assertion* conclusion;
};

void flatten(const derivation& d, std::size_t which, const std::string& path,
             std::vector<flat_node>& out) {
  out.push_back({which, path, &d.conclusion});
  for (std::size_t i = 0; i < d.premises.size(); ++i)
    flatten(d.premises[i], which, path + "." + std::to_string(i), out);
}

std::string atom_list(const language& L, const classical_structure& S) {
  std::string s;
  for (idx a = 0; a < L.atom_count(); ++a) {
    if (S.atom_map[a] == npos) continue;
    idx y = S.type_map[L.atom(a).source], x = S.type_map[L.atom(a).target];
    if (!s.empty()) s += ", ";
    s += L.atom(a).name + "=" + S.cat->describe({y, x, S.atom_map[a]});
  }
  return s;
}

}  // namespace

report soundness_harness(const language& L, const std::vector<derivation>& derivations,
                         const std::vector<classical_structure>& structures,
                         const rule_table& extra, exec e) {
  report rep;
  auto& wf = rep.add("derivations check");
  wf.instances = derivations.size();
  std::vector<flat_node> nodes;
  for (std::size_t i = 0; i < derivations.size(); ++i) {
    auto c = check_derivation(L, derivations[i], extra);
    if (!c.ok) {
      ++wf.violations;
      if (wf.examples.size() < 8)
        wf.examples.push_back("derivation " + std::to_string(i) + " " + c.path + ": " + c.message);
      continue;
    }
    flatten(derivations[i], i, "root", nodes);
  }
  const std::uint64_t ns = structures.size();
  auto bad = [&](std::uint64_t k) {
    return !is_valid(structures[k % ns], *nodes[k / ns].conclusion);
  };
  auto show = [&](std::uint64_t k) {
    const auto& n = nodes[k / ns];
    const auto& S = structures[k % ns];
    const auto& a = *n.conclusion;
    return "derivation " + std::to_string(n.derivation) + " node " + n.path + ": " + to_infix(L, a) +
           " fails in " + S.name + " [" + atom_list(L, S) + "] as " + S.cat->describe(interpret(S, a.lhs)) +
           (a.kind == assertion::entail ? " ⊢ " : " ⊥ ") + S.cat->describe(interpret(S, a.rhs));
  };
  rep.add(run_check("derived assertions valid", std::uint64_t(nodes.size()) * ns, e, bad, show));
  return rep;
}

std::vector<classical_structure> all_structures(const language& L, const structure_frame& F,
                                                std::size_t limit) {
  std::vector<std::size_t> sizes;
  std::size_t total = 1;
  for (idx a = 0; a < L.atom_count(); ++a) {
    std::size_t n = F.cat->hom_size(F.type_map[L.atom(a).source], F.type_map[L.atom(a).target]);
    if (n == 0) return {};
    sizes.push_back(n);
    if (total > limit / n) throw model_error("too many atom assignments in " + F.name);
    total *= n;
  }
  std::vector<classical_structure> out;
  out.reserve(total);
  std::vector<idx> map(L.atom_count(), 0);
  for (std::size_t k = 0; k < total; ++k) {
    std::size_t rest = k;
    for (std::size_t a = L.atom_count(); a-- > 0;) {
      map[a] = idx(rest % sizes[a]);
      rest /= sizes[a];
    }
    auto S = make_structure(L, F, map);
    out.push_back(std::move(S));
  }
  return out;
}

refutation tautology_semidecision(const language& L, const assertion& a,
                                  const std::vector<structure_frame>& frames, std::uint64_t limit) {
  // only atoms that occur matter; the rest stay at their first element
  std::vector<bool> used(L.atom_count(), false);
  std::vector<const formula_node*> stack{a.lhs.get(), a.rhs.get()};
  while (!stack.empty()) {
    auto f = stack.back();
    stack.pop_back();
    if (f->kind == op::atom || f->kind == op::dual) used[f->atom] = true;
    if (f->left) {
      stack.push_back(f->left.get());
      stack.push_back(f->right.get());
    }
  }
  refutation out;
  for (const auto& F : frames) {
    std::vector<std::size_t> sizes(L.atom_count(), 1);
    bool empty = false;
    for (idx k = 0; k < L.atom_count(); ++k) {
      std::size_t n = F.cat->hom_size(F.type_map[L.atom(k).source], F.type_map[L.atom(k).target]);
      if (n == 0) empty = true;
      if (used[k]) sizes[k] = n;
    }
    if (empty) continue;
    std::vector<idx> map(L.atom_count(), 0);
    for (;;) {
      if (out.tried >= limit) return out;
      ++out.tried;
      auto S = make_structure(L, F, map);
      if (!is_valid(S, a)) {
        out.refuted = true;
        out.witness = std::move(S);
        return out;
      }
      std::size_t k = 0;
      while (k < map.size() && ++map[k] == sizes[k]) map[k++] = 0;
      if (k == map.size()) break;
    }
  }
  return out;
}

classical_structure parse_structure(const language& L, std::string_view text, const std::string& file,
                                    exec e) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  std::optional<model_handle> model;
  structure_frame F;
  F.type_map.assign(L.type_count(), npos);
  std::vector<idx> atoms(L.atom_count(), npos);
  std::vector<std::pair<int, std::pair<idx, std::string>>> pending;
  auto fail = [&](const std::string& what) -> void { throw parse_error(file, lineno, 1, what); };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::vector<std::string> w;
    for (std::string t; ls >> t;) w.push_back(t);
    if (w.empty()) continue;
    if (w[0] == "model") {
      if (w.size() != 2) fail("expected: model <descriptor>");
      if (model) fail("second model line");
      try {
        model = parse_model_descriptor(w[1], e);
        F.cat = validated_center(model->heyting, e);
      } catch (const model_error& err) {
        fail(err.what());
      } catch (const std::invalid_argument& err) {
        fail(err.what());
      }
      F.name = w[1];
    } else if (w[0] == "type" || w[0] == "atom") {
      if (w.size() != 4 || w[2] != "->") fail("expected: " + w[0] + " <name> -> <target>");
      if (!F.cat) fail("model line must come first");
      if (w[0] == "type") {
        auto t = L.find_type(w[1]);
        if (!t) fail("unknown type '" + w[1] + "'");
        auto m = F.cat->find_type(w[3]);
        if (!m) fail("model has no type '" + w[3] + "'");
        F.type_map[*t] = *m;
      } else {
        auto a = L.find_atom(w[1]);
        if (!a) fail("unknown atom '" + w[1] + "'");
        pending.push_back({lineno, {*a, w[3]}});
      }
    } else {
      fail("unknown directive '" + w[0] + "'");
    }
  }
  if (!F.cat) throw parse_error(file, lineno, 1, "missing model line");
  for (idx t = 0; t < L.type_count(); ++t) {
    if (F.type_map[t] != npos) continue;
    if (F.cat->type_count() == 1) {
      F.type_map[t] = 0;
    } else {
      throw parse_error(file, lineno, 1, "type " + L.type_name(t) + " is not mapped");
    }
  }
  for (const auto& [ln, p] : pending) {
    const auto& [a, name] = p;
    idx y = F.type_map[L.atom(a).source], x = F.type_map[L.atom(a).target];
    auto t = F.cat->find_term(y, x, name);
    if (!t) {
      std::string msg = "no central term '" + name + "' in hom(" + F.cat->type_name(y) + ", " +
                        F.cat->type_name(x) + "); available:";
      for (const auto& n : F.cat->hom(y, x).names) msg += " " + n;
      throw parse_error(file, ln, 1, msg);
    }
    atoms[a] = t->elem;
  }
  return make_structure(L, F, std::move(atoms));
}

}  // namespace dialectic
