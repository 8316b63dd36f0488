#include "dialectic/calculus.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_map>

#include "sexpr.hpp"

namespace dialectic {

idx language::add_type(std::string name) {
  if (find_type(name)) throw type_error("duplicate type " + name);
  types_.push_back(std::move(name));
  return idx(types_.size() - 1);
}

idx language::add_atom(std::string name, idx source, idx target) {
  if (find_atom(name)) throw type_error("duplicate atom " + name);
  if (source >= types_.size() || target >= types_.size()) throw type_error("atom type out of range");
  atoms_.push_back({std::move(name), source, target});
  return idx(atoms_.size() - 1);
}

std::optional<idx> language::find_type(std::string_view name) const {
  for (idx i = 0; i < types_.size(); ++i)
    if (types_[i] == name) return i;
  return std::nullopt;
}

std::optional<idx> language::find_atom(std::string_view name) const {
  for (idx i = 0; i < atoms_.size(); ++i)
    if (atoms_[i].name == name) return i;
  return std::nullopt;
}

language parse_language(std::string_view text, const std::string& file) {
  language L;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::vector<std::string> w;
    for (std::string t; ls >> t;) w.push_back(t);
    if (w.empty()) continue;
    try {
      if (w[0] == "type") {
        if (w.size() < 2) throw type_error("type needs a name");
        for (std::size_t k = 1; k < w.size(); ++k) L.add_type(w[k]);
      } else if (w[0] == "atom") {
        if (w.size() != 4) throw type_error("expected: atom <name> <source> <target>");
        auto y = L.find_type(w[2]), x = L.find_type(w[3]);
        if (!y || !x) throw type_error("unknown type in atom " + w[1]);
        L.add_atom(w[1], *y, *x);
      } else {
        throw type_error("unknown directive '" + w[0] + "'");
      }
    } catch (const type_error& e) {
      throw parse_error(file, lineno, 1, e.what());
    }
  }
  return L;
}

namespace {

std::size_t hash_mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

formula make_node(op k, idx atom, idx y, idx x, formula l, formula r) {
  auto n = std::make_shared<formula_node>();
  n->kind = k;
  n->atom = atom;
  n->source = y;
  n->target = x;
  std::size_t h = hash_mix(std::size_t(k) + 1, atom);
  h = hash_mix(hash_mix(h, y), x);
  if (l) {
    h = hash_mix(hash_mix(h, l->hash), r->hash);
    n->size = 1 + l->size + r->size;
    n->depth = 1 + std::max(l->depth, r->depth);
  }
  n->hash = h;
  n->left = std::move(l);
  n->right = std::move(r);
  return n;
}

bool binary(op k) { return k == op::otimes || k == op::nabla || k == op::oplus || k == op::triangle; }

}  // namespace

formula f_atom(const language& L, idx a) {
  if (a >= L.atom_count()) throw type_error("unknown atom");
  return make_node(op::atom, a, L.atom(a).source, L.atom(a).target, nullptr, nullptr);
}

formula f_dual(const language& L, idx a) {
  if (a >= L.atom_count()) throw type_error("unknown atom");
  return make_node(op::dual, a, L.atom(a).target, L.atom(a).source, nullptr, nullptr);
}

formula f_id(idx x) { return make_node(op::id, npos, x, x, nullptr, nullptr); }
formula f_zero(idx y, idx x) { return make_node(op::zero, npos, y, x, nullptr, nullptr); }
formula f_one(idx y, idx x) { return make_node(op::one, npos, y, x, nullptr, nullptr); }

formula f_otimes(formula b, formula a) {
  if (b->target != a->source) throw type_error("⊗ of non-composable formulas");
  idx y = b->source, x = a->target;
  return make_node(op::otimes, npos, y, x, std::move(b), std::move(a));
}

formula f_nabla(formula b, formula a) {
  if (b->target != a->source) throw type_error("∇ of non-composable formulas");
  idx y = b->source, x = a->target;
  return make_node(op::nabla, npos, y, x, std::move(b), std::move(a));
}

formula f_oplus(formula a, formula b) {
  if (a->source != b->source || a->target != b->target) throw type_error("⊕ of non-parallel formulas");
  idx y = a->source, x = a->target;
  return make_node(op::oplus, npos, y, x, std::move(a), std::move(b));
}

formula f_triangle(formula a, formula b) {
  if (a->source != b->source || a->target != b->target) throw type_error("△ of non-parallel formulas");
  idx y = a->source, x = a->target;
  return make_node(op::triangle, npos, y, x, std::move(a), std::move(b));
}

bool same(const formula& a, const formula& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->hash != b->hash || a->kind != b->kind || a->atom != b->atom || a->source != b->source ||
      a->target != b->target)
    return false;
  if (!binary(a->kind)) return true;
  return same(a->left, b->left) && same(a->right, b->right);
}

bool formula_less::operator()(const formula& a, const formula& b) const {
  if (a == b) return false;
  if (a->hash != b->hash) return a->hash < b->hash;
  auto ka = std::tie(a->kind, a->atom, a->source, a->target);
  auto kb = std::tie(b->kind, b->atom, b->source, b->target);
  if (ka != kb) return ka < kb;
  if (!binary(a->kind)) return false;
  if (!same(a->left, b->left)) return (*this)(a->left, b->left);
  return (*this)(a->right, b->right);
}

formula negate(const formula& f) {
  switch (f->kind) {
    case op::atom: return make_node(op::dual, f->atom, f->target, f->source, nullptr, nullptr);
    case op::dual: return make_node(op::atom, f->atom, f->target, f->source, nullptr, nullptr);
    case op::id: return f;
    case op::zero: return f_one(f->target, f->source);
    case op::one: return f_zero(f->target, f->source);
    case op::otimes: return f_nabla(negate(f->right), negate(f->left));
    case op::nabla: return f_otimes(negate(f->right), negate(f->left));
    case op::oplus: return f_triangle(negate(f->left), negate(f->right));
    case op::triangle: return f_oplus(negate(f->left), negate(f->right));
  }
  return f;
}

std::string to_sexpr(const language& L, const formula& f) {
  const auto& t = [&](idx i) -> const std::string& { return L.type_name(i); };
  switch (f->kind) {
    case op::atom:
      return "(atom " + L.atom(f->atom).name + " " + t(f->source) + " " + t(f->target) + ")";
    case op::dual: return "(dual " + L.atom(f->atom).name + ")";
    case op::id: return "(id " + t(f->source) + ")";
    case op::zero: return "(zero " + t(f->source) + " " + t(f->target) + ")";
    case op::one: return "(one " + t(f->source) + " " + t(f->target) + ")";
    case op::otimes: return "(ot " + to_sexpr(L, f->left) + " " + to_sexpr(L, f->right) + ")";
    case op::nabla: return "(ns " + to_sexpr(L, f->left) + " " + to_sexpr(L, f->right) + ")";
    case op::oplus: return "(bs " + to_sexpr(L, f->left) + " " + to_sexpr(L, f->right) + ")";
    case op::triangle: return "(bp " + to_sexpr(L, f->left) + " " + to_sexpr(L, f->right) + ")";
  }
  return "?";
}

std::string to_infix(const language& L, const formula& f) {
  auto bin = [&](const char* s) {
    return "(" + to_infix(L, f->left) + s + to_infix(L, f->right) + ")";
  };
  switch (f->kind) {
    case op::atom: return L.atom(f->atom).name;
    case op::dual: return "~" + L.atom(f->atom).name;
    case op::id: return L.type_name(f->source);
    case op::zero: return "0";
    case op::one: return "1";
    case op::otimes: return bin("⊗");
    case op::nabla: return bin("∇");
    case op::oplus: return bin("⊕");
    case op::triangle: return bin("△");
  }
  return "?";
}

sequent make_sequent(std::vector<formula> items, idx empty_type) {
  for (std::size_t i = 1; i < items.size(); ++i)
    if (items[i - 1]->target != items[i]->source) throw type_error("sequent items do not compose");
  return sequent{std::move(items), empty_type};
}

sequent concat(const sequent& b, const sequent& a) {
  if (b.target() != a.source()) throw type_error("sequents do not compose");
  if (b.items.empty()) return a;
  if (a.items.empty()) return b;
  sequent s = b;
  s.items.insert(s.items.end(), a.items.begin(), a.items.end());
  return s;
}

formula tensor_product(const sequent& s) {
  formula acc = f_id(s.target());
  for (std::size_t i = s.items.size(); i-- > 0;) acc = f_otimes(s.items[i], acc);
  return acc;
}

formula tensor_sum(const sequent& s) {
  formula acc = f_id(s.source());
  for (const auto& a : s.items) acc = f_nabla(acc, a);
  return acc;
}

sequent vector_negation(const sequent& s) {
  sequent out;
  out.empty_type = s.empty_type;
  for (std::size_t i = s.items.size(); i-- > 0;) out.items.push_back(negate(s.items[i]));
  return out;
}

assertion entails(formula a, formula b) {
  if (a->source != b->source || a->target != b->target) throw type_error("entailment of non-parallel formulas");
  return {assertion::entail, std::move(a), std::move(b)};
}

assertion orthogonal(formula b, formula a) {
  if (b->source != a->target || b->target != a->source)
    throw type_error("orthogonality of non-opposed formulas");
  return {assertion::orth, std::move(b), std::move(a)};
}

bool same(const assertion& a, const assertion& b) {
  return a.kind == b.kind && same(a.lhs, b.lhs) && same(a.rhs, b.rhs);
}

std::string to_sexpr(const language& L, const assertion& a) {
  return std::string(a.kind == assertion::entail ? "(ent " : "(orth ") + to_sexpr(L, a.lhs) + " " +
         to_sexpr(L, a.rhs) + ")";
}

std::string to_infix(const language& L, const assertion& a) {
  return to_infix(L, a.lhs) + (a.kind == assertion::entail ? " ⊢ " : " ⊥ ") + to_infix(L, a.rhs);
}

std::size_t derivation::depth() const {
  std::size_t d = 0;
  for (const auto& p : premises) d = std::max(d, p.depth());
  return d + 1;
}

std::size_t derivation::size() const {
  std::size_t n = 1;
  for (const auto& p : premises) n += p.size();
  return n;
}

namespace {

struct rule_name {
  const char* canonical;
  const char* alias;
};

const rule_name rule_list[] = {
    {"logical axiom", "logical-axiom"},
    {"cut", "cut"},
    {"symmetry", "symmetry"},
    {"zero", "zero"},
    {"1st △", "1st-triangle"},
    {"2nd △", "2nd-triangle"},
    {"⊕", "oplus"},
    {"identity", "identity"},
    {"⊗∇", "otimes-nabla"},
    {"orthog-entail", "orthog-entail"},
    {"orthogonality definition", "orthogonality-definition"},
    {"reflexivity", "reflexivity"},
    {"transitivity", "transitivity"},
    {"contravariance", "contravariance"},
    {"bottom", "bottom"},
    {"1st u.b.", "1st-ub"},
    {"2nd u.b.", "2nd-ub"},
    {"l.u.b.", "lub"},
    {"monotonicity", "monotonicity"},
    {"∇-monotonicity", "nabla-monotonicity"},
};

}  // namespace

std::optional<std::string> canonical_rule(std::string_view name) {
  for (const auto& r : rule_list)
    if (name == r.canonical || name == r.alias) return std::string(r.canonical);
  return std::nullopt;
}

std::vector<std::string> rule_names() {
  std::vector<std::string> out;
  for (const auto& r : rule_list) out.push_back(r.canonical);
  return out;
}

namespace {

bool is(const formula& f, op k) { return f->kind == k; }

// the identity-law equivalences of α: y -> x
bool identity_pair(const formula& p, const formula& q) {
  auto padded = [](const formula& big, const formula& a) {
    if (!is(big, op::otimes)) return false;
    return (is(big->left, op::id) && same(big->right, a)) ||
           (is(big->right, op::id) && same(big->left, a));
  };
  return padded(p, q) || padded(q, p);
}

bool orth_identity(const formula& b, const formula& a) {
  // (α⊗x) ⊥ ¬α, (y⊗α) ⊥ ¬α, ¬α ⊥ (y∇α), ¬α ⊥ (α∇x)
  if (is(b, op::otimes)) {
    if (is(b->right, op::id) && same(a, negate(b->left))) return true;
    if (is(b->left, op::id) && same(a, negate(b->right))) return true;
  }
  if (is(a, op::nabla)) {
    if (is(a->left, op::id) && same(b, negate(a->right))) return true;
    if (is(a->right, op::id) && same(b, negate(a->left))) return true;
  }
  return false;
}

struct node_checker {
  const language& L;

  std::string show(const assertion& a) const { return to_infix(L, a); }

  std::optional<std::string> kinds(const std::vector<assertion>& prem, const assertion& concl,
                                   std::initializer_list<assertion::kind_t> pk,
                                   assertion::kind_t ck) const {
    if (prem.size() != pk.size())
      return "expected " + std::to_string(pk.size()) + " premises, got " + std::to_string(prem.size());
    std::size_t i = 0;
    for (auto k : pk) {
      if (prem[i].kind != k)
        return "premise " + std::to_string(i + 1) + " must be an " +
               (k == assertion::entail ? "entailment" : "orthogonality") + ", got " + show(prem[i]);
      ++i;
    }
    if (concl.kind != ck)
      return std::string("conclusion must be an ") + (ck == assertion::entail ? "entailment" : "orthogonality");
    return std::nullopt;
  }

  std::optional<std::string> expect(bool ok, const std::string& shape, const assertion& concl) const {
    if (ok) return std::nullopt;
    return "expected " + shape + ", got " + show(concl);
  }

  std::optional<std::string> operator()(const std::string& rule, const std::vector<assertion>& P,
                                        const assertion& C) const {
    using A = assertion;
    const formula &l = C.lhs, &r = C.rhs;
    if (rule == "reflexivity") {
      if (auto e = kinds(P, C, {}, A::entail)) return e;
      return expect(same(l, r), "α ⊢ α", C);
    }
    if (rule == "transitivity") {
      if (auto e = kinds(P, C, {A::entail, A::entail}, A::entail)) return e;
      if (!same(P[0].rhs, P[1].lhs)) return "middle formulas differ: " + show(P[0]) + " ; " + show(P[1]);
      return expect(same(l, P[0].lhs) && same(r, P[1].rhs), "α ⊢ γ from α ⊢ β, β ⊢ γ", C);
    }
    if (rule == "contravariance") {
      if (auto e = kinds(P, C, {A::entail}, A::entail)) return e;
      return expect(same(l, negate(P[0].rhs)) && same(r, negate(P[0].lhs)), "¬β ⊢ ¬α", C);
    }
    if (rule == "bottom") {
      if (auto e = kinds(P, C, {}, A::entail)) return e;
      return expect(is(l, op::zero), "0 ⊢ α", C);
    }
    if (rule == "1st u.b.") {
      if (auto e = kinds(P, C, {}, A::entail)) return e;
      return expect(is(r, op::oplus) && same(r->left, l), "α ⊢ (α⊕α')", C);
    }
    if (rule == "2nd u.b.") {
      if (auto e = kinds(P, C, {}, A::entail)) return e;
      return expect(is(r, op::oplus) && same(r->right, l), "α' ⊢ (α⊕α')", C);
    }
    if (rule == "l.u.b.") {
      if (auto e = kinds(P, C, {A::entail, A::entail}, A::entail)) return e;
      return expect(is(l, op::oplus) && same(l->left, P[0].lhs) && same(l->right, P[1].lhs) &&
                        same(r, P[0].rhs) && same(r, P[1].rhs),
                    "(α⊕α') ⊢ β from α ⊢ β, α' ⊢ β", C);
    }
    if (rule == "monotonicity" || rule == "∇-monotonicity") {
      if (auto e = kinds(P, C, {A::entail, A::entail}, A::entail)) return e;
      op k = rule == "monotonicity" ? op::otimes : op::nabla;
      const char* shape = k == op::otimes ? "(β⊗α) ⊢ (δ⊗γ)" : "(β∇α) ⊢ (δ∇γ)";
      return expect(is(l, k) && is(r, k) && same(l->left, P[0].lhs) && same(r->left, P[0].rhs) &&
                        same(l->right, P[1].lhs) && same(r->right, P[1].rhs),
                    shape, C);
    }
    if (rule == "identity") {
      if (C.kind == A::entail) {
        if (auto e = kinds(P, C, {}, A::entail)) return e;
        return expect(identity_pair(l, r), "(y⊗α) ≡ α ≡ (α⊗x)", C);
      }
      if (auto e = kinds(P, C, {}, A::orth)) return e;
      return expect(orth_identity(l, r), "(α⊗x) ⊥ ¬α ⊥ (y∇α) or (y⊗α) ⊥ ¬α ⊥ (α∇x)", C);
    }
    if (rule == "logical axiom") {
      if (auto e = kinds(P, C, {}, A::orth)) return e;
      return expect(same(r, negate(l)), "α ⊥ ¬α", C);
    }
    if (rule == "cut") {
      if (auto e = kinds(P, C, {A::orth, A::orth}, A::orth)) return e;
      if (!same(P[0].rhs, negate(P[1].lhs)))
        return "cut formula mismatch: " + show(P[0]) + " does not oppose the negation of " +
               to_infix(L, P[1].lhs);
      return expect(same(l, P[0].lhs) && same(r, P[1].rhs), "α ⊥ γ from α ⊥ ¬β, β ⊥ γ", C);
    }
    if (rule == "symmetry") {
      if (auto e = kinds(P, C, {A::orth}, A::orth)) return e;
      return expect(same(l, P[0].rhs) && same(r, P[0].lhs), "α ⊥ β from β ⊥ α", C);
    }
    if (rule == "zero") {
      if (auto e = kinds(P, C, {}, A::orth)) return e;
      return expect(is(l, op::zero), "0 ⊥ α", C);
    }
    if (rule == "1st △" || rule == "2nd △") {
      if (auto e = kinds(P, C, {A::orth}, A::orth)) return e;
      bool first = rule == "1st △";
      return expect(is(l, op::triangle) && same(first ? l->left : l->right, P[0].lhs) && same(r, P[0].rhs),
                    first ? "(α△α') ⊥ β from α ⊥ β" : "(α△α') ⊥ β from α' ⊥ β", C);
    }
    if (rule == "⊕") {
      if (auto e = kinds(P, C, {A::orth, A::orth}, A::orth)) return e;
      return expect(is(l, op::oplus) && same(l->left, P[0].lhs) && same(l->right, P[1].lhs) &&
                        same(r, P[0].rhs) && same(r, P[1].rhs),
                    "(α⊕α') ⊥ β from α ⊥ β, α' ⊥ β", C);
    }
    if (rule == "⊗∇") {
      if (auto e = kinds(P, C, {A::orth, A::orth}, A::orth)) return e;
      return expect(is(l, op::otimes) && is(r, op::nabla) && same(l->left, P[0].lhs) &&
                        same(r->right, P[0].rhs) && same(l->right, P[1].lhs) && same(r->left, P[1].rhs),
                    "(β⊗α) ⊥ (γ∇δ) from β ⊥ δ, α ⊥ γ", C);
    }
    if (rule == "orthog-entail") {
      if (P.size() != 1) return "expected 1 premise";
      if (P[0].kind == A::orth) {
        if (C.kind != A::entail) return "conclusion must be an entailment";
        return expect(same(l, P[0].lhs) && same(r, negate(P[0].rhs)), "β ⊢ ¬α from β ⊥ α", C);
      }
      if (C.kind != A::orth) return "conclusion must be an orthogonality";
      return expect(same(l, P[0].lhs) && same(negate(r), P[0].rhs), "β ⊥ α from β ⊢ ¬α", C);
    }
    if (rule == "orthogonality definition") {
      if (P.size() == 2) {
        if (auto e = kinds(P, C, {A::entail, A::entail}, A::orth)) return e;
        formula bt = f_otimes(l, r), ab = f_otimes(r, l);
        return expect(same(P[0].lhs, bt) && is(P[0].rhs, op::id) && same(P[1].lhs, ab) &&
                          is(P[1].rhs, op::id),
                      "β ⊥ α from β⊗α ⊢ x, α⊗β ⊢ y", C);
      }
      if (auto e = kinds(P, C, {A::orth}, A::entail)) return e;
      const formula &b = P[0].lhs, &a = P[0].rhs;
      bool ok = is(r, op::id) && is(l, op::otimes) &&
                ((same(l->left, b) && same(l->right, a)) || (same(l->left, a) && same(l->right, b)));
      return expect(ok, "β⊗α ⊢ x or α⊗β ⊢ y from β ⊥ α", C);
    }
    return "unknown rule '" + rule + "'";
  }
};

bool check_rec(const language& L, const derivation& d, const rule_table& extra,
               const std::string& path, derivation_check& out) {
  ++out.nodes;
  for (std::size_t i = 0; i < d.premises.size(); ++i)
    if (!check_rec(L, d.premises[i], extra, path + "." + std::to_string(i), out)) return false;
  std::vector<assertion> prem;
  for (const auto& p : d.premises) prem.push_back(p.conclusion);
  std::optional<std::string> err;
  if (auto it = extra.find(d.rule); it != extra.end()) {
    err = it->second(prem, d.conclusion);
  } else if (auto name = canonical_rule(d.rule)) {
    err = node_checker{L}(*name, prem, d.conclusion);
  } else {
    err = "unknown rule '" + d.rule + "'";
  }
  if (err) {
    out.ok = false;
    out.path = path;
    out.message = d.rule + ": " + *err;
    return false;
  }
  return true;
}

}  // namespace

derivation_check check_derivation(const language& L, const derivation& d, const rule_table& extra) {
  derivation_check out;
  check_rec(L, d, extra, "root", out);
  return out;
}

report derivation_report(const language& L, const derivation& d, const rule_table& extra) {
  auto c = check_derivation(L, d, extra);
  report rep;
  auto& k = rep.add("derivation");
  k.instances = c.nodes;
  if (!c.ok) {
    k.violations = 1;
    k.examples.push_back(c.path + ": " + c.message);
  }
  return rep;
}

namespace {

derivation node(std::string rule, std::vector<derivation> prem, assertion concl) {
  return derivation{std::move(rule), std::move(prem), std::move(concl)};
}

}  // namespace

derivation expand_derived(const derivation& d) {
  std::vector<derivation> prem;
  for (const auto& p : d.premises) prem.push_back(expand_derived(p));
  auto canon = canonical_rule(d.rule);
  if (!canon || *canon != "∇-monotonicity") return node(d.rule, std::move(prem), d.conclusion);
  // β ⊢ δ and α ⊢ γ: negate both, ⊗-monotonicity, negate back
  const auto& p1 = prem[0].conclusion;
  const auto& p2 = prem[1].conclusion;
  derivation c1 = node("contravariance", {prem[0]}, entails(negate(p1.rhs), negate(p1.lhs)));
  derivation c2 = node("contravariance", {prem[1]}, entails(negate(p2.rhs), negate(p2.lhs)));
  assertion m = entails(f_otimes(c2.conclusion.lhs, c1.conclusion.lhs),
                        f_otimes(c2.conclusion.rhs, c1.conclusion.rhs));
  derivation mono = node("monotonicity", {c2, c1}, m);
  return node("contravariance", {mono}, entails(negate(m.rhs), negate(m.lhs)));
}

derivation lift_vector_entailment(const sequent& a, const sequent& b,
                                  const std::vector<derivation>& comps) {
  if (a.items.size() != b.items.size() || comps.size() != a.items.size() ||
      a.source() != b.source() || a.target() != b.target())
    throw shape_error("vector entailment needs parallel sequents of equal length");
  formula x = f_id(a.target());
  derivation acc = node("reflexivity", {}, entails(x, x));
  for (std::size_t i = a.items.size(); i-- > 0;) {
    const auto& c = comps[i].conclusion;
    if (c.kind != assertion::entail || !same(c.lhs, a.items[i]) || !same(c.rhs, b.items[i]))
      throw shape_error("component " + std::to_string(i) + " does not entail the matching item");
    assertion concl = entails(f_otimes(c.lhs, acc.conclusion.lhs), f_otimes(c.rhs, acc.conclusion.rhs));
    acc = node("monotonicity", {comps[i], acc}, concl);
  }
  return acc;
}

namespace {

struct assertion_hash {
  std::size_t operator()(const assertion& a) const {
    return hash_mix(hash_mix(a.kind, a.lhs->hash), a.rhs->hash);
  }
};
struct assertion_eq {
  bool operator()(const assertion& a, const assertion& b) const { return same(a, b); }
};

struct searcher {
  const language& L;
  search_options opt;
  std::map<std::pair<idx, idx>, std::vector<formula>> middles;
  std::unordered_map<assertion, std::size_t, assertion_hash, assertion_eq> failed;  // depth tried
  std::unordered_map<assertion, derivation, assertion_hash, assertion_eq> proved;
  std::size_t visited = 0;

  void add_candidates(const assertion& goal) {
    std::vector<formula> pool;
    std::function<void(const formula&)> sub = [&](const formula& f) {
      pool.push_back(f);
      if (f->left) {
        sub(f->left);
        sub(f->right);
      }
    };
    sub(goal.lhs);
    sub(goal.rhs);
    const std::size_t base = pool.size();
    for (std::size_t i = 0; i < base; ++i) pool.push_back(negate(pool[i]));
    const std::size_t with_neg = pool.size();
    for (std::size_t i = 0; i < with_neg; ++i) {
      const formula f = pool[i];
      pool.push_back(f_otimes(f, f_id(f->target)));
      pool.push_back(f_otimes(f_id(f->source), f));
      pool.push_back(f_nabla(f_id(f->source), f));
      pool.push_back(f_nabla(f, f_id(f->target)));
    }
    for (const auto& f : std::vector<formula>(pool)) {
      pool.push_back(f_zero(f->source, f->target));
      pool.push_back(f_one(f->source, f->target));
    }
    for (const auto& f : pool) {
      auto& v = middles[{f->source, f->target}];
      if (std::none_of(v.begin(), v.end(), [&](const formula& g) { return same(f, g); })) v.push_back(f);
    }
    for (auto& [k, v] : middles)
      std::stable_sort(v.begin(), v.end(), [](const formula& a, const formula& b) { return a->size < b->size; });
  }

  std::optional<derivation> leaf(const assertion& g) const {
    const formula &l = g.lhs, &r = g.rhs;
    if (g.kind == assertion::entail) {
      if (same(l, r)) return node("reflexivity", {}, g);
      if (is(l, op::zero)) return node("bottom", {}, g);
      if (is(r, op::oplus) && same(r->left, l)) return node("1st u.b.", {}, g);
      if (is(r, op::oplus) && same(r->right, l)) return node("2nd u.b.", {}, g);
      if (identity_pair(l, r)) return node("identity", {}, g);
    } else {
      if (same(r, negate(l))) return node("logical axiom", {}, g);
      if (is(l, op::zero)) return node("zero", {}, g);
      if (orth_identity(l, r)) return node("identity", {}, g);
    }
    return std::nullopt;
  }

  std::optional<derivation> both(const std::string& rule, const assertion& a, const assertion& b,
                                 const assertion& g, std::size_t d) {
    auto pa = prove(a, d);
    if (!pa) return std::nullopt;
    auto pb = prove(b, d);
    if (!pb) return std::nullopt;
    return node(rule, {std::move(*pa), std::move(*pb)}, g);
  }

  std::optional<derivation> one(const std::string& rule, const assertion& a, const assertion& g,
                                std::size_t d) {
    auto pa = prove(a, d);
    if (!pa) return std::nullopt;
    return node(rule, {std::move(*pa)}, g);
  }

  std::optional<derivation> prove(const assertion& g, std::size_t d) {
    if (d == 0 || visited > opt.max_nodes) return std::nullopt;
    if (auto it = proved.find(g); it != proved.end() && it->second.depth() <= d) return it->second;
    if (auto it = failed.find(g); it != failed.end() && it->second >= d) return std::nullopt;
    ++visited;
    auto r = attempt(g, d);
    if (r) {
      proved.insert_or_assign(g, *r);
    } else if (visited <= opt.max_nodes) {
      auto& f = failed[g];
      f = std::max(f, d);
    }
    return r;
  }

  std::optional<derivation> attempt(const assertion& g, std::size_t d) {
    if (auto lf = leaf(g)) return lf;
    if (d == 1) return std::nullopt;
    const std::size_t s = d - 1;
    const formula &l = g.lhs, &r = g.rhs;
    if (g.kind == assertion::entail) {
      if (is(l, op::oplus))
        if (auto p = both("l.u.b.", entails(l->left, r), entails(l->right, r), g, s)) return p;
      for (op k : {op::otimes, op::nabla})
        if (is(l, k) && is(r, k) && l->left->target == r->left->target)
          if (auto p = both(k == op::otimes ? "monotonicity" : "∇-monotonicity",
                            entails(l->left, r->left), entails(l->right, r->right), g, s))
            return p;
      if (is(r, op::id) && is(l, op::otimes)) {
        if (auto p = one("orthogonality definition", orthogonal(l->left, l->right), g, s)) return p;
        if (auto p = one("orthogonality definition", orthogonal(l->right, l->left), g, s)) return p;
      }
      if (auto p = one("orthog-entail", orthogonal(l, negate(r)), g, s)) return p;
      if (auto p = one("contravariance", entails(negate(r), negate(l)), g, s)) return p;
      if (s >= 1 && d >= 3)
        for (const auto& m : middles[{l->source, l->target}]) {
          if (same(m, l) || same(m, r)) continue;
          if (auto p = both("transitivity", entails(l, m), entails(m, r), g, s)) return p;
        }
    } else {
      if (is(l, op::triangle)) {
        if (auto p = one("1st △", orthogonal(l->left, r), g, s)) return p;
        if (auto p = one("2nd △", orthogonal(l->right, r), g, s)) return p;
      }
      if (is(l, op::oplus))
        if (auto p = both("⊕", orthogonal(l->left, r), orthogonal(l->right, r), g, s)) return p;
      if (is(l, op::otimes) && is(r, op::nabla) && l->left->target == r->right->source)
        if (auto p = both("⊗∇", orthogonal(l->left, r->right), orthogonal(l->right, r->left), g, s))
          return p;
      if (auto p = one("orthog-entail", entails(l, negate(r)), g, s)) return p;
      if (auto p = one("symmetry", orthogonal(r, l), g, s)) return p;
      if (auto p = both("orthogonality definition", entails(f_otimes(l, r), f_id(l->source)),
                        entails(f_otimes(r, l), f_id(r->source)), g, s))
        return p;
      if (d >= 3)
        for (const auto& m : middles[{l->source, l->target}]) {
          if (same(m, l)) continue;
          if (auto p = both("cut", orthogonal(l, negate(m)), orthogonal(m, r), g, s)) return p;
        }
    }
    return std::nullopt;
  }
};

}  // namespace

std::optional<derivation> prove_bounded(const language& L, const assertion& goal, search_options opt) {
  searcher S{L, opt, {}, {}, {}, 0};
  S.add_candidates(goal);
  for (std::size_t d = 1; d <= opt.depth; ++d) {
    if (auto p = S.prove(goal, d)) return p;
    if (S.visited > opt.max_nodes) break;
  }
  return std::nullopt;
}

equivalence equal_modulo(const language& L, const formula& a, const formula& b, std::size_t depth,
                         const std::function<bool(const formula&, const formula&)>& separator) {
  if (a->source != b->source || a->target != b->target) throw type_error("equal_modulo of non-parallel formulas");
  search_options opt;
  opt.depth = depth;
  if (prove_bounded(L, entails(a, b), opt) && prove_bounded(L, entails(b, a), opt))
    return equivalence::equivalent;
  if (separator && separator(a, b)) return equivalence::inequivalent_by_model;
  return equivalence::unknown;
}

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

}  // namespace

formula random_formula(const language& L, idx y, idx x, std::size_t depth, std::mt19937_64& rng) {
  std::vector<std::function<formula()>> leaves;
  for (idx a = 0; a < L.atom_count(); ++a) {
    if (L.atom(a).source == y && L.atom(a).target == x) leaves.push_back([&, a] { return f_atom(L, a); });
    if (L.atom(a).source == x && L.atom(a).target == y) leaves.push_back([&, a] { return f_dual(L, a); });
  }
  if (y == x) leaves.push_back([x] { return f_id(x); });
  leaves.push_back([=] { return f_zero(y, x); });
  leaves.push_back([=] { return f_one(y, x); });
  if (depth <= 1 || pick(rng, 4) == 0) return leaves[pick(rng, leaves.size())]();
  const std::size_t k = pick(rng, 4);
  if (k < 2) {
    idx m = idx(pick(rng, L.type_count()));
    formula b = random_formula(L, y, m, depth - 1, rng);
    formula a = random_formula(L, m, x, depth - 1, rng);
    return k == 0 ? f_otimes(b, a) : f_nabla(b, a);
  }
  formula a = random_formula(L, y, x, depth - 1, rng);
  formula b = random_formula(L, y, x, depth - 1, rng);
  return k == 2 ? f_oplus(a, b) : f_triangle(a, b);
}

sequent random_sequent(const language& L, std::size_t length, std::size_t depth, std::mt19937_64& rng) {
  idx cur = idx(pick(rng, L.type_count()));
  sequent s;
  s.empty_type = cur;
  for (std::size_t i = 0; i < length; ++i) {
    idx next = idx(pick(rng, L.type_count()));
    s.items.push_back(random_formula(L, cur, next, depth, rng));
    cur = next;
  }
  return s;
}

namespace {

struct generator {
  const language& L;
  std::mt19937_64& rng;
  std::size_t fdepth = 2;

  formula f(idx y, idx x) { return random_formula(L, y, x, fdepth, rng); }
  idx any_type() { return idx(pick(rng, L.type_count())); }

  derivation entail_leaf(idx y, idx x) {
    formula a = f(y, x);
    switch (pick(rng, 5)) {
      case 0: return node("reflexivity", {}, entails(a, a));
      case 1: return node("bottom", {}, entails(f_zero(y, x), a));
      case 2: return node("1st u.b.", {}, entails(a, f_oplus(a, f(y, x))));
      case 3: return node("2nd u.b.", {}, entails(a, f_oplus(f(y, x), a)));
      default: {
        formula p = pick(rng, 2) ? f_otimes(f_id(y), a) : f_otimes(a, f_id(x));
        return pick(rng, 2) ? node("identity", {}, entails(p, a)) : node("identity", {}, entails(a, p));
      }
    }
  }

  // a derivation of b ⊢ c for some c
  derivation entail_from(const formula& b) {
    const idx y = b->source, x = b->target;
    switch (pick(rng, 3)) {
      case 0: return node("reflexivity", {}, entails(b, b));
      case 1: return node("1st u.b.", {}, entails(b, f_oplus(b, f(y, x))));
      default: return node("identity", {}, entails(b, f_otimes(b, f_id(x))));
    }
  }

  derivation entail(idx y, idx x, std::size_t d) {
    if (d <= 1) return entail_leaf(y, x);
    switch (pick(rng, 8)) {
      case 0: {
        derivation p = entail(x, y, d - 1);
        assertion c = entails(negate(p.conclusion.rhs), negate(p.conclusion.lhs));
        return node("contravariance", {std::move(p)}, c);
      }
      case 1: {
        derivation p = entail(y, x, d - 1);
        derivation q = entail_from(p.conclusion.rhs);
        assertion c = entails(p.conclusion.lhs, q.conclusion.rhs);
        return node("transitivity", {std::move(p), std::move(q)}, c);
      }
      case 2:
      case 3: {
        idx m = any_type();
        derivation p = entail(y, m, d - 1), q = entail(m, x, d - 1);
        bool ot = pick(rng, 2);
        auto mk = ot ? f_otimes : f_nabla;
        assertion c = entails(mk(p.conclusion.lhs, q.conclusion.lhs), mk(p.conclusion.rhs, q.conclusion.rhs));
        return node(ot ? "monotonicity" : "∇-monotonicity", {std::move(p), std::move(q)}, c);
      }
      case 4: {
        derivation p = entail(y, x, d - 1);
        const formula& b = p.conclusion.rhs;
        derivation q = pick(rng, 2) ? node("bottom", {}, entails(f_zero(y, x), b))
                                    : node("reflexivity", {}, entails(b, b));
        assertion c = entails(f_oplus(p.conclusion.lhs, q.conclusion.lhs), b);
        return node("l.u.b.", {std::move(p), std::move(q)}, c);
      }
      case 5: {
        derivation p = orth(y, x, d - 1);
        assertion c = entails(p.conclusion.lhs, negate(p.conclusion.rhs));
        return node("orthog-entail", {std::move(p)}, c);
      }
      case 6:
        if (y == x) {
          idx m = any_type();
          derivation p = orth(y, m, d - 1);
          formula b = p.conclusion.lhs, a = p.conclusion.rhs;
          return node("orthogonality definition", {std::move(p)}, entails(f_otimes(b, a), f_id(y)));
        }
        [[fallthrough]];
      default: return entail_leaf(y, x);
    }
  }

  derivation orth_leaf(idx y, idx x) {
    switch (pick(rng, 3)) {
      case 0: {
        formula a = f(y, x);
        return node("logical axiom", {}, orthogonal(a, negate(a)));
      }
      case 1: return node("zero", {}, orthogonal(f_zero(y, x), f(x, y)));
      default: {
        switch (pick(rng, 4)) {
          case 0: {
            formula a = f(y, x);
            return node("identity", {}, orthogonal(f_otimes(a, f_id(x)), negate(a)));
          }
          case 1: {
            formula a = f(y, x);
            return node("identity", {}, orthogonal(f_otimes(f_id(y), a), negate(a)));
          }
          case 2: {
            formula a = f(x, y);
            return node("identity", {}, orthogonal(negate(a), f_nabla(f_id(x), a)));
          }
          default: {
            formula a = f(x, y);
            return node("identity", {}, orthogonal(negate(a), f_nabla(a, f_id(y))));
          }
        }
      }
    }
  }

  // orthogonality with lhs y -> x
  derivation orth(idx y, idx x, std::size_t d) {
    if (d <= 1) return orth_leaf(y, x);
    switch (pick(rng, 8)) {
      case 0: {
        derivation p = orth(x, y, d - 1);
        assertion c = orthogonal(p.conclusion.rhs, p.conclusion.lhs);
        return node("symmetry", {std::move(p)}, c);
      }
      case 1: {
        derivation p = orth(y, x, d - 1);
        bool first = pick(rng, 2);
        formula other = f(y, x);
        formula t = first ? f_triangle(p.conclusion.lhs, other) : f_triangle(other, p.conclusion.lhs);
        assertion c = orthogonal(t, p.conclusion.rhs);
        return node(first ? "1st △" : "2nd △", {std::move(p)}, c);
      }
      case 2: {
        derivation p = orth(y, x, d - 1);
        const formula& a = p.conclusion.rhs;
        derivation q = pick(rng, 2) ? node("zero", {}, orthogonal(f_zero(y, x), a))
                                    : node("logical axiom", {}, orthogonal(negate(a), a));
        assertion c = orthogonal(f_oplus(p.conclusion.lhs, q.conclusion.lhs), a);
        return node("⊕", {std::move(p), std::move(q)}, c);
      }
      case 3: {
        idx m = any_type();
        derivation p = orth(y, m, d - 1), q = orth(m, x, d - 1);
        assertion c = orthogonal(f_otimes(p.conclusion.lhs, q.conclusion.lhs),
                                 f_nabla(q.conclusion.rhs, p.conclusion.rhs));
        return node("⊗∇", {std::move(p), std::move(q)}, c);
      }
      case 4: {
        derivation p = entail(y, x, d - 1);
        assertion c = orthogonal(p.conclusion.lhs, negate(p.conclusion.rhs));
        return node("orthog-entail", {std::move(p)}, c);
      }
      case 5: {
        derivation p = orth(y, x, d - 1);
        formula b = negate(p.conclusion.rhs);  // so that ¬b is the rhs of p
        derivation q = pick(rng, 2) || d < 3
                           ? node("logical axiom", {}, orthogonal(b, negate(b)))
                           : node("symmetry", {node("zero", {}, orthogonal(f_zero(x, y), b))},
                                  orthogonal(b, f_zero(x, y)));
        assertion c = orthogonal(p.conclusion.lhs, q.conclusion.rhs);
        return node("cut", {std::move(p), std::move(q)}, c);
      }
      case 6:
        if (d >= 3) {
          derivation p = orth(y, x, d - 2);
          formula b = p.conclusion.lhs, a = p.conclusion.rhs;
          derivation e1 = node("orthogonality definition", {p}, entails(f_otimes(b, a), f_id(y)));
          derivation e2 = node("orthogonality definition", {p}, entails(f_otimes(a, b), f_id(x)));
          return node("orthogonality definition", {std::move(e1), std::move(e2)}, orthogonal(b, a));
        }
        [[fallthrough]];
      default: return orth_leaf(y, x);
    }
  }
};

}  // namespace

derivation random_derivation(const language& L, std::size_t depth, std::mt19937_64& rng) {
  if (L.type_count() == 0) throw type_error("language without types");
  generator g{L, rng};
  idx y = g.any_type(), x = g.any_type();
  return pick(rng, 2) ? g.entail(y, x, depth) : g.orth(y, x, depth);
}

namespace {

using detail::sexpr;

struct builder {
  const language& L;
  const std::string& file;

  [[noreturn]] void fail(const sexpr& e, const std::string& what) const {
    throw parse_error(file, e.line, e.col, what);
  }

  const std::string& head(const sexpr& e) const {
    if (!e.is_list || e.items.empty() || e.items[0].is_list) fail(e, "expected a parenthesized form");
    return e.items[0].text;
  }

  idx type(const sexpr& e) const {
    if (e.is_list) fail(e, "expected a type name");
    auto t = L.find_type(e.text);
    if (!t) fail(e, "unknown type '" + e.text + "'");
    return *t;
  }

  idx atom(const sexpr& e) const {
    if (e.is_list) fail(e, "expected an atom name");
    auto a = L.find_atom(e.text);
    if (!a) fail(e, "unknown atom '" + e.text + "'");
    return *a;
  }

  void arity(const sexpr& e, std::size_t n) const {
    if (e.items.size() != n + 1)
      fail(e, "'" + e.items[0].text + "' takes " + std::to_string(n) + " arguments");
  }

  formula form(const sexpr& e) const {
    const std::string& h = head(e);
    try {
      if (h == "atom") {
        if (e.items.size() != 2 && e.items.size() != 4) fail(e, "expected (atom a) or (atom a y x)");
        idx a = atom(e.items[1]);
        if (e.items.size() == 4 &&
            (type(e.items[2]) != L.atom(a).source || type(e.items[3]) != L.atom(a).target))
          fail(e, "atom " + L.atom(a).name + " declared with other types");
        return f_atom(L, a);
      }
      if (h == "dual") {
        arity(e, 1);
        return f_dual(L, atom(e.items[1]));
      }
      if (h == "id") {
        arity(e, 1);
        return f_id(type(e.items[1]));
      }
      if (h == "zero" || h == "one") {
        arity(e, 2);
        idx y = type(e.items[1]), x = type(e.items[2]);
        return h == "zero" ? f_zero(y, x) : f_one(y, x);
      }
      if (h == "neg") {
        arity(e, 1);
        return negate(form(e.items[1]));
      }
      if (h == "ot" || h == "ns" || h == "bs" || h == "bp") {
        arity(e, 2);
        formula a = form(e.items[1]), b = form(e.items[2]);
        if (h == "ot") return f_otimes(a, b);
        if (h == "ns") return f_nabla(a, b);
        if (h == "bs") return f_oplus(a, b);
        return f_triangle(a, b);
      }
    } catch (const type_error& err) {
      fail(e, err.what());
    }
    fail(e, "unknown formula form '" + h + "'");
  }

  assertion assert_(const sexpr& e) const {
    const std::string& h = head(e);
    if (h != "ent" && h != "orth") fail(e, "expected (ent f g) or (orth f g)");
    arity(e, 2);
    formula a = form(e.items[1]), b = form(e.items[2]);
    try {
      return h == "ent" ? entails(a, b) : orthogonal(a, b);
    } catch (const type_error& err) {
      fail(e, err.what());
    }
  }

  derivation deriv(const sexpr& e) const {
    if (head(e) != "rule") fail(e, "expected (rule <name> (premises ...) (concl ...))");
    if (e.items.size() < 3) fail(e, "rule needs a name and a conclusion");
    if (e.items[1].is_list) fail(e.items[1], "rule name must be a symbol or string");
    derivation d;
    d.rule = e.items[1].text;
    bool have_concl = false;
    for (std::size_t i = 2; i < e.items.size(); ++i) {
      const auto& part = e.items[i];
      const std::string& ph = head(part);
      if (ph == "premises") {
        for (std::size_t k = 1; k < part.items.size(); ++k) d.premises.push_back(deriv(part.items[k]));
      } else if (ph == "concl") {
        arity(part, 1);
        d.conclusion = assert_(part.items[1]);
        have_concl = true;
      } else {
        fail(part, "expected (premises ...) or (concl ...)");
      }
    }
    if (!have_concl) fail(e, "rule without a conclusion");
    return d;
  }
};

const detail::sexpr& single(const std::vector<detail::sexpr>& es, const std::string& file) {
  if (es.size() != 1) throw parse_error(file, es.empty() ? 1 : es[1].line, es.empty() ? 1 : es[1].col,
                                        "expected exactly one expression");
  return es[0];
}

}  // namespace

formula parse_formula(const language& L, std::string_view text) {
  const std::string file = "<formula>";
  return builder{L, file}.form(single(detail::parse_sexprs(text, file), file));
}

assertion parse_assertion(const language& L, std::string_view text) {
  const std::string file = "<assertion>";
  return builder{L, file}.assert_(single(detail::parse_sexprs(text, file), file));
}

derivation parse_derivation(const language& L, std::string_view text, const std::string& file) {
  return builder{L, file}.deriv(single(detail::parse_sexprs(text, file), file));
}

namespace {

void emit(const language& L, const derivation& d, int indent, std::string& out) {
  std::string pad(std::size_t(indent) * 2, ' ');
  out += pad + "(rule \"" + d.rule + "\"";
  if (!d.premises.empty()) {
    out += "\n" + pad + "  (premises\n";
    for (const auto& p : d.premises) {
      emit(L, p, indent + 2, out);
      out += "\n";
    }
    out += pad + "  )";
  }
  out += "\n" + pad + "  (concl " + to_sexpr(L, d.conclusion) + "))";
}

}  // namespace

std::string to_sexpr(const language& L, const derivation& d) {
  std::string out;
  emit(L, d, 0, out);
  return out;
}

}  // namespace dialectic
