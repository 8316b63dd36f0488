#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "dialectic/report.hpp"

namespace dialectic {

struct atom_symbol {
  std::string name;
  idx source = 0;
  idx target = 0;
};

// Type symbols and atoms; each atom a: y -> x has a dual x -> y.
class language {
 public:
  idx add_type(std::string name);
  idx add_atom(std::string name, idx source, idx target);

  std::size_t type_count() const { return types_.size(); }
  std::size_t atom_count() const { return atoms_.size(); }
  const std::string& type_name(idx t) const { return types_[t]; }
  const atom_symbol& atom(idx a) const { return atoms_[a]; }
  std::optional<idx> find_type(std::string_view name) const;
  std::optional<idx> find_atom(std::string_view name) const;

 private:
  std::vector<std::string> types_;
  std::vector<atom_symbol> atoms_;
};

// `type x y ...` and `atom a y x` lines; '#' comments
language parse_language(std::string_view text, const std::string& filename = "<language>");

enum class op : std::uint8_t { atom, dual, id, zero, one, otimes, nabla, oplus, triangle };

struct formula_node;
using formula = std::shared_ptr<const formula_node>;

struct formula_node {
  op kind;
  idx atom = npos;  // atom and dual
  idx source = 0;
  idx target = 0;
  formula left, right;  // binary: left is the first factor (source side)
  std::size_t hash = 0;
  std::size_t size = 1;
  std::size_t depth = 1;
};

// typed constructors; type_error when the shapes do not fit
formula f_atom(const language& L, idx a);
formula f_dual(const language& L, idx a);
formula f_id(idx x);
formula f_zero(idx y, idx x);
formula f_one(idx y, idx x);
// b: z -> y, a: y -> x give z -> x
formula f_otimes(formula b, formula a);
formula f_nabla(formula b, formula a);
formula f_oplus(formula a, formula b);
formula f_triangle(formula a, formula b);

bool same(const formula& a, const formula& b);
struct formula_less {
  bool operator()(const formula& a, const formula& b) const;
};

formula negate(const formula& f);

// prefix syntax: (atom a y x) (dual a) (id x) (zero y x) (one y x)
// (ot f g) (ns f g) (bs f g) (bp f g)
std::string to_sexpr(const language& L, const formula& f);
// infix, for messages
std::string to_infix(const language& L, const formula& f);

// A path α_n ∘ ... ∘ α_1 stored source first: items[0] = α_n starts at the
// sequent source. Empty sequents carry their type.
struct sequent {
  std::vector<formula> items;
  idx empty_type = 0;

  idx source() const { return items.empty() ? empty_type : items.front()->source; }
  idx target() const { return items.empty() ? empty_type : items.back()->target; }
};

// type_error unless consecutive items compose
sequent make_sequent(std::vector<formula> items, idx empty_type = 0);
sequent concat(const sequent& b, const sequent& a);
// ⊗(ε_x) = x, ⊗(β∘α) = β ⊗ ⊗(α)
formula tensor_product(const sequent& s);
// ∇(ε_x) = x, ∇(β∘α) = ∇(β) ∇ α; a single term gives y∇α
formula tensor_sum(const sequent& s);
// ¬α_1 ∘ ... ∘ ¬α_n
sequent vector_negation(const sequent& s);

struct assertion {
  enum kind_t : std::uint8_t { entail, orth } kind = entail;
  formula lhs, rhs;  // entail: α ⊢ β parallel; orth: β ⊥ α opposed
};

assertion entails(formula a, formula b);
assertion orthogonal(formula b, formula a);
bool same(const assertion& a, const assertion& b);
std::string to_sexpr(const language& L, const assertion& a);
std::string to_infix(const language& L, const assertion& a);

struct derivation {
  std::string rule;
  std::vector<derivation> premises;
  assertion conclusion;

  std::size_t depth() const;
  std::size_t size() const;
};

// Rule names: the canonical spellings and ASCII aliases. Returns the
// canonical name or nothing.
std::optional<std::string> canonical_rule(std::string_view name);
std::vector<std::string> rule_names();

// an extra rule: premises' conclusions and the conclusion; an error message
// when the instance does not fit
using rule_fn = std::function<std::optional<std::string>(const std::vector<assertion>&,
                                                          const assertion&)>;
using rule_table = std::map<std::string, rule_fn, std::less<>>;

struct derivation_check {
  bool ok = true;
  std::size_t nodes = 0;
  std::string path;  // of the first failing node, e.g. "root.1.0"
  std::string message;
};

derivation_check check_derivation(const language& L, const derivation& d,
                                  const rule_table& extra = {});
report derivation_report(const language& L, const derivation& d, const rule_table& extra = {});

// rewrites every derived "∇-monotonicity" node into core rules
derivation expand_derived(const derivation& d);

// componentwise derivations pi: α_i ⊢ β_i of two parallel sequents give
// ⊗(α) ⊢ ⊗(β) by monotonicity over reflexivity at the target
derivation lift_vector_entailment(const sequent& a, const sequent& b,
                                  const std::vector<derivation>& components);

struct search_options {
  std::size_t depth = 5;
  std::size_t max_nodes = 2'000'000;  // visited goal budget
};

// Iterative deepening backward search over all rule schemas; transitivity
// and cut draw their middle formula from the subformulas of the goal, their
// negations, identity-padded and stripped forms, and 0/1.
std::optional<derivation> prove_bounded(const language& L, const assertion& goal,
                                        search_options opt = {});

enum class equivalence { equivalent, inequivalent_by_model, unknown };

// separator: true when some structure tells the formulas apart
equivalence equal_modulo(const language& L, const formula& a, const formula& b,
                         std::size_t depth,
                         const std::function<bool(const formula&, const formula&)>& separator = {});

// seeded generators
formula random_formula(const language& L, idx y, idx x, std::size_t depth, std::mt19937_64& rng);
sequent random_sequent(const language& L, std::size_t length, std::size_t depth,
                       std::mt19937_64& rng);
// a derivation of height at most depth; always passes check_derivation
derivation random_derivation(const language& L, std::size_t depth, std::mt19937_64& rng);

// Parses formulas, assertions and derivations in the prefix syntax.
formula parse_formula(const language& L, std::string_view text);
assertion parse_assertion(const language& L, std::string_view text);
derivation parse_derivation(const language& L, std::string_view text,
                            const std::string& filename = "<proof>");
std::string to_sexpr(const language& L, const derivation& d);

}  // namespace dialectic
