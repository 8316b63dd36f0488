#pragma once

#include <optional>
#include <vector>

#include "dialectic/heyting.hpp"

namespace dialectic {

// Ω(x): the endoterms u ⪯ x with u∘u = u, ordered by entailment.
struct comonoid_lattice {
  idx type = 0;
  std::vector<idx> members;  // homset elements, ascending
  std::vector<idx> position;  // homset element -> index in members, or npos
  poset_ptr order;
  report checks;  // closure under joins, local standardization, meet = ∘
  bool standard = false;

  bool contains(idx e) const { return e < position.size() && position[e] != npos; }
  term at(std::size_t i) const { return term{type, type, members[i]}; }
};

comonoid_lattice comonoids_at(const finite_biposet& B, idx x, exec e = exec::parallel);

// ⋁ of the comonoids below p; p must be an endoterm at L.type
term interior(const finite_biposet& B, const comonoid_lattice& L, term p);
// u ⇒ v = ⌞u⊸v⌟; throws capability_error if L is not locally standard
term comonoid_implication(const heyting_model& H, const comonoid_lattice& L, term u, term v);

// inclusion ⊣ interior, idempotence, meet preservation, residuation of ⇒,
// Hoare fibers and split comonoids of subtypes, at every type
report comonoid_laws(const heyting_model& H, exec e = exec::parallel);

// Ω^f(v) = f^op∘v∘f on Ω(y) -> Ω(x) and Ω_f(u) = ⌞f∘u∘f^op⌟ back, for a
// functional f: y -> x. Throws type_error if f is not functional.
adjoint_pair comonoid_images(const finite_biposet& B, term f);

struct filters {
  std::vector<idx> source;  // v in Ω(y) with r ⪯ v∘r
  std::vector<idx> target;  // u in Ω(x) with r ⪯ r∘u
  report checks;           // both upward closed and ∘-closed
};

filters filters_of(const finite_biposet& B, term r);
bool is_coprocess(const finite_biposet& B, term v, term r, term u);

struct hoare_triple {
  term pre;   // v: y
  term flow;  // r: y -> x
  term post;  // u: x
  bool operator==(const hoare_triple&) const = default;
};

// v∘r ⪯ r∘u
bool hoare(const finite_biposet& B, const hoare_triple& t);
// {w}s{v} ∘ {v}r{u} = {w}(s∘r){u}; shape_error when the middle comonoids differ
hoare_triple hoare_compose(const finite_biposet& B, const hoare_triple& a,
                           const hoare_triple& b);
hoare_triple hoare_identity(const finite_biposet& B, term u);
// same frame required
hoare_triple hoare_join(const finite_biposet& B, const hoare_triple& a, const hoare_triple& b);

report hoare_laws(const finite_biposet& B, exec e = exec::parallel,
                  std::uint64_t budget = 2'000'000, std::uint64_t seed = 3);

struct domain_info {
  term domain;        // least comonoid v with v∘r = r
  term totalization;  // domain∘r
  bool total = false;
};

domain_info domain_totalization(const finite_biposet& B, term r);

// dom(id) = id, dom(⊥) = ⊥, dom(r) = ⊥ only for r = ⊥, functional terms
// total, totals closed under composition, monotonicity, the composition
// axiom. Whether the totalization recovers r is reported as a note.
report domain_laws(const finite_biposet& B, exec e = exec::parallel);

// subtype order between x-subtypes i: y -> x and j: z -> x: a functional h
// with i = h∘j and q∘h^op = p, searched over hom(y, z)
std::optional<term> subtype_le(const finite_biposet& B, term i, term j);

// A set of comonoids at one type closed under ∘ and ∨ and containing ⊥ and id.
struct topotype {
  idx type = 0;
  std::vector<idx> members;  // ascending homset elements
  bool operator==(const topotype&) const = default;
};

struct topotype_closure {
  topotype closed;
  std::vector<idx> added;  // elements the closure had to add
  report checks;           // members are comonoids
};

topotype_closure close_topotype(const finite_biposet& B, idx x, std::vector<idx> generators);
// {⊥, id}
topotype indiscrete(const finite_biposet& B, idx x);
std::vector<topotype> all_topotypes(const finite_biposet& B, idx x);
// `topo x: {e1,e2,...}` naming endoterms; closed under ∘ and ∨ before use.
// Throws parse_error on unknown names and model_error when a closure
// would add elements.
topotype parse_topotype(const finite_biposet& B, std::string_view literal);

// rows indexed by V (source), columns by U (target), row-major terms
struct topomatrix {
  topotype rows;
  topotype cols;
  std::vector<term> entries;

  const term& at(std::size_t v, std::size_t u) const { return entries[v * cols.members.size() + u]; }
};

// entries are coprocesses v∘r∘u = r and indexing is monotone
report validate_topomatrix(const finite_biposet& B, const topomatrix& R);
topomatrix decompose(const finite_biposet& B, term r, const topotype& V, const topotype& U);
term join_term(const finite_biposet& B, const topomatrix& R);
// (S∘R)_{wu} = ⋁_v s_{wv}∘r_{vu}; shape_error on mismatched topotypes
topomatrix matrix_product(const finite_biposet& B, const topomatrix& S, const topomatrix& R);
// (u'∘u)
topomatrix topo_identity(const finite_biposet& B, const topotype& U);
// ι_U = #_{U,{⊥,x}}(x) and π_U = #_{{⊥,x},U}(x)
topomatrix iota(const finite_biposet& B, const topotype& U);
topomatrix pi(const finite_biposet& B, const topotype& U);

// ⋁∘# = id, # of a term is a topomatrix, #∘⋁ = id on decomposition
// matrices, ι and π mutually inverse, # maps ∘ to the matrix product and id
// to the identity matrix. pairs lists topotype pairs (V at y, U at x).
report representation_laws(const finite_biposet& B,
                           const std::vector<std::pair<topotype, topotype>>& pairs,
                           exec e = exec::parallel);

// The eight tupling identities relating component flows to whole-term flows,
// over every topotype at every type and terms up to the budget.
report flow_decomposition_identities(const heyting_model& H, exec e = exec::parallel,
                                     std::uint64_t budget = 200'000, std::uint64_t seed = 5);

}  // namespace dialectic
