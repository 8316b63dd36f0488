#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dialectic/order.hpp"
#include "dialectic/report.hpp"

namespace dialectic {

// A term y -> x: source y, target x, element index inside hom(y, x).
struct term {
  idx source = 0;
  idx target = 0;
  idx elem = 0;
  bool operator==(const term&) const = default;
  auto operator<=>(const term&) const = default;
};

struct homset {
  std::vector<std::string> names;
  poset_ptr order;
  std::vector<idx> join_table;  // n*n, empty when joins are not provided
  std::vector<idx> meet_table;
  idx bottom = npos;
  idx top = npos;

  std::size_t size() const { return names.size(); }
  bool le(idx a, idx b) const { return order->le(a, b); }
  bool has_joins() const { return !join_table.empty() && bottom != npos; }
  bool has_meets() const { return !meet_table.empty() && top != npos; }
  idx join(idx a, idx b) const { return join_table[std::size_t(a) * size() + b]; }
  idx meet(idx a, idx b) const { return meet_table[std::size_t(a) * size() + b]; }
};

// Composition is diagrammatic: for s: z -> y and r: y -> x the composite
// s∘r is z -> x.
class finite_biposet {
 public:
  class builder;

  std::size_t type_count() const { return types_.size(); }
  const std::string& type_name(idx t) const { return types_[t]; }
  std::optional<idx> find_type(std::string_view name) const;

  const homset& hom(idx y, idx x) const { return homs_[y * types_.size() + x]; }
  std::size_t hom_size(idx y, idx x) const { return hom(y, x).size(); }

  // raw lookup, no checking
  idx compose_raw(idx z, idx y, idx x, idx s, idx r) const {
    return comp_[(std::size_t(z) * types_.size() + y) * types_.size() + x]
                [std::size_t(s) * hom_size(y, x) + r];
  }
  idx identity_raw(idx x) const { return ident_[x]; }

  term compose(term s, term r) const;
  bool entails(term r, term s) const;
  term identity(idx x) const { return term{x, x, ident_[x]}; }
  term bottom(idx y, idx x) const;
  term top(idx y, idx x) const;
  term join(term a, term b) const;
  term meet(term a, term b) const;

  bool has_joins() const;
  bool has_meets() const;

  std::optional<term> find_term(idx y, idx x, std::string_view name) const;
  const std::string& name(term t) const { return hom(t.source, t.target).names[t.elem]; }
  // "name:y->x"
  std::string describe(term t) const;

  // a copy with one composition cell overwritten; test fault injection
  finite_biposet with_composition_cell(idx z, idx y, idx x, idx s, idx r,
                                       idx value) const;

 private:
  std::vector<std::string> types_;
  std::vector<homset> homs_;
  std::vector<std::vector<idx>> comp_;
  std::vector<idx> ident_;
};

class finite_biposet::builder {
 public:
  explicit builder(std::vector<std::string> type_names,
                   std::size_t bound = default_carrier_bound);

  std::size_t type_count() const { return b_.types_.size(); }

  // order from a predicate; joins and meets derived from the order when the
  // homset is a lattice unless set explicitly afterwards
  builder& set_homset(idx y, idx x, std::vector<std::string> names,
                      const std::function<bool(idx, idx)>& le);
  builder& set_homset(idx y, idx x, std::vector<std::string> names, poset_ptr order);
  builder& set_joins(idx y, idx x, const std::function<idx(idx, idx)>& join, idx bottom);
  builder& set_meets(idx y, idx x, const std::function<idx(idx, idx)>& meet, idx top);
  builder& set_composition(idx z, idx y, idx x,
                           const std::function<idx(idx, idx)>& comp);
  builder& set_composition_table(idx z, idx y, idx x, std::vector<idx> table);
  builder& set_identity(idx x, idx e);

  // throws model_error when something is missing or out of range
  finite_biposet build();

 private:
  void derive_lattice(homset& h);

  finite_biposet b_;
  std::size_t bound_;
  std::vector<bool> join_set_, meet_set_, comp_set_, ident_set_;
};

struct biposet_flags {
  bool join_bisemilattice = false;
  bool meet_bisemilattice = false;
  bool complete_heyting = false;
};

// accepts comma separated "join", "meet", "cHc", "biposet"
biposet_flags parse_biposet_flags(std::string_view s);

// Exhaustive check of the biposet axioms and whichever lattice laws the flags
// request. Every violated instance is counted; a bounded number is named.
report validate_biposet(const finite_biposet& B, biposet_flags flags,
                        exec e = exec::parallel);

struct orthogonality_verdict {
  bool semi_at_target = false;  // s∘r ⪯ id_x
  bool semi_at_source = false;  // r∘s ⪯ id_y
  bool orthogonal = false;
};

struct orthoterm {
  term fwd;  // y -> x
  term bwd;  // x -> y
};

// r: y -> x, s: x -> y
orthogonality_verdict orthogonality(const finite_biposet& B, term r, term s);
// all s opposed to r with r ⊥ s; throws model_error if the result is not an
// ideal (down-closed, contains ⊥, closed under binary joins)
std::vector<term> orthogonality_ideal(const finite_biposet& B, term r);

struct functional_info {
  term adjoint;  // f^op
  bool coreflective = false;  // f∘f^op = id_y
  bool reflective = false;    // f^op∘f = id_x
  bool inverse = false;
  bool subtype = false;
};

std::optional<functional_info> functional_adjoint(const finite_biposet& B, term f);

bool is_quasisymmetric(const finite_biposet& B, term r);
// r∘s ⪰ id_y iff s∘r ⪰ id_x for every opposed s. Not the same predicate as
// the Heyting notion (r is the negation of a quasisymmetric term).
bool is_biposet_coquasisymmetric(const finite_biposet& B, term r);

// Keeps the listed elements of each homset (kept[y*T+x] sorted). Throws when
// identities are dropped or composition leaves the subset. Joins and meets
// are kept where the subset is closed under them.
struct sub_biposet_result {
  finite_biposet sub;
  std::vector<std::vector<idx>> embedding;  // per homset: sub elem -> base elem
};
sub_biposet_result sub_biposet(const finite_biposet& B,
                               const std::vector<std::vector<idx>>& kept);

struct center_info {
  std::vector<std::vector<std::uint8_t>> per_term;  // [y*T+x][elem]
  report checks;
  sub_biposet_result center;

  bool quasisymmetric(const finite_biposet& B, term t) const {
    return per_term[t.source * B.type_count() + t.target][t.elem] != 0;
  }
};

center_info quasisymmetry_center(const finite_biposet& B, exec e = exec::parallel);

// P^f(q) = f^op∘q∘f on hom(y,y) -> hom(x,x) and P_f(p) = f∘p∘f^op back
adjoint_pair direct_inverse_image(const finite_biposet& B, term f);

// Orthoterm composition, ideal closure, lax contravariance of ⊥(·) and
// adjoint uniqueness, exhaustive up to the budget.
report biposet_laws(const finite_biposet& B, exec e = exec::parallel,
                    std::uint64_t budget = 4'000'000, std::uint64_t seed = 1);

}  // namespace dialectic
