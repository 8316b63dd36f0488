#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "dialectic/biposet.hpp"

namespace dialectic {

enum class side { left, right };

// A finite biposet whose composition has right adjoints on both sides.
// r⊸t (r: y->x, t: y->z) is x->z; s⟜r (s: z->x, r: y->x) is z->y.
class heyting_model {
 public:
  // closed-form implications a model may supply; audited like the sweep
  struct closed_forms {
    std::function<idx(idx y, idx x, idx z, idx r, idx t)> left;
    std::function<idx(idx z, idx y, idx x, idx s, idx r)> right;
  };

  // implications by sweep over the homset; throws model_error when the
  // dialectical axioms fail or lattice structure is missing
  static heyting_model build(std::shared_ptr<const finite_biposet> base,
                             exec e = exec::parallel);
  static heyting_model build(std::shared_ptr<const finite_biposet> base,
                             const closed_forms& forms, exec e = exec::parallel);

  const finite_biposet& base() const { return *base_; }
  const std::shared_ptr<const finite_biposet>& base_ptr() const { return base_; }
  std::size_t type_count() const { return base_->type_count(); }

  idx left_raw(idx y, idx x, idx z, idx r, idx t) const {
    const std::size_t T = type_count();
    return left_[(y * T + x) * T + z][std::size_t(r) * base_->hom_size(y, z) + t];
  }
  idx right_raw(idx z, idx y, idx x, idx s, idx r) const {
    const std::size_t T = type_count();
    return right_[(z * T + y) * T + x][std::size_t(s) * base_->hom_size(y, x) + r];
  }
  // ¬r as an element of hom(x, y)
  idx negation_raw(idx y, idx x, idx r) const { return neg_[y * type_count() + x][r]; }

  term left_imply(term r, term t) const;   // r⊸t
  term right_imply(term s, term r) const;  // s⟜r
  // left: (r, t) with a common source; right: (s, r) with a common target
  term tensor_imply(side sd, term a, term b) const;

  term negation(term r) const;
  term double_negation(term r) const;
  bool dn_closed(term r) const { return double_negation(r) == r; }
  std::vector<term> dn_closed_terms(idx y, idx x) const;

  term compose(term s, term r) const { return base_->compose(s, r); }

 private:
  std::shared_ptr<const finite_biposet> base_;
  std::vector<std::vector<idx>> left_, right_, neg_;
};

using heyting_ptr = std::shared_ptr<const heyting_model>;

// both dialectical axioms, exhaustive
report audit_dialectical_axioms(const heyting_model& H, exec e = exec::parallel);

struct classical_pair {
  term otimes;  // ¬¬(s∘r)
  term nabla;   // ¬(¬r∘¬s)
};
struct boolean_pair {
  term oplus;     // ¬¬(a∨b)
  term triangle;  // a∧b
};
classical_pair classical_connectives(const heyting_model& H, term s, term r);
boolean_pair boolean_connectives(const heyting_model& H, term a, term b);

// ¬¬s∘¬¬r ⪯ ¬¬(s∘r) for every composable pair of quasisymmetric terms
report functoriality_lemma_check(const heyting_model& H, exec e = exec::parallel);

// r is the negation of some quasisymmetric term
bool is_heyting_coquasisymmetric(const heyting_model& H, term r);

// ¬¬ of the join of the central terms below r, or nothing when that join is
// not central
std::optional<term> pole(const heyting_model& H, term r);

// The derived laws: modus ponens, mixed associativity, join/meet conversion,
// negation characterization, ¬¬ closure, DeMorgan, quasisymmetric negation,
// functional complements, isomorphism law.
report heyting_laws(const heyting_model& H, exec e = exec::parallel,
                    std::uint64_t budget = 4'000'000, std::uint64_t seed = 1);

// A finite Boolean category given by tables. Every homset carries ⊕ (join),
// △ (meet), 0 and 1; ⊗ and ∇ compose; ¬ swaps source and target. Entries may
// be npos when an operation leaves the carrier; the validator reports them.
class boolean_category {
 public:
  struct hom_data {
    std::vector<std::string> names;
    poset_ptr order;
    std::vector<idx> oplus, triangle;  // n*n
    idx zero = npos, one = npos;
    std::vector<idx> neg;  // elem of hom(y,x) -> elem of hom(x,y)
    std::size_t size() const { return names.size(); }
  };

  boolean_category() = default;
  boolean_category(std::vector<std::string> types, std::vector<hom_data> homs,
                   std::vector<std::vector<idx>> otimes,
                   std::vector<std::vector<idx>> nabla, std::vector<idx> ident);

  std::size_t type_count() const { return types_.size(); }
  const std::string& type_name(idx t) const { return types_[t]; }
  std::optional<idx> find_type(std::string_view name) const;
  const hom_data& hom(idx y, idx x) const { return homs_[y * types_.size() + x]; }
  std::size_t hom_size(idx y, idx x) const { return hom(y, x).size(); }

  idx otimes_raw(idx z, idx y, idx x, idx s, idx r) const {
    return otimes_[(std::size_t(z) * types_.size() + y) * types_.size() + x]
                  [std::size_t(s) * hom_size(y, x) + r];
  }
  idx nabla_raw(idx z, idx y, idx x, idx s, idx r) const {
    return nabla_[(std::size_t(z) * types_.size() + y) * types_.size() + x]
                 [std::size_t(s) * hom_size(y, x) + r];
  }
  idx identity_raw(idx x) const { return ident_[x]; }

  bool le(term a, term b) const;
  term otimes(term s, term r) const;
  term nabla(term s, term r) const;
  term oplus(term a, term b) const;
  term triangle(term a, term b) const;
  term neg(term r) const;
  term zero(idx y, idx x) const { return term{y, x, hom(y, x).zero}; }
  term one(idx y, idx x) const { return term{y, x, hom(y, x).one}; }
  term identity(idx x) const { return term{x, x, ident_[x]}; }
  // s ⊗-orthogonal to r: s: x->y, r: y->x, s⊗r ⪯ x and r⊗s ⪯ y
  bool orthogonal(term s, term r) const;

  std::optional<term> find_term(idx y, idx x, std::string_view name) const;
  std::string describe(term t) const;

 private:
  std::vector<std::string> types_;
  std::vector<hom_data> homs_;
  std::vector<std::vector<idx>> otimes_, nabla_;
  std::vector<idx> ident_;
};

report validate_boolean_category(const boolean_category& B, exec e = exec::parallel);

struct boolean_center_model {
  heyting_ptr source;
  boolean_category cat;
  // per homset of the source: carrier index -> source element
  std::vector<std::vector<idx>> carrier;
  // terms that are ¬¬-closed but not central, per homset
  std::vector<std::vector<idx>> closed_not_central;
};

// carrier = polar terms (¬¬-closed and quasisymmetric)
boolean_center_model boolean_center(heyting_ptr H, exec e = exec::parallel);

struct heyting_center_result {
  std::shared_ptr<heyting_model> model;  // null when the axioms fail
  report checks;
};

// composition ⊗, joins ⊕, meets △; compares the sweep implications with
// r⊸t = ¬r∇t and s⟜r = s∇¬r and the sweep negation with ¬
heyting_center_result heyting_center(const boolean_category& B, exec e = exec::parallel);

// same types, names, order and all operation tables
report compare_boolean_categories(const boolean_category& a, const boolean_category& b);

}  // namespace dialectic
