#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "dialectic/common.hpp"

namespace dialectic {

// A finite partial order on {0, ..., n-1}.
class finite_poset {
 public:
  finite_poset() = default;

  // le must already be reflexive, transitive and antisymmetric
  static finite_poset from_relation(std::size_t n,
                                    const std::function<bool(idx, idx)>& le,
                                    std::size_t bound = default_carrier_bound);
  // reflexive-transitive closure of the listed pairs (a, b) meaning a <= b
  static finite_poset generated(std::size_t n,
                                const std::vector<std::pair<idx, idx>>& pairs,
                                std::size_t bound = default_carrier_bound);
  static finite_poset chain(std::size_t n);
  static finite_poset antichain(std::size_t n);

  finite_poset dual() const;

  std::size_t size() const { return n_; }
  bool le(idx a, idx b) const { return le_[std::size_t(a) * n_ + b] != 0; }

  std::optional<idx> join(idx a, idx b) const;
  std::optional<idx> meet(idx a, idx b) const;
  std::optional<idx> bottom() const;
  std::optional<idx> top() const;

  bool operator==(const finite_poset& o) const {
    return n_ == o.n_ && le_ == o.le_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> le_;
};

using poset_ptr = std::shared_ptr<const finite_poset>;

struct monotone_map {
  poset_ptr source;
  poset_ptr target;
  std::vector<idx> table;

  // throws model_error when the table is not total or not monotone
  static monotone_map make(poset_ptr source, poset_ptr target,
                           std::vector<idx> table);
  idx operator()(idx a) const { return table[a]; }
};

// an order-reversing endomap of p, read as a monotone map p -> p^op
monotone_map antitone_map(const poset_ptr& p, std::vector<idx> table);
monotone_map identity_map(const poset_ptr& p);
// diagrammatic composite: first f, then g
monotone_map then(const monotone_map& f, const monotone_map& g);

struct adjoint_verdict {
  bool is_adjoint = false;
  bool is_reflective = false;
  bool is_coreflective = false;
  bool is_inverse = false;
};

// f: B -> A, g: A -> B. Adjoint when f(b) <= a iff b <= g(a). Reflective when
// the counit is an equality (f(g(a)) = a), coreflective when the unit is one.
adjoint_verdict check_adjoint_pair(const monotone_map& f,
                                   const monotone_map& g);

class adjoint_pair {
 public:
  // throws model_error unless f is left adjoint to g
  static adjoint_pair make(monotone_map f, monotone_map g);
  const monotone_map& left() const { return f_; }
  const monotone_map& right() const { return g_; }
  const adjoint_verdict& verdict() const { return v_; }

 private:
  monotone_map f_, g_;
  adjoint_verdict v_;
};

struct closure_interior {
  monotone_map closure;   // b -> g(f(b)) on B
  monotone_map interior;  // a -> f(g(a)) on A
  std::vector<idx> closed_elements;
  std::vector<idx> open_elements;
  // closed b paired with the open f(b); g inverts it
  std::vector<std::pair<idx, idx>> iso_witness;
};

closure_interior closure_interior_images(const adjoint_pair& p);

struct negation_verdict {
  bool is_self_adjoint = false;
  bool involutive_on_closed = false;
  bool demorgan_holds = false;
  std::size_t demorgan_pairs = 0;  // pairs where both join and meet exist
  std::vector<idx> closed;         // fixed points of f twice
};

// f must be a monotone map p -> p^op
negation_verdict check_negation_involution(const monotone_map& f);

}  // namespace dialectic
