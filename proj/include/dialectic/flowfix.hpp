#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dialectic/comodal.hpp"
#include "dialectic/heyting.hpp"

namespace dialectic {

// Terms are separated by their direct flow on objects 1 -> y.
report check_separator(const finite_biposet& B, idx one, exec e = exec::parallel);
// a separating type, preferring the smallest endohomset
std::optional<idx> find_separator(const finite_biposet& B, exec e = exec::parallel);

// Obj(x) = hom(1, x) with the homset order
struct object_lattice {
  idx one = 0;
  idx type = 0;
  const homset* hom = nullptr;
  std::size_t size() const { return hom->size(); }
  term at(idx i) const { return term{one, type, i}; }
};

object_lattice objects(const finite_biposet& B, idx one, idx x);

// (·)∘r : Obj(y) -> Obj(x) left adjoint to (·)⟜r : Obj(x) -> Obj(y)
adjoint_pair behavior(const heyting_model& H, idx one, term r);

// adjointness, identity and (contravariant) functoriality of flow, for all
// terms and composable pairs within the budget
report behavior_laws(const heyting_model& H, idx one, exec e = exec::parallel,
                     std::uint64_t budget = 200'000, std::uint64_t seed = 11);

struct dialectical_system {
  term s;
  term r;  // parallel to s
};

// yinyang: φ -> (φ⟜r)∘s on Obj(x)
// yangyin: ψ -> (ψ∘s)⟜r on Obj(y)
// reverse_yinyang: φ -> s∘(r⊸φ) on hom(y, 1)
// reverse_yangyin: φ -> r⊸(s∘φ) on hom(x, 1)
enum class flow_variant { yinyang, yangyin, reverse_yinyang, reverse_yangyin };

struct flow_operator {
  idx source = 0;  // the homset acted on
  idx target = 0;
  std::vector<idx> table;
  idx operator()(idx a) const { return table[a]; }
};

flow_operator yinyang(const heyting_model& H, idx one, const dialectical_system& sys,
                      flow_variant v = flow_variant::yinyang);

enum class extremal { least, greatest };

struct fixpoint_result {
  idx point = npos;
  std::size_t iterations = 0;  // operator applications until stable
  report checks;               // monotone, fixed, extremal among all fixpoints
};

// Kleene iteration from ⊥ (least) or ⊤ (greatest)
fixpoint_result fixpoints(const finite_biposet& B, const flow_operator& F, extremal mode);

// ⋁_v ☯_v^v = Id on Obj(y) and ☯_r^s = ⋁_v ☯_{v∘r}^{v∘s} on Obj(x)
report flow_decompose(const heyting_model& H, idx one, const dialectical_system& sys,
                      const topotype& V);

// flow along r decreasing, (id, id) fixes everything with least fixpoint ⊥,
// flow along a functional f equals flow along f^op∘f
report yinyang_laws(const heyting_model& H, idx one, exec e = exec::parallel);

// Ground Horn programs over finite domains.
struct horn_program {
  struct predicate {
    std::string name;
    std::size_t arity = 0;
    std::string domain;
    std::vector<std::string> values;
  };
  struct ground_atom {
    std::size_t pred = 0;
    std::vector<std::size_t> args;  // value indices
  };
  struct clause {
    std::size_t head = 0;  // ground atom index
    std::vector<std::size_t> body;
  };

  std::vector<predicate> preds;
  std::vector<ground_atom> atoms;  // every ground atom, predicate-major
  std::vector<clause> clauses;

  std::size_t atom_index(std::size_t pred, const std::vector<std::size_t>& args) const;
  std::string atom_name(std::size_t a) const;
};

// `pred p/2 domain d{1..4}` or `domain d{a,b,c}`, `fact p(1,2).`,
// `rule p(X,Z) :- e(X,Y), p(Y,Z).`; rules are grounded over the domains
horn_program parse_horn(std::string_view text, const std::string& filename = "<program>");

// Boolean matrices, one row per clause: S holds the head, R the body.
struct bit_matrix {
  std::size_t rows = 0, cols = 0, words = 0;
  std::vector<std::uint64_t> bits;

  bit_matrix() = default;
  bit_matrix(std::size_t r, std::size_t c) : rows(r), cols(c), words((c + 63) / 64), bits(r * words, 0) {}
  bool get(std::size_t i, std::size_t j) const { return (bits[i * words + j / 64] >> (j % 64)) & 1; }
  void set(std::size_t i, std::size_t j) { bits[i * words + j / 64] |= std::uint64_t(1) << (j % 64); }
  const std::uint64_t* row(std::size_t i) const { return bits.data() + i * words; }
};

using bit_vector = std::vector<std::uint64_t>;

struct horn_matrices {
  bit_matrix S, R;
};
horn_matrices horn_matrices_of(const horn_program& P);

// (φ⟜R)_c: the body of clause c lies in φ
bit_vector enabled_clauses(const bit_matrix& R, const bit_vector& phi, exec e = exec::parallel);
// (ψ∘S)_a: some clause in ψ heads a
bit_vector heads_of(const bit_matrix& S, const bit_vector& psi, exec e = exec::parallel);

struct horn_result {
  bit_vector model;
  std::vector<std::size_t> atoms;  // derived ground atoms, sorted
  std::size_t iterations = 0;      // applications of the operator that changed φ
};

horn_result horn_eval(const horn_program& P, exec e = exec::parallel);

}  // namespace dialectic
