#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dialectic/calculus.hpp"
#include "dialectic/heyting.hpp"

namespace dialectic {

using boolean_ptr = std::shared_ptr<const boolean_category>;

// A Boolean category with a type assignment; atoms still free.
struct structure_frame {
  std::string name;
  boolean_ptr cat;
  std::vector<idx> type_map;  // language type -> category type
};

struct classical_structure {
  std::string name;
  boolean_ptr cat;
  std::vector<idx> type_map;
  std::vector<idx> atom_map;  // atom -> element of hom(T(y), T(x)), npos when unmapped
};

// the Boolean center of H; throws model_error unless it validates
boolean_ptr validated_center(const heyting_ptr& H, exec e = exec::parallel);

// throws type_error when a type or atom is sent outside the category or an
// atom lands in the wrong homset
classical_structure make_structure(const language& L, const structure_frame& F,
                                   std::vector<idx> atom_map);

// model_error on an unmapped atom; duals go to negations
term interpret(const classical_structure& S, const formula& f);

enum class polarity { polar, antipolar };
// polar: the ⊗-term, antipolar: the ∇-term
term interpret_sequent(const classical_structure& S, const sequent& s, polarity p);

bool is_valid(const classical_structure& S, const assertion& a);

// Every node of every derivation checked valid in every structure. A
// violation names the derivation, node path and structure.
report soundness_harness(const language& L, const std::vector<derivation>& derivations,
                         const std::vector<classical_structure>& structures,
                         const rule_table& extra = {}, exec e = exec::parallel);

// All atom maps of a frame, in lexicographic order. Throws model_error when
// their number exceeds limit.
std::vector<classical_structure> all_structures(const language& L, const structure_frame& F,
                                                std::size_t limit = 1'000'000);

struct refutation {
  bool refuted = false;  // unrefuted is not a proof of validity
  std::optional<classical_structure> witness;
  std::uint64_t tried = 0;
};

// searches every atom assignment of every frame for a countermodel
refutation tautology_semidecision(const language& L, const assertion& a,
                                  const std::vector<structure_frame>& frames,
                                  std::uint64_t limit = 1'000'000);

// Structure file lines: `model <descriptor>`, `type x -> <modeltype>`,
// `atom a -> <termname>`; '#' comments. The model enters through its center.
classical_structure parse_structure(const language& L, std::string_view text,
                                    const std::string& filename = "<structure>",
                                    exec e = exec::parallel);

}  // namespace dialectic
