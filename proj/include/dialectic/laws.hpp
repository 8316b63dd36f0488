#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dialectic/calculus.hpp"
#include "dialectic/comodal.hpp"
#include "dialectic/models.hpp"
#include "dialectic/semantics.hpp"

namespace dialectic {

struct law_options {
  std::size_t depth = 6;           // derivation height for soundness
  std::size_t derivations = 1000;  // soundness corpus size
  std::uint64_t seed = 1;
  std::vector<std::string> topotypes;  // `topo x: {...}` literals; empty = all
  exec mode = exec::parallel;
};

struct law_entry {
  std::string name;
  std::string summary;
  std::function<report(const model_handle&, const law_options&)> run;
};

// sorted by name
const std::vector<law_entry>& law_registry();

struct law_outcome {
  std::string name;
  bool applicable = true;  // false when the model lacks a capability
  std::string reason;
  report result;
  bool passed() const { return !applicable || result.ok(); }
};

// Runs the named laws (all when empty) in registry order. With jobs > 1 the
// laws themselves run concurrently and their kernels serially.
std::vector<law_outcome> run_laws(const model_handle& M, const std::vector<std::string>& names,
                                  const law_options& opt, int jobs = 1);

// x, y with a: x -> x, b: x -> y, c: y -> x
language three_atom_language();
// the center of H with x at type 0 and y at type 1 when there is one
structure_frame default_frame(const model_handle& M, exec e = exec::parallel);

}  // namespace dialectic
