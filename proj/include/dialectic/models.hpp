#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dialectic/heyting.hpp"

namespace dialectic {

// Element naming: sets are written with braces and '|' separators, e.g.
// "{a|b}", "{0.1|1.0}" for relations (pair source.target), "{ε|ab}" for
// languages, "{}" for the empty set. Tropical elements are "0".."K", "inf".
// Matrices are "[e00|e01;e10|e11]" in row-major order.

heyting_ptr make_bool2(exec e = exec::parallel);
heyting_ptr make_powerset(std::size_t n, exec e = exec::parallel);
// homset elements are bitmasks: bit (i * |x| + j) holds the pair (i, j)
heyting_ptr make_rel(const std::vector<std::size_t>& sizes, exec e = exec::parallel,
                     bool closed_form = true);

enum class saturation { to_cap, to_infinity };
// carrier 0..cap and inf, ordered by reversed magnitude; element index i is
// the value i, index cap+1 is inf
heyting_ptr make_tropical(unsigned cap, saturation sat = saturation::to_cap,
                          exec e = exec::parallel);
// strings up to maxlen in shortlex order; a language is a bitmask over them
heyting_ptr make_language(std::string alphabet, unsigned maxlen, exec e = exec::parallel);
std::vector<std::string> language_strings(const std::string& alphabet, unsigned maxlen);

enum class subset_variant { subset, closure, closed };

struct subset_family {
  heyting_ptr model;
  // per homset: element -> bitmask over base homset elements. For the
  // closure variant the mask is the down-closed representative of the class.
  std::vector<std::vector<std::uint64_t>> sets;
  // closure variant: the class of an arbitrary subset mask
  std::function<idx(idx y, idx x, std::uint64_t mask)> class_of;
};

subset_family make_subset_family(const finite_biposet& base, subset_variant v,
                                 exec e = exec::parallel);

struct typed_vector {
  std::vector<idx> typing;  // index -> base type
};

enum class matrix_implications { formulas, sweep };

class matrix_model {
 public:
  const heyting_ptr& model() const { return model_; }
  const heyting_ptr& base() const { return base_; }
  const std::vector<typed_vector>& vectors() const { return vectors_; }

  // row-major base elements of a matrix term
  std::vector<idx> entries(term t) const;
  idx encode(idx Y, idx X, const std::vector<idx>& entries) const;
  // the component formulas (S⟜R)_{zy} = ⋀_x (s_{zx}⟜r_{yx}) and
  // (R⊸T)_{xz} = ⋀_y (r_{yx}⊸t_{yz})
  heyting_model::closed_forms formulas() const;

 private:
  friend matrix_model make_matrix(heyting_ptr, std::vector<typed_vector>,
                                  matrix_implications, exec);
  heyting_ptr base_;
  heyting_ptr model_;
  std::vector<typed_vector> vectors_;
  // per homset: radix per entry
  std::vector<std::vector<std::size_t>> radix_;
};

matrix_model make_matrix(heyting_ptr H, std::vector<typed_vector> vectors,
                         matrix_implications impl = matrix_implications::formulas,
                         exec e = exec::parallel);
// mat(℘C); default vectors are one singleton per type of C
matrix_model make_distributor(const finite_biposet& C,
                              std::vector<typed_vector> vectors = {},
                              exec e = exec::parallel);

struct type_sum_result {
  matrix_model model;  // the input vectors plus y⊕x as the last type
  idx sum = 0;
  term i_y, i_x, p_y, p_x;
  report checks;

  // [t,s] = (p_y∘t) ∨ (p_x∘s) for t: y->z, s: x->z
  term source_pairing(term t, term s) const;
  // ⟨t,s⟩ = (t∘i_y) ∨ (s∘i_x) for t: z->y, s: z->x
  term target_pairing(term t, term s) const;
};

type_sum_result type_sum(const matrix_model& M, idx y, idx x,
                         std::uint64_t budget = 200'000);

// Model file: `types`, `hom y x:`, `le y x:`, `comp z y x:`, `id x:`,
// `join y x:`, `bot y x:`, plus `meet y x:` and `top y x:`. See docs/formats.md.
finite_biposet parse_model_file(std::string_view text, const std::string& filename = "<model>");

struct model_handle {
  std::string descriptor;
  heyting_ptr heyting;
  std::optional<matrix_model> matrix;
};

// bool2, powerset:N, rel:N,M,..., trop:K, lang:AB,N, mat:<base>:<vectors>,
// distrib:<modelfile>[:<vectors>]. Vectors are comma separated; each is a
// count (all entries of base type 0) or '+'-joined base type names.
model_handle parse_model_descriptor(std::string_view desc, exec e = exec::parallel);

}  // namespace dialectic
