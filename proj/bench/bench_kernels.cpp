#include <benchmark/benchmark.h>

#include <string>

#include "dialectic/flowfix.hpp"
#include "dialectic/heyting.hpp"
#include "dialectic/models.hpp"

using namespace dialectic;

namespace {

exec mode(const benchmark::State& st) { return st.range(0) ? exec::parallel : exec::serial; }

const heyting_ptr& rel22() {
  static auto H = make_rel({2, 2});
  return H;
}

const heyting_ptr& lang() {
  static auto H = make_language("ab", 2);
  return H;
}

// ring of n nodes, transitive closure
const horn_program& ring() {
  static horn_program P = [] {
    std::string t = "domain n{1..24}\npred e/2 domain n\npred path/2 domain n\n";
    for (int i = 1; i <= 24; ++i) t += "fact e(" + std::to_string(i) + "," + std::to_string(i % 24 + 1) + ").\n";
    t += "rule path(X,Y) :- e(X,Y).\nrule path(X,Z) :- e(X,Y), path(Y,Z).\n";
    return parse_horn(t);
  }();
  return P;
}

void bm_audit(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(audit_dialectical_axioms(*lang(), mode(st)));
}

void bm_validate_biposet(benchmark::State& st) {
  biposet_flags f;
  f.complete_heyting = true;
  for (auto _ : st) benchmark::DoNotOptimize(validate_biposet(rel22()->base(), f, mode(st)));
}

void bm_heyting_laws(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(heyting_laws(*rel22(), mode(st)));
}

void bm_horn_eval(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(horn_eval(ring(), mode(st)));
}

void bm_enabled_clauses(benchmark::State& st) {
  auto M = horn_matrices_of(ring());
  bit_vector all(M.R.words, ~std::uint64_t(0));
  for (auto _ : st) benchmark::DoNotOptimize(enabled_clauses(M.R, all, mode(st)));
}

}  // namespace

// argument 0 runs the serial reference, 1 the OpenMP kernel
BENCHMARK(bm_audit)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_validate_biposet)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_heyting_laws)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_horn_eval)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(bm_enabled_clauses)->Arg(0)->Arg(1);

BENCHMARK_MAIN();
