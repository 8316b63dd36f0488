#pragma once

#include <cstdint>
#include <deque>
#include <string>
#include <string_view>
#include <vector>

#include "dialectic/common.hpp"

namespace dialectic {

struct check {
  std::string name;
  std::uint64_t instances = 0;
  std::uint64_t violations = 0;
  std::vector<std::string> examples;
  bool applicable = true;
  std::string note;

  bool passed() const { return violations == 0; }
};

class report {
 public:
  check& add(std::string name);
  void add(check c) { checks_.push_back(std::move(c)); }
  void merge(const report& other, std::string_view prefix = {});

  bool ok() const;
  std::uint64_t violations() const;
  const std::deque<check>& checks() const { return checks_; }
  const check* find(std::string_view name) const;

  std::string text() const;
  std::string tsv() const;

 private:
  // deque so references from add() survive later adds
  std::deque<check> checks_;
};

// Counts i in [0, n) with bad(i). The serial loop is the reference; the
// parallel one must return the same count.
template <class F>
std::uint64_t count_violations(std::uint64_t n, exec e, F&& bad) {
  std::uint64_t count = 0;
  if (e == exec::parallel) {
    const auto sn = static_cast<std::int64_t>(n);
#pragma omp parallel for reduction(+ : count) schedule(dynamic, 64)
    for (std::int64_t i = 0; i < sn; ++i)
      if (bad(static_cast<std::uint64_t>(i))) ++count;
  } else {
    for (std::uint64_t i = 0; i < n; ++i)
      if (bad(i)) ++count;
  }
  return count;
}

// Runs an indexed check. Examples are gathered by a serial second pass so the
// report does not depend on thread scheduling.
template <class F, class D>
check run_check(std::string name, std::uint64_t n, exec e, F&& bad,
                D&& describe, std::size_t max_examples = 8) {
  check c;
  c.name = std::move(name);
  c.instances = n;
  c.violations = count_violations(n, e, bad);
  if (c.violations > 0) {
    for (std::uint64_t i = 0; i < n && c.examples.size() < max_examples; ++i)
      if (bad(i)) c.examples.push_back(describe(i));
  }
  return c;
}

}  // namespace dialectic

namespace dialectic {

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Exhaustive below the budget, otherwise a seeded sample of `budget`
// indices. The note records which one happened.
template <class F, class D>
check run_check_budget(std::string name, std::uint64_t n, std::uint64_t budget,
                       std::uint64_t seed, exec e, F&& bad, D&& describe) {
  if (n <= budget) return run_check(std::move(name), n, e, bad, describe);
  auto pick = [&](std::uint64_t j) { return mix64(seed * 0x100000001b3ULL + j) % n; };
  check c = run_check(
      std::move(name), budget, e, [&](std::uint64_t j) { return bad(pick(j)); },
      [&](std::uint64_t j) { return describe(pick(j)); });
  c.note = "sampled " + std::to_string(budget) + " of " + std::to_string(n);
  return c;
}

// Folds an indexed loop into an existing check.
template <class F, class D>
void accumulate(check& into, std::uint64_t n, exec e, F&& bad, D&& describe,
                std::size_t max_examples = 8) {
  check c = run_check(into.name, n, e, bad, describe, max_examples);
  into.instances += c.instances;
  into.violations += c.violations;
  for (auto& s : c.examples)
    if (into.examples.size() < max_examples) into.examples.push_back(std::move(s));
}

}  // namespace dialectic
