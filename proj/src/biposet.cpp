#include "dialectic/biposet.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace dialectic {

namespace {

std::string types_str(const finite_biposet& B, std::initializer_list<idx> ts) {
  std::string s;
  for (idx t : ts) {
    if (!s.empty()) s += ",";
    s += B.type_name(t);
  }
  return s;
}

}  // namespace

std::optional<idx> finite_biposet::find_type(std::string_view name) const {
  for (idx t = 0; t < types_.size(); ++t)
    if (types_[t] == name) return t;
  return std::nullopt;
}

term finite_biposet::compose(term s, term r) const {
  if (s.target != r.source)
    throw type_error("cannot compose " + describe(s) + " with " + describe(r));
  return term{s.source, r.target,
              compose_raw(s.source, s.target, r.target, s.elem, r.elem)};
}

bool finite_biposet::entails(term r, term s) const {
  if (r.source != s.source || r.target != s.target)
    throw type_error("entailment between non-parallel terms " + describe(r) +
                     " and " + describe(s));
  return hom(r.source, r.target).le(r.elem, s.elem);
}

term finite_biposet::bottom(idx y, idx x) const {
  const auto& h = hom(y, x);
  if (h.bottom == npos) throw capability_error("homset without bottom");
  return term{y, x, h.bottom};
}

term finite_biposet::top(idx y, idx x) const {
  const auto& h = hom(y, x);
  if (h.top == npos) throw capability_error("homset without top");
  return term{y, x, h.top};
}

term finite_biposet::join(term a, term b) const {
  if (a.source != b.source || a.target != b.target)
    throw type_error("join of non-parallel terms");
  const auto& h = hom(a.source, a.target);
  if (!h.has_joins()) throw capability_error("homset without joins");
  return term{a.source, a.target, h.join(a.elem, b.elem)};
}

term finite_biposet::meet(term a, term b) const {
  if (a.source != b.source || a.target != b.target)
    throw type_error("meet of non-parallel terms");
  const auto& h = hom(a.source, a.target);
  if (!h.has_meets()) throw capability_error("homset without meets");
  return term{a.source, a.target, h.meet(a.elem, b.elem)};
}

bool finite_biposet::has_joins() const {
  for (const auto& h : homs_)
    if (!h.has_joins()) return false;
  return true;
}

bool finite_biposet::has_meets() const {
  for (const auto& h : homs_)
    if (!h.has_meets()) return false;
  return true;
}

std::optional<term> finite_biposet::find_term(idx y, idx x,
                                              std::string_view name) const {
  const auto& names = hom(y, x).names;
  for (idx i = 0; i < names.size(); ++i)
    if (names[i] == name) return term{y, x, i};
  return std::nullopt;
}

std::string finite_biposet::describe(term t) const {
  return name(t) + ":" + types_[t.source] + "->" + types_[t.target];
}

finite_biposet finite_biposet::with_composition_cell(idx z, idx y, idx x, idx s,
                                                     idx r, idx value) const {
  finite_biposet c = *this;
  c.comp_[(std::size_t(z) * types_.size() + y) * types_.size() + x]
         [std::size_t(s) * hom_size(y, x) + r] = value;
  return c;
}

finite_biposet::builder::builder(std::vector<std::string> type_names,
                                 std::size_t bound)
    : bound_(bound) {
  const std::size_t T = type_names.size();
  if (T == 0) throw model_error("a model needs at least one type");
  b_.types_ = std::move(type_names);
  b_.homs_.resize(T * T);
  b_.comp_.resize(T * T * T);
  b_.ident_.assign(T, npos);
  join_set_.assign(T * T, false);
  meet_set_.assign(T * T, false);
  comp_set_.assign(T * T * T, false);
  ident_set_.assign(T, false);
}

finite_biposet::builder& finite_biposet::builder::set_homset(
    idx y, idx x, std::vector<std::string> names,
    const std::function<bool(idx, idx)>& le) {
  auto order = std::make_shared<finite_poset>(
      finite_poset::from_relation(names.size(), le, bound_));
  return set_homset(y, x, std::move(names), std::move(order));
}

finite_biposet::builder& finite_biposet::builder::set_homset(
    idx y, idx x, std::vector<std::string> names, poset_ptr order) {
  const std::size_t T = type_count();
  if (y >= T || x >= T) throw model_error("homset type out of range");
  if (names.size() > bound_)
    throw model_error("homset of size " + std::to_string(names.size()) +
                      " exceeds bound " + std::to_string(bound_));
  if (order->size() != names.size()) throw model_error("order size mismatch");
  std::vector<std::string> sorted = names;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw model_error("duplicate element name in hom(" + b_.types_[y] + "," +
                      b_.types_[x] + ")");
  auto& h = b_.homs_[y * T + x];
  h = homset{};
  h.names = std::move(names);
  h.order = std::move(order);
  return *this;
}

finite_biposet::builder& finite_biposet::builder::set_joins(
    idx y, idx x, const std::function<idx(idx, idx)>& join, idx bottom) {
  auto& h = b_.homs_[y * type_count() + x];
  const std::size_t n = h.size();
  h.join_table.resize(n * n);
  for (idx a = 0; a < n; ++a)
    for (idx b = 0; b < n; ++b) {
      idx j = join(a, b);
      if (j >= n) throw model_error("join value out of range");
      h.join_table[a * n + b] = j;
    }
  if (bottom >= n) throw model_error("bottom out of range");
  h.bottom = bottom;
  join_set_[y * type_count() + x] = true;
  return *this;
}

finite_biposet::builder& finite_biposet::builder::set_meets(
    idx y, idx x, const std::function<idx(idx, idx)>& meet, idx top) {
  auto& h = b_.homs_[y * type_count() + x];
  const std::size_t n = h.size();
  h.meet_table.resize(n * n);
  for (idx a = 0; a < n; ++a)
    for (idx b = 0; b < n; ++b) {
      idx m = meet(a, b);
      if (m >= n) throw model_error("meet value out of range");
      h.meet_table[a * n + b] = m;
    }
  if (top >= n) throw model_error("top out of range");
  h.top = top;
  meet_set_[y * type_count() + x] = true;
  return *this;
}

finite_biposet::builder& finite_biposet::builder::set_composition(
    idx z, idx y, idx x, const std::function<idx(idx, idx)>& comp) {
  const std::size_t T = type_count();
  const std::size_t a = b_.homs_[z * T + y].size();
  const std::size_t c = b_.homs_[y * T + x].size();
  std::vector<idx> table(a * c);
  for (idx s = 0; s < a; ++s)
    for (idx r = 0; r < c; ++r) table[s * c + r] = comp(s, r);
  return set_composition_table(z, y, x, std::move(table));
}

finite_biposet::builder& finite_biposet::builder::set_composition_table(
    idx z, idx y, idx x, std::vector<idx> table) {
  const std::size_t T = type_count();
  const std::size_t a = b_.homs_[z * T + y].size();
  const std::size_t c = b_.homs_[y * T + x].size();
  const std::size_t out = b_.homs_[z * T + x].size();
  if (table.size() != a * c) throw model_error("composition table size mismatch");
  for (idx v : table)
    if (v >= out)
      throw model_error("composition value out of range for " + b_.types_[z] +
                        "," + b_.types_[y] + "," + b_.types_[x]);
  b_.comp_[(z * T + y) * T + x] = std::move(table);
  comp_set_[(z * T + y) * T + x] = true;
  return *this;
}

finite_biposet::builder& finite_biposet::builder::set_identity(idx x, idx e) {
  const std::size_t T = type_count();
  if (e >= b_.homs_[x * T + x].size()) throw model_error("identity out of range");
  b_.ident_[x] = e;
  ident_set_[x] = true;
  return *this;
}

void finite_biposet::builder::derive_lattice(homset& h) {
  const auto& p = *h.order;
  const std::size_t n = p.size();
  auto bot = p.bottom();
  auto top = p.top();
  // a finite poset with all binary joins and a bottom is a complete lattice
  bool joins = bot.has_value();
  std::vector<idx> jt(n * n);
  for (idx a = 0; a < n && joins; ++a)
    for (idx b = 0; b < n; ++b) {
      auto j = p.join(a, b);
      if (!j) {
        joins = false;
        break;
      }
      jt[a * n + b] = *j;
    }
  if (joins) {
    h.join_table = std::move(jt);
    h.bottom = *bot;
  }
  bool meets = top.has_value();
  std::vector<idx> mt(n * n);
  for (idx a = 0; a < n && meets; ++a)
    for (idx b = 0; b < n; ++b) {
      auto m = p.meet(a, b);
      if (!m) {
        meets = false;
        break;
      }
      mt[a * n + b] = *m;
    }
  if (meets) {
    h.meet_table = std::move(mt);
    h.top = *top;
  }
}

finite_biposet finite_biposet::builder::build() {
  const std::size_t T = type_count();
  for (std::size_t i = 0; i < T * T; ++i) {
    auto& h = b_.homs_[i];
    if (!h.order)
      throw model_error("missing homset hom(" + b_.types_[i / T] + "," +
                        b_.types_[i % T] + ")");
    if (!join_set_[i] || !meet_set_[i]) {
      homset derived = h;
      derive_lattice(derived);
      if (!join_set_[i]) {
        h.join_table = std::move(derived.join_table);
        h.bottom = derived.bottom;
      }
      if (!meet_set_[i]) {
        h.meet_table = std::move(derived.meet_table);
        h.top = derived.top;
      }
    }
  }
  for (std::size_t i = 0; i < T * T * T; ++i)
    if (!comp_set_[i])
      throw model_error("missing composition table for " + b_.types_[i / (T * T)] +
                        "," + b_.types_[(i / T) % T] + "," + b_.types_[i % T]);
  for (std::size_t x = 0; x < T; ++x)
    if (!ident_set_[x]) throw model_error("missing identity at " + b_.types_[x]);
  return b_;
}

biposet_flags parse_biposet_flags(std::string_view s) {
  biposet_flags f;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find(',', start);
    if (end == std::string_view::npos) end = s.size();
    std::string_view w = s.substr(start, end - start);
    if (w == "join")
      f.join_bisemilattice = true;
    else if (w == "meet")
      f.meet_bisemilattice = true;
    else if (w == "cHc") {
      f.join_bisemilattice = true;
      f.complete_heyting = true;
    } else if (w == "biposet" || w.empty()) {
    } else
      throw std::invalid_argument("unknown law set '" + std::string(w) + "'");
    start = end + 1;
  }
  return f;
}

report validate_biposet(const finite_biposet& B, biposet_flags flags, exec e) {
  report rep;
  const idx T = B.type_count();

  check order_laws{"homset order"};
  for (idx y = 0; y < T; ++y)
    for (idx x = 0; x < T; ++x) {
      const auto& h = B.hom(y, x);
      const std::uint64_t n = h.size();
      accumulate(
          order_laws, n * n * n, e,
          [&](std::uint64_t i) {
            idx a = i / (n * n), b = (i / n) % n, c = i % n;
            if (!h.le(a, a)) return true;
            if (a != b && h.le(a, b) && h.le(b, a)) return true;
            return h.le(a, b) && h.le(b, c) && !h.le(a, c);
          },
          [&](std::uint64_t i) {
            return "hom(" + types_str(B, {y, x}) + ") at " + h.names[i / (n * n)] +
                   "," + h.names[(i / n) % n] + "," + h.names[i % n];
          });
    }
  rep.add(std::move(order_laws));

  check unit{"unitality"};
  for (idx y = 0; y < T; ++y)
    for (idx x = 0; x < T; ++x) {
      const std::uint64_t n = B.hom_size(y, x);
      accumulate(
          unit, n, e,
          [&](std::uint64_t r) {
            return B.compose_raw(y, y, x, B.identity_raw(y), r) != r ||
                   B.compose_raw(y, x, x, r, B.identity_raw(x)) != r;
          },
          [&](std::uint64_t r) { return "identity law fails at " + B.describe({y, x, idx(r)}); });
    }
  rep.add(std::move(unit));

  check assoc{"associativity"};
  for (idx w = 0; w < T; ++w)
    for (idx z = 0; z < T; ++z)
      for (idx y = 0; y < T; ++y)
        for (idx x = 0; x < T; ++x) {
          const std::uint64_t a = B.hom_size(w, z), b = B.hom_size(z, y),
                              c = B.hom_size(y, x);
          auto split = [=](std::uint64_t i) {
            return std::array<idx, 3>{idx(i / (b * c)), idx((i / c) % b), idx(i % c)};
          };
          accumulate(
              assoc, a * b * c, e,
              [&](std::uint64_t i) {
                auto [p, q, r] = split(i);
                return B.compose_raw(w, y, x, B.compose_raw(w, z, y, p, q), r) !=
                       B.compose_raw(w, z, x, p, B.compose_raw(z, y, x, q, r));
              },
              [&](std::uint64_t i) {
                auto [p, q, r] = split(i);
                return "(p∘q)∘r != p∘(q∘r) for p=" + B.describe({w, z, p}) +
                       " q=" + B.describe({z, y, q}) + " r=" + B.describe({y, x, r});
              });
        }
  rep.add(std::move(assoc));

  check mono{"monotonicity"};
  for (idx z = 0; z < T; ++z)
    for (idx y = 0; y < T; ++y)
      for (idx x = 0; x < T; ++x) {
        const auto& hs = B.hom(z, y);
        const auto& hr = B.hom(y, x);
        const auto& ho = B.hom(z, x);
        const std::uint64_t b = hs.size(), c = hr.size();
        accumulate(
            mono, b * b * c, e,
            [&](std::uint64_t i) {
              idx s = i / (b * c), s2 = (i / c) % b, r = i % c;
              return hs.le(s, s2) &&
                     !ho.le(B.compose_raw(z, y, x, s, r), B.compose_raw(z, y, x, s2, r));
            },
            [&](std::uint64_t i) {
              return "left monotonicity fails at s=" +
                     B.describe({z, y, idx(i / (b * c))}) + " s'=" +
                     B.describe({z, y, idx((i / c) % b)}) + " r=" +
                     B.describe({y, x, idx(i % c)});
            });
        accumulate(
            mono, b * c * c, e,
            [&](std::uint64_t i) {
              idx s = i / (c * c), r = (i / c) % c, r2 = i % c;
              return hr.le(r, r2) &&
                     !ho.le(B.compose_raw(z, y, x, s, r), B.compose_raw(z, y, x, s, r2));
            },
            [&](std::uint64_t i) {
              return "right monotonicity fails at s=" +
                     B.describe({z, y, idx(i / (c * c))}) + " r=" +
                     B.describe({y, x, idx((i / c) % c)}) + " r'=" +
                     B.describe({y, x, idx(i % c)});
            });
      }
  rep.add(std::move(mono));

  if (flags.join_bisemilattice || flags.complete_heyting) {
    check lattice{"homset joins"};
    bool have = true;
    for (idx y = 0; y < T; ++y)
      for (idx x = 0; x < T; ++x) {
        const auto& h = B.hom(y, x);
        if (!h.has_joins()) {
          have = false;
          ++lattice.violations;
          lattice.examples.push_back("hom(" + types_str(B, {y, x}) + ") has no joins");
          continue;
        }
        const std::uint64_t n = h.size();
        accumulate(
            lattice, n * n * n, e,
            [&](std::uint64_t i) {
              idx a = i / (n * n), b = (i / n) % n, c = i % n;
              idx j = h.join(a, b);
              if (!h.le(a, j) || !h.le(b, j) || !h.le(h.bottom, a)) return true;
              return h.le(a, c) && h.le(b, c) && !h.le(j, c);
            },
            [&](std::uint64_t i) {
              return "join of " + h.names[i / (n * n)] + "," + h.names[(i / n) % n] +
                     " in hom(" + types_str(B, {y, x}) + ") is not least";
            });
      }
    rep.add(std::move(lattice));

    if (have) {
      check dist{"join distributivity"};
      for (idx z = 0; z < T; ++z)
        for (idx y = 0; y < T; ++y)
          for (idx x = 0; x < T; ++x) {
            const auto& hs = B.hom(z, y);
            const auto& hr = B.hom(y, x);
            const auto& ho = B.hom(z, x);
            const std::uint64_t b = hs.size(), c = hr.size();
            accumulate(
                dist, b * c * c, e,
                [&](std::uint64_t i) {
                  idx s = i / (c * c), r = (i / c) % c, r2 = i % c;
                  return B.compose_raw(z, y, x, s, hr.join(r, r2)) !=
                         ho.join(B.compose_raw(z, y, x, s, r), B.compose_raw(z, y, x, s, r2));
                },
                [&](std::uint64_t i) {
                  return "s∘(r∨r') fails at s=" + B.describe({z, y, idx(i / (c * c))}) +
                         " r=" + B.describe({y, x, idx((i / c) % c)}) +
                         " r'=" + B.describe({y, x, idx(i % c)});
                });
            accumulate(
                dist, b * b * c, e,
                [&](std::uint64_t i) {
                  idx s = i / (b * c), s2 = (i / c) % b, r = i % c;
                  return B.compose_raw(z, y, x, hs.join(s, s2), r) !=
                         ho.join(B.compose_raw(z, y, x, s, r), B.compose_raw(z, y, x, s2, r));
                },
                [&](std::uint64_t i) {
                  return "(s∨s')∘r fails at s=" + B.describe({z, y, idx(i / (b * c))}) +
                         " s'=" + B.describe({z, y, idx((i / c) % b)}) +
                         " r=" + B.describe({y, x, idx(i % c)});
                });
            accumulate(
                dist, b + c, e,
                [&](std::uint64_t i) {
                  if (i < b) return B.compose_raw(z, y, x, idx(i), hr.bottom) != ho.bottom;
                  return B.compose_raw(z, y, x, hs.bottom, idx(i - b)) != ho.bottom;
                },
                [&](std::uint64_t i) {
                  if (i < b) return "s∘⊥ != ⊥ at s=" + B.describe({z, y, idx(i)});
                  return "⊥∘r != ⊥ at r=" + B.describe({y, x, idx(i - b)});
                });
          }
      rep.add(std::move(dist));
    }
  }

  if (flags.meet_bisemilattice || flags.complete_heyting) {
    check lattice{"homset meets"};
    bool have = true;
    for (idx y = 0; y < T; ++y)
      for (idx x = 0; x < T; ++x) {
        const auto& h = B.hom(y, x);
        if (!h.has_meets()) {
          have = false;
          ++lattice.violations;
          lattice.examples.push_back("hom(" + types_str(B, {y, x}) + ") has no meets");
          continue;
        }
        const std::uint64_t n = h.size();
        accumulate(
            lattice, n * n * n, e,
            [&](std::uint64_t i) {
              idx a = i / (n * n), b = (i / n) % n, c = i % n;
              idx m = h.meet(a, b);
              if (!h.le(m, a) || !h.le(m, b) || !h.le(a, h.top)) return true;
              return h.le(c, a) && h.le(c, b) && !h.le(c, m);
            },
            [&](std::uint64_t i) {
              return "meet of " + h.names[i / (n * n)] + "," + h.names[(i / n) % n] +
                     " in hom(" + types_str(B, {y, x}) + ") is not greatest";
            });
      }
    rep.add(std::move(lattice));

    if (have && flags.meet_bisemilattice) {
      check dist{"meet distributivity"};
      for (idx z = 0; z < T; ++z)
        for (idx y = 0; y < T; ++y)
          for (idx x = 0; x < T; ++x) {
            const auto& hs = B.hom(z, y);
            const auto& hr = B.hom(y, x);
            const auto& ho = B.hom(z, x);
            const std::uint64_t b = hs.size(), c = hr.size();
            accumulate(
                dist, b * c * c, e,
                [&](std::uint64_t i) {
                  idx s = i / (c * c), r = (i / c) % c, r2 = i % c;
                  return B.compose_raw(z, y, x, s, hr.meet(r, r2)) !=
                         ho.meet(B.compose_raw(z, y, x, s, r), B.compose_raw(z, y, x, s, r2));
                },
                [&](std::uint64_t i) {
                  return "s∘(r∧r') fails at s=" + B.describe({z, y, idx(i / (c * c))}) +
                         " r=" + B.describe({y, x, idx((i / c) % c)}) +
                         " r'=" + B.describe({y, x, idx(i % c)});
                });
            accumulate(
                dist, b * b * c, e,
                [&](std::uint64_t i) {
                  idx s = i / (b * c), s2 = (i / c) % b, r = i % c;
                  return B.compose_raw(z, y, x, hs.meet(s, s2), r) !=
                         ho.meet(B.compose_raw(z, y, x, s, r), B.compose_raw(z, y, x, s2, r));
                },
                [&](std::uint64_t i) {
                  return "(s∧s')∘r fails at s=" + B.describe({z, y, idx(i / (b * c))}) +
                         " s'=" + B.describe({z, y, idx((i / c) % b)}) +
                         " r=" + B.describe({y, x, idx(i % c)});
                });
            accumulate(
                dist, b + c, e,
                [&](std::uint64_t i) {
                  if (i < b) return B.compose_raw(z, y, x, idx(i), hr.top) != ho.top;
                  return B.compose_raw(z, y, x, hs.top, idx(i - b)) != ho.top;
                },
                [&](std::uint64_t i) {
                  if (i < b) return "s∘⊤ != ⊤ at s=" + B.describe({z, y, idx(i)});
                  return "⊤∘r != ⊤ at r=" + B.describe({y, x, idx(i - b)});
                });
          }
      rep.add(std::move(dist));
    }
  }
  return rep;
}

orthogonality_verdict orthogonality(const finite_biposet& B, term r, term s) {
  if (r.source != s.target || r.target != s.source)
    throw type_error("terms " + B.describe(r) + " and " + B.describe(s) +
                     " are not opposed");
  orthogonality_verdict v;
  const idx y = r.source, x = r.target;
  v.semi_at_target = B.hom(x, x).le(B.compose(s, r).elem, B.identity_raw(x));
  v.semi_at_source = B.hom(y, y).le(B.compose(r, s).elem, B.identity_raw(y));
  v.orthogonal = v.semi_at_target && v.semi_at_source;
  return v;
}

std::vector<term> orthogonality_ideal(const finite_biposet& B, term r) {
  const idx y = r.source, x = r.target;
  const auto& h = B.hom(x, y);
  std::vector<term> out;
  std::vector<bool> in(h.size(), false);
  for (idx s = 0; s < h.size(); ++s)
    if (orthogonality(B, r, term{x, y, s}).orthogonal) {
      out.push_back(term{x, y, s});
      in[s] = true;
    }
  for (idx a = 0; a < h.size(); ++a) {
    if (!in[a]) continue;
    for (idx b = 0; b < h.size(); ++b) {
      if (h.le(b, a) && !in[b])
        throw model_error("orthogonality ideal of " + B.describe(r) + " not down-closed");
      if (h.has_joins() && in[b] && !in[h.join(a, b)])
        throw model_error("orthogonality ideal of " + B.describe(r) + " not join-closed");
    }
  }
  if (h.has_joins() && !in[h.bottom])
    throw model_error("orthogonality ideal of " + B.describe(r) + " misses ⊥");
  return out;
}

std::optional<functional_info> functional_adjoint(const finite_biposet& B, term f) {
  const idx y = f.source, x = f.target;
  const auto& hyy = B.hom(y, y);
  const auto& hxx = B.hom(x, x);
  std::optional<functional_info> found;
  for (idx g = 0; g < B.hom_size(x, y); ++g) {
    idx fg = B.compose_raw(y, x, y, f.elem, g);
    idx gf = B.compose_raw(x, y, x, g, f.elem);
    if (!hyy.le(B.identity_raw(y), fg) || !hxx.le(gf, B.identity_raw(x))) continue;
    if (found)
      throw model_error("term " + B.describe(f) + " has two right adjoints");
    functional_info info;
    info.adjoint = term{x, y, g};
    info.coreflective = fg == B.identity_raw(y);
    info.reflective = gf == B.identity_raw(x);
    info.inverse = info.coreflective && info.reflective;
    info.subtype = info.coreflective;
    found = info;
  }
  return found;
}

bool is_quasisymmetric(const finite_biposet& B, term r) {
  const idx y = r.source, x = r.target;
  const auto& hxx = B.hom(x, x);
  const auto& hyy = B.hom(y, y);
  for (idx s = 0; s < B.hom_size(x, y); ++s) {
    bool at_x = hxx.le(B.compose_raw(x, y, x, s, r.elem), B.identity_raw(x));
    bool at_y = hyy.le(B.compose_raw(y, x, y, r.elem, s), B.identity_raw(y));
    if (at_x != at_y) return false;
  }
  return true;
}

bool is_biposet_coquasisymmetric(const finite_biposet& B, term r) {
  const idx y = r.source, x = r.target;
  const auto& hxx = B.hom(x, x);
  const auto& hyy = B.hom(y, y);
  for (idx s = 0; s < B.hom_size(x, y); ++s) {
    bool at_x = hxx.le(B.identity_raw(x), B.compose_raw(x, y, x, s, r.elem));
    bool at_y = hyy.le(B.identity_raw(y), B.compose_raw(y, x, y, r.elem, s));
    if (at_x != at_y) return false;
  }
  return true;
}

sub_biposet_result sub_biposet(const finite_biposet& B,
                               const std::vector<std::vector<idx>>& kept) {
  const idx T = B.type_count();
  if (kept.size() != std::size_t(T) * T) throw shape_error("kept list per homset expected");
  std::vector<std::string> names;
  for (idx t = 0; t < T; ++t) names.push_back(B.type_name(t));
  finite_biposet::builder bld(names);
  // base elem -> sub elem, npos when dropped
  std::vector<std::vector<idx>> back(T * T);
  for (idx y = 0; y < T; ++y)
    for (idx x = 0; x < T; ++x) {
      const auto& h = B.hom(y, x);
      const auto& keep = kept[y * T + x];
      auto& bk = back[y * T + x];
      bk.assign(h.size(), npos);
      std::vector<std::string> nm;
      for (idx i = 0; i < keep.size(); ++i) {
        if (keep[i] >= h.size()) throw shape_error("kept element out of range");
        bk[keep[i]] = i;
        nm.push_back(h.names[keep[i]]);
      }
      bld.set_homset(y, x, std::move(nm),
                     [&](idx a, idx b) { return h.le(keep[a], keep[b]); });
      auto closed = [&](const std::vector<idx>& table) {
        if (table.empty()) return false;
        for (idx a : keep)
          for (idx b : keep)
            if (bk[table[std::size_t(a) * h.size() + b]] == npos) return false;
        return true;
      };
      if (h.has_joins() && bk[h.bottom] != npos && closed(h.join_table))
        bld.set_joins(y, x, [&](idx a, idx b) { return bk[h.join(keep[a], keep[b])]; },
                      bk[h.bottom]);
      if (h.has_meets() && bk[h.top] != npos && closed(h.meet_table))
        bld.set_meets(y, x, [&](idx a, idx b) { return bk[h.meet(keep[a], keep[b])]; },
                      bk[h.top]);
    }
  for (idx x = 0; x < T; ++x) {
    idx e = back[x * T + x][B.identity_raw(x)];
    if (e == npos) throw model_error("sub-biposet drops the identity at " + B.type_name(x));
    bld.set_identity(x, e);
  }
  for (idx z = 0; z < T; ++z)
    for (idx y = 0; y < T; ++y)
      for (idx x = 0; x < T; ++x) {
        const auto& ks = kept[z * T + y];
        const auto& kr = kept[y * T + x];
        const auto& bo = back[z * T + x];
        bld.set_composition(z, y, x, [&](idx s, idx r) {
          idx c = bo[B.compose_raw(z, y, x, ks[s], kr[r])];
          if (c == npos)
            throw model_error("sub-biposet not closed under composition at " +
                              B.describe({z, y, ks[s]}) + " ∘ " + B.describe({y, x, kr[r]}));
          return c;
        });
      }
  return sub_biposet_result{bld.build(), kept};
}

center_info quasisymmetry_center(const finite_biposet& B, exec e) {
  const idx T = B.type_count();
  center_info info;
  info.per_term.resize(std::size_t(T) * T);
  for (idx y = 0; y < T; ++y)
    for (idx x = 0; x < T; ++x) {
      auto& v = info.per_term[y * T + x];
      const std::int64_t n = B.hom_size(y, x);
      v.assign(n, 0);
      if (e == exec::parallel) {
#pragma omp parallel for schedule(dynamic, 8)
        for (std::int64_t r = 0; r < n; ++r)
          v[r] = is_quasisymmetric(B, term{y, x, idx(r)}) ? 1 : 0;
      } else {
        for (std::int64_t r = 0; r < n; ++r)
          v[r] = is_quasisymmetric(B, term{y, x, idx(r)}) ? 1 : 0;
      }
    }
  auto& ids = info.checks.add("identities quasisymmetric");
  for (idx x = 0; x < T; ++x) {
    ++ids.instances;
    if (!info.per_term[x * T + x][B.identity_raw(x)]) {
      ++ids.violations;
      ids.examples.push_back(B.describe(B.identity(x)));
    }
  }
  check closure{"center closed under composition"};
  for (idx z = 0; z < T; ++z)
    for (idx y = 0; y < T; ++y)
      for (idx x = 0; x < T; ++x) {
        const auto& qs = info.per_term[z * T + y];
        const auto& qr = info.per_term[y * T + x];
        const auto& qo = info.per_term[z * T + x];
        const std::uint64_t b = qs.size(), c = qr.size();
        accumulate(
            closure, b * c, e,
            [&](std::uint64_t i) {
              idx s = i / c, r = i % c;
              return qs[s] && qr[r] && !qo[B.compose_raw(z, y, x, s, r)];
            },
            [&](std::uint64_t i) {
              return B.describe({z, y, idx(i / c)}) + " ∘ " + B.describe({y, x, idx(i % c)}) +
                     " leaves the center";
            });
      }
  const bool closed = closure.passed() && ids.passed();
  info.checks.add(std::move(closure));
  if (closed) {
    std::vector<std::vector<idx>> kept(std::size_t(T) * T);
    for (std::size_t h = 0; h < kept.size(); ++h)
      for (idx i = 0; i < info.per_term[h].size(); ++i)
        if (info.per_term[h][i]) kept[h].push_back(i);
    info.center = sub_biposet(B, kept);
  }
  return info;
}

adjoint_pair direct_inverse_image(const finite_biposet& B, term f) {
  auto info = functional_adjoint(B, f);
  if (!info) throw model_error("term " + B.describe(f) + " is not functional");
  const idx y = f.source, x = f.target;
  const idx g = info->adjoint.elem;
  std::vector<idx> up(B.hom_size(y, y)), down(B.hom_size(x, x));
  for (idx q = 0; q < up.size(); ++q)
    up[q] = B.compose_raw(x, y, x, B.compose_raw(x, y, y, g, q), f.elem);
  for (idx p = 0; p < down.size(); ++p)
    down[p] = B.compose_raw(y, x, y, B.compose_raw(y, x, x, f.elem, p), g);
  auto fwd = monotone_map::make(B.hom(y, y).order, B.hom(x, x).order, std::move(up));
  auto bwd = monotone_map::make(B.hom(x, x).order, B.hom(y, y).order, std::move(down));
  return adjoint_pair::make(std::move(fwd), std::move(bwd));
}

report biposet_laws(const finite_biposet& B, exec e, std::uint64_t budget,
                    std::uint64_t seed) {
  const idx T = B.type_count();
  report rep;
  // orthoterms per (y,x): pairs (r: y->x, r': x->y)
  std::vector<std::vector<std::pair<idx, idx>>> orth(std::size_t(T) * T);
  std::vector<std::vector<std::vector<idx>>> ideal(std::size_t(T) * T);
  for (idx y = 0; y < T; ++y)
    for (idx x = 0; x < T; ++x) {
      auto& id = ideal[y * T + x];
      id.resize(B.hom_size(y, x));
      for (idx r = 0; r < B.hom_size(y, x); ++r)
        for (idx s = 0; s < B.hom_size(x, y); ++s)
          if (orthogonality(B, {y, x, r}, {x, y, s}).orthogonal) {
            orth[y * T + x].emplace_back(r, s);
            id[r].push_back(s);
          }
    }

  check comp{"orthoterm composition"};
  for (idx z = 0; z < T; ++z)
    for (idx y = 0; y < T; ++y)
      for (idx x = 0; x < T; ++x) {
        const auto& os = orth[z * T + y];
        const auto& orr = orth[y * T + x];
        const std::uint64_t c = orr.size();
        auto bad = [&](std::uint64_t i) {
          auto [s, s2] = os[i / c];
          auto [r, r2] = orr[i % c];
          term sr{z, x, B.compose_raw(z, y, x, s, r)};
          term rs{x, z, B.compose_raw(x, y, z, r2, s2)};
          return !orthogonality(B, sr, rs).orthogonal;
        };
        auto desc = [&](std::uint64_t i) {
          return "composite of orthoterms " + B.describe({z, y, os[i / c].first}) + " and " +
                 B.describe({y, x, orr[i % c].first}) + " not orthogonal";
        };
        check part = run_check_budget(comp.name, os.size() * c, budget, seed, e, bad, desc);
        comp.instances += part.instances;
        comp.violations += part.violations;
        for (auto& s : part.examples) comp.examples.push_back(s);
        if (!part.note.empty()) comp.note = "sampled";
      }
  rep.add(std::move(comp));

  check closure{"orthogonality ideal"};
  for (idx y = 0; y < T; ++y)
    for (idx x = 0; x < T; ++x) {
      const std::uint64_t n = B.hom_size(y, x);
      accumulate(
          closure, n, e,
          [&](std::uint64_t r) {
            try {
              orthogonality_ideal(B, {y, x, idx(r)});
              return false;
            } catch (const model_error&) {
              return true;
            }
          },
          [&](std::uint64_t r) { return "ideal of " + B.describe({y, x, idx(r)}); });
    }
  rep.add(std::move(closure));

  check lax{"lax contravariance"};
  for (idx z = 0; z < T; ++z)
    for (idx y = 0; y < T; ++y)
      for (idx x = 0; x < T; ++x) {
        const std::uint64_t b = B.hom_size(z, y), c = B.hom_size(y, x);
        const auto& ir = ideal[y * T + x];
        const auto& is = ideal[z * T + y];
        auto bad = [&](std::uint64_t i) {
          idx s = i / c, r = i % c;
          term sr{z, x, B.compose_raw(z, y, x, s, r)};
          for (idx a : ir[r])
            for (idx bb : is[s]) {
              term ab{x, z, B.compose_raw(x, y, z, a, bb)};
              if (!orthogonality(B, sr, ab).orthogonal) return true;
            }
          return false;
        };
        auto desc = [&](std::uint64_t i) {
          return "⊥(r)∘⊥(s) ⊄ ⊥(s∘r) for s=" + B.describe({z, y, idx(i / c)}) +
                 " r=" + B.describe({y, x, idx(i % c)});
        };
        check part = run_check_budget(lax.name, b * c, budget, seed, e, bad, desc);
        lax.instances += part.instances;
        lax.violations += part.violations;
        for (auto& s : part.examples) lax.examples.push_back(s);
        if (!part.note.empty()) lax.note = "sampled";
      }
  rep.add(std::move(lax));

  check uniq{"adjoint uniqueness"};
  for (idx y = 0; y < T; ++y)
    for (idx x = 0; x < T; ++x) {
      const std::uint64_t n = B.hom_size(y, x);
      accumulate(
          uniq, n, e,
          [&](std::uint64_t f) {
            try {
              functional_adjoint(B, {y, x, idx(f)});
              return false;
            } catch (const model_error&) {
              return true;
            }
          },
          [&](std::uint64_t f) { return "two adjoints for " + B.describe({y, x, idx(f)}); });
    }
  rep.add(std::move(uniq));
  return rep;
}

}  // namespace dialectic
