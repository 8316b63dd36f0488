#include "dialectic/order.hpp"

#include <algorithm>
#include <string>

namespace dialectic {

finite_poset finite_poset::from_relation(
    std::size_t n, const std::function<bool(idx, idx)>& le, std::size_t bound) {
  if (n > bound)
    throw model_error("poset of size " + std::to_string(n) +
                      " exceeds bound " + std::to_string(bound));
  finite_poset p;
  p.n_ = n;
  p.le_.assign(n * n, 0);
  for (idx a = 0; a < n; ++a)
    for (idx b = 0; b < n; ++b) p.le_[a * n + b] = le(a, b) ? 1 : 0;
  for (idx a = 0; a < n; ++a) {
    if (!p.le(a, a)) throw model_error("order not reflexive at " + std::to_string(a));
    for (idx b = 0; b < n; ++b) {
      if (a != b && p.le(a, b) && p.le(b, a))
        throw model_error("order not antisymmetric at " + std::to_string(a) +
                          "," + std::to_string(b));
      if (!p.le(a, b)) continue;
      for (idx c = 0; c < n; ++c)
        if (p.le(b, c) && !p.le(a, c))
          throw model_error("order not transitive at " + std::to_string(a) +
                            "," + std::to_string(b) + "," + std::to_string(c));
    }
  }
  return p;
}

finite_poset finite_poset::generated(
    std::size_t n, const std::vector<std::pair<idx, idx>>& pairs, std::size_t bound) {
  if (n > bound)
    throw model_error("poset of size " + std::to_string(n) +
                      " exceeds bound " + std::to_string(bound));
  std::vector<std::uint8_t> m(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) m[a * n + a] = 1;
  for (auto [a, b] : pairs) {
    if (a >= n || b >= n) throw model_error("order pair out of range");
    m[a * n + b] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t a = 0; a < n; ++a)
      if (m[a * n + k])
        for (std::size_t b = 0; b < n; ++b)
          if (m[k * n + b]) m[a * n + b] = 1;
  return from_relation(
      n, [&](idx a, idx b) { return m[a * n + b] != 0; }, bound);
}

finite_poset finite_poset::chain(std::size_t n) {
  return from_relation(n, [](idx a, idx b) { return a <= b; });
}

finite_poset finite_poset::antichain(std::size_t n) {
  return from_relation(n, [](idx a, idx b) { return a == b; });
}

finite_poset finite_poset::dual() const {
  finite_poset d;
  d.n_ = n_;
  d.le_.assign(n_ * n_, 0);
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = 0; b < n_; ++b) d.le_[a * n_ + b] = le_[b * n_ + a];
  return d;
}

std::optional<idx> finite_poset::join(idx a, idx b) const {
  std::optional<idx> best;
  for (idx c = 0; c < n_; ++c) {
    if (!le(a, c) || !le(b, c)) continue;
    if (!best || le(c, *best)) best = c;
  }
  if (!best) return std::nullopt;
  for (idx c = 0; c < n_; ++c)
    if (le(a, c) && le(b, c) && !le(*best, c)) return std::nullopt;
  return best;
}

std::optional<idx> finite_poset::meet(idx a, idx b) const {
  std::optional<idx> best;
  for (idx c = 0; c < n_; ++c) {
    if (!le(c, a) || !le(c, b)) continue;
    if (!best || le(*best, c)) best = c;
  }
  if (!best) return std::nullopt;
  for (idx c = 0; c < n_; ++c)
    if (le(c, a) && le(c, b) && !le(c, *best)) return std::nullopt;
  return best;
}

std::optional<idx> finite_poset::bottom() const {
  for (idx c = 0; c < n_; ++c) {
    bool all = true;
    for (idx d = 0; d < n_ && all; ++d) all = le(c, d);
    if (all) return c;
  }
  return std::nullopt;
}

std::optional<idx> finite_poset::top() const {
  for (idx c = 0; c < n_; ++c) {
    bool all = true;
    for (idx d = 0; d < n_ && all; ++d) all = le(d, c);
    if (all) return c;
  }
  return std::nullopt;
}

monotone_map monotone_map::make(poset_ptr source, poset_ptr target,
                                std::vector<idx> table) {
  if (!source || !target) throw shape_error("monotone map without posets");
  if (table.size() != source->size())
    throw model_error("monotone map table is not total");
  for (idx v : table)
    if (v >= target->size()) throw model_error("monotone map value out of range");
  for (idx a = 0; a < source->size(); ++a)
    for (idx b = 0; b < source->size(); ++b)
      if (source->le(a, b) && !target->le(table[a], table[b]))
        throw model_error("map not monotone at " + std::to_string(a) + "<=" +
                          std::to_string(b));
  return monotone_map{std::move(source), std::move(target), std::move(table)};
}

monotone_map antitone_map(const poset_ptr& p, std::vector<idx> table) {
  return monotone_map::make(p, std::make_shared<finite_poset>(p->dual()),
                            std::move(table));
}

monotone_map identity_map(const poset_ptr& p) {
  std::vector<idx> t(p->size());
  for (idx i = 0; i < t.size(); ++i) t[i] = i;
  return monotone_map{p, p, std::move(t)};
}

monotone_map then(const monotone_map& f, const monotone_map& g) {
  if (!(*f.target == *g.source)) throw shape_error("maps not composable");
  std::vector<idx> t(f.table.size());
  for (idx i = 0; i < t.size(); ++i) t[i] = g(f(i));
  return monotone_map{f.source, g.target, std::move(t)};
}

adjoint_verdict check_adjoint_pair(const monotone_map& f, const monotone_map& g) {
  if (!(*f.source == *g.target) || !(*f.target == *g.source))
    throw shape_error("maps are not opposed between the same posets");
  const auto& B = *f.source;
  const auto& A = *f.target;
  adjoint_verdict v;
  v.is_adjoint = true;
  for (idx b = 0; b < B.size() && v.is_adjoint; ++b)
    for (idx a = 0; a < A.size(); ++a)
      if (A.le(f(b), a) != B.le(b, g(a))) {
        v.is_adjoint = false;
        break;
      }
  if (!v.is_adjoint) return v;
  v.is_reflective = true;
  for (idx a = 0; a < A.size(); ++a)
    if (f(g(a)) != a) v.is_reflective = false;
  v.is_coreflective = true;
  for (idx b = 0; b < B.size(); ++b)
    if (g(f(b)) != b) v.is_coreflective = false;
  v.is_inverse = v.is_reflective && v.is_coreflective;
  return v;
}

adjoint_pair adjoint_pair::make(monotone_map f, monotone_map g) {
  adjoint_pair p;
  p.v_ = check_adjoint_pair(f, g);
  if (!p.v_.is_adjoint) throw model_error("maps do not form an adjoint pair");
  p.f_ = std::move(f);
  p.g_ = std::move(g);
  return p;
}

closure_interior closure_interior_images(const adjoint_pair& p) {
  const auto& f = p.left();
  const auto& g = p.right();
  closure_interior r{then(f, g), then(g, f), {}, {}, {}};
  for (idx b = 0; b < f.source->size(); ++b)
    if (r.closure(b) == b) r.closed_elements.push_back(b);
  for (idx a = 0; a < f.target->size(); ++a)
    if (r.interior(a) == a) r.open_elements.push_back(a);
  for (idx b : r.closed_elements) r.iso_witness.emplace_back(b, f(b));
  return r;
}

negation_verdict check_negation_involution(const monotone_map& f) {
  const auto& A = *f.source;
  if (!(A.dual() == *f.target))
    throw shape_error("negation must map a poset to its opposite");
  negation_verdict v;
  v.is_self_adjoint = true;
  for (idx a = 0; a < A.size(); ++a)
    for (idx b = 0; b < A.size(); ++b)
      if (A.le(a, f(b)) != A.le(b, f(a))) v.is_self_adjoint = false;
  v.involutive_on_closed = true;
  for (idx a = 0; a < A.size(); ++a) {
    if (f(f(a)) != a) continue;
    v.closed.push_back(a);
  }
  // f(f(a)) is closed exactly when f is involutive on the image of f twice
  for (idx a = 0; a < A.size(); ++a) {
    idx c = f(f(a));
    if (f(f(c)) != c) v.involutive_on_closed = false;
  }
  v.demorgan_holds = true;
  for (idx a = 0; a < A.size(); ++a)
    for (idx b = a; b < A.size(); ++b) {
      auto j = A.join(a, b);
      if (!j) continue;
      auto m = A.meet(f(a), f(b));
      if (!m) continue;
      ++v.demorgan_pairs;
      if (f(*j) != *m) v.demorgan_holds = false;
    }
  return v;
}

}  // namespace dialectic
