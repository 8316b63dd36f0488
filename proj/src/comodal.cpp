#include "dialectic/comodal.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace dialectic {

namespace {

bool is_comonoid(const finite_biposet& B, idx x, idx e) {
  return B.hom(x, x).le(e, B.identity_raw(x)) && B.compose_raw(x, x, x, e, e) == e;
}

term fold_join(const finite_biposet& B, idx y, idx x, const std::vector<term>& ts) {
  term acc = B.bottom(y, x);
  for (const auto& t : ts) acc = B.join(acc, t);
  return acc;
}

void require_endoterm(const comonoid_lattice& L, term p) {
  if (p.source != L.type || p.target != L.type)
    throw type_error("expected an endoterm at the lattice type");
}

void tally(check& c, bool ok, const std::function<std::string()>& what) {
  ++c.instances;
  if (!ok) {
    ++c.violations;
    if (c.examples.size() < 8) c.examples.push_back(what());
  }
}

}  // namespace

comonoid_lattice comonoids_at(const finite_biposet& B, idx x, exec e) {
  comonoid_lattice L;
  L.type = x;
  const auto& h = B.hom(x, x);
  L.position.assign(h.size(), npos);
  for (idx a = 0; a < h.size(); ++a)
    if (is_comonoid(B, x, a)) {
      L.position[a] = idx(L.members.size());
      L.members.push_back(a);
    }
  const auto& m = L.members;
  L.order = std::make_shared<finite_poset>(finite_poset::from_relation(
      m.size(), [&](idx a, idx b) { return h.le(m[a], m[b]); }));
  const std::uint64_t n = m.size();
  auto pair_name = [&](std::uint64_t i) {
    return h.names[m[i / n]] + ", " + h.names[m[i % n]];
  };
  if (h.has_joins())
    L.checks.add(run_check(
        "comonoid joins", n * n, e,
        [&](std::uint64_t i) { return !L.contains(h.join(m[i / n], m[i % n])); }, pair_name));
  L.checks.add(run_check(
      "local standardization", n * n, e,
      [&](std::uint64_t i) { return !L.contains(B.compose_raw(x, x, x, m[i / n], m[i % n])); },
      pair_name));
  // u∘v is the greatest comonoid below both
  L.checks.add(run_check(
      "tensor is meet", n * n, e,
      [&](std::uint64_t i) {
        idx u = m[i / n], v = m[i % n], uv = B.compose_raw(x, x, x, u, v);
        if (!h.le(uv, u) || !h.le(uv, v)) return true;
        for (idx w : m)
          if (h.le(w, u) && h.le(w, v) && !h.le(w, uv)) return true;
        return false;
      },
      pair_name));
  L.standard = L.checks.ok();
  return L;
}

term interior(const finite_biposet& B, const comonoid_lattice& L, term p) {
  require_endoterm(L, p);
  const auto& h = B.hom(L.type, L.type);
  if (!h.has_joins()) throw capability_error("interior needs homset joins");
  idx acc = h.bottom;
  for (idx w : L.members)
    if (h.le(w, p.elem)) acc = h.join(acc, w);
  return term{L.type, L.type, acc};
}

term comonoid_implication(const heyting_model& H, const comonoid_lattice& L, term u, term v) {
  if (!L.standard) throw capability_error("comonoids are not locally standard");
  require_endoterm(L, u);
  require_endoterm(L, v);
  return interior(H.base(), L, H.left_imply(u, v));
}

report comonoid_laws(const heyting_model& H, exec e) {
  const auto& B = H.base();
  report rep;
  check adj{"interior adjunction"}, idem{"interior idempotent"}, meets{"interior preserves meets"},
      resid{"comonoid implication residuation"}, fiber{"hoare fibers"},
      split{"subtype comonoids split"};
  bool all_standard = true;
  for (idx x = 0; x < B.type_count(); ++x) {
    auto L = comonoids_at(B, x, e);
    rep.merge(L.checks, B.type_name(x) + ": ");
    all_standard = all_standard && L.standard;
    const auto& h = B.hom(x, x);
    const std::uint64_t N = h.size(), n = L.members.size();
    auto hp = std::make_shared<finite_poset>(*h.order);
    std::vector<idx> inc(L.members.begin(), L.members.end()), in(N);
    for (idx p = 0; p < N; ++p) in[p] = L.position[interior(B, L, {x, x, p}).elem];
    auto v = check_adjoint_pair(monotone_map::make(L.order, hp, inc),
                                monotone_map::make(hp, L.order, in));
    tally(adj, v.is_adjoint && v.is_coreflective,
          [&] { return "inclusion ⊣ interior fails at " + B.type_name(x); });
    accumulate(adj, n * N, e,
               [&](std::uint64_t i) {
                 idx w = L.members[i / N], p = idx(i % N);
                 return h.le(w, p) != h.le(w, interior(B, L, {x, x, p}).elem);
               },
               [&](std::uint64_t i) { return "w=" + h.names[L.members[i / N]] + " p=" + h.names[i % N]; });
    accumulate(idem, N, e,
               [&](std::uint64_t p) {
                 term ip = interior(B, L, {x, x, idx(p)});
                 return interior(B, L, ip) != ip || (L.contains(idx(p)) && ip.elem != p);
               },
               [&](std::uint64_t p) { return "p=" + h.names[p]; });
    if (h.has_meets())
      accumulate(meets, N * N, e,
                 [&](std::uint64_t i) {
                   term p{x, x, idx(i / N)}, q{x, x, idx(i % N)};
                   return interior(B, L, B.meet(p, q)) !=
                          B.compose(interior(B, L, p), interior(B, L, q));
                 },
                 [&](std::uint64_t i) { return "p=" + h.names[i / N] + " q=" + h.names[i % N]; });
    if (L.standard)
      accumulate(resid, n * n * n, e,
                 [&](std::uint64_t i) {
                   term u = L.at(i / (n * n)), vv = L.at(i / n % n), w = L.at(i % n);
                   term imp = comonoid_implication(H, L, u, vv);
                   return B.entails(w, imp) != B.entails(B.compose(u, w), vv);
                 },
                 [&](std::uint64_t i) {
                   return "u=" + h.names[L.members[i / (n * n)]] + " v=" + h.names[L.members[i / n % n]] +
                          " w=" + h.names[L.members[i % n]];
                 });
    accumulate(fiber, n * n, e,
               [&](std::uint64_t i) {
                 term u1 = L.at(i / n), u = L.at(i % n);
                 return hoare(B, {u1, B.identity(x), u}) != B.entails(u1, u);
               },
               [&](std::uint64_t i) { return "u'=" + h.names[L.members[i / n]] + " u=" + h.names[L.members[i % n]]; });
    for (idx y = 0; y < B.type_count(); ++y)
      for (idx f = 0; f < B.hom_size(y, x); ++f) {
        auto info = functional_adjoint(B, {y, x, f});
        if (!info || !info->coreflective) continue;
        term c = B.compose(info->adjoint, term{y, x, f});
        tally(split, is_comonoid(B, x, c.elem), [&] { return "p∘i at " + B.describe({y, x, f}); });
      }
  }
  if (!all_standard) {
    resid.applicable = false;
    resid.note = "not locally standard";
  }
  for (auto* c : {&adj, &idem, &meets, &resid, &fiber, &split}) rep.add(std::move(*c));
  return rep;
}

adjoint_pair comonoid_images(const finite_biposet& B, term f) {
  auto info = functional_adjoint(B, f);
  if (!info) throw type_error(B.describe(f) + " is not functional");
  const idx y = f.source, x = f.target;
  auto Ly = comonoids_at(B, y), Lx = comonoids_at(B, x);
  std::vector<idx> up, down;
  for (idx v : Ly.members) {
    term img = B.compose(B.compose(info->adjoint, term{y, y, v}), f);
    if (!Lx.contains(img.elem)) throw model_error("direct image is not a comonoid");
    up.push_back(Lx.position[img.elem]);
  }
  for (idx u : Lx.members) {
    term pre = B.compose(B.compose(f, term{x, x, u}), info->adjoint);
    down.push_back(Ly.position[interior(B, Ly, pre).elem]);
  }
  return adjoint_pair::make(monotone_map::make(Ly.order, Lx.order, up),
                            monotone_map::make(Lx.order, Ly.order, down));
}

filters filters_of(const finite_biposet& B, term r) {
  filters F;
  const idx y = r.source, x = r.target;
  auto Ly = comonoids_at(B, y), Lx = comonoids_at(B, x);
  for (idx v : Ly.members)
    if (B.entails(r, B.compose(term{y, y, v}, r))) F.source.push_back(v);
  for (idx u : Lx.members)
    if (B.entails(r, B.compose(r, term{x, x, u}))) F.target.push_back(u);
  auto filter_checks = [&](const std::string& label, const comonoid_lattice& L,
                           const std::vector<idx>& fil) {
    const auto& h = B.hom(L.type, L.type);
    auto in = [&](idx e) { return std::binary_search(fil.begin(), fil.end(), e); };
    check up{label + " filter upward closed"}, mc{label + " filter ∘-closed"};
    for (idx a : fil)
      for (idx b : L.members) {
        if (h.le(a, b)) tally(up, in(b), [&] { return h.names[a] + " <= " + h.names[b]; });
        if (in(b))
          tally(mc, in(B.compose_raw(L.type, L.type, L.type, a, b)),
                [&] { return h.names[a] + "∘" + h.names[b]; });
      }
    F.checks.add(std::move(up));
    F.checks.add(std::move(mc));
  };
  filter_checks("source", Ly, F.source);
  filter_checks("target", Lx, F.target);
  return F;
}

bool is_coprocess(const finite_biposet& B, term v, term r, term u) {
  return B.compose(v, r) == r && B.compose(r, u) == r;
}

bool hoare(const finite_biposet& B, const hoare_triple& t) {
  return B.entails(B.compose(t.pre, t.flow), B.compose(t.flow, t.post));
}

hoare_triple hoare_compose(const finite_biposet& B, const hoare_triple& a, const hoare_triple& b) {
  if (a.post != b.pre || a.flow.target != b.flow.source)
    throw shape_error("hoare triples do not share the middle comonoid");
  return {a.pre, B.compose(a.flow, b.flow), b.post};
}

hoare_triple hoare_identity(const finite_biposet& B, term u) {
  return {u, B.identity(u.source), u};
}

hoare_triple hoare_join(const finite_biposet& B, const hoare_triple& a, const hoare_triple& b) {
  if (a.pre != b.pre || a.post != b.post || a.flow.source != b.flow.source ||
      a.flow.target != b.flow.target)
    throw shape_error("hoare triples have different frames");
  return {a.pre, B.join(a.flow, b.flow), a.post};
}

report hoare_laws(const finite_biposet& B, exec e, std::uint64_t budget, std::uint64_t seed) {
  const idx T = idx(B.type_count());
  std::vector<comonoid_lattice> L;
  for (idx x = 0; x < T; ++x) L.push_back(comonoids_at(B, x, e));
  report rep;
  check zero{"zero triples"}, ident{"identity triples"}, comp{"composition closure"},
      join{"join closure"}, unit{"identity triple units"};
  for (idx x = 0; x < T; ++x)
    for (std::size_t i = 0; i < L[x].members.size(); ++i) {
      term u = L[x].at(i);
      tally(ident, hoare(B, hoare_identity(B, u)), [&] { return "{u}x{u} at " + B.describe(u); });
    }
  for (idx y = 0; y < T; ++y)
    for (idx x = 0; x < T; ++x) {
      const std::uint64_t nv = L[y].members.size(), nu = L[x].members.size(), nr = B.hom_size(y, x);
      accumulate(zero, nv * nu, e,
                 [&](std::uint64_t i) {
                   return !hoare(B, {L[y].at(i / nu), B.bottom(y, x), L[x].at(i % nu)});
                 },
                 [&](std::uint64_t i) { return "{v}⊥{u} at " + B.describe(L[y].at(i / nu)); });
      auto c = run_check_budget(
          join.name, nv * nu * nr * nr, budget, seed, e,
          [&](std::uint64_t i) {
            term v = L[y].at(i / (nu * nr * nr)), u = L[x].at(i / (nr * nr) % nu);
            hoare_triple a{v, {y, x, idx(i / nr % nr)}, u}, b{v, {y, x, idx(i % nr)}, u};
            return hoare(B, a) && hoare(B, b) && !hoare(B, hoare_join(B, a, b));
          },
          [&](std::uint64_t i) { return "join at r=" + B.describe({y, x, idx(i / nr % nr)}); });
      join.instances += c.instances;
      join.violations += c.violations;
      for (auto& s : c.examples) join.examples.push_back(s);
      accumulate(unit, nv * nu * nr, e,
                 [&](std::uint64_t i) {
                   hoare_triple t{L[y].at(i / (nu * nr)), {y, x, idx(i % nr)}, L[x].at(i / nr % nu)};
                   return hoare_compose(B, hoare_identity(B, t.pre), t) != t ||
                          hoare_compose(B, t, hoare_identity(B, t.post)) != t;
                 },
                 [&](std::uint64_t i) { return "unit at " + B.describe({y, x, idx(i % nr)}); });
      for (idx z = 0; z < T; ++z) {
        const std::uint64_t nw = L[z].members.size(), ns = B.hom_size(z, y);
        const std::uint64_t n = nw * nv * nu * ns * nr;
        auto cc = run_check_budget(
            comp.name, n, budget, seed + z, e,
            [&](std::uint64_t i) {
              idx r = idx(i % nr), s = idx(i / nr % ns);
              std::uint64_t rest = i / (nr * ns);
              term u = L[x].at(rest % nu), v = L[y].at(rest / nu % nv), w = L[z].at(rest / (nu * nv));
              hoare_triple a{w, {z, y, s}, v}, b{v, {y, x, r}, u};
              return hoare(B, a) && hoare(B, b) && !hoare(B, hoare_compose(B, a, b));
            },
            [&](std::uint64_t i) {
              return "s=" + B.describe({z, y, idx(i / nr % ns)}) + " r=" + B.describe({y, x, idx(i % nr)});
            });
        comp.instances += cc.instances;
        comp.violations += cc.violations;
        for (auto& s : cc.examples) comp.examples.push_back(s);
        if (!cc.note.empty()) comp.note = "sampled";
      }
    }
  for (auto* c : {&zero, &ident, &unit, &comp, &join}) rep.add(std::move(*c));
  return rep;
}

domain_info domain_totalization(const finite_biposet& B, term r) {
  const idx y = r.source;
  term d = B.identity(y);
  for (idx v : filters_of(B, r).source) d = B.compose(d, term{y, y, v});
  return {d, B.compose(d, r), d == B.identity(y)};
}

report domain_laws(const finite_biposet& B, exec e) {
  const idx T = idx(B.type_count());
  report rep;
  check did{"domain of identity"}, dbot{"domain of bottom"}, dzero{"only zero has empty domain"},
      least{"domain is least restriction"}, func{"functional terms total"},
      comp{"totals closed under composition"}, mono{"domain monotone"},
      cax{"domain composition axiom"}, ttot{"totalization total"};
  check recov{"totalization recovers the term"};
  for (idx x = 0; x < T; ++x)
    tally(did, domain_totalization(B, B.identity(x)).domain == B.identity(x),
          [&] { return "dom(" + B.type_name(x) + ")"; });
  std::vector<std::vector<domain_info>> dom(std::size_t(T) * T);
  for (idx y = 0; y < T; ++y)
    for (idx x = 0; x < T; ++x) {
      auto& d = dom[y * T + x];
      for (idx r = 0; r < B.hom_size(y, x); ++r) d.push_back(domain_totalization(B, {y, x, r}));
    }
  for (idx y = 0; y < T; ++y)
    for (idx x = 0; x < T; ++x) {
      const auto& d = dom[y * T + x];
      const term bot_y = B.bottom(y, y);
      tally(dbot, d[B.bottom(y, x).elem].domain == bot_y, [&] { return "dom(⊥) at " + B.type_name(y); });
      const std::uint64_t n = d.size();
      accumulate(dzero, n, e,
                 [&](std::uint64_t r) { return d[r].domain == bot_y && r != B.bottom(y, x).elem; },
                 [&](std::uint64_t r) { return B.describe({y, x, idx(r)}); });
      accumulate(least, n, e,
                 [&](std::uint64_t r) {
                   term rt{y, x, idx(r)};
                   if (B.compose(d[r].domain, rt) != rt) return true;
                   for (idx v : filters_of(B, rt).source)
                     if (!B.entails(d[r].domain, term{y, y, v})) return true;
                   return false;
                 },
                 [&](std::uint64_t r) { return B.describe({y, x, idx(r)}); });
      accumulate(func, n, e,
                 [&](std::uint64_t r) { return functional_adjoint(B, {y, x, idx(r)}) && !d[r].total; },
                 [&](std::uint64_t r) { return B.describe({y, x, idx(r)}); });
      accumulate(mono, n * n, e,
                 [&](std::uint64_t i) {
                   idx a = idx(i / n), b = idx(i % n);
                   return B.hom(y, x).le(a, b) && !B.entails(d[a].domain, d[b].domain);
                 },
                 [&](std::uint64_t i) { return B.describe({y, x, idx(i / n)}) + " ⪯ " + B.describe({y, x, idx(i % n)}); });
      accumulate(ttot, n, e,
                 [&](std::uint64_t r) {
                   return domain_totalization(B, d[r].totalization).domain != d[r].domain;
                 },
                 [&](std::uint64_t r) { return B.describe({y, x, idx(r)}); });
      accumulate(recov, n, e,
                 [&](std::uint64_t r) { return d[r].totalization != term{y, x, idx(r)}; },
                 [&](std::uint64_t r) { return B.describe({y, x, idx(r)}); });
      for (idx z = 0; z < T; ++z) {
        const std::uint64_t ns = B.hom_size(z, y);
        const auto& dz = dom[z * T + x];
        accumulate(comp, ns * n, e,
                   [&](std::uint64_t i) {
                     idx s = idx(i / n), r = idx(i % n);
                     if (!dom[z * T + y][s].total || !d[r].total) return false;
                     return !dz[B.compose({z, y, s}, {y, x, r}).elem].total;
                   },
                   [&](std::uint64_t i) { return "s=" + B.describe({z, y, idx(i / n)}); });
        accumulate(cax, ns * n, e,
                   [&](std::uint64_t i) {
                     term s{z, y, idx(i / n)};
                     term lhs = dz[B.compose(s, term{y, x, idx(i % n)}).elem].domain;
                     term rhs = dom[z * T + y][B.compose(s, d[i % n].domain).elem].domain;
                     return lhs != rhs;
                   },
                   [&](std::uint64_t i) {
                     return "s=" + B.describe({z, y, idx(i / n)}) + " r=" + B.describe({y, x, idx(i % n)});
                   });
      }
    }
  recov.note = "reported only";
  recov.applicable = false;
  for (auto* c : {&did, &dbot, &dzero, &least, &func, &comp, &mono, &cax, &ttot, &recov})
    rep.add(std::move(*c));
  return rep;
}

std::optional<term> subtype_le(const finite_biposet& B, term i, term j) {
  if (i.target != j.target) throw type_error("subtypes of different types");
  auto fi = functional_adjoint(B, i), fj = functional_adjoint(B, j);
  if (!fi || !fi->coreflective || !fj || !fj->coreflective)
    throw type_error("not a subtype");
  const idx y = i.source, z = j.source;
  for (idx h = 0; h < B.hom_size(y, z); ++h) {
    term ht{y, z, h};
    if (B.compose(ht, j) != i) continue;
    auto fh = functional_adjoint(B, ht);
    if (fh && B.compose(fj->adjoint, fh->adjoint) == fi->adjoint) return ht;
  }
  return std::nullopt;
}

topotype_closure close_topotype(const finite_biposet& B, idx x, std::vector<idx> generators) {
  topotype_closure out;
  out.closed.type = x;
  auto& c = out.checks.add("topotype members are comonoids");
  std::set<idx> gens(generators.begin(), generators.end()), s = gens;
  for (idx g : gens)
    tally(c, g < B.hom_size(x, x) && is_comonoid(B, x, g),
          [&] { return std::to_string(g) + " is not a comonoid"; });
  if (!c.passed()) return out;
  s.insert(B.bottom(x, x).elem);
  s.insert(B.identity_raw(x));
  const auto& h = B.hom(x, x);
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<idx> cur(s.begin(), s.end());
    for (idx a : cur)
      for (idx b : cur) {
        grew |= s.insert(B.compose_raw(x, x, x, a, b)).second;
        if (h.has_joins()) grew |= s.insert(h.join(a, b)).second;
      }
  }
  out.closed.members.assign(s.begin(), s.end());
  for (idx a : s)
    if (!gens.count(a)) out.added.push_back(a);
  return out;
}

topotype indiscrete(const finite_biposet& B, idx x) {
  return close_topotype(B, x, {}).closed;
}

std::vector<topotype> all_topotypes(const finite_biposet& B, idx x) {
  auto L = comonoids_at(B, x);
  const idx bot = B.bottom(x, x).elem, id = B.identity_raw(x);
  std::vector<idx> rest;
  for (idx m : L.members)
    if (m != bot && m != id) rest.push_back(m);
  if (rest.size() > 16) throw model_error("too many comonoids to enumerate topotypes");
  std::set<std::vector<idx>> seen;
  std::vector<topotype> out;
  for (std::uint32_t mask = 0; mask < (1u << rest.size()); ++mask) {
    std::vector<idx> g;
    for (std::size_t k = 0; k < rest.size(); ++k)
      if (mask >> k & 1) g.push_back(rest[k]);
    auto cl = close_topotype(B, x, g);
    if (!cl.added.empty()) {
      // keep only subsets that are already closed (up to ⊥ and id)
      bool only_units = std::all_of(cl.added.begin(), cl.added.end(),
                                    [&](idx a) { return a == bot || a == id; });
      if (!only_units) continue;
    }
    if (seen.insert(cl.closed.members).second) out.push_back(cl.closed);
  }
  return out;
}

report validate_topomatrix(const finite_biposet& B, const topomatrix& R) {
  report rep;
  const auto& V = R.rows.members;
  const auto& U = R.cols.members;
  const idx y = R.rows.type, x = R.cols.type;
  auto& cp = rep.add("coprocess entries");
  auto& mo = rep.add("monotone indexing");
  if (R.entries.size() != V.size() * U.size()) {
    tally(cp, false, [] { return std::string("entry count mismatch"); });
    return rep;
  }
  for (std::size_t a = 0; a < V.size(); ++a)
    for (std::size_t b = 0; b < U.size(); ++b) {
      const term& r = R.at(a, b);
      tally(cp,
            r.source == y && r.target == x &&
                B.compose(B.compose(term{y, y, V[a]}, r), term{x, x, U[b]}) == r,
            [&] { return "entry (" + B.hom(y, y).names[V[a]] + "," + B.hom(x, x).names[U[b]] + ")"; });
    }
  if (!cp.passed()) return rep;
  for (std::size_t a = 0; a < V.size(); ++a)
    for (std::size_t a2 = 0; a2 < V.size(); ++a2) {
      if (!B.hom(y, y).le(V[a], V[a2])) continue;
      for (std::size_t b = 0; b < U.size(); ++b)
        for (std::size_t b2 = 0; b2 < U.size(); ++b2)
          if (B.hom(x, x).le(U[b], U[b2]))
            tally(mo, B.entails(R.at(a, b), R.at(a2, b2)), [&] {
              return "r_{" + B.hom(y, y).names[V[a]] + "," + B.hom(x, x).names[U[b]] + "}";
            });
    }
  return rep;
}

topomatrix decompose(const finite_biposet& B, term r, const topotype& V, const topotype& U) {
  if (r.source != V.type || r.target != U.type) throw shape_error("topotypes do not frame the term");
  topomatrix R{V, U, {}};
  for (idx v : V.members)
    for (idx u : U.members)
      R.entries.push_back(B.compose(B.compose(term{V.type, V.type, v}, r), term{U.type, U.type, u}));
  return R;
}

term join_term(const finite_biposet& B, const topomatrix& R) {
  return fold_join(B, R.rows.type, R.cols.type, R.entries);
}

topomatrix matrix_product(const finite_biposet& B, const topomatrix& S, const topomatrix& R) {
  if (!(S.cols == R.rows)) throw shape_error("topomatrix product over different topotypes");
  topomatrix P{S.rows, R.cols, {}};
  const std::size_t nv = R.rows.members.size();
  for (std::size_t w = 0; w < S.rows.members.size(); ++w)
    for (std::size_t u = 0; u < R.cols.members.size(); ++u) {
      term acc = B.bottom(S.rows.type, R.cols.type);
      for (std::size_t v = 0; v < nv; ++v) acc = B.join(acc, B.compose(S.at(w, v), R.at(v, u)));
      P.entries.push_back(acc);
    }
  return P;
}

topomatrix topo_identity(const finite_biposet& B, const topotype& U) {
  topomatrix I{U, U, {}};
  const idx x = U.type;
  for (idx a : U.members)
    for (idx b : U.members) I.entries.push_back(B.compose(term{x, x, a}, term{x, x, b}));
  return I;
}

topomatrix iota(const finite_biposet& B, const topotype& U) {
  return decompose(B, B.identity(U.type), U, indiscrete(B, U.type));
}

topomatrix pi(const finite_biposet& B, const topotype& U) {
  return decompose(B, B.identity(U.type), indiscrete(B, U.type), U);
}

report representation_laws(const finite_biposet& B,
                           const std::vector<std::pair<topotype, topotype>>& pairs, exec e) {
  report rep;
  check jd{"join after decomposition"}, valid{"decomposition is a topomatrix"},
      dj{"decomposition after join"}, ip{"iota and pi inverse"}, idm{"identity decomposition"},
      mult{"decomposition preserves composition"};
  for (const auto& [V, U] : pairs) {
    const idx y = V.type, x = U.type;
    const std::uint64_t n = B.hom_size(y, x);
    accumulate(jd, n, e,
               [&](std::uint64_t r) {
                 term rt{y, x, idx(r)};
                 return join_term(B, decompose(B, rt, V, U)) != rt;
               },
               [&](std::uint64_t r) { return B.describe({y, x, idx(r)}); });
    accumulate(valid, n, e,
               [&](std::uint64_t r) { return !validate_topomatrix(B, decompose(B, {y, x, idx(r)}, V, U)).ok(); },
               [&](std::uint64_t r) { return B.describe({y, x, idx(r)}); });
    accumulate(dj, n, e,
               [&](std::uint64_t r) {
                 auto R = decompose(B, {y, x, idx(r)}, V, U);
                 return decompose(B, join_term(B, R), V, U).entries != R.entries;
               },
               [&](std::uint64_t r) { return B.describe({y, x, idx(r)}); });
    for (const auto* W : {&V, &U}) {
      auto io = matrix_product(B, iota(B, *W), pi(B, *W));
      auto pa = matrix_product(B, pi(B, *W), iota(B, *W));
      tally(ip, io.entries == topo_identity(B, *W).entries &&
                    pa.entries == topo_identity(B, indiscrete(B, W->type)).entries,
            [&] { return "at " + B.type_name(W->type); });
      tally(idm, decompose(B, B.identity(W->type), *W, *W).entries == topo_identity(B, *W).entries,
            [&] { return "at " + B.type_name(W->type); });
    }
    // s: y -> y then r, and r then t: x -> x
    const std::uint64_t ns = B.hom_size(y, y), nt = B.hom_size(x, x);
    accumulate(mult, ns * n, e,
               [&](std::uint64_t i) {
                 term s{y, y, idx(i / n)}, r{y, x, idx(i % n)};
                 return matrix_product(B, decompose(B, s, V, V), decompose(B, r, V, U)).entries !=
                        decompose(B, B.compose(s, r), V, U).entries;
               },
               [&](std::uint64_t i) { return "s=" + B.describe({y, y, idx(i / n)}); });
    accumulate(mult, n * nt, e,
               [&](std::uint64_t i) {
                 term r{y, x, idx(i / nt)}, t{x, x, idx(i % nt)};
                 return matrix_product(B, decompose(B, r, V, U), decompose(B, t, U, U)).entries !=
                        decompose(B, B.compose(r, t), V, U).entries;
               },
               [&](std::uint64_t i) { return "t=" + B.describe({x, x, idx(i % nt)}); });
  }
  for (auto* c : {&jd, &valid, &dj, &ip, &idm, &mult}) rep.add(std::move(*c));
  return rep;
}

report flow_decomposition_identities(const heyting_model& H, exec e, std::uint64_t budget,
                                     std::uint64_t seed) {
  const auto& B = H.base();
  const idx T = idx(B.type_count());
  std::vector<std::vector<topotype>> topos;
  for (idx x = 0; x < T; ++x) topos.push_back(all_topotypes(B, x));

  auto comp = [&](term a, term b) { return B.compose(a, b); };
  auto endo = [](const topotype& W, idx k) { return term{W.type, W.type, W.members[k]}; };
  // join over the members of W of f(w)
  auto big_join = [&](const topotype& W, idx y, idx x, auto f) {
    term acc = B.bottom(y, x);
    for (idx k = 0; k < W.members.size(); ++k) acc = B.join(acc, f(endo(W, k)));
    return acc;
  };
  auto big_meet = [&](const topotype& W, idx y, idx x, auto f) {
    term acc = B.top(y, x);
    for (idx k = 0; k < W.members.size(); ++k) acc = B.meet(acc, f(endo(W, k)));
    return acc;
  };

  // each identity: which type carries the topotype, the homsets of the two
  // terms, and the equation
  struct identity {
    const char* name;
    // index type, first term (src, tgt), second term (src, tgt), given (z, y, x)
    std::function<idx(idx, idx, idx)> at;
    std::function<std::pair<idx, idx>(idx, idx, idx)> first, second;
    std::function<bool(const topotype&, term, term)> holds;
  };
  std::vector<identity> ids;
  // 1: t: z->y, r: y->x, V at y
  ids.push_back({"right tensor product along source tupling",
                 [](idx, idx y, idx) { return y; },
                 [](idx z, idx y, idx) { return std::pair{z, y}; },
                 [](idx, idx y, idx x) { return std::pair{y, x}; },
                 [&](const topotype& V, term t, term r) {
                   term tup = big_join(V, t.source, t.target, [&](term v) { return comp(t, v); });
                   term cot = big_join(V, r.source, r.target, [&](term v) { return comp(v, r); });
                   term rhs = big_join(V, t.source, r.target,
                                       [&](term v) { return comp(comp(t, v), comp(v, r)); });
                   return comp(tup, cot) == rhs;
                 }});
  // 2: t: z->y, r: y->x, U at x
  ids.push_back({"right tensor product along target tupling",
                 [](idx, idx, idx x) { return x; },
                 [](idx z, idx y, idx) { return std::pair{z, y}; },
                 [](idx, idx y, idx x) { return std::pair{y, x}; },
                 [&](const topotype& U, term t, term r) {
                   term tup = big_join(U, r.source, r.target, [&](term u) { return comp(r, u); });
                   term rhs = big_join(U, t.source, r.target, [&](term u) { return comp(t, comp(r, u)); });
                   return comp(t, tup) == rhs;
                 }});
  // 3: r: y->x, s: x->z, V at y
  ids.push_back({"left tensor product along source tupling",
                 [](idx, idx y, idx) { return y; },
                 [](idx, idx y, idx x) { return std::pair{y, x}; },
                 [](idx z, idx, idx x) { return std::pair{x, z}; },
                 [&](const topotype& V, term r, term s) {
                   term cot = big_join(V, r.source, r.target, [&](term v) { return comp(v, r); });
                   term rhs = big_join(V, r.source, s.target, [&](term v) { return comp(comp(v, r), s); });
                   return comp(cot, s) == rhs;
                 }});
  // 4: r: y->x, s: x->z, U at x
  ids.push_back({"left tensor product along target tupling",
                 [](idx, idx, idx x) { return x; },
                 [](idx, idx y, idx x) { return std::pair{y, x}; },
                 [](idx z, idx, idx x) { return std::pair{x, z}; },
                 [&](const topotype& U, term r, term s) {
                   term tup = big_join(U, r.source, r.target, [&](term u) { return comp(r, u); });
                   term cot = big_join(U, s.source, s.target, [&](term u) { return comp(u, s); });
                   term rhs = big_join(U, r.source, s.target,
                                       [&](term u) { return comp(comp(r, u), comp(u, s)); });
                   return comp(tup, cot) == rhs;
                 }});
  // 5: s: z->x, r: y->x, V at y; row entries corestricted to their comonoid
  ids.push_back({"right tensor implication along source tupling",
                 [](idx, idx y, idx) { return y; },
                 [](idx z, idx, idx x) { return std::pair{z, x}; },
                 [](idx, idx y, idx x) { return std::pair{y, x}; },
                 [&](const topotype& V, term s, term r) {
                   term cot = big_join(V, r.source, r.target, [&](term v) { return comp(v, r); });
                   term rhs = big_join(V, s.source, r.source, [&](term v) {
                     return comp(H.right_imply(s, comp(v, r)), v);
                   });
                   return H.right_imply(s, cot) == rhs;
                 }});
  // 6: s: z->x, r: y->x, U at x
  ids.push_back({"right tensor implication along target tupling",
                 [](idx, idx, idx x) { return x; },
                 [](idx z, idx, idx x) { return std::pair{z, x}; },
                 [](idx, idx y, idx x) { return std::pair{y, x}; },
                 [&](const topotype& U, term s, term r) {
                   term ts = big_join(U, s.source, s.target, [&](term u) { return comp(s, u); });
                   term tr = big_join(U, r.source, r.target, [&](term u) { return comp(r, u); });
                   term rhs = big_meet(U, s.source, r.source, [&](term u) {
                     return H.right_imply(comp(s, u), comp(r, u));
                   });
                   return H.right_imply(ts, tr) == rhs;
                 }});
  // 7: r: y->x, t: y->z, V at y
  ids.push_back({"left tensor implication along source tupling",
                 [](idx, idx y, idx) { return y; },
                 [](idx, idx y, idx x) { return std::pair{y, x}; },
                 [](idx z, idx y, idx) { return std::pair{y, z}; },
                 [&](const topotype& V, term r, term t) {
                   term cr = big_join(V, r.source, r.target, [&](term v) { return comp(v, r); });
                   term ct = big_join(V, t.source, t.target, [&](term v) { return comp(v, t); });
                   term rhs = big_meet(V, r.target, t.target, [&](term v) {
                     return H.left_imply(comp(v, r), comp(v, t));
                   });
                   return H.left_imply(cr, ct) == rhs;
                 }});
  // 8: r: y->x, t: y->z, U at x; column entries restricted to their comonoid
  ids.push_back({"left tensor implication along target tupling",
                 [](idx, idx, idx x) { return x; },
                 [](idx, idx y, idx x) { return std::pair{y, x}; },
                 [](idx z, idx y, idx) { return std::pair{y, z}; },
                 [&](const topotype& U, term r, term t) {
                   term tup = big_join(U, r.source, r.target, [&](term u) { return comp(r, u); });
                   term rhs = big_join(U, r.target, t.target, [&](term u) {
                     return comp(u, H.left_imply(comp(r, u), t));
                   });
                   return H.left_imply(tup, t) == rhs;
                 }});

  report rep;
  std::uint64_t salt = seed;
  for (const auto& id : ids) {
    check c{id.name};
    for (idx z = 0; z < T; ++z)
      for (idx y = 0; y < T; ++y)
        for (idx x = 0; x < T; ++x) {
          const auto& W = topos[id.at(z, y, x)];
          auto [a0, a1] = id.first(z, y, x);
          auto [b0, b1] = id.second(z, y, x);
          const std::uint64_t na = B.hom_size(a0, a1), nb = B.hom_size(b0, b1);
          for (const auto& top : W) {
            auto part = run_check_budget(
                c.name, na * nb, budget, ++salt, e,
                [&](std::uint64_t i) {
                  return !id.holds(top, term{a0, a1, idx(i / nb)}, term{b0, b1, idx(i % nb)});
                },
                [&](std::uint64_t i) {
                  return B.describe({a0, a1, idx(i / nb)}) + ", " + B.describe({b0, b1, idx(i % nb)});
                });
            c.instances += part.instances;
            c.violations += part.violations;
            for (auto& s : part.examples)
              if (c.examples.size() < 8) c.examples.push_back(s);
            if (!part.note.empty()) c.note = "sampled";
          }
        }
    rep.add(std::move(c));
  }
  return rep;
}

}  // namespace dialectic

namespace dialectic {

topotype parse_topotype(const finite_biposet& B, std::string_view lit) {
  const std::string file = "<topotype>";
  auto fail = [&](std::size_t at, const std::string& what) {
    throw parse_error(file, 1, int(at) + 1, what);
  };
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  std::string_view s = trim(lit);
  const std::size_t base = lit.size() - s.size();
  if (s.substr(0, 5) != "topo ") fail(0, "expected 'topo <type>: {...}'");
  auto colon = s.find(':');
  if (colon == std::string_view::npos) fail(base, "missing ':'");
  std::string_view tname = trim(s.substr(5, colon - 5));
  auto t = B.find_type(tname);
  if (!t) fail(base + 5, "unknown type '" + std::string(tname) + "'");
  std::string_view body = trim(s.substr(colon + 1));
  if (body.size() < 2 || body.front() != '{' || body.back() != '}') fail(base + colon + 1, "expected {...}");
  body = body.substr(1, body.size() - 2);
  std::vector<idx> gens;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= body.size(); ++i) {
    char c = i < body.size() ? body[i] : ',';
    if (c == '{' || c == '[') ++depth;
    if (c == '}' || c == ']') --depth;
    if (c != ',' || depth != 0) continue;
    std::string_view name = trim(body.substr(start, i - start));
    start = i + 1;
    if (name.empty()) continue;
    auto e = B.find_term(*t, *t, name);
    if (!e) fail(base, "no endoterm '" + std::string(name) + "' at " + std::string(tname));
    gens.push_back(e->elem);
  }
  auto cl = close_topotype(B, *t, gens);
  if (!cl.checks.ok()) throw model_error("topotype members must be comonoids:\n" + cl.checks.text());
  std::set<idx> given(gens.begin(), gens.end());
  given.insert(B.bottom(*t, *t).elem);
  given.insert(B.identity_raw(*t));
  for (idx a : cl.added)
    if (!given.count(a))
      throw model_error("topotype not closed: needs " + B.describe({*t, *t, a}));
  return cl.closed;
}

}  // namespace dialectic
