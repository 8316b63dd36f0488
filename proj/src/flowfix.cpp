#include "dialectic/flowfix.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace dialectic {

report check_separator(const finite_biposet& B, idx one, exec e) {
  report rep;
  auto& c = rep.add("separator distinguishes terms");
  const idx T = idx(B.type_count());
  for (idx y = 0; y < T; ++y)
    for (idx x = 0; x < T; ++x) {
      const std::uint64_t n = B.hom_size(y, x), m = B.hom_size(one, y);
      accumulate(
          c, n * n, e,
          [&](std::uint64_t i) {
            idx s = idx(i / n), r = idx(i % n);
            if (s == r) return false;
            for (idx p = 0; p < m; ++p)
              if (B.compose_raw(one, y, x, p, s) != B.compose_raw(one, y, x, p, r)) return false;
            return true;
          },
          [&](std::uint64_t i) {
            return B.describe({y, x, idx(i / n)}) + " and " + B.describe({y, x, idx(i % n)}) +
                   " have the same direct flow";
          });
    }
  return rep;
}

std::optional<idx> find_separator(const finite_biposet& B, exec e) {
  // smallest endohomset first, so a unit type wins
  std::vector<idx> order(B.type_count());
  for (idx t = 0; t < order.size(); ++t) order[t] = t;
  std::stable_sort(order.begin(), order.end(),
                   [&](idx a, idx b) { return B.hom_size(a, a) < B.hom_size(b, b); });
  for (idx t : order)
    if (check_separator(B, t, e).ok()) return t;
  return std::nullopt;
}

object_lattice objects(const finite_biposet& B, idx one, idx x) {
  if (one >= B.type_count() || x >= B.type_count()) throw type_error("type out of range");
  return object_lattice{one, x, &B.hom(one, x)};
}

adjoint_pair behavior(const heyting_model& H, idx one, term r) {
  const finite_biposet& B = H.base();
  const idx y = r.source, x = r.target;
  const auto& hy = B.hom(one, y);
  const auto& hx = B.hom(one, x);
  std::vector<idx> direct(hy.size()), inverse(hx.size());
  for (idx p = 0; p < hy.size(); ++p) direct[p] = B.compose_raw(one, y, x, p, r.elem);
  for (idx q = 0; q < hx.size(); ++q) inverse[q] = H.right_raw(one, y, x, q, r.elem);
  return adjoint_pair::make(monotone_map::make(hy.order, hx.order, std::move(direct)),
                            monotone_map::make(hx.order, hy.order, std::move(inverse)));
}

report behavior_laws(const heyting_model& H, idx one, exec e, std::uint64_t budget,
                     std::uint64_t seed) {
  const finite_biposet& B = H.base();
  const idx T = idx(B.type_count());
  report rep;
  check adj{"behavior is an adjoint pair"}, ident{"flow along identities is identity"},
      dir{"direct flow functorial"}, inv{"inverse flow contravariantly functorial"};
  for (idx y = 0; y < T; ++y)
    for (idx x = 0; x < T; ++x)
      for (idx r = 0; r < B.hom_size(y, x); ++r) {
        ++adj.instances;
        try {
          behavior(H, one, {y, x, r});
        } catch (const model_error&) {
          ++adj.violations;
          if (adj.examples.size() < 8) adj.examples.push_back(B.describe({y, x, r}));
        }
      }
  for (idx x = 0; x < T; ++x) {
    const idx id = B.identity_raw(x);
    accumulate(
        ident, B.hom_size(one, x), e,
        [&](std::uint64_t p) {
          return B.compose_raw(one, x, x, idx(p), id) != p || H.right_raw(one, x, x, idx(p), id) != p;
        },
        [&](std::uint64_t p) { return B.describe({one, x, idx(p)}); });
  }
  for (idx z = 0; z < T; ++z)
    for (idx y = 0; y < T; ++y)
      for (idx x = 0; x < T; ++x) {
        const std::uint64_t ns = B.hom_size(z, y), nr = B.hom_size(y, x), pz = B.hom_size(one, z),
                            px = B.hom_size(one, x);
        auto d = run_check_budget(
            dir.name, ns * nr * pz, budget, seed, e,
            [&](std::uint64_t i) {
              idx s = idx(i / (nr * pz)), r = idx((i / pz) % nr), p = idx(i % pz);
              idx sr = B.compose_raw(z, y, x, s, r);
              return B.compose_raw(one, z, x, p, sr) !=
                     B.compose_raw(one, y, x, B.compose_raw(one, z, y, p, s), r);
            },
            [&](std::uint64_t i) {
              return B.describe({z, y, idx(i / (nr * pz))}) + " ∘ " + B.describe({y, x, idx((i / pz) % nr)});
            });
        auto v = run_check_budget(
            inv.name, ns * nr * px, budget, seed, e,
            [&](std::uint64_t i) {
              idx s = idx(i / (nr * px)), r = idx((i / px) % nr), q = idx(i % px);
              idx sr = B.compose_raw(z, y, x, s, r);
              return H.right_raw(one, z, x, q, sr) != H.right_raw(one, z, y, H.right_raw(one, y, x, q, r), s);
            },
            [&](std::uint64_t i) {
              return B.describe({z, y, idx(i / (nr * px))}) + " ∘ " + B.describe({y, x, idx((i / px) % nr)});
            });
        for (auto [into, from] : {std::pair{&dir, &d}, std::pair{&inv, &v}}) {
          into->instances += from->instances;
          into->violations += from->violations;
          for (auto& s : from->examples)
            if (into->examples.size() < 8) into->examples.push_back(s);
          if (!from->note.empty()) into->note = from->note;
        }
      }
  for (auto* c : {&adj, &ident, &dir, &inv}) rep.add(std::move(*c));
  return rep;
}

flow_operator yinyang(const heyting_model& H, idx one, const dialectical_system& sys, flow_variant v) {
  const finite_biposet& B = H.base();
  const term s = sys.s, r = sys.r;
  if (s.source != r.source || s.target != r.target) throw type_error("system terms are not parallel");
  const idx y = r.source, x = r.target;
  flow_operator F;
  switch (v) {
    case flow_variant::yinyang: F.source = one, F.target = x; break;
    case flow_variant::yangyin: F.source = one, F.target = y; break;
    case flow_variant::reverse_yinyang: F.source = y, F.target = one; break;
    case flow_variant::reverse_yangyin: F.source = x, F.target = one; break;
  }
  const std::size_t n = B.hom_size(F.source, F.target);
  F.table.resize(n);
  for (idx p = 0; p < n; ++p) {
    switch (v) {
      case flow_variant::yinyang:
        F.table[p] = B.compose_raw(one, y, x, H.right_raw(one, y, x, p, r.elem), s.elem);
        break;
      case flow_variant::yangyin:
        F.table[p] = H.right_raw(one, y, x, B.compose_raw(one, y, x, p, s.elem), r.elem);
        break;
      case flow_variant::reverse_yinyang:
        F.table[p] = B.compose_raw(y, x, one, s.elem, H.left_raw(y, x, one, r.elem, p));
        break;
      case flow_variant::reverse_yangyin:
        F.table[p] = H.left_raw(y, x, one, r.elem, B.compose_raw(y, x, one, s.elem, p));
        break;
    }
  }
  return F;
}

fixpoint_result fixpoints(const finite_biposet& B, const flow_operator& F, extremal mode) {
  const auto& h = B.hom(F.source, F.target);
  const std::size_t n = h.size();
  fixpoint_result out;
  auto& mono = out.checks.add("operator monotone");
  mono.instances = std::uint64_t(n) * n;
  for (idx a = 0; a < n; ++a)
    for (idx b = 0; b < n; ++b)
      if (h.le(a, b) && !h.le(F(a), F(b))) {
        ++mono.violations;
        if (mono.examples.size() < 8) mono.examples.push_back(h.names[a] + " <= " + h.names[b]);
      }
  idx start = mode == extremal::least ? h.bottom : h.top;
  if (start == npos) {
    auto b = mode == extremal::least ? h.order->bottom() : h.order->top();
    if (!b) throw capability_error("object lattice has no start point");
    start = *b;
  }
  idx p = start;
  for (std::size_t k = 0; k <= n; ++k) {
    idx q = F(p);
    if (q == p) break;
    p = q;
    ++out.iterations;
  }
  out.point = p;
  auto& fixed = out.checks.add("iterate is fixed");
  fixed.instances = 1;
  if (F(p) != p) {
    fixed.violations = 1;
    fixed.examples.push_back("iteration did not stabilize at " + h.names[p]);
  }
  auto& ext = out.checks.add(mode == extremal::least ? "least fixpoint rule" : "greatest fixpoint rule");
  for (idx t = 0; t < n; ++t) {
    if (F(t) != t) continue;
    ++ext.instances;
    bool ok = mode == extremal::least ? h.le(p, t) : h.le(t, p);
    if (!ok) {
      ++ext.violations;
      if (ext.examples.size() < 8) ext.examples.push_back("fixpoint " + h.names[t]);
    }
  }
  return out;
}

report flow_decompose(const heyting_model& H, idx one, const dialectical_system& sys, const topotype& V) {
  const finite_biposet& B = H.base();
  const idx y = sys.r.source, x = sys.r.target;
  if (V.type != y) throw shape_error("topotype is not at the source type");
  auto cl = close_topotype(B, y, V.members);
  if (!cl.checks.ok() || !cl.added.empty()) throw shape_error("invalid topotype");

  report rep;
  auto& unity = rep.add("join of comonoid flows is identity");
  const auto& hy = B.hom(one, y);
  for (idx p = 0; p < hy.size(); ++p) {
    ++unity.instances;
    idx acc = B.bottom(one, y).elem;
    for (idx v : V.members) {
      flow_operator Fv = yinyang(H, one, {term{y, y, v}, term{y, y, v}});
      acc = hy.join(acc, Fv(p));
    }
    if (acc != p) {
      ++unity.violations;
      if (unity.examples.size() < 8) unity.examples.push_back(hy.names[p] + " goes to " + hy.names[acc]);
    }
  }

  auto& dec = rep.add("flow decomposes over the topotype");
  const auto& hx = B.hom(one, x);
  flow_operator whole = yinyang(H, one, sys);
  std::vector<flow_operator> parts;
  for (idx v : V.members) {
    term vt{y, y, v};
    parts.push_back(yinyang(H, one, {B.compose(vt, sys.s), B.compose(vt, sys.r)}));
  }
  for (idx p = 0; p < hx.size(); ++p) {
    ++dec.instances;
    idx acc = B.bottom(one, x).elem;
    for (const auto& F : parts) acc = hx.join(acc, F(p));
    if (acc != whole(p)) {
      ++dec.violations;
      if (dec.examples.size() < 8)
        dec.examples.push_back("at " + hx.names[p] + ": whole " + hx.names[whole(p)] + ", parts " +
                               hx.names[acc]);
    }
  }
  return rep;
}

report yinyang_laws(const heyting_model& H, idx one, exec e) {
  const finite_biposet& B = H.base();
  const idx T = idx(B.type_count());
  report rep;
  check dec{"flow along r decreasing"}, idc{"identity system fixes everything"},
      fun{"functional flow equals comonoid flow"};
  for (idx y = 0; y < T; ++y)
    for (idx x = 0; x < T; ++x) {
      const auto& hx = B.hom(one, x);
      const std::uint64_t nr = B.hom_size(y, x), np = hx.size();
      accumulate(
          dec, nr * np, e,
          [&](std::uint64_t i) {
            term r{y, x, idx(i / np)};
            idx p = idx(i % np);
            idx q = B.compose_raw(one, y, x, H.right_raw(one, y, x, p, r.elem), r.elem);
            return !hx.le(q, p);
          },
          [&](std::uint64_t i) { return B.describe({y, x, idx(i / np)}) + " at " + hx.names[i % np]; });
      for (idx r = 0; r < nr; ++r) {
        term f{y, x, r};
        auto info = functional_adjoint(B, f);
        if (!info) continue;
        ++fun.instances;
        term c = B.compose(info->adjoint, f);
        if (yinyang(H, one, {f, f}).table != yinyang(H, one, {c, c}).table) {
          ++fun.violations;
          if (fun.examples.size() < 8) fun.examples.push_back(B.describe(f));
        }
      }
    }
  for (idx x = 0; x < T; ++x) {
    term id = B.identity(x);
    auto F = yinyang(H, one, {id, id});
    for (idx p = 0; p < F.table.size(); ++p) {
      ++idc.instances;
      if (F(p) != p) {
        ++idc.violations;
        if (idc.examples.size() < 8) idc.examples.push_back(B.describe({one, x, p}));
      }
    }
    auto lf = fixpoints(B, F, extremal::least);
    ++idc.instances;
    if (lf.point != B.bottom(one, x).elem) {
      ++idc.violations;
      idc.examples.push_back("least fixpoint of the identity system is not ⊥ at " + B.type_name(x));
    }
  }
  for (auto* c : {&dec, &idc, &fun}) rep.add(std::move(*c));
  return rep;
}

std::size_t horn_program::atom_index(std::size_t pred, const std::vector<std::size_t>& args) const {
  std::size_t off = 0;
  for (std::size_t p = 0; p < pred; ++p) {
    std::size_t n = 1;
    for (std::size_t k = 0; k < preds[p].arity; ++k) n *= preds[p].values.size();
    off += n;
  }
  std::size_t local = 0;
  for (std::size_t a : args) local = local * preds[pred].values.size() + a;
  return off + local;
}

std::string horn_program::atom_name(std::size_t a) const {
  const auto& g = atoms[a];
  const auto& p = preds[g.pred];
  std::string s = p.name;
  if (!g.args.empty()) {
    s += "(";
    for (std::size_t k = 0; k < g.args.size(); ++k) {
      if (k) s += ",";
      s += p.values[g.args[k]];
    }
    s += ")";
  }
  return s;
}

namespace {

struct literal {
  std::string pred;
  std::vector<std::string> args;
  int col = 1;
};

bool is_variable(const std::string& t) {
  return !t.empty() && (std::isupper(static_cast<unsigned char>(t[0])) || t[0] == '_');
}

struct horn_reader {
  std::string file;
  int line = 0;
  std::string_view text;
  std::size_t pos = 0;
  horn_program P;
  std::map<std::string, std::vector<std::string>> domains;

  [[noreturn]] void fail(const std::string& what, int col = 1) const { throw parse_error(file, line, col, what); }

  void skip() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  int col() const { return int(pos) + 1; }

  std::string ident() {
    skip();
    std::size_t b = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_' || text[pos] == '-'))
      ++pos;
    if (b == pos) fail("expected a name", int(b) + 1);
    return std::string(text.substr(b, pos - b));
  }

  bool eat(char c) {
    skip();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void want(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'", col());
  }

  std::vector<std::string> domain_body() {
    // {1..4} or {a,b,c}
    want('{');
    std::vector<std::string> vals;
    std::string first = ident();
    skip();
    if (text.substr(pos, 2) == "..") {
      pos += 2;
      std::string last = ident();
      int lo = 0, hi = 0;
      try {
        lo = std::stoi(first);
        hi = std::stoi(last);
      } catch (const std::exception&) {
        fail("range bounds must be integers", col());
      }
      if (hi < lo) fail("empty range", col());
      for (int v = lo; v <= hi; ++v) vals.push_back(std::to_string(v));
    } else {
      vals.push_back(first);
      while (eat(',')) vals.push_back(ident());
    }
    want('}');
    std::set<std::string> seen(vals.begin(), vals.end());
    if (seen.size() != vals.size()) fail("repeated domain value");
    return vals;
  }

  std::string domain_ref() {
    std::string name = ident();
    skip();
    if (pos < text.size() && text[pos] == '{') {
      auto vals = domain_body();
      if (domains.count(name) && domains[name] != vals) fail("domain " + name + " redefined");
      domains[name] = std::move(vals);
    } else if (!domains.count(name)) {
      fail("unknown domain " + name);
    }
    return name;
  }

  literal lit() {
    skip();
    literal l;
    l.col = col();
    l.pred = ident();
    if (eat('(')) {
      l.args.push_back(ident());
      while (eat(',')) l.args.push_back(ident());
      want(')');
    }
    return l;
  }

  std::size_t pred_of(const literal& l) const {
    for (std::size_t p = 0; p < P.preds.size(); ++p)
      if (P.preds[p].name == l.pred) {
        if (P.preds[p].arity != l.args.size())
          fail(l.pred + " has arity " + std::to_string(P.preds[p].arity), l.col);
        return p;
      }
    fail("undeclared predicate " + l.pred, l.col);
  }

  void end() {
    eat('.');
    skip();
    if (pos != text.size()) fail("unexpected text", col());
  }

  void statement(std::string_view s) {
    text = s;
    pos = 0;
    std::string kw = ident();
    if (kw == "domain") {
      domain_ref();
      end();
    } else if (kw == "pred") {
      if (!P.atoms.empty()) fail("predicates must be declared before facts and rules");
      horn_program::predicate p;
      p.name = ident();
      want('/');
      std::string ar = ident();
      try {
        p.arity = std::stoul(ar);
      } catch (const std::exception&) {
        fail("bad arity", col());
      }
      for (const auto& q : P.preds)
        if (q.name == p.name) fail("predicate " + p.name + " declared twice");
      skip();
      if (p.arity > 0) {
        if (ident() != "domain") fail("expected 'domain'", col());
        p.domain = domain_ref();
        p.values = domains[p.domain];
      }
      end();
      P.preds.push_back(std::move(p));
    } else if (kw == "fact" || kw == "rule") {
      if (P.atoms.empty()) build_atoms();
      literal head = lit();
      std::vector<literal> body;
      skip();
      if (kw == "rule") {
        if (text.substr(pos, 2) != ":-") fail("expected ':-'", col());
        pos += 2;
        body.push_back(lit());
        while (eat(',')) body.push_back(lit());
      }
      end();
      ground(head, body, kw == "fact");
    } else {
      fail("unknown statement '" + kw + "'");
    }
  }

  void build_atoms() {
    for (std::size_t p = 0; p < P.preds.size(); ++p) {
      const std::size_t r = P.preds[p].arity, d = P.preds[p].values.size();
      std::size_t n = 1;
      for (std::size_t k = 0; k < r; ++k) {
        n *= d;
        if (n > (std::size_t(1) << 24)) fail("too many ground atoms");
      }
      for (std::size_t i = 0; i < n; ++i) {
        horn_program::ground_atom g{p, std::vector<std::size_t>(r)};
        std::size_t rest = i;
        for (std::size_t k = r; k-- > 0;) {
          g.args[k] = rest % d;
          rest /= d;
        }
        P.atoms.push_back(std::move(g));
      }
    }
  }

  void ground(const literal& head, const std::vector<literal>& body, bool fact) {
    std::vector<const literal*> lits{&head};
    for (const auto& b : body) lits.push_back(&b);
    std::vector<std::string> vars;
    std::map<std::string, std::vector<std::string>> range;
    for (const literal* l : lits) {
      const auto& pd = P.preds[pred_of(*l)];
      for (const auto& a : l->args) {
        if (is_variable(a)) {
          if (fact) fail("facts must be ground", l->col);
          if (!range.count(a)) {
            vars.push_back(a);
            range[a] = pd.values;
          } else {
            auto& r = range[a];
            r.erase(std::remove_if(r.begin(), r.end(),
                                   [&](const std::string& v) {
                                     return std::find(pd.values.begin(), pd.values.end(), v) == pd.values.end();
                                   }),
                    r.end());
          }
        } else if (std::find(pd.values.begin(), pd.values.end(), a) == pd.values.end()) {
          fail("'" + a + "' is not in the domain of " + l->pred, l->col);
        }
      }
    }
    std::map<std::string, std::string> val;
    auto index = [&](const literal& l) {
      std::size_t p = pred_of(l);
      const auto& vs = P.preds[p].values;
      std::vector<std::size_t> args;
      for (const auto& a : l.args) {
        const std::string& v = is_variable(a) ? val[a] : a;
        args.push_back(std::size_t(std::find(vs.begin(), vs.end(), v) - vs.begin()));
      }
      return P.atom_index(p, args);
    };
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (k == vars.size()) {
        horn_program::clause c;
        c.head = index(head);
        for (const auto& b : body) c.body.push_back(index(b));
        std::sort(c.body.begin(), c.body.end());
        c.body.erase(std::unique(c.body.begin(), c.body.end()), c.body.end());
        P.clauses.push_back(std::move(c));
        return;
      }
      for (const auto& v : range[vars[k]]) {
        val[vars[k]] = v;
        rec(k + 1);
      }
    };
    rec(0);
  }
};

}  // namespace

horn_program parse_horn(std::string_view text, const std::string& filename) {
  horn_reader rd;
  rd.file = filename;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++rd.line;
    for (char c : {'%', '#'})
      if (auto h = line.find(c); h != std::string::npos) line.resize(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    rd.statement(line);
  }
  if (rd.P.atoms.empty()) rd.build_atoms();
  return std::move(rd.P);
}

horn_matrices horn_matrices_of(const horn_program& P) {
  horn_matrices M{bit_matrix(P.clauses.size(), P.atoms.size()), bit_matrix(P.clauses.size(), P.atoms.size())};
  for (std::size_t c = 0; c < P.clauses.size(); ++c) {
    M.S.set(c, P.clauses[c].head);
    for (std::size_t a : P.clauses[c].body) M.R.set(c, a);
  }
  return M;
}

bit_vector enabled_clauses(const bit_matrix& R, const bit_vector& phi, exec e) {
  bit_vector out((R.rows + 63) / 64, 0);
  const auto n = static_cast<std::int64_t>(R.rows);
  auto body_in = [&](std::int64_t c) {
    const std::uint64_t* row = R.row(std::size_t(c));
    for (std::size_t w = 0; w < R.words; ++w)
      if (row[w] & ~phi[w]) return false;
    return true;
  };
  if (e == exec::parallel) {
    // one output word per iteration, so no two threads share a word
    const auto nw = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t w = 0; w < nw; ++w)
      for (std::int64_t c = w * 64; c < std::min<std::int64_t>(n, (w + 1) * 64); ++c)
        if (body_in(c)) out[std::size_t(w)] |= std::uint64_t(1) << (c % 64);
  } else {
    for (std::int64_t c = 0; c < n; ++c)
      if (body_in(c)) out[std::size_t(c / 64)] |= std::uint64_t(1) << (c % 64);
  }
  return out;
}

bit_vector heads_of(const bit_matrix& S, const bit_vector& psi, exec e) {
  bit_vector out(S.words, 0);
  const auto nw = static_cast<std::int64_t>(S.words);
  auto word = [&](std::int64_t w) {
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < S.rows; ++c)
      if ((psi[c / 64] >> (c % 64)) & 1) acc |= S.row(c)[w];
    out[std::size_t(w)] = acc;
  };
  if (e == exec::parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t w = 0; w < nw; ++w) word(w);
  } else {
    for (std::int64_t w = 0; w < nw; ++w) word(w);
  }
  return out;
}

horn_result horn_eval(const horn_program& P, exec e) {
  auto M = horn_matrices_of(P);
  horn_result out;
  out.model.assign(M.S.words, 0);
  for (std::size_t k = 0; k <= P.atoms.size(); ++k) {
    bit_vector next = heads_of(M.S, enabled_clauses(M.R, out.model, e), e);
    if (next == out.model) break;
    out.model = std::move(next);
    ++out.iterations;
  }
  for (std::size_t a = 0; a < P.atoms.size(); ++a)
    if ((out.model[a / 64] >> (a % 64)) & 1) out.atoms.push_back(a);
  return out;
}

}  // namespace dialectic
