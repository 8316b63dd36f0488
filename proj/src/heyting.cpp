#include "dialectic/heyting.hpp"

#include <array>

namespace dialectic {

namespace {

void require_lattices(const finite_biposet& B) {
  for (idx y = 0; y < B.type_count(); ++y)
    for (idx x = 0; x < B.type_count(); ++x) {
      const auto& h = B.hom(y, x);
      if (!h.has_joins())
        throw capability_error("hom(" + B.type_name(y) + "," + B.type_name(x) +
                               ") is not join-complete");
      if (!h.has_meets())
        throw capability_error("hom(" + B.type_name(y) + "," + B.type_name(x) +
                               ") has no meets");
    }
}

template <class F>
void parallel_fill(std::vector<idx>& out, std::size_t n, exec e, F&& f) {
  out.resize(n);
  const auto sn = static_cast<std::int64_t>(n);
  if (e == exec::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < sn; ++i) out[i] = f(std::size_t(i));
  } else {
    for (std::int64_t i = 0; i < sn; ++i) out[i] = f(std::size_t(i));
  }
}

// merges a budgeted check into an aggregate with the same name
template <class F, class D>
void block(check& into, std::uint64_t n, std::uint64_t budget, std::uint64_t seed,
           exec e, F&& bad, D&& desc) {
  check part = run_check_budget(into.name, n, budget, seed, e, bad, desc);
  into.instances += part.instances;
  into.violations += part.violations;
  for (auto& s : part.examples)
    if (into.examples.size() < 8) into.examples.push_back(std::move(s));
  if (!part.note.empty()) into.note = "sampled";
}

}  // namespace

heyting_model heyting_model::build(std::shared_ptr<const finite_biposet> base, exec e) {
  require_lattices(*base);
  const finite_biposet& B = *base;
  closed_forms sweep;
  sweep.left = [&B](idx y, idx x, idx z, idx r, idx t) {
    const auto& hxz = B.hom(x, z);
    const auto& hyz = B.hom(y, z);
    idx j = hxz.bottom;
    for (idx s = 0; s < hxz.size(); ++s)
      if (hyz.le(B.compose_raw(y, x, z, r, s), t)) j = hxz.join(j, s);
    return j;
  };
  sweep.right = [&B](idx z, idx y, idx x, idx s, idx r) {
    const auto& hzy = B.hom(z, y);
    const auto& hzx = B.hom(z, x);
    idx j = hzy.bottom;
    for (idx t = 0; t < hzy.size(); ++t)
      if (hzx.le(B.compose_raw(z, y, x, t, r), s)) j = hzy.join(j, t);
    return j;
  };
  return build(std::move(base), sweep, e);
}

heyting_model heyting_model::build(std::shared_ptr<const finite_biposet> base,
                                   const closed_forms& forms, exec e) {
  require_lattices(*base);
  heyting_model H;
  H.base_ = std::move(base);
  const finite_biposet& B = *H.base_;
  const idx T = B.type_count();
  H.left_.resize(std::size_t(T) * T * T);
  H.right_.resize(std::size_t(T) * T * T);
  for (idx a = 0; a < T; ++a)
    for (idx b = 0; b < T; ++b)
      for (idx c = 0; c < T; ++c) {
        // left: y=a, x=b, z=c over hom(y,x) x hom(y,z)
        const std::size_t nt = B.hom_size(a, c);
        parallel_fill(H.left_[(a * T + b) * T + c], B.hom_size(a, b) * nt, e,
                      [&](std::size_t i) { return forms.left(a, b, c, idx(i / nt), idx(i % nt)); });
        // right: z=a, y=b, x=c over hom(z,x) x hom(y,x)
        const std::size_t nr = B.hom_size(b, c);
        parallel_fill(H.right_[(a * T + b) * T + c], B.hom_size(a, c) * nr, e,
                      [&](std::size_t i) { return forms.right(a, b, c, idx(i / nr), idx(i % nr)); });
      }
  for (const auto* tables : {&H.left_, &H.right_})
    for (std::size_t k = 0; k < tables->size(); ++k) {
      const idx out_y = tables == &H.left_ ? idx((k / T) % T) : idx(k / (T * T));
      const idx out_x = tables == &H.left_ ? idx(k % T) : idx((k / T) % T);
      for (idx v : (*tables)[k])
        if (v >= B.hom_size(out_y, out_x)) throw model_error("implication value out of range");
    }
  report audit = audit_dialectical_axioms(H, e);
  if (!audit.ok()) {
    std::string msg = "dialectical axioms fail";
    for (const auto& c : audit.checks())
      if (!c.passed() && !c.examples.empty()) msg += ": " + c.examples.front();
    throw model_error(msg);
  }
  H.neg_.resize(std::size_t(T) * T);
  for (idx y = 0; y < T; ++y)
    for (idx x = 0; x < T; ++x) {
      auto& v = H.neg_[y * T + x];
      v.resize(B.hom_size(y, x));
      const auto& hxy = B.hom(x, y);
      for (idx r = 0; r < v.size(); ++r)
        v[r] = hxy.meet(H.left_raw(y, x, y, r, B.identity_raw(y)),
                        H.right_raw(x, y, x, B.identity_raw(x), r));
    }
  return H;
}

term heyting_model::left_imply(term r, term t) const {
  if (r.source != t.source)
    throw type_error("left implication needs a common source: " + base_->describe(r) +
                     ", " + base_->describe(t));
  return term{r.target, t.target, left_raw(r.source, r.target, t.target, r.elem, t.elem)};
}

term heyting_model::right_imply(term s, term r) const {
  if (s.target != r.target)
    throw type_error("right implication needs a common target: " + base_->describe(s) +
                     ", " + base_->describe(r));
  return term{s.source, r.source, right_raw(s.source, r.source, s.target, s.elem, r.elem)};
}

term heyting_model::tensor_imply(side sd, term a, term b) const {
  return sd == side::left ? left_imply(a, b) : right_imply(a, b);
}

term heyting_model::negation(term r) const {
  return term{r.target, r.source, negation_raw(r.source, r.target, r.elem)};
}

term heyting_model::double_negation(term r) const { return negation(negation(r)); }

std::vector<term> heyting_model::dn_closed_terms(idx y, idx x) const {
  std::vector<term> out;
  for (idx r = 0; r < base_->hom_size(y, x); ++r)
    if (dn_closed(term{y, x, r})) out.push_back(term{y, x, r});
  return out;
}

report audit_dialectical_axioms(const heyting_model& H, exec e) {
  const finite_biposet& B = H.base();
  const idx T = B.type_count();
  report rep;
  check left{"left dialectical axiom"};
  check right{"right dialectical axiom"};
  for (idx a = 0; a < T; ++a)
    for (idx b = 0; b < T; ++b)
      for (idx c = 0; c < T; ++c) {
        {
          // y=a, x=b, z=c: r∘s ⪯ t iff s ⪯ r⊸t
          const auto& hxz = B.hom(b, c);
          const auto& hyz = B.hom(a, c);
          const std::uint64_t nr = B.hom_size(a, b), ns = hxz.size(), nt = hyz.size();
          accumulate(
              left, nr * ns * nt, e,
              [&](std::uint64_t i) {
                idx r = i / (ns * nt), s = (i / nt) % ns, t = i % nt;
                return hyz.le(B.compose_raw(a, b, c, r, s), t) !=
                       hxz.le(s, H.left_raw(a, b, c, r, t));
              },
              [&](std::uint64_t i) {
                return "r=" + B.describe({a, b, idx(i / (ns * nt))}) +
                       " s=" + B.describe({b, c, idx((i / nt) % ns)}) +
                       " t=" + B.describe({a, c, idx(i % nt)});
              });
        }
        {
          // z=a, y=b, x=c: t∘r ⪯ s iff t ⪯ s⟜r
          const auto& hzy = B.hom(a, b);
          const auto& hzx = B.hom(a, c);
          const std::uint64_t nt = hzy.size(), nr = B.hom_size(b, c), ns = hzx.size();
          accumulate(
              right, nt * nr * ns, e,
              [&](std::uint64_t i) {
                idx t = i / (nr * ns), r = (i / ns) % nr, s = i % ns;
                return hzx.le(B.compose_raw(a, b, c, t, r), s) !=
                       hzy.le(t, H.right_raw(a, b, c, s, r));
              },
              [&](std::uint64_t i) {
                return "t=" + B.describe({a, b, idx(i / (nr * ns))}) +
                       " r=" + B.describe({b, c, idx((i / ns) % nr)}) +
                       " s=" + B.describe({a, c, idx(i % ns)});
              });
        }
      }
  rep.add(std::move(left));
  rep.add(std::move(right));
  return rep;
}

classical_pair classical_connectives(const heyting_model& H, term s, term r) {
  term sr = H.compose(s, r);
  term nn = H.double_negation(sr);
  term sum = H.negation(H.compose(H.negation(r), H.negation(s)));
  return classical_pair{nn, sum};
}

boolean_pair boolean_connectives(const heyting_model& H, term a, term b) {
  const finite_biposet& B = H.base();
  return boolean_pair{H.double_negation(B.join(a, b)), B.meet(a, b)};
}

report functoriality_lemma_check(const heyting_model& H, exec e) {
  const finite_biposet& B = H.base();
  const idx T = B.type_count();
  const center_info ci = quasisymmetry_center(B, e);
  report rep;
  check c{"functoriality lemma"};
  for (idx z = 0; z < T; ++z)
    for (idx y = 0; y < T; ++y)
      for (idx x = 0; x < T; ++x) {
        const std::uint64_t b = B.hom_size(z, y), n = B.hom_size(y, x);
        const auto& qs = ci.per_term[z * T + y];
        const auto& qr = ci.per_term[y * T + x];
        accumulate(
            c, b * n, e,
            [&](std::uint64_t i) {
              term s{z, y, idx(i / n)}, r{y, x, idx(i % n)};
              if (!qs[s.elem] || !qr[r.elem]) return false;
              term lhs = B.compose(H.double_negation(s), H.double_negation(r));
              return !B.entails(lhs, H.double_negation(B.compose(s, r)));
            },
            [&](std::uint64_t i) {
              return "s=" + B.describe({z, y, idx(i / n)}) + " r=" +
                     B.describe({y, x, idx(i % n)});
            });
      }
  // count only the quasisymmetric pairs as instances
  std::uint64_t pairs = 0;
  for (idx z = 0; z < T; ++z)
    for (idx y = 0; y < T; ++y)
      for (idx x = 0; x < T; ++x) {
        std::uint64_t a = 0, b = 0;
        for (auto v : ci.per_term[z * T + y]) a += v;
        for (auto v : ci.per_term[y * T + x]) b += v;
        pairs += a * b;
      }
  c.instances = pairs;
  rep.add(std::move(c));
  return rep;
}

bool is_heyting_coquasisymmetric(const heyting_model& H, term r) {
  const finite_biposet& B = H.base();
  for (idx s = 0; s < B.hom_size(r.target, r.source); ++s) {
    term st{r.target, r.source, s};
    if (H.negation(st) == r && is_quasisymmetric(B, st)) return true;
  }
  return false;
}

std::optional<term> pole(const heyting_model& H, term r) {
  const finite_biposet& B = H.base();
  const auto& h = B.hom(r.source, r.target);
  idx j = h.bottom;
  for (idx c = 0; c < h.size(); ++c)
    if (h.le(c, r.elem) && is_quasisymmetric(B, term{r.source, r.target, c}))
      j = h.join(j, c);
  term interior{r.source, r.target, j};
  if (!is_quasisymmetric(B, interior)) return std::nullopt;
  return H.double_negation(interior);
}

report heyting_laws(const heyting_model& H, exec e, std::uint64_t budget,
                    std::uint64_t seed) {
  const finite_biposet& B = H.base();
  const idx T = B.type_count();
  report rep = audit_dialectical_axioms(H, e);
  auto d = [&](idx y, idx x, std::uint64_t i) { return B.describe({y, x, idx(i)}); };

  check mp{"modus ponens"};
  for (idx a = 0; a < T; ++a)
    for (idx b = 0; b < T; ++b)
      for (idx c = 0; c < T; ++c) {
        // right: s: z->x, r: y->x with z=a, y=b, x=c; (s⟜r)∘r ⪯ s
        const std::uint64_t ns = B.hom_size(a, c), nr = B.hom_size(b, c);
        block(mp, ns * nr, budget, seed, e,
              [&](std::uint64_t i) {
                idx s = i / nr, r = i % nr;
                idx lhs = B.compose_raw(a, b, c, H.right_raw(a, b, c, s, r), r);
                return !B.hom(a, c).le(lhs, s);
              },
              [&](std::uint64_t i) { return "(s⟜r)∘r ⋠ s at s=" + d(a, c, i / nr) + " r=" + d(b, c, i % nr); });
        // left: r: y->x, t: y->z with y=a, x=b, z=c; r∘(r⊸t) ⪯ t
        const std::uint64_t nr2 = B.hom_size(a, b), nt = B.hom_size(a, c);
        block(mp, nr2 * nt, budget, seed, e,
              [&](std::uint64_t i) {
                idx r = i / nt, t = i % nt;
                idx lhs = B.compose_raw(a, b, c, r, H.left_raw(a, b, c, r, t));
                return !B.hom(a, c).le(lhs, t);
              },
              [&](std::uint64_t i) { return "r∘(r⊸t) ⋠ t at r=" + d(a, b, i / nt) + " t=" + d(a, c, i % nt); });
      }
  rep.add(std::move(mp));

  check mixed{"mixed associativity"};
  for (idx w = 0; w < T; ++w)
    for (idx v = 0; v < T; ++v)
      for (idx y = 0; y < T; ++y)
        for (idx x = 0; x < T; ++x) {
          {
            // t: w->x, s: v->y, r: y->x; t⟜(s∘r) = (t⟜r)⟜s
            const std::uint64_t nt = B.hom_size(w, x), ns = B.hom_size(v, y), nr = B.hom_size(y, x);
            block(mixed, nt * ns * nr, budget, seed, e,
                  [&](std::uint64_t i) {
                    idx t = i / (ns * nr), s = (i / nr) % ns, r = i % nr;
                    idx lhs = H.right_raw(w, v, x, t, B.compose_raw(v, y, x, s, r));
                    idx rhs = H.right_raw(w, v, y, H.right_raw(w, y, x, t, r), s);
                    return lhs != rhs;
                  },
                  [&](std::uint64_t i) {
                    return "t⟜(s∘r) at t=" + d(w, x, i / (ns * nr)) + " s=" + d(v, y, (i / nr) % ns) +
                           " r=" + d(y, x, i % nr);
                  });
          }
          {
            // s: w->v, t: w->x, r: y->x; s⊸(t⟜r) = (s⊸t)⟜r
            const std::uint64_t ns = B.hom_size(w, v), nt = B.hom_size(w, x), nr = B.hom_size(y, x);
            block(mixed, ns * nt * nr, budget, seed, e,
                  [&](std::uint64_t i) {
                    idx s = i / (nt * nr), t = (i / nr) % nt, r = i % nr;
                    idx lhs = H.left_raw(w, v, y, s, H.right_raw(w, y, x, t, r));
                    idx rhs = H.right_raw(v, y, x, H.left_raw(w, v, x, s, t), r);
                    return lhs != rhs;
                  },
                  [&](std::uint64_t i) {
                    return "s⊸(t⟜r) at s=" + d(w, v, i / (nt * nr)) + " t=" + d(w, x, (i / nr) % nt) +
                           " r=" + d(y, x, i % nr);
                  });
          }
          {
            // s: w->v, r: v->y, t: w->x; (s∘r)⊸t = r⊸(s⊸t)
            const std::uint64_t ns = B.hom_size(w, v), nr = B.hom_size(v, y), nt = B.hom_size(w, x);
            block(mixed, ns * nr * nt, budget, seed, e,
                  [&](std::uint64_t i) {
                    idx s = i / (nr * nt), r = (i / nt) % nr, t = i % nt;
                    idx lhs = H.left_raw(w, y, x, B.compose_raw(w, v, y, s, r), t);
                    idx rhs = H.left_raw(v, y, x, r, H.left_raw(w, v, x, s, t));
                    return lhs != rhs;
                  },
                  [&](std::uint64_t i) {
                    return "(s∘r)⊸t at s=" + d(w, v, i / (nr * nt)) + " r=" + d(v, y, (i / nt) % nr) +
                           " t=" + d(w, x, i % nt);
                  });
          }
        }
  rep.add(std::move(mixed));

  check conv{"join conversion"};
  for (idx a = 0; a < T; ++a)
    for (idx b = 0; b < T; ++b)
      for (idx c = 0; c < T; ++c) {
        // (r∨r')⊸t = (r⊸t)∧(r'⊸t) with r: a->b, t: a->c
        const auto& hr = B.hom(a, b);
        const auto& ho = B.hom(b, c);
        const std::uint64_t nr = hr.size(), nt = B.hom_size(a, c);
        block(conv, nr * nr * nt, budget, seed, e,
              [&](std::uint64_t i) {
                idx r = i / (nr * nt), r2 = (i / nt) % nr, t = i % nt;
                return H.left_raw(a, b, c, hr.join(r, r2), t) !=
                       ho.meet(H.left_raw(a, b, c, r, t), H.left_raw(a, b, c, r2, t));
              },
              [&](std::uint64_t i) { return "(r∨r')⊸t at t=" + d(a, c, i % nt); });
        // s⟜(r∨r') = (s⟜r)∧(s⟜r') with s: a->c, r: b->c
        const auto& hr2 = B.hom(b, c);
        const auto& ho2 = B.hom(a, b);
        const std::uint64_t ns = B.hom_size(a, c), m = hr2.size();
        block(conv, ns * m * m, budget, seed, e,
              [&](std::uint64_t i) {
                idx s = i / (m * m), r = (i / m) % m, r2 = i % m;
                return H.right_raw(a, b, c, s, hr2.join(r, r2)) !=
                       ho2.meet(H.right_raw(a, b, c, s, r), H.right_raw(a, b, c, s, r2));
              },
              [&](std::uint64_t i) { return "s⟜(r∨r') at s=" + d(a, c, i / (m * m)); });
        // r⊸(t∧t') = (r⊸t)∧(r⊸t')
        const auto& ht = B.hom(a, c);
        block(conv, nr * nt * nt, budget, seed, e,
              [&](std::uint64_t i) {
                idx r = i / (nt * nt), t = (i / nt) % nt, t2 = i % nt;
                return H.left_raw(a, b, c, r, ht.meet(t, t2)) !=
                       ho.meet(H.left_raw(a, b, c, r, t), H.left_raw(a, b, c, r, t2));
              },
              [&](std::uint64_t i) { return "r⊸(t∧t') at r=" + d(a, b, i / (nt * nt)); });
      }
  rep.add(std::move(conv));

  check negc{"negation characterization"};
  check dn{"double negation closure"};
  check dm{"demorgan"};
  for (idx y = 0; y < T; ++y)
    for (idx x = 0; x < T; ++x) {
      const auto& h = B.hom(y, x);
      const auto& hop = B.hom(x, y);
      const std::uint64_t n = h.size(), m = hop.size();
      block(negc, n * m, budget, seed, e,
            [&](std::uint64_t i) {
              term r{y, x, idx(i / m)}, s{x, y, idx(i % m)};
              return orthogonality(B, r, s).orthogonal != hop.le(s.elem, H.negation_raw(y, x, r.elem));
            },
            [&](std::uint64_t i) { return "r⊥s vs s⪯¬r at r=" + d(y, x, i / m) + " s=" + d(x, y, i % m); });
      block(dn, n * n, budget, seed, e,
            [&](std::uint64_t i) {
              idx r = i / n, r2 = i % n;
              idx nn = H.double_negation({y, x, r}).elem;
              idx nn2 = H.double_negation({y, x, r2}).elem;
              if (h.le(r, r2) && !h.le(nn, nn2)) return true;
              if (!h.le(r, nn)) return true;
              return H.double_negation({y, x, nn}).elem != nn;
            },
            [&](std::uint64_t i) { return "¬¬ at r=" + d(y, x, i / n) + " r'=" + d(y, x, i % n); });
      block(dm, n * n + 1, budget, seed, e,
            [&](std::uint64_t i) {
              if (i == n * n) return H.negation_raw(y, x, h.bottom) != hop.top;
              idx a = i / n, b = i % n;
              return H.negation_raw(y, x, h.join(a, b)) !=
                     hop.meet(H.negation_raw(y, x, a), H.negation_raw(y, x, b));
            },
            [&](std::uint64_t i) {
              if (i == n * n) return "¬⊥ != ⊤ in hom(" + B.type_name(y) + "," + B.type_name(x) + ")";
              return "¬(a∨b) at a=" + d(y, x, i / n) + " b=" + d(y, x, i % n);
            });
    }
  {
    auto& c = rep.add("negation of identity");
    for (idx x = 0; x < T; ++x) {
      ++c.instances;
      if (H.negation(B.identity(x)) != B.identity(x)) {
        ++c.violations;
        c.examples.push_back("¬" + B.type_name(x) + " != " + B.type_name(x));
      }
    }
  }
  rep.add(std::move(negc));
  rep.add(std::move(dn));
  rep.add(std::move(dm));

  check qneg{"quasisymmetric negation"};
  check fcomp{"functional complements"};
  check iso{"isomorphism law"};
  for (idx y = 0; y < T; ++y)
    for (idx x = 0; x < T; ++x) {
      const std::uint64_t n = B.hom_size(y, x);
      block(qneg, n, budget, seed, e,
            [&](std::uint64_t i) {
              term r{y, x, idx(i)};
              if (!is_quasisymmetric(B, r)) return false;
              idx neg = H.negation_raw(y, x, r.elem);
              return neg != H.right_raw(x, y, x, B.identity_raw(x), r.elem) ||
                     neg != H.left_raw(y, x, y, r.elem, B.identity_raw(y));
            },
            [&](std::uint64_t i) { return "¬r, x⟜r, r⊸y differ at " + d(y, x, i); });
      block(fcomp, n, budget, seed, e,
            [&](std::uint64_t i) {
              term f{y, x, idx(i)};
              auto info = functional_adjoint(B, f);
              if (!info) return false;
              term nf = H.negation(f);
              if (!B.entails(nf, info->adjoint)) return true;
              return (nf == info->adjoint) != info->subtype;
            },
            [&](std::uint64_t i) { return "complements of " + d(y, x, i); });
      block(iso, n, budget, seed, e,
            [&](std::uint64_t i) {
              term r{y, x, idx(i)};
              bool invertible = false;
              for (idx g = 0; g < B.hom_size(x, y) && !invertible; ++g)
                invertible = B.compose_raw(y, x, y, r.elem, g) == B.identity_raw(y) &&
                             B.compose_raw(x, y, x, g, r.elem) == B.identity_raw(x);
              term nr = H.negation(r);
              bool by_neg = B.compose(nr, r) == B.identity(x) && B.compose(r, nr) == B.identity(y);
              return invertible != by_neg;
            },
            [&](std::uint64_t i) { return "isomorphism law at " + d(y, x, i); });
    }
  rep.add(std::move(qneg));
  rep.add(std::move(fcomp));
  rep.add(std::move(iso));
  return rep;
}

boolean_category::boolean_category(std::vector<std::string> types,
                                   std::vector<hom_data> homs,
                                   std::vector<std::vector<idx>> otimes,
                                   std::vector<std::vector<idx>> nabla,
                                   std::vector<idx> ident)
    : types_(std::move(types)),
      homs_(std::move(homs)),
      otimes_(std::move(otimes)),
      nabla_(std::move(nabla)),
      ident_(std::move(ident)) {
  const std::size_t T = types_.size();
  if (homs_.size() != T * T || otimes_.size() != T * T * T ||
      nabla_.size() != T * T * T || ident_.size() != T)
    throw shape_error("boolean category tables have the wrong shape");
}

std::optional<idx> boolean_category::find_type(std::string_view name) const {
  for (idx t = 0; t < types_.size(); ++t)
    if (types_[t] == name) return t;
  return std::nullopt;
}

bool boolean_category::le(term a, term b) const {
  if (a.source != b.source || a.target != b.target) throw type_error("non-parallel terms");
  return hom(a.source, a.target).order->le(a.elem, b.elem);
}

term boolean_category::otimes(term s, term r) const {
  if (s.target != r.source) throw type_error("⊗ of non-composable terms");
  return term{s.source, r.target, otimes_raw(s.source, s.target, r.target, s.elem, r.elem)};
}

term boolean_category::nabla(term s, term r) const {
  if (s.target != r.source) throw type_error("∇ of non-composable terms");
  return term{s.source, r.target, nabla_raw(s.source, s.target, r.target, s.elem, r.elem)};
}

term boolean_category::oplus(term a, term b) const {
  if (a.source != b.source || a.target != b.target) throw type_error("⊕ of non-parallel terms");
  const auto& h = hom(a.source, a.target);
  return term{a.source, a.target, h.oplus[std::size_t(a.elem) * h.size() + b.elem]};
}

term boolean_category::triangle(term a, term b) const {
  if (a.source != b.source || a.target != b.target) throw type_error("△ of non-parallel terms");
  const auto& h = hom(a.source, a.target);
  return term{a.source, a.target, h.triangle[std::size_t(a.elem) * h.size() + b.elem]};
}

term boolean_category::neg(term r) const {
  return term{r.target, r.source, hom(r.source, r.target).neg[r.elem]};
}

bool boolean_category::orthogonal(term s, term r) const {
  if (s.target != r.source || s.source != r.target) throw type_error("terms not opposed");
  const idx x = s.source, y = s.target;
  return le(otimes(s, r), identity(x)) && le(otimes(r, s), identity(y));
}

std::optional<term> boolean_category::find_term(idx y, idx x, std::string_view name) const {
  const auto& n = hom(y, x).names;
  for (idx i = 0; i < n.size(); ++i)
    if (n[i] == name) return term{y, x, i};
  return std::nullopt;
}

std::string boolean_category::describe(term t) const {
  const auto& h = hom(t.source, t.target);
  std::string n = t.elem < h.size() ? h.names[t.elem] : std::string("<outside>");
  return n + ":" + types_[t.source] + "->" + types_[t.target];
}

report validate_boolean_category(const boolean_category& B, exec e) {
  const idx T = B.type_count();
  report rep;
  auto d = [&](idx y, idx x, std::uint64_t i) { return B.describe({y, x, idx(i)}); };

  {
    auto& c = rep.add("carrier closure");
    auto note = [&](bool bad, const std::string& what) {
      ++c.instances;
      if (bad) {
        ++c.violations;
        if (c.examples.size() < 8) c.examples.push_back(what);
      }
    };
    for (idx y = 0; y < T; ++y)
      for (idx x = 0; x < T; ++x) {
        const auto& h = B.hom(y, x);
        const auto hn = h.size();
        for (idx v : h.oplus) note(v >= hn, "⊕ leaves hom(" + B.type_name(y) + "," + B.type_name(x) + ")");
        for (idx v : h.triangle) note(v >= hn, "△ leaves hom(" + B.type_name(y) + "," + B.type_name(x) + ")");
        for (idx v : h.neg) note(v >= B.hom_size(x, y), "¬ leaves the carrier from hom(" + B.type_name(y) + "," + B.type_name(x) + ")");
        note(h.zero >= hn, "0 missing in hom(" + B.type_name(y) + "," + B.type_name(x) + ")");
        note(h.one >= hn, "1 missing in hom(" + B.type_name(y) + "," + B.type_name(x) + ")");
      }
    for (idx z = 0; z < T; ++z)
      for (idx y = 0; y < T; ++y)
        for (idx x = 0; x < T; ++x)
          for (idx s = 0; s < B.hom_size(z, y); ++s)
            for (idx r = 0; r < B.hom_size(y, x); ++r) {
              note(B.otimes_raw(z, y, x, s, r) >= B.hom_size(z, x),
                   "⊗ leaves the carrier at " + d(z, y, s) + " ⊗ " + d(y, x, r));
              note(B.nabla_raw(z, y, x, s, r) >= B.hom_size(z, x),
                   "∇ leaves the carrier at " + d(z, y, s) + " ∇ " + d(y, x, r));
            }
    for (idx x = 0; x < T; ++x) note(B.identity_raw(x) >= B.hom_size(x, x), "identity missing");
    if (!c.passed()) {
      c.note = "remaining laws skipped";
      return rep;
    }
  }

  check lat{"homset lattice"};
  for (idx y = 0; y < T; ++y)
    for (idx x = 0; x < T; ++x) {
      const auto& h = B.hom(y, x);
      const auto& o = *h.order;
      const std::uint64_t n = h.size();
      accumulate(
          lat, n * n * n, e,
          [&](std::uint64_t i) {
            idx a = i / (n * n), b = (i / n) % n, c = i % n;
            idx j = h.oplus[a * n + b], m = h.triangle[a * n + b];
            if (!o.le(a, j) || !o.le(b, j) || !o.le(m, a) || !o.le(m, b)) return true;
            if (!o.le(h.zero, a) || !o.le(a, h.one)) return true;
            if (o.le(a, c) && o.le(b, c) && !o.le(j, c)) return true;
            return o.le(c, a) && o.le(c, b) && !o.le(c, m);
          },
          [&](std::uint64_t i) { return "⊕/△ at " + d(y, x, i / (n * n)) + ", " + d(y, x, (i / n) % n); });
    }
  rep.add(std::move(lat));

  check pole{"pole monoid"};
  check anti{"antipole monoid"};
  for (idx w = 0; w < T; ++w)
    for (idx z = 0; z < T; ++z)
      for (idx y = 0; y < T; ++y)
        for (idx x = 0; x < T; ++x) {
          const std::uint64_t a = B.hom_size(w, z), b = B.hom_size(z, y), c = B.hom_size(y, x);
          auto desc = [&](std::uint64_t i) {
            return "p=" + d(w, z, i / (b * c)) + " q=" + d(z, y, (i / c) % b) + " r=" + d(y, x, i % c);
          };
          accumulate(
              pole, a * b * c, e,
              [&](std::uint64_t i) {
                idx p = i / (b * c), q = (i / c) % b, r = i % c;
                return B.otimes_raw(w, y, x, B.otimes_raw(w, z, y, p, q), r) !=
                       B.otimes_raw(w, z, x, p, B.otimes_raw(z, y, x, q, r));
              },
              desc);
          accumulate(
              anti, a * b * c, e,
              [&](std::uint64_t i) {
                idx p = i / (b * c), q = (i / c) % b, r = i % c;
                return B.nabla_raw(w, y, x, B.nabla_raw(w, z, y, p, q), r) !=
                       B.nabla_raw(w, z, x, p, B.nabla_raw(z, y, x, q, r));
              },
              desc);
        }
  for (idx y = 0; y < T; ++y)
    for (idx x = 0; x < T; ++x) {
      const std::uint64_t n = B.hom_size(y, x);
      auto desc = [&](std::uint64_t i) { return "unit law at " + d(y, x, i); };
      accumulate(
          pole, n, e,
          [&](std::uint64_t r) {
            return B.otimes_raw(y, y, x, B.identity_raw(y), idx(r)) != r ||
                   B.otimes_raw(y, x, x, idx(r), B.identity_raw(x)) != r;
          },
          desc);
      accumulate(
          anti, n, e,
          [&](std::uint64_t r) {
            return B.nabla_raw(y, y, x, B.identity_raw(y), idx(r)) != r ||
                   B.nabla_raw(y, x, x, idx(r), B.identity_raw(x)) != r;
          },
          desc);
    }
  rep.add(std::move(pole));
  rep.add(std::move(anti));

  check pd{"pole distributivity"};
  check ad{"antipole distributivity"};
  check mix{"mix"};
  for (idx z = 0; z < T; ++z)
    for (idx y = 0; y < T; ++y)
      for (idx x = 0; x < T; ++x) {
        const auto& hs = B.hom(z, y);
        const auto& hr = B.hom(y, x);
        const auto& ho = B.hom(z, x);
        const std::uint64_t b = hs.size(), c = hr.size();
        auto at = [&](std::size_t p, std::size_t q, std::size_t n) { return p * n + q; };
        accumulate(
            pd, b * c * c + b * b * c + b + c, e,
            [&](std::uint64_t i) {
              if (i < b * c * c) {
                idx s = i / (c * c), r = (i / c) % c, r2 = i % c;
                return B.otimes_raw(z, y, x, s, hr.oplus[at(r, r2, c)]) !=
                       ho.oplus[at(B.otimes_raw(z, y, x, s, r), B.otimes_raw(z, y, x, s, r2), ho.size())];
              }
              i -= b * c * c;
              if (i < b * b * c) {
                idx s = i / (b * c), s2 = (i / c) % b, r = i % c;
                return B.otimes_raw(z, y, x, hs.oplus[at(s, s2, b)], r) !=
                       ho.oplus[at(B.otimes_raw(z, y, x, s, r), B.otimes_raw(z, y, x, s2, r), ho.size())];
              }
              i -= b * b * c;
              if (i < b) return B.otimes_raw(z, y, x, idx(i), hr.zero) != ho.zero;
              return B.otimes_raw(z, y, x, hs.zero, idx(i - b)) != ho.zero;
            },
            [&](std::uint64_t) { return "⊗ over ⊕ in " + B.type_name(z) + "," + B.type_name(y) + "," + B.type_name(x); });
        accumulate(
            ad, b * c * c + b * b * c + b + c, e,
            [&](std::uint64_t i) {
              if (i < b * c * c) {
                idx s = i / (c * c), r = (i / c) % c, r2 = i % c;
                return B.nabla_raw(z, y, x, s, hr.triangle[at(r, r2, c)]) !=
                       ho.triangle[at(B.nabla_raw(z, y, x, s, r), B.nabla_raw(z, y, x, s, r2), ho.size())];
              }
              i -= b * c * c;
              if (i < b * b * c) {
                idx s = i / (b * c), s2 = (i / c) % b, r = i % c;
                return B.nabla_raw(z, y, x, hs.triangle[at(s, s2, b)], r) !=
                       ho.triangle[at(B.nabla_raw(z, y, x, s, r), B.nabla_raw(z, y, x, s2, r), ho.size())];
              }
              i -= b * b * c;
              if (i < b) return B.nabla_raw(z, y, x, idx(i), hr.one) != ho.one;
              return B.nabla_raw(z, y, x, hs.one, idx(i - b)) != ho.one;
            },
            [&](std::uint64_t) { return "∇ over △ in " + B.type_name(z) + "," + B.type_name(y) + "," + B.type_name(x); });
        accumulate(
            mix, b * c, e,
            [&](std::uint64_t i) {
              idx s = i / c, r = i % c;
              return !ho.order->le(B.otimes_raw(z, y, x, s, r), B.nabla_raw(z, y, x, s, r));
            },
            [&](std::uint64_t i) { return "s⊗r ⋠ s∇r at s=" + d(z, y, i / c) + " r=" + d(y, x, i % c); });
      }
  rep.add(std::move(pd));
  rep.add(std::move(ad));

  check inv{"involution"};
  for (idx y = 0; y < T; ++y)
    for (idx x = 0; x < T; ++x) {
      const auto& h = B.hom(y, x);
      const auto& hop = B.hom(x, y);
      const std::uint64_t n = h.size();
      accumulate(
          inv, n * n + 1, e,
          [&](std::uint64_t i) {
            if (i == n * n) return hop.neg[h.zero] != hop.one || hop.neg[h.one] != hop.zero;
            idx a = i / n, b = i % n;
            if (hop.neg[h.neg[a]] != a) return true;
            if (h.order->le(a, b) && !hop.order->le(h.neg[b], h.neg[a])) return true;
            if (h.neg[h.oplus[a * n + b]] != hop.triangle[std::size_t(h.neg[a]) * hop.size() + h.neg[b]]) return true;
            return h.neg[h.triangle[a * n + b]] != hop.oplus[std::size_t(h.neg[a]) * hop.size() + h.neg[b]];
          },
          [&](std::uint64_t i) {
            if (i == n * n) return "¬0/¬1 in hom(" + B.type_name(y) + "," + B.type_name(x) + ")";
            return "¬ at " + d(y, x, i / n) + ", " + d(y, x, i % n);
          });
    }
  for (idx x = 0; x < T; ++x) {
    ++inv.instances;
    if (B.neg(B.identity(x)) != B.identity(x)) {
      ++inv.violations;
      inv.examples.push_back("¬" + B.type_name(x) + " != " + B.type_name(x));
    }
  }
  for (idx z = 0; z < T; ++z)
    for (idx y = 0; y < T; ++y)
      for (idx x = 0; x < T; ++x) {
        const std::uint64_t b = B.hom_size(z, y), c = B.hom_size(y, x);
        accumulate(
            inv, b * c, e,
            [&](std::uint64_t i) {
              term s{z, y, idx(i / c)}, r{y, x, idx(i % c)};
              return B.neg(B.otimes(s, r)) != B.nabla(B.neg(r), B.neg(s)) ||
                     B.neg(B.nabla(s, r)) != B.otimes(B.neg(r), B.neg(s));
            },
            [&](std::uint64_t i) { return "DeMorgan for ⊗/∇ at " + d(z, y, i / c) + ", " + d(y, x, i % c); });
      }
  rep.add(std::move(inv));

  check oe{"orthogonality-entailment"};
  std::vector<std::vector<std::pair<idx, idx>>> orth(std::size_t(T) * T);
  for (idx y = 0; y < T; ++y)
    for (idx x = 0; x < T; ++x) {
      // s: x->y, r: y->x
      const std::uint64_t ns = B.hom_size(x, y), nr = B.hom_size(y, x);
      accumulate(
          oe, ns * nr, e,
          [&](std::uint64_t i) {
            term s{x, y, idx(i / nr)}, r{y, x, idx(i % nr)};
            return B.orthogonal(s, r) != B.le(s, B.neg(r));
          },
          [&](std::uint64_t i) { return "s=" + d(x, y, i / nr) + " r=" + d(y, x, i % nr); });
      for (idx q = 0; q < nr; ++q)
        for (idx s = 0; s < ns; ++s)
          if (B.orthogonal(term{x, y, s}, term{y, x, q})) orth[y * T + x].emplace_back(q, s);
    }
  rep.add(std::move(oe));

  check pc{"orthogonality preserves composition"};
  for (idx z = 0; z < T; ++z)
    for (idx y = 0; y < T; ++y)
      for (idx x = 0; x < T; ++x) {
        // q: y->x ⊥ s: x->y and p: z->y ⊥ r: y->z
        const auto& oq = orth[y * T + x];
        const auto& op = orth[z * T + y];
        const std::uint64_t m = oq.size();
        accumulate(
            pc, op.size() * m, e,
            [&](std::uint64_t i) {
              auto [p, r] = op[i / m];
              auto [q, s] = oq[i % m];
              term pq = B.otimes(term{z, y, p}, term{y, x, q});
              term sr = B.otimes(term{x, y, s}, term{y, z, r});
              return !B.orthogonal(pq, sr);
            },
            [&](std::uint64_t i) {
              return "p=" + d(z, y, op[i / m].first) + " q=" + d(y, x, oq[i % m].first);
            });
      }
  rep.add(std::move(pc));
  rep.add(std::move(mix));
  return rep;
}

boolean_center_model boolean_center(heyting_ptr Hp, exec e) {
  const heyting_model& H = *Hp;
  const finite_biposet& B = H.base();
  const idx T = B.type_count();
  const center_info ci = quasisymmetry_center(B, e);
  boolean_center_model out;
  out.source = Hp;
  out.carrier.resize(std::size_t(T) * T);
  out.closed_not_central.resize(std::size_t(T) * T);
  std::vector<std::vector<idx>> back(std::size_t(T) * T);
  for (idx y = 0; y < T; ++y)
    for (idx x = 0; x < T; ++x) {
      auto& car = out.carrier[y * T + x];
      auto& bk = back[y * T + x];
      bk.assign(B.hom_size(y, x), npos);
      for (idx r = 0; r < B.hom_size(y, x); ++r) {
        term t{y, x, r};
        if (!H.dn_closed(t)) continue;
        if (!ci.quasisymmetric(B, t)) {
          out.closed_not_central[y * T + x].push_back(r);
          continue;
        }
        bk[r] = idx(car.size());
        car.push_back(r);
      }
    }
  auto local = [&](idx y, idx x, idx r) { return back[y * T + x][r]; };

  std::vector<boolean_category::hom_data> homs(std::size_t(T) * T);
  for (idx y = 0; y < T; ++y)
    for (idx x = 0; x < T; ++x) {
      const auto& car = out.carrier[y * T + x];
      const auto& h = B.hom(y, x);
      auto& hd = homs[y * T + x];
      const std::size_t n = car.size();
      for (idx r : car) hd.names.push_back(h.names[r]);
      hd.order = std::make_shared<finite_poset>(finite_poset::from_relation(
          n, [&](idx a, idx b) { return h.le(car[a], car[b]); }));
      hd.oplus.resize(n * n);
      hd.triangle.resize(n * n);
      for (idx a = 0; a < n; ++a)
        for (idx b = 0; b < n; ++b) {
          hd.oplus[a * n + b] = local(y, x, H.double_negation({y, x, h.join(car[a], car[b])}).elem);
          hd.triangle[a * n + b] = local(y, x, h.meet(car[a], car[b]));
        }
      hd.zero = local(y, x, H.double_negation(B.bottom(y, x)).elem);
      hd.one = local(y, x, H.double_negation(B.top(y, x)).elem);
      hd.neg.resize(n);
      for (idx a = 0; a < n; ++a) hd.neg[a] = local(x, y, H.negation_raw(y, x, car[a]));
    }
  std::vector<std::vector<idx>> ot(std::size_t(T) * T * T), na(std::size_t(T) * T * T);
  for (idx z = 0; z < T; ++z)
    for (idx y = 0; y < T; ++y)
      for (idx x = 0; x < T; ++x) {
        const auto& cs = out.carrier[z * T + y];
        const auto& cr = out.carrier[y * T + x];
        auto& o = ot[(z * T + y) * T + x];
        auto& nb = na[(z * T + y) * T + x];
        o.resize(cs.size() * cr.size());
        nb.resize(cs.size() * cr.size());
        for (idx s = 0; s < cs.size(); ++s)
          for (idx r = 0; r < cr.size(); ++r) {
            term ts{z, y, cs[s]}, tr{y, x, cr[r]};
            auto cc = classical_connectives(H, ts, tr);
            o[s * cr.size() + r] = local(z, x, cc.otimes.elem);
            nb[s * cr.size() + r] = local(z, x, cc.nabla.elem);
          }
      }
  std::vector<idx> ident(T);
  std::vector<std::string> types;
  for (idx x = 0; x < T; ++x) {
    ident[x] = local(x, x, B.identity_raw(x));
    types.push_back(B.type_name(x));
  }
  out.cat = boolean_category(std::move(types), std::move(homs), std::move(ot), std::move(na),
                             std::move(ident));
  return out;
}

heyting_center_result heyting_center(const boolean_category& Bc, exec e) {
  const idx T = Bc.type_count();
  heyting_center_result res;
  std::vector<std::string> types;
  for (idx t = 0; t < T; ++t) types.push_back(Bc.type_name(t));
  finite_biposet::builder bld(types);
  for (idx y = 0; y < T; ++y)
    for (idx x = 0; x < T; ++x) {
      const auto& h = Bc.hom(y, x);
      const std::size_t n = h.size();
      bld.set_homset(y, x, h.names, h.order);
      bld.set_joins(y, x, [&](idx a, idx b) { return h.oplus[a * n + b]; }, h.zero);
      bld.set_meets(y, x, [&](idx a, idx b) { return h.triangle[a * n + b]; }, h.one);
    }
  for (idx z = 0; z < T; ++z)
    for (idx y = 0; y < T; ++y)
      for (idx x = 0; x < T; ++x)
        bld.set_composition(z, y, x, [&](idx s, idx r) { return Bc.otimes_raw(z, y, x, s, r); });
  for (idx x = 0; x < T; ++x) bld.set_identity(x, Bc.identity_raw(x));

  auto& ax = res.checks.add("dialectical axioms");
  std::shared_ptr<const finite_biposet> base;
  try {
    base = std::make_shared<finite_biposet>(bld.build());
    res.model = std::make_shared<heyting_model>(heyting_model::build(base, e));
    ax.instances = 1;
  } catch (const model_error& err) {
    ax.instances = 1;
    ax.violations = 1;
    ax.examples.push_back(err.what());
    return res;
  }
  const heyting_model& H = *res.model;

  check imp{"implication via ∇"};
  for (idx a = 0; a < T; ++a)
    for (idx b = 0; b < T; ++b)
      for (idx c = 0; c < T; ++c) {
        // left: r: a->b, t: a->c; r⊸t = ¬r∇t
        const std::uint64_t nr = Bc.hom_size(a, b), nt = Bc.hom_size(a, c);
        accumulate(
            imp, nr * nt, e,
            [&](std::uint64_t i) {
              term r{a, b, idx(i / nt)}, t{a, c, idx(i % nt)};
              return H.left_imply(r, t) != Bc.nabla(Bc.neg(r), t);
            },
            [&](std::uint64_t i) {
              return "r⊸t != ¬r∇t at r=" + Bc.describe({a, b, idx(i / nt)}) + " t=" +
                     Bc.describe({a, c, idx(i % nt)});
            });
        // right: s: a->c, r: b->c; s⟜r = s∇¬r
        const std::uint64_t ns = Bc.hom_size(a, c), m = Bc.hom_size(b, c);
        accumulate(
            imp, ns * m, e,
            [&](std::uint64_t i) {
              term s{a, c, idx(i / m)}, r{b, c, idx(i % m)};
              return H.right_imply(s, r) != Bc.nabla(s, Bc.neg(r));
            },
            [&](std::uint64_t i) {
              return "s⟜r != s∇¬r at s=" + Bc.describe({a, c, idx(i / m)}) + " r=" +
                     Bc.describe({b, c, idx(i % m)});
            });
      }
  res.checks.add(std::move(imp));

  auto& neg = res.checks.add("negation agrees");
  auto& closed = res.checks.add("all terms closed");
  auto& quasi = res.checks.add("all terms quasisymmetric");
  for (idx y = 0; y < T; ++y)
    for (idx x = 0; x < T; ++x)
      for (idx r = 0; r < Bc.hom_size(y, x); ++r) {
        term t{y, x, r};
        ++neg.instances;
        ++closed.instances;
        ++quasi.instances;
        if (H.negation(t) != Bc.neg(t)) {
          ++neg.violations;
          if (neg.examples.size() < 8) neg.examples.push_back(Bc.describe(t));
        }
        if (!H.dn_closed(t)) {
          ++closed.violations;
          if (closed.examples.size() < 8) closed.examples.push_back(Bc.describe(t));
        }
        if (!is_quasisymmetric(H.base(), t)) {
          ++quasi.violations;
          if (quasi.examples.size() < 8) quasi.examples.push_back(Bc.describe(t));
        }
      }
  return res;
}

report compare_boolean_categories(const boolean_category& a, const boolean_category& b) {
  report rep;
  auto& c = rep.add("same boolean category");
  auto diff = [&](bool bad, const std::string& what) {
    ++c.instances;
    if (bad) {
      ++c.violations;
      if (c.examples.size() < 8) c.examples.push_back(what);
    }
  };
  diff(a.type_count() != b.type_count(), "type counts differ");
  if (!c.passed()) return rep;
  const idx T = a.type_count();
  for (idx y = 0; y < T; ++y)
    for (idx x = 0; x < T; ++x) {
      const auto& ha = a.hom(y, x);
      const auto& hb = b.hom(y, x);
      const std::string where = "hom(" + a.type_name(y) + "," + a.type_name(x) + ")";
      diff(ha.names != hb.names, where + " carriers differ");
      if (ha.names != hb.names) continue;
      diff(!(*ha.order == *hb.order), where + " orders differ");
      diff(ha.oplus != hb.oplus, where + " ⊕ differs");
      diff(ha.triangle != hb.triangle, where + " △ differs");
      diff(ha.zero != hb.zero || ha.one != hb.one, where + " constants differ");
      diff(ha.neg != hb.neg, where + " ¬ differs");
    }
  if (!c.passed()) return rep;
  for (idx z = 0; z < T; ++z)
    for (idx y = 0; y < T; ++y)
      for (idx x = 0; x < T; ++x)
        for (idx s = 0; s < a.hom_size(z, y); ++s)
          for (idx r = 0; r < a.hom_size(y, x); ++r) {
            diff(a.otimes_raw(z, y, x, s, r) != b.otimes_raw(z, y, x, s, r), "⊗ differs");
            diff(a.nabla_raw(z, y, x, s, r) != b.nabla_raw(z, y, x, s, r), "∇ differs");
          }
  for (idx x = 0; x < T; ++x) diff(a.identity_raw(x) != b.identity_raw(x), "identity differs");
  return rep;
}

}  // namespace dialectic
