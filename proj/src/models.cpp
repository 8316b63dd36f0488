#include "dialectic/models.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <map>
#include <sstream>

namespace dialectic {

namespace {

std::string set_name(const std::vector<std::string>& members) {
  std::string s = "{";
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) s += "|";
    s += members[i];
  }
  return s + "}";
}

std::vector<std::string> default_types(std::size_t n) {
  std::vector<std::string> t;
  for (std::size_t i = 0; i < n; ++i) t.push_back("t" + std::to_string(i));
  return t;
}

void check_mask_width(std::size_t bits, const char* what) {
  if (bits > 20 || (std::size_t(1) << bits) > default_carrier_bound)
    throw model_error(std::string(what) + " homset of 2^" + std::to_string(bits) +
                      " elements exceeds bound " + std::to_string(default_carrier_bound));
}

void set_mask_lattice(finite_biposet::builder& b, idx y, idx x, std::size_t bits) {
  const idx full = idx((std::uint64_t(1) << bits) - 1);
  b.set_joins(y, x, [](idx a, idx c) { return a | c; }, 0);
  b.set_meets(y, x, [](idx a, idx c) { return a & c; }, full);
}

}  // namespace

heyting_ptr make_bool2(exec e) {
  finite_biposet::builder b({"t0"});
  b.set_homset(0, 0, {"0", "1"}, [](idx a, idx c) { return a <= c; });
  set_mask_lattice(b, 0, 0, 1);
  b.set_composition(0, 0, 0, [](idx s, idx r) { return s & r; });
  b.set_identity(0, 1);
  heyting_model::closed_forms f;
  f.left = [](idx, idx, idx, idx r, idx t) { return idx((!r) || t); };
  f.right = [](idx, idx, idx, idx s, idx r) { return idx((!r) || s); };
  return std::make_shared<heyting_model>(
      heyting_model::build(std::make_shared<finite_biposet>(b.build()), f, e));
}

heyting_ptr make_powerset(std::size_t n, exec e) {
  check_mask_width(n, "powerset");
  const std::size_t count = std::size_t(1) << n;
  const idx full = idx(count - 1);
  std::vector<std::string> names;
  for (idx m = 0; m < count; ++m) {
    std::vector<std::string> mem;
    for (std::size_t i = 0; i < n; ++i)
      if (m >> i & 1) mem.push_back(std::string(1, char('a' + i)));
    names.push_back(set_name(mem));
  }
  finite_biposet::builder b({"t0"});
  b.set_homset(0, 0, names, [](idx a, idx c) { return (a & ~c) == 0; });
  set_mask_lattice(b, 0, 0, n);
  b.set_composition(0, 0, 0, [](idx s, idx r) { return s & r; });
  b.set_identity(0, full);
  heyting_model::closed_forms f;
  f.left = [full](idx, idx, idx, idx r, idx t) { return idx((~r | t) & full); };
  f.right = [full](idx, idx, idx, idx s, idx r) { return idx((~r | s) & full); };
  return std::make_shared<heyting_model>(
      heyting_model::build(std::make_shared<finite_biposet>(b.build()), f, e));
}

heyting_ptr make_rel(const std::vector<std::size_t>& sizes, exec e, bool closed_form) {
  if (sizes.empty()) throw model_error("rel needs at least one set");
  const idx T = idx(sizes.size());
  for (auto n : sizes)
    if (n == 0) throw model_error("rel sets must be nonempty");
  finite_biposet::builder b(default_types(T));
  for (idx y = 0; y < T; ++y)
    for (idx x = 0; x < T; ++x) {
      const std::size_t ny = sizes[y], nx = sizes[x], bits = ny * nx;
      check_mask_width(bits, "rel");
      std::vector<std::string> names;
      for (idx m = 0; m < (idx(1) << bits); ++m) {
        std::vector<std::string> mem;
        for (std::size_t i = 0; i < ny; ++i)
          for (std::size_t j = 0; j < nx; ++j)
            if (m >> (i * nx + j) & 1) mem.push_back(std::to_string(i) + "." + std::to_string(j));
        names.push_back(set_name(mem));
      }
      b.set_homset(y, x, names, [](idx a, idx c) { return (a & ~c) == 0; });
      set_mask_lattice(b, y, x, bits);
    }
  for (idx z = 0; z < T; ++z)
    for (idx y = 0; y < T; ++y)
      for (idx x = 0; x < T; ++x) {
        const std::size_t nz = sizes[z], ny = sizes[y], nx = sizes[x];
        const idx rowmask = idx((1u << nx) - 1);
        b.set_composition(z, y, x, [=](idx s, idx r) {
          idx out = 0;
          for (std::size_t i = 0; i < nz; ++i) {
            idx row = 0;
            for (std::size_t j = 0; j < ny; ++j)
              if (s >> (i * ny + j) & 1) row |= (r >> (j * nx)) & rowmask;
            out |= row << (i * nx);
          }
          return out;
        });
      }
  for (idx x = 0; x < T; ++x) {
    idx id = 0;
    for (std::size_t i = 0; i < sizes[x]; ++i) id |= idx(1) << (i * sizes[x] + i);
    b.set_identity(x, id);
  }
  auto base = std::make_shared<finite_biposet>(b.build());
  if (!closed_form) return std::make_shared<heyting_model>(heyting_model::build(base, e));
  heyting_model::closed_forms f;
  // (r⊸t)(j,k) iff r(i,j) implies t(i,k) for all i
  f.left = [sizes](idx y, idx x, idx z, idx r, idx t) {
    const std::size_t ny = sizes[y], nx = sizes[x], nz = sizes[z];
    idx out = 0;
    for (std::size_t j = 0; j < nx; ++j)
      for (std::size_t k = 0; k < nz; ++k) {
        bool ok = true;
        for (std::size_t i = 0; i < ny && ok; ++i)
          ok = !(r >> (i * nx + j) & 1) || (t >> (i * nz + k) & 1);
        if (ok) out |= idx(1) << (j * nz + k);
      }
    return out;
  };
  // (s⟜r)(a,b) iff r(b,c) implies s(a,c) for all c
  f.right = [sizes](idx z, idx y, idx x, idx s, idx r) {
    const std::size_t nz = sizes[z], ny = sizes[y], nx = sizes[x];
    idx out = 0;
    for (std::size_t a = 0; a < nz; ++a)
      for (std::size_t bb = 0; bb < ny; ++bb) {
        bool ok = true;
        for (std::size_t c = 0; c < nx && ok; ++c)
          ok = !(r >> (bb * nx + c) & 1) || (s >> (a * nx + c) & 1);
        if (ok) out |= idx(1) << (a * ny + bb);
      }
    return out;
  };
  return std::make_shared<heyting_model>(heyting_model::build(base, f, e));
}

heyting_ptr make_tropical(unsigned cap, saturation sat, exec e) {
  if (cap + 2 > default_carrier_bound) throw model_error("tropical cap exceeds bound");
  const idx inf = cap + 1;
  std::vector<std::string> names;
  for (idx v = 0; v <= cap; ++v) names.push_back(std::to_string(v));
  names.push_back("inf");
  finite_biposet::builder b({"t0"});
  // larger numbers sit lower; inf is the bottom, 0 the top
  b.set_homset(0, 0, names, [](idx a, idx c) { return a >= c; });
  b.set_joins(0, 0, [](idx a, idx c) { return std::min(a, c); }, inf);
  b.set_meets(0, 0, [](idx a, idx c) { return std::max(a, c); }, 0);
  b.set_composition(0, 0, 0, [=](idx s, idx r) {
    if (s == inf || r == inf) return inf;
    idx sum = s + r;
    if (sum > cap) return sat == saturation::to_cap ? idx(cap) : inf;
    return sum;
  });
  b.set_identity(0, 0);
  // truncated subtraction s ∸ r
  auto monus = [inf](idx s, idx r) -> idx {
    if (r == inf) return 0;
    if (s == inf) return inf;
    return s > r ? s - r : 0;
  };
  heyting_model::closed_forms f;
  f.left = [monus](idx, idx, idx, idx r, idx t) { return monus(t, r); };
  f.right = [monus](idx, idx, idx, idx s, idx r) { return monus(s, r); };
  try {
    return std::make_shared<heyting_model>(
        heyting_model::build(std::make_shared<finite_biposet>(b.build()), f, e));
  } catch (const model_error& err) {
    throw model_error(std::string("tropical model rejected for this saturation: ") + err.what());
  }
}

std::vector<std::string> language_strings(const std::string& alphabet, unsigned maxlen) {
  std::vector<std::string> out{""};
  std::vector<std::string> layer{""};
  for (unsigned len = 1; len <= maxlen; ++len) {
    std::vector<std::string> next;
    for (const auto& w : layer)
      for (char c : alphabet) next.push_back(w + c);
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

heyting_ptr make_language(std::string alphabet, unsigned maxlen, exec e) {
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  if (alphabet.empty()) throw model_error("empty alphabet");
  const auto strings = language_strings(alphabet, maxlen);
  const std::size_t N = strings.size();
  check_mask_width(N, "language");
  std::map<std::string, idx> index;
  for (idx i = 0; i < N; ++i) index[strings[i]] = i;
  std::vector<idx> cat(N * N, npos);
  for (idx i = 0; i < N; ++i)
    for (idx j = 0; j < N; ++j) {
      auto it = index.find(strings[i] + strings[j]);
      if (it != index.end()) cat[i * N + j] = it->second;
    }
  std::vector<std::string> names;
  for (idx m = 0; m < (idx(1) << N); ++m) {
    std::vector<std::string> mem;
    for (idx i = 0; i < N; ++i)
      if (m >> i & 1) mem.push_back(strings[i].empty() ? "ε" : strings[i]);
    names.push_back(set_name(mem));
  }
  finite_biposet::builder b({"t0"});
  b.set_homset(0, 0, names, [](idx a, idx c) { return (a & ~c) == 0; });
  set_mask_lattice(b, 0, 0, N);
  b.set_composition(0, 0, 0, [=](idx s, idx r) {
    idx out = 0;
    for (idx i = 0; i < N; ++i) {
      if (!(s >> i & 1)) continue;
      for (idx j = 0; j < N; ++j)
        if ((r >> j & 1) && cat[i * N + j] != npos) out |= idx(1) << cat[i * N + j];
    }
    return out;
  });
  b.set_identity(0, 1);  // {ε}
  heyting_model::closed_forms f;
  // r⊸t = r\t: m such that every defined n·m with n in r lies in t
  f.left = [=](idx, idx, idx, idx r, idx t) {
    idx out = 0;
    for (idx m = 0; m < N; ++m) {
      bool ok = true;
      for (idx n = 0; n < N && ok; ++n)
        if ((r >> n & 1) && cat[n * N + m] != npos) ok = t >> cat[n * N + m] & 1;
      if (ok) out |= idx(1) << m;
    }
    return out;
  };
  // s⟜r = s/r: m such that every defined m·n with n in r lies in s
  f.right = [=](idx, idx, idx, idx s, idx r) {
    idx out = 0;
    for (idx m = 0; m < N; ++m) {
      bool ok = true;
      for (idx n = 0; n < N && ok; ++n)
        if ((r >> n & 1) && cat[m * N + n] != npos) ok = s >> cat[m * N + n] & 1;
      if (ok) out |= idx(1) << m;
    }
    return out;
  };
  return std::make_shared<heyting_model>(
      heyting_model::build(std::make_shared<finite_biposet>(b.build()), f, e));
}

subset_family make_subset_family(const finite_biposet& P, subset_variant v, exec e) {
  const idx T = P.type_count();
  std::vector<std::string> types;
  for (idx t = 0; t < T; ++t) types.push_back(P.type_name(t));
  finite_biposet::builder b(types);
  subset_family out;
  out.sets.resize(std::size_t(T) * T);
  // downset mask of each base element
  std::vector<std::vector<std::uint64_t>> down(std::size_t(T) * T);
  std::vector<std::map<std::uint64_t, idx>> lookup(std::size_t(T) * T);
  for (idx y = 0; y < T; ++y)
    for (idx x = 0; x < T; ++x) {
      const auto& h = P.hom(y, x);
      const std::size_t m = h.size();
      check_mask_width(m, "subset family");
      auto& dn = down[y * T + x];
      dn.assign(m, 0);
      for (idx a = 0; a < m; ++a)
        for (idx c = 0; c < m; ++c)
          if (h.le(c, a)) dn[a] |= std::uint64_t(1) << c;
      auto& sets = out.sets[y * T + x];
      for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << m); ++mask) {
        if (v != subset_variant::subset) {
          std::uint64_t closed = 0;
          for (idx a = 0; a < m; ++a)
            if (mask >> a & 1) closed |= dn[a];
          if (closed != mask) continue;
        }
        lookup[y * T + x][mask] = idx(sets.size());
        sets.push_back(mask);
      }
      std::vector<std::string> names;
      for (auto mask : sets) {
        std::vector<std::string> mem;
        for (idx a = 0; a < m; ++a) {
          if (!(mask >> a & 1)) continue;
          if (v == subset_variant::closure) {
            // name the class by its maximal elements
            bool maximal = true;
            for (idx c = 0; c < m && maximal; ++c)
              if (c != a && (mask >> c & 1) && h.le(a, c)) maximal = false;
            if (!maximal) continue;
          }
          mem.push_back(h.names[a]);
        }
        names.push_back(set_name(mem));
      }
      b.set_homset(y, x, names, [&](idx a, idx c) { return (sets[a] & ~sets[c]) == 0; });
      auto& lk = lookup[y * T + x];
      b.set_joins(y, x, [&](idx a, idx c) { return lk.at(sets[a] | sets[c]); }, lk.at(0));
      const std::uint64_t full = (std::uint64_t(1) << m) - 1;
      b.set_meets(y, x, [&](idx a, idx c) { return lk.at(sets[a] & sets[c]); }, lk.at(full));
    }
  auto close = [&](idx y, idx x, std::uint64_t mask) {
    if (v == subset_variant::subset) return mask;
    std::uint64_t c = 0;
    const auto& dn = down[y * T + x];
    for (idx a = 0; a < dn.size(); ++a)
      if (mask >> a & 1) c |= dn[a];
    return c;
  };
  for (idx z = 0; z < T; ++z)
    for (idx y = 0; y < T; ++y)
      for (idx x = 0; x < T; ++x) {
        const auto& ss = out.sets[z * T + y];
        const auto& rs = out.sets[y * T + x];
        const std::size_t ms = P.hom_size(z, y), mr = P.hom_size(y, x);
        b.set_composition(z, y, x, [&](idx s, idx r) {
          std::uint64_t prod = 0;
          for (idx a = 0; a < ms; ++a) {
            if (!(ss[s] >> a & 1)) continue;
            for (idx c = 0; c < mr; ++c)
              if (rs[r] >> c & 1) prod |= std::uint64_t(1) << P.compose_raw(z, y, x, a, c);
          }
          return lookup[z * T + x].at(close(z, x, prod));
        });
      }
  for (idx x = 0; x < T; ++x)
    b.set_identity(x, lookup[x * T + x].at(close(x, x, std::uint64_t(1) << P.identity_raw(x))));
  out.model = std::make_shared<heyting_model>(
      heyting_model::build(std::make_shared<finite_biposet>(b.build()), e));
  if (v == subset_variant::closure) {
    auto lk = lookup;
    auto dn = down;
    out.class_of = [lk, dn, T](idx y, idx x, std::uint64_t mask) {
      std::uint64_t c = 0;
      const auto& d = dn[y * T + x];
      for (idx a = 0; a < d.size(); ++a)
        if (mask >> a & 1) c |= d[a];
      return lk[y * T + x].at(c);
    };
  }
  return out;
}

std::vector<idx> matrix_model::entries(term t) const {
  const auto& rad = radix_[t.source * vectors_.size() + t.target];
  std::vector<idx> out(rad.size());
  std::size_t v = t.elem;
  for (std::size_t k = 0; k < rad.size(); ++k) {
    out[k] = idx(v % rad[k]);
    v /= rad[k];
  }
  return out;
}

idx matrix_model::encode(idx Y, idx X, const std::vector<idx>& ent) const {
  const auto& rad = radix_[Y * vectors_.size() + X];
  if (ent.size() != rad.size()) throw shape_error("matrix entry count mismatch");
  std::size_t v = 0;
  for (std::size_t k = rad.size(); k-- > 0;) {
    if (ent[k] >= rad[k]) throw shape_error("matrix entry out of range");
    v = v * rad[k] + ent[k];
  }
  return idx(v);
}

heyting_model::closed_forms matrix_model::formulas() const {
  heyting_model::closed_forms f;
  const matrix_model* self = this;
  auto decode = [self](idx Y, idx X, idx e) { return self->entries(term{Y, X, e}); };
  f.right = [self, decode](idx Z, idx Y, idx X, idx S, idx R) {
    const auto& H = *self->base_;
    const auto& tz = self->vectors_[Z].typing;
    const auto& ty = self->vectors_[Y].typing;
    const auto& tx = self->vectors_[X].typing;
    auto s = decode(Z, X, S), r = decode(Y, X, R);
    std::vector<idx> out(tz.size() * ty.size());
    for (std::size_t a = 0; a < tz.size(); ++a)
      for (std::size_t b = 0; b < ty.size(); ++b) {
        const auto& h = H.base().hom(tz[a], ty[b]);
        idx m = h.top;
        for (std::size_t c = 0; c < tx.size(); ++c)
          m = h.meet(m, H.right_raw(tz[a], ty[b], tx[c], s[a * tx.size() + c], r[b * tx.size() + c]));
        out[a * ty.size() + b] = m;
      }
    return self->encode(Z, Y, out);
  };
  f.left = [self, decode](idx Y, idx X, idx Z, idx R, idx Tm) {
    const auto& H = *self->base_;
    const auto& ty = self->vectors_[Y].typing;
    const auto& tx = self->vectors_[X].typing;
    const auto& tz = self->vectors_[Z].typing;
    auto r = decode(Y, X, R), t = decode(Y, Z, Tm);
    std::vector<idx> out(tx.size() * tz.size());
    for (std::size_t b = 0; b < tx.size(); ++b)
      for (std::size_t c = 0; c < tz.size(); ++c) {
        const auto& h = H.base().hom(tx[b], tz[c]);
        idx m = h.top;
        for (std::size_t a = 0; a < ty.size(); ++a)
          m = h.meet(m, H.left_raw(ty[a], tx[b], tz[c], r[a * tx.size() + b], t[a * tz.size() + c]));
        out[b * tz.size() + c] = m;
      }
    return self->encode(X, Z, out);
  };
  return f;
}

matrix_model make_matrix(heyting_ptr Hp, std::vector<typed_vector> vectors,
                         matrix_implications impl, exec e) {
  if (vectors.empty()) throw model_error("matrix model needs at least one vector");
  const heyting_model& H = *Hp;
  const finite_biposet& C = H.base();
  for (const auto& v : vectors) {
    if (v.typing.empty()) throw model_error("empty vector");
    for (idx t : v.typing)
      if (t >= C.type_count()) throw model_error("vector typed outside the base");
  }
  matrix_model M;
  M.base_ = Hp;
  M.vectors_ = std::move(vectors);
  const idx V = idx(M.vectors_.size());
  M.radix_.resize(std::size_t(V) * V);
  finite_biposet::builder b(default_types(V));
  // decoded entries per homset element, kept for the table builds below
  std::vector<std::vector<std::vector<idx>>> dec(std::size_t(V) * V);
  for (idx Y = 0; Y < V; ++Y)
    for (idx X = 0; X < V; ++X) {
      const auto& ty = M.vectors_[Y].typing;
      const auto& tx = M.vectors_[X].typing;
      auto& rad = M.radix_[Y * V + X];
      double total = 1;
      for (idx i = 0; i < ty.size(); ++i)
        for (idx j = 0; j < tx.size(); ++j) {
          rad.push_back(C.hom_size(ty[i], tx[j]));
          total *= double(rad.back());
        }
      if (total > double(default_carrier_bound))
        throw model_error("matrix homset of " + std::to_string(std::size_t(total)) +
                          " elements exceeds bound " + std::to_string(default_carrier_bound));
      const std::size_t n = std::size_t(total);
      auto& d = dec[Y * V + X];
      d.resize(n);
      std::vector<std::string> names(n);
      for (idx el = 0; el < n; ++el) {
        d[el] = M.entries(term{Y, X, el});
        std::string s = "[";
        for (idx i = 0; i < ty.size(); ++i) {
          if (i) s += ";";
          for (idx j = 0; j < tx.size(); ++j) {
            if (j) s += "|";
            s += C.hom(ty[i], tx[j]).names[d[el][i * tx.size() + j]];
          }
        }
        names[el] = s + "]";
      }
      b.set_homset(Y, X, names, [&](idx a, idx c) {
        for (idx i = 0; i < ty.size(); ++i)
          for (idx j = 0; j < tx.size(); ++j)
            if (!C.hom(ty[i], tx[j]).le(d[a][i * tx.size() + j], d[c][i * tx.size() + j]))
              return false;
        return true;
      });
      auto pointwise = [&](bool join) {
        return [&, join](idx a, idx c) {
          std::vector<idx> out(rad.size());
          for (idx i = 0; i < ty.size(); ++i)
            for (idx j = 0; j < tx.size(); ++j) {
              const auto& h = C.hom(ty[i], tx[j]);
              const std::size_t k = i * tx.size() + j;
              out[k] = join ? h.join(d[a][k], d[c][k]) : h.meet(d[a][k], d[c][k]);
            }
          return M.encode(Y, X, out);
        };
      };
      std::vector<idx> bot(rad.size()), top(rad.size());
      for (idx i = 0; i < ty.size(); ++i)
        for (idx j = 0; j < tx.size(); ++j) {
          bot[i * tx.size() + j] = C.hom(ty[i], tx[j]).bottom;
          top[i * tx.size() + j] = C.hom(ty[i], tx[j]).top;
        }
      b.set_joins(Y, X, pointwise(true), M.encode(Y, X, bot));
      b.set_meets(Y, X, pointwise(false), M.encode(Y, X, top));
    }
  for (idx Z = 0; Z < V; ++Z)
    for (idx Y = 0; Y < V; ++Y)
      for (idx X = 0; X < V; ++X) {
        const auto& tz = M.vectors_[Z].typing;
        const auto& ty = M.vectors_[Y].typing;
        const auto& tx = M.vectors_[X].typing;
        const auto& ds = dec[Z * V + Y];
        const auto& dr = dec[Y * V + X];
        b.set_composition(Z, Y, X, [&](idx s, idx r) {
          std::vector<idx> out(tz.size() * tx.size());
          for (idx a = 0; a < tz.size(); ++a)
            for (idx c = 0; c < tx.size(); ++c) {
              const auto& h = C.hom(tz[a], tx[c]);
              idx acc = h.bottom;
              for (idx m = 0; m < ty.size(); ++m)
                acc = h.join(acc, C.compose_raw(tz[a], ty[m], tx[c], ds[s][a * ty.size() + m],
                                                dr[r][m * tx.size() + c]));
              out[a * tx.size() + c] = acc;
            }
          return M.encode(Z, X, out);
        });
      }
  for (idx X = 0; X < V; ++X) {
    const auto& tx = M.vectors_[X].typing;
    std::vector<idx> id(tx.size() * tx.size());
    for (idx i = 0; i < tx.size(); ++i)
      for (idx j = 0; j < tx.size(); ++j)
        id[i * tx.size() + j] = i == j ? C.identity_raw(tx[i]) : C.hom(tx[i], tx[j]).bottom;
    b.set_identity(X, M.encode(X, X, id));
  }
  auto base = std::make_shared<finite_biposet>(b.build());
  if (impl == matrix_implications::sweep)
    M.model_ = std::make_shared<heyting_model>(heyting_model::build(base, e));
  else
    M.model_ = std::make_shared<heyting_model>(heyting_model::build(base, M.formulas(), e));
  return M;
}

matrix_model make_distributor(const finite_biposet& C, std::vector<typed_vector> vectors,
                              exec e) {
  auto sub = make_subset_family(C, subset_variant::subset, e);
  if (vectors.empty())
    for (idx t = 0; t < C.type_count(); ++t) vectors.push_back(typed_vector{{t}});
  return make_matrix(sub.model, std::move(vectors), matrix_implications::formulas, e);
}

term type_sum_result::source_pairing(term t, term s) const {
  const auto& B = model.model()->base();
  return B.join(B.compose(p_y, t), B.compose(p_x, s));
}

term type_sum_result::target_pairing(term t, term s) const {
  const auto& B = model.model()->base();
  return B.join(B.compose(t, i_y), B.compose(s, i_x));
}

type_sum_result type_sum(const matrix_model& M, idx y, idx x, std::uint64_t budget) {
  auto vecs = M.vectors();
  if (y >= vecs.size() || x >= vecs.size()) throw model_error("sum of unknown types");
  typed_vector sum = vecs[y];
  for (idx t : vecs[x].typing) sum.typing.push_back(t);
  vecs.push_back(sum);
  type_sum_result res{make_matrix(M.base(), vecs), idx(vecs.size() - 1), {}, {}, {}, {}, {}};
  const auto& mm = res.model;
  const auto& B = mm.model()->base();
  const auto& C = M.base()->base();
  const idx S = res.sum;
  const auto& ty = vecs[y].typing;
  auto build = [&](idx Y, idx X, auto on) {
    const auto& a = vecs[Y].typing;
    const auto& c = vecs[X].typing;
    std::vector<idx> ent(a.size() * c.size());
    for (idx i = 0; i < a.size(); ++i)
      for (idx j = 0; j < c.size(); ++j)
        ent[i * c.size() + j] = on(i, j) ? C.identity_raw(a[i]) : C.hom(a[i], c[j]).bottom;
    return term{Y, X, mm.encode(Y, X, ent)};
  };
  const idx ny = idx(ty.size());
  res.i_y = build(y, S, [&](idx i, idx j) { return j == i; });
  res.i_x = build(x, S, [&](idx i, idx j) { return j == ny + i; });
  res.p_y = build(S, y, [&](idx i, idx j) { return i == j; });
  res.p_x = build(S, x, [&](idx i, idx j) { return i == ny + j; });

  auto& ip = res.checks.add("injection-projection equations");
  auto eq = [](check& c, bool ok, const std::string& what) {
    ++c.instances;
    if (!ok) {
      ++c.violations;
      c.examples.push_back(what);
    }
  };
  eq(ip, B.compose(res.i_y, res.p_y) == B.identity(y), "i_y∘p_y != y");
  eq(ip, B.compose(res.i_x, res.p_x) == B.identity(x), "i_x∘p_x != x");
  eq(ip, B.compose(res.i_y, res.p_x) == B.bottom(y, x), "i_y∘p_x != ⊥");
  eq(ip, B.compose(res.i_x, res.p_y) == B.bottom(x, y), "i_x∘p_y != ⊥");
  term cy = B.compose(res.p_y, res.i_y), cx = B.compose(res.p_x, res.i_x);
  auto& cov = res.checks.add("comonoid covering");
  eq(cov, B.join(cy, cx) == B.identity(S), "(p_y∘i_y)∨(p_x∘i_x) != y⊕x");
  auto& dis = res.checks.add("comonoid disjointness");
  eq(dis, B.meet(cy, cx) == B.bottom(S, S), "(p_y∘i_y)∧(p_x∘i_x) != ⊥");

  check pair{"pairing universal equations"};
  check subc{"subterm covering"};
  for (idx z = 0; z < vecs.size(); ++z) {
    const std::uint64_t nt = B.hom_size(y, z), ns = B.hom_size(x, z);
    auto part = run_check_budget(
        pair.name, nt * ns, budget, 7, exec::serial,
        [&](std::uint64_t i) {
          term t{y, z, idx(i / ns)}, s{x, z, idx(i % ns)};
          term p = res.source_pairing(t, s);
          return B.compose(res.i_y, p) != t || B.compose(res.i_x, p) != s;
        },
        [&](std::uint64_t i) { return "[t,s] at t=" + B.describe({y, z, idx(i / ns)}); });
    pair.instances += part.instances;
    pair.violations += part.violations;
    const std::uint64_t nt2 = B.hom_size(z, y), ns2 = B.hom_size(z, x);
    auto part2 = run_check_budget(
        pair.name, nt2 * ns2, budget, 11, exec::serial,
        [&](std::uint64_t i) {
          term t{z, y, idx(i / ns2)}, s{z, x, idx(i % ns2)};
          term p = res.target_pairing(t, s);
          return B.compose(p, res.p_y) != t || B.compose(p, res.p_x) != s;
        },
        [&](std::uint64_t i) { return "⟨t,s⟩ at t=" + B.describe({z, y, idx(i / ns2)}); });
    pair.instances += part2.instances;
    pair.violations += part2.violations;
    const std::uint64_t nu = B.hom_size(S, z);
    auto part3 = run_check_budget(
        subc.name, nu, budget, 13, exec::serial,
        [&](std::uint64_t i) {
          term u{S, z, idx(i)};
          term ry = B.compose(cy, u), rx = B.compose(cx, u);
          term back = res.source_pairing(B.compose(res.i_y, u), B.compose(res.i_x, u));
          return B.join(ry, rx) != u || back != u;
        },
        [&](std::uint64_t i) { return "r_y∨r_x != r at " + B.describe({S, z, idx(i)}); });
    subc.instances += part3.instances;
    subc.violations += part3.violations;
    for (auto* p : {&part, &part2}) pair.examples.insert(pair.examples.end(), p->examples.begin(), p->examples.end());
    subc.examples.insert(subc.examples.end(), part3.examples.begin(), part3.examples.end());
  }
  res.checks.add(std::move(pair));
  res.checks.add(std::move(subc));
  return res;
}

namespace {

struct token {
  std::string text;
  int line;
  int col;
};

bool is_keyword(const std::string& s) {
  static const char* kw[] = {"types", "hom", "le", "comp", "id", "join", "bot", "meet", "top"};
  for (auto k : kw)
    if (s == k) return true;
  return false;
}

struct directive {
  token keyword;
  std::vector<token> args;   // before the colon
  std::vector<token> items;  // after the colon
};

}  // namespace

finite_biposet parse_model_file(std::string_view text, const std::string& file) {
  std::vector<directive> dirs;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::vector<token> toks;
    for (std::size_t i = 0; i < line.size();) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      toks.push_back(token{line.substr(i, j - i), lineno, int(i) + 1});
      i = j;
    }
    if (toks.empty()) continue;
    std::size_t k = 0;
    if (is_keyword(toks[0].text)) {
      directive d;
      d.keyword = toks[0];
      k = 1;
      bool colon = d.keyword.text == "types";
      for (; k < toks.size() && !colon; ++k) {
        std::string t = toks[k].text;
        if (t == ":") {
          colon = true;
        } else if (t.back() == ':') {
          t.pop_back();
          d.args.push_back(token{t, toks[k].line, toks[k].col});
          colon = true;
        } else {
          d.args.push_back(toks[k]);
        }
      }
      if (!colon) throw parse_error(file, toks[0].line, toks[0].col, "missing ':' after " + d.keyword.text);
      dirs.push_back(std::move(d));
    } else if (dirs.empty()) {
      throw parse_error(file, toks[0].line, toks[0].col, "expected a directive, got '" + toks[0].text + "'");
    }
    for (; k < toks.size(); ++k) dirs.back().items.push_back(toks[k]);
  }

  if (dirs.empty() || dirs.front().keyword.text != "types")
    throw parse_error(file, dirs.empty() ? 1 : dirs.front().keyword.line, 1, "model file must start with 'types'");
  std::vector<std::string> types;
  for (const auto& t : dirs.front().items) types.push_back(t.text);
  if (types.empty()) throw parse_error(file, dirs.front().keyword.line, 1, "no types declared");
  const idx T = idx(types.size());
  auto type_of = [&](const token& t) {
    for (idx i = 0; i < T; ++i)
      if (types[i] == t.text) return i;
    throw parse_error(file, t.line, t.col, "unknown type '" + t.text + "'");
  };
  auto need_args = [&](const directive& d, std::size_t n) {
    if (d.args.size() != n)
      throw parse_error(file, d.keyword.line, d.keyword.col,
                        d.keyword.text + " expects " + std::to_string(n) + " types");
  };
  std::vector<std::vector<std::string>> names(std::size_t(T) * T);
  std::vector<bool> have(std::size_t(T) * T, false);
  for (const auto& d : dirs) {
    if (d.keyword.text != "hom") continue;
    need_args(d, 2);
    idx y = type_of(d.args[0]), x = type_of(d.args[1]);
    if (have[y * T + x]) throw parse_error(file, d.keyword.line, d.keyword.col, "duplicate hom");
    have[y * T + x] = true;
    for (const auto& t : d.items) {
      if (t.text.find_first_of("(),<=") != std::string::npos)
        throw parse_error(file, t.line, t.col, "element names may not contain ( ) , < =");
      names[y * T + x].push_back(t.text);
    }
    if (names[y * T + x].empty()) throw parse_error(file, d.keyword.line, d.keyword.col, "empty homset");
  }
  for (idx y = 0; y < T; ++y)
    for (idx x = 0; x < T; ++x)
      if (!have[y * T + x])
        throw parse_error(file, lineno, 1, "missing hom " + types[y] + " " + types[x]);
  auto elem = [&](idx y, idx x, const std::string& s, const token& where) {
    const auto& n = names[y * T + x];
    for (idx i = 0; i < n.size(); ++i)
      if (n[i] == s) return i;
    throw parse_error(file, where.line, where.col,
                      "unknown element '" + s + "' of hom " + types[y] + " " + types[x]);
  };
  // "(a,b)->c"
  auto triple = [&](const token& t) {
    const std::string& s = t.text;
    auto comma = s.find(',');
    auto close = s.find(")->");
    if (s.empty() || s[0] != '(' || comma == std::string::npos || close == std::string::npos ||
        comma > close)
      throw parse_error(file, t.line, t.col, "expected (a,b)->c, got '" + s + "'");
    return std::array<std::string, 3>{s.substr(1, comma - 1), s.substr(comma + 1, close - comma - 1),
                                      s.substr(close + 3)};
  };

  std::vector<std::vector<std::pair<idx, idx>>> le(std::size_t(T) * T);
  for (const auto& d : dirs) {
    if (d.keyword.text != "le") continue;
    need_args(d, 2);
    idx y = type_of(d.args[0]), x = type_of(d.args[1]);
    for (const auto& t : d.items) {
      auto p = t.text.find("<=");
      if (p == std::string::npos) throw parse_error(file, t.line, t.col, "expected a<=b");
      le[y * T + x].emplace_back(elem(y, x, t.text.substr(0, p), t), elem(y, x, t.text.substr(p + 2), t));
    }
  }
  finite_biposet::builder b(types);
  for (idx y = 0; y < T; ++y)
    for (idx x = 0; x < T; ++x) {
      try {
        auto order = std::make_shared<finite_poset>(
            finite_poset::generated(names[y * T + x].size(), le[y * T + x]));
        b.set_homset(y, x, names[y * T + x], order);
      } catch (const model_error& err) {
        throw parse_error(file, 1, 1, "hom " + types[y] + " " + types[x] + ": " + err.what());
      }
    }
  for (const auto& d : dirs) {
    const auto& k = d.keyword.text;
    if (k == "comp") {
      need_args(d, 3);
      idx z = type_of(d.args[0]), y = type_of(d.args[1]), x = type_of(d.args[2]);
      const std::size_t a = names[z * T + y].size(), c = names[y * T + x].size();
      std::vector<idx> table(a * c, npos);
      for (const auto& t : d.items) {
        auto [s, r, o] = triple(t);
        table[elem(z, y, s, t) * c + elem(y, x, r, t)] = elem(z, x, o, t);
      }
      for (std::size_t i = 0; i < table.size(); ++i)
        if (table[i] == npos)
          throw parse_error(file, d.keyword.line, d.keyword.col,
                            "composition undefined for (" + names[z * T + y][i / c] + "," +
                                names[y * T + x][i % c] + ")");
      b.set_composition_table(z, y, x, std::move(table));
    } else if (k == "id") {
      need_args(d, 1);
      idx x = type_of(d.args[0]);
      if (d.items.size() != 1) throw parse_error(file, d.keyword.line, d.keyword.col, "id takes one element");
      b.set_identity(x, elem(x, x, d.items[0].text, d.items[0]));
    } else if (k == "join" || k == "meet") {
      need_args(d, 2);
      idx y = type_of(d.args[0]), x = type_of(d.args[1]);
      const std::size_t n = names[y * T + x].size();
      std::vector<idx> table(n * n, npos);
      for (const auto& t : d.items) {
        auto [p, q, o] = triple(t);
        idx a = elem(y, x, p, t), c = elem(y, x, q, t), v = elem(y, x, o, t);
        table[a * n + c] = v;
        table[c * n + a] = v;
      }
      for (idx a = 0; a < n; ++a)
        if (table[a * n + a] == npos) table[a * n + a] = a;
      for (idx v : table)
        if (v == npos)
          throw parse_error(file, d.keyword.line, d.keyword.col, k + " table is not total");
      // the neutral element is filled in by the bot/top directive below
      idx unit = npos;
      const std::string want = k == "join" ? "bot" : "top";
      for (const auto& d2 : dirs)
        if (d2.keyword.text == want && d2.args.size() == 2 && type_of(d2.args[0]) == y &&
            type_of(d2.args[1]) == x && d2.items.size() == 1)
          unit = elem(y, x, d2.items[0].text, d2.items[0]);
      if (unit == npos)
        throw parse_error(file, d.keyword.line, d.keyword.col, k + " given without " + want);
      if (k == "join")
        b.set_joins(y, x, [&](idx p, idx q) { return table[p * n + q]; }, unit);
      else
        b.set_meets(y, x, [&](idx p, idx q) { return table[p * n + q]; }, unit);
    } else if (k == "bot" || k == "top") {
      need_args(d, 2);
    }
  }
  try {
    return b.build();
  } catch (const model_error& err) {
    throw parse_error(file, lineno, 1, err.what());
  }
}

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto p = s.find(sep, start);
    out.emplace_back(s.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start));
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  return out;
}

std::size_t to_size(const std::string& s, std::string_view desc) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("bad number '" + s + "' in descriptor '" + std::string(desc) + "'");
  return std::stoul(s);
}

std::vector<typed_vector> parse_vectors(const std::string& spec, const finite_biposet& C,
                                        std::string_view desc) {
  std::vector<typed_vector> out;
  for (const auto& v : split(spec, ',')) {
    typed_vector tv;
    if (!v.empty() && v.find_first_not_of("0123456789") == std::string::npos) {
      tv.typing.assign(to_size(v, desc), 0);
    } else {
      for (const auto& name : split(v, '+')) {
        auto t = C.find_type(name);
        if (!t) throw std::invalid_argument("unknown base type '" + name + "' in '" + std::string(desc) + "'");
        tv.typing.push_back(*t);
      }
    }
    out.push_back(std::move(tv));
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot read " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

model_handle parse_model_descriptor(std::string_view desc, exec e) {
  model_handle h;
  h.descriptor = std::string(desc);
  auto colon = desc.find(':');
  std::string kind(desc.substr(0, colon));
  std::string rest = colon == std::string_view::npos ? "" : std::string(desc.substr(colon + 1));
  if (kind == "bool2" && rest.empty()) {
    h.heyting = make_bool2(e);
  } else if (kind == "powerset") {
    h.heyting = make_powerset(to_size(rest, desc), e);
  } else if (kind == "rel") {
    std::vector<std::size_t> sizes;
    for (const auto& s : split(rest, ',')) sizes.push_back(to_size(s, desc));
    h.heyting = make_rel(sizes, e);
  } else if (kind == "trop") {
    auto parts = split(rest, ':');
    saturation sat = saturation::to_cap;
    if (parts.size() == 2 && parts[1] == "inf")
      sat = saturation::to_infinity;
    else if (parts.size() != 1 && !(parts.size() == 2 && parts[1] == "cap"))
      throw std::invalid_argument("bad tropical descriptor '" + std::string(desc) + "'");
    h.heyting = make_tropical(unsigned(to_size(parts[0], desc)), sat, e);
  } else if (kind == "lang") {
    auto parts = split(rest, ',');
    if (parts.size() != 2) throw std::invalid_argument("expected lang:<alphabet>,<maxlen>");
    std::string alpha = parts[0];
    if (alpha.size() >= 2 && alpha.front() == '{' && alpha.back() == '}') alpha = alpha.substr(1, alpha.size() - 2);
    h.heyting = make_language(alpha, unsigned(to_size(parts[1], desc)), e);
  } else if (kind == "mat") {
    auto last = rest.rfind(':');
    if (last == std::string::npos) throw std::invalid_argument("expected mat:<base>:<vectors>");
    model_handle base = parse_model_descriptor(rest.substr(0, last), e);
    auto vecs = parse_vectors(rest.substr(last + 1), base.heyting->base(), desc);
    h.matrix = make_matrix(base.heyting, std::move(vecs), matrix_implications::formulas, e);
    h.heyting = h.matrix->model();
  } else if (kind == "distrib") {
    if (rest.empty()) throw std::invalid_argument("expected distrib:<modelfile>");
    std::string path = rest, vspec;
    if (auto p = rest.rfind(':'); p != std::string::npos && p > 0) {
      std::string tail = rest.substr(p + 1);
      std::ifstream probe(rest);
      if (!probe) {
        path = rest.substr(0, p);
        vspec = tail;
      }
    }
    finite_biposet C = parse_model_file(read_file(path), path);
    std::vector<typed_vector> vecs;
    if (!vspec.empty()) vecs = parse_vectors(vspec, C, desc);
    h.matrix = make_distributor(C, std::move(vecs), e);
    h.heyting = h.matrix->model();
  } else {
    throw std::invalid_argument("unknown model descriptor '" + std::string(desc) + "'");
  }
  return h;
}

}  // namespace dialectic
