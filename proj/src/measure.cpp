#include "unitary/measure.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <tuple>

#include "unitary/group.hpp"
#include "unitary/rng.hpp"

namespace unitary {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw GuardError(msg);
}

std::mutex factor_mutex;
std::map<std::tuple<uint64_t, unsigned, unsigned>, Rat> factor_J_cache;
std::map<std::tuple<uint64_t, unsigned, unsigned>, Rat> factor_K_cache;

}  // namespace

Rat class_weight_J(uint64_t q, unsigned d, unsigned m) {
  std::lock_guard<std::mutex> lk(factor_mutex);
  auto key = std::make_tuple(q, d, m);
  auto it = factor_J_cache.find(key);
  if (it != factor_J_cache.end()) return it->second;
  Int qd = int_pow(Int(q), d);
  if (!qd.fits_ulong_p()) throw GuardError("class_weight_J: q^d too large");
  Rat f(int_pow(Int(q), (unsigned long)d * m * m - (unsigned long)d * m),
        order_U(m, qd.get_ui()));
  f.canonicalize();
  factor_J_cache.emplace(key, f);
  return f;
}

Rat class_weight_K(uint64_t q, unsigned d, unsigned m) {
  std::lock_guard<std::mutex> lk(factor_mutex);
  auto key = std::make_tuple(q, d, m);
  auto it = factor_K_cache.find(key);
  if (it != factor_K_cache.end()) return it->second;
  Rat f(int_pow(Int(q), 2ul * d * m * m - 2ul * d * m),
        order_GL(m, int_pow(Int(q), 2ul * d)));
  f.canonicalize();
  factor_K_cache.emplace(key, f);
  return f;
}

namespace {

/// Factor-class view of a tilde-closed factorization: J factors stand alone,
// conjugate pairs are fused under their canonical-smaller member. An
// unbalanced pair throws, or just clears *balanced when that channel is given.
struct LocalClass {
  unsigned deg;
  uint64_t code;
  bool isJ;
  unsigned mult;
  Int xfac;
  const Poly* rep;
};

std::vector<LocalClass> class_view(const Factorization& fact, uint64_t q,
                                   bool* balanced = nullptr) {
  std::map<std::pair<unsigned, uint64_t>, const FactorEntry*> by_key;
  for (const auto& fe : fact.factors)
    by_key[{(unsigned)fe.phi.deg(), poly_code(fe.phi)}] = &fe;

  auto unbalanced = [&]() {
    if (!balanced) throw GuardError("conjugate pair multiplicities are unbalanced");
    *balanced = false;
  };

  std::vector<LocalClass> out;
  for (const auto& fe : fact.factors) {
    unsigned d = (unsigned)fe.phi.deg();
    if (fe.cls == Cls::J) {
      out.push_back({d, poly_code(fe.phi), true, fe.mult, int_pow(Int(q), d) + 1, &fe.phi});
    } else if (fe.cls == Cls::Kplus) {
      Poly conj = tilde(fe.phi);
      auto it = by_key.find({d, poly_code(conj)});
      if (it == by_key.end() || it->second->mult != fe.mult) {
        unbalanced();
        return {};
      }
      out.push_back({d, poly_code(fe.phi), false, fe.mult, int_pow(Int(q), 2ul * d) - 1,
                     &fe.phi});
    } else {
      Poly conj = tilde(fe.phi);
      auto it = by_key.find({d, poly_code(conj)});
      if (it == by_key.end() || it->second->mult != fe.mult) {
        unbalanced();
        return {};
      }
      // counted under the K+ member
    }
  }
  std::sort(out.begin(), out.end(), [](const LocalClass& a, const LocalClass& b) {
    if (a.deg != b.deg) return a.deg < b.deg;
    return a.code < b.code;
  });
  return out;
}

}  // namespace

Rat measure_of(const Poly& f) {
  require(f.is_monic(), "measure_of: monic input required");
  // Off-support inputs have probability zero: x | f cannot happen for an
  // invertible matrix, and a non-tilde-closed f is never a char poly here.
  if (f.deg() > 0 && f.c[0] == 0) return Rat(0);
  uint64_t q = f.F->base_q();
  Factorization fact = factorize(f);
  bool balanced = true;
  std::vector<LocalClass> cls = class_view(fact, q, &balanced);
  if (!balanced) return Rat(0);
  Rat w(1);
  for (const auto& lc : cls)
    w *= lc.isJ ? class_weight_J(q, lc.deg, lc.mult)
                : class_weight_K(q, lc.deg, lc.mult);
  w.canonicalize();
  return w;
}

namespace {

struct TableBuilder {
  const std::vector<ClassInfo>& classes;
  uint64_t q;
  const Int& order;
  std::vector<OmegaTable::Entry>& out;
  std::vector<std::pair<uint32_t, uint32_t>> stack;
  std::vector<Rat> wstack;

  void emit() {
    OmegaTable::Entry e;
    e.parts = stack;
    Rat cnt = wstack.back() * Rat(order);
    cnt.canonicalize();
    if (cnt.get_den() != 1)
      throw InvariantError("omega table: non-integral element count");
    e.count = cnt.get_num();
    uint32_t M = 0;
    for (auto& [idx, m] : stack) M = std::max(M, m);
    e.M = M;
    out.push_back(std::move(e));
  }

  void visit(size_t start, unsigned r) {
    if (r == 0) emit();
    for (size_t j = start; j < classes.size(); ++j) {
      const ClassInfo& c = classes[j];
      if (c.span > r) break;
      for (unsigned m = 1; m * c.span <= r; ++m) {
        stack.push_back({(uint32_t)j, m});
        Rat fac = c.isJ ? class_weight_J(q, c.deg, m) : class_weight_K(q, c.deg, m);
        wstack.push_back(wstack.back() * fac);
        visit(j + 1, r - m * c.span);
        wstack.pop_back();
        stack.pop_back();
      }
    }
  }
};

}  // namespace

OmegaTable::OmegaTable(unsigned n, uint64_t q, bool override_guard) : n_(n), q_(q) {
  F_ = &Field::make_q2(q);
  if (n > 0) {
    Int expected = (Int(q) + 1) * int_pow(Int(q), n - 1);
    Int cap = override_guard ? Int(1u << 22) : Int(100000);
    if (expected > cap)
      throw GuardError("omega table: (q+1) q^{n-1} entries exceed the table guard");
  }
  order_ = order_U(n, q);

  for (unsigned d = 1; d <= n; d += 2)
    for (Poly& f : enumerate_J(*F_, d)) {
      ClassInfo c;
      c.deg = d;
      c.span = d;
      c.isJ = true;
      c.code = poly_code(f);
      c.xfac = int_pow(Int(q), d) + 1;
      c.rep = std::move(f);
      classes_.push_back(std::move(c));
    }
  for (unsigned d = 1; 2 * d <= n; ++d)
    for (Poly& f : enumerate_Kplus(*F_, d)) {
      ClassInfo c;
      c.deg = d;
      c.span = 2 * d;
      c.isJ = false;
      c.code = poly_code(f);
      c.xfac = int_pow(Int(q), 2ul * d) - 1;
      c.rep = std::move(f);
      classes_.push_back(std::move(c));
    }
  std::sort(classes_.begin(), classes_.end(), [](const ClassInfo& a, const ClassInfo& b) {
    if (a.span != b.span) return a.span < b.span;
    if (a.deg != b.deg) return a.deg < b.deg;
    return a.code < b.code;
  });

  TableBuilder b{classes_, q_, order_, entries_, {}, {Rat(1)}};
  b.visit(0, n);

  if (n > 0) {
    Int expected = (Int(q) + 1) * int_pow(Int(q), n - 1);
    if (Int((unsigned long)entries_.size()) != expected)
      throw InvariantError("omega table: entry count is not (q+1) q^{n-1}");
  } else if (entries_.size() != 1) {
    throw InvariantError("omega table: empty-degree table must have one entry");
  }
  Int total = 0;
  for (const auto& e : entries_) total += e.count;
  if (total != order_)
    throw InvariantError("omega table: counts do not sum to the group order");
}

namespace {

std::mutex table_reg_mutex;
std::map<std::pair<unsigned, uint64_t>, const OmegaTable*> table_registry;

}  // namespace

const OmegaTable& OmegaTable::get(unsigned n, uint64_t q) {
  std::lock_guard<std::mutex> lk(table_reg_mutex);
  auto key = std::make_pair(n, q);
  auto it = table_registry.find(key);
  if (it == table_registry.end())
    it = table_registry.emplace(key, new OmegaTable(n, q)).first;
  return *it->second;
}

Rat OmegaTable::weight(const Entry& e) const {
  Rat w(e.count, order_);
  w.canonicalize();
  return w;
}

Poly OmegaTable::poly_of(const Entry& e) const {
  Poly f = poly_one(*F_);
  for (auto [idx, m] : e.parts) {
    const ClassInfo& c = classes_[idx];
    f = mul(f, poly_pow(c.rep, m));
    if (!c.isJ) f = mul(f, poly_pow(tilde(c.rep), m));
  }
  return f;
}

Int OmegaTable::X_of(const Entry& e) const {
  Int x = 1;
  for (auto [idx, m] : e.parts) x = lcm(x, classes_[idx].xfac);
  return x;
}

Int OmegaTable::X1_of(const Entry& e) const {
  Int x = 1;
  for (auto [idx, m] : e.parts)
    if (classes_[idx].isJ) x = lcm(x, classes_[idx].xfac);
  return x;
}

Int OmegaTable::X2_of(const Entry& e) const {
  Int x = 1;
  for (auto [idx, m] : e.parts)
    if (!classes_[idx].isJ) x = lcm(x, classes_[idx].xfac);
  return x;
}

Int OmegaTable::T_of(const Entry& e) const {
  Int t = 1;
  for (auto [idx, m] : e.parts) t = lcm(t, tau(classes_[idx].rep));
  return t;
}

Stat stat_from_name(const std::string& name) {
  std::string s;
  for (char c : name) s += (char)std::toupper((unsigned char)c);
  if (s == "X") return Stat::X;
  if (s == "X1") return Stat::X1;
  if (s == "X2") return Stat::X2;
  if (s == "T") return Stat::T;
  if (s == "M") return Stat::M;
  throw GuardError("unknown statistic (expected one of X, X1, X2, T, M)");
}

const char* stat_name(Stat s) {
  switch (s) {
    case Stat::X: return "X";
    case Stat::X1: return "X1";
    case Stat::X2: return "X2";
    case Stat::T: return "T";
    case Stat::M: return "M";
  }
  return "?";
}

Rat expect_stat(Stat s, unsigned n, uint64_t q, Exec exec) {
  const OmegaTable& tab = OmegaTable::get(n, q);
  const auto& entries = tab.entries();
  size_t cnt = entries.size();
  auto value = [&](const OmegaTable::Entry& e) -> Int {
    switch (s) {
      case Stat::X: return tab.X_of(e);
      case Stat::X1: return tab.X1_of(e);
      case Stat::X2: return tab.X2_of(e);
      case Stat::T: return tab.T_of(e);
      case Stat::M: return Int(e.M);
    }
    return Int(0);
  };
  Int sum = 0;
#ifdef _OPENMP
  if (exec == Exec::parallel) {
#pragma omp parallel
    {
      Int local = 0;
#pragma omp for schedule(dynamic, 256) nowait
      for (size_t i = 0; i < cnt; ++i) local += entries[i].count * value(entries[i]);
#pragma omp critical
      sum += local;
    }
  } else
#else
  (void)exec;
#endif
  {
    for (size_t i = 0; i < cnt; ++i) sum += entries[i].count * value(entries[i]);
  }
  Rat r(sum, tab.group_order());
  r.canonicalize();
  return r;
}

Rat tail_M(unsigned n, uint64_t q, unsigned xi) {
  const OmegaTable& tab = OmegaTable::get(n, q);
  Int sum = 0;
  for (const auto& e : tab.entries())
    if (e.M > xi) sum += e.count;
  Rat r(sum, tab.group_order());
  r.canonicalize();
  return r;
}

Rat prob_mult_eq(unsigned n, uint64_t q, const Poly& psi, unsigned ell) {
  const OmegaTable& tab = OmegaTable::get(n, q);
  require(irreducible(psi), "prob_mult_eq: irreducible psi required");
  Poly rep = psi;
  if (classify(psi) == Cls::Kminus) rep = tilde(psi);
  unsigned deg = (unsigned)rep.deg();
  uint64_t code = poly_code(rep);

  size_t idx = tab.classes().size();
  for (size_t i = 0; i < tab.classes().size(); ++i)
    if (tab.classes()[i].deg == deg && tab.classes()[i].code == code) {
      idx = i;
      break;
    }
  Int sum = 0;
  if (idx == tab.classes().size()) {
    // class does not fit in degree n at all; only ell = 0 has mass
    if (ell == 0) sum = tab.group_order();
  } else {
    for (const auto& e : tab.entries()) {
      unsigned m = 0;
      for (auto [ci, cm] : e.parts)
        if (ci == idx) {
          m = cm;
          break;
        }
      if (m == ell) sum += e.count;
    }
  }
  Rat r(sum, tab.group_order());
  r.canonicalize();
  return r;
}

namespace {

// kept flags for the greedy deletion pass; input sorted ascending (deg, code)
std::vector<bool> greedy_keep(const std::vector<Int>& xfacs) {
  size_t k = xfacs.size();
  Int target = 1;
  for (const Int& x : xfacs) target = lcm(target, x);
  std::vector<bool> kept(k, true);
  for (size_t i = 0; i < k; ++i) {
    Int without = 1;
    for (size_t j = 0; j < k; ++j)
      if (j != i && kept[j]) without = lcm(without, xfacs[j]);
    if (without == target) kept[i] = false;
  }
  return kept;
}

}  // namespace

PiSplit pi_factor(const Poly& f) {
  require(f.is_monic(), "pi_factor: monic input required");
  require(f.deg() == 0 || f.c[0] != 0, "pi_factor: nonzero constant term required");
  const Field& F = *f.F;
  uint64_t q = F.base_q();
  Factorization fact = factorize(f);
  std::vector<LocalClass> cls = class_view(fact, q);

  std::vector<Int> xfacs;
  for (const auto& lc : cls) xfacs.push_back(lc.xfac);
  std::vector<bool> kept = greedy_keep(xfacs);

  PiSplit out;
  out.f = f;
  out.X_f = 1;
  for (const auto& lc : cls) out.X_f = lcm(out.X_f, lc.xfac);
  out.g = poly_one(F);
  out.X_g = 1;
  for (size_t i = 0; i < cls.size(); ++i) {
    out.steps.push_back({cls[i].deg, cls[i].code, cls[i].isJ, kept[i]});
    if (!kept[i]) continue;
    out.X_g = lcm(out.X_g, cls[i].xfac);
    out.g = mul(out.g, *cls[i].rep);
    if (!cls[i].isJ) out.g = mul(out.g, tilde(*cls[i].rep));
  }
  auto [h, r] = divmod(f, out.g);
  if (!r.is_zero()) throw InvariantError("pi_factor: reduced part does not divide");
  out.h = std::move(h);
  if (out.X_g != out.X_f) throw InvariantError("pi_factor: X not preserved");
  return out;
}

SubLemmaReport check_sub_lemma(unsigned n, uint64_t q) {
  const OmegaTable& tab = OmegaTable::get(n, q);
  const auto& classes = tab.classes();
  SubLemmaReport rep;
  rep.n = n;
  rep.q = q;
  rep.max_ratio = 0;
  rep.max_ratio_k_only = 0;
  rep.unit_square_ratio = 0;

  for (const auto& e : tab.entries()) {
    if (e.parts.empty()) continue;
    // canonical (deg, code) order for the greedy pass
    std::vector<size_t> ord(e.parts.size());
    for (size_t i = 0; i < ord.size(); ++i) ord[i] = i;
    std::sort(ord.begin(), ord.end(), [&](size_t a, size_t b) {
      const ClassInfo& ca = classes[e.parts[a].first];
      const ClassInfo& cb = classes[e.parts[b].first];
      if (ca.deg != cb.deg) return ca.deg < cb.deg;
      return ca.code < cb.code;
    });
    std::vector<Int> xfacs;
    for (size_t i : ord) xfacs.push_back(classes[e.parts[i].first].xfac);
    std::vector<bool> kept = greedy_keep(xfacs);

    unsigned gspan = 0;
    for (size_t t = 0; t < ord.size(); ++t)
      if (kept[t]) gspan += classes[e.parts[ord[t]].first].span;
    if (gspan == n) continue;  // only proper reduced parts are comparable

    Rat Pg(1), Ph(1);
    for (size_t t = 0; t < ord.size(); ++t) {
      const auto& [ci, m] = e.parts[ord[t]];
      const ClassInfo& c = classes[ci];
      if (kept[t]) Pg *= c.isJ ? class_weight_J(q, c.deg, 1) : class_weight_K(q, c.deg, 1);
      unsigned mh = m - (kept[t] ? 1 : 0);
      if (mh > 0)
        Ph *= c.isJ ? class_weight_J(q, c.deg, mh) : class_weight_K(q, c.deg, mh);
    }
    Rat Pf = tab.weight(e);
    Rat ratio = Pf / (Pg * Ph);
    ratio.canonicalize();

    rep.checked += 1;
    if (ratio > 1) rep.ratio_gt_one += 1;
    if (ratio > rep.max_ratio) {
      rep.max_ratio = ratio;
      rep.argmax = poly_str(tab.poly_of(e));
    }
    bool k_only = true;
    for (auto [ci, m] : e.parts)
      if (classes[ci].isJ) k_only = false;
    if (k_only) {
      rep.k_only_checked += 1;
      if (ratio > 1) rep.k_only_gt_one += 1;
      if (ratio > rep.max_ratio_k_only) rep.max_ratio_k_only = ratio;
    }
    if (e.parts.size() == 1) {
      const ClassInfo& c = classes[e.parts[0].first];
      if (c.isJ && c.deg == 1 && c.code == 1 && e.parts[0].second == 2)
        rep.unit_square_ratio = ratio;
    }
  }
  rep.within_ten = rep.max_ratio <= 10;
  return rep;
}

std::vector<size_t> sample_entries(const OmegaTable& tab, uint64_t seed, uint64_t count) {
  const auto& entries = tab.entries();
  std::vector<Int> prefix(entries.size());
  Int acc = 0;
  for (size_t i = 0; i < entries.size(); ++i) {
    acc += entries[i].count;
    prefix[i] = acc;
  }
  std::vector<size_t> out(count);
  for (uint64_t i = 0; i < count; ++i) {
    CounterRng rng(seed, i);
    Int r = rng.below(tab.group_order());
    size_t lo = std::upper_bound(prefix.begin(), prefix.end(), r) - prefix.begin();
    out[i] = lo;
  }
  return out;
}

}  // namespace unitary
