#include "catfin/probe.hpp"

#include <algorithm>
#include <optional>
#include <utility>

#include "catfin/error.hpp"
#include "catfin/groebner.hpp"

namespace catfin {

// ---------------------------------------------------------------------------
// Truncated ring arithmetic

TruncRing::TruncRing(std::uint32_t p, std::size_t e) : p_(p), psq_(p * p), e_(e) {
  size_ = psq_;
  for (std::size_t i = 0; i < e_; ++i) size_ *= p_;
}

TruncElem TruncRing::zero() const { return TruncElem{0, std::vector<std::uint32_t>(e_, 0)}; }

TruncElem TruncRing::one() const { return TruncElem{1, std::vector<std::uint32_t>(e_, 0)}; }

TruncElem TruncRing::add(const TruncElem& a, const TruncElem& b) const {
  TruncElem r{(a.u + b.u) % psq_, std::vector<std::uint32_t>(e_, 0)};
  for (std::size_t i = 0; i < e_; ++i) r.b[i] = (a.b[i] + b.b[i]) % p_;
  return r;
}

TruncElem TruncRing::mul(const TruncElem& a, const TruncElem& b) const {
  // (u + sum ai*ti)(v + sum bi*ti) = uv + sum (u*bi + v*ai)*ti, since the
  // tau-part squares to zero and p*ti = 0.
  TruncElem r{static_cast<std::uint32_t>((static_cast<std::uint64_t>(a.u) * b.u) % psq_),
              std::vector<std::uint32_t>(e_, 0)};
  std::uint32_t ua = a.u % p_, ub = b.u % p_;
  for (std::size_t i = 0; i < e_; ++i) r.b[i] = (ua * b.b[i] + ub * a.b[i]) % p_;
  return r;
}

TruncElem TruncRing::neg(const TruncElem& a) const {
  TruncElem r{(psq_ - a.u) % psq_, std::vector<std::uint32_t>(e_, 0)};
  for (std::size_t i = 0; i < e_; ++i) r.b[i] = (p_ - a.b[i]) % p_;
  return r;
}

bool TruncRing::is_zero(const TruncElem& a) const {
  if (a.u != 0) return false;
  for (std::uint32_t bi : a.b)
    if (bi != 0) return false;
  return true;
}

TruncElem TruncRing::embed_integer(const Integer& n) const {
  return TruncElem{static_cast<std::uint32_t>(mod_ui(n, psq_)),
                   std::vector<std::uint32_t>(e_, 0)};
}

TruncElem TruncRing::embed(const Rational& q) const {
  std::uint64_t num = mod_ui(Integer(q.get_num()), psq_);
  std::uint64_t invDen = invert_mod(Integer(q.get_den()), psq_);
  return TruncElem{static_cast<std::uint32_t>((num * invDen) % psq_),
                   std::vector<std::uint32_t>(e_, 0)};
}

TruncElem TruncRing::element_at(std::uint64_t index) const {
  TruncElem r{static_cast<std::uint32_t>(index % psq_), std::vector<std::uint32_t>(e_, 0)};
  index /= psq_;
  for (std::size_t i = 0; i < e_; ++i) {
    r.b[i] = static_cast<std::uint32_t>(index % p_);
    index /= p_;
  }
  return r;
}

std::uint64_t TruncRing::index_of(const TruncElem& a) const {
  std::uint64_t idx = 0;
  for (std::size_t i = e_; i-- > 0;) idx = idx * p_ + a.b[i];
  return idx * psq_ + a.u;
}

std::string TruncRing::to_string(const TruncElem& a) const {
  std::string s;
  if (a.u != 0) s = std::to_string(a.u);
  for (std::size_t i = 0; i < e_; ++i) {
    if (a.b[i] == 0) continue;
    if (!s.empty()) s += "+";
    if (a.b[i] != 1) s += std::to_string(a.b[i]) + "*";
    s += "t" + std::to_string(i + 1);
  }
  return s.empty() ? "0" : s;
}

// ---------------------------------------------------------------------------
// Spreading out

const std::vector<Poly>& IntegralModel::gens_for(const Variety& v) const {
  auto it = scaledGens.find(&v);
  if (it == scaledGens.end())
    fail(Errc::InternalCapExceeded, "integral model does not cover variety '" + v.name() + "'");
  return it->second;
}

IntegralModel spread_out(const std::vector<VarietyPtr>& vertices,
                         const std::vector<const Morphism*>& arrows) {
  IntegralModel model;
  for (const VarietyPtr& v : vertices) {
    const GroebnerBasis& gb = v->basis();
    model.D = lcm(model.D, gb.denominatorLcm);
    std::vector<Poly> scaled;
    scaled.reserve(gb.elems.size());
    for (const Poly& g : gb.elems) scaled.push_back(g.primitive_integer_scaled());
    model.scaledGens.emplace(v.get(), std::move(scaled));
  }
  for (const Morphism* m : arrows) model.D = lcm(model.D, m->coeff_denominator_lcm());
  return model;
}

// ---------------------------------------------------------------------------
// Probe construction

namespace {

// A polynomial with coefficients pre-reduced modulo p, for fast fiber search.
struct FpPoly {
  std::vector<std::pair<Monomial, std::uint32_t>> terms;
};

FpPoly reduce_mod_p(const Poly& g, std::uint32_t p) {
  FpPoly r;
  for (const auto& [m, c] : g.terms()) {
    std::uint32_t cp = static_cast<std::uint32_t>(mod_ui(Integer(c.get_num()), p));
    if (cp != 0) r.terms.emplace_back(m, cp);
  }
  return r;
}

std::uint32_t eval_fp(const FpPoly& g, const std::vector<std::uint32_t>& a, std::uint32_t p) {
  std::uint64_t acc = 0;
  for (const auto& [m, c] : g.terms) {
    std::uint64_t t = c;
    for (std::size_t i = 0; i < m.e.size(); ++i)
      for (Exp k = 0; k < m.e[i]; ++k) t = (t * a[i]) % p;
    acc = (acc + t) % p;
  }
  return static_cast<std::uint32_t>(acc);
}

std::size_t rank_mod_p(std::vector<std::vector<std::uint32_t>> rows, std::uint32_t p) {
  std::size_t rank = 0;
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] % p == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    std::uint64_t inv = invert_mod(Integer(rows[rank][col]), p);
    for (std::size_t j = col; j < cols; ++j)
      rows[rank][j] = static_cast<std::uint32_t>((rows[rank][j] * inv) % p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][col] % p == 0) continue;
      std::uint32_t f = rows[i][col] % p;
      for (std::size_t j = col; j < cols; ++j)
        rows[i][j] = (rows[i][j] + (p - f) * rows[rank][j]) % p;
    }
    ++rank;
  }
  return rank;
}

// First point of the mod-p fiber (first coordinate fastest) whose Jacobian
// rank equals n - dim V and whose full relation matrix has the same rank.
std::optional<std::vector<std::uint32_t>> find_smooth_point(const Variety& v,
                                                            const std::vector<Poly>& gens,
                                                            std::uint32_t p) {
  const std::size_t n = v.ambient_dim();
  const std::size_t c = n - static_cast<std::size_t>(v.dimension());
  std::vector<FpPoly> gensFp;
  std::vector<std::vector<FpPoly>> jacFp;  // jacFp[i][j] = d g_i / d x_j mod p
  for (const Poly& g : gens) {
    gensFp.push_back(reduce_mod_p(g, p));
    std::vector<FpPoly> row;
    for (std::size_t j = 0; j < n; ++j) row.push_back(reduce_mod_p(g.derivative(j), p));
    jacFp.push_back(std::move(row));
  }

  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= p;
  std::vector<std::uint32_t> a(n, 0);
  for (std::uint64_t ctr = 0; ctr < total; ++ctr) {
    std::uint64_t rest = ctr;
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = static_cast<std::uint32_t>(rest % p);
      rest /= p;
    }
    bool onFiber = true;
    for (const FpPoly& g : gensFp)
      if (eval_fp(g, a, p) != 0) {
        onFiber = false;
        break;
      }
    if (!onFiber) continue;

    std::vector<std::vector<std::uint32_t>> jac, full;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      std::vector<std::uint32_t> jrow(n);
      for (std::size_t j = 0; j < n; ++j) jrow[j] = eval_fp(jacFp[i][j], a, p);
      // relation row [g(a~)/p mod p | jacobian row] over the integer lift
      std::vector<Integer> lift(n);
      for (std::size_t j = 0; j < n; ++j) lift[j] = static_cast<long>(a[j]);
      Integer gval = evaluate(gens[i], std::span<const Integer>(lift), IntegerOps{});
      Integer quot = gval / p;  // exact: the point lies on the fiber
      std::vector<std::uint32_t> mrow;
      mrow.push_back(static_cast<std::uint32_t>(mod_ui(quot, p)));
      mrow.insert(mrow.end(), jrow.begin(), jrow.end());
      full.push_back(std::move(mrow));
      jac.push_back(std::move(jrow));
    }
    if (rank_mod_p(jac, p) != c) continue;
    if (rank_mod_p(full, p) != c) continue;
    return a;
  }
  return std::nullopt;
}

// Polynomial with coefficients pre-embedded into the truncated ring.
struct TruncPoly {
  std::vector<std::pair<Monomial, TruncElem>> terms;
};

TruncPoly embed_poly(const Poly& g, const TruncRing& ring) {
  TruncPoly r;
  for (const auto& [m, c] : g.terms()) r.terms.emplace_back(m, ring.embed(c));
  return r;
}

TruncElem eval_trunc(const TruncPoly& g, const std::vector<TruncElem>& point,
                     const TruncRing& ring, std::vector<std::vector<TruncElem>>& powers) {
  for (auto& col : powers) col.clear();
  TruncElem acc = ring.zero();
  for (const auto& [m, c] : g.terms) {
    TruncElem t = c;
    for (std::size_t i = 0; i < m.e.size(); ++i) {
      if (m.e[i] == 0) continue;
      auto& col = powers[i];
      if (col.empty()) col.push_back(point[i]);
      while (col.size() < m.e[i]) col.push_back(ring.mul(col.back(), point[i]));
      t = ring.mul(t, col[m.e[i] - 1]);
    }
    acc = ring.add(acc, t);
  }
  return acc;
}

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

std::vector<std::uint64_t> LocalProbe::encode(const std::vector<TruncElem>& tuple) const {
  std::vector<std::uint64_t> key;
  key.reserve(tuple.size());
  for (const TruncElem& t : tuple) key.push_back(ring.index_of(t));
  return key;
}

LocalProbe build_probe(const VarietyPtr& v, const IntegralModel& model, std::uint32_t p,
                       const Options& opt) {
  if (mod_ui(model.D, p) == 0)
    fail(Errc::NoProbeFound, "prime " + std::to_string(p) + " divides the spread-out denominator " +
                                 integer_to_string(model.D));
  const std::vector<Poly>& gens = model.gens_for(*v);
  auto point = find_smooth_point(*v, gens, p);
  if (!point)
    fail(Errc::NoProbeFound, "no smooth mod-" + std::to_string(p) + " point on '" + v->name() + "'");

  const std::size_t n = v->ambient_dim();
  const std::size_t e = static_cast<std::size_t>(v->dimension());
  TruncRing ring(p, e);

  // total = |T|^n candidate tuples, guarded against overflow and the raw cap
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > opt.rawTupleCap / ring.size() + 1)
      fail(Errc::PointSetCapExceeded, "truncated tuple space exceeds the raw scan cap");
    total *= ring.size();
  }
  if (total > opt.rawTupleCap)
    fail(Errc::PointSetCapExceeded, "truncated tuple space exceeds the raw scan cap");

  std::vector<TruncPoly> gensT;
  for (const Poly& g : gens) gensT.push_back(embed_poly(g, ring));

  LocalProbe probe{p, *point, ring, {}, {}};
  std::vector<TruncElem> tuple(n, ring.zero());
  std::vector<std::uint64_t> digits(n, 0);
  std::vector<std::vector<TruncElem>> powers(n);
  for (std::uint64_t ctr = 0; ctr < total; ++ctr) {
    bool onModel = true;
    for (const TruncPoly& g : gensT)
      if (!ring.is_zero(eval_trunc(g, tuple, ring, powers))) {
        onModel = false;
        break;
      }
    if (onModel) {
      if (probe.points.size() >= opt.pointSetCap)
        fail(Errc::PointSetCapExceeded, "point set on '" + v->name() + "' at p = " +
                                            std::to_string(p) + " exceeds the configured cap");
      probe.index.emplace(probe.encode(tuple), static_cast<std::uint32_t>(probe.points.size()));
      probe.points.push_back(tuple);
    }
    // odometer increment, first coordinate fastest
    for (std::size_t i = 0; i < n; ++i) {
      if (++digits[i] < ring.size()) {
        tuple[i] = ring.element_at(digits[i]);
        break;
      }
      digits[i] = 0;
      tuple[i] = ring.zero();
    }
  }
  return probe;
}

ProbePair find_probe_pair(const VarietyPtr& v, const IntegralModel& model, const Options& opt) {
  std::vector<LocalProbe> found;
  for (std::uint32_t p = 2; p <= opt.primeBound && found.size() < 2; ++p) {
    if (!is_prime_u32(p)) continue;
    if (mod_ui(model.D, p) == 0) continue;
    try {
      found.push_back(build_probe(v, model, p, opt));
    } catch (const EngineError& e) {
      if (e.code() != Errc::NoProbeFound) throw;
    }
  }
  if (found.size() < 2)
    fail(Errc::NoProbeFound, "fewer than two admissible primes <= " +
                                 std::to_string(opt.primeBound) + " admit a smooth point on '" +
                                 v->name() + "'");
  return ProbePair{std::move(found[0]), std::move(found[1])};
}

// ---------------------------------------------------------------------------
// Actions and the finite-order test

std::vector<std::uint32_t> action_on_points(const Morphism& f, const LocalProbe& probe) {
  if (!f.is_endo()) fail(Errc::InputError, "action tables require an endomorphism");
  const std::size_t n = f.src()->ambient_dim();
  std::vector<TruncPoly> coords;
  for (const Poly& c : f.coords()) coords.push_back(embed_poly(c, probe.ring));
  std::vector<std::uint32_t> table(probe.points.size(), 0);
  std::vector<TruncElem> image(n, probe.ring.zero());
  std::vector<std::vector<TruncElem>> powers(n);
  for (std::size_t i = 0; i < probe.points.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j)
      image[j] = eval_trunc(coords[j], probe.points[i], probe.ring, powers);
    auto it = probe.index.find(probe.encode(image));
    if (it == probe.index.end())
      fail(Errc::ProbeInconsistency,
           "image of a model point left the enumerated point set at p = " +
               std::to_string(probe.p));
    table[i] = it->second;
  }
  return table;
}

bool table_is_identity(const std::vector<std::uint32_t>& table) {
  for (std::size_t i = 0; i < table.size(); ++i)
    if (table[i] != i) return false;
  return true;
}

bool table_is_bijective(const std::vector<std::uint32_t>& table) {
  std::vector<char> seen(table.size(), 0);
  for (std::uint32_t t : table) {
    if (seen[t]) return false;
    seen[t] = 1;
  }
  return true;
}

Integer table_order(const std::vector<std::uint32_t>& table) {
  std::vector<char> visited(table.size(), 0);
  Integer order = 1;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (visited[i]) continue;
    std::uint64_t len = 0;
    std::size_t j = i;
    while (!visited[j]) {
      visited[j] = 1;
      j = table[j];
      ++len;
    }
    order = lcm(order, Integer(static_cast<unsigned long>(len)));
  }
  return order;
}

namespace {

Morphism guarded_compose(const Morphism& f, const Morphism& g, const Options& opt) {
  Morphism r = compose(f, g);
  for (const Poly& c : r.coords())
    if (c.terms().size() > opt.maxPolyTerms)
      fail(Errc::InternalCapExceeded, "composed coordinate exceeds the term budget");
  return r;
}

// First pair of distinct points with equal images, in scan order.
std::pair<std::uint32_t, std::uint32_t> first_collision(const std::vector<std::uint32_t>& table) {
  std::vector<std::uint32_t> firstSeen(table.size(), UINT32_MAX);
  for (std::uint32_t j = 0; j < table.size(); ++j) {
    if (firstSeen[table[j]] != UINT32_MAX) return {firstSeen[table[j]], j};
    firstSeen[table[j]] = j;
  }
  fail(Errc::InternalCapExceeded, "collision requested on a bijective table");
}

}  // namespace

Morphism morphism_power(const Morphism& f, const Integer& n, const Options& opt) {
  if (!f.is_endo()) fail(Errc::InputError, "powers require an endomorphism");
  if (sgn(n) <= 0) return Morphism::identity(f.src());
  Morphism result = Morphism::identity(f.src());
  Morphism base = f;
  std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  for (std::size_t i = 0; i < bits; ++i) {
    if (mpz_tstbit(n.get_mpz_t(), i)) result = guarded_compose(result, base, opt);
    if (i + 1 < bits) base = guarded_compose(base, base, opt);
  }
  return result;
}

FiniteOrderOutcome finite_order_test(const Morphism& f, const ProbePair& probes,
                                     const Options& opt) {
  if (!f.is_endo()) fail(Errc::InputError, "finite-order test requires an endomorphism");
  if (!is_dominant(f)) fail(Errc::NotDominant, "finite-order test requires a dominant map");
  return finite_order_from_tables(f, probes, action_on_points(f, probes.first),
                                  action_on_points(f, probes.second), opt);
}

FiniteOrderOutcome finite_order_from_tables(const Morphism& f, const ProbePair& probes,
                                            const std::vector<std::uint32_t>& table1,
                                            const std::vector<std::uint32_t>& table2,
                                            const Options& opt) {
  FiniteOrderOutcome out;
  const LocalProbe* probeAt[2] = {&probes.first, &probes.second};
  const std::vector<std::uint32_t>* tables[2] = {&table1, &table2};
  for (int k = 0; k < 2; ++k) {
    if (!table_is_bijective(*tables[k])) {
      auto [i, j] = first_collision(*tables[k]);
      out.finite = false;
      out.cert.kind = OrderCertificate::Kind::NonBijectiveAction;
      out.cert.prime = probeAt[k]->p;
      out.cert.collideA = probeAt[k]->points[i];
      out.cert.collideB = probeAt[k]->points[j];
      return out;
    }
  }
  Integer n = lcm(table_order(*tables[0]), table_order(*tables[1]));
  if (mpz_cmp_ui(n.get_mpz_t(), opt.maxExponent) > 0)
    fail(Errc::InternalCapExceeded,
         "certified exponent " + integer_to_string(n) + " exceeds the configured bound");

  Morphism power = morphism_power(f, n, opt);
  if (!power.is_identity()) {
    out.finite = false;
    out.cert.kind = OrderCertificate::Kind::PowerNotIdentity;
    out.cert.exponent = n;
    out.cert.powerCoords = power.coords();
    return out;
  }

  // Exact order by prime-divisor descent.  The permutation orders at both
  // probes divide the true order, so the descent provably stops at n itself;
  // it runs anyway as a cheap internal cross-check.
  unsigned long m = mpz_get_ui(n.get_mpz_t());
  std::vector<unsigned long> primeFactors;
  unsigned long rest = m;
  for (unsigned long q = 2; q * q <= rest; ++q)
    if (rest % q == 0) {
      primeFactors.push_back(q);
      while (rest % q == 0) rest /= q;
    }
  if (rest > 1) primeFactors.push_back(rest);
  for (unsigned long q : primeFactors)
    while (m % q == 0 && morphism_power(f, Integer(m / q), opt).is_identity()) m /= q;
  out.finite = true;
  out.order = Integer(m);
  return out;
}

}  // namespace catfin
