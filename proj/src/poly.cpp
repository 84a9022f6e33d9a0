#include "catfin/poly.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace catfin {

Exp Monomial::degree() const {
  Exp d = 0;
  for (Exp x : e) d += x;
  return d;
}

bool Monomial::is_one() const {
  for (Exp x : e)
    if (x) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
  assert(e.size() == o.e.size());
  Monomial r = *this;
  for (std::size_t i = 0; i < e.size(); ++i) r.e[i] += o.e[i];
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  assert(e.size() == o.e.size());
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] > o.e[i]) return false;
  return true;
}

Monomial Monomial::quotient(const Monomial& d) const {
  assert(d.divides(*this));
  Monomial r = *this;
  for (std::size_t i = 0; i < e.size(); ++i) r.e[i] -= d.e[i];
  return r;
}

bool Monomial::coprime(const Monomial& o) const {
  assert(e.size() == o.e.size());
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] && o.e[i]) return false;
  return true;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
  assert(a.e.size() == b.e.size());
  Monomial r = a;
  for (std::size_t i = 0; i < r.e.size(); ++i) r.e[i] = std::max(r.e[i], b.e[i]);
  return r;
}

namespace {

// grevlex on the full exponent vectors: higher total degree wins; on a tie
// the monomial with the smaller exponent in the last differing variable wins.
int grevlex_compare(const std::vector<Exp>& a, const std::vector<Exp>& b) {
  Exp da = 0, db = 0;
  for (Exp x : a) da += x;
  for (Exp x : b) db += x;
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  return 0;
}

// grevlex restricted to the positions selected by mask (or its complement).
int grevlex_compare_masked(const Monomial& a, const Monomial& b,
                           const std::vector<char>& mask, bool selected) {
  Exp da = 0, db = 0;
  for (std::size_t i = 0; i < a.e.size(); ++i)
    if (static_cast<bool>(mask[i]) == selected) {
      da += a.e[i];
      db += b.e[i];
    }
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = a.e.size(); i-- > 0;)
    if (static_cast<bool>(mask[i]) == selected && a.e[i] != b.e[i])
      return a.e[i] < b.e[i] ? 1 : -1;
  return 0;
}

}  // namespace

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  assert(a.e.size() == b.e.size());
  switch (kind_) {
    case Kind::Grevlex:
      return grevlex_compare(a.e, b.e);
    case Kind::Lex:
      for (std::size_t i = 0; i < a.e.size(); ++i)
        if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
      return 0;
    case Kind::Block: {
      assert(elim_.size() == a.e.size());
      if (int c = grevlex_compare_masked(a, b, elim_, true)) return c;
      return grevlex_compare_masked(a, b, elim_, false);
    }
  }
  return 0;
}

std::string MonomialOrder::key() const {
  switch (kind_) {
    case Kind::Grevlex: return "grevlex";
    case Kind::Lex: return "lex";
    case Kind::Block: {
      std::string k = "block:";
      for (char c : elim_) k.push_back(c ? '1' : '0');
      return k;
    }
  }
  return "?";
}

Poly Poly::zero(std::size_t nvars, MonomialOrder ord) { return Poly(nvars, std::move(ord)); }

Poly Poly::constant(const Rational& c, std::size_t nvars, MonomialOrder ord) {
  Poly p(nvars, std::move(ord));
  if (c != 0) p.terms_.emplace_back(Monomial::one(nvars), c);
  return p;
}

Poly Poly::variable(std::size_t i, std::size_t nvars, MonomialOrder ord) {
  assert(i < nvars);
  Poly p(nvars, std::move(ord));
  Monomial m = Monomial::one(nvars);
  m.e[i] = 1;
  p.terms_.emplace_back(std::move(m), Rational(1));
  return p;
}

Poly Poly::term(const Rational& c, Monomial m, std::size_t nvars, MonomialOrder ord) {
  assert(m.nvars() == nvars);
  Poly p(nvars, std::move(ord));
  if (c != 0) p.terms_.emplace_back(std::move(m), c);
  return p;
}

Poly Poly::from_terms(std::vector<Term> raw, std::size_t nvars, MonomialOrder ord) {
  Poly p(nvars, std::move(ord));
  p.sort_and_squash(std::move(raw));
  return p;
}

void Poly::sort_and_squash(std::vector<Term> raw) {
  std::sort(raw.begin(), raw.end(), [this](const Term& a, const Term& b) {
    return order_.compare(a.first, b.first) > 0;
  });
  terms_.clear();
  for (auto& t : raw) {
    if (!terms_.empty() && terms_.back().first == t.first)
      terms_.back().second += t.second;
    else
      terms_.push_back(std::move(t));
    if (!terms_.empty() && terms_.back().second == 0) terms_.pop_back();
  }
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one());
}

bool Poly::is_one() const {
  return terms_.size() == 1 && terms_[0].first.is_one() && terms_[0].second == 1;
}

Exp Poly::degree() const {
  Exp d = 0;
  for (const auto& t : terms_) d = std::max(d, t.first.degree());
  return d;
}

const Poly::Term& Poly::leading() const {
  if (terms_.empty()) fail(Errc::InputError, "leading term of zero polynomial");
  return terms_.front();
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  assert(nvars_ == o.nvars_ && order_ == o.order_);
  Poly r(nvars_, order_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    int c = order_.compare(terms_[i].first, o.terms_[j].first);
    if (c > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (c < 0) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      Rational s = terms_[i].second + o.terms_[j].second;
      if (s != 0) r.terms_.emplace_back(terms_[i].first, std::move(s));
      ++i, ++j;
    }
  }
  while (i < terms_.size()) r.terms_.push_back(terms_[i++]);
  while (j < o.terms_.size()) r.terms_.push_back(o.terms_[j++]);
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  assert(nvars_ == o.nvars_ && order_ == o.order_);
  std::vector<Term> raw;
  raw.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_)
      raw.emplace_back(a.first * b.first, a.second * b.second);
  Poly r(nvars_, order_);
  r.sort_and_squash(std::move(raw));
  return r;
}

Poly Poly::scaled(const Rational& c) const {
  if (c == 0) return Poly::zero(nvars_, order_);
  Poly r = *this;
  for (auto& t : r.terms_) t.second *= c;
  return r;
}

Poly Poly::fma_subtract(const Rational& c, const Monomial& m, const Poly& g) const {
  // this - c*m*g; shifting g by m preserves descending order.
  assert(nvars_ == g.nvars_ && order_ == g.order_);
  Poly shifted(nvars_, order_);
  shifted.terms_.reserve(g.terms_.size());
  for (const auto& t : g.terms_)
    shifted.terms_.emplace_back(t.first * m, -(t.second * c));
  return *this + shifted;
}

bool Poly::operator==(const Poly& o) const {
  if (nvars_ != o.nvars_ || terms_.size() != o.terms_.size()) return false;
  if (order_ == o.order_) return terms_ == o.terms_;
  // Different active orders: compare as term sets.
  Poly a = reordered(MonomialOrder::lex());
  Poly b = o.reordered(MonomialOrder::lex());
  return a.terms_ == b.terms_;
}

Poly Poly::reordered(const MonomialOrder& ord) const {
  Poly r(nvars_, ord);
  r.sort_and_squash(terms_);
  return r;
}

Poly Poly::remap_variables(const std::vector<std::size_t>& varMap, std::size_t newNvars,
                           const MonomialOrder& ord) const {
  assert(varMap.size() == nvars_);
  std::vector<Term> raw;
  raw.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m = Monomial::one(newNvars);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (t.first.e[i] == 0) continue;
      assert(varMap[i] < newNvars);
      m.e[varMap[i]] += t.first.e[i];
    }
    raw.emplace_back(std::move(m), t.second);
  }
  Poly r(newNvars, ord);
  r.sort_and_squash(std::move(raw));
  return r;
}

Poly Poly::derivative(std::size_t var) const {
  assert(var < nvars_);
  std::vector<Term> raw;
  for (const auto& t : terms_) {
    if (t.first.e[var] == 0) continue;
    Monomial m = t.first;
    Rational c = t.second * static_cast<unsigned long>(m.e[var]);
    m.e[var] -= 1;
    raw.emplace_back(std::move(m), std::move(c));
  }
  Poly r(nvars_, order_);
  r.sort_and_squash(std::move(raw));
  return r;
}

Integer Poly::denominator_lcm() const {
  Integer acc(1);
  for (const auto& t : terms_) acc = lcm(acc, Integer(t.second.get_den()));
  return acc;
}

Poly Poly::primitive_integer_scaled() const {
  if (is_zero()) fail(Errc::InputError, "primitive scaling of zero polynomial");
  Integer den = denominator_lcm();
  Integer content(0);
  for (const auto& t : terms_) {
    Integer num = t.second.get_num() * den / t.second.get_den();
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), num.get_mpz_t());
  }
  Rational scale(den, content);
  scale.canonicalize();
  if (leading().second < 0) scale = -scale;
  return scaled(scale);
}

Integer IntegerOps::embed(const Rational& q) const {
  if (q.get_den() != 1)
    fail(Errc::InputError, "integer evaluation of non-integer coefficient");
  return q.get_num();
}

Poly substitute(const Poly& f, std::span<const Poly> images) {
  if (images.size() != f.nvars())
    fail(Errc::InputError, "substitute: image count does not match variable count");
  if (images.empty()) fail(Errc::InputError, "substitute: empty image tuple");
  PolyOps ops{images[0].nvars(), images[0].order()};
  return evaluate(f, images, ops);
}

std::string poly_to_string(const Poly& p, const std::vector<std::string>& varNames) {
  assert(varNames.size() == p.nvars());
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [mono, coeff] : p.terms()) {
    Rational mag = coeff < 0 ? Rational(-coeff) : coeff;
    if (first) {
      if (coeff < 0) out << "-";
      first = false;
    } else {
      out << (coeff < 0 ? " - " : " + ");
    }
    std::string monoText;
    for (std::size_t i = 0; i < mono.e.size(); ++i) {
      if (mono.e[i] == 0) continue;
      if (!monoText.empty()) monoText += "*";
      monoText += varNames[i];
      if (mono.e[i] > 1) monoText += "^" + std::to_string(mono.e[i]);
    }
    if (monoText.empty()) {
      out << rational_to_string(mag);
    } else {
      if (mag != 1) out << rational_to_string(mag) << "*";
      out << monoText;
    }
  }
  return out.str();
}

}  // namespace catfin
