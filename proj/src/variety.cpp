#include "catfin/variety.hpp"

#include <utility>

#include "catfin/error.hpp"

namespace catfin {

Variety::Variety(std::string name, std::vector<std::string> vars, Ideal ideal)
    : name_(std::move(name)), vars_(std::move(vars)), ideal_(std::move(ideal)), dim_(0) {
  if (ideal_.nvars() != vars_.size())
    fail(Errc::InputError, "variety '" + name_ + "': ideal arity does not match variable list");
  if (!ideal_.is_proper())
    fail(Errc::ImproperIdeal, "variety '" + name_ + "': defining ideal contains 1");
  dim_ = ideal_.dimension();
}

Morphism::Morphism(VarietyPtr src, VarietyPtr dst, std::vector<Poly> coords)
    : src_(std::move(src)), dst_(std::move(dst)), coords_(std::move(coords)) {
  if (!src_ || !dst_) fail(Errc::InputError, "morphism endpoints must be present");
  if (coords_.size() != dst_->ambient_dim())
    fail(Errc::InputError, "morphism into '" + dst_->name() + "' needs " +
                               std::to_string(dst_->ambient_dim()) + " coordinates, got " +
                               std::to_string(coords_.size()));
  const auto& srcBasis = src_->basis().elems;
  for (Poly& c : coords_) {
    if (c.nvars() != src_->ambient_dim())
      fail(Errc::InputError, "morphism coordinate arity does not match source '" +
                                 src_->name() + "'");
    c = normal_form(c, srcBasis);
  }
  for (const Poly& g : dst_->ideal().gens()) {
    Poly pulled = substitute(g, coords_);
    if (!normal_form(pulled, srcBasis).is_zero())
      fail(Errc::NotWellDefined, "coordinates do not map '" + src_->name() + "' into '" +
                                     dst_->name() + "': generator " +
                                     poly_to_string(g, dst_->vars()) + " does not vanish");
  }
}

Morphism Morphism::identity(const VarietyPtr& v) {
  std::vector<Poly> coords;
  coords.reserve(v->ambient_dim());
  for (std::size_t i = 0; i < v->ambient_dim(); ++i)
    coords.push_back(Poly::variable(i, v->ambient_dim()));
  return Morphism(v, v, std::move(coords));
}

bool Morphism::is_identity() const {
  if (src_ != dst_) return false;
  const auto& srcBasis = src_->basis().elems;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    Poly var = Poly::variable(i, src_->ambient_dim());
    if (coords_[i] != normal_form(var, srcBasis)) return false;
  }
  return true;
}

std::string Morphism::coord_key() const {
  std::string key;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i > 0) key += "; ";
    key += poly_to_string(coords_[i], src_->vars());
  }
  return key;
}

Integer Morphism::coeff_denominator_lcm() const {
  Integer d = 1;
  for (const Poly& c : coords_) d = lcm(d, c.denominator_lcm());
  return d;
}

Morphism compose(const Morphism& f, const Morphism& g) {
  if (f.src() != g.dst())
    fail(Errc::SourceTargetMismatch, "cannot compose: source '" + f.src()->name() +
                                         "' differs from target '" + g.dst()->name() + "'");
  std::vector<Poly> coords;
  coords.reserve(f.coords().size());
  for (const Poly& c : f.coords()) coords.push_back(substitute(c, g.coords()));
  return Morphism(g.src(), f.dst(), std::move(coords));
}

Ideal image_ideal(const Morphism& f) {
  const std::size_t ns = f.src()->ambient_dim();
  const std::size_t nd = f.dst()->ambient_dim();
  const std::size_t big = ns + nd;
  std::vector<std::size_t> srcMap(ns), dstMap(nd);
  for (std::size_t i = 0; i < ns; ++i) srcMap[i] = i;
  for (std::size_t j = 0; j < nd; ++j) dstMap[j] = ns + j;
  std::vector<Poly> gens;
  for (const Poly& g : f.src()->ideal().gens())
    gens.push_back(g.remap_variables(srcMap, big, MonomialOrder::grevlex()));
  for (std::size_t j = 0; j < nd; ++j) {
    Poly graph = Poly::variable(ns + j, big) -
                 f.coords()[j].remap_variables(srcMap, big, MonomialOrder::grevlex());
    gens.push_back(std::move(graph));
  }
  std::vector<char> eliminate(big, 0);
  for (std::size_t i = 0; i < ns; ++i) eliminate[i] = 1;
  return elimination_ideal(Ideal(big, std::move(gens)), eliminate);
}

bool is_dominant(const Morphism& f) {
  Ideal img = image_ideal(f);
  for (const Poly& g : img.gens())
    if (!f.dst()->ideal().contains(g)) return false;
  return true;
}

VarietyPtr image_closure(const Morphism& f, std::string name) {
  return std::make_shared<Variety>(std::move(name), f.dst()->vars(), image_ideal(f));
}

Morphism restrict_to(const Morphism& f, VarietyPtr zsrc, VarietyPtr zdst) {
  if (zsrc->ambient_dim() != f.src()->ambient_dim())
    fail(Errc::InputError, "restriction source ambient does not match");
  if (zdst->ambient_dim() != f.dst()->ambient_dim())
    fail(Errc::InputError, "restriction target ambient does not match");
  return Morphism(std::move(zsrc), std::move(zdst), f.coords());
}

}  // namespace catfin
