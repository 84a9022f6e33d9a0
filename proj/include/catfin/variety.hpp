// catfin: affine varieties over the rationals and polynomial morphisms
// between them, in canonical form.
//
// A Variety is an ambient variable list plus a proper defining ideal; it is
// assumed irreducible (asserted by the caller, never verified — only
// properness is checked).  A Morphism stores one coordinate polynomial per
// target variable, each reduced to its normal form modulo the source ideal's
// grevlex basis, so structural equality of coordinates is semantic equality
// of morphisms between fixed endpoints.  Vertex identity is pointer identity:
// the same shared Variety object must be used for both endpoints of
// composable arrows.
#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "catfin/groebner.hpp"
#include "catfin/poly.hpp"
#include "catfin/rational.hpp"

namespace catfin {

class Variety {
 public:
  // Throws ImproperIdeal if 1 lies in the ideal.  Computes and caches the
  // dimension (which forces the grevlex basis).
  Variety(std::string name, std::vector<std::string> vars, Ideal ideal);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t ambient_dim() const { return vars_.size(); }
  const Ideal& ideal() const { return ideal_; }
  int dimension() const { return dim_; }
  // Reduced grevlex basis of the defining ideal.
  const GroebnerBasis& basis() const { return ideal_.groebner(MonomialOrder::grevlex()); }

 private:
  std::string name_;
  std::vector<std::string> vars_;
  Ideal ideal_;
  int dim_;
};

using VarietyPtr = std::shared_ptr<const Variety>;

class Morphism {
 public:
  // Canonicalizes the coordinates (normal form modulo the source basis) and
  // verifies well-definedness: every target ideal generator, composed with
  // the coordinates, must reduce to zero modulo the source ideal.  Throws
  // NotWellDefined otherwise; InputError on arity mismatches.
  Morphism(VarietyPtr src, VarietyPtr dst, std::vector<Poly> coords);

  static Morphism identity(const VarietyPtr& v);

  const VarietyPtr& src() const { return src_; }
  const VarietyPtr& dst() const { return dst_; }
  const std::vector<Poly>& coords() const { return coords_; }
  bool is_endo() const { return src_ == dst_; }
  bool is_identity() const;

  // Canonical rendering of the coordinate tuple in source variables,
  // e.g. "-x; x^2 - y".  Equal keys + equal endpoints = equal morphisms;
  // used for deduplication and document output.
  std::string coord_key() const;

  // lcm of all coefficient denominators across the coordinates.
  Integer coeff_denominator_lcm() const;

 private:
  VarietyPtr src_;
  VarietyPtr dst_;
  std::vector<Poly> coords_;
};

// f after g (source of f = target of g as shared vertices); throws
// SourceTargetMismatch otherwise.
Morphism compose(const Morphism& f, const Morphism& g);

// The ideal of the Zariski closure of the image, as an ideal in the target
// ambient variables (graph-ideal elimination of the source block).
Ideal image_ideal(const Morphism& f);

// True iff the image is Zariski-dense in the target: every generator of the
// image-closure ideal already lies in the target ideal.
bool is_dominant(const Morphism& f);

// The image closure as a fresh variety in the target ambient.
VarietyPtr image_closure(const Morphism& f, std::string name);

// f with source replaced by zsrc and target replaced by zdst (both living in
// the original ambients); coordinates are re-reduced modulo zsrc's ideal and
// well-definedness into zdst is checked (NotWellDefined on failure).
Morphism restrict_to(const Morphism& f, VarietyPtr zsrc, VarietyPtr zdst);

}  // namespace catfin
