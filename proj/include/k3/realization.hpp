#pragma once

#include <optional>
#include <string>
#include <vector>

#include "k3/operators.hpp"

namespace k3 {

// -- closed-form evaluation on a 2-dimensional moduli model ---------------------
//
// The model target is the same 24-dimensional ring.  A generator ch[i](γ) with
// γ of type (p, q) realizes to the real-degree (2i - p + q) part of
//     e^{twist} · (1 - point) · Φ(γ · (1 - point)),
// where Φ flips one <-> point with weight rank and acts on the degree-2 block
// through the isometry phi (identity by default).

/// 22x22 matrix over the degree-2 block (sigma, sigmabar, g1..g20).
using H2Matrix = std::vector<std::vector<Rat>>;

struct RealizationModel {
  Rat rank = 1;                  // nonzero
  CohClass twist;                // degree-2 class on the target
  std::optional<H2Matrix> phi;   // identity when absent

  RealizationModel() = default;
  explicit RealizationModel(Rat r) : rank(std::move(r)) {}
};

/// Throws Error unless rank != 0 and phi (when present) preserves the
/// configured degree-2 pairing.
void validate_model(const DescendentContext& c, const RealizationModel& m);

CohClass realize_generator(const DescendentContext& c, Generator g, const RealizationModel& m);
/// Multiplicative extension (the realization is an algebra homomorphism).
CohClass realize_poly(const DescendentContext& c, const DescendentPoly& p,
                      const RealizationModel& m);
Rat integrate_model(const DescendentContext& c, const DescendentPoly& p,
                    const RealizationModel& m);

/// Same model with the twist replaced by t (models tensoring the universal
/// object by a line bundle with first Chern class t).
RealizationModel twist_model(const RealizationModel& m, const CohClass& t);

// -- Gram-matrix signatures of descendent integrals ------------------------------
//
// Integrals over a moduli space of the modeled kind depend only on the
// polynomial shape and the pairwise Mukai pairings of a derived class list.
// The reducer extracts that list; two integrals with the same shape and equal
// Gram matrices are equal.

enum class SlotKind { H2, Point, OnePlusPoint, One };

struct Slot {
  SlotKind kind = SlotKind::Point;
  int index = 0;   // the generator index of the slot
  CohClass h2;     // the class for SlotKind::H2
};

struct IntegralSpec {
  std::string shape;                 // canonical shape token
  std::vector<MukaiVector> classes;  // v first, then point/rank, then one per slot
};

struct GramSignature {
  std::vector<std::vector<Rat>> entries;  // symmetric
  friend bool operator==(const GramSignature&, const GramSignature&) = default;
};

/// The classes contributed by one slot given the moduli vector v:
///   H2 slot L:        { L·e^{c1(v)/r},  point/r,  v }
///   Point slot:       { point,          point/r,  v }
///   OnePlusPoint:     { e^{c1(v)/r},    point/r,  v }
///   One slot:         { e^{c1(v)/r}·(1-point), point/r, v }
/// Requires rk(v) > 0 and (v,v) != 0; throws DegenerateVector otherwise.
std::vector<MukaiVector> reduce_generator(const DescendentContext& c, const Slot& slot,
                                          const MukaiVector& v);

/// Assembles the full spec for a product of slots.
IntegralSpec build_spec(const DescendentContext& c, const std::vector<Slot>& slots,
                        const MukaiVector& v);

GramSignature gram_signature(const DescendentContext& c, const IntegralSpec& spec);

struct EquivalenceResult {
  bool equivalent = false;
  std::string mismatch;  // empty when equivalent
};

/// Entrywise Gram comparison; throws ShapeMismatch when shapes differ.
EquivalenceResult equivalent_specs(const DescendentContext& c, const IntegralSpec& a,
                                   const IntegralSpec& b);

/// The two aligned class lists whose Gram equality reduces a rank-r integral
/// to a rank-one integral: {v, L_i·e, e, point, point/r} against
/// {v', L_i, one/r, r·point, point} with v' = one - (N-1)·point and
/// 2N - 2 = D^2 - 2rn.  Throws InvalidMukaiData when N is not an integer and
/// DegenerateVector when r = 0 or (v,v) = 0.
std::pair<IntegralSpec, IntegralSpec> hilb_comparison_specs(const DescendentContext& c,
                                                            const Rat& r, const CohClass& d,
                                                            const Rat& n);

/// Rank-zero swap lists: {v, point, one, L_i} for v = (n, d, 0) against
/// {v', one, point, L_i} for v' = (0, d, n), L_i running over the degree-2
/// basis.
std::pair<IntegralSpec, IntegralSpec> rank_zero_specs(const DescendentContext& c, const Rat& n,
                                                      const CohClass& d);

/// Substitution transform behind the rank-r -> rank-one reduction:
/// ch_i(point) -> r·ch_i(point), ch_i(one) -> (1/r)·ch_i(one+point) - r·ch_i(point),
/// degree-2 slots unchanged.  Multiplies every monomial by r^{N_p}.
DescendentPoly hilb_reduction_map(const DescendentContext& c, const DescendentPoly& p,
                                  const Rat& r);

}  // namespace k3
