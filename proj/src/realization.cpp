#include "k3/realization.hpp"

#include <algorithm>

#include "k3/errors.hpp"

namespace k3 {

namespace {

constexpr int kH2Size = 22;  // sigma, sigmabar, g1..g20

int h2_slot(int basis_id) { return basis_id - kSigma; }
int h2_basis(int slot) { return slot + kSigma; }

CohClass apply_phi(const RealizationModel& m, const CohClass& deg2) {
  if (!m.phi) return deg2;
  CohClass out;
  for (const auto& [id, c] : deg2.coeffs()) {
    int s = h2_slot(id);
    for (int t = 0; t < kH2Size; ++t) {
      const Rat& e = (*m.phi)[t][s];
      if (e != 0) out.set(h2_basis(t), out.coeff(h2_basis(t)) + e * c);
    }
  }
  return out;
}

// one <-> point flip weighted by the rank, phi on the degree-2 block
CohClass model_isometry(const RealizationModel& m, const CohClass& x) {
  CohClass out = apply_phi(m, x.degree_part(2));
  Rat r0 = x.coeff(kOne);
  Rat r4 = x.coeff(kPoint);
  if (r0 != 0) out.set(kPoint, out.coeff(kPoint) + r0 / m.rank);
  if (r4 != 0) out.set(kOne, out.coeff(kOne) + r4 * m.rank);
  return out;
}

}  // namespace

void validate_model(const DescendentContext& c, const RealizationModel& m) {
  if (m.rank == 0) throw ZeroRank("realization model needs a nonzero rank");
  if (!m.twist.supported_in({2})) throw Error("model twist must be purely degree 2");
  if (!m.phi) return;
  const auto& p = *m.phi;
  if (p.size() != kH2Size) throw Error("phi must be 22x22");
  for (const auto& row : p)
    if (row.size() != kH2Size) throw Error("phi must be 22x22");
  // phi is an isometry of the degree-2 pairing: P^T Q P = Q.
  for (int i = 0; i < kH2Size; ++i) {
    for (int j = 0; j < kH2Size; ++j) {
      Rat want = c.basis.pairing(h2_basis(i), h2_basis(j));
      Rat got = 0;
      for (int a = 0; a < kH2Size; ++a)
        for (int b = 0; b < kH2Size; ++b)
          got += p[a][i] * c.basis.pairing(h2_basis(a), h2_basis(b)) * p[b][j];
      if (got != want) throw Error("phi does not preserve the degree-2 pairing");
    }
  }
}

CohClass realize_generator(const DescendentContext& c, Generator g, const RealizationModel& m) {
  const auto& b = basis_element(g.basis);
  CohClass x = cup(c.basis, CohClass::basis(g.basis), ToddData::inv_sqrt_td());
  x = model_isometry(m, x);
  x = cup(c.basis, ToddData::inv_sqrt_td(), x);
  if (!m.twist.is_zero()) x = cup(c.basis, exp_h2(c.basis, m.twist), x);
  int degree = 2 * g.index - b.p + b.q;
  if (degree < 0 || degree > 4) return {};
  return x.degree_part(degree);
}

CohClass realize_poly(const DescendentContext& c, const DescendentPoly& p,
                      const RealizationModel& m) {
  CohClass out;
  for (const auto& [mon, coeff] : p.terms()) {
    CohClass acc = CohClass::unit();
    for (const auto& g : mon.gens()) {
      acc = cup(c.basis, acc, realize_generator(c, g, m));
      if (acc.is_zero()) break;
    }
    acc *= coeff;
    out += acc;
  }
  return out;
}

Rat integrate_model(const DescendentContext& c, const DescendentPoly& p,
                    const RealizationModel& m) {
  return integrate(realize_poly(c, p, m));
}

RealizationModel twist_model(const RealizationModel& m, const CohClass& t) {
  RealizationModel out = m;
  out.twist = t;
  return out;
}

// -- signatures -----------------------------------------------------------------

std::vector<MukaiVector> reduce_generator(const DescendentContext& c, const Slot& slot,
                                          const MukaiVector& v) {
  Rat r = v.rk();
  if (r == 0) throw DegenerateVector("reduce_generator: rk(v) = 0");
  if (mukai_pairing(c.basis, v, v) == 0) throw DegenerateVector("reduce_generator: (v,v) = 0");
  CohClass e = exp_h2(c.basis, Rat(1) / r * v.c1());
  CohClass point_over_r = CohClass::basis(kPoint, Rat(1) / r);
  CohClass lead;
  switch (slot.kind) {
    case SlotKind::H2:
      lead = cup(c.basis, slot.h2, e);
      break;
    case SlotKind::Point:
      lead = CohClass::basis(kPoint);
      break;
    case SlotKind::OnePlusPoint:
      lead = e;
      break;
    case SlotKind::One:
      lead = cup(c.basis, e, ToddData::inv_sqrt_td());
      break;
  }
  return {MukaiVector(lead), MukaiVector(point_over_r), v};
}

namespace {

std::string slot_token(const Slot& s) {
  switch (s.kind) {
    case SlotKind::H2:
      return "ch[" + std::to_string(s.index) + "](L:" + s.h2.to_string() + ")";
    case SlotKind::Point:
      return "ch[" + std::to_string(s.index) + "](point)";
    case SlotKind::OnePlusPoint:
      return "ch[" + std::to_string(s.index) + "](one+point)";
    case SlotKind::One:
      return "ch[" + std::to_string(s.index) + "](one)";
  }
  return "?";
}

}  // namespace

IntegralSpec build_spec(const DescendentContext& c, const std::vector<Slot>& slots,
                        const MukaiVector& v) {
  IntegralSpec spec;
  Rat r = v.rk();
  if (r == 0) throw DegenerateVector("build_spec: rk(v) = 0");
  spec.classes.push_back(v);
  spec.classes.emplace_back(CohClass::basis(kPoint, Rat(1) / r));
  std::vector<std::string> tokens;
  for (const auto& s : slots) {
    spec.classes.push_back(reduce_generator(c, s, v)[0]);
    tokens.push_back(slot_token(s));
  }
  std::sort(tokens.begin(), tokens.end());
  for (const auto& t : tokens) {
    if (!spec.shape.empty()) spec.shape += " * ";
    spec.shape += t;
  }
  return spec;
}

GramSignature gram_signature(const DescendentContext& c, const IntegralSpec& spec) {
  GramSignature g;
  size_t n = spec.classes.size();
  g.entries.assign(n, std::vector<Rat>(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j) {
      g.entries[i][j] = mukai_pairing(c.basis, spec.classes[i], spec.classes[j]);
      g.entries[j][i] = g.entries[i][j];
    }
  return g;
}

EquivalenceResult equivalent_specs(const DescendentContext& c, const IntegralSpec& a,
                                   const IntegralSpec& b) {
  if (a.shape != b.shape)
    throw ShapeMismatch("specs have different polynomial shapes: '" + a.shape + "' vs '" +
                        b.shape + "'");
  if (a.classes.size() != b.classes.size())
    throw ShapeMismatch("specs have different class-list lengths");
  GramSignature ga = gram_signature(c, a);
  GramSignature gb = gram_signature(c, b);
  for (size_t i = 0; i < ga.entries.size(); ++i)
    for (size_t j = 0; j < ga.entries.size(); ++j)
      if (ga.entries[i][j] != gb.entries[i][j]) {
        EquivalenceResult r;
        r.equivalent = false;
        r.mismatch = "pairing of classes (" + std::to_string(i) + ", " + std::to_string(j) +
                     ") differs: " + rat_to_string(ga.entries[i][j]) + " vs " +
                     rat_to_string(gb.entries[i][j]);
        return r;
      }
  return {true, ""};
}

std::pair<IntegralSpec, IntegralSpec> hilb_comparison_specs(const DescendentContext& c,
                                                            const Rat& r, const CohClass& d,
                                                            const Rat& n) {
  if (r == 0) throw DegenerateVector("hilb_comparison_specs: rk(v) = 0");
  MukaiVector v(r, d, n);
  Rat vv = mukai_pairing(c.basis, v, v);
  if (vv == 0) throw DegenerateVector("hilb_comparison_specs: (v,v) = 0");
  Rat cap_n = vv / 2 + 1;  // 2N - 2 = (v,v)
  if (denominator(cap_n) != 1)
    throw InvalidMukaiData("hilb_comparison_specs: (v,v) must be even");
  CohClass e = exp_h2(c.basis, Rat(1) / r * d);

  IntegralSpec lhs, rhs;
  lhs.shape = rhs.shape = "hilb-comparison";
  lhs.classes.push_back(v);
  rhs.classes.emplace_back(CohClass::unit() - CohClass::basis(kPoint, cap_n - 1));
  for (int i = kSigma; i <= kPoint - 1; ++i) {
    lhs.classes.emplace_back(cup(c.basis, CohClass::basis(i), e));
    rhs.classes.emplace_back(CohClass::basis(i));
  }
  lhs.classes.emplace_back(e);
  rhs.classes.emplace_back(CohClass::basis(kOne, Rat(1) / r));
  lhs.classes.emplace_back(CohClass::basis(kPoint));
  rhs.classes.emplace_back(CohClass::basis(kPoint, r));
  lhs.classes.emplace_back(CohClass::basis(kPoint, Rat(1) / r));
  rhs.classes.emplace_back(CohClass::basis(kPoint));
  return {lhs, rhs};
}

std::pair<IntegralSpec, IntegralSpec> rank_zero_specs(const DescendentContext&, const Rat& n,
                                                      const CohClass& d) {
  IntegralSpec lhs, rhs;
  lhs.shape = rhs.shape = "rank-zero-swap";
  lhs.classes.emplace_back(MukaiVector(n, d, 0));
  rhs.classes.emplace_back(MukaiVector(0, d, n));
  lhs.classes.emplace_back(CohClass::basis(kPoint));
  rhs.classes.emplace_back(CohClass::unit());
  lhs.classes.emplace_back(CohClass::unit());
  rhs.classes.emplace_back(CohClass::basis(kPoint));
  for (int i = kSigma; i <= kPoint - 1; ++i) {
    lhs.classes.emplace_back(CohClass::basis(i));
    rhs.classes.emplace_back(CohClass::basis(i));
  }
  return {lhs, rhs};
}

DescendentPoly hilb_reduction_map(const DescendentContext&, const DescendentPoly& p,
                                  const Rat& r) {
  if (r == 0) throw ZeroRank("hilb_reduction_map: rank must be nonzero");
  AlgebraMap m("hilb-reduction", [r](Generator g) -> DescendentPoly {
    if (g.basis == kPoint) return r * DescendentPoly::generator(g.index, kPoint);
    if (g.basis == kOne) {
      // rewrite through one = (one + point) - point, then rescale the slots
      DescendentPoly out = (Rat(1) / r) * (DescendentPoly::generator(g.index, kOne) +
                                           DescendentPoly::generator(g.index, kPoint));
      out += (-r) * DescendentPoly::generator(g.index, kPoint);
      return out;
    }
    return DescendentPoly::generator(g.index, g.basis);
  });
  return m.apply(p);
}

}  // namespace k3
