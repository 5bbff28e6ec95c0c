#include "k3/operators.hpp"

#include <algorithm>

#include "k3/errors.hpp"
#include "k3/rng.hpp"

namespace k3 {

DescendentContext DescendentContext::make(HodgeBasis h) {
  DescendentContext c{std::move(h), {}, {}};
  c.diagonal = kunneth(c.basis, KunnethKind::Diagonal);
  c.diagonal_todd = kunneth(c.basis, KunnethKind::DiagonalTodd);
  return c;
}

// -- node -------------------------------------------------------------------

struct LinearOperator::Node {
  Kind kind = Kind::Zero;
  std::string name;
  Rat scalar;                                           // Scalar
  DescendentPoly poly;                                  // Multiply, Sandwich multiplier
  std::function<DescendentPoly(Generator)> action;      // Derivation
  std::function<DescendentPoly(const Monomial&)> rule;  // Custom
  AlgebraMap map;                                       // Morphism
  std::shared_ptr<const Node> inner;                    // Sandwich derivation
  std::vector<LinearOperator> parts;                    // Compose
  std::vector<std::pair<Rat, LinearOperator>> terms;    // Sum
  int up_shift = 0;
};

namespace {

using Node = LinearOperator::Node;

DescendentPoly apply_derivation(const Node& n, const Monomial& m) {
  DescendentPoly out;
  const auto& gens = m.gens();
  for (size_t i = 0; i < gens.size(); ++i) {
    if (i > 0 && gens[i] == gens[i - 1]) {
      // same slot as previous: fold multiplicity by scaling once below
      continue;
    }
    size_t mult = 1;
    while (i + mult < gens.size() && gens[i + mult] == gens[i]) ++mult;
    DescendentPoly img = n.action(gens[i]);
    if (img.is_zero()) continue;
    Monomial rest = m.without_slot(i);
    for (const auto& [mi, ci] : img.terms())
      out.add_term(rest.times(mi), ci * Rat(static_cast<long long>(mult)));
  }
  return out;
}

}  // namespace

LinearOperator LinearOperator::zero() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Zero;
  n->name = "0";
  return LinearOperator(std::move(n));
}

LinearOperator LinearOperator::identity() { return scalar(1); }

LinearOperator LinearOperator::scalar(Rat c) {
  if (c == 0) return zero();
  auto n = std::make_shared<Node>();
  n->kind = Kind::Scalar;
  n->scalar = std::move(c);
  n->name = rat_to_string(n->scalar) + "*Id";
  return LinearOperator(std::move(n));
}

LinearOperator LinearOperator::multiply(DescendentPoly p) {
  if (p.is_zero()) return zero();
  auto n = std::make_shared<Node>();
  n->kind = Kind::Multiply;
  n->poly = std::move(p);
  n->name = "mult";
  return LinearOperator(std::move(n));
}

LinearOperator LinearOperator::derivation(std::string name,
                                          std::function<DescendentPoly(Generator)> action,
                                          int up_shift) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Derivation;
  n->name = std::move(name);
  n->action = std::move(action);
  n->up_shift = up_shift;
  return LinearOperator(std::move(n));
}

LinearOperator LinearOperator::sandwich(LinearOperator deriv, DescendentPoly mult) {
  if (deriv.kind() != Kind::Derivation) throw Error("sandwich needs a derivation");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sandwich;
  n->name = deriv.name() + "∘mult";
  n->inner = deriv.node_;
  n->poly = std::move(mult);
  n->up_shift = deriv.up_shift();
  return LinearOperator(std::move(n));
}

LinearOperator LinearOperator::morphism(AlgebraMap m) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Morphism;
  n->name = m.name();
  n->map = std::move(m);
  return LinearOperator(std::move(n));
}

LinearOperator LinearOperator::custom(std::string name,
                                      std::function<DescendentPoly(const Monomial&)> fn,
                                      int up_shift) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Custom;
  n->name = std::move(name);
  n->rule = std::move(fn);
  n->up_shift = up_shift;
  return LinearOperator(std::move(n));
}

LinearOperator LinearOperator::compose(std::vector<LinearOperator> parts) {
  std::vector<LinearOperator> flat;
  for (auto& p : parts) {
    if (p.kind() == Kind::Zero) return zero();
    if (p.kind() == Kind::Compose) {
      for (const auto& q : p.node_->parts) flat.push_back(q);
    } else {
      flat.push_back(std::move(p));
    }
  }
  if (flat.empty()) return identity();
  if (flat.size() == 1) return flat[0];
  auto n = std::make_shared<Node>();
  n->kind = Kind::Compose;
  int shift = 0;
  std::string name;
  for (const auto& p : flat) {
    shift += p.up_shift();
    if (!name.empty()) name += "∘";
    name += p.name();
  }
  n->up_shift = shift;
  n->name = name;
  n->parts = std::move(flat);
  return LinearOperator(std::move(n));
}

LinearOperator LinearOperator::sum(std::vector<std::pair<Rat, LinearOperator>> parts) {
  // Flatten nested sums and merge multiplication / scalar leaves: these merges
  // are plain linearity of the operator algebra.
  DescendentPoly merged_poly;
  Rat merged_scalar = 0;
  std::vector<std::pair<Rat, LinearOperator>> rest;
  std::function<void(const Rat&, const LinearOperator&)> absorb =
      [&](const Rat& w, const LinearOperator& op) {
        if (w == 0) return;
        switch (op.kind()) {
          case Kind::Zero:
            return;
          case Kind::Scalar:
            merged_scalar += w * op.node_->scalar;
            return;
          case Kind::Multiply: {
            DescendentPoly p = op.node_->poly;
            p *= w;
            merged_poly += p;
            return;
          }
          case Kind::Sum:
            for (const auto& [wi, opi] : op.node_->terms) absorb(w * wi, opi);
            return;
          default:
            rest.emplace_back(w, op);
        }
      };
  for (const auto& [w, op] : parts) absorb(w, op);
  if (merged_scalar != 0) {
    merged_poly += DescendentPoly::constant(merged_scalar);
  }
  if (!merged_poly.is_zero()) rest.emplace_back(1, multiply(std::move(merged_poly)));
  if (rest.empty()) return zero();
  if (rest.size() == 1 && rest[0].first == 1) return rest[0].second;
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sum;
  int shift = 0;
  for (const auto& [w, op] : rest) shift = std::max(shift, op.up_shift());
  n->up_shift = shift;
  n->name = "sum";
  n->terms = std::move(rest);
  return LinearOperator(std::move(n));
}

LinearOperator LinearOperator::sum(std::vector<LinearOperator> parts) {
  std::vector<std::pair<Rat, LinearOperator>> w;
  w.reserve(parts.size());
  for (auto& p : parts) w.emplace_back(1, std::move(p));
  return sum(std::move(w));
}

LinearOperator LinearOperator::scaled(const Rat& c) const { return sum({{c, *this}}); }

LinearOperator::Kind LinearOperator::kind() const { return node_->kind; }
const std::string& LinearOperator::name() const { return node_->name; }
int LinearOperator::up_shift() const { return node_->up_shift; }

DescendentPoly LinearOperator::apply(const Monomial& m) const {
  switch (node_->kind) {
    case Kind::Zero:
      return {};
    case Kind::Scalar:
      return DescendentPoly::from_monomial(m, node_->scalar);
    case Kind::Multiply:
      return node_->poly * DescendentPoly::from_monomial(m);
    case Kind::Derivation:
      return apply_derivation(*node_, m);
    case Kind::Sandwich: {
      DescendentPoly prod = node_->poly * DescendentPoly::from_monomial(m);
      DescendentPoly out;
      for (const auto& [mm, cc] : prod.terms()) {
        DescendentPoly t = apply_derivation(*node_->inner, mm);
        t *= cc;
        out += t;
      }
      return out;
    }
    case Kind::Morphism: {
      DescendentPoly acc = DescendentPoly::one();
      for (const auto& g : m.gens()) acc = acc * node_->map.image(g);
      return acc;
    }
    case Kind::Custom:
      return node_->rule(m);
    case Kind::Compose: {
      DescendentPoly cur = DescendentPoly::from_monomial(m);
      for (auto it = node_->parts.rbegin(); it != node_->parts.rend(); ++it) cur = it->apply(cur);
      return cur;
    }
    case Kind::Sum: {
      DescendentPoly out;
      for (const auto& [w, op] : node_->terms) {
        DescendentPoly t = op.apply(m);
        t *= w;
        out += t;
      }
      return out;
    }
  }
  return {};
}

DescendentPoly LinearOperator::apply(const DescendentPoly& p) const {
  if (node_->kind == Kind::Sandwich) {
    // fused: deriv(mult * p)
    DescendentPoly prod = node_->poly * p;
    DescendentPoly out;
    for (const auto& [m, c] : prod.terms()) {
      DescendentPoly t = apply_derivation(*node_->inner, m);
      t *= c;
      out += t;
    }
    return out;
  }
  DescendentPoly out;
  for (const auto& [m, c] : p.terms()) {
    DescendentPoly t = apply(m);
    t *= c;
    out += t;
  }
  return out;
}

// -- commutator -------------------------------------------------------------

namespace {

// Sandwich(d, t) acts as d ∘ mult(t); expose that view for algebra.
LinearOperator sandwich_as_compose(const Node& n) {
  LinearOperator d = LinearOperator::derivation(n.inner->name, n.inner->action,
                                                n.inner->up_shift);
  return LinearOperator::compose({d, LinearOperator::multiply(n.poly)});
}

}  // namespace

LinearOperator commutator(const LinearOperator& a, const LinearOperator& b) {
  using Kind = LinearOperator::Kind;
  if (a.kind() == Kind::Zero || b.kind() == Kind::Zero) return LinearOperator::zero();
  if (a.kind() == Kind::Scalar || b.kind() == Kind::Scalar) return LinearOperator::zero();
  if (a.kind() == Kind::Sum) {
    std::vector<std::pair<Rat, LinearOperator>> terms;
    for (const auto& [w, op] : a.node().terms) terms.emplace_back(w, commutator(op, b));
    return LinearOperator::sum(std::move(terms));
  }
  if (b.kind() == Kind::Sum) {
    std::vector<std::pair<Rat, LinearOperator>> terms;
    for (const auto& [w, op] : b.node().terms) terms.emplace_back(w, commutator(a, op));
    return LinearOperator::sum(std::move(terms));
  }
  if (a.kind() == Kind::Sandwich) return commutator(sandwich_as_compose(a.node()), b);
  if (b.kind() == Kind::Sandwich) return commutator(a, sandwich_as_compose(b.node()));
  if (a.kind() == Kind::Compose) {
    // [A1∘A2, B] = A1∘[A2, B] + [A1, B]∘A2
    const auto& parts = a.node().parts;
    LinearOperator head = parts[0];
    LinearOperator tail =
        LinearOperator::compose(std::vector<LinearOperator>(parts.begin() + 1, parts.end()));
    return LinearOperator::sum({LinearOperator::compose({head, commutator(tail, b)}),
                                LinearOperator::compose({commutator(head, b), tail})});
  }
  if (b.kind() == Kind::Compose) {
    const auto& parts = b.node().parts;
    LinearOperator head = parts[0];
    LinearOperator tail =
        LinearOperator::compose(std::vector<LinearOperator>(parts.begin() + 1, parts.end()));
    return LinearOperator::sum({LinearOperator::compose({head, commutator(a, tail)}),
                                LinearOperator::compose({commutator(a, head), tail})});
  }
  if (a.kind() == Kind::Multiply && b.kind() == Kind::Multiply)
    return LinearOperator::zero();  // the ring is commutative
  if (a.kind() == Kind::Derivation && b.kind() == Kind::Multiply)
    return LinearOperator::multiply(a.apply(b.node().poly));  // Leibniz
  if (a.kind() == Kind::Multiply && b.kind() == Kind::Derivation) {
    DescendentPoly p = b.apply(a.node().poly);
    p *= Rat(-1);
    return LinearOperator::multiply(std::move(p));
  }
  return LinearOperator::sum(
      {{1, LinearOperator::compose({a, b})}, {-1, LinearOperator::compose({b, a})}});
}

// -- random monomials / op_equal ---------------------------------------------

Monomial random_monomial(std::uint64_t seed, std::uint64_t position, int i_max, int degree_max) {
  SplitMix64 rng(seed, position);
  int degree = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(degree_max)));
  std::vector<Generator> gens;
  gens.reserve(static_cast<size_t>(degree));
  for (int i = 0; i < degree; ++i) {
    int index = static_cast<int>(rng.below(static_cast<std::uint64_t>(i_max) + 1));
    int basis = static_cast<int>(rng.below(kBasisSize));
    gens.push_back({index, basis});
  }
  return Monomial(std::move(gens));
}

OpEqualResult op_equal(const LinearOperator& a, const LinearOperator& b,
                       const EqualityWindow& w) {
  int need = std::max(a.up_shift(), b.up_shift());
  if (w.margin < need)
    throw WindowTooSmall("op_equal: margin " + std::to_string(w.margin) +
                         " below required shift " + std::to_string(need));
  LinearOperator diff = a - b;
  OpEqualResult res;
  auto check = [&](const Monomial& m) -> bool {
    DescendentPoly image = diff.apply(m);
    ++res.checked;
    if (!image.is_zero()) {
      res.equal = false;
      res.counterexample = m;
      res.difference = std::move(image);
      return false;
    }
    return true;
  };
  if (!check(Monomial::one())) return res;
  std::vector<Generator> gens;
  for (int i = 0; i <= w.i_max; ++i)
    for (int bid = 0; bid < kBasisSize; ++bid) gens.push_back({i, bid});
  for (const auto& g : gens)
    if (!check(Monomial::single(g))) return res;
  for (size_t x = 0; x < gens.size(); ++x)
    for (size_t y = x; y < gens.size(); ++y)
      if (!check(Monomial::single(gens[x]).times(gens[y]))) return res;
  for (int n = 0; n < w.n_random; ++n)
    if (!check(random_monomial(w.seed, static_cast<std::uint64_t>(n), w.i_max, w.degree_max)))
      return res;
  res.equal = true;
  return res;
}

// -- catalog -----------------------------------------------------------------

namespace ops {

LinearOperator R(int k) {
  if (k < -1) throw BadIndex("R(k): k must be >= -1");
  return LinearOperator::derivation(
      "R[" + std::to_string(k) + "]",
      [k](Generator g) -> DescendentPoly {
        if (g.index + k < 0) return {};
        Rat c = 1;
        for (int j = 0; j <= k; ++j) c *= g.index + j;  // empty product at k = -1
        if (c == 0) return {};
        return DescendentPoly::from_monomial(Monomial::single({g.index + k, g.basis}), c);
      },
      std::max(k, 0));
}

LinearOperator R_neg(int k) {
  if (k <= 1) throw BadIndex("R_neg(k): k must be > 1");
  return LinearOperator::derivation(
      "R[-" + std::to_string(k) + "]",
      [k](Generator g) -> DescendentPoly {
        if (g.index < k) return {};
        Rat c(factorial(g.index - k), factorial(g.index - 1));
        return DescendentPoly::from_monomial(Monomial::single({g.index - k, g.basis}), c);
      },
      0);
}

LinearOperator Rm1(const DescendentContext& c, const CohClass& alpha) {
  HodgeBasis basis = c.basis;
  CohClass a = alpha;
  return LinearOperator::derivation(
      "Rm1[" + alpha.to_string() + "]",
      [basis, a](Generator g) -> DescendentPoly {
        if (g.index < 1) return {};
        return expand_linear(g.index - 1, cup(basis, a, CohClass::basis(g.basis)));
      },
      0);
}

namespace {

DescendentPoly t_poly(int k, const std::vector<KunnethTerm>& terms) {
  DescendentPoly t;
  for (int i = 0; i <= k; ++i) {
    int j = k - i;
    Rat fact(factorial(i) * factorial(j));
    for (const auto& term : terms) {
      Rat sign = (term.pL % 2 == 0) ? 1 : -1;  // (-1)^{dim S - pL} with dim S = 2
      DescendentPoly prod = expand_linear(i, term.left) * expand_linear(j, term.right);
      prod *= sign * fact;
      t += prod;
    }
  }
  return t;
}

}  // namespace

LinearOperator T_from(const DescendentContext&, int k, const std::vector<KunnethTerm>& terms) {
  if (k < -1) throw BadIndex("T(k): k must be >= -1");
  if (k == -1) return LinearOperator::zero();  // empty index sum
  return LinearOperator::multiply(t_poly(k, terms));
}

LinearOperator T(const DescendentContext& c, int k) { return T_from(c, k, c.diagonal_todd); }

LinearOperator S(const DescendentContext& c, int k, const Rat& r) {
  if (k < -1) throw BadIndex("S(k): k must be >= -1");
  if (r == 0) throw ZeroRank("S(k, r): rank must be nonzero");
  // The two Kunneth rows of the diagonal whose left factor has p = 0:
  // (one, point) and (sigmabar, sigma).
  Rat pref = -Rat(factorial(k + 1)) / r;
  std::vector<std::pair<Rat, LinearOperator>> parts;
  parts.emplace_back(
      pref, LinearOperator::sandwich(R(-1), DescendentPoly::generator(k + 1, kPoint)));
  parts.emplace_back(pref, LinearOperator::sandwich(Rm1(c, CohClass::basis(kSigmaBar)),
                                                    DescendentPoly::generator(k + 1, kSigma)));
  return LinearOperator::sum(std::move(parts));
}

LinearOperator L(const DescendentContext& c, int k) {
  return LinearOperator::sum({R(k), T(c, k)});
}

LinearOperator calL(const DescendentContext& c, int k, const Rat& r) {
  return LinearOperator::sum({R(k), T(c, k), S(c, k, r)});
}

LinearOperator d(const DescendentContext& c, int i, const CohClass& v) {
  if (i <= 0) throw BadIndex("d(i, v): i must be > 0");
  HodgeBasis basis = c.basis;
  CohClass vv = v;
  Rat inv_fact = Rat(1) / Rat(factorial(i - 1));
  return LinearOperator::derivation(
      "d[" + std::to_string(i) + "]",
      [basis, vv, i, inv_fact](Generator g) -> DescendentPoly {
        if (g.index != i) return {};
        Rat val = integrate(cup(basis, CohClass::basis(g.basis), vv)) * inv_fact;
        if (val == 0) return {};
        return DescendentPoly::constant(val);
      },
      0);
}

LinearOperator T_neg_from(const DescendentContext& c, int k,
                          const std::vector<KunnethTerm>& terms) {
  if (k <= 1) throw BadIndex("T_neg(k): k must be > 1");
  std::vector<std::pair<Rat, LinearOperator>> parts;
  for (int i = 1; i <= k - 1; ++i) {
    int j = k - i;
    for (const auto& term : terms) {
      Rat sign = (term.pL * term.pR) % 2 == 0 ? 1 : -1;
      parts.emplace_back(-Rat(1, 4) * sign,
                         LinearOperator::compose({d(c, j, term.left), d(c, i, term.right)}));
    }
    // td-correction: (1/4 ∫ td) Σ d_j[point] d_i[point] with ∫ td = 2
    parts.emplace_back(Rat(1, 2), LinearOperator::compose({d(c, j, CohClass::basis(kPoint)),
                                                           d(c, i, CohClass::basis(kPoint))}));
  }
  return LinearOperator::sum(std::move(parts));
}

LinearOperator T_neg(const DescendentContext& c, int k) { return T_neg_from(c, k, c.diagonal); }

LinearOperator L_neg(const DescendentContext& c, int k) {
  return LinearOperator::sum({R_neg(k), T_neg(c, k)});
}

LinearOperator L_any(const DescendentContext& c, int k) {
  return k >= -1 ? L(c, k) : L_neg(c, -k);
}

Rat normalizer(const DescendentContext& c, const CohClass& y, const MukaiVector& v) {
  CohClass ch_alpha = cup(c.basis, v.c, ToddData::inv_sqrt_td());
  return integrate(cup(c.basis, y, ch_alpha));
}

LinearOperator SY(const DescendentContext& c, int k, const CohClass& y, const MukaiVector& v,
                  const Rat& n) {
  if (k < -1) throw BadIndex("SY(k): k must be >= -1");
  Rat z = normalizer(c, y, v);
  if (z == 0) throw ZeroNormalizer("SY: ∫ Y·ch(α) vanishes");
  if (n == 0) throw ZeroNormalizer("SY: second normalizer must be nonzero");
  Rat fact(factorial(k + 1));
  return LinearOperator::sum(
      {{-fact / z, LinearOperator::sandwich(R(-1), expand_linear(k + 1, y))},
       {-fact / n, LinearOperator::sandwich(Rm1(c, CohClass::basis(kSigmaBar)),
                                            DescendentPoly::generator(k + 1, kSigma))}});
}

LinearOperator calL_Y(const DescendentContext& c, int k, const CohClass& y, const MukaiVector& v,
                      const Rat& n) {
  return LinearOperator::sum({R(k), T(c, k), SY(c, k, y, v, n)});
}

AlgebraMap M_map() {
  return AlgebraMap("M", [](Generator g) -> DescendentPoly {
    if (g.basis == kOne) return Rat(-1) * DescendentPoly::generator(g.index, kOne);
    if (g.basis == kPoint)
      return DescendentPoly::generator(g.index, kOne) + DescendentPoly::generator(g.index, kPoint);
    return DescendentPoly::generator(g.index, g.basis);
  });
}

LinearOperator M_op() { return LinearOperator::morphism(M_map()); }

AlgebraMap F_map(const DescendentContext& c, const CohClass& c1) {
  HodgeBasis basis = c.basis;
  CohClass expc = exp_h2(c.basis, c1);
  return AlgebraMap("F", [basis, expc](Generator g) {
    return expand_linear(g.index, cup(basis, expc, CohClass::basis(g.basis)));
  });
}

LinearOperator F_op(const DescendentContext& c, const CohClass& c1) {
  return LinearOperator::morphism(F_map(c, c1));
}

AlgebraMap ch0_substitution(const DescendentContext& c, const MukaiVector& v) {
  HodgeBasis basis = c.basis;
  CohClass ch_alpha = cup(c.basis, v.c, ToddData::inv_sqrt_td());
  return AlgebraMap("ch0subst", [basis, ch_alpha](Generator g) -> DescendentPoly {
    if (g.index != 0) return DescendentPoly::generator(g.index, g.basis);
    Rat val = integrate(cup(basis, CohClass::basis(g.basis), ch_alpha));
    return val == 0 ? DescendentPoly() : DescendentPoly::constant(val);
  });
}

LinearOperator eta(const DescendentContext& c, const CohClass& delta, const MukaiVector& v,
                   EtaConvention conv) {
  Rat z = normalizer(c, delta, v);
  if (z == 0) throw ZeroNormalizer("eta: ∫ δ·ch(α) vanishes");
  DescendentPoly j_poly = expand_linear(1, delta);
  LinearOperator lower = R(-1);
  bool factorial_conv = conv == EtaConvention::Factorial;
  return LinearOperator::custom(
      "eta",
      [j_poly, z, lower, factorial_conv](const Monomial& m) {
        // Terms with j beyond the weight vanish: R_{-1}^j kills weight < j.
        int w = m.weight();
        DescendentPoly out = DescendentPoly::from_monomial(m);
        DescendentPoly lowered = DescendentPoly::from_monomial(m);
        DescendentPoly j_power = DescendentPoly::one();
        Rat coeff = 1;
        for (int j = 1; j <= w; ++j) {
          lowered = lower.apply(lowered);
          if (lowered.is_zero()) break;
          j_power = j_power * j_poly;
          coeff *= -Rat(1) / z;
          Rat cj = factorial_conv ? coeff / Rat(factorial(j)) : coeff;
          DescendentPoly term = j_power * lowered;
          term *= cj;
          out += term;
        }
        return out;
      },
      0);
}

LinvEvaluator::LinvEvaluator(const DescendentContext& c, LinvVariant variant)
    : ctx_(c), variant_(std::move(variant)), lower_(R(-1)) {}

const LinearOperator& LinvEvaluator::calL_for(int j) const {
  size_t slot = static_cast<size_t>(j + 1);
  while (cache_.size() <= slot) {
    int jj = static_cast<int>(cache_.size()) - 1;
    if (variant_.y) {
      const auto& [y, v, n] = *variant_.y;
      cache_.push_back(calL_Y(ctx_, jj, y, v, n));
    } else {
      cache_.push_back(calL(ctx_, jj, variant_.rank));
    }
  }
  return cache_[slot];
}

DescendentPoly LinvEvaluator::apply(const DescendentPoly& p) const {
  DescendentPoly out;
  for (const auto& [m, cm] : p.terms()) {
    int w = m.weight();
    DescendentPoly lowered = DescendentPoly::from_monomial(m, cm);
    for (int j = -1; j <= w - 1; ++j) {
      // c_j = (-1)^j / (j+1)!, with c_{-1} = -1
      if (j >= 0) lowered = lower_.apply(lowered);
      if (lowered.is_zero()) break;
      Rat cj = Rat((j % 2 == 0) ? 1 : -1) / Rat(factorial(j + 1));
      DescendentPoly term = calL_for(j).apply(lowered);
      term *= cj;
      out += term;
    }
  }
  return out;
}

DescendentPoly apply_L_inv(const DescendentContext& c, const DescendentPoly& p,
                           const LinvVariant& variant) {
  return LinvEvaluator(c, variant).apply(p);
}

}  // namespace ops
}  // namespace k3
