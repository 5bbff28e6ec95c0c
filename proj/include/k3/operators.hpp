#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "k3/descendent.hpp"

namespace k3 {

/// Shared context for operator construction: the cohomology model and the
/// diagonal decompositions the multiplication operators are built from.
struct DescendentContext {
  HodgeBasis basis;
  std::vector<KunnethTerm> diagonal;
  std::vector<KunnethTerm> diagonal_todd;

  static DescendentContext make(HodgeBasis h);
};

/// Composable linear endomorphism of the descendent algebra.
///
/// Immutable value; nodes are shared.  Derivations extend to products by the
/// Leibniz rule; algebra morphisms extend multiplicatively.  Sum construction
/// merges multiplication and scalar leaves (linearity), nothing else is
/// simplified.
class LinearOperator {
 public:
  enum class Kind { Zero, Scalar, Multiply, Derivation, Sandwich, Morphism, Custom, Compose, Sum };

  LinearOperator() : LinearOperator(zero()) {}

  static LinearOperator zero();
  static LinearOperator identity();
  static LinearOperator scalar(Rat c);  // c * Id
  static LinearOperator multiply(DescendentPoly p);
  /// action(g) is the image of a generator; the extension is by Leibniz.
  static LinearOperator derivation(std::string name,
                                   std::function<DescendentPoly(Generator)> action,
                                   int up_shift);
  /// The S_k shape: x -> deriv(mult * x).
  static LinearOperator sandwich(LinearOperator deriv, DescendentPoly mult);
  static LinearOperator morphism(AlgebraMap m);
  /// Arbitrary monomial-wise rule (used for locally finite sums).
  static LinearOperator custom(std::string name, std::function<DescendentPoly(const Monomial&)> fn,
                               int up_shift);
  static LinearOperator compose(std::vector<LinearOperator> parts);  // rightmost acts first
  static LinearOperator sum(std::vector<std::pair<Rat, LinearOperator>> parts);
  static LinearOperator sum(std::vector<LinearOperator> parts);

  LinearOperator scaled(const Rat& c) const;
  friend LinearOperator operator+(const LinearOperator& a, const LinearOperator& b) {
    return sum({a, b});
  }
  friend LinearOperator operator-(const LinearOperator& a, const LinearOperator& b) {
    return sum({{1, a}, {-1, b}});
  }

  Kind kind() const;
  const std::string& name() const;

  DescendentPoly apply(const Monomial& m) const;
  DescendentPoly apply(const DescendentPoly& p) const;

  /// Upper bound on how much the operator can raise a generator index.
  int up_shift() const;

  struct Node;
  const Node& node() const { return *node_; }

 private:
  explicit LinearOperator(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// [A, B] = A∘B - B∘A, expanded through sums and compositions.  Commutators
/// of two multiplications collapse to zero (the ring is commutative) and a
/// derivation against a multiplication collapses by the Leibniz rule; every
/// other primitive pair stays as an explicit difference of compositions.
LinearOperator commutator(const LinearOperator& a, const LinearOperator& b);

// -- extensional equality -------------------------------------------------------

struct EqualityWindow {
  int i_max = 12;
  int margin = 8;
  int degree_max = 5;
  int n_random = 200;
  std::uint64_t seed = 1;
};

struct OpEqualResult {
  bool equal = false;
  std::optional<Monomial> counterexample;
  DescendentPoly difference;  // (A - B) applied to the counterexample
  std::size_t checked = 0;
};

/// Tests A - B on: the constant 1, every generator ch[i](b) with i <= i_max,
/// every product of two such generators, and n_random seeded random monomials
/// of degree <= degree_max.  Throws WindowTooSmall when margin is below the
/// up-shift of either operand.
OpEqualResult op_equal(const LinearOperator& a, const LinearOperator& b, const EqualityWindow& w);

/// Deterministic monomial sampler: degree uniform on [1, degree_max], each
/// generator index uniform on [0, i_max] and basis uniform over the 24 ids.
/// Reproducible from (seed, position) alone.
Monomial random_monomial(std::uint64_t seed, std::uint64_t position, int i_max, int degree_max);

// -- operator catalog -----------------------------------------------------------

namespace ops {

/// Index-raising derivation; k >= -1 (empty product convention at k = -1).
LinearOperator R(int k);
/// Index-lowering derivation for k > 1: ch_i -> ((i-k)!/(i-1)!) ch_{i-k}.
LinearOperator R_neg(int k);
/// Derivation ch_i(γ) -> ch_{i-1}(α·γ).
LinearOperator Rm1(const DescendentContext& c, const CohClass& alpha);
/// Multiplication by the diagonal-Todd expansion, weight k.
LinearOperator T(const DescendentContext& c, int k);
LinearOperator T_from(const DescendentContext& c, int k, const std::vector<KunnethTerm>& terms);
/// Rank-normalized lowering term; r != 0.
LinearOperator S(const DescendentContext& c, int k, const Rat& r);
LinearOperator L(const DescendentContext& c, int k);                  // R + T
LinearOperator calL(const DescendentContext& c, int k, const Rat& r);  // R + T + S
/// Order-zero derivation ch_j(γ) -> δ_ij/(i-1)! ∫ γ·v ; i > 0.
LinearOperator d(const DescendentContext& c, int i, const CohClass& v);
LinearOperator T_neg(const DescendentContext& c, int k);  // k > 1
LinearOperator T_neg_from(const DescendentContext& c, int k,
                          const std::vector<KunnethTerm>& terms);
LinearOperator L_neg(const DescendentContext& c, int k);  // k > 1
/// L_k for any integer k (positive-sector for k >= -1, negative otherwise).
LinearOperator L_any(const DescendentContext& c, int k);

/// ∫ Y·ch(α) where ch(α) = v·(1 - point); the normalizing constant for the
/// Y-based operators.
Rat normalizer(const DescendentContext& c, const CohClass& y, const MukaiVector& v);

/// Y-normalized lowering term for rank-zero flows; throws ZeroNormalizer.
LinearOperator SY(const DescendentContext& c, int k, const CohClass& y, const MukaiVector& v,
                  const Rat& n);
LinearOperator calL_Y(const DescendentContext& c, int k, const CohClass& y, const MukaiVector& v,
                      const Rat& n);

/// Algebra involution fixing degree-2 descendents, ch_i(one) -> -ch_i(one),
/// ch_i(point) -> ch_i(one) + ch_i(point).
AlgebraMap M_map();
LinearOperator M_op();

/// Line-bundle twist: ch_i(γ) -> ch_i(e^{c1}·γ).
AlgebraMap F_map(const DescendentContext& c, const CohClass& c1);
LinearOperator F_op(const DescendentContext& c, const CohClass& c1);

/// Substitutes every index-0 generator by its realized constant ∫ b·ch(α).
/// This is the quotient the realization imposes in degree zero.
AlgebraMap ch0_substitution(const DescendentContext& c, const MukaiVector& v);

enum class EtaConvention { Plain, Factorial };

/// Universal-sheaf renormalization transform; locally finite in the weight.
LinearOperator eta(const DescendentContext& c, const CohClass& delta, const MukaiVector& v,
                   EtaConvention conv);

struct LinvVariant {
  Rat rank = 1;  // used when y is absent
  std::optional<std::tuple<CohClass, MukaiVector, Rat>> y;  // (Y, v, n)

  static LinvVariant with_rank(Rat r) { return {std::move(r), std::nullopt}; }
  static LinvVariant with_y(CohClass y, MukaiVector v, Rat n) {
    return {1, std::make_tuple(std::move(y), std::move(v), std::move(n))};
  }
};

/// Invariant combination sum_j (-1)^j/(j+1)! calL_j R_{-1}^{j+1}.  The sum
/// truncates exactly: R_{-1}^{j+1} kills every monomial of weight <= j, so a
/// monomial of weight w only meets the terms j <= w - 1.
class LinvEvaluator {
 public:
  LinvEvaluator(const DescendentContext& c, LinvVariant variant);
  DescendentPoly apply(const DescendentPoly& p) const;

 private:
  const LinearOperator& calL_for(int j) const;
  const DescendentContext& ctx_;
  LinvVariant variant_;
  LinearOperator lower_;
  mutable std::vector<LinearOperator> cache_;  // slot j+1 holds calL_j
};

DescendentPoly apply_L_inv(const DescendentContext& c, const DescendentPoly& p,
                           const LinvVariant& variant);

}  // namespace ops
}  // namespace k3
