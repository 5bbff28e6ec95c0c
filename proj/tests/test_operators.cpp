#include <doctest.h>

#include "k3/errors.hpp"
#include "k3/operators.hpp"
#include "k3/rng.hpp"

using namespace k3;

namespace {

const DescendentContext& ctx() {
  static const DescendentContext c = DescendentContext::make(HodgeBasis::standard());
  return c;
}

DescendentPoly gen(int i, int b) { return DescendentPoly::generator(i, b); }

DescendentPoly random_poly(SplitMix64& rng, int terms = 3) {
  DescendentPoly p;
  for (int t = 0; t < terms; ++t)
    p.add_term(random_monomial(rng.next(), 0, 6, 3), Rat(rng.range(-9, 9), rng.range(1, 5)));
  return p;
}

}  // namespace

TEST_CASE("R raises indices with the running product") {
  CHECK(ops::R(-1).apply(gen(0, kGammaFirst)).is_zero());            // index floor
  CHECK(ops::R(0).apply(gen(5, kGammaFirst)) == Rat(5) * gen(5, kGammaFirst));
  CHECK(ops::R(2).apply(gen(1, kGammaFirst)) == Rat(6) * gen(3, kGammaFirst));  // 1·2·3
  CHECK(ops::R(3).apply(gen(0, kPoint)).is_zero());                  // factor (i+0) = 0
  CHECK(ops::R(-1).apply(gen(4, kSigma)) == gen(3, kSigma));         // empty product
  CHECK_THROWS_AS(ops::R(-2), BadIndex);
}

TEST_CASE("derivations satisfy the Leibniz rule") {
  SplitMix64 rng(43);
  std::vector<LinearOperator> derivs = {ops::R(2), ops::R(-1), ops::R_neg(3),
                                        ops::Rm1(ctx(), CohClass::basis(kSigma)),
                                        ops::d(ctx(), 1, CohClass::basis(kPoint))};
  for (const auto& op : derivs) {
    for (int t = 0; t < 30; ++t) {
      DescendentPoly a = random_poly(rng, 2);
      DescendentPoly b = random_poly(rng, 2);
      CHECK(op.apply(a * b) == op.apply(a) * b + a * op.apply(b));
    }
  }
}

TEST_CASE("R_neg lowers with factorial ratios") {
  CHECK(ops::R_neg(2).apply(gen(1, kOne)).is_zero());                  // i < k
  CHECK(ops::R_neg(2).apply(gen(3, kOne)) == Rat(1, 2) * gen(1, kOne));  // 1!/2!
  CHECK(ops::R_neg(3).apply(gen(3, kOne)) == Rat(1, 2) * gen(0, kOne));  // 0!/2!
  CHECK_THROWS_AS(ops::R_neg(1), BadIndex);
  CHECK_THROWS_AS(ops::R_neg(0), BadIndex);
}

TEST_CASE("Rm1 with a class lowers and multiplies") {
  CHECK(ops::Rm1(ctx(), CohClass::unit()).apply(gen(2, kPoint)) == gen(1, kPoint));
  // sigma·point dies by degree truncation
  CHECK(ops::Rm1(ctx(), CohClass::basis(kSigma)).apply(gen(1, kPoint)).is_zero());
  // sigma·sigmabar = point
  CHECK(ops::Rm1(ctx(), CohClass::basis(kSigma)).apply(gen(2, kSigmaBar)) == gen(1, kPoint));
}

TEST_CASE("d is an index-selective scalar derivation") {
  CHECK(ops::d(ctx(), 1, CohClass::basis(kPoint)).apply(gen(1, kOne)) ==
        DescendentPoly::one());
  CHECK(ops::d(ctx(), 2, CohClass::unit()).apply(gen(2, kPoint)) == DescendentPoly::one());
  CHECK(ops::d(ctx(), 1, CohClass::basis(kPoint)).apply(gen(2, kOne)).is_zero());
  CHECK_THROWS_AS(ops::d(ctx(), 0, CohClass::unit()), BadIndex);
}

TEST_CASE("T multiplier structure") {
  CHECK(ops::T(ctx(), -1).apply(DescendentPoly::one()).is_zero());  // empty sum

  DescendentPoly t0 = ops::T(ctx(), 0).apply(DescendentPoly::one());
  // coefficient of ch0(one)·ch0(point): the unit row and the dual point row
  CHECK(t0.coeff(Monomial({{0, kOne}, {0, kPoint}})) == 2);
  // diagonal gamma rows enter with the (1,1) sign
  CHECK(t0.coeff(Monomial({{0, kGammaFirst}, {0, kGammaFirst}})) == -1);
  CHECK(t0.coeff(Monomial({{0, kGammaFirst + 1}, {0, kGammaFirst + 1}})) == 1);  // ∫g2·g2 = -1
  // sigma rows have positive sign
  CHECK(t0.coeff(Monomial({{0, kSigma}, {0, kSigmaBar}})) == 2);
  // the td correction doubles ch0(point)^2
  CHECK(t0.coeff(Monomial({{0, kPoint}, {0, kPoint}})) == 2);

  DescendentPoly t1 = ops::T(ctx(), 1).apply(DescendentPoly::one());
  CHECK(t1.coeff(Monomial({{0, kOne}, {1, kPoint}})) == 2);
  CHECK(t1.coeff(Monomial({{0, kGammaFirst}, {1, kGammaFirst}})) == -2);

  CHECK_THROWS_AS(ops::T(ctx(), -2), BadIndex);
}

TEST_CASE("S lowering term") {
  // S_{-1}(ch1(point)) = -(1/r)·ch0(point)^2 : only the unit row survives
  for (long long r : {1, 2, 5}) {
    DescendentPoly got = ops::S(ctx(), -1, Rat(r)).apply(gen(1, kPoint));
    DescendentPoly want =
        DescendentPoly::from_monomial(Monomial({{0, kPoint}, {0, kPoint}}), Rat(-1, r));
    CHECK(got == want);
  }
  // S_k(1) = -(2(k+1)!/r)·ch_k(point)
  DescendentPoly s2 = ops::S(ctx(), 2, Rat(3)).apply(DescendentPoly::one());
  CHECK(s2 == Rat(-4) * gen(2, kPoint));  // 2·3!/3 = 4
  CHECK(ops::S(ctx(), -1, Rat(2)).apply(DescendentPoly::one()).is_zero());
  CHECK_THROWS_AS(ops::S(ctx(), 1, Rat(0)), ZeroRank);

  // prefactor linearity: S(k, 2r) = S(k, r)/2
  EqualityWindow w{6, 6, 4, 50, 5};
  CHECK(op_equal(ops::S(ctx(), 1, Rat(4)), ops::S(ctx(), 1, Rat(2)).scaled(Rat(1, 2)), w).equal);
}

TEST_CASE("op_equal detects equality and perturbations") {
  EqualityWindow w{6, 6, 4, 50, 5};
  CHECK(op_equal(ops::R(0), ops::R(0), w).equal);

  // [R[-1], T[2]] = 3 T[1]; a perturbed right side must be flagged
  LinearOperator lhs = commutator(ops::R(-1), ops::T(ctx(), 2));
  CHECK(op_equal(lhs, ops::T(ctx(), 1).scaled(3), w).equal);
  LinearOperator bad =
      LinearOperator::sum({ops::T(ctx(), 1).scaled(2), LinearOperator::multiply(gen(0, kOne))});
  auto res = op_equal(lhs, bad, w);
  CHECK(!res.equal);
  CHECK(res.counterexample.has_value());

  CHECK_THROWS_AS(op_equal(ops::R(5), ops::R(5), EqualityWindow{6, 2, 4, 10, 5}),
                  WindowTooSmall);
}

TEST_CASE("commutator is extensionally antisymmetric and drops scalars") {
  EqualityWindow w{5, 6, 4, 30, 7};
  LinearOperator a = ops::L(ctx(), 2);
  CHECK(op_equal(commutator(a, a), LinearOperator::zero(), w).equal);
  CHECK(op_equal(commutator(LinearOperator::scalar(5), a), LinearOperator::zero(), w).equal);
}

TEST_CASE("T_neg second-order values") {
  LinearOperator t2 = ops::T_neg(ctx(), 2);
  CHECK(t2.apply(DescendentPoly::one()).is_zero());
  CHECK(t2.apply(gen(5, kPoint)).is_zero());  // single generator of index >= k
  // the pair ch1(one)·ch1(point) pairs the hyperbolic rows
  DescendentPoly pair = gen(1, kOne) * gen(1, kPoint);
  CHECK(t2.apply(pair) == DescendentPoly::constant(Rat(-1, 2)));
  CHECK_THROWS_AS(ops::T_neg(ctx(), 1), BadIndex);
}

TEST_CASE("SY prefactors and normalizers") {
  CohClass y = CohClass::basis(kGammaFirst);
  MukaiVector v(0, CohClass::basis(kGammaFirst, 3), 1);
  // z = ∫ Y·c1(v): the point part of ch(α) never meets a degree-2 Y
  CHECK(ops::normalizer(ctx(), y, v) == 3);
  MukaiVector bad(0, CohClass::basis(kGammaFirst + 1), 1);  // ∫ g1·g2 = 0
  CHECK_THROWS_AS(ops::SY(ctx(), 0, y, bad, Rat(1)), ZeroNormalizer);
  CHECK_THROWS_AS(ops::SY(ctx(), 0, y, v, Rat(0)), ZeroNormalizer);

  // k = -1 prefactors are 0! = 1
  DescendentPoly img = ops::SY(ctx(), -1, y, v, Rat(2)).apply(gen(1, kGammaFirst));
  // -(1/3)·R_{-1}(ch0(g1)·ch1(g1)) - (1/2)·Rm1[sigmabar](ch0(sigma)·ch1(g1))
  // = -(1/3)·ch0(g1)·ch0(g1)  (the sigma route needs sigmabar·g1 = 0)
  CHECK(img == DescendentPoly::from_monomial(Monomial({{0, kGammaFirst}, {0, kGammaFirst}}),
                                             Rat(-1, 3)));
}

TEST_CASE("unit-point swap involution") {
  AlgebraMap m = ops::M_map();
  CHECK(m.apply(gen(2, kOne)) == Rat(-1) * gen(2, kOne));
  CHECK(m.apply(gen(2, kPoint)) == gen(2, kOne) + gen(2, kPoint));
  CHECK(m.apply(gen(2, kSigma)) == gen(2, kSigma));
  CHECK(m.apply(gen(2, kGammaFirst)) == gen(2, kGammaFirst));

  EqualityWindow w{6, 6, 4, 50, 9};
  LinearOperator mo = ops::M_op();
  CHECK(op_equal(LinearOperator::compose({mo, mo}), LinearOperator::identity(), w).equal);
  CHECK(op_equal(commutator(mo, ops::R(2)), LinearOperator::zero(), w).equal);
  CHECK(op_equal(commutator(mo, ops::T(ctx(), 2)), LinearOperator::zero(), w).equal);
}

TEST_CASE("twist map") {
  CHECK(ops::F_map(ctx(), CohClass()).apply(gen(3, kGammaFirst)) == gen(3, kGammaFirst));
  // e^{g1}·g1 = g1 + point under the default gram
  CHECK(ops::F_map(ctx(), CohClass::basis(kGammaFirst)).apply(gen(3, kGammaFirst)) ==
        gen(3, kGammaFirst) + gen(3, kPoint));
}

TEST_CASE("eta expansions") {
  CohClass delta = CohClass::basis(kPoint);
  MukaiVector v(2, CohClass(), 0);  // z = ∫ point·ch(α) = rank = 2
  for (auto conv : {ops::EtaConvention::Plain, ops::EtaConvention::Factorial}) {
    LinearOperator e = ops::eta(ctx(), delta, v, conv);
    CHECK(e.apply(DescendentPoly::one()) == DescendentPoly::one());
    // j <= 1 terms agree between the conventions
    DescendentPoly img = e.apply(gen(1, kGammaFirst));
    DescendentPoly want = gen(1, kGammaFirst) +
                          Rat(-1, 2) * (gen(1, kPoint) * gen(0, kGammaFirst));
    CHECK(img == want);
  }
  // the conventions differ from j = 2 on
  DescendentPoly a =
      ops::eta(ctx(), delta, v, ops::EtaConvention::Plain).apply(gen(2, kGammaFirst));
  DescendentPoly b =
      ops::eta(ctx(), delta, v, ops::EtaConvention::Factorial).apply(gen(2, kGammaFirst));
  CHECK(!(a == b));
  CHECK_THROWS_AS(
      ops::eta(ctx(), CohClass::basis(kSigma), v, ops::EtaConvention::Factorial),
      ZeroNormalizer);
}

TEST_CASE("index-zero substitution") {
  MukaiVector v(2, CohClass::basis(kGammaFirst), 5);  // ch(α) = (2, g1, 3)
  AlgebraMap red = ops::ch0_substitution(ctx(), v);
  CHECK(red.apply(gen(0, kOne)) == DescendentPoly::constant(3));
  CHECK(red.apply(gen(0, kPoint)) == DescendentPoly::constant(2));
  CHECK(red.apply(gen(0, kGammaFirst)) == DescendentPoly::constant(1));
  CHECK(red.apply(gen(0, kSigma)).is_zero());
  CHECK(red.apply(gen(1, kPoint)) == gen(1, kPoint));
}

TEST_CASE("invariant combination truncates by weight") {
  ops::LinvVariant rank2 = ops::LinvVariant::with_rank(2);
  // on the constant, only the j = -1 term acts and calL_{-1}(1) = 0
  CHECK(ops::apply_L_inv(ctx(), DescendentPoly::one(), rank2).is_zero());

  // R[-1] ∘ Linv = 0, spot check on a couple of small monomials
  LinearOperator lower = ops::R(-1);
  for (const auto& m : {Monomial({{2, kPoint}}), Monomial({{1, kGammaFirst}, {2, kOne}}),
                        Monomial({{3, kSigmaBar}})}) {
    DescendentPoly img = ops::apply_L_inv(ctx(), DescendentPoly::from_monomial(m), rank2);
    CHECK(lower.apply(img).is_zero());
  }
}

TEST_CASE("random monomial sampler is reproducible and in range") {
  Monomial a = random_monomial(99, 7, 5, 4);
  Monomial b = random_monomial(99, 7, 5, 4);
  CHECK(a == b);
  for (std::uint64_t pos = 0; pos < 200; ++pos) {
    Monomial m = random_monomial(1234, pos, 5, 4);
    CHECK(m.degree() >= 1);
    CHECK(m.degree() <= 4);
    for (const auto& g : m.gens()) {
      CHECK(g.index >= 0);
      CHECK(g.index <= 5);
      CHECK(g.basis >= 0);
      CHECK(g.basis < kBasisSize);
    }
  }
}
