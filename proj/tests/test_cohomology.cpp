#include <doctest.h>

#include "k3/config.hpp"
#include "k3/hodge.hpp"
#include "k3/rng.hpp"

using namespace k3;

namespace {

CohClass random_class(SplitMix64& rng, bool degree2_only = false) {
  CohClass c;
  int lo = degree2_only ? kSigma : kOne;
  int hi = degree2_only ? kPoint - 1 : kPoint;
  for (int t = 0; t < 4; ++t) {
    int id = static_cast<int>(rng.range(lo, hi));
    long long num = rng.range(-6, 6);
    long long den = rng.range(1, 4);
    c.set(id, c.coeff(id) + Rat(num, den));
  }
  return c;
}

}  // namespace

TEST_CASE("basis layout") {
  CHECK(kBasisSize == 24);
  CHECK(basis_element(kOne).degree == 0);
  CHECK(basis_element(kSigma).p == 2);
  CHECK(basis_element(kSigma).q == 0);
  CHECK(basis_element(kSigmaBar).p == 0);
  CHECK(basis_element(kSigmaBar).q == 2);
  CHECK(basis_element(kPoint).degree == 4);
  for (int id = 0; id < kBasisSize; ++id) {
    const auto& b = basis_element(id);
    CHECK(b.p + b.q == b.degree);  // bidegree sums to the real degree
  }
  CHECK(basis_id("g7") == kGammaFirst + 6);
  CHECK(basis_id("nope") == -1);
}

TEST_CASE("cup product basics") {
  HodgeBasis h = HodgeBasis::standard();
  CohClass one = CohClass::unit();
  CohClass pt = CohClass::basis(kPoint);
  CohClass g1 = CohClass::basis(kGammaFirst);

  SplitMix64 rng(7);
  CohClass x = random_class(rng);
  CHECK(cup(h, one, x) == x);                          // unit law
  CHECK(cup(h, g1, g1) == pt);                         // ∫g1·g1 = 1 in the default gram
  CHECK(cup(h, pt, pt).is_zero());                     // degree > 4 truncates
  CHECK(cup(h, CohClass::basis(kSigma), CohClass::basis(kSigmaBar)) == pt);
  CHECK(cup(h, CohClass::basis(kSigma), CohClass::basis(kSigma)).is_zero());
  CHECK(cup(h, CohClass::basis(kSigma), g1).is_zero());

  // commutativity and bilinearity on random classes
  for (int i = 0; i < 100; ++i) {
    CohClass a = random_class(rng);
    CohClass b = random_class(rng);
    CohClass c = random_class(rng);
    CHECK(cup(h, a, b) == cup(h, b, a));
    CHECK(cup(h, a + b, c) == cup(h, a, c) + cup(h, b, c));
  }
}

TEST_CASE("integration") {
  HodgeBasis h = HodgeBasis::standard();
  CHECK(integrate(CohClass::basis(kPoint)) == 1);
  CHECK(integrate(CohClass::unit()) == 0);
  CHECK(integrate(cup(h, CohClass::basis(kSigma), CohClass::basis(kSigmaBar))) == 1);
}

TEST_CASE("dualize is the degree-2 sign flip") {
  MukaiVector one(CohClass::unit());
  MukaiVector sigma(CohClass::basis(kSigma));
  CHECK(dualize(one) == one);
  CHECK(dualize(sigma).c == CohClass::basis(kSigma, -1));
  SplitMix64 rng(11);
  for (int i = 0; i < 50; ++i) {
    MukaiVector x(random_class(rng));
    CHECK(dualize(dualize(x)) == x);  // involution
  }
}

TEST_CASE("mukai pairing") {
  HodgeBasis h = HodgeBasis::standard();
  MukaiVector one(CohClass::unit());
  MukaiVector pt(CohClass::basis(kPoint));
  CHECK(mukai_pairing(h, one, pt) == -1);

  // (v, v) = D^2 - 2rn on a vector with D = 2*g1
  MukaiVector v(2, CohClass::basis(kGammaFirst, 2), 1);
  CHECK(mukai_pairing(h, v, v) == 0);  // 4 - 4
  CHECK(mukai_pairing(h, pt, v) == -2);  // -(rank)

  // pairing/cup compatibility: (x,y) = Dx·Dy - rx·ny - nx·ry, exact
  SplitMix64 rng(13);
  for (int i = 0; i < 1000; ++i) {
    MukaiVector x(random_class(rng));
    MukaiVector y(random_class(rng));
    Rat want = integrate(cup(h, x.c1(), y.c1())) - x.rk() * y.v2() - x.v2() * y.rk();
    CHECK(mukai_pairing(h, x, y) == want);
    CHECK(mukai_pairing(h, x, y) == mukai_pairing(h, y, x));
  }
}

TEST_CASE("dual basis") {
  HodgeBasis h = HodgeBasis::standard();
  CHECK(h.dual(kOne) == CohClass::basis(kPoint));
  CHECK(h.dual(kPoint) == CohClass::unit());
  CHECK(h.dual(kSigmaBar) == CohClass::basis(kSigma));
  // default gram is diag(1,-1,...,-1), so g1 is self-dual and g2 anti-self-dual
  CHECK(h.dual(kGammaFirst) == CohClass::basis(kGammaFirst));
  CHECK(h.dual(kGammaFirst + 1) == CohClass::basis(kGammaFirst + 1, -1));

  for (const auto& [id, hb] : {std::pair<const char*, HodgeBasis>{"default", h},
                               {"alternate", HodgeBasis::with_gram(alternate_gram())}}) {
    (void)id;
    // defining property ∫ b_j · b_i^∨ = δ_ij, for every pair
    for (int i = 0; i < kBasisSize; ++i)
      for (int j = 0; j < kBasisSize; ++j) {
        Rat val = integrate(cup(hb, CohClass::basis(j), hb.dual(i)));
        CHECK(val == (i == j ? 1 : 0));
      }
    // dual-basis round trip: a = sum_b (∫ a·b^∨) b
    SplitMix64 rng(17);
    for (int t = 0; t < 50; ++t) {
      CohClass a = random_class(rng);
      CohClass back;
      for (int b = 0; b < kBasisSize; ++b) {
        CohClass term = CohClass::basis(b);
        term *= integrate(cup(hb, a, hb.dual(b)));
        back += term;
      }
      CHECK(back == a);
    }
  }
}

TEST_CASE("singular gram is rejected") {
  GramH11 g(kH11Size, std::vector<Rat>(kH11Size, 0));
  CHECK_THROWS_AS(HodgeBasis::with_gram(g), SingularGram);
  g = alternate_gram();
  g[0][1] = 7;  // asymmetric
  CHECK_THROWS_AS(HodgeBasis::with_gram(g), SingularGram);
}

TEST_CASE("todd data") {
  HodgeBasis h = HodgeBasis::standard();
  CHECK(cup(h, ToddData::sqrt_td(), ToddData::sqrt_td()) == ToddData::td());
  CHECK(cup(h, ToddData::sqrt_td(), ToddData::inv_sqrt_td()) == CohClass::unit());
}

TEST_CASE("kunneth decompositions") {
  HodgeBasis h = HodgeBasis::standard();
  auto diag = kunneth(h, KunnethKind::Diagonal);
  CHECK(diag.size() == kBasisSize);

  // terms with pL = 0 are exactly the rows of one and sigmabar
  std::vector<CohClass> p0_lefts;
  for (const auto& t : diag)
    if (t.pL == 0) p0_lefts.push_back(t.left);
  REQUIRE(p0_lefts.size() == 2);
  CHECK(p0_lefts[0] == CohClass::unit());
  CHECK(p0_lefts[1] == CohClass::basis(kSigmaBar));

  // diagonal-todd row of one is (one, point): point·td = point
  auto todd = kunneth(h, KunnethKind::DiagonalTodd);
  CHECK(todd[0].left == CohClass::unit());
  CHECK(todd[0].right == CohClass::basis(kPoint));

  // faithfulness: ∫∫ (sum_b b ⊗ b^∨)·(a ⊗ c) = ∫ a·c
  SplitMix64 rng(19);
  for (int t = 0; t < 50; ++t) {
    CohClass a = random_class(rng);
    CohClass c = random_class(rng);
    Rat via_diag = 0;
    for (const auto& term : diag)
      via_diag += integrate(cup(h, term.left, a)) * integrate(cup(h, term.right, c));
    CHECK(via_diag == integrate(cup(h, a, c)));
  }
}

TEST_CASE("exp of a degree-2 class") {
  HodgeBasis h = HodgeBasis::standard();
  CHECK(exp_h2(h, CohClass()) == CohClass::unit());
  CohClass g1 = CohClass::basis(kGammaFirst);
  CohClass want = CohClass::unit() + g1 + CohClass::basis(kPoint, Rat(1, 2));
  CHECK(exp_h2(h, g1) == want);
  CHECK_THROWS_AS(exp_h2(h, CohClass::basis(kPoint)), Error);
}

TEST_CASE("config files") {
  FileConfig fc = parse_config(R"({"seed": 42})");
  CHECK(fc.seed == 42);
  CHECK(!fc.gram);
  CHECK_THROWS_AS(parse_config("{"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"bogus": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"gram_h11": [[1]]})"), ConfigError);

  // a full matrix in string form round-trips into a usable basis
  std::string rows;
  for (int i = 0; i < kH11Size; ++i) {
    rows += i ? "," : "";
    rows += "[";
    for (int j = 0; j < kH11Size; ++j) {
      rows += j ? "," : "";
      rows += (i == j) ? "\"-2/1\"" : "\"0\"";
    }
    rows += "]";
  }
  fc = parse_config("{\"gram_h11\": [" + rows + "]}");
  REQUIRE(fc.gram.has_value());
  HodgeBasis h = HodgeBasis::with_gram(*fc.gram);
  CHECK(h.dual(kGammaFirst) == CohClass::basis(kGammaFirst, Rat(-1, 2)));
}
