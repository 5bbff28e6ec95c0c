#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "k3/errors.hpp"
#include "k3/rational.hpp"

namespace k3 {

// Exact model of the rational cohomology of a K3-type surface.
//
// The ring is carried on a fixed 24-element basis:
//   one (deg 0), sigma (2,0), sigmabar (0,2), g1..g20 of type (1,1),
//   point (deg 4).
// The pairing on the (1,1) block is a configurable symmetric invertible
// rational matrix; the fixed pairings are
//   ∫ one·point = 1, ∫ sigma·sigmabar = 1,
//   ∫ sigma·sigma = ∫ sigmabar·sigmabar = 0,
//   ∫ sigma·g_i = ∫ sigmabar·g_i = 0.

inline constexpr int kBasisSize = 24;
inline constexpr int kH11Size = 20;

inline constexpr int kOne = 0;
inline constexpr int kSigma = 1;
inline constexpr int kSigmaBar = 2;
inline constexpr int kGammaFirst = 3;  // g1..g20 occupy ids 3..22
inline constexpr int kPoint = 23;

struct BasisElement {
  std::string name;
  int degree;  // real degree
  int p, q;    // Hodge bidegree, p + q == degree
};

/// Name of basis id ("one", "sigma", "sigmabar", "g1".."g20", "point").
const std::string& basis_name(int id);
/// Inverse of basis_name; returns -1 if not a basis name.
int basis_id(const std::string& name);
const BasisElement& basis_element(int id);

using GramH11 = std::vector<std::vector<Rat>>;  // 20x20 symmetric

/// A cohomology class: sparse rational vector over the 24-element basis.
class CohClass {
 public:
  CohClass() = default;
  static CohClass unit() { return basis(kOne); }
  static CohClass basis(int id, Rat c = 1);

  bool is_zero() const { return coeffs_.empty(); }
  const Rat& coeff(int id) const;
  void set(int id, Rat c);
  const std::map<int, Rat>& coeffs() const { return coeffs_; }

  CohClass& operator+=(const CohClass& o);
  CohClass& operator-=(const CohClass& o);
  CohClass& operator*=(const Rat& c);
  friend CohClass operator+(CohClass a, const CohClass& b) { return a += b; }
  friend CohClass operator-(CohClass a, const CohClass& b) { return a -= b; }
  friend CohClass operator*(const Rat& c, CohClass a) { return a *= c; }
  friend bool operator==(const CohClass& a, const CohClass& b) { return a.coeffs_ == b.coeffs_; }

  /// Part of the given real degree (0, 2 or 4).
  CohClass degree_part(int degree) const;
  /// True if supported only in the given real degrees.
  bool supported_in(std::initializer_list<int> degrees) const;

  std::string to_string() const;

 private:
  std::map<int, Rat> coeffs_;  // zero coefficients never stored
};

/// A class viewed in the Mukai lattice; rk/c1/v2 read off the grading.
struct MukaiVector {
  CohClass c;

  MukaiVector() = default;
  explicit MukaiVector(CohClass cls) : c(std::move(cls)) {}
  /// (r, D, n) with D a degree-2 class.
  MukaiVector(const Rat& r, const CohClass& d, const Rat& n);

  Rat rk() const { return c.coeff(kOne); }
  CohClass c1() const { return c.degree_part(2); }
  Rat v2() const { return c.coeff(kPoint); }

  friend bool operator==(const MukaiVector& a, const MukaiVector& b) { return a.c == b.c; }
};

class HodgeBasis {
 public:
  /// Default Gram on the (1,1) block: diag(1, -1, ..., -1).
  static HodgeBasis standard();
  /// Throws SingularGram if gram is not symmetric invertible 20x20.
  static HodgeBasis with_gram(GramH11 gram);

  /// Full 24x24 intersection matrix entry ∫ b_i b_j.
  const Rat& pairing(int i, int j) const { return pairing_[i][j]; }
  /// Dual basis element: the unique class with ∫ b_j · dual(i) = δ_ij.
  const CohClass& dual(int id) const { return duals_[id]; }

  const GramH11& gram_h11() const { return gram_; }

 private:
  explicit HodgeBasis(GramH11 gram);
  GramH11 gram_;
  std::array<std::array<Rat, kBasisSize>, kBasisSize> pairing_;
  std::array<CohClass, kBasisSize> duals_;
};

// -- ring operations ---------------------------------------------------------

/// Cup product, truncated above degree 4.
CohClass cup(const HodgeBasis& h, const CohClass& a, const CohClass& b);

/// ∫_S: the coefficient of point.
Rat integrate(const CohClass& a);

/// x^∨: negates the degree-2 component.
MukaiVector dualize(const MukaiVector& x);

/// Mukai pairing (x, y) = -∫ x^∨ y.
Rat mukai_pairing(const HodgeBasis& h, const MukaiVector& x, const MukaiVector& y);

/// All 24 pairs (basis id, dual class).
std::vector<std::pair<int, CohClass>> dual_basis(const HodgeBasis& h);

/// exp of a purely degree-2 class: 1 + t + t^2/2 (truncates above degree 4).
/// Throws Error when t has parts outside degree 2.
CohClass exp_h2(const HodgeBasis& h, const CohClass& t);

// -- Todd data ---------------------------------------------------------------

struct ToddData {
  static CohClass td();           // 1 + 2*point
  static CohClass sqrt_td();      // 1 + point
  static CohClass inv_sqrt_td();  // 1 - point
};

// -- Kunneth decompositions of the diagonal ----------------------------------

enum class KunnethKind { Diagonal, DiagonalTodd };

struct KunnethTerm {
  CohClass left, right;
  int pL, qL;  // Hodge type of the left factor (homogeneous by construction)
  int pR, qR;  // Hodge type of the dual block the right factor came from
};

/// Diagonal: sum_b b ⊗ b^∨.  DiagonalTodd: sum_b b ⊗ (b^∨ · td).
std::vector<KunnethTerm> kunneth(const HodgeBasis& h, KunnethKind kind);

/// Same decomposition after an invertible change of basis on the (1,1) block.
/// Used to probe that the operators built from the decomposition do not
/// depend on its presentation.
std::vector<KunnethTerm> kunneth_with_h11_basis(const HodgeBasis& h, KunnethKind kind,
                                                const std::vector<std::vector<Rat>>& change);

}  // namespace k3
