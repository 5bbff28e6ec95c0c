#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "k3/hodge.hpp"

namespace k3 {

// The free commutative algebra on symbols ch[i](b), i >= 0, b a basis element
// of the cohomology model, with exact rational coefficients.  All cohomology
// is even, so there are no signs anywhere.

struct Generator {
  int index;  // >= 0; the ch_{i<0} = 0 convention lives in the operators
  int basis;  // basis id, 0..23

  friend auto operator<=>(const Generator&, const Generator&) = default;
};

/// Multiset of generators in canonical (sorted) order.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<Generator> gens);
  static Monomial one() { return Monomial(); }
  static Monomial single(Generator g) { return Monomial({g}); }

  const std::vector<Generator>& gens() const { return gens_; }
  bool is_constant() const { return gens_.empty(); }
  int degree() const { return static_cast<int>(gens_.size()); }

  /// Sum of indices.
  int weight() const;
  /// Sum of 2i - p + q over the generators.
  int realization_degree() const;

  Monomial times(const Monomial& o) const;
  Monomial times(Generator g) const;
  /// Removes one occurrence of the generator at slot position `at`.
  Monomial without_slot(size_t at) const;

  friend auto operator<=>(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Generator> gens_;  // sorted
};

/// Sparse polynomial: monomial -> coefficient, no zero coefficients stored.
class DescendentPoly {
 public:
  DescendentPoly() = default;
  static DescendentPoly zero() { return {}; }
  static DescendentPoly constant(Rat c);
  static DescendentPoly one() { return constant(1); }
  static DescendentPoly generator(int index, int basis);
  static DescendentPoly from_monomial(Monomial m, Rat c = 1);

  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  const std::map<Monomial, Rat>& terms() const { return terms_; }
  const Rat& coeff(const Monomial& m) const;

  void add_term(const Monomial& m, const Rat& c);

  DescendentPoly& operator+=(const DescendentPoly& o);
  DescendentPoly& operator-=(const DescendentPoly& o);
  DescendentPoly& operator*=(const Rat& c);
  friend DescendentPoly operator+(DescendentPoly a, const DescendentPoly& b) { return a += b; }
  friend DescendentPoly operator-(DescendentPoly a, const DescendentPoly& b) { return a -= b; }
  friend DescendentPoly operator*(const Rat& c, DescendentPoly a) { return a *= c; }
  friend DescendentPoly operator*(const DescendentPoly& a, const DescendentPoly& b);
  friend bool operator==(const DescendentPoly& a, const DescendentPoly& b) {
    return a.terms_ == b.terms_;
  }

  /// Largest generator index appearing, or -1 for constants.
  int max_index() const;

 private:
  std::map<Monomial, Rat> terms_;
};

/// ch_i of a general class, expanded by linearity over the basis.
/// Throws NegativeIndex for i < 0.
DescendentPoly expand_linear(int index, const CohClass& cls);

// -- text grammar --------------------------------------------------------------
//
//   poly    := term (" + " term)*          |  "0"
//   term    := rat (" * " gen)*            (constant term is just the rat)
//   gen     := "ch[" int "](" basisname ")"
//   rat     := int | int "/" posint        (lowest terms)
//
// Printing is canonical: terms ordered lexicographically by the sorted
// generator list (a proper prefix sorts first), coefficients in lowest terms.
// parse(print(p)) is the identity.

std::string to_string(const Monomial& m);
std::string to_string(const DescendentPoly& p);
DescendentPoly parse_poly(const std::string& text);

/// Parses a cohomology class written as e.g. "g1 + 2*point - 1/2*sigma".
CohClass parse_coh_class(const std::string& text);

// -- algebra maps ---------------------------------------------------------------

/// Unital algebra endomorphism determined by its values on generators.
class AlgebraMap {
 public:
  using Image = std::function<DescendentPoly(Generator)>;
  AlgebraMap() = default;
  AlgebraMap(std::string name, Image image) : name_(std::move(name)), image_(std::move(image)) {}

  static AlgebraMap identity();

  const std::string& name() const { return name_; }
  DescendentPoly image(Generator g) const { return image_(g); }
  DescendentPoly apply(const DescendentPoly& p) const;
  AlgebraMap compose_after(const AlgebraMap& inner) const;  // this ∘ inner

 private:
  std::string name_;
  Image image_;
};

}  // namespace k3
