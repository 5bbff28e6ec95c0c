#include "k3/hodge.hpp"

#include <sstream>

namespace k3 {

Int factorial(int n) {
  Int r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

std::string rat_to_string(const Rat& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rat(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad rational: '" + s + "'");
  }
}

namespace {

std::vector<BasisElement> make_elements() {
  std::vector<BasisElement> e;
  e.push_back({"one", 0, 0, 0});
  e.push_back({"sigma", 2, 2, 0});
  e.push_back({"sigmabar", 2, 0, 2});
  for (int i = 1; i <= kH11Size; ++i) e.push_back({"g" + std::to_string(i), 2, 1, 1});
  e.push_back({"point", 4, 2, 2});
  return e;
}

const std::vector<BasisElement>& elements() {
  static const std::vector<BasisElement> e = make_elements();
  return e;
}

}  // namespace

const std::string& basis_name(int id) { return elements().at(id).name; }

int basis_id(const std::string& name) {
  for (int i = 0; i < kBasisSize; ++i)
    if (elements()[i].name == name) return i;
  return -1;
}

const BasisElement& basis_element(int id) { return elements().at(id); }

// -- CohClass -----------------------------------------------------------------

CohClass CohClass::basis(int id, Rat c) {
  CohClass r;
  r.set(id, std::move(c));
  return r;
}

const Rat& CohClass::coeff(int id) const {
  static const Rat zero = 0;
  auto it = coeffs_.find(id);
  return it == coeffs_.end() ? zero : it->second;
}

void CohClass::set(int id, Rat c) {
  if (c == 0)
    coeffs_.erase(id);
  else
    coeffs_[id] = std::move(c);
}

CohClass& CohClass::operator+=(const CohClass& o) {
  for (const auto& [id, c] : o.coeffs_) set(id, coeff(id) + c);
  return *this;
}

CohClass& CohClass::operator-=(const CohClass& o) {
  for (const auto& [id, c] : o.coeffs_) set(id, coeff(id) - c);
  return *this;
}

CohClass& CohClass::operator*=(const Rat& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [id, v] : coeffs_) v *= c;
  return *this;
}

CohClass CohClass::degree_part(int degree) const {
  CohClass r;
  for (const auto& [id, c] : coeffs_)
    if (basis_element(id).degree == degree) r.set(id, c);
  return r;
}

bool CohClass::supported_in(std::initializer_list<int> degrees) const {
  for (const auto& [id, c] : coeffs_) {
    bool ok = false;
    for (int d : degrees) ok |= basis_element(id).degree == d;
    if (!ok) return false;
  }
  return true;
}

std::string CohClass::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [id, c] : coeffs_) {
    if (!first) s += " + ";
    first = false;
    s += rat_to_string(c) + "*" + basis_name(id);
  }
  return s;
}

MukaiVector::MukaiVector(const Rat& r, const CohClass& d, const Rat& n) {
  if (!d.supported_in({2})) throw Error("MukaiVector: middle component must be degree 2");
  c = d;
  c.set(kOne, r);
  c.set(kPoint, n);
}

// -- HodgeBasis ---------------------------------------------------------------

namespace {

// Exact Gauss-Jordan inverse; throws SingularGram if not invertible.
std::vector<std::vector<Rat>> invert(std::vector<std::vector<Rat>> m) {
  const size_t n = m.size();
  std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n, 0));
  for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) throw SingularGram("gram_h11 is singular");
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    Rat d = m[col][col];
    for (size_t j = 0; j < n; ++j) {
      m[col][j] /= d;
      inv[col][j] /= d;
    }
    for (size_t row = 0; row < n; ++row) {
      if (row == col || m[row][col] == 0) continue;
      Rat f = m[row][col];
      for (size_t j = 0; j < n; ++j) {
        m[row][j] -= f * m[col][j];
        inv[row][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace

HodgeBasis HodgeBasis::standard() {
  GramH11 g(kH11Size, std::vector<Rat>(kH11Size, 0));
  g[0][0] = 1;
  for (int i = 1; i < kH11Size; ++i) g[i][i] = -1;
  return HodgeBasis(std::move(g));
}

HodgeBasis HodgeBasis::with_gram(GramH11 gram) { return HodgeBasis(std::move(gram)); }

HodgeBasis::HodgeBasis(GramH11 gram) : gram_(std::move(gram)) {
  if (gram_.size() != kH11Size) throw SingularGram("gram_h11 must be 20x20");
  for (const auto& row : gram_)
    if (row.size() != kH11Size) throw SingularGram("gram_h11 must be 20x20");
  for (int i = 0; i < kH11Size; ++i)
    for (int j = 0; j < i; ++j)
      if (gram_[i][j] != gram_[j][i]) throw SingularGram("gram_h11 must be symmetric");

  for (auto& row : pairing_)
    for (auto& v : row) v = 0;
  pairing_[kOne][kPoint] = pairing_[kPoint][kOne] = 1;
  pairing_[kSigma][kSigmaBar] = pairing_[kSigmaBar][kSigma] = 1;
  for (int i = 0; i < kH11Size; ++i)
    for (int j = 0; j < kH11Size; ++j)
      pairing_[kGammaFirst + i][kGammaFirst + j] = gram_[i][j];

  // Duals: ∫ b_j · b_i^∨ = δ_ij.  The off-(1,1) part is fixed by the
  // hyperbolic pairs (one, point) and (sigma, sigmabar); the (1,1) block
  // needs the inverse Gram (this also certifies invertibility).
  auto ginv = invert(gram_);
  duals_[kOne] = CohClass::basis(kPoint);
  duals_[kPoint] = CohClass::basis(kOne);
  duals_[kSigma] = CohClass::basis(kSigmaBar);
  duals_[kSigmaBar] = CohClass::basis(kSigma);
  for (int i = 0; i < kH11Size; ++i) {
    CohClass d;
    for (int j = 0; j < kH11Size; ++j) d.set(kGammaFirst + j, ginv[i][j]);
    duals_[kGammaFirst + i] = d;
  }
}

// -- ring operations ----------------------------------------------------------

CohClass cup(const HodgeBasis& h, const CohClass& a, const CohClass& b) {
  CohClass r;
  for (const auto& [ia, ca] : a.coeffs()) {
    for (const auto& [ib, cb] : b.coeffs()) {
      int deg = basis_element(ia).degree + basis_element(ib).degree;
      if (deg > 4) continue;  // truncated ring
      Rat c = ca * cb;
      if (ia == kOne) {
        r.set(ib, r.coeff(ib) + c);
      } else if (ib == kOne) {
        r.set(ia, r.coeff(ia) + c);
      } else {
        // two degree-2 classes multiply into (∫ a·b) * point
        r.set(kPoint, r.coeff(kPoint) + c * h.pairing(ia, ib));
      }
    }
  }
  return r;
}

Rat integrate(const CohClass& a) { return a.coeff(kPoint); }

MukaiVector dualize(const MukaiVector& x) {
  CohClass r = x.c;
  for (const auto& [id, c] : x.c.coeffs())
    if (basis_element(id).degree == 2) r.set(id, -c);
  return MukaiVector(r);
}

Rat mukai_pairing(const HodgeBasis& h, const MukaiVector& x, const MukaiVector& y) {
  return -integrate(cup(h, dualize(x).c, y.c));
}

std::vector<std::pair<int, CohClass>> dual_basis(const HodgeBasis& h) {
  std::vector<std::pair<int, CohClass>> r;
  for (int i = 0; i < kBasisSize; ++i) r.emplace_back(i, h.dual(i));
  return r;
}

CohClass exp_h2(const HodgeBasis& h, const CohClass& t) {
  if (!t.supported_in({2})) throw Error("exp_h2: argument must be purely degree 2");
  CohClass r = CohClass::unit();
  r += t;
  CohClass sq = cup(h, t, t);
  sq *= Rat(1, 2);
  r += sq;
  return r;
}

CohClass ToddData::td() {
  CohClass r = CohClass::unit();
  r.set(kPoint, 2);
  return r;
}

CohClass ToddData::sqrt_td() {
  CohClass r = CohClass::unit();
  r.set(kPoint, 1);
  return r;
}

CohClass ToddData::inv_sqrt_td() {
  CohClass r = CohClass::unit();
  r.set(kPoint, -1);
  return r;
}

// -- Kunneth ------------------------------------------------------------------

namespace {

std::vector<KunnethTerm> kunneth_from_pairs(
    const HodgeBasis& h, KunnethKind kind,
    const std::vector<std::pair<CohClass, CohClass>>& h11_pairs) {
  std::vector<KunnethTerm> terms;
  auto push = [&](CohClass left, CohClass right, int pL, int qL, int pR, int qR) {
    if (kind == KunnethKind::DiagonalTodd) right = cup(h, right, ToddData::td());
    terms.push_back({std::move(left), std::move(right), pL, qL, pR, qR});
  };
  push(CohClass::basis(kOne), h.dual(kOne), 0, 0, 2, 2);
  push(CohClass::basis(kSigma), h.dual(kSigma), 2, 0, 0, 2);
  push(CohClass::basis(kSigmaBar), h.dual(kSigmaBar), 0, 2, 2, 0);
  for (const auto& [l, r] : h11_pairs) push(l, r, 1, 1, 1, 1);
  push(CohClass::basis(kPoint), h.dual(kPoint), 2, 2, 0, 0);
  return terms;
}

}  // namespace

std::vector<KunnethTerm> kunneth(const HodgeBasis& h, KunnethKind kind) {
  std::vector<std::pair<CohClass, CohClass>> pairs;
  for (int i = 0; i < kH11Size; ++i)
    pairs.emplace_back(CohClass::basis(kGammaFirst + i), h.dual(kGammaFirst + i));
  return kunneth_from_pairs(h, kind, pairs);
}

std::vector<KunnethTerm> kunneth_with_h11_basis(const HodgeBasis& h, KunnethKind kind,
                                                const std::vector<std::vector<Rat>>& change) {
  if (change.size() != kH11Size) throw Error("h11 change of basis must be 20x20");
  // New basis c_i = sum_j P_ij g_j, Gram' = P G P^T, duals via Gram'^{-1}.
  std::vector<std::vector<Rat>> gram2(kH11Size, std::vector<Rat>(kH11Size, 0));
  for (int i = 0; i < kH11Size; ++i)
    for (int j = 0; j < kH11Size; ++j) {
      Rat s = 0;
      for (int a = 0; a < kH11Size; ++a)
        for (int b = 0; b < kH11Size; ++b)
          s += change[i][a] * h.gram_h11()[a][b] * change[j][b];
      gram2[i][j] = s;
    }
  auto ginv = invert(gram2);
  std::vector<std::pair<CohClass, CohClass>> pairs;
  for (int i = 0; i < kH11Size; ++i) {
    CohClass ci;
    for (int j = 0; j < kH11Size; ++j)
      if (change[i][j] != 0) ci.set(kGammaFirst + j, change[i][j]);
    CohClass dual;
    for (int k = 0; k < kH11Size; ++k) {
      if (ginv[i][k] == 0) continue;
      for (int j = 0; j < kH11Size; ++j)
        if (change[k][j] != 0)
          dual.set(kGammaFirst + j, dual.coeff(kGammaFirst + j) + ginv[i][k] * change[k][j]);
    }
    pairs.emplace_back(std::move(ci), std::move(dual));
  }
  return kunneth_from_pairs(h, kind, pairs);
}

}  // namespace k3
