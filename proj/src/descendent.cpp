#include "k3/descendent.hpp"

#include <algorithm>
#include <sstream>

#include "k3/errors.hpp"

namespace k3 {

Monomial::Monomial(std::vector<Generator> gens) : gens_(std::move(gens)) {
  std::sort(gens_.begin(), gens_.end());
}

int Monomial::weight() const {
  int w = 0;
  for (const auto& g : gens_) w += g.index;
  return w;
}

int Monomial::realization_degree() const {
  int d = 0;
  for (const auto& g : gens_) {
    const auto& b = basis_element(g.basis);
    d += 2 * g.index - b.p + b.q;
  }
  return d;
}

Monomial Monomial::times(const Monomial& o) const {
  std::vector<Generator> merged;
  merged.reserve(gens_.size() + o.gens_.size());
  std::merge(gens_.begin(), gens_.end(), o.gens_.begin(), o.gens_.end(),
             std::back_inserter(merged));
  Monomial m;
  m.gens_ = std::move(merged);
  return m;
}

Monomial Monomial::times(Generator g) const {
  Monomial m = *this;
  m.gens_.insert(std::upper_bound(m.gens_.begin(), m.gens_.end(), g), g);
  return m;
}

Monomial Monomial::without_slot(size_t at) const {
  Monomial m = *this;
  m.gens_.erase(m.gens_.begin() + static_cast<long>(at));
  return m;
}

DescendentPoly DescendentPoly::constant(Rat c) {
  DescendentPoly p;
  p.add_term(Monomial::one(), c);
  return p;
}

DescendentPoly DescendentPoly::generator(int index, int basis) {
  if (index < 0) throw NegativeIndex("generator index must be >= 0");
  return from_monomial(Monomial::single({index, basis}));
}

DescendentPoly DescendentPoly::from_monomial(Monomial m, Rat c) {
  DescendentPoly p;
  p.add_term(m, c);
  return p;
}

const Rat& DescendentPoly::coeff(const Monomial& m) const {
  static const Rat zero = 0;
  auto it = terms_.find(m);
  return it == terms_.end() ? zero : it->second;
}

void DescendentPoly::add_term(const Monomial& m, const Rat& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

DescendentPoly& DescendentPoly::operator+=(const DescendentPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

DescendentPoly& DescendentPoly::operator-=(const DescendentPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

DescendentPoly& DescendentPoly::operator*=(const Rat& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

DescendentPoly operator*(const DescendentPoly& a, const DescendentPoly& b) {
  DescendentPoly r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma.times(mb), ca * cb);
  return r;
}

int DescendentPoly::max_index() const {
  int m = -1;
  for (const auto& [mon, c] : terms_)
    for (const auto& g : mon.gens()) m = std::max(m, g.index);
  return m;
}

DescendentPoly expand_linear(int index, const CohClass& cls) {
  if (index < 0) throw NegativeIndex("expand_linear: index must be >= 0");
  DescendentPoly p;
  for (const auto& [id, c] : cls.coeffs()) p.add_term(Monomial::single({index, id}), c);
  return p;
}

// -- grammar --------------------------------------------------------------------

std::string to_string(const Monomial& m) {
  std::string s;
  for (size_t i = 0; i < m.gens().size(); ++i) {
    if (i) s += " * ";
    const auto& g = m.gens()[i];
    s += "ch[" + std::to_string(g.index) + "](" + basis_name(g.basis) + ")";
  }
  return s;
}

std::string to_string(const DescendentPoly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    if (!first) s += " + ";
    first = false;
    s += rat_to_string(c);
    if (!m.is_constant()) s += " * " + to_string(m);
  }
  return s;
}

namespace {

struct Cursor {
  const std::string& s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) throw ParseError("expected '" + std::string(1, c) + "' at position " +
                                  std::to_string(pos) + " in '" + s + "'");
  }
  bool done() {
    skip_ws();
    return pos >= s.size();
  }
};

std::string read_token(Cursor& c, const char* extra = "") {
  c.skip_ws();
  size_t start = c.pos;
  auto is_tok = [&](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' ||
           std::string(extra).find(ch) != std::string::npos;
  };
  while (c.pos < c.s.size() && is_tok(c.s[c.pos])) ++c.pos;
  if (c.pos == start) throw ParseError("expected token at position " + std::to_string(start) +
                                       " in '" + c.s + "'");
  return c.s.substr(start, c.pos - start);
}

Rat read_rat(Cursor& c) {
  c.skip_ws();
  size_t start = c.pos;
  if (c.pos < c.s.size() && (c.s[c.pos] == '-' || c.s[c.pos] == '+')) ++c.pos;
  while (c.pos < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.pos]))) ++c.pos;
  if (c.pos < c.s.size() && c.s[c.pos] == '/') {
    ++c.pos;
    while (c.pos < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.pos]))) ++c.pos;
  }
  if (c.pos == start) throw ParseError("expected rational at position " + std::to_string(start));
  return parse_rat(c.s.substr(start, c.pos - start));
}

Generator read_generator(Cursor& c) {
  std::string tok = read_token(c);
  if (tok != "ch") throw ParseError("expected 'ch', got '" + tok + "'");
  c.expect('[');
  Rat idx = read_rat(c);
  c.expect(']');
  c.expect('(');
  std::string name = read_token(c);
  c.expect(')');
  if (denominator(idx) != 1 || idx < 0) throw ParseError("bad generator index");
  int id = basis_id(name);
  if (id < 0) throw ParseError("unknown basis element '" + name + "'");
  return {static_cast<int>(numerator(idx)), id};
}

}  // namespace

DescendentPoly parse_poly(const std::string& text) {
  Cursor c{text};
  DescendentPoly p;
  bool first = true;
  while (!c.done()) {
    Rat sign = 1;
    if (!first) {
      c.skip_ws();
      if (c.eat('+')) {
      } else if (c.eat('-')) {
        sign = -1;
      } else {
        throw ParseError("expected '+' or '-' at position " + std::to_string(c.pos));
      }
    }
    first = false;
    c.skip_ws();
    Rat coeff = 1;
    bool have_coeff = false;
    if (c.pos < c.s.size() &&
        (std::isdigit(static_cast<unsigned char>(c.s[c.pos])) || c.s[c.pos] == '-')) {
      coeff = read_rat(c);
      have_coeff = true;
    }
    std::vector<Generator> gens;
    if (have_coeff) {
      while (c.eat('*')) gens.push_back(read_generator(c));
    } else {
      gens.push_back(read_generator(c));
      while (c.eat('*')) gens.push_back(read_generator(c));
    }
    p.add_term(Monomial(std::move(gens)), sign * coeff);
  }
  return p;
}

CohClass parse_coh_class(const std::string& text) {
  Cursor c{text};
  CohClass cls;
  bool first = true;
  while (!c.done()) {
    Rat sign = 1;
    if (!first) {
      if (c.eat('+')) {
      } else if (c.eat('-')) {
        sign = -1;
      } else {
        throw ParseError("expected '+' or '-' in class expression");
      }
    } else {
      c.skip_ws();
      if (c.pos < c.s.size() && c.s[c.pos] == '-') {
        sign = -1;
        ++c.pos;
      }
    }
    first = false;
    c.skip_ws();
    Rat coeff = 1;
    if (c.pos < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.pos]))) {
      coeff = read_rat(c);
      if (!c.eat('*')) {
        // bare number: only legal as a multiple of "one"
        cls.set(kOne, cls.coeff(kOne) + sign * coeff);
        continue;
      }
    }
    std::string name = read_token(c);
    int id = basis_id(name);
    if (id < 0) throw ParseError("unknown basis element '" + name + "'");
    cls.set(id, cls.coeff(id) + sign * coeff);
  }
  return cls;
}

// -- algebra maps -----------------------------------------------------------------

AlgebraMap AlgebraMap::identity() {
  return AlgebraMap("id", [](Generator g) { return DescendentPoly::generator(g.index, g.basis); });
}

DescendentPoly AlgebraMap::apply(const DescendentPoly& p) const {
  DescendentPoly r;
  for (const auto& [m, c] : p.terms()) {
    DescendentPoly acc = DescendentPoly::constant(c);
    for (const auto& g : m.gens()) acc = acc * image_(g);
    r += acc;
  }
  return r;
}

AlgebraMap AlgebraMap::compose_after(const AlgebraMap& inner) const {
  AlgebraMap outer = *this;
  return AlgebraMap(name_ + "∘" + inner.name_,
                    [outer, inner](Generator g) { return outer.apply(inner.image(g)); });
}

}  // namespace k3
