#include "opal/operad.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <stdexcept>

namespace opal {

void GenFamily::validate() const {
  for (int i = 0; i < dim(); ++i) {
    const Generator &g = gens[i];
    // swap twice = identity
    std::map<int, Rational> sq;
    for (const auto &[j, c] : g.swap_image) {
      if (gens[j].degree != g.degree || gens[j].weight != g.weight)
        throw std::invalid_argument("GenFamily '" + name +
                                    "': swap image must preserve degree/weight");
      for (const auto &[k, d] : gens[j].swap_image) sq[k] += c * d;
    }
    for (auto &[k, v] : sq) {
      Rational want = (k == i) ? Rational(1) : Rational(0);
      if (v != want)
        throw std::invalid_argument("GenFamily '" + name +
                                    "': swap action is not an involution");
    }
  }
}

bool same_family(const GenFamily &a, const GenFamily &b) {
  if (&a == &b) return true;
  if (a.gens.size() != b.gens.size()) return false;
  for (std::size_t i = 0; i < a.gens.size(); ++i)
    if (a.gens[i].name != b.gens[i].name || a.gens[i].degree != b.gens[i].degree ||
        a.gens[i].swap_image != b.gens[i].swap_image)
      return false;
  return true;
}

const GenFamily &intern_family(GenFamily f) {
  static std::mutex mu;
  static std::deque<GenFamily> pool;
  std::lock_guard<std::mutex> lock(mu);
  for (const auto &g : pool)
    if (g.name == f.name && same_family(g, f)) return g;
  f.validate();
  pool.push_back(std::move(f));
  return pool.back();
}

namespace {

struct Cursor {
  const TreeCode *code;
  std::size_t pos = 0;
  int next() { return (*code)[pos++]; }
};

struct Piece {
  TreeCode code;
  Rational coeff;
  int minleaf;
  int degree;
};

// Recursive normalization of a raw planar tree into canonical pieces.
std::vector<Piece> normalize_rec(const GenFamily &fam, Cursor &cur) {
  int v = cur.next();
  if (v > 0) return {{{v}, Rational(1), v, 0}};
  if (v == 0) throw std::invalid_argument("tree code: zero entry");
  int gen = -v - 1;
  if (gen >= fam.dim()) throw std::out_of_range("tree code: generator index");
  std::vector<Piece> lefts = normalize_rec(fam, cur);
  std::vector<Piece> rights = normalize_rec(fam, cur);
  std::vector<Piece> out;
  for (const auto &L : lefts)
    for (const auto &R : rights) {
      Rational c = L.coeff * R.coeff;
      bool flip = L.minleaf > R.minleaf;
      if (!flip) {
        Piece p;
        p.code.reserve(1 + L.code.size() + R.code.size());
        p.code.push_back(-(gen + 1));
        p.code.insert(p.code.end(), L.code.begin(), L.code.end());
        p.code.insert(p.code.end(), R.code.begin(), R.code.end());
        p.coeff = c;
        p.minleaf = std::min(L.minleaf, R.minleaf);
        p.degree = fam.gens[gen].degree + L.degree + R.degree;
        out.push_back(std::move(p));
      } else {
        // e(A,B) = (-1)^{|A||B|} (e.tau)(B,A)
        if (parity(L.degree) && parity(R.degree)) c = -c;
        for (const auto &[j, sw] : fam.gens[gen].swap_image) {
          Piece p;
          p.code.reserve(1 + L.code.size() + R.code.size());
          p.code.push_back(-(j + 1));
          p.code.insert(p.code.end(), R.code.begin(), R.code.end());
          p.code.insert(p.code.end(), L.code.begin(), L.code.end());
          p.coeff = c * sw;
          p.minleaf = std::min(L.minleaf, R.minleaf);
          p.degree = fam.gens[gen].degree + L.degree + R.degree;
          out.push_back(std::move(p));
        }
      }
    }
  return out;
}

} // namespace

int tree_arity(const TreeCode &code) {
  int n = 0;
  for (int v : code)
    if (v > 0) ++n;
  return n;
}

int tree_degree(const GenFamily &fam, const TreeCode &code) {
  int d = 0;
  for (int v : code)
    if (v < 0) d += fam.gens[-v - 1].degree;
  return d;
}

std::map<std::string, int> tree_weight(const GenFamily &fam, const TreeCode &code) {
  std::map<std::string, int> w;
  for (int v : code)
    if (v < 0) ++w[fam.gens[-v - 1].name];
  return w;
}

TreeCode leaf(int label) {
  if (label < 1) throw std::invalid_argument("leaf: labels are 1-based");
  return {label};
}

TreeCode node(int gen_index, const TreeCode &left, const TreeCode &right) {
  TreeCode c;
  c.reserve(1 + left.size() + right.size());
  c.push_back(-(gen_index + 1));
  c.insert(c.end(), left.begin(), left.end());
  c.insert(c.end(), right.begin(), right.end());
  return c;
}

OperadElement OperadElement::monomial(const GenFamily &fam, const TreeCode &code,
                                      const Rational &coeff) {
  return make_monomial(fam, code, coeff);
}

OperadElement OperadElement::identity(const GenFamily &fam) {
  OperadElement e(fam, 1);
  e.add_term({1}, Rational(1));
  return e;
}

void OperadElement::add_term(const TreeCode &code, const Rational &coeff) {
  if (coeff.is_zero()) return;
  auto it = terms_.find(code);
  if (it == terms_.end()) {
    terms_.emplace(code, coeff);
  } else {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

OperadElement &OperadElement::operator+=(const OperadElement &o) {
  if (fam_ == nullptr) *this = OperadElement(o.family(), o.arity());
  if (o.is_zero()) return *this;
  if (arity_ != o.arity_ || !same_family(*fam_, *o.fam_))
    throw std::invalid_argument("OperadElement: arity/family mismatch in sum");
  for (const auto &[c, v] : o.terms_) add_term(c, v);
  return *this;
}

OperadElement &OperadElement::operator-=(const OperadElement &o) {
  OperadElement neg = o;
  neg *= Rational(-1);
  return *this += neg;
}

OperadElement &OperadElement::operator*=(const Rational &c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto &[code, v] : terms_) v *= c;
  return *this;
}

OperadElement make_monomial(const GenFamily &fam, const TreeCode &raw,
                            const Rational &coeff) {
  Cursor cur{&raw};
  auto pieces = normalize_rec(fam, cur);
  if (cur.pos != raw.size()) throw std::invalid_argument("tree code: trailing data");
  OperadElement e(fam, tree_arity(raw));
  for (auto &p : pieces) e.add_term(p.code, p.coeff * coeff);
  return e;
}

OperadElement graft(const OperadElement &f, int i, const OperadElement &g) {
  if (f.is_zero() || g.is_zero())
    return OperadElement(f.family(), f.arity() + g.arity() - 1);
  if (!same_family(f.family(), g.family()))
    throw std::invalid_argument("graft: mixed generator families");
  const GenFamily &fam = f.family();
  int m = f.arity(), n = g.arity();
  if (i < 1 || i > m) throw std::out_of_range("graft: leaf index out of range");
  OperadElement out(fam, m + n - 1);
  for (const auto &[fc, fv] : f.terms()) {
    // locate leaf i and the degree of f's symbols after it in preorder
    std::size_t at = fc.size();
    int deg_after = 0;
    for (std::size_t p = 0; p < fc.size(); ++p) {
      if (fc[p] == i) at = p;
      else if (fc[p] < 0 && at != fc.size())
        deg_after += fam.gens[-fc[p] - 1].degree;
    }
    if (at == fc.size()) throw std::logic_error("graft: leaf not found");
    for (const auto &[gc, gv] : g.terms()) {
      TreeCode spliced;
      spliced.reserve(fc.size() + gc.size() - 1);
      for (std::size_t p = 0; p < fc.size(); ++p) {
        if (p == at) {
          for (int v : gc)
            spliced.push_back(v > 0 ? v + i - 1 : v);
        } else {
          int v = fc[p];
          spliced.push_back(v > i ? v + n - 1 : v);
        }
      }
      Rational c = fv * gv;
      if (parity(tree_degree(fam, gc)) && parity(deg_after)) c = -c;
      out += make_monomial(fam, spliced, c);
    }
  }
  return out;
}

OperadElement act(const Perm &perm, const OperadElement &e) {
  if ((int)perm.size() != e.arity())
    throw std::invalid_argument("act: permutation arity mismatch");
  if (!is_permutation(perm)) throw std::invalid_argument("act: not a permutation");
  OperadElement out(e.family(), e.arity());
  for (const auto &[code, v] : e.terms()) {
    TreeCode relabelled = code;
    for (auto &c : relabelled)
      if (c > 0) c = perm[c - 1];
    out += make_monomial(e.family(), relabelled, v);
  }
  return out;
}

namespace {

void basis_rec(const GenFamily &fam, const std::vector<int> &labels,
               std::vector<TreeCode> &out) {
  if (labels.size() == 1) {
    out.push_back({labels[0]});
    return;
  }
  // split into (A, B) with min(labels) in A; enumerate subsets of the rest
  int k = (int)labels.size() - 1; // elements after the minimum
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    // mask bit j set -> labels[j+1] goes to B; A keeps labels[0]
    std::vector<int> A{labels[0]}, B;
    for (int j = 0; j < k; ++j)
      (mask & (1u << j)) ? B.push_back(labels[j + 1]) : A.push_back(labels[j + 1]);
    std::vector<TreeCode> lefts, rights;
    basis_rec(fam, A, lefts);
    basis_rec(fam, B, rights);
    for (int g = 0; g < fam.dim(); ++g)
      for (const auto &L : lefts)
        for (const auto &R : rights)
          out.push_back(node(g, L, R));
  }
}

} // namespace

std::vector<TreeCode> free_basis(const GenFamily &fam, int n) {
  if (n < 1) throw std::invalid_argument("free_basis: arity must be positive");
  if (n > 6) throw std::invalid_argument("free_basis: arity cap is 6");
  std::vector<int> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = i + 1;
  std::vector<TreeCode> out;
  basis_rec(fam, labels, out);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::string tree_str_rec(const GenFamily &fam, const TreeCode &code,
                         std::size_t &pos, bool top) {
  int v = code[pos++];
  if (v > 0) return std::to_string(v);
  const Generator &g = fam.gens[-v - 1];
  std::string a = tree_str_rec(fam, code, pos, false);
  std::string b = tree_str_rec(fam, code, pos, false);
  if (g.transposed) std::swap(a, b);
  if (!g.glyph_open.empty())
    return g.glyph_open + a + g.glyph_sep + b + g.glyph_close;
  std::string s = a + g.glyph_sep + b;
  return top ? s : "(" + s + ")";
}

} // namespace

std::string tree_str(const GenFamily &fam, const TreeCode &code) {
  std::size_t pos = 0;
  return tree_str_rec(fam, code, pos, true);
}

std::string OperadElement::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto &[code, v] : terms_) {
    Rational c = v;
    if (first) {
      if (c.num() < 0) { s += "-"; c = -c; }
    } else {
      s += c.num() < 0 ? " - " : " + ";
      if (c.num() < 0) c = -c;
    }
    if (!c.is_one()) s += c.str() + " ";
    s += tree_str(*fam_, code);
    first = false;
  }
  return s;
}

} // namespace opal
