#include "opal/quadratic.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <stdexcept>

namespace opal {

namespace {

std::vector<Perm> all_perms(int n) {
  Perm p(n);
  for (int i = 0; i < n; ++i) p[i] = i + 1;
  std::vector<Perm> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

int tree_qweight(const GenFamily &fam, const TreeCode &code) {
  int w = 0;
  for (int v : code)
    if (v < 0) w += fam.gens[-v - 1].weight;
  return w;
}

// Scale so the leading coefficient is 1; used only for deduplication.
using RowKey = std::vector<std::pair<int, std::pair<std::int64_t, std::int64_t>>>;

RowKey row_key(const SparseRow &row) {
  RowKey k;
  if (row.empty()) return k;
  Rational lead = row.front().second.inverse();
  k.reserve(row.size());
  for (const auto &[c, v] : row) {
    Rational s = v * lead;
    k.emplace_back(c, std::make_pair(s.num(), s.den()));
  }
  return k;
}

std::atomic<long> next_presentation_id{0};

} // namespace

Subspace::Subspace(std::vector<TreeCode> basis)
    : ambient(std::move(basis)), space((int)ambient.size()) {
  for (int i = 0; i < (int)ambient.size(); ++i) index.emplace(ambient[i], i);
}

SparseRow Subspace::to_row(const OperadElement &e) const {
  std::map<int, Rational> m;
  for (const auto &[code, v] : e.terms()) {
    auto it = index.find(code);
    if (it == index.end())
      throw std::invalid_argument("Subspace: monomial outside ambient basis");
    m[it->second] += v;
  }
  return sparse_from(m);
}

OperadElement Subspace::to_element(const GenFamily &fam, const SparseRow &row,
                                   int arity) const {
  OperadElement e(fam, arity);
  for (const auto &[c, v] : row) e.add_term(ambient[c], v);
  return e;
}

QuadraticPresentation::QuadraticPresentation(std::string name,
                                             const GenFamily &family,
                                             std::vector<OperadElement> relations)
    : name_(std::move(name)), family_(&intern_family(family)),
      id_(next_presentation_id++) {
  for (const auto &r : relations) {
    if (r.arity() != 3)
      throw std::invalid_argument("presentation '" + name_ + "': relations are arity 3");
    if (!same_family(r.family(), *family_))
      throw std::invalid_argument("presentation '" + name_ +
                                  "': relation over a different family");
    relations_.push_back(transport(r, *family_, 0));
  }
  for (const auto &r : relations_) {
    if (r.is_zero()) continue;
    int deg = tree_degree(*family_, r.terms().begin()->first);
    int w = tree_qweight(*family_, r.terms().begin()->first);
    for (const auto &[code, v] : r.terms())
      if (tree_degree(*family_, code) != deg || tree_qweight(*family_, code) != w)
        throw std::invalid_argument("presentation '" + name_ +
                                    "': relation not homogeneous");
  }
}

std::shared_ptr<const Subspace> QuadraticPresentation::relation_span(int n) const {
  if (n < 3) throw std::invalid_argument("relation_span: arity >= 3");
  auto hit = cache_.find(n);
  if (hit != cache_.end()) return hit->second;

  auto sub = std::make_shared<Subspace>(free_basis(*family_, n));
  std::set<RowKey> seen;
  auto insert_elem = [&](const OperadElement &e) {
    if (e.is_zero()) return;
    SparseRow row = sub->to_row(e);
    auto key = row_key(row);
    if (!seen.insert(std::move(key)).second) return;
    sub->space.insert(std::move(row));
  };

  const auto perms = all_perms(n);
  if (n == 3) {
    for (const auto &r : relations_)
      for (const auto &sigma : perms) insert_elem(act(sigma, r));
  } else {
    auto prev = relation_span(n - 1);
    std::vector<OperadElement> gen_elems;
    for (int g = 0; g < family_->dim(); ++g)
      gen_elems.push_back(make_monomial(*family_, node(g, leaf(1), leaf(2))));
    for (const auto &row : prev->space.rows()) {
      OperadElement v = prev->to_element(*family_, row, n - 1);
      std::vector<OperadElement> composites;
      for (const auto &ge : gen_elems) {
        for (int i = 1; i <= n - 1; ++i) composites.push_back(graft(v, i, ge));
        for (int j = 1; j <= 2; ++j) composites.push_back(graft(ge, j, v));
      }
      for (const auto &c : composites)
        for (const auto &sigma : perms) insert_elem(act(sigma, c));
    }
  }
  cache_.emplace(n, sub);
  return sub;
}

long long QuadraticPresentation::quotient_dim(int n) const {
  if (n < 1) throw std::invalid_argument("quotient_dim: arity >= 1");
  if (n == 1) return 1;
  if (n == 2) return (int)family_->dim();
  auto span = relation_span(n);
  return span->ambient_dim() - span->dim();
}

std::map<int, long long> QuadraticPresentation::graded_quotient_dims(int n) const {
  auto span = relation_span(n);
  std::map<int, long long> ambient_w, rank_w;
  for (const auto &code : span->ambient) ++ambient_w[tree_qweight(*family_, code)];
  for (const auto &row : span->space.rows()) {
    int w = tree_qweight(*family_, span->ambient[row.front().first]);
    for (const auto &[c, v] : row)
      if (tree_qweight(*family_, span->ambient[c]) != w)
        throw std::logic_error("graded_quotient_dims: ideal row not weight-homogeneous");
    ++rank_w[w];
  }
  std::map<int, long long> out;
  for (const auto &[w, amb] : ambient_w) out[w] = amb - rank_w[w];
  return out;
}

bool QuadraticPresentation::holds_in(const OperadElement &e) const {
  if (e.is_zero()) return true;
  auto span = relation_span(e.arity());
  return span->contains(e);
}

namespace {

struct Mu_i_nu {
  int mu;      // root generator
  int nu;      // inner generator
  int i;       // composition slot (1 or 2)
  int l[3];    // leaf labelling as a permutation of {1,2,3}
};

Mu_i_nu decompose3(const TreeCode &code) {
  if (tree_arity(code) != 3 || code[0] >= 0)
    throw std::invalid_argument("koszul_pair: need an arity-3 tree monomial");
  Mu_i_nu d{};
  d.mu = -code[0] - 1;
  if (code[1] < 0) {
    d.nu = -code[1] - 1;
    d.i = 1;
    d.l[0] = code[2];
    d.l[1] = code[3];
    d.l[2] = code[4];
  } else {
    d.nu = -code[2] - 1;
    d.i = 2;
    d.l[0] = code[1];
    d.l[1] = code[3];
    d.l[2] = code[4];
  }
  return d;
}

} // namespace

Rational koszul_pair_monomials(const GenPairing &pairing, const TreeCode &a,
                               const TreeCode &b) {
  Mu_i_nu da = decompose3(a), db = decompose3(b);
  if (da.i != db.i) return Rational(0);
  if (da.l[0] != db.l[0] || da.l[1] != db.l[1] || da.l[2] != db.l[2])
    return Rational(0);
  auto mu = pairing.table.find({da.mu, db.mu});
  auto nu = pairing.table.find({da.nu, db.nu});
  if (mu == pairing.table.end() || nu == pairing.table.end()) return Rational(0);
  Perm l{da.l[0], da.l[1], da.l[2]};
  int s = perm_sign(l);
  if (da.i % 2) s = -s; // (-1)^i
  return Rational(s) * mu->second * nu->second;
}

Rational koszul_pair(const GenPairing &pairing, const OperadElement &a,
                     const OperadElement &b) {
  Rational total(0);
  for (const auto &[ca, va] : a.terms())
    for (const auto &[cb, vb] : b.terms())
      total += va * vb * koszul_pair_monomials(pairing, ca, cb);
  return total;
}

Subspace orthogonal_complement(const QuadraticPresentation &P,
                               const GenFamily &dual_family,
                               const GenPairing &pairing) {
  auto span = P.relation_span(3);
  Subspace dual(free_basis(dual_family, 3));
  // images[m] = pairings of the m-th dual monomial with each relation row
  std::vector<SparseRow> images(dual.ambient_dim());
  for (int m = 0; m < dual.ambient_dim(); ++m) {
    std::map<int, Rational> img;
    for (int r = 0; r < (int)span->space.rows().size(); ++r) {
      Rational v(0);
      for (const auto &[c, coeff] : span->space.rows()[r])
        v += coeff * koszul_pair_monomials(pairing, span->ambient[c], dual.ambient[m]);
      if (!v.is_zero()) img[r] = v;
    }
    images[m] = sparse_from(img);
  }
  for (auto &k : kernel_basis(dual.ambient_dim(), images)) dual.space.insert(std::move(k));
  return dual;
}

OperadElement transport(const OperadElement &e, const GenFamily &target, int offset) {
  OperadElement out(target, e.arity());
  for (const auto &[code, v] : e.terms()) {
    TreeCode t = code;
    for (auto &c : t)
      if (c < 0) c -= offset;
    out += make_monomial(target, t, v);
  }
  return out;
}

const GenFamily &combined_family(const QuadraticPresentation &P,
                                 const QuadraticPresentation &Q) {
  GenFamily fam;
  fam.name = P.name() + "+" + Q.name();
  int off = P.family().dim();
  for (const auto &g : P.family().gens) {
    Generator h = g;
    h.weight = 0;
    fam.gens.push_back(h);
  }
  for (const auto &g : Q.family().gens) {
    Generator h = g;
    h.weight = 1;
    for (auto &[j, c] : h.swap_image) j += off;
    fam.gens.push_back(h);
  }
  return intern_family(std::move(fam));
}

CombinedPresentation combine(const QuadraticPresentation &P,
                             const QuadraticPresentation &Q,
                             const std::vector<OperadElement> &delta_graph) {
  const GenFamily &fam = combined_family(P, Q);
  int off = P.family().dim();
  std::vector<OperadElement> rels;
  for (const auto &r : P.relations()) rels.push_back(transport(r, fam, 0));
  for (const auto &d : delta_graph) {
    if (!same_family(d.family(), fam))
      throw std::invalid_argument("combine: delta must live over the combined family");
    rels.push_back(d);
  }
  for (const auto &r : Q.relations()) rels.push_back(transport(r, fam, off));
  return CombinedPresentation{
      &fam, off,
      QuadraticPresentation(P.name() + "." + Q.name(), fam, std::move(rels))};
}

namespace {

// Shape predicates on canonical codes. A node's children start at pos+1;
// the left child occupies one slot when it is a leaf.
bool is_balanced_PQQ(const GenFamily &fam, const TreeCode &c, int q_off) {
  // root P, both children internal Q nodes with two leaf children
  return c.size() == 7 && c[0] < 0 && -c[0] - 1 < q_off && c[1] < 0 &&
         -c[1] - 1 >= q_off && c[2] > 0 && c[3] > 0 && c[4] < 0 &&
         -c[4] - 1 >= q_off && c[5] > 0 && c[6] > 0;
}

bool is_P_of_Q3(const GenFamily &fam, const TreeCode &c, int q_off) {
  // root P with one leaf child and one full Q subtree on 3 leaves
  if (c.size() != 7 || c[0] >= 0 || -c[0] - 1 >= q_off) return false;
  // left child internal: nodes at 1 and one of {2,3}; right child leaf at end
  if (c[1] < 0 && c[6] > 0) {
    int g1 = -c[1] - 1;
    int g2 = c[2] < 0 ? -c[2] - 1 : (c[3] < 0 ? -c[3] - 1 : -1);
    return g2 >= 0 && g1 >= q_off && g2 >= q_off;
  }
  // left child leaf, right child internal
  if (c[1] > 0 && c[2] < 0) {
    int g1 = -c[2] - 1;
    int g2 = c[3] < 0 ? -c[3] - 1 : (c[4] < 0 ? -c[4] - 1 : -1);
    return g2 >= 0 && g1 >= q_off && g2 >= q_off;
  }
  return false;
}

bool is_P3_of_Q2(const GenFamily &fam, const TreeCode &c, int q_off) {
  // exactly one Q node, sitting above two leaves; other two nodes P
  int qcount = 0, pcount = 0;
  for (std::size_t p = 0; p < c.size(); ++p) {
    if (c[p] >= 0) continue;
    int g = -c[p] - 1;
    if (g >= q_off) {
      ++qcount;
      if (!(p + 2 < c.size() && c[p + 1] > 0 && c[p + 2] > 0)) return false;
    } else {
      ++pcount;
    }
  }
  return qcount == 1 && pcount == 2;
}

} // namespace

ComposePieces compose_product_pieces(const CombinedPresentation &pq,
                                     const QuadraticPresentation &P,
                                     const QuadraticPresentation &Q) {
  const GenFamily &fam = *pq.family;
  const int off = pq.q_offset;
  Subspace amb(free_basis(fam, 4));
  const auto perms4 = all_perms(4);

  long long countA = 0, countB = 0, countC = 0;
  for (const auto &c : amb.ambient) {
    if (is_balanced_PQQ(fam, c, off)) ++countA;
    if (is_P_of_Q3(fam, c, off)) ++countB;
    if (is_P3_of_Q2(fam, c, off)) ++countC;
  }

  auto rank_of = [&](const std::vector<OperadElement> &seeds) {
    RowSpace rs(amb.ambient_dim());
    std::set<RowKey> seen;
    for (const auto &e : seeds)
      for (const auto &sigma : perms4) {
        OperadElement im = act(sigma, e);
        if (im.is_zero()) continue;
        SparseRow row = amb.to_row(im);
        if (!seen.insert(row_key(row)).second) continue;
        rs.insert(std::move(row));
      }
    return (long long)rs.rank();
  };

  // inner Q(3) relations under P(2)
  std::vector<OperadElement> relB;
  {
    auto qspan = Q.relation_span(3);
    for (const auto &row : qspan->space.rows()) {
      OperadElement r = transport(qspan->to_element(Q.family(), row, 3), fam, off);
      for (int p = 0; p < off; ++p) {
        OperadElement pe = make_monomial(fam, node(p, leaf(1), leaf(2)));
        relB.push_back(graft(pe, 2, r));
      }
    }
  }
  // inner P(3) relations with a Q bracket grafted at a leaf
  std::vector<OperadElement> relC;
  {
    auto pspan = P.relation_span(3);
    for (const auto &row : pspan->space.rows()) {
      OperadElement r = transport(pspan->to_element(P.family(), row, 3), fam, 0);
      for (int q = off; q < fam.dim(); ++q) {
        OperadElement qe = make_monomial(fam, node(q, leaf(1), leaf(2)));
        for (int j = 1; j <= 3; ++j) relC.push_back(graft(r, j, qe));
      }
    }
  }

  ComposePieces pieces;
  pieces.balanced = countA;
  pieces.p2_q3 = countB - rank_of(relB);
  pieces.p3_q2 = countC - rank_of(relC);
  return pieces;
}

DimReport check_distributive(const QuadraticPresentation &P,
                             const QuadraticPresentation &Q,
                             const std::vector<OperadElement> &delta_graph) {
  DimReport rep;
  rep.check = "distributive(" + P.name() + "," + Q.name() + ")";
  CombinedPresentation pq = combine(P, Q, delta_graph);
  const GenFamily &fam = *pq.family;
  const int off = pq.q_offset;

  // Load-time audit: the S_3 closure of the graph must project
  // bijectively onto the Q(2)oP(2) monomial span.
  {
    Subspace amb(free_basis(fam, 3));
    std::vector<int> qp_cols;
    for (int m = 0; m < amb.ambient_dim(); ++m) {
      const TreeCode &c = amb.ambient[m];
      int root = -c[0] - 1;
      int inner = c[1] < 0 ? -c[1] - 1 : -c[2] - 1;
      if (root >= off && inner < off) qp_cols.push_back(m);
    }
    RowSpace closure(amb.ambient_dim()), proj(amb.ambient_dim());
    for (const auto &d : delta_graph)
      for (const auto &sigma : all_perms(3)) {
        OperadElement e = act(sigma, d);
        if (e.is_zero()) continue;
        closure.insert(amb.to_row(e));
      }
    for (const auto &row : closure.rows()) {
      SparseRow cut;
      for (const auto &[c, v] : row)
        if (std::binary_search(qp_cols.begin(), qp_cols.end(), c))
          cut.emplace_back(c, v);
      proj.insert(std::move(cut));
    }
    rep.dim("delta_closure", closure.rank());
    rep.require(proj.rank() == closure.rank(),
                "delta closure is not a graph over Q(2)oP(2)");
    rep.require(proj.rank() == (int)qp_cols.size(),
                "delta does not cover all of Q(2)oP(2)");
  }

  auto graded = pq.pres.graded_quotient_dims(4);
  ComposePieces pieces = compose_product_pieces(pq, P, Q);
  long long w1 = graded.count(1) ? graded[1] : 0;
  long long w2 = graded.count(2) ? graded[2] : 0;
  rep.dim("PQ^1(4)", w1);
  rep.dim("PQ^2(4)", w2);
  rep.dim("P(2)o(Q(2)xQ(2))", pieces.balanced);
  rep.dim("P(2)oQ(3)", pieces.p2_q3);
  rep.dim("P(3)oQ(2)", pieces.p3_q2);
  rep.dim("compose_product(4)", pieces.total());
  rep.dim("PQ^1+PQ^2", w1 + w2);
  rep.require(w1 == pieces.p3_q2, "degree +1 block mismatch");
  rep.require(w2 == pieces.balanced + pieces.p2_q3, "degree +2 block mismatch");
  return rep;
}

long long hadamard_dim(const QuadraticPresentation &P,
                       const QuadraticPresentation &Q, int n) {
  return P.quotient_dim(n) * Q.quotient_dim(n);
}

QuadraticPresentation white_product(const QuadraticPresentation &P1,
                                    const QuadraticPresentation &P2) {
  const GenFamily &A = P1.family();
  const GenFamily &B = P2.family();
  GenFamily prod;
  prod.name = A.name + "x" + B.name;
  auto pidx = [&](int i, int j) { return i * B.dim() + j; };
  for (int i = 0; i < A.dim(); ++i)
    for (int j = 0; j < B.dim(); ++j) {
      Generator g;
      g.name = A.gens[i].name + "x" + B.gens[j].name;
      g.degree = A.gens[i].degree + B.gens[j].degree;
      g.weight = 0;
      for (const auto &[i2, c1] : A.gens[i].swap_image)
        for (const auto &[j2, c2] : B.gens[j].swap_image)
          g.swap_image.emplace_back(pidx(i2, j2), c1 * c2);
      g.glyph_open = g.name + "(";
      g.glyph_sep = ",";
      g.glyph_close = ")";
      prod.gens.push_back(std::move(g));
    }

  const GenFamily &prodf = intern_family(std::move(prod));
  Subspace amb1(free_basis(A, 3)), amb2(free_basis(B, 3)), amb12(free_basis(prodf, 3));
  const int D2 = amb2.ambient_dim();
  auto coord = [&](int m1, int m2) { return m1 * D2 + m2; };

  // W = R1 (x) TE2(3) + TE1(3) (x) R2 inside TE1(3) (x) TE2(3)
  RowSpace W(amb1.ambient_dim() * D2);
  {
    auto s1 = P1.relation_span(3);
    for (const auto &row : s1->space.rows())
      for (int m2 = 0; m2 < D2; ++m2) {
        SparseRow r;
        for (const auto &[c, v] : row) r.emplace_back(coord(c, m2), v);
        std::sort(r.begin(), r.end());
        W.insert(std::move(r));
      }
    auto s2 = P2.relation_span(3);
    for (const auto &row : s2->space.rows())
      for (int m1 = 0; m1 < amb1.ambient_dim(); ++m1) {
        SparseRow r;
        for (const auto &[c, v] : row) r.emplace_back(coord(m1, c), v);
        std::sort(r.begin(), r.end());
        W.insert(std::move(r));
      }
  }

  // Psi(mono over E1(x)E2) = +/- (mono over E1) (x) (mono over E2):
  // un-interleaving the node symbols (e1 f1 e2 f2) -> (e1 e2 f1 f2)
  // costs (-1)^{|f1||e2|}.
  std::vector<SparseRow> images(amb12.ambient_dim());
  for (int m = 0; m < amb12.ambient_dim(); ++m) {
    const TreeCode &c = amb12.ambient[m];
    TreeCode c1 = c, c2 = c;
    int root = -c[0] - 1;
    std::size_t inner_pos = c[1] < 0 ? 1 : 2;
    int inner = -c[inner_pos] - 1;
    int ri = root / B.dim(), rj = root % B.dim();
    int ii = inner / B.dim(), ij = inner % B.dim();
    c1[0] = -(ri + 1);
    c1[inner_pos] = -(ii + 1);
    c2[0] = -(rj + 1);
    c2[inner_pos] = -(ij + 1);
    int s = (parity(B.gens[rj].degree) && parity(A.gens[ii].degree)) ? -1 : 1;
    SparseRow img{{coord(amb1.index.at(c1), amb2.index.at(c2)), Rational(s)}};
    images[m] = W.reduce(std::move(img));
  }

  std::vector<OperadElement> rels;
  for (auto &k : kernel_basis(amb12.ambient_dim(), images)) {
    OperadElement e(prodf, 3);
    for (const auto &[c, v] : k) e.add_term(amb12.ambient[c], v);
    rels.push_back(std::move(e));
  }
  return QuadraticPresentation(P1.name() + "oM" + P2.name(), prodf,
                               std::move(rels));
}

} // namespace opal
