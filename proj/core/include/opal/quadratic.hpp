#ifndef OPAL_QUADRATIC_HPP
#define OPAL_QUADRATIC_HPP

#include "opal/linalg.hpp"
#include "opal/operad.hpp"
#include "opal/report.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace opal {

/// Exact row-reduced subspace of T E(n) over an enumerated monomial basis.
struct Subspace {
  std::vector<TreeCode> ambient;
  std::map<TreeCode, int> index;
  RowSpace space;

  explicit Subspace(std::vector<TreeCode> basis);

  int dim() const { return space.rank(); }
  int ambient_dim() const { return (int)ambient.size(); }

  SparseRow to_row(const OperadElement &e) const;
  OperadElement to_element(const GenFamily &fam, const SparseRow &row, int arity) const;
  bool contains(const OperadElement &e) const { return space.contains(to_row(e)); }
};

/// A binary quadratic operad presentation (E, R): generators with their
/// S_2 action plus homogeneous arity-3 relations in normal form.
class QuadraticPresentation {
public:
  /// The family is interned and the relations are re-expressed over the
  /// interned instance, so elements handed out stay valid for the life
  /// of the process.
  QuadraticPresentation(std::string name, const GenFamily &family,
                        std::vector<OperadElement> relations);

  const std::string &name() const { return name_; }
  const GenFamily &family() const { return *family_; }
  const std::vector<OperadElement> &relations() const { return relations_; }
  long id() const { return id_; }

  /// Span of the quadratic ideal at arity n (>= 3): the S_3 closure of R
  /// at n = 3, then each lower-arity span composed with a generator on
  /// either side and closed under S_n. Cached per arity.
  std::shared_ptr<const Subspace> relation_span(int n) const;

  /// dim T E(n) - dim of the ideal; 1 at n = 1 and dim E at n = 2.
  long long quotient_dim(int n) const;

  /// Quotient dimension per Q-generator weight (needs weight-flagged
  /// generators; every relation must be weight-homogeneous).
  std::map<int, long long> graded_quotient_dims(int n) const;

  /// Membership of e in the ideal span at its arity.
  bool holds_in(const OperadElement &e) const;

private:
  std::string name_;
  const GenFamily *family_;
  std::vector<OperadElement> relations_;
  long id_;
  mutable std::map<int, std::shared_ptr<const Subspace>> cache_;
};

/// Pairing table between a presentation's generators and a candidate dual
/// family: value of <e_i, f_j> on the binary generator spaces.
struct GenPairing {
  const GenFamily *left;
  const GenFamily *right;
  std::map<std::pair<int, int>, Rational> table;
};

/// Signed Koszul-duality pairing of two arity-3 monomials written as
/// mu o_i nu (x) l: (-1)^i (-1)^l delta_ij delta_ll' <mu,mu'><nu,nu'>.
/// Extended bilinearly by koszul_pair on elements.
Rational koszul_pair_monomials(const GenPairing &pairing, const TreeCode &a,
                               const TreeCode &b);
Rational koszul_pair(const GenPairing &pairing, const OperadElement &a,
                     const OperadElement &b);

/// All elements of the dual T E'(3) orthogonal to every relation of P.
Subspace orthogonal_complement(const QuadraticPresentation &P,
                               const GenFamily &dual_family,
                               const GenPairing &pairing);

/// Combined presentation (E_P + E_Q, R_P + Delta + R_Q) for a rewrite map
/// delta given by graph elements x - delta(x) over the combined family.
/// P generators carry weight 0, Q generators weight 1.
struct CombinedPresentation {
  const GenFamily *family;       // P gens first, then Q gens (interned)
  int q_offset;                  // index of the first Q generator
  QuadraticPresentation pres;    // R_P + Delta + R_Q over `family`
};

/// The interned P-then-Q generator family the delta graph is written over.
const GenFamily &combined_family(const QuadraticPresentation &P,
                                 const QuadraticPresentation &Q);

CombinedPresentation combine(const QuadraticPresentation &P,
                             const QuadraticPresentation &Q,
                             const std::vector<OperadElement> &delta_graph);

/// Re-express an element over a larger family whose generators include
/// the source family's at `offset`.
OperadElement transport(const OperadElement &e, const GenFamily &target, int offset);

/// The three monomial families of the arity-4 composition product
/// (P(2)o(Q(2)(x)Q(2)), P(2)oQ(3), P(3)oQ(2)) with the inner P- and
/// Q-relations imposed, enumerated as in the dimension count of the
/// distributive-law theorem.
struct ComposePieces {
  long long balanced;  // P(2) o (Q(2) (x) Q(2))
  long long p2_q3;     // P(2) o Q(3)
  long long p3_q2;     // P(3) o Q(2)
  long long total() const { return balanced + p2_q3 + p3_q2; }
};

ComposePieces compose_product_pieces(const CombinedPresentation &pq,
                                     const QuadraticPresentation &P,
                                     const QuadraticPresentation &Q);

/// Distributive-law verification at arity 4: weight-graded quotient dims
/// of the combined presentation against the independently enumerated
/// composition-product dimensions.
DimReport check_distributive(const QuadraticPresentation &P,
                             const QuadraticPresentation &Q,
                             const std::vector<OperadElement> &delta_graph);

/// Arity-wise tensor (Hadamard) dimension: product of quotient dims.
long long hadamard_dim(const QuadraticPresentation &P,
                       const QuadraticPresentation &Q, int n);

/// Manin white product (E1 (x) E2, Psi^{-1}(R1 (x) TE2(3) + TE1(3) (x) R2)).
QuadraticPresentation white_product(const QuadraticPresentation &P1,
                                    const QuadraticPresentation &P2);

} // namespace opal

#endif
