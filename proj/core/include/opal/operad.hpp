#ifndef OPAL_OPERAD_HPP
#define OPAL_OPERAD_HPP

#include "opal/kernel.hpp"
#include "opal/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace opal {

/// One basis element of the binary generator space E(2).
///
/// `swap_image` is the image of this basis element under the leaf
/// transposition, written in the generator basis (a signed permutation in
/// every case this workbench needs: the Lie bracket maps to its own
/// negative, the Leibniz bracket to its distinct transpose, suspended
/// generators pick up the sign twist). The involution property is checked
/// when a family is built.
struct Generator {
  std::string name;   // count/display name; a transpose pair shares it
  int degree = 0;
  int weight = 0;     // Q-generator count for weight-graded presentations
  std::vector<std::pair<int, Rational>> swap_image;

  // display/parse glyphs: pair style "(1,2)" when open is nonempty,
  // infix style "1·2" otherwise
  std::string glyph_open, glyph_sep, glyph_close;
  bool transposed = false; // print children in reversed order
};

struct GenFamily {
  std::string name;
  std::vector<Generator> gens;

  int dim() const { return (int)gens.size(); }

  /// Throws unless every swap_image squares to the identity and
  /// preserves degree and weight.
  void validate() const;
};

/// Whether two families have identical generator data (used to guard
/// element arithmetic across presentations).
bool same_family(const GenFamily &a, const GenFamily &b);

/// Returns a reference with stable address for the life of the process.
/// Elements keep plain pointers to their family, so every family an
/// element is built over goes through here; equal families are shared.
const GenFamily &intern_family(GenFamily f);

/// A planar-tree monomial in preorder encoding: an internal node is
/// -(generator index + 1) followed by the codes of its two children; a
/// leaf is its (1-based) label. Normal form puts the child with the
/// smaller minimal leaf on the left at every node, so each abstract
/// leaf-labelled binary tree has exactly one representative.
using TreeCode = std::vector<int>;

int tree_arity(const TreeCode &code);
int tree_degree(const GenFamily &fam, const TreeCode &code);
std::map<std::string, int> tree_weight(const GenFamily &fam, const TreeCode &code);

/// Formal sum of tree monomials of a common arity over one family.
class OperadElement {
public:
  OperadElement() : fam_(nullptr), arity_(0) {}
  OperadElement(const GenFamily &fam, int arity) : fam_(&fam), arity_(arity) {}

  static OperadElement monomial(const GenFamily &fam, const TreeCode &code,
                                const Rational &coeff = Rational(1));
  /// The arity-1 identity.
  static OperadElement identity(const GenFamily &fam);

  const GenFamily &family() const { return *fam_; }
  int arity() const { return arity_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<TreeCode, Rational> &terms() const { return terms_; }

  void add_term(const TreeCode &code, const Rational &coeff);
  OperadElement &operator+=(const OperadElement &o);
  OperadElement &operator-=(const OperadElement &o);
  OperadElement &operator*=(const Rational &c);
  friend OperadElement operator+(OperadElement a, const OperadElement &b) { return a += b; }
  friend OperadElement operator-(OperadElement a, const OperadElement &b) { return a -= b; }
  friend OperadElement operator*(const Rational &c, OperadElement e) { return e *= c; }
  friend bool operator==(const OperadElement &a, const OperadElement &b) {
    return a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }

  std::string str() const;

private:
  const GenFamily *fam_;
  int arity_;
  std::map<TreeCode, Rational> terms_;
};

/// Builds a single monomial from a raw (not necessarily canonical) planar
/// tree and normalizes it.
OperadElement make_monomial(const GenFamily &fam, const TreeCode &raw,
                            const Rational &coeff = Rational(1));

/// Raw tree constructors.
TreeCode leaf(int label);
TreeCode node(int gen_index, const TreeCode &left, const TreeCode &right);

/// Partial composition: inserts g at the i-th leaf of f (1-based), with
/// the leaf relabelling of the composition and the Koszul sign from g's
/// symbols crossing the labelled subtrees of f that follow the insertion
/// point. Bilinear; result normalized.
OperadElement graft(const OperadElement &f, int i, const OperadElement &g);

/// Symmetric-group action: relabels leaf l to perm[l-1] and renormalizes.
OperadElement act(const Perm &perm, const OperadElement &e);

/// Canonical monomial basis of the free operad T E(n). Arities above 6
/// are rejected; every claim verified here lives at arity <= 5.
std::vector<TreeCode> free_basis(const GenFamily &fam, int n);

std::string tree_str(const GenFamily &fam, const TreeCode &code);

} // namespace opal

#endif
