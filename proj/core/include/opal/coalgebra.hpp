#ifndef OPAL_COALGEBRA_HPP
#define OPAL_COALGEBRA_HPP

#include "opal/kernel.hpp"
#include "opal/rational.hpp"
#include "opal/report.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace opal {

struct GradedSpace {
  std::vector<GradedSymbol> basis;
  int index_of(const std::string &name) const;
  int dim() const { return (int)basis.size(); }
};

/// Letters of the coalgebra engine: either atoms (basis symbols of a
/// concrete or formal space) or canonicalized formal applications like
/// (x,y), [x,y], l3(x,y,z), optionally decorated by a formal square-zero
/// differential d. Interned per pool; the id is the canonical order used
/// inside symmetric words.
using LetterId = int;

enum class OpSymmetry { none, antisymmetric };

struct LetterInfo {
  std::string display;
  int degree = 0;
  bool is_app = false;
  std::string op;
  OpSymmetry sym = OpSymmetry::none;
  std::vector<LetterId> args;
  bool dmark = false;
  LetterId base = -1; // un-decorated letter when dmark
};

class SymbolPool {
public:
  LetterId atom(const std::string &name, int degree);
  /// Canonicalized application; second component is the sign picked up
  /// by sorting antisymmetric arguments, or 0 when the term vanishes.
  std::pair<LetterId, int> app(const std::string &op, int op_degree,
                               OpSymmetry sym, std::vector<LetterId> args);
  /// d-decoration;  sign 0 when the letter is already decorated (d^2=0).
  std::pair<LetterId, int> dmark(LetterId arg);

  const LetterInfo &info(LetterId l) const { return letters_[l]; }
  int degree(LetterId l) const { return letters_[l].degree; }
  /// Degree of the shifted letter s x.
  int sdeg(LetterId l) const { return letters_[l].degree + 1; }
  int size() const { return (int)letters_.size(); }

private:
  LetterId intern(LetterInfo info);
  std::vector<LetterInfo> letters_;
  std::map<std::string, LetterId> by_display_;
};

/// Symmetric word over s g: letters sorted by id, zero when a repeated
/// letter is odd after the shift. TensorWord: nonempty sequence of
/// symmetric factors, an element of T- s S- s g.
using SymWord = std::vector<LetterId>;
using TensorWord = std::vector<SymWord>;

using SymElem = std::map<SymWord, Rational>;
using Elem = std::map<TensorWord, Rational>;
using PairElem = std::map<std::pair<TensorWord, TensorWord>, Rational>;
using TripleElem = std::map<std::vector<TensorWord>, Rational>;

/// Sorts a raw letter sequence into canonical order; nullopt when the
/// word vanishes (repeated letter with odd shifted degree).
std::optional<std::pair<SymWord, int>> sort_word(const SymbolPool &pool,
                                                 std::vector<LetterId> raw);

int word_sdeg_sum(const SymbolPool &pool, const SymWord &w);
/// Degree of the factor s(c): sum of shifted letter degrees plus one.
int factor_degree(const SymbolPool &pool, const SymWord &w);
int tensor_degree(const SymbolPool &pool, const TensorWord &w);
int tensor_weight(const TensorWord &w);

std::string word_str(const SymbolPool &pool, const TensorWord &w);

/// Commutative coproduct on S-V: all (i, n-i)-unshuffle splits with
/// Koszul signs; empty for single letters.
std::vector<std::tuple<SymWord, SymWord, Rational>>
delta_sym(const SymbolPool &pool, const SymWord &w);

/// Zinbiel coproduct on T-(letters): unshuffle splits of the first n-1
/// letters, the last letter fixed rightmost.
std::vector<std::tuple<std::vector<LetterId>, std::vector<LetterId>, Rational>>
delta_zinb(const SymbolPool &pool, const std::vector<LetterId> &w);

/// Mixed commutative coproduct of the cofree Zinb . sCom coalgebra:
/// odd splits of one factor spread through marked unshuffles, minus the
/// transposition of that part, plus the component-wise last-factor part.
std::vector<std::tuple<TensorWord, TensorWord, Rational>>
delta_mixed(const SymbolPool &pool, const TensorWord &w);

/// Zinbiel coproduct on TensorWords (factors as letters).
std::vector<std::tuple<TensorWord, TensorWord, Rational>>
delta_zinb_tensor(const SymbolPool &pool, const TensorWord &w);

/// One corestriction piece: a g-level multilinear map of a fixed arity
/// profile. `eval` receives the peeled blocks (letters in canonical
/// order) and returns the g-valued result; every coalgebra-level sign is
/// the engine's business.
struct Corestriction {
  std::vector<int> profile;
  int f_degree = 0;
  std::function<std::map<LetterId, Rational>(
      const std::vector<std::vector<LetterId>> &)> eval;
  int coder_degree() const { return coderivation_degree(f_degree, profile); }
};

enum class CoalgebraKind { commutative, zinbiel, mixed };

/// A coderivation given by finitely many corestriction pieces of a
/// common degree.
struct Coderivation {
  std::vector<Corestriction> pieces;
  int degree = 0;

  static Coderivation from(Corestriction piece);
  Coderivation &add(Corestriction piece);
};

/// Extension of the corestriction to the mixed coalgebra: the unique
/// coderivation with the given corestriction. Components pick a pivot
/// factor, bypass earlier factors through an unshuffle, split one factor
/// by the symmetric coproduct, and absorb the output into the survivor.
Elem apply_mixed(const SymbolPool &pool, const Coderivation &c, const Elem &e);
Elem apply_mixed_word(const SymbolPool &pool, const Coderivation &c,
                      const TensorWord &w);

/// Extension to the symmetric coalgebra S-(s g) (profile must be a
/// single block).
SymElem apply_sym(const SymbolPool &pool, const Coderivation &c, const SymElem &e);

/// Extension to the Zinbiel coalgebra over plain letters (profile must
/// be (1,...,1)); used by the sh Leibniz machinery.
std::map<std::vector<LetterId>, Rational>
apply_zinb(const SymbolPool &pool, const Coderivation &c,
           const std::map<std::vector<LetterId>, Rational> &e);

/// Checks the co-Leibniz identities of the given kind on every basis
/// word of total weight <= W over `atoms`.
bool is_coderivation(SymbolPool &pool, const std::vector<LetterId> &atoms,
                     const Coderivation &c, CoalgebraKind kind, int W,
                     std::string *witness = nullptr);

/// All canonical TensorWords of total weight exactly `weight` over the
/// given letters.
std::vector<TensorWord> enumerate_words(const SymbolPool &pool,
                                        const std::vector<LetterId> &atoms,
                                        int weight);
std::vector<SymWord> enumerate_sym_words(const SymbolPool &pool,
                                         const std::vector<LetterId> &atoms,
                                         int weight);

/// Finite-dimensional Lie-Leibniz algebra by structure constants.
struct LieLeibnizAlgebra {
  GradedSpace space;
  int p = 0, q = 1; // bidegree: Lie and Leibniz bracket degrees
  // constants[i][j] = the expansion of the bracket of basis i, j
  std::vector<std::vector<std::vector<std::pair<int, Rational>>>> lie, leib;

  std::vector<std::pair<int, Rational>> lie_at(int i, int j) const { return lie[i][j]; }
  std::vector<std::pair<int, Rational>> leib_at(int i, int j) const { return leib[i][j]; }

  /// Same algebra with every degree collapsed to its parity; brackets of
  /// bidegree with (even, odd) parities become bidegree (0,1) on the
  /// nose, which is what the bar construction is stated for.
  LieLeibnizAlgebra parity_collapsed() const;
};

/// Checks graded antisymmetry + Jacobi for the Lie bracket, the odd
/// Leibniz identity, and the two mixed relations on all basis triples.
DimReport check_ll_axioms(const LieLeibnizAlgebra &alg);

/// A dg Lie algebra presented for the derived bracket: lie constants plus
/// a differential d (degree dd, squares to zero, derivation).
struct DgLie {
  GradedSpace space;
  int p = 0;  // bracket degree
  int dd = 1; // differential degree
  std::vector<std::vector<std::vector<std::pair<int, Rational>>>> lie;
  std::vector<std::vector<std::pair<int, Rational>>> d;
};

/// Validates d and returns the Lie-Leibniz algebra with
/// leib(x,y) = (-1)^{|p|} (dx, y).
LieLeibnizAlgebra derived_bracket(const DgLie &in);

/// The coderivation d_Lie + d_Leib on T- s S- s g for a bidegree-(0,1)
/// algebra (call parity_collapsed() first for the (-2,-1) examples).
/// Also returns the pool and atom list used.
struct BarComplex {
  SymbolPool pool;
  std::vector<LetterId> atoms;
  Coderivation dLie, dLeib;

  Coderivation dLL() const;
};

BarComplex bar_codifferential(const LieLeibnizAlgebra &alg);

/// c o c on every basis word of weight <= W; empty iff square zero.
std::vector<std::pair<TensorWord, Rational>>
coderivation_square(const SymbolPool &pool, const std::vector<LetterId> &atoms,
                    const Coderivation &c, int W);

/// Witness k for the arity relation (a_i) ~_k (b_i), or nullopt.
std::optional<int> arity_relation(const std::vector<int> &a,
                                  const std::vector<int> &b);

} // namespace opal

#endif
