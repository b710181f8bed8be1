#include "opal/coalgebra.hpp"

#include <algorithm>
#include <stdexcept>

namespace opal {

int GradedSpace::index_of(const std::string &name) const {
  for (int i = 0; i < dim(); ++i)
    if (basis[i].name == name) return i;
  throw std::out_of_range("GradedSpace: no symbol '" + name + "'");
}

LetterId SymbolPool::intern(LetterInfo info) {
  auto it = by_display_.find(info.display);
  if (it != by_display_.end()) return it->second;
  LetterId id = (LetterId)letters_.size();
  by_display_.emplace(info.display, id);
  letters_.push_back(std::move(info));
  return id;
}

LetterId SymbolPool::atom(const std::string &name, int degree) {
  LetterInfo li;
  li.display = name;
  li.degree = degree;
  return intern(std::move(li));
}

std::pair<LetterId, int> SymbolPool::app(const std::string &op, int op_degree,
                                         OpSymmetry sym,
                                         std::vector<LetterId> args) {
  int sign = 1;
  if (sym == OpSymmetry::antisymmetric) {
    // insertion sort by id; each adjacent swap of (u,v) costs -(-1)^{|u||v|}
    for (std::size_t i = 1; i < args.size(); ++i)
      for (std::size_t j = i; j > 0 && args[j - 1] > args[j]; --j) {
        if (!(parity(degree(args[j - 1])) && parity(degree(args[j])))) sign = -sign;
        std::swap(args[j - 1], args[j]);
      }
    for (std::size_t i = 1; i < args.size(); ++i)
      if (args[i - 1] == args[i] && !parity(degree(args[i])))
        return {-1, 0}; // l(..,x,x,..) = -l(..,x,x,..) for even x
  }
  LetterInfo li;
  li.is_app = true;
  li.op = op;
  li.sym = sym;
  li.args = std::move(args);
  li.degree = op_degree;
  li.display = op + "(";
  for (std::size_t i = 0; i < li.args.size(); ++i) {
    if (i) li.display += ",";
    li.display += info(li.args[i]).display;
    li.degree += degree(li.args[i]);
  }
  li.display += ")";
  return {intern(std::move(li)), sign};
}

std::pair<LetterId, int> SymbolPool::dmark(LetterId arg) {
  if (letters_[arg].dmark) return {-1, 0};
  LetterInfo li;
  li.display = "d" + letters_[arg].display;
  li.degree = letters_[arg].degree + 1;
  li.dmark = true;
  li.base = arg;
  return {intern(std::move(li)), 1};
}

std::optional<std::pair<SymWord, int>> sort_word(const SymbolPool &pool,
                                                 std::vector<LetterId> raw) {
  int sign = 1;
  for (std::size_t i = 1; i < raw.size(); ++i)
    for (std::size_t j = i; j > 0 && raw[j - 1] > raw[j]; --j) {
      if (parity(pool.sdeg(raw[j - 1])) && parity(pool.sdeg(raw[j]))) sign = -sign;
      std::swap(raw[j - 1], raw[j]);
    }
  for (std::size_t i = 1; i < raw.size(); ++i)
    if (raw[i - 1] == raw[i] && parity(pool.sdeg(raw[i]))) return std::nullopt;
  return std::make_pair(std::move(raw), sign);
}

int word_sdeg_sum(const SymbolPool &pool, const SymWord &w) {
  int d = 0;
  for (LetterId l : w) d += pool.sdeg(l);
  return d;
}

int factor_degree(const SymbolPool &pool, const SymWord &w) {
  return word_sdeg_sum(pool, w) + 1;
}

int tensor_degree(const SymbolPool &pool, const TensorWord &w) {
  int d = 0;
  for (const auto &f : w) d += factor_degree(pool, f);
  return d;
}

int tensor_weight(const TensorWord &w) {
  int n = 0;
  for (const auto &f : w) n += (int)f.size();
  return n;
}

std::string word_str(const SymbolPool &pool, const TensorWord &w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += "(x)";
    s += "s(";
    for (std::size_t j = 0; j < w[i].size(); ++j) {
      if (j) s += " ";
      s += "s" + pool.info(w[i][j]).display;
    }
    s += ")";
  }
  return s;
}

std::vector<std::tuple<SymWord, SymWord, Rational>>
delta_sym(const SymbolPool &pool, const SymWord &w) {
  std::vector<std::tuple<SymWord, SymWord, Rational>> out;
  int n = (int)w.size();
  if (n < 2) return out;
  std::vector<int> degs(n);
  for (int i = 0; i < n; ++i) degs[i] = pool.sdeg(w[i]);
  for (int i = 1; i <= n - 1; ++i)
    for (const auto &[perm, sign] : unshuffles(i, n, &degs)) {
      SymWord left, right;
      for (int k = 0; k < i; ++k) left.push_back(w[perm[k] - 1]);
      for (int k = i; k < n; ++k) right.push_back(w[perm[k] - 1]);
      out.emplace_back(std::move(left), std::move(right), Rational(sign));
    }
  return out;
}

std::vector<std::tuple<std::vector<LetterId>, std::vector<LetterId>, Rational>>
delta_zinb(const SymbolPool &pool, const std::vector<LetterId> &w) {
  std::vector<std::tuple<std::vector<LetterId>, std::vector<LetterId>, Rational>> out;
  int n = (int)w.size();
  if (n < 2) return out;
  std::vector<int> degs(n - 1);
  for (int i = 0; i + 1 < n; ++i) degs[i] = pool.sdeg(w[i]);
  for (int i = 1; i <= n - 1; ++i)
    for (const auto &[perm, sign] : unshuffles(i, n - 1, &degs)) {
      std::vector<LetterId> left, right;
      for (int k = 0; k < i; ++k) left.push_back(w[perm[k] - 1]);
      for (int k = i; k < n - 1; ++k) right.push_back(w[perm[k] - 1]);
      right.push_back(w[n - 1]);
      out.emplace_back(std::move(left), std::move(right), Rational(sign));
    }
  return out;
}

namespace {

// Odd commutative coproduct on a shifted factor: (s (x) s) Delta0 s^{-1},
// i.e. each symmetric split (c', c'') picks up (-1)^{|c'|}.
std::vector<std::tuple<SymWord, SymWord, Rational>>
delta_factor_odd(const SymbolPool &pool, const SymWord &c) {
  auto splits = delta_sym(pool, c);
  for (auto &[l, r, v] : splits)
    if (parity(word_sdeg_sum(pool, l))) v = -v;
  return splits;
}

} // namespace

std::vector<std::tuple<TensorWord, TensorWord, Rational>>
delta_zinb_tensor(const SymbolPool &pool, const TensorWord &w) {
  std::vector<std::tuple<TensorWord, TensorWord, Rational>> out;
  int n = (int)w.size();
  if (n < 2) return out;
  std::vector<int> degs(n - 1);
  for (int i = 0; i + 1 < n; ++i) degs[i] = factor_degree(pool, w[i]);
  for (int i = 1; i <= n - 1; ++i)
    for (const auto &[perm, sign] : unshuffles(i, n - 1, &degs)) {
      TensorWord left, right;
      for (int k = 0; k < i; ++k) left.push_back(w[perm[k] - 1]);
      for (int k = i; k < n - 1; ++k) right.push_back(w[perm[k] - 1]);
      right.push_back(w[n - 1]);
      out.emplace_back(std::move(left), std::move(right), Rational(sign));
    }
  return out;
}

std::vector<std::tuple<TensorWord, TensorWord, Rational>>
delta_mixed(const SymbolPool &pool, const TensorWord &w) {
  std::vector<std::tuple<TensorWord, TensorWord, Rational>> out;
  int n = (int)w.size();

  // first family: the odd coproduct applied inside factor k, spread by
  // factor unshuffles keeping k left of the cut and the last factor right
  for (int k = 1; k <= n - 1; ++k) {
    auto splits = delta_factor_odd(pool, w[k - 1]);
    if (splits.empty()) continue;
    int pass = 0;
    for (int j = 0; j + 1 < k; ++j) pass += factor_degree(pool, w[j]);
    int pre = parity(pass) ? -1 : 1;
    // unshuffle degrees: the split factor counts with its post-coproduct
    // degree (one higher)
    std::vector<int> degs(n);
    for (int j = 0; j < n; ++j) degs[j] = factor_degree(pool, w[j]);
    degs[k - 1] += 1;
    for (int i = 1; i <= n - 1; ++i)
      for (const auto &[perm, sign] : unshuffles(i, n, &degs)) {
        bool k_left = false, n_right = false;
        for (int t = 0; t < i; ++t) k_left |= perm[t] == k;
        for (int t = i; t < n; ++t) n_right |= perm[t] == n;
        if (!k_left || !n_right) continue;
        for (const auto &[cl, cr, sv] : splits) {
          TensorWord left, right;
          for (int t = 0; t < i; ++t) {
            if (perm[t] == k) {
              left.push_back(cl);
              left.push_back(cr);
            } else {
              left.push_back(w[perm[t] - 1]);
            }
          }
          for (int t = i; t < n; ++t) right.push_back(w[perm[t] - 1]);
          Rational v = Rational(pre * sign) * sv;
          // the term itself, and -tau(term)
          int dl = tensor_degree(pool, left), dr = tensor_degree(pool, right);
          Rational tv = v;
          if (parity(dl) && parity(dr)) tv = -tv;
          out.emplace_back(left, right, v);
          out.emplace_back(right, left, -tv);
        }
      }
  }

  // last-factor family: componentwise tensor with the odd coproduct of
  // the last factor, over unshuffles of the leading factors (empty
  // blocks allowed)
  {
    auto splits = delta_factor_odd(pool, w[n - 1]);
    if (!splits.empty()) {
      int pass = 0;
      for (int j = 0; j + 1 < n; ++j) pass += factor_degree(pool, w[j]);
      int pre = parity(pass) ? -1 : 1;
      std::vector<int> degs(n - 1);
      for (int j = 0; j + 1 < n; ++j) degs[j] = factor_degree(pool, w[j]);
      for (int i = 0; i <= n - 1; ++i)
        for (const auto &[perm, sign] : unshuffles(i, n - 1, &degs)) {
          TensorWord lblock, rblock;
          for (int t = 0; t < i; ++t) lblock.push_back(w[perm[t] - 1]);
          for (int t = i; t < n - 1; ++t) rblock.push_back(w[perm[t] - 1]);
          int rdeg = tensor_degree(pool, rblock);
          for (const auto &[cl, cr, sv] : splits) {
            Rational v = Rational(pre * sign) * sv;
            if (parity(rdeg) && parity(word_sdeg_sum(pool, cl) + 1)) v = -v;
            TensorWord left = lblock, right = rblock;
            left.push_back(cl);
            right.push_back(cr);
            out.emplace_back(std::move(left), std::move(right), v);
          }
        }
    }
  }
  return out;
}

Coderivation Coderivation::from(Corestriction piece) {
  Coderivation c;
  c.degree = piece.coder_degree();
  c.pieces.push_back(std::move(piece));
  return c;
}

Coderivation &Coderivation::add(Corestriction piece) {
  if (pieces.empty())
    degree = piece.coder_degree();
  else if (piece.coder_degree() != degree)
    throw std::invalid_argument("Coderivation: mixed degrees");
  pieces.push_back(std::move(piece));
  return *this;
}

namespace {

void accumulate(Elem &out, TensorWord w, Rational v) {
  if (v.is_zero()) return;
  auto it = out.find(w);
  if (it == out.end()) {
    out.emplace(std::move(w), v);
  } else {
    it->second += v;
    if (it->second.is_zero()) out.erase(it);
  }
}

// All (a, len-a)-splits of a symmetric word by unshuffles.
std::vector<std::tuple<SymWord, SymWord, int>>
sym_splits(const SymbolPool &pool, const SymWord &w, int a) {
  std::vector<std::tuple<SymWord, SymWord, int>> out;
  int n = (int)w.size();
  std::vector<int> degs(n);
  for (int i = 0; i < n; ++i) degs[i] = pool.sdeg(w[i]);
  for (const auto &[perm, sign] : unshuffles(a, n, &degs)) {
    SymWord left, right;
    for (int k = 0; k < a; ++k) left.push_back(w[perm[k] - 1]);
    for (int k = a; k < n; ++k) right.push_back(w[perm[k] - 1]);
    out.emplace_back(std::move(left), std::move(right), sign);
  }
  return out;
}

// The window-local value: consumed blocks B_1..B_N (sizes = profile)
// plus the survivor word absorbed into the output factor.
void window_value(const SymbolPool &pool, const Corestriction &f,
                  const std::vector<SymWord> &blocks, const SymWord &survivor,
                  int extra_from, // k+1 for a middle split, N+1 for end split
                  Rational coeff, const TensorWord &prefix,
                  const TensorWord &suffix, Elem &out) {
  const int N = (int)f.profile.size();
  int E = 0;
  for (int t = 0; t + 1 < N; ++t)
    E += (word_sdeg_sum(pool, blocks[t]) + 1) * (N - 1 - t);
  {
    int total = 0;
    for (const auto &b : blocks) total += (int)b.size();
    int pos = 0;
    for (const auto &b : blocks)
      for (LetterId l : b) {
        ++pos;
        E += pool.sdeg(l) * (total - pos);
      }
  }
  for (int t = extra_from - 1; t < N; ++t)
    E += word_sdeg_sum(pool, blocks[t]) + 1;
  if (parity(E)) coeff = -coeff;

  std::vector<std::vector<LetterId>> g_blocks;
  g_blocks.reserve(blocks.size());
  for (const auto &b : blocks) g_blocks.push_back(b);
  for (const auto &[y, cy] : f.eval(g_blocks)) {
    std::vector<LetterId> raw{y};
    raw.insert(raw.end(), survivor.begin(), survivor.end());
    auto sorted = sort_word(pool, std::move(raw));
    if (!sorted) continue;
    TensorWord w = prefix;
    w.push_back(sorted->first);
    w.insert(w.end(), suffix.begin(), suffix.end());
    accumulate(out, std::move(w), coeff * cy * Rational(sorted->second));
  }
}

void apply_piece(const SymbolPool &pool, const Corestriction &f,
                 const TensorWord &word, Rational coeff, Elem &out) {
  const int M = (int)word.size();
  const int N = (int)f.profile.size();
  if (M < N) return;
  const int cd = f.coder_degree();

  std::vector<int> fdegs(M);
  for (int i = 0; i < M; ++i) fdegs[i] = factor_degree(pool, word[i]);

  for (int K = N; K <= M; ++K) {
    TensorWord suffix(word.begin() + K, word.end());
    // choose the window positions inside 1..K with max = K
    std::vector<int> sel(N);
    sel[N - 1] = K;
    std::vector<int> choose(N - 1);
    for (int i = 0; i < N - 1; ++i) choose[i] = i + 1;
    auto run_window = [&]() {
      for (int i = 0; i + 1 < N; ++i) sel[i] = choose[i];
      // bypass = complement inside 1..K-1; Koszul for the rearrangement
      TensorWord prefix;
      int perm_sign_exp = 0, bypass_deg = 0;
      {
        std::vector<char> in_window(K + 1, 0);
        for (int s : sel) in_window[s] = 1;
        // moving each window factor left past later bypassed factors is
        // not needed: compute the unshuffle Koszul directly
        int seen_window_deg = 0;
        for (int pos = 1; pos <= K; ++pos) {
          if (in_window[pos]) {
            seen_window_deg += fdegs[pos - 1];
          } else {
            prefix.push_back(word[pos - 1]);
            bypass_deg += fdegs[pos - 1];
            perm_sign_exp += seen_window_deg * fdegs[pos - 1];
          }
        }
      }
      Rational base = coeff;
      if (parity(perm_sign_exp)) base = -base;
      if (parity(cd) && parity(bypass_deg)) base = -base;

      std::vector<const SymWord *> win(N);
      for (int i = 0; i < N; ++i) win[i] = &word[sel[i] - 1];

      // case k = N: end split of the last window factor
      {
        bool ok = true;
        for (int t = 0; t + 1 < N; ++t)
          if ((int)win[t]->size() != f.profile[t]) { ok = false; break; }
        if (ok && (int)win[N - 1]->size() >= f.profile[N - 1]) {
          std::vector<SymWord> blocks(N);
          for (int t = 0; t + 1 < N; ++t) blocks[t] = *win[t];
          for (const auto &[bl, sv, sg] :
               sym_splits(pool, *win[N - 1], f.profile[N - 1])) {
            blocks[N - 1] = bl;
            window_value(pool, f, blocks, sv, N + 1, base * Rational(sg), prefix,
                         suffix, out);
          }
        }
      }
      // case k < N: middle split; the survivor is the last window factor
      for (int k = 1; k <= N - 1; ++k) {
        bool ok = true;
        for (int t = 0; t + 1 < k; ++t)
          if ((int)win[t]->size() != f.profile[t]) { ok = false; break; }
        if (!ok) continue;
        if ((int)win[k - 1]->size() != f.profile[k - 1] + f.profile[k]) continue;
        for (int t = k; t + 1 < N; ++t)
          if ((int)win[t]->size() != f.profile[t + 1]) { ok = false; break; }
        if (!ok) continue;
        std::vector<SymWord> blocks(N);
        for (int t = 0; t + 1 < k; ++t) blocks[t] = *win[t];
        for (int t = k; t + 1 < N; ++t) blocks[t + 1] = *win[t];
        const SymWord &survivor = *win[N - 1];
        for (const auto &[bl, br, sg] :
             sym_splits(pool, *win[k - 1], f.profile[k - 1])) {
          blocks[k - 1] = bl;
          blocks[k] = br;
          window_value(pool, f, blocks, survivor, k + 1, base * Rational(sg),
                       prefix, suffix, out);
        }
      }
    };
    if (N == 1) {
      run_window();
    } else {
      // iterate over all (N-1)-subsets of {1..K-1}
      bool done = K - 1 < N - 1;
      while (!done) {
        run_window();
        int i = N - 2;
        while (i >= 0 && choose[i] == K - 1 - (N - 2 - i)) --i;
        if (i < 0) break;
        ++choose[i];
        for (int j = i + 1; j < N - 1; ++j) choose[j] = choose[j - 1] + 1;
      }
    }
  }
}

} // namespace

Elem apply_mixed_word(const SymbolPool &pool, const Coderivation &c,
                      const TensorWord &w) {
  Elem out;
  for (const auto &p : c.pieces) apply_piece(pool, p, w, Rational(1), out);
  return out;
}

Elem apply_mixed(const SymbolPool &pool, const Coderivation &c, const Elem &e) {
  Elem out;
  for (const auto &[w, v] : e) {
    Elem part;
    for (const auto &p : c.pieces) apply_piece(pool, p, w, v, part);
    for (auto &[pw, pv] : part) accumulate(out, pw, pv);
  }
  return out;
}

SymElem apply_sym(const SymbolPool &pool, const Coderivation &c, const SymElem &e) {
  SymElem out;
  for (const auto &p : c.pieces) {
    if (p.profile.size() != 1)
      throw std::invalid_argument("apply_sym: profile must be a single block");
    int m = p.profile[0];
    for (const auto &[w, v] : e) {
      if ((int)w.size() < m) continue;
      for (const auto &[block, rest, sg] : sym_splits(pool, w, m)) {
        // peel the block's letter shifts
        int E = 0;
        for (int u = 0; u < m; ++u) E += pool.sdeg(block[u]) * (m - 1 - u);
        Rational base = v * Rational(sg);
        if (parity(E)) base = -base;
        for (const auto &[y, cy] : p.eval({block})) {
          std::vector<LetterId> raw{y};
          raw.insert(raw.end(), rest.begin(), rest.end());
          auto sorted = sort_word(pool, std::move(raw));
          if (!sorted) continue;
          Rational cv = base * cy * Rational(sorted->second);
          auto it = out.find(sorted->first);
          if (it == out.end()) {
            if (!cv.is_zero()) out.emplace(sorted->first, cv);
          } else {
            it->second += cv;
            if (it->second.is_zero()) out.erase(it);
          }
        }
      }
    }
  }
  return out;
}

std::map<std::vector<LetterId>, Rational>
apply_zinb(const SymbolPool &pool, const Coderivation &c,
           const std::map<std::vector<LetterId>, Rational> &e) {
  std::map<std::vector<LetterId>, Rational> out;
  auto add = [&](std::vector<LetterId> w, Rational v) {
    if (v.is_zero()) return;
    auto it = out.find(w);
    if (it == out.end())
      out.emplace(std::move(w), v);
    else {
      it->second += v;
      if (it->second.is_zero()) out.erase(it);
    }
  };
  for (const auto &p : c.pieces) {
    int m = (int)p.profile.size();
    for (int a : p.profile)
      if (a != 1)
        throw std::invalid_argument("apply_zinb: profile must be (1,...,1)");
    for (const auto &[w, v] : e) {
      int n = (int)w.size();
      if (n < m) continue;
      // pivot letter c ranges over positions m..n; unshuffle the first
      // c-1 letters into bypassed (c-m) and consumed (m-1)
      for (int piv = m; piv <= n; ++piv) {
        std::vector<int> degs(piv - 1);
        for (int i = 0; i + 1 < piv; ++i) degs[i] = pool.degree(w[i]);
        for (const auto &[perm, sg] : unshuffles(piv - m, piv - 1, &degs)) {
          std::vector<LetterId> bypass, consumed;
          int bp_deg = 0;
          for (int t = 0; t < piv - m; ++t) {
            bypass.push_back(w[perm[t] - 1]);
            bp_deg += pool.degree(w[perm[t] - 1]);
          }
          for (int t = piv - m; t < piv - 1; ++t) consumed.push_back(w[perm[t] - 1]);
          consumed.push_back(w[piv - 1]);
          Rational base = v * Rational(sg);
          if (parity(p.f_degree) && parity(bp_deg)) base = -base;
          std::vector<std::vector<LetterId>> blocks;
          for (LetterId l : consumed) blocks.push_back({l});
          for (const auto &[y, cy] : p.eval(blocks)) {
            std::vector<LetterId> nw = bypass;
            nw.push_back(y);
            nw.insert(nw.end(), w.begin() + piv, w.end());
            add(std::move(nw), base * cy);
          }
        }
      }
    }
  }
  return out;
}

namespace {

// multiset combinations of size k over atoms (indices ascending)
void multisets(const std::vector<LetterId> &atoms, int k, std::size_t from,
               std::vector<LetterId> &cur, std::vector<SymWord> &out,
               const SymbolPool &pool) {
  if (k == 0) {
    auto sorted = sort_word(pool, cur);
    if (sorted) out.push_back(sorted->first);
    return;
  }
  for (std::size_t i = from; i < atoms.size(); ++i) {
    cur.push_back(atoms[i]);
    multisets(atoms, k - 1, i, cur, out, pool);
    cur.pop_back();
  }
}

void compositions(int total, std::vector<int> &cur,
                  std::vector<std::vector<int>> &out) {
  if (total == 0) {
    out.push_back(cur);
    return;
  }
  for (int a = 1; a <= total; ++a) {
    cur.push_back(a);
    compositions(total - a, cur, out);
    cur.pop_back();
  }
}

} // namespace

std::vector<SymWord> enumerate_sym_words(const SymbolPool &pool,
                                         const std::vector<LetterId> &atoms,
                                         int weight) {
  std::vector<SymWord> out;
  std::vector<LetterId> cur;
  multisets(atoms, weight, 0, cur, out, pool);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<TensorWord> enumerate_words(const SymbolPool &pool,
                                        const std::vector<LetterId> &atoms,
                                        int weight) {
  std::vector<TensorWord> out;
  std::vector<std::vector<int>> profiles;
  std::vector<int> cur;
  compositions(weight, cur, profiles);
  for (const auto &prof : profiles) {
    std::vector<std::vector<SymWord>> choices;
    for (int a : prof) choices.push_back(enumerate_sym_words(pool, atoms, a));
    std::vector<std::size_t> idx(prof.size(), 0);
    while (true) {
      TensorWord w;
      for (std::size_t i = 0; i < prof.size(); ++i) w.push_back(choices[i][idx[i]]);
      out.push_back(std::move(w));
      std::size_t i = 0;
      while (i < idx.size()) {
        if (++idx[i] < choices[i].size()) break;
        idx[i++] = 0;
      }
      if (i == idx.size()) break;
    }
  }
  return out;
}

namespace {

PairElem tensor_pairs(const std::vector<std::tuple<TensorWord, TensorWord, Rational>> &v) {
  PairElem out;
  for (const auto &[l, r, c] : v) {
    if (c.is_zero()) continue;
    auto key = std::make_pair(l, r);
    out[key] += c;
    if (out[key].is_zero()) out.erase(key);
  }
  return out;
}

PairElem delta_of(const SymbolPool &pool, CoalgebraKind kind, const TensorWord &w) {
  if (kind == CoalgebraKind::zinbiel) return tensor_pairs(delta_zinb_tensor(pool, w));
  return tensor_pairs(delta_mixed(pool, w));
}

PairElem delta_of_elem(const SymbolPool &pool, CoalgebraKind kind, const Elem &e) {
  PairElem out;
  for (const auto &[w, v] : e)
    for (const auto &[l, r, c] : kind == CoalgebraKind::zinbiel
                                     ? delta_zinb_tensor(pool, w)
                                     : delta_mixed(pool, w)) {
      auto key = std::make_pair(l, r);
      out[key] += v * c;
      if (out[key].is_zero()) out.erase(key);
    }
  return out;
}

// (D (x) 1 + 1 (x) D) on a pair element, with the Koszul pass of D.
PairElem side_apply(const SymbolPool &pool, const Coderivation &c,
                    const PairElem &e) {
  PairElem out;
  auto add = [&](const TensorWord &l, const TensorWord &r, Rational v) {
    if (v.is_zero()) return;
    auto key = std::make_pair(l, r);
    out[key] += v;
    if (out[key].is_zero()) out.erase(key);
  };
  for (const auto &[pr, v] : e) {
    for (const auto &[w, cv] : apply_mixed_word(pool, c, pr.first))
      add(w, pr.second, v * cv);
    Rational pass = v;
    if (parity(c.degree) && parity(tensor_degree(pool, pr.first))) pass = -pass;
    for (const auto &[w, cv] : apply_mixed_word(pool, c, pr.second))
      add(pr.first, w, pass * cv);
  }
  return out;
}

} // namespace

bool is_coderivation(SymbolPool &pool, const std::vector<LetterId> &atoms,
                     const Coderivation &c, CoalgebraKind kind, int W,
                     std::string *witness) {
  if (kind == CoalgebraKind::commutative) {
    // on S-(s g): (D (x) 1 + 1 (x) D) Delta_c = Delta_c D
    for (int weight = 1; weight <= W; ++weight)
      for (const auto &w : enumerate_sym_words(pool, atoms, weight)) {
        std::map<std::pair<SymWord, SymWord>, Rational> lhs, rhs;
        SymElem dw = apply_sym(pool, c, SymElem{{w, Rational(1)}});
        for (const auto &[x, v] : dw)
          for (const auto &[l, r, s] : delta_sym(pool, x)) {
            auto key = std::make_pair(l, r);
            rhs[key] += v * s;
            if (rhs[key].is_zero()) rhs.erase(key);
          }
        for (const auto &[l, r, s] : delta_sym(pool, w)) {
          for (const auto &[x, v] : apply_sym(pool, c, SymElem{{l, Rational(1)}})) {
            auto key = std::make_pair(x, r);
            lhs[key] += s * v;
            if (lhs[key].is_zero()) lhs.erase(key);
          }
          Rational pass(1);
          if (parity(c.degree) && parity(word_sdeg_sum(pool, l))) pass = -pass;
          for (const auto &[x, v] : apply_sym(pool, c, SymElem{{r, Rational(1)}})) {
            auto key = std::make_pair(l, x);
            lhs[key] += s * pass * v;
            if (lhs[key].is_zero()) lhs.erase(key);
          }
        }
        if (lhs != rhs) {
          if (witness) {
            TensorWord tw{w};
            *witness = "defcoder fails on " + word_str(pool, tw);
          }
          return false;
        }
      }
    return true;
  }

  for (int weight = 1; weight <= W; ++weight)
    for (const auto &w : enumerate_words(pool, atoms, weight)) {
      Elem dw = apply_mixed_word(pool, c, w);
      // DDZ: (D(x)1 + 1(x)D) Delta_z = Delta_z D
      {
        PairElem lhs = side_apply(pool, c, delta_of(pool, CoalgebraKind::zinbiel, w));
        PairElem rhs = delta_of_elem(pool, CoalgebraKind::zinbiel, dw);
        if (lhs != rhs) {
          if (witness) *witness = "DDZ fails on " + word_str(pool, w);
          return false;
        }
      }
      if (kind == CoalgebraKind::mixed) {
        // DDC: (-1)^{|D|} (D(x)1 + 1(x)D) Delta_c = Delta_c D
        PairElem lhs = side_apply(pool, c, delta_of(pool, CoalgebraKind::mixed, w));
        if (parity(c.degree))
          for (auto &[k, v] : lhs) v = -v;
        PairElem rhs = delta_of_elem(pool, CoalgebraKind::mixed, dw);
        if (lhs != rhs) {
          if (witness) *witness = "DDC fails on " + word_str(pool, w);
          return false;
        }
      }
    }
  return true;
}

LieLeibnizAlgebra LieLeibnizAlgebra::parity_collapsed() const {
  LieLeibnizAlgebra out = *this;
  out.p = parity_collapse(p);
  out.q = parity_collapse(q);
  for (auto &s : out.space.basis) s.degree = parity_collapse(s.degree);
  return out;
}

namespace {

using Vec = std::map<int, Rational>;

Vec apply_table(const std::vector<std::vector<std::vector<std::pair<int, Rational>>>> &t,
                int i, int j, const Rational &c) {
  Vec v;
  for (const auto &[k, w] : t[i][j]) {
    v[k] += c * w;
    if (v[k].is_zero()) v.erase(k);
  }
  return v;
}

void add_scaled(Vec &acc, const Vec &v, const Rational &c) {
  for (const auto &[k, w] : v) {
    acc[k] += c * w;
    if (acc[k].is_zero()) acc.erase(k);
  }
}

// bracket(x, vec) and bracket(vec, x)
Vec br_left(const std::vector<std::vector<std::vector<std::pair<int, Rational>>>> &t,
            int x, const Vec &v) {
  Vec out;
  for (const auto &[k, w] : v) add_scaled(out, apply_table(t, x, k, w), Rational(1));
  return out;
}
Vec br_right(const std::vector<std::vector<std::vector<std::pair<int, Rational>>>> &t,
             const Vec &v, int x) {
  Vec out;
  for (const auto &[k, w] : v) add_scaled(out, apply_table(t, k, x, w), Rational(1));
  return out;
}

} // namespace

DimReport check_ll_axioms(const LieLeibnizAlgebra &alg) {
  DimReport rep;
  rep.check = "ll-axioms";
  const int n = alg.space.dim();
  auto deg = [&](int i) { return alg.space.basis[i].degree; };
  auto name = [&](int i) { return alg.space.basis[i].name; };
  auto sgn = [](int e) { return parity(e) ? Rational(-1) : Rational(1); };

  if (parity(alg.p) != 0 || parity(alg.q) != 1) {
    rep.fail("bidegree parities must be (even, odd)");
    return rep;
  }

  // degree homogeneity of the structure constants
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      for (const auto &[k, v] : alg.lie[i][j])
        if (!v.is_zero() && deg(k) != deg(i) + deg(j) + alg.p)
          rep.fail("lie(" + name(i) + "," + name(j) + ") not degree-homogeneous");
      for (const auto &[k, v] : alg.leib[i][j])
        if (!v.is_zero() && deg(k) != deg(i) + deg(j) + alg.q)
          rep.fail("leib(" + name(i) + "," + name(j) + ") not degree-homogeneous");
    }
  if (!rep.pass) return rep;

  // graded antisymmetry of the Lie bracket
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vec lhs = apply_table(alg.lie, i, j, Rational(1));
      add_scaled(lhs, apply_table(alg.lie, j, i, Rational(1)),
                 sgn(deg(i) * deg(j)));
      if (!lhs.empty())
        rep.fail("antisymmetry fails at (" + name(i) + "," + name(j) + ")");
    }

  for (int i = 0; i < n && rep.pass; ++i)
    for (int j = 0; j < n && rep.pass; ++j)
      for (int k = 0; k < n && rep.pass; ++k) {
        // Jacobi: (x,(y,z)) - ((x,y),z) - (-1)^{|x||y|} (y,(x,z)) = 0
        {
          Vec acc = br_left(alg.lie, i, apply_table(alg.lie, j, k, Rational(1)));
          add_scaled(acc, br_right(alg.lie, apply_table(alg.lie, i, j, Rational(1)), k),
                     Rational(-1));
          add_scaled(acc, br_left(alg.lie, j, apply_table(alg.lie, i, k, Rational(1))),
                     Rational(-1) * sgn(deg(i) * deg(j)));
          if (!acc.empty())
            rep.fail("Jacobi fails at (" + name(i) + "," + name(j) + "," + name(k) + ")");
        }
        // odd Leibniz: (-1)^{|x|}[x,[y,z]] + [[x,y],z]
        //            + (-1)^{|x||y|+|y|}[y,[x,z]] = 0
        {
          Vec acc;
          add_scaled(acc, br_left(alg.leib, i, apply_table(alg.leib, j, k, Rational(1))),
                     sgn(deg(i)));
          add_scaled(acc, br_right(alg.leib, apply_table(alg.leib, i, j, Rational(1)), k),
                     Rational(1));
          add_scaled(acc, br_left(alg.leib, j, apply_table(alg.leib, i, k, Rational(1))),
                     sgn(deg(i) * deg(j) + deg(j)));
          if (!acc.empty())
            rep.fail("odd Leibniz fails at (" + name(i) + "," + name(j) + "," +
                     name(k) + ")");
        }
        // [x,(y,z)] = ([x,y],z) + (-1)^{(|x|+1)|y|} (y,[x,z])
        {
          Vec acc = br_left(alg.leib, i, apply_table(alg.lie, j, k, Rational(1)));
          add_scaled(acc, br_right(alg.lie, apply_table(alg.leib, i, j, Rational(1)), k),
                     Rational(-1));
          add_scaled(acc, br_left(alg.lie, j, apply_table(alg.leib, i, k, Rational(1))),
                     Rational(-1) * sgn((deg(i) + 1) * deg(j)));
          if (!acc.empty())
            rep.fail("mixed relation (invariance) fails at (" + name(i) + "," +
                     name(j) + "," + name(k) + ")");
        }
        // [(x,y),z] = ([x,y],z) - (-1)^{|x||y|} ([y,x],z)
        {
          Vec acc = br_right(alg.leib, apply_table(alg.lie, i, j, Rational(1)), k);
          add_scaled(acc, br_right(alg.lie, apply_table(alg.leib, i, j, Rational(1)), k),
                     Rational(-1));
          add_scaled(acc, br_right(alg.lie, apply_table(alg.leib, j, i, Rational(1)), k),
                     sgn(deg(i) * deg(j)));
          if (!acc.empty())
            rep.fail("mixed relation (pairing) fails at (" + name(i) + "," +
                     name(j) + "," + name(k) + ")");
        }
      }
  return rep;
}

LieLeibnizAlgebra derived_bracket(const DgLie &in) {
  const int n = in.space.dim();
  auto deg = [&](int i) { return in.space.basis[i].degree; };
  // d^2 = 0
  for (int i = 0; i < n; ++i) {
    Vec acc;
    for (const auto &[k, v] : in.d[i])
      for (const auto &[k2, v2] : in.d[k]) {
        acc[k2] += v * v2;
        if (acc[k2].is_zero()) acc.erase(k2);
      }
    if (!acc.empty())
      throw std::invalid_argument("derived_bracket: d does not square to zero");
  }
  // derivation: d(x,y) = (dx,y) + (-1)^{|x| dd} (x,dy)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vec lhs;
      for (const auto &[k, v] : in.lie[i][j])
        for (const auto &[k2, v2] : in.d[k]) {
          lhs[k2] += v * v2;
          if (lhs[k2].is_zero()) lhs.erase(k2);
        }
      Vec rhs;
      for (const auto &[k, v] : in.d[i])
        add_scaled(rhs, apply_table(in.lie, k, j, v), Rational(1));
      Rational s = (parity(deg(i)) && parity(in.dd)) ? Rational(-1) : Rational(1);
      for (const auto &[k, v] : in.d[j])
        add_scaled(rhs, apply_table(in.lie, i, k, v * s), Rational(1));
      add_scaled(rhs, lhs, Rational(-1));
      if (!rhs.empty())
        throw std::invalid_argument("derived_bracket: d is not a derivation");
    }

  LieLeibnizAlgebra out;
  out.space = in.space;
  out.p = in.p;
  out.q = in.p + in.dd;
  out.lie = in.lie;
  out.leib.assign(n, std::vector<std::vector<std::pair<int, Rational>>>(n));
  Rational pref = parity(in.p) ? Rational(-1) : Rational(1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vec acc;
      for (const auto &[k, v] : in.d[i])
        add_scaled(acc, apply_table(in.lie, k, j, v * pref), Rational(1));
      for (const auto &[k, v] : acc) out.leib[i][j].emplace_back(k, v);
    }
  return out;
}

BarComplex bar_codifferential(const LieLeibnizAlgebra &alg0) {
  LieLeibnizAlgebra alg = alg0.parity_collapsed();
  if (alg.p != 0 || alg.q != 1)
    throw std::invalid_argument("bar_codifferential: needs bidegree (0,1) parities");
  BarComplex bc;
  for (const auto &s : alg.space.basis) bc.atoms.push_back(bc.pool.atom(s.name, s.degree));
  auto shared = std::make_shared<LieLeibnizAlgebra>(alg);
  Corestriction lie;
  lie.profile = {2};
  lie.f_degree = 0;
  lie.eval = [shared](const std::vector<std::vector<LetterId>> &blocks) {
    std::map<LetterId, Rational> out;
    for (const auto &[k, v] : shared->lie[blocks[0][0]][blocks[0][1]]) out[k] += v;
    return out;
  };
  Corestriction leib;
  leib.profile = {1, 1};
  leib.f_degree = 1;
  leib.eval = [shared](const std::vector<std::vector<LetterId>> &blocks) {
    std::map<LetterId, Rational> out;
    for (const auto &[k, v] : shared->leib[blocks[0][0]][blocks[1][0]]) out[k] += v;
    return out;
  };
  bc.dLie = Coderivation::from(std::move(lie));
  bc.dLeib = Coderivation::from(std::move(leib));
  return bc;
}

Coderivation BarComplex::dLL() const {
  Coderivation c = dLie;
  for (const auto &p : dLeib.pieces) c.add(p);
  return c;
}

std::vector<std::pair<TensorWord, Rational>>
coderivation_square(const SymbolPool &pool, const std::vector<LetterId> &atoms,
                    const Coderivation &c, int W) {
  std::vector<std::pair<TensorWord, Rational>> residual;
  for (int weight = 1; weight <= W; ++weight)
    for (const auto &w : enumerate_words(pool, atoms, weight)) {
      Elem once = apply_mixed_word(pool, c, w);
      Elem twice = apply_mixed(pool, c, once);
      for (const auto &[rw, rv] : twice) residual.emplace_back(rw, rv);
    }
  return residual;
}

std::optional<int> arity_relation(const std::vector<int> &a,
                                  const std::vector<int> &b) {
  if (a.size() != b.size() || a.empty()) return std::nullopt;
  const int n = (int)a.size();
  for (int k = 1; k <= n; ++k) {
    bool ok = true;
    for (int t = 0; t + 1 < k; ++t)
      if (a[t] != b[t]) { ok = false; break; }
    if (!ok) continue;
    if (k < n) {
      if (a[k - 1] + a[k] != b[k - 1]) continue;
      for (int t = k + 1; t < n && ok; ++t)
        if (a[t] != b[t - 1]) ok = false;
      if (ok) return k;
    } else {
      if (a[n - 1] <= b[n - 1]) return k;
    }
  }
  return std::nullopt;
}

} // namespace opal
