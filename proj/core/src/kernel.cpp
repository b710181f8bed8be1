#include "opal/kernel.hpp"

#include <numeric>
#include <stdexcept>

namespace opal {

bool is_permutation(const Perm &perm) {
  std::vector<char> seen(perm.size(), 0);
  for (int v : perm) {
    if (v < 1 || v > (int)perm.size() || seen[v - 1]) return false;
    seen[v - 1] = 1;
  }
  return true;
}

Perm compose(const Perm &outer, const Perm &inner) {
  if (outer.size() != inner.size())
    throw std::invalid_argument("compose: size mismatch");
  Perm r(outer.size());
  for (std::size_t k = 0; k < outer.size(); ++k)
    r[k] = inner[outer[k] - 1];
  return r;
}

int koszul_sign(const Perm &perm, const std::vector<int> &degrees) {
  if (perm.size() != degrees.size())
    throw std::invalid_argument("koszul_sign: permutation/degree length mismatch");
  if (!is_permutation(perm))
    throw std::invalid_argument("koszul_sign: not a bijection on {1..n}");
  int s = 1;
  for (std::size_t a = 0; a < perm.size(); ++a)
    for (std::size_t b = a + 1; b < perm.size(); ++b)
      if (perm[a] > perm[b] && parity(degrees[perm[a] - 1]) && parity(degrees[perm[b] - 1]))
        s = -s;
  return s;
}

int perm_sign(const Perm &perm) {
  int s = 1;
  for (std::size_t a = 0; a < perm.size(); ++a)
    for (std::size_t b = a + 1; b < perm.size(); ++b)
      if (perm[a] > perm[b]) s = -s;
  return s;
}

std::vector<std::pair<Perm, int>>
unshuffles(int i, int n, const std::vector<int> *degrees) {
  if (i < 0 || n < 0 || i > n)
    throw std::invalid_argument("unshuffles: need 0 <= i <= n");
  std::vector<std::pair<Perm, int>> out;
  std::vector<int> pick(i);
  std::iota(pick.begin(), pick.end(), 1);
  auto emit = [&](const std::vector<int> &left) {
    Perm p;
    p.reserve(n);
    std::vector<char> in_left(n + 1, 0);
    for (int v : left) { p.push_back(v); in_left[v] = 1; }
    for (int v = 1; v <= n; ++v)
      if (!in_left[v]) p.push_back(v);
    int s = degrees ? koszul_sign(p, *degrees) : 1;
    out.emplace_back(std::move(p), s);
  };
  if (i == 0) {
    emit({});
    return out;
  }
  while (true) {
    emit(pick);
    int k = i - 1;
    while (k >= 0 && pick[k] == n - (i - 1 - k)) --k;
    if (k < 0) break;
    ++pick[k];
    for (int j = k + 1; j < i; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

int coderivation_degree(int f_degree, const std::vector<int> &profile) {
  int s = 0;
  for (int a : profile) s += a;
  return 2 + f_degree - s - (int)profile.size();
}

} // namespace opal
