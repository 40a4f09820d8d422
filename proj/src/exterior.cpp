#include "sts/exterior.hpp"

namespace sts {

int merge_sign(MultiIndex i, MultiIndex j) {
  if (!i.disjoint(j)) throw std::invalid_argument("merge_sign: sets overlap");
  // inversions: pairs (a in I, b in J) with a > b
  int inv = 0;
  uint32_t jb = j.bits;
  while (jb) {
    int p = __builtin_ctz(jb);
    jb &= jb - 1;
    inv += __builtin_popcount(i.bits >> (p + 1));
  }
  return (inv & 1) ? -1 : 1;
}

int count_below(MultiIndex i, int k) {
  return __builtin_popcount(i.bits & ((1u << (k - 1)) - 1));
}

std::vector<uint32_t> masks_of_degree(int n, int r) {
  std::vector<uint32_t> out;
  for (uint32_t m = 0; m < (1u << n); ++m)
    if (__builtin_popcount(m) == r) out.push_back(m);
  return out;
}

std::vector<uint32_t> even_masks(int n) {
  std::vector<uint32_t> out;
  for (uint32_t m = 0; m < (1u << n); ++m)
    if ((__builtin_popcount(m) & 1) == 0) out.push_back(m);
  return out;
}

}  // namespace sts
