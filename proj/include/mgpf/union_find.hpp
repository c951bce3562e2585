#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

namespace mgpf {

// Union-find with path halving; union by size with deterministic tie-break
// (smaller root index wins) so merged-class representatives are reproducible.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) const {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool same(int a, int b) const { return find(a) == find(b); }

  // Returns false if already in one class.
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b] || (size_[a] == size_[b] && b < a)) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

 private:
  mutable std::vector<int> parent_;
  std::vector<int> size_;
};

}  // namespace mgpf
