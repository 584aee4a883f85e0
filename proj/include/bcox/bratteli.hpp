#pragma once

// Bratteli diagram of the tower B*B_0 < B*B_1 < ...: vertices at level n
// are pairs of Young diagrams of total size n, n-2, ...; edges add or
// remove one box in either component.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "bcox/errors.hpp"

namespace bcox {

/// Weakly decreasing positive parts.
using Partition = std::vector<int>;

struct PartitionPair {
  Partition left, right;

  int size() const {
    int s = 0;
    for (int p : left) s += p;
    for (int p : right) s += p;
    return s;
  }

  friend bool operator==(const PartitionPair&, const PartitionPair&) = default;
  friend auto operator<=>(const PartitionPair&, const PartitionPair&) = default;

  /// `(2,1|1)`; empty partitions render as nothing.
  std::string to_string() const {
    auto parts = [](const Partition& p) {
      std::string s;
      for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
      return s;
    };
    return "(" + parts(left) + "|" + parts(right) + ")";
  }
};

/// All partitions of k in lexicographically decreasing order.
inline std::vector<Partition> partitions_of(int k) {
  std::vector<Partition> out;
  Partition cur;
  std::function<void(int, int)> rec = [&](int rest, int max_part) {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(rest, max_part); p >= 1; --p) {
      cur.push_back(p);
      rec(rest - p, p);
      cur.pop_back();
    }
  };
  rec(k, k);
  return out;
}

/// Pairs with total size n, n-2, ..., sorted.
inline std::vector<PartitionPair> level_vertices(int n) {
  if (n < 0) throw UsageError("level_vertices: n >= 0 required");
  std::vector<PartitionPair> out;
  for (int total = n; total >= 0; total -= 2)
    for (int k = 0; k <= total; ++k)
      for (const auto& l : partitions_of(k))
        for (const auto& r : partitions_of(total - k)) out.push_back({l, r});
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

inline std::vector<Partition> add_box(const Partition& p) {
  std::vector<Partition> out;
  for (std::size_t row = 0; row <= p.size(); ++row) {
    const int len = row < p.size() ? p[row] : 0;
    if (row > 0 && p[row - 1] == len) continue;
    Partition q = p;
    if (row < q.size()) ++q[row];
    else q.push_back(1);
    out.push_back(std::move(q));
  }
  return out;
}

inline std::vector<Partition> remove_box(const Partition& p) {
  std::vector<Partition> out;
  for (std::size_t row = 0; row < p.size(); ++row) {
    if (row + 1 < p.size() && p[row + 1] == p[row]) continue;
    Partition q = p;
    if (--q[row] == 0) q.pop_back();
    out.push_back(std::move(q));
  }
  return out;
}

}  // namespace detail

/// Pairs reachable by adding or removing one box in either component.
inline std::vector<PartitionPair> branching(const PartitionPair& v) {
  std::vector<PartitionPair> out;
  for (auto& l : detail::add_box(v.left)) out.push_back({l, v.right});
  for (auto& r : detail::add_box(v.right)) out.push_back({v.left, r});
  for (auto& l : detail::remove_box(v.left)) out.push_back({l, v.right});
  for (auto& r : detail::remove_box(v.right)) out.push_back({v.left, r});
  std::sort(out.begin(), out.end());
  return out;
}

/// Number of paths from the empty pair at level 0 to each level-n vertex.
inline std::map<PartitionPair, std::uint64_t> path_counts(int n) {
  if (n < 0) throw UsageError("path_counts: n >= 0 required");
  std::map<PartitionPair, std::uint64_t> counts{{PartitionPair{}, 1}};
  for (int level = 1; level <= n; ++level) {
    std::map<PartitionPair, std::uint64_t> next;
    for (const auto& v : level_vertices(level)) next[v] = 0;
    for (const auto& [u, c] : counts)
      for (const auto& v : branching(u)) {
        auto it = next.find(v);
        if (it != next.end()) it->second += c;
      }
    counts = std::move(next);
  }
  return counts;
}

/// 2^n (2n-1)!!.
inline std::uint64_t bmwB_dimension(int n) {
  std::uint64_t d = 1;
  for (int k = 1; k <= n; ++k) d *= 2 * static_cast<std::uint64_t>(2 * k - 1);
  return d;
}

/// Sum of squared path counts at level n equals 2^n (2n-1)!!.
inline bool dimension_check(int n) {
  if (n > 8) throw CapabilityError("dimension_check: n <= 8 supported");
  std::uint64_t sum = 0;
  for (const auto& [v, c] : path_counts(n)) sum += c * c;
  return sum == bmwB_dimension(n);
}

}  // namespace bcox
