#include "strata/partitions.hpp"

#include "strata/config.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace strata {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

int parse_positive(std::string_view token) {
  auto t = trim(token);
  int value = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || value <= 0) {
    throw std::invalid_argument("not a positive integer: '" + t + "'");
  }
  return value;
}

std::string key_of(const std::vector<int>& a, const std::vector<int>& b) {
  std::string k;
  k.reserve(a.size() + b.size() + 1);
  for (int v : a) k.push_back(static_cast<char>(v));
  k.push_back('\0');
  for (int v : b) k.push_back(static_cast<char>(v));
  return k;
}

// Distinct values with multiplicities, descending.
std::vector<std::pair<int, int>> value_counts(const std::vector<int>& parts) {
  std::vector<std::pair<int, int>> out;
  for (int p : parts) {
    if (!out.empty() && out.back().first == p) {
      ++out.back().second;
    } else {
      out.emplace_back(p, 1);
    }
  }
  return out;
}

void collect_sub_multisets(const std::vector<std::pair<int, int>>& vc, std::size_t at, int remaining,
                           std::vector<int>& current, std::vector<std::vector<int>>& out) {
  if (remaining == 0) {
    out.push_back(current);
    return;
  }
  if (at == vc.size()) return;
  auto [value, count] = vc[at];
  int max_take = std::min(count, remaining / value);
  for (int take = max_take; take >= 0; --take) {
    for (int i = 0; i < take; ++i) current.push_back(value);
    collect_sub_multisets(vc, at + 1, remaining - take * value, current, out);
    current.resize(current.size() - take);
  }
}

// fine ⊢ coarse on raw descending vectors of equal total, memoized per call.
class Refiner {
 public:
  bool refines(const std::vector<int>& fine, const std::vector<int>& coarse) {
    if (coarse.empty()) return fine.empty();
    if (fine.size() < coarse.size()) return false;
    if (fine.size() == coarse.size()) return fine == coarse;
    if (fine.front() > coarse.front()) return false;
    auto key = key_of(fine, coarse);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool result = false;
    std::vector<int> rest_coarse(coarse.begin() + 1, coarse.end());
    for (const auto& group : sub_multisets_with_sum(fine, coarse.front())) {
      if (refines(multiset_difference(fine, group), rest_coarse)) {
        result = true;
        break;
      }
    }
    memo_.emplace(std::move(key), result);
    return result;
  }

 private:
  std::unordered_map<std::string, bool> memo_;
};

}  // namespace

NumberPartition::NumberPartition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (int p : parts_) {
    if (p <= 0) throw std::invalid_argument("partition parts must be positive");
    total_ += p;
  }
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
}

NumberPartition NumberPartition::parse(std::string_view text) {
  std::vector<int> parts;
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    parts.push_back(parse_positive(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return NumberPartition(std::move(parts));
}

NumberPartition NumberPartition::special(int k, int m, int n) {
  if (k < 1 || m < 0 || k * m > n) throw std::invalid_argument("invalid special partition parameters");
  std::vector<int> parts(m, k);
  parts.insert(parts.end(), n - k * m, 1);
  return NumberPartition(std::move(parts));
}

NumberPartition NumberPartition::repeated(int value, int count) {
  return NumberPartition(std::vector<int>(count, value));
}

std::string NumberPartition::to_string() const { return join_ints(parts_); }

SetPartition SetPartition::from_tags(const std::vector<int>& block_of) {
  SetPartition out;
  out.rgs_.resize(block_of.size());
  std::map<int, int> renumber;
  for (std::size_t i = 0; i < block_of.size(); ++i) {
    auto [it, inserted] = renumber.emplace(block_of[i], static_cast<int>(renumber.size()));
    out.rgs_[i] = static_cast<std::uint8_t>(it->second);
  }
  out.blocks_ = static_cast<int>(renumber.size());
  if (out.blocks_ > 255) throw std::invalid_argument("too many blocks");
  return out;
}

SetPartition SetPartition::from_blocks(const std::vector<std::vector<int>>& blocks) {
  int n = 0;
  for (const auto& b : blocks) n += static_cast<int>(b.size());
  std::vector<int> tags(n, -1);
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    if (blocks[j].empty()) throw std::invalid_argument("empty block in set partition");
    for (int e : blocks[j]) {
      if (e < 1 || e > n || tags[e - 1] != -1) {
        throw std::invalid_argument("blocks must cover 1..n exactly once");
      }
      tags[e - 1] = static_cast<int>(j);
    }
  }
  return from_tags(tags);
}

SetPartition SetPartition::discrete(int n) {
  std::vector<int> tags(n);
  std::iota(tags.begin(), tags.end(), 0);
  return from_tags(tags);
}

SetPartition SetPartition::single_block(int n) { return from_tags(std::vector<int>(n, 0)); }

SetPartition SetPartition::parse(std::string_view text) {
  auto t = trim(text);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']') {
    throw std::invalid_argument("set partition must look like [[1,2],[3]]");
  }
  std::vector<std::vector<int>> blocks;
  std::size_t pos = 1;
  while (pos < t.size() - 1) {
    auto open = t.find('[', pos);
    if (open == std::string::npos || open >= t.size() - 1) break;
    auto close = t.find(']', open);
    if (close == std::string::npos) throw std::invalid_argument("unbalanced brackets in set partition");
    std::vector<int> block;
    std::string_view body(t.data() + open + 1, close - open - 1);
    std::size_t start = 0;
    while (true) {
      auto comma = body.find(',', start);
      block.push_back(parse_positive(body.substr(start, comma == std::string_view::npos ? body.npos : comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    blocks.push_back(std::move(block));
    pos = close + 1;
  }
  return from_blocks(blocks);
}

std::vector<std::vector<int>> SetPartition::blocks() const {
  std::vector<std::vector<int>> out(blocks_);
  for (int i = 0; i < n(); ++i) out[rgs_[i]].push_back(i + 1);
  return out;
}

std::string SetPartition::to_string() const {
  std::string s = "[";
  auto bs = blocks();
  for (std::size_t j = 0; j < bs.size(); ++j) {
    if (j) s += ",";
    s += "[" + join_ints(bs[j]) + "]";
  }
  return s + "]";
}

NumberPartition type_of(const SetPartition& pi) {
  std::vector<int> sizes(pi.block_count(), 0);
  for (auto b : pi.rgs()) ++sizes[b];
  return NumberPartition(std::move(sizes));
}

bool refines_number(const NumberPartition& lambda, const NumberPartition& mu) {
  if (lambda.total() != mu.total()) {
    throw std::invalid_argument("refinement compares partitions of different totals: " + lambda.to_string() +
                                " vs " + mu.to_string());
  }
  Refiner r;
  return r.refines(lambda.parts(), mu.parts());
}

bool refines_set(const SetPartition& pi, const SetPartition& coarse) {
  if (pi.n() != coarse.n()) throw std::invalid_argument("set partitions on different ground sets");
  std::vector<int> image(pi.block_count(), -1);
  for (int i = 0; i < pi.n(); ++i) {
    int b = pi.rgs()[i];
    int c = coarse.rgs()[i];
    if (image[b] == -1) {
      image[b] = c;
    } else if (image[b] != c) {
      return false;
    }
  }
  return true;
}

std::vector<NumberPartition> coarsenings(const NumberPartition& lambda) {
  std::set<NumberPartition> seen{lambda};
  std::vector<NumberPartition> frontier{lambda};
  while (!frontier.empty()) {
    std::vector<NumberPartition> next;
    for (const auto& p : frontier) {
      const auto& parts = p.parts();
      for (std::size_t i = 0; i < parts.size(); ++i) {
        for (std::size_t j = i + 1; j < parts.size(); ++j) {
          std::vector<int> merged;
          for (std::size_t t = 0; t < parts.size(); ++t) {
            if (t != i && t != j) merged.push_back(parts[t]);
          }
          merged.push_back(parts[i] + parts[j]);
          NumberPartition q(std::move(merged));
          if (seen.insert(q).second) next.push_back(std::move(q));
        }
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

SetPartition join(const SetPartition& a, const SetPartition& b) {
  if (a.n() != b.n()) throw std::invalid_argument("set partitions on different ground sets");
  const int n = a.n();
  // Union-find over elements; link each element to the first element of its
  // block in a and in b.
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int x, int y) {
    x = find(x);
    y = find(y);
    if (x != y) parent[std::max(x, y)] = std::min(x, y);
  };
  std::vector<int> first_a(a.block_count(), -1), first_b(b.block_count(), -1);
  for (int i = 0; i < n; ++i) {
    int ba = a.rgs()[i], bb = b.rgs()[i];
    if (first_a[ba] == -1) first_a[ba] = i; else unite(i, first_a[ba]);
    if (first_b[bb] == -1) first_b[bb] = i; else unite(i, first_b[bb]);
  }
  std::vector<int> tags(n);
  for (int i = 0; i < n; ++i) tags[i] = find(i);
  return SetPartition::from_tags(tags);
}

bool is_generic(const NumberPartition& lambda) {
  // Distinct sub-multisets are enumerated once each (value/count choices);
  // genericity means their sums never collide.
  auto vc = value_counts(lambda.parts());
  std::set<int> sums;
  bool generic = true;
  std::function<void(std::size_t, int)> walk = [&](std::size_t at, int sum) {
    if (!generic) return;
    if (at == vc.size()) {
      if (!sums.insert(sum).second) generic = false;
      return;
    }
    for (int take = 0; take <= vc[at].second; ++take) walk(at + 1, sum + take * vc[at].first);
  };
  walk(0, 0);
  return generic;
}

NumberPartition gamma_k(const NumberPartition& mu, int k) {
  if (k < 2) throw std::invalid_argument("gamma_k needs k >= 2");
  int q = 0, r = 0;
  for (int p : mu.parts()) {
    q += p / k;
    r += p % k;
  }
  std::vector<int> parts(q, k);
  parts.insert(parts.end(), r, 1);
  return NumberPartition(std::move(parts));
}

bool is_special(const NumberPartition& tau, int k) {
  return std::all_of(tau.parts().begin(), tau.parts().end(), [k](int p) { return p == k || p == 1; });
}

bool is_join_type(const NumberPartition& lambda, const NumberPartition& tau) {
  if (lambda.total() != tau.total()) return false;
  if (tau.parts().front() < 2) return false;  // the bottom element
  Refiner r;
  if (!r.refines(lambda.parts(), tau.parts())) return false;
  for (const auto& [s, count] : value_counts(tau.parts())) {
    if (s < 2) continue;
    auto rest_tau = multiset_difference(tau.parts(), {s});
    bool block_ok = false;
    for (const auto& group : sub_multisets_with_sum(lambda.parts(), s)) {
      if (group.front() < 2) continue;
      if (r.refines(multiset_difference(lambda.parts(), group), rest_tau)) {
        block_ok = true;
        break;
      }
    }
    if (!block_ok) return false;
  }
  return true;
}

std::vector<std::vector<int>> partitions_of(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.push_back(current);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      current.push_back(p);
      rec(remaining - p, p);
      current.pop_back();
    }
  };
  rec(n, n);
  return out;
}

std::vector<NumberPartition> all_partitions(int n) {
  std::vector<NumberPartition> out;
  for (auto& p : partitions_of(n)) out.emplace_back(std::move(p));
  return out;
}

std::vector<std::vector<int>> sub_multisets_with_sum(const std::vector<int>& parts, int target) {
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  collect_sub_multisets(value_counts(parts), 0, target, current, out);
  return out;
}

std::vector<int> multiset_difference(const std::vector<int>& parts, const std::vector<int>& sub) {
  std::vector<int> out;
  out.reserve(parts.size());
  std::size_t j = 0;
  for (int p : parts) {
    if (j < sub.size() && sub[j] == p) {
      ++j;
    } else {
      out.push_back(p);
    }
  }
  if (j != sub.size()) throw std::invalid_argument("multiset_difference: not a sub-multiset");
  return out;
}

std::string join_ints(const std::vector<int>& values, std::string_view separator) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += separator;
    s += std::to_string(values[i]);
  }
  return s;
}

}  // namespace strata

namespace strata {

std::uint64_t bell_number(int n) {
  // Bell triangle, saturating at the largest uint64.
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> row{1};
  for (int i = 0; i < n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (auto v : row) next.push_back(next.back() > kMax - v ? kMax : next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

}  // namespace strata
