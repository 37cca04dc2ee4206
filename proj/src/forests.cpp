#include "strata/forests.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include "strata/errors.hpp"

namespace strata {

namespace {

ForestLayout root_only(const NumberPartition& mu) {
  ForestLayout l;
  l.labels.push_back(mu.parts());
  l.parents.emplace_back();
  return l;
}

// Every way of giving each current leaf a partition of its label, subject to
// at least one leaf splitting and the new leaf level being admissible.
// Sibling leaves with equal labels are interchangeable, so their choices are
// taken in non-decreasing order.
class LevelExtender {
 public:
  LevelExtender(const Admissible& admissible, int max_label, int n) : admissible_(admissible) {
    splits_.resize(max_label + 1);
    for (int m = 1; m <= max_label; ++m) splits_[m] = partitions_of(m);
    // Bounds from the admissible types of n, used to prune partial splits.
    max_count_.assign(n + 1, n);
    max_length_ = n;
    if (n <= kPruneLimit) {
      max_count_.assign(n + 1, 0);
      max_length_ = 0;
      for (auto& tau : all_partitions(n)) {
        if (!admissible_(tau)) continue;
        max_length_ = std::max(max_length_, tau.length());
        std::vector<int> count(n + 1, 0);
        for (int part : tau.parts()) ++count[part];
        for (int v = 1; v <= n; ++v) max_count_[v] = std::max(max_count_[v], count[v]);
      }
    }
  }

  template <typename Emit>
  void extend(const ForestLayout& base, Emit&& emit) {
    base_ = &base;
    const auto& leaves = base.labels.front();
    choice_.assign(leaves.size(), 0);
    parts_.clear();
    counts_.assign(max_count_.size(), 0);
    walk(0, emit);
  }

 private:
  bool same_slot(std::size_t j) const {
    const auto& leaves = base_->labels.front();
    if (j == 0 || leaves[j] != leaves[j - 1]) return false;
    if (base_->labels.size() == 1) return true;
    return base_->parents.front()[j] == base_->parents.front()[j - 1];
  }

  template <typename Emit>
  void walk(std::size_t j, Emit& emit) {
    const auto& leaves = base_->labels.front();
    if (j == leaves.size()) {
      if (parts_.size() <= leaves.size()) return;
      if (!admissible_(NumberPartition(parts_))) return;
      ForestLayout next;
      next.labels.reserve(base_->labels.size() + 1);
      next.parents.reserve(base_->labels.size() + 1);
      std::vector<int> labels, parents;
      for (std::size_t v = 0; v < leaves.size(); ++v) {
        for (int part : splits_[leaves[v]][choice_[v]]) {
          labels.push_back(part);
          parents.push_back(static_cast<int>(v));
        }
      }
      next.labels.push_back(std::move(labels));
      next.parents.push_back(std::move(parents));
      next.labels.insert(next.labels.end(), base_->labels.begin(), base_->labels.end());
      next.parents.insert(next.parents.end(), base_->parents.begin(), base_->parents.end());
      emit(MarkedForest(next));
      return;
    }
    const auto& options = splits_[leaves[j]];
    std::size_t first = same_slot(j) ? choice_[j - 1] : 0;
    const int later = static_cast<int>(leaves.size() - j - 1);
    for (std::size_t c = first; c < options.size(); ++c) {
      const auto& split = options[c];
      if (static_cast<int>(parts_.size() + split.size()) + later > max_length_) continue;
      bool fits = true;
      for (int part : split) fits = fits && ++counts_[part] <= max_count_[part];
      if (fits) {
        choice_[j] = c;
        parts_.insert(parts_.end(), split.begin(), split.end());
        walk(j + 1, emit);
        parts_.resize(parts_.size() - split.size());
      }
      for (int part : split) --counts_[part];
    }
  }

  static constexpr int kPruneLimit = 60;

  const Admissible& admissible_;
  std::vector<std::vector<std::vector<int>>> splits_;
  const ForestLayout* base_ = nullptr;
  std::vector<std::size_t> choice_;
  std::vector<int> parts_;
  std::vector<int> counts_;
  std::vector<int> max_count_;
  int max_length_ = 0;
};

}  // namespace

bool validate(const ForestLayout& layout) {
  const auto levels = layout.labels.size();
  if (levels < 2 || layout.parents.size() != levels) return false;
  if (!layout.parents.back().empty()) return false;
  for (std::size_t h = 0; h < levels; ++h) {
    if (layout.labels[h].empty()) return false;
    for (int label : layout.labels[h]) {
      if (label < 1) return false;
    }
    if (h + 1 < levels) {
      if (layout.labels[h].size() <= layout.labels[h + 1].size()) return false;
      if (layout.parents[h].size() != layout.labels[h].size()) return false;
    }
  }
  for (std::size_t h = 0; h + 1 < levels; ++h) {
    const auto above = layout.labels[h + 1].size();
    std::vector<long> sums(above, 0);
    std::vector<int> counts(above, 0);
    for (std::size_t j = 0; j < layout.labels[h].size(); ++j) {
      int p = layout.parents[h][j];
      if (p < 0 || static_cast<std::size_t>(p) >= above) return false;
      sums[p] += layout.labels[h][j];
      ++counts[p];
    }
    for (std::size_t p = 0; p < above; ++p) {
      if (counts[p] == 0 || sums[p] != layout.labels[h + 1][p]) return false;
    }
  }
  return true;
}

MarkedForest::MarkedForest(const ForestLayout& layout) {
  if (!validate(layout)) throw InvalidInput("invalid marked forest layout");
  const auto levels = layout.labels.size();

  std::vector<std::vector<std::vector<int>>> children(levels);
  for (std::size_t h = 1; h < levels; ++h) {
    children[h].resize(layout.labels[h].size());
    for (std::size_t j = 0; j < layout.labels[h - 1].size(); ++j) {
      children[h][layout.parents[h - 1][j]].push_back(static_cast<int>(j));
    }
  }

  std::vector<std::vector<std::string>> subtree(levels);
  for (std::size_t h = 0; h < levels; ++h) {
    subtree[h].resize(layout.labels[h].size());
    for (std::size_t v = 0; v < layout.labels[h].size(); ++v) {
      std::string s = std::to_string(layout.labels[h][v]);
      if (h > 0) {
        auto& kids = children[h][v];
        std::sort(kids.begin(), kids.end(),
                  [&](int a, int b) { return subtree[h - 1][a] < subtree[h - 1][b]; });
        s += '(';
        for (std::size_t c = 0; c < kids.size(); ++c) {
          if (c) s += ',';
          s += subtree[h - 1][kids[c]];
        }
        s += ')';
      }
      subtree[h][v] = std::move(s);
    }
  }

  // Canonical vertex order: roots by subtree key, then children of each
  // vertex in parent order, each group by subtree key.
  std::vector<std::vector<int>> order(levels);
  auto& top = order[levels - 1];
  top.resize(layout.labels[levels - 1].size());
  std::iota(top.begin(), top.end(), 0);
  std::sort(top.begin(), top.end(),
            [&](int a, int b) { return subtree[levels - 1][a] < subtree[levels - 1][b]; });
  for (std::size_t h = levels - 1; h >= 1; --h) {
    for (int v : order[h]) {
      order[h - 1].insert(order[h - 1].end(), children[h][v].begin(), children[h][v].end());
    }
  }

  layout_.labels.resize(levels);
  layout_.parents.resize(levels);
  std::vector<std::vector<int>> position(levels);
  for (std::size_t h = 0; h < levels; ++h) {
    position[h].resize(order[h].size());
    for (std::size_t i = 0; i < order[h].size(); ++i) position[h][order[h][i]] = static_cast<int>(i);
  }
  for (std::size_t h = 0; h < levels; ++h) {
    for (int old : order[h]) {
      layout_.labels[h].push_back(layout.labels[h][old]);
      if (h + 1 < levels) layout_.parents[h].push_back(position[h + 1][layout.parents[h][old]]);
    }
  }

  for (std::size_t i = 0; i < top.size(); ++i) {
    if (i) key_ += ';';
    key_ += subtree[levels - 1][top[i]];
  }
}

int MarkedForest::total() const {
  return std::accumulate(layout_.labels.back().begin(), layout_.labels.back().end(), 0);
}

NumberPartition MarkedForest::level_partition(int height) const {
  if (height < 0 || height > rank() + 1) {
    throw InvalidInput("level " + std::to_string(height) + " out of range for rank " + std::to_string(rank()));
  }
  return NumberPartition(layout_.labels[height]);
}

MarkedForest delete_level(const MarkedForest& f, int i) {
  if (f.rank() < 1) throw InvalidInput("a rank-0 forest has no level deletions");
  if (i < 0 || i > f.rank()) throw InvalidInput("level " + std::to_string(i) + " cannot be deleted");
  ForestLayout l = f.layout();
  if (i > 0) {
    for (auto& p : l.parents[i - 1]) p = l.parents[i][p];
  }
  l.labels.erase(l.labels.begin() + i);
  l.parents.erase(l.parents.begin() + i);
  return MarkedForest(l);
}

std::vector<std::pair<long, MarkedForest>> boundary(const MarkedForest& f) {
  std::map<std::string, std::pair<long, MarkedForest>> terms;
  if (f.rank() < 1) return {};
  for (int i = 0; i <= f.rank(); ++i) {
    auto face = delete_level(f, i);
    long sign = (i % 2 == 0) ? 1 : -1;
    std::string key = face.key();
    auto it = terms.find(key);
    if (it == terms.end()) {
      terms.emplace(std::move(key), std::make_pair(sign, std::move(face)));
    } else {
      it->second.first += sign;
    }
  }
  std::vector<std::pair<long, MarkedForest>> out;
  for (auto& [key, term] : terms) {
    if (term.first != 0) out.push_back(std::move(term));
  }
  return out;
}

MarkedForest level_vertex(const MarkedForest& f, int i) {
  if (i < 0 || i > f.rank()) throw InvalidInput("vertex level out of range");
  const auto& src = f.layout();
  ForestLayout l;
  l.labels = {src.labels[i], src.labels.back()};
  std::vector<int> up = src.parents[i];
  for (int h = i + 1; h <= f.rank(); ++h) {
    for (auto& p : up) p = src.parents[h][p];
  }
  l.parents = {std::move(up), {}};
  return MarkedForest(l);
}

Admissible lambda_admissible(const NumberPartition& lambda, ForestModel model) {
  struct Memo {
    std::mutex mutex;
    std::map<NumberPartition, bool> seen;
  };
  auto memo = std::make_shared<Memo>();
  return [lambda, model, memo](const NumberPartition& tau) {
    if (tau.total() != lambda.total()) return false;
    {
      std::lock_guard lock(memo->mutex);
      if (auto it = memo->seen.find(tau); it != memo->seen.end()) return it->second;
    }
    bool ok = model == ForestModel::join_closed ? is_join_type(lambda, tau) : refines_number(lambda, tau);
    std::lock_guard lock(memo->mutex);
    memo->seen.emplace(tau, ok);
    return ok;
  };
}

Admissible family_admissible(std::vector<NumberPartition> family) {
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  return [family = std::move(family)](const NumberPartition& tau) {
    return std::binary_search(family.begin(), family.end(), tau);
  };
}

std::size_t ForestCells::size() const {
  std::size_t n = 0;
  for (const auto& r : by_rank) n += r.size();
  return n;
}

ForestCells enumerate_all_forests(const Admissible& admissible, const NumberPartition& mu, const Guards& guards) {
  if (mu.empty()) throw InvalidInput("roots must form a nonempty partition");
  ForestCells cells{mu, {}};
  LevelExtender extender(admissible, mu.parts().front(), mu.total());
  std::size_t total = 0;

  auto collect = [&](const std::vector<const ForestLayout*>& bases) {
    std::map<std::string, MarkedForest> found;
    for (const auto* base : bases) {
      extender.extend(*base, [&](MarkedForest f) {
        auto key = f.key();
        found.emplace(std::move(key), std::move(f));
      });
      if (total + found.size() > guards.max_forests) {
        throw GuardExceeded("forest enumeration exceeds " + std::to_string(guards.max_forests) + " cells");
      }
    }
    std::vector<MarkedForest> out;
    out.reserve(found.size());
    for (auto& [key, f] : found) out.push_back(std::move(f));
    total += out.size();
    return out;
  };

  auto start = root_only(mu);
  auto level = collect({&start});
  while (!level.empty()) {
    std::vector<const ForestLayout*> bases;
    bases.reserve(level.size());
    for (const auto& f : level) bases.push_back(&f.layout());
    auto next = collect(bases);
    cells.by_rank.push_back(std::move(level));
    level = std::move(next);
  }
  return cells;
}

std::vector<MarkedForest> enumerate_forests(const Admissible& admissible, const NumberPartition& mu, int rank,
                                            const Guards& guards) {
  if (rank < 0) throw InvalidInput("rank must be non-negative");
  auto cells = enumerate_all_forests(admissible, mu, guards);
  if (rank > cells.top_rank()) return {};
  return cells.by_rank[rank];
}

MarkedForest insert_gamma_level(const MarkedForest& f, int h, int k) {
  if (k < 2) throw InvalidInput("k must be at least 2");
  if (h < 0 || h > f.rank()) throw InvalidInput("insertion height out of range");
  const auto& src = f.layout();
  const auto& split_level = src.labels[h];

  std::vector<int> new_labels, new_parents;
  std::vector<std::vector<int>> new_ks(split_level.size()), new_ones(split_level.size());
  for (std::size_t v = 0; v < split_level.size(); ++v) {
    int q = split_level[v] / k, r = split_level[v] % k;
    for (int i = 0; i < q; ++i) {
      new_ks[v].push_back(static_cast<int>(new_labels.size()));
      new_labels.push_back(k);
      new_parents.push_back(static_cast<int>(v));
    }
    for (int i = 0; i < r; ++i) {
      new_ones[v].push_back(static_cast<int>(new_labels.size()));
      new_labels.push_back(1);
      new_parents.push_back(static_cast<int>(v));
    }
  }

  ForestLayout l;
  if (h > 0) {
    const auto& below = src.labels[h - 1];
    std::vector<std::vector<int>> old_ks(split_level.size()), old_ones(split_level.size());
    for (std::size_t j = 0; j < below.size(); ++j) {
      int p = src.parents[h - 1][j];
      if (below[j] == k) {
        old_ks[p].push_back(static_cast<int>(j));
      } else if (below[j] == 1) {
        old_ones[p].push_back(static_cast<int>(j));
      } else {
        throw InvalidInput("levels below the insertion must carry only labels k and 1");
      }
    }
    std::vector<int> regrafted(below.size(), -1);
    for (std::size_t v = 0; v < split_level.size(); ++v) {
      if (old_ks[v].size() > new_ks[v].size()) throw InvalidInput("too many k-children to regraft");
      std::size_t next_one = 0;
      for (std::size_t t = 0; t < new_ks[v].size(); ++t) {
        if (t < old_ks[v].size()) {
          regrafted[old_ks[v][t]] = new_ks[v][t];
        } else {
          for (int c = 0; c < k; ++c) {
            if (next_one >= old_ones[v].size()) throw InvalidInput("not enough 1-children to regraft");
            regrafted[old_ones[v][next_one++]] = new_ks[v][t];
          }
        }
      }
      for (int target : new_ones[v]) {
        if (next_one >= old_ones[v].size()) throw InvalidInput("not enough 1-children to regraft");
        regrafted[old_ones[v][next_one++]] = target;
      }
      if (next_one != old_ones[v].size()) throw InvalidInput("leftover 1-children after regrafting");
    }
    for (int i = 0; i < h - 1; ++i) {
      l.labels.push_back(src.labels[i]);
      l.parents.push_back(src.parents[i]);
    }
    l.labels.push_back(below);
    l.parents.push_back(regrafted);
  }
  l.labels.push_back(new_labels);
  l.parents.push_back(new_parents);
  for (std::size_t i = h; i < src.labels.size(); ++i) {
    l.labels.push_back(src.labels[i]);
    l.parents.push_back(src.parents[i]);
  }
  return MarkedForest(l);
}

}  // namespace strata
