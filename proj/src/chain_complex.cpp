#include "strata/chain_complex.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include <boost/multiprecision/cpp_int.hpp>

#include "strata/errors.hpp"

namespace strata {

namespace {

using Big = boost::multiprecision::cpp_int;
using SparseVec = std::vector<std::pair<int, Big>>;

// Returns a*u - b*v, entries sorted by index, zeros dropped.
SparseVec combine(const Big& a, const SparseVec& u, const Big& b, const SparseVec& v) {
  SparseVec out;
  out.reserve(u.size() + v.size());
  std::size_t i = 0, j = 0;
  while (i < u.size() || j < v.size()) {
    if (j == v.size() || (i < u.size() && u[i].first < v[j].first)) {
      out.emplace_back(u[i].first, a * u[i].second);
      ++i;
    } else if (i == u.size() || v[j].first < u[i].first) {
      out.emplace_back(v[j].first, -b * v[j].second);
      ++j;
    } else {
      Big x = a * u[i].second - b * v[j].second;
      if (x != 0) out.emplace_back(u[i].first, std::move(x));
      ++i;
      ++j;
    }
  }
  return out;
}

// Divides out the content so entries stay small.
void normalize(SparseVec& v) {
  if (v.empty()) return;
  Big g = 0;
  for (const auto& [idx, x] : v) {
    g = boost::multiprecision::gcd(g, x);
    if (g == 1) return;
  }
  if (g > 1) {
    for (auto& [idx, x] : v) x /= g;
  }
}

SparseVec to_big(const std::vector<std::pair<int, long>>& col) {
  SparseVec v;
  v.reserve(col.size());
  for (const auto& [r, x] : col) {
    if (x != 0) v.emplace_back(r, Big(x));
  }
  return v;
}

long rank_by_columns(const SparseMatrix& m) {
  std::unordered_map<int, SparseVec> pivot_of_low;
  long rank = 0;
  for (const auto& raw : m.columns) {
    SparseVec col = to_big(raw);
    while (!col.empty()) {
      auto it = pivot_of_low.find(col.back().first);
      if (it == pivot_of_low.end()) break;
      const SparseVec& p = it->second;
      Big a = p.back().second, b = col.back().second;
      Big g = boost::multiprecision::gcd(a, b);
      col = combine(a / g, col, b / g, p);
      normalize(col);
    }
    if (!col.empty()) {
      int low = col.back().first;
      pivot_of_low.emplace(low, std::move(col));
      ++rank;
    }
  }
  return rank;
}

long rank_by_rows(const SparseMatrix& m) {
  std::vector<SparseVec> rows(static_cast<std::size_t>(m.rows));
  for (int c = 0; c < m.cols(); ++c) {
    for (const auto& [r, x] : m.columns[c]) {
      if (x != 0) rows[r].emplace_back(c, Big(x));
    }
  }
  std::vector<int> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return rows[a].size() < rows[b].size(); });

  std::unordered_map<int, SparseVec> pivot_of_lead;
  long rank = 0;
  for (int r : order) {
    SparseVec row = std::move(rows[r]);
    while (!row.empty()) {
      auto it = pivot_of_lead.find(row.front().first);
      if (it == pivot_of_lead.end()) break;
      const SparseVec& p = it->second;
      Big a = p.front().second, b = row.front().second;
      Big g = boost::multiprecision::gcd(a, b);
      row = combine(a / g, row, b / g, p);
      normalize(row);
    }
    if (!row.empty()) {
      int lead = row.front().first;
      pivot_of_lead.emplace(lead, std::move(row));
      ++rank;
    }
  }
  return rank;
}

}  // namespace

long matrix_rank(const SparseMatrix& m, RankMethod method) {
  return method == RankMethod::column_reduction ? rank_by_columns(m) : rank_by_rows(m);
}

ChainComplex ChainComplex::build(const std::vector<std::vector<CellSpec>>& cells_by_dim) {
  ChainComplex c;
  std::unordered_map<std::string, int> below;
  for (std::size_t d = 0; d < cells_by_dim.size(); ++d) {
    const auto& cells = cells_by_dim[d];
    if (cells.empty()) {
      bool higher = std::any_of(cells_by_dim.begin() + static_cast<long>(d), cells_by_dim.end(),
                                [](const auto& v) { return !v.empty(); });
      if (higher) throw InvalidInput("cells above an empty dimension " + std::to_string(d));
      break;
    }
    SparseMatrix m;
    m.rows = d == 0 ? 1 : static_cast<int>(cells_by_dim[d - 1].size());
    std::unordered_map<std::string, int> here;
    for (const auto& cell : cells) {
      if (!here.emplace(cell.key, static_cast<int>(here.size())).second) {
        throw InvalidInput("duplicate cell " + cell.key);
      }
      std::map<int, long> entries;
      if (d == 0) {
        entries[0] = 1;
      } else {
        for (const auto& [coef, face] : cell.faces) {
          auto it = below.find(face);
          if (it == below.end()) throw InvalidInput("face " + face + " of " + cell.key + " is missing");
          entries[it->second] += coef;
        }
      }
      std::vector<std::pair<int, long>> col;
      for (const auto& [r, x] : entries) {
        if (x != 0) col.emplace_back(r, x);
      }
      m.columns.push_back(std::move(col));
    }
    c.boundaries_.push_back(std::move(m));
    below = std::move(here);
  }
  c.check_square_zero();
  return c;
}

ChainComplex ChainComplex::from_space(const TriangulatedSpace& space) {
  ChainComplex c;
  for (int d = 0; d <= space.dimension(); ++d) {
    const auto& cells = space.cells(d);
    SparseMatrix m;
    m.rows = d == 0 ? 1 : static_cast<int>(space.cells(d - 1).size());
    for (const auto& cell : cells) {
      std::map<int, long> entries;
      if (d == 0) {
        entries[0] = 1;
      } else {
        for (std::size_t i = 0; i < cell.faces.size(); ++i) entries[cell.faces[i]] += (i % 2 == 0) ? 1 : -1;
      }
      std::vector<std::pair<int, long>> col;
      for (const auto& [r, x] : entries) {
        if (x != 0) col.emplace_back(r, x);
      }
      m.columns.push_back(std::move(col));
    }
    c.boundaries_.push_back(std::move(m));
  }
  c.check_square_zero();
  return c;
}

std::vector<int> ChainComplex::f_vector() const {
  std::vector<int> f;
  for (const auto& m : boundaries_) f.push_back(m.cols());
  return f;
}

void ChainComplex::check_square_zero() const {
  for (std::size_t d = 1; d < boundaries_.size(); ++d) {
    const auto& hi = boundaries_[d];
    const auto& lo = boundaries_[d - 1];
    for (int c = 0; c < hi.cols(); ++c) {
      std::map<int, long> acc;
      for (const auto& [mid, x] : hi.columns[c]) {
        for (const auto& [r, y] : lo.columns[mid]) acc[r] += x * y;
      }
      for (const auto& [r, v] : acc) {
        if (v != 0) {
          throw ConsistencyError("boundary squared is nonzero at dimension " + std::to_string(d) + ", cell " +
                                 std::to_string(c));
        }
      }
    }
  }
}

BettiVector::BettiVector(std::map<int, long> values) : values_(std::move(values)) {
  for (auto it = values_.begin(); it != values_.end();) {
    if (it->second == 0) {
      it = values_.erase(it);
    } else {
      ++it;
    }
  }
}

BettiVector BettiVector::empty_space() { return BettiVector(std::map<int, long>{{-1, 1}}); }
BettiVector BettiVector::point() { return BettiVector(); }

long BettiVector::operator[](int i) const {
  auto it = values_.find(i);
  return it == values_.end() ? 0 : it->second;
}

bool BettiVector::is_zero() const { return values_.empty(); }

std::string BettiVector::to_string() const {
  if (values_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, b] : values_) {
    if (!first) os << ", ";
    first = false;
    os << "b" << i << "=" << b;
  }
  return os.str();
}

bool BettiVector::operator==(const BettiVector& other) const { return values_ == other.values_; }

BettiVector reduced_betti(const ChainComplex& c, bool cross_check) {
  const int top = c.top_dimension();
  if (top < 0) return BettiVector::empty_space();
  std::vector<long> rank(static_cast<std::size_t>(top) + 2, 0);  // rank[d] = rank of boundary(d)
  for (int d = 0; d <= top; ++d) {
    rank[d] = matrix_rank(c.boundary(d), RankMethod::column_reduction);
    if (cross_check) {
      long other = matrix_rank(c.boundary(d), RankMethod::row_elimination);
      if (other != rank[d]) {
        throw ConsistencyError("rank mismatch in dimension " + std::to_string(d) + ": " + std::to_string(rank[d]) +
                               " vs " + std::to_string(other));
      }
    }
  }
  auto f = c.f_vector();
  std::map<int, long> b;
  b[-1] = 1 - rank[0];
  for (int d = 0; d <= top; ++d) b[d] = f[d] - rank[d] - rank[d + 1];
  for (const auto& [d, v] : b) {
    if (v < 0) throw ConsistencyError("negative Betti number in dimension " + std::to_string(d));
  }
  return BettiVector(std::move(b));
}

long euler_characteristic(const ChainComplex& c) {
  long chi = 0;
  auto f = c.f_vector();
  for (std::size_t d = 0; d < f.size(); ++d) chi += (d % 2 == 0) ? f[d] : -f[d];
  return chi;
}

long euler_from_betti(const BettiVector& b) {
  long chi = 1;
  for (const auto& [i, v] : b.values()) chi += (((i % 2) + 2) % 2 == 0) ? v : -v;
  return chi;
}

}  // namespace strata
