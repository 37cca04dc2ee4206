#include "strata/triangulated_space.hpp"

#include <algorithm>
#include <unordered_map>

#include "strata/errors.hpp"

namespace strata {

void TriangulatedSpace::add_dimension(std::vector<Cell> cells, std::vector<std::string> labels) {
  const int d = static_cast<int>(cells_.size());
  if (labels.empty()) {
    labels.resize(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) labels[i] = std::to_string(d) + ":" + std::to_string(i);
  }
  if (labels.size() != cells.size()) throw InvalidInput("one label per cell required");
  if (d == 0) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (cells[i].vertices.empty()) cells[i].vertices = {static_cast<int>(i)};
    }
  }
  cells_.push_back(std::move(cells));
  labels_.push_back(std::move(labels));
}

void TriangulatedSpace::finalize() {
  cofaces_.assign(cells_.size(), {});
  for (std::size_t d = 0; d < cells_.size(); ++d) cofaces_[d].resize(cells_[d].size());
  for (std::size_t d = 0; d < cells_.size(); ++d) {
    for (std::size_t id = 0; id < cells_[d].size(); ++id) {
      const auto& c = cells_[d][id];
      if (c.vertices.size() != d + 1) throw ConsistencyError("cell has the wrong number of vertices");
      if (d == 0) {
        if (c.vertices.front() != static_cast<int>(id)) throw ConsistencyError("0-cell must be its own vertex");
        continue;
      }
      if (c.faces.size() != d + 1) throw ConsistencyError("cell has the wrong number of faces");
      for (std::size_t i = 0; i <= d; ++i) {
        int f = c.faces[i];
        if (f < 0 || static_cast<std::size_t>(f) >= cells_[d - 1].size()) {
          throw ConsistencyError("face refers to a missing cell");
        }
        std::vector<int> expected = c.vertices;
        expected.erase(expected.begin() + static_cast<long>(i));
        if (cells_[d - 1][f].vertices != expected) {
          throw ConsistencyError("face " + std::to_string(i) + " of cell " + labels_[d][id] +
                                 " does not omit exactly that vertex");
        }
        cofaces_[d - 1][f].emplace_back(static_cast<int>(id), static_cast<int>(i));
      }
    }
  }
}

std::vector<int> TriangulatedSpace::f_vector() const {
  std::vector<int> f;
  for (const auto& dim : cells_) f.push_back(static_cast<int>(dim.size()));
  return f;
}

std::size_t TriangulatedSpace::cell_count() const {
  std::size_t n = 0;
  for (const auto& dim : cells_) n += dim.size();
  return n;
}

TriangulatedSpace TriangulatedSpace::induced_subcomplex(const std::vector<char>& keep_vertex) const {
  TriangulatedSpace sub;
  std::vector<int> vertex_map;  // old vertex id -> new vertex id
  std::vector<int> previous;    // old id -> new id, one dimension down
  for (std::size_t d = 0; d < cells_.size(); ++d) {
    std::vector<int> renumber(cells_[d].size(), -1);
    std::vector<Cell> kept;
    std::vector<std::string> names;
    for (std::size_t id = 0; id < cells_[d].size(); ++id) {
      const auto& c = cells_[d][id];
      bool inside = std::all_of(c.vertices.begin(), c.vertices.end(), [&](int v) { return keep_vertex[v] != 0; });
      if (!inside) continue;
      renumber[id] = static_cast<int>(kept.size());
      Cell nc;
      if (d == 0) {
        nc.vertices = {renumber[id]};
      } else {
        for (int v : c.vertices) nc.vertices.push_back(vertex_map[v]);
        for (int f : c.faces) nc.faces.push_back(previous[f]);
      }
      kept.push_back(std::move(nc));
      names.push_back(labels_[d][id]);
    }
    if (kept.empty()) break;
    if (d == 0) vertex_map = renumber;
    previous = std::move(renumber);
    sub.cells_.push_back(std::move(kept));
    sub.labels_.push_back(std::move(names));
  }
  sub.finalize();
  return sub;
}

TriangulatedSpace forest_space(const ForestCells& cells) {
  TriangulatedSpace space;
  if (cells.by_rank.empty()) {
    space.finalize();
    return space;
  }

  std::vector<const MarkedForest*> vertices;
  for (const auto& f : cells.by_rank[0]) vertices.push_back(&f);
  std::sort(vertices.begin(), vertices.end(), [](const MarkedForest* a, const MarkedForest* b) {
    auto la = a->layout().labels[0].size(), lb = b->layout().labels[0].size();
    if (la != lb) return la > lb;
    return a->key() < b->key();
  });

  std::unordered_map<std::string, int> vertex_id, below;
  {
    std::vector<Cell> zero(vertices.size());
    std::vector<std::string> names;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      vertex_id.emplace(vertices[i]->key(), static_cast<int>(i));
      names.push_back(vertices[i]->key());
    }
    space.add_dimension(std::move(zero), std::move(names));
    below = vertex_id;
  }

  for (std::size_t r = 1; r < cells.by_rank.size(); ++r) {
    std::vector<Cell> dim;
    std::vector<std::string> names;
    std::unordered_map<std::string, int> here;
    for (const auto& f : cells.by_rank[r]) {
      Cell c;
      for (int i = 0; i <= static_cast<int>(r); ++i) {
        c.vertices.push_back(vertex_id.at(level_vertex(f, i).key()));
        auto face = below.find(delete_level(f, i).key());
        if (face == below.end()) throw ConsistencyError("face of " + f.key() + " missing from the enumeration");
        c.faces.push_back(face->second);
      }
      here.emplace(f.key(), static_cast<int>(dim.size()));
      names.push_back(f.key());
      dim.push_back(std::move(c));
    }
    space.add_dimension(std::move(dim), std::move(names));
    below = std::move(here);
  }
  space.finalize();
  return space;
}

}  // namespace strata
