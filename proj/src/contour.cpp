#include "h3body/contour.hpp"

#include <algorithm>
#include <numeric>

namespace h3body {

namespace {

// Horizontal edges (i,j)-(i+1,j) get even ids, vertical edges (i,j)-(i,j+1) odd.
long hedge(const ScalarGrid& g, int i, int j) { return 2L * (static_cast<long>(i) * g.ny + j); }
long vedge(const ScalarGrid& g, int i, int j) { return 2L * (static_cast<long>(i) * g.ny + j) + 1; }

ContourPoint lerp(double x0, double y0, double v0, double x1, double y1, double v1) {
  const double s = (v0 == v1) ? 0.5 : v0 / (v0 - v1);
  return {x0 + s * (x1 - x0), y0 + s * (y1 - y0)};
}

struct DisjointSet {
  std::vector<int> parent;
  explicit DisjointSet(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

Contour marching_squares(const ScalarGrid& g) {
  Contour out;
  for (int i = 0; i + 1 < g.nx; ++i) {
    for (int j = 0; j + 1 < g.ny; ++j) {
      // Corners counter-clockwise from (i,j); a node counts as "inside" when >= 0.
      const double v[4] = {g.at(i, j), g.at(i + 1, j), g.at(i + 1, j + 1), g.at(i, j + 1)};
      const double px[4] = {g.x[i], g.x[i + 1], g.x[i + 1], g.x[i]};
      const double py[4] = {g.y[j], g.y[j], g.y[j + 1], g.y[j + 1]};
      const long edge_id[4] = {hedge(g, i, j), vedge(g, i + 1, j), hedge(g, i, j + 1),
                               vedge(g, i, j)};
      int mask = 0;
      for (int k = 0; k < 4; ++k)
        if (v[k] >= 0.0) mask |= 1 << k;
      if (mask == 0 || mask == 15) continue;

      std::vector<int> crossed;
      for (int k = 0; k < 4; ++k)
        if (((mask >> k) & 1) != ((mask >> ((k + 1) % 4)) & 1)) crossed.push_back(k);

      auto point = [&](int e) {
        const int k0 = e, k1 = (e + 1) % 4;
        return lerp(px[k0], py[k0], v[k0], px[k1], py[k1], v[k1]);
      };
      auto emit = [&](int e0, int e1) {
        out.segments.push_back({point(e0), point(e1), i, j, edge_id[e0], edge_id[e1]});
      };

      if (crossed.size() == 2) {
        emit(crossed[0], crossed[1]);
      } else {
        // Saddle: crossed = {0,1,2,3}. If the centre agrees with corner 0,
        // corner 0's region connects through the middle, so cut off corners 1 and 3.
        const double centre = 0.25 * (v[0] + v[1] + v[2] + v[3]);
        const bool centre_in = centre >= 0.0;
        if (centre_in == static_cast<bool>(mask & 1)) {
          emit(0, 1);
          emit(2, 3);
        } else {
          emit(3, 0);
          emit(1, 2);
        }
      }
      out.cells.insert({i, j});
    }
  }

  // Stitch segments sharing an edge crossing.
  std::vector<long> ids;
  for (const auto& s : out.segments) {
    ids.push_back(s.edge_a);
    ids.push_back(s.edge_b);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto idx = [&](long e) {
    return static_cast<int>(std::lower_bound(ids.begin(), ids.end(), e) - ids.begin());
  };
  DisjointSet ds(static_cast<int>(ids.size()));
  for (const auto& s : out.segments) ds.unite(idx(s.edge_a), idx(s.edge_b));
  for (int k = 0; k < static_cast<int>(ids.size()); ++k)
    if (ds.find(k) == k) ++out.components;
  return out;
}

std::set<Cell> sign_change_cells(const ScalarGrid& g) {
  std::set<Cell> cells;
  for (int i = 0; i + 1 < g.nx; ++i)
    for (int j = 0; j + 1 < g.ny; ++j) {
      const double v[4] = {g.at(i, j), g.at(i + 1, j), g.at(i + 1, j + 1), g.at(i, j + 1)};
      const int inside = std::count_if(v, v + 4, [](double a) { return a >= 0.0; });
      if (inside != 0 && inside != 4) cells.insert({i, j});
    }
  return cells;
}

double cell_agreement(const std::set<Cell>& a, const std::set<Cell>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::vector<Cell> inter, uni;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(inter));
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(uni));
  return static_cast<double>(inter.size()) / static_cast<double>(uni.size());
}

}  // namespace h3body
