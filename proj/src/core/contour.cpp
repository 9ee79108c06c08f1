#include "contourmon/contour.hpp"

#include <cstdio>
#include <map>
#include <ostream>

namespace contourmon::contour {

double ContourPiece::length() const {
  double len = 0.0;
  for (std::size_t k = 1; k < vertices.size(); ++k) len += distance(vertices[k - 1], vertices[k]);
  return len;
}

namespace {

// Edge along x between nodes (i, j) and (i + 1, j) has kind 0; edge along y
// between (i, j) and (i, j + 1) has kind 1.
struct EdgeKey {
  int kind;
  int i;
  int j;
  auto operator<=>(const EdgeKey&) const = default;
};

struct KeyedSegment {
  EdgeKey from;
  EdgeKey to;
};

struct Marcher {
  const interp::GridEstimate& grid;
  double level;

  bool above(int i, int j) const { return grid.at(i, j) >= level; }

  bool crosses(const EdgeKey& e) const {
    return e.kind == 0 ? above(e.i, e.j) != above(e.i + 1, e.j) : above(e.i, e.j) != above(e.i, e.j + 1);
  }

  Vec2 point(const EdgeKey& e) const {
    const auto& s = grid.spec();
    const int i1 = e.kind == 0 ? e.i + 1 : e.i;
    const int j1 = e.kind == 0 ? e.j : e.j + 1;
    const double va = grid.at(e.i, e.j);
    const double vb = grid.at(i1, j1);
    const double t = (level - va) / (vb - va);
    if (e.kind == 0) return {s.x(e.i) + t * (s.x(i1) - s.x(e.i)), s.y(e.j)};
    return {s.x(e.i), s.y(e.j) + t * (s.y(j1) - s.y(e.j))};
  }

  std::vector<KeyedSegment> segments() const {
    const auto& s = grid.spec();
    std::vector<KeyedSegment> out;
    for (int i = 0; i + 1 < s.P; ++i) {
      for (int j = 0; j + 1 < s.Q; ++j) {
        const EdgeKey bottom{0, i, j}, top{0, i, j + 1}, left{1, i, j}, right{1, i + 1, j};
        EdgeKey hit[4];
        int n = 0;
        for (const EdgeKey& e : {bottom, right, top, left}) {
          if (crosses(e)) hit[n++] = e;
        }
        if (n == 2) {
          out.push_back({hit[0], hit[1]});
        } else if (n == 4) {
          const double centre = 0.25 * (grid.at(i, j) + grid.at(i + 1, j) + grid.at(i, j + 1) + grid.at(i + 1, j + 1));
          if ((centre >= level) == above(i, j)) {
            // Corners (i, j) and (i + 1, j + 1) join through the centre.
            out.push_back({bottom, right});
            out.push_back({top, left});
          } else {
            out.push_back({bottom, left});
            out.push_back({top, right});
          }
        }
      }
    }
    return out;
  }
};

}  // namespace

std::vector<Segment> cell_segments(const interp::GridEstimate& grid, double level) {
  const Marcher m{grid, level};
  std::vector<Segment> out;
  for (const auto& ks : m.segments()) out.push_back({m.point(ks.from), m.point(ks.to)});
  return out;
}

std::vector<ContourPiece> extract_contours(const interp::GridEstimate& grid, double level) {
  if (!(level > grid.min() && level < grid.max())) return {};
  const Marcher m{grid, level};
  const auto segs = m.segments();

  std::map<EdgeKey, std::vector<std::size_t>> incident;
  for (std::size_t k = 0; k < segs.size(); ++k) {
    incident[segs[k].from].push_back(k);
    incident[segs[k].to].push_back(k);
  }
  std::vector<bool> used(segs.size(), false);

  auto walk = [&](std::size_t first, EdgeKey start) {
    ContourPiece piece;
    piece.level = level;
    piece.vertices.push_back(m.point(start));
    EdgeKey at = start;
    std::size_t seg = first;
    while (true) {
      used[seg] = true;
      const EdgeKey next = segs[seg].from == at ? segs[seg].to : segs[seg].from;
      piece.vertices.push_back(m.point(next));
      at = next;
      if (at == start) {
        piece.closed = true;
        break;
      }
      std::size_t follow = segs.size();
      for (std::size_t cand : incident[at]) {
        if (!used[cand]) {
          follow = cand;
          break;
        }
      }
      if (follow == segs.size()) break;
      seg = follow;
    }
    return piece;
  };

  std::vector<ContourPiece> pieces;
  // Open pieces start on a boundary edge, which has exactly one segment.
  for (std::size_t k = 0; k < segs.size(); ++k) {
    if (used[k]) continue;
    for (const EdgeKey& end : {segs[k].from, segs[k].to}) {
      if (incident[end].size() == 1) {
        pieces.push_back(walk(k, end));
        break;
      }
    }
  }
  for (std::size_t k = 0; k < segs.size(); ++k) {
    if (!used[k]) pieces.push_back(walk(k, segs[k].from));
  }
  return pieces;
}

std::vector<Vec2> pick_start_points(std::span<const ContourPiece> pieces, const interp::GridEstimate& grid) {
  std::vector<Vec2> starts;
  starts.reserve(pieces.size());
  for (const auto& piece : pieces) {
    if (piece.vertices.empty()) continue;
    if (!piece.closed) {
      starts.push_back(piece.vertices.front());
      continue;
    }
    Vec2 best = piece.vertices.front();
    double steepest = -1.0;
    for (const Vec2& v : piece.vertices) {
      const double g = grid.gradient(v).norm();
      if (g > steepest) {
        steepest = g;
        best = v;
      }
    }
    starts.push_back(best);
  }
  return starts;
}

void write_contours_csv(std::span<const ContourPiece> pieces, std::ostream& out, bool header) {
  if (header) out << "level,piece_id,x,y\n";
  char buf[128];
  for (std::size_t id = 0; id < pieces.size(); ++id) {
    for (const Vec2& v : pieces[id].vertices) {
      std::snprintf(buf, sizeof buf, "%.10g,%zu,%.10g,%.10g\n", pieces[id].level, id, v.x, v.y);
      out << buf;
    }
  }
}

}  // namespace contourmon::contour
