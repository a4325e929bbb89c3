#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <queue>
#include <string>
#include <unordered_set>
#include <vector>

#include "disfermion/gaussian.hpp"
#include "json.hpp"

namespace disfermion {

enum class Color { White, EvenBlack, OddBlack };

/// A point x + iy of Z^2 <= C.
struct LP {
  int x = 0, y = 0;

  friend LP operator+(LP a, LP b) { return {a.x + b.x, a.y + b.y}; }
  friend LP operator-(LP a, LP b) { return {a.x - b.x, a.y - b.y}; }
  friend bool operator==(LP a, LP b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(LP a, LP b) { return !(a == b); }
  friend bool operator<(LP a, LP b) { return a.y != b.y ? a.y < b.y : a.x < b.x; }

  LP rot90() const { return {-y, x}; }  // multiplication by i
  int manhattan() const { return std::abs(x) + std::abs(y); }
  bool is_black() const { return (x + y) % 2 == 0; }
  bool is_white() const { return !is_black(); }

  GQ to_gq() const { return GQ(x, y); }
  std::complex<double> to_complex() const { return {double(x), double(y)}; }
  std::string str() const { return "(" + std::to_string(x) + "," + std::to_string(y) + ")"; }
};

inline Color classify(LP p) {
  bool xe = (p.x % 2 + 2) % 2 == 0, ye = (p.y % 2 + 2) % 2 == 0;
  if (xe && ye) return Color::EvenBlack;
  if (!xe && !ye) return Color::OddBlack;
  return Color::White;
}

struct LPHash {
  size_t operator()(LP p) const {
    return std::hash<long long>()((long long(p.x) << 32) ^ (unsigned(p.y)));
  }
};

inline const std::array<LP, 4> kDirs = {LP{1, 0}, LP{0, 1}, LP{-1, 0}, LP{0, -1}};

/// Finite vertex set of Z^2, optionally with a distinguished even-black sink.
/// Vertices are kept sorted so every downstream indexing is deterministic.
struct Domain {
  std::vector<LP> vertices;  // sorted
  std::optional<LP> sink;
  std::unordered_set<LP, LPHash> index;

  Domain() = default;
  explicit Domain(std::vector<LP> vs, std::optional<LP> s = std::nullopt) {
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    vertices = std::move(vs);
    index.insert(vertices.begin(), vertices.end());
    sink = s;
    if (sink && !contains(*sink)) throw error("sink " + sink->str() + " not in domain");
  }
  static Domain rect(int x0, int y0, int x1, int y1, std::optional<LP> s = std::nullopt) {
    std::vector<LP> vs;
    for (int y = std::min(y0, y1); y <= std::max(y0, y1); ++y)
      for (int x = std::min(x0, x1); x <= std::max(x0, x1); ++x) vs.push_back({x, y});
    return Domain(std::move(vs), s);
  }
  /// Centered square of odd side 4n+1 with the sink at the most negative
  /// corner; the default member of the thermodynamic-limit sequence.
  static Domain centered_square(int n) {
    return rect(-2 * n, -2 * n, 2 * n, 2 * n, LP{-2 * n, -2 * n});
  }

  bool contains(LP p) const { return index.count(p) > 0; }
  size_t size() const { return vertices.size(); }

  std::vector<LP> neighbors_in(LP p) const {
    std::vector<LP> out;
    for (LP d : kDirs)
      if (contains(p + d)) out.push_back(p + d);
    return out;
  }

  bool connected() const {
    if (vertices.empty()) return true;
    std::unordered_set<LP, LPHash> seen;
    std::queue<LP> q;
    q.push(vertices[0]);
    seen.insert(vertices[0]);
    while (!q.empty()) {
      LP p = q.front(); q.pop();
      for (LP d : kDirs) {
        LP u = p + d;
        if (contains(u) && !seen.count(u)) { seen.insert(u); q.push(u); }
      }
    }
    return seen.size() == vertices.size();
  }

  /// No holes: the complement inside a 1-padded bounding box is edge-connected
  /// to the box boundary.
  bool simply_connected_complement() const {
    if (vertices.empty()) return true;
    int x0 = vertices[0].x, x1 = x0, y0 = vertices[0].y, y1 = y0;
    for (LP p : vertices) {
      x0 = std::min(x0, p.x); x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y); y1 = std::max(y1, p.y);
    }
    --x0; --y0; ++x1; ++y1;
    std::unordered_set<LP, LPHash> seen;
    std::queue<LP> q;
    q.push({x0, y0});
    seen.insert({x0, y0});
    while (!q.empty()) {
      LP p = q.front(); q.pop();
      for (LP d : kDirs) {
        LP u = p + d;
        if (u.x < x0 || u.x > x1 || u.y < y0 || u.y > y1) continue;
        if (contains(u) || seen.count(u)) continue;
        seen.insert(u);
        q.push(u);
      }
    }
    size_t box = size_t(x1 - x0 + 1) * size_t(y1 - y0 + 1);
    return seen.size() == box - vertices.size();
  }
};

/// Trace the outer Jordan curve through boundary vertices (right-hand rule,
/// counterclockwise).  Returns the vertex cycle without the closing repeat,
/// or empty if the walk revisits a vertex (pinched domain: no Jordan curve).
inline std::vector<LP> boundary_cycle(const Domain& d) {
  if (d.vertices.empty()) return {};
  LP v0 = d.vertices.front();  // lowest-leftmost by sort order
  LP dir{1, 0};
  if (!d.contains(v0 + dir)) dir = LP{0, 1};
  if (!d.contains(v0 + dir)) return {};  // isolated or dangling start
  auto right = [](LP u) { return LP{u.y, -u.x}; };
  auto left = [](LP u) { return LP{-u.y, u.x}; };
  std::vector<LP> cycle = {v0};
  std::unordered_set<LP, LPHash> seen = {v0};
  LP v = v0 + dir;
  while (!(v == v0)) {
    if (seen.count(v)) return {};  // revisit before closing: pinched boundary
    cycle.push_back(v);
    seen.insert(v);
    // outgoing direction by the right-hand rule: right, straight, left, back
    std::array<LP, 4> cand = {right(dir), dir, left(dir), LP{-dir.x, -dir.y}};
    bool found = false;
    for (LP u : cand)
      if (d.contains(v + u)) { dir = u; found = true; break; }
    if (!found) return {};
    v = v + dir;
  }
  return cycle;
}

struct TemperleyanReport {
  bool ok = false;
  std::string reason;  // empty when ok
  std::vector<LP> corners;
};

inline TemperleyanReport temperleyan_report(const Domain& d) {
  TemperleyanReport r;
  if (d.vertices.empty()) { r.reason = "empty domain"; return r; }
  if (!d.connected()) { r.reason = "not connected"; return r; }
  for (LP p : d.vertices)
    if (d.neighbors_in(p).size() < 2) {
      r.reason = "not simply connected: vertex " + p.str() + " has fewer than 2 neighbours";
      return r;
    }
  if (!d.simply_connected_complement()) { r.reason = "not simply connected: hole"; return r; }
  std::vector<LP> cyc = boundary_cycle(d);
  if (cyc.empty()) { r.reason = "not simply connected: pinched boundary"; return r; }
  // corners: direction changes along the cycle
  const int n = int(cyc.size());
  for (int i = 0; i < n; ++i) {
    LP prev = cyc[(i + n - 1) % n], cur = cyc[i], next = cyc[(i + 1) % n];
    LP din = cur - prev, dout = next - cur;
    if (din != dout) r.corners.push_back(cur);
  }
  for (LP c : r.corners)
    if (classify(c) != Color::EvenBlack) {
      r.reason = "corner at " + c.str() + " not even-black";
      return r;
    }
  r.ok = true;
  return r;
}

inline bool is_temperleyan(const Domain& d) { return temperleyan_report(d).ok; }

/// Sink validity: even-black with a white Z^2-neighbour outside the domain.
inline void validate_sink(const Domain& d, LP sink) {
  if (!d.contains(sink)) throw error("sink " + sink.str() + " not in domain");
  if (classify(sink) != Color::EvenBlack) throw error("sink " + sink.str() + " not even-black");
  for (LP dd : kDirs) {
    LP w = sink + dd;
    if (!d.contains(w) && w.is_white()) return;
  }
  throw error("sink " + sink.str() + " has no white neighbour outside the domain");
}

/// Closed dual contour.  Plaquette centers of (Z+1/2)^2 are stored in doubled
/// coordinates (odd integer pairs) so all geometry stays in exact integers.
struct DualContour {
  std::vector<LP> pts;  // doubled coordinates; pts.front() == pts.back()

  int steps() const { return int(pts.size()) - 1; }

  void validate() const {
    if (pts.size() < 5 || !(pts.front() == pts.back()))
      throw error("contour must be a closed loop");
    std::unordered_set<LP, LPHash> seen;
    for (size_t k = 1; k < pts.size(); ++k) {
      if ((pts[k] - pts[k - 1]).manhattan() != 2)
        throw error("contour step is not between nearest plaquette centers");
      if (pts[k].x % 2 == 0 || pts[k].y % 2 == 0)
        throw error("contour point is not a plaquette center");
      if (!seen.insert(pts[k]).second) throw error("contour self-intersects");
    }
  }

  /// +1 counterclockwise, -1 clockwise (from the shoelace sum).
  int orientation() const {
    long long area2 = 0;
    for (size_t k = 1; k < pts.size(); ++k)
      area2 += (long long)pts[k - 1].x * pts[k].y - (long long)pts[k].x * pts[k - 1].y;
    if (area2 == 0) throw error("degenerate contour");
    return area2 > 0 ? 1 : -1;
  }

  /// Step k (1-based like the sum in the integral): returns dz in {±1,±i} and
  /// the white/black lattice vertices across the dual edge.
  struct EdgeData {
    LP dz;      // actual displacement p_k - p_{k-1} (unit, in lattice coords)
    LP white;   // white vertex across the edge
    LP black;   // black vertex across the edge
  };
  EdgeData edge(size_t k) const {
    LP d1 = pts[k - 1], d2 = pts[k];
    LP mid2{(d1.x + d2.x) / 2, (d1.y + d2.y) / 2};    // doubled coords of midpoint
    LP delta2 = d2 - d1;                               // doubled displacement
    LP idelta2 = delta2.rot90();
    LP za{(mid2.x + idelta2.x / 2) / 2, (mid2.y + idelta2.y / 2) / 2};
    LP zb{(mid2.x - idelta2.x / 2) / 2, (mid2.y - idelta2.y / 2) / 2};
    EdgeData e;
    e.dz = LP{delta2.x / 2, delta2.y / 2};
    if (za.is_white()) { e.white = za; e.black = zb; }
    else { e.white = zb; e.black = za; }
    return e;
  }

  /// Even-odd interior: black and white lattice points enclosed.
  std::pair<std::vector<LP>, std::vector<LP>> interior() const {
    std::vector<LP> blacks, whites;
    int x0 = pts[0].x, x1 = x0, y0 = pts[0].y, y1 = y0;
    for (LP p : pts) {
      x0 = std::min(x0, p.x); x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y); y1 = std::max(y1, p.y);
    }
    // vertical segments in doubled coords
    struct Seg { int x, ylo, yhi; };
    std::vector<Seg> segs;
    for (size_t k = 1; k < pts.size(); ++k)
      if (pts[k].x == pts[k - 1].x)
        segs.push_back({pts[k].x, std::min(pts[k].y, pts[k - 1].y),
                        std::max(pts[k].y, pts[k - 1].y)});
    for (int y = y0 + 1; y <= y1 - 1; ++y) {
      if (y % 2 != 0) continue;  // lattice points have even doubled coords
      for (int x = x0 + 1; x <= x1 - 1; ++x) {
        if (x % 2 != 0) continue;
        int crossings = 0;
        for (const Seg& s : segs)
          if (s.x > x && s.ylo < y && y < s.yhi) ++crossings;
        if (crossings % 2 == 1) {
          LP z{x / 2, y / 2};
          (z.is_black() ? blacks : whites).push_back(z);
        }
      }
    }
    std::sort(blacks.begin(), blacks.end());
    std::sort(whites.begin(), whites.end());
    return {blacks, whites};
  }

  bool encloses(LP z) const {
    auto [b, w] = interior();
    auto& v = z.is_black() ? b : w;
    return std::binary_search(v.begin(), v.end(), z);
  }

  DualContour reversed() const {
    DualContour r;
    r.pts.assign(pts.rbegin(), pts.rend());
    return r;
  }
};

/// Positively-oriented axis-aligned rectangle of plaquette centers at
/// x = ±(hw-1/2), y = ±(hh-1/2).
inline DualContour rect_contour(int half_width, int half_height) {
  if (half_width < 1 || half_height < 1) throw error("rect_contour: half sizes must be >= 1");
  int X = 2 * half_width - 1, Y = 2 * half_height - 1;  // doubled coords
  DualContour c;
  auto push_run = [&](LP from, LP to) {
    LP d{(to.x - from.x == 0) ? 0 : (to.x > from.x ? 2 : -2),
         (to.y - from.y == 0) ? 0 : (to.y > from.y ? 2 : -2)};
    LP p = from;
    while (!(p == to)) { p = p + d; c.pts.push_back(p); }
  };
  c.pts.push_back({X, -Y});
  push_run({X, -Y}, {X, Y});
  push_run({X, Y}, {-X, Y});
  push_run({-X, Y}, {-X, -Y});
  push_run({-X, -Y}, {X, -Y});
  c.validate();
  return c;
}

/// Positively-oriented rectangle of plaquette centers tightly enclosing the
/// lattice box [x0,x1] x [y0,y1], expanded by `pad` plaquette rings.
inline DualContour rect_contour_box(int x0, int y0, int x1, int y1, int pad = 0) {
  int X0 = 2 * x0 - 1 - 2 * pad, X1 = 2 * x1 + 1 + 2 * pad;
  int Y0 = 2 * y0 - 1 - 2 * pad, Y1 = 2 * y1 + 1 + 2 * pad;
  DualContour c;
  auto push_run = [&](LP from, LP to) {
    LP d{(to.x - from.x == 0) ? 0 : (to.x > from.x ? 2 : -2),
         (to.y - from.y == 0) ? 0 : (to.y > from.y ? 2 : -2)};
    LP p = from;
    while (!(p == to)) { p = p + d; c.pts.push_back(p); }
  };
  c.pts.push_back({X1, Y0});
  push_run({X1, Y0}, {X1, Y1});
  push_run({X1, Y1}, {X0, Y1});
  push_run({X0, Y1}, {X0, Y0});
  push_run({X0, Y0}, {X1, Y0});
  c.validate();
  return c;
}

// ---------------------------------------------------------------------------
// domain file format: {"vertices": [[x,y],...]} or {"rect":[x0,y0,x1,y1]},
// optional {"sink":[x,y]}; the CLI also accepts inline "rect(x0,y0,x1,y1)".
// ---------------------------------------------------------------------------

inline Domain domain_from_json(const nlohmann::json& j) {
  std::optional<LP> sink;
  if (j.contains("sink")) sink = LP{j["sink"][0].get<int>(), j["sink"][1].get<int>()};
  if (j.contains("rect")) {
    auto& r = j["rect"];
    return Domain::rect(r[0].get<int>(), r[1].get<int>(), r[2].get<int>(), r[3].get<int>(), sink);
  }
  if (j.contains("vertices")) {
    std::vector<LP> vs;
    for (auto& v : j["vertices"]) vs.push_back({v[0].get<int>(), v[1].get<int>()});
    return Domain(std::move(vs), sink);
  }
  throw error("domain json needs \"vertices\" or \"rect\"");
}

inline Domain parse_domain_spec(const std::string& s) {
  if (s.rfind("rect(", 0) == 0 && s.back() == ')') {
    int a, b, c, d;
    if (std::sscanf(s.c_str(), "rect(%d,%d,%d,%d)", &a, &b, &c, &d) != 4)
      throw error("bad inline domain: " + s);
    return Domain::rect(a, b, c, d);
  }
  std::ifstream in(s);
  if (!in) throw error("cannot open domain file: " + s);
  nlohmann::json j;
  in >> j;
  return domain_from_json(j);
}

}  // namespace disfermion
