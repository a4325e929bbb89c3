#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "disfermion/lattice.hpp"
#include "disfermion/linalg.hpp"

namespace disfermion {

/// Induced bipartite subgraph of Z^2 with its Kasteleyn matrix
/// K(b,w) = conj(b-w) on edges.  Immutable after construction.
struct DimerGraph {
  std::vector<LP> whites, blacks;              // sorted
  std::unordered_map<LP, int, LPHash> windex, bindex;
  std::vector<std::pair<int, int>> edges;      // (black_idx, white_idx), sorted
  std::vector<std::vector<int>> wadj;          // white -> sorted black neighbours
  std::vector<std::vector<int>> badj;          // black -> sorted white neighbours
  std::map<std::pair<int, int>, int> edge_id;  // (b,w) -> edge index

  bool has_edge(int b, int w) const { return edge_id.count({b, w}) > 0; }

  /// K(b,w) = conj(b-w); zero when not an edge.
  GInt kasteleyn(int b, int w) const {
    if (!has_edge(b, w)) return GInt(0);
    LP d = blacks[b] - whites[w];
    return GInt(d.x, -d.y);
  }
  std::complex<double> kasteleyn_c(int b, int w) const { return kasteleyn(b, w).to_complex(); }

  DenseMatrix<GInt> kasteleyn_matrix() const {
    DenseMatrix<GInt> K(int(blacks.size()), int(whites.size()));
    for (auto [b, w] : edges) K(b, w) = kasteleyn(b, w);
    return K;
  }

  bool balanced() const { return whites.size() == blacks.size(); }
};

/// Graph induced by the domain (sink excluded first when set).  Throws
/// "unbalanced" unless allow_unbalanced; the graph is still returned through
/// the optional-out parameter for inspection.
inline DimerGraph induce(const Domain& d, bool allow_unbalanced = false) {
  DimerGraph g;
  for (LP p : d.vertices) {
    if (d.sink && p == *d.sink) continue;
    (p.is_white() ? g.whites : g.blacks).push_back(p);
  }
  std::sort(g.whites.begin(), g.whites.end());
  std::sort(g.blacks.begin(), g.blacks.end());
  for (int i = 0; i < int(g.whites.size()); ++i) g.windex[g.whites[i]] = i;
  for (int i = 0; i < int(g.blacks.size()); ++i) g.bindex[g.blacks[i]] = i;
  g.wadj.resize(g.whites.size());
  g.badj.resize(g.blacks.size());
  for (int w = 0; w < int(g.whites.size()); ++w)
    for (LP dd : kDirs) {
      auto it = g.bindex.find(g.whites[w] + dd);
      if (it != g.bindex.end()) g.edges.push_back({it->second, w});
    }
  std::sort(g.edges.begin(), g.edges.end());
  for (int e = 0; e < int(g.edges.size()); ++e) {
    auto [b, w] = g.edges[e];
    g.edge_id[{b, w}] = e;
    g.badj[b].push_back(w);
    g.wadj[w].push_back(b);
  }
  if (!g.balanced() && !allow_unbalanced)
    throw error("unbalanced: " + std::to_string(g.whites.size()) + " whites vs " +
                std::to_string(g.blacks.size()) + " blacks (graph not dimerable)");
  return g;
}

struct KasteleynCheck {
  bool ok = true;
  std::string violating_face;  // first violation, if any
};

/// Alternating product around every bounded face (unit plaquette on hole-free
/// induced subgraphs) must equal (-1)^{n+1} = -1 for quadrilaterals.
/// An explicit matrix may be passed to check a perturbed candidate.
inline KasteleynCheck verify_kasteleyn(const DimerGraph& g,
                                       const DenseMatrix<GInt>* K = nullptr) {
  KasteleynCheck r;
  auto entry = [&](int b, int w) { return K ? (*K)(b, w) : g.kasteleyn(b, w); };
  std::unordered_set<LP, LPHash> verts;
  for (LP p : g.whites) verts.insert(p);
  for (LP p : g.blacks) verts.insert(p);
  for (LP p : verts) {
    LP a = p, b = p + LP{1, 0}, c = p + LP{1, 1}, d = p + LP{0, 1};
    if (!verts.count(b) || !verts.count(c) || !verts.count(d)) continue;
    // cyclic order (a,b,c,d); whites at odd coordinate sum
    std::array<LP, 4> cyc = {a, b, c, d};
    int wpos = a.is_white() ? 0 : 1;
    GQ prod(1);
    for (int k = 0; k < 2; ++k) {
      LP w1 = cyc[(wpos + 2 * k) % 4];
      LP bprev = cyc[(wpos + 2 * k + 3) % 4];
      LP bnext = cyc[(wpos + 2 * k + 1) % 4];
      int wi = g.windex.at(w1);
      prod *= GQ(entry(g.bindex.at(bnext), wi));
      prod *= GQ(entry(g.bindex.at(bprev), wi).conj());
    }
    if (prod != GQ(-1)) {
      r.ok = false;
      r.violating_face = "face at " + p.str();
      return r;
    }
  }
  return r;
}

/// |det K| by fraction-free Bareiss elimination over the Gaussian integers.
inline mpz_class count_covers(const DimerGraph& g) {
  if (!g.balanced()) throw error("count_covers: unbalanced graph");
  if (g.whites.empty()) return 1;
  GInt det = bareiss_det(g.kasteleyn_matrix());
  mpz_class n = det.norm(), root, rem;
  mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t());
  if (rem != 0) throw error("count_covers: |det K| not an integer");
  return root;
}

/// Perfect matching: white index -> black index.
struct DimerCover {
  std::vector<int> match;
  uint64_t edge_mask = 0;  // bitmask over graph edge indices (graphs <= 64 edges)
};

/// All perfect matchings in deterministic order (recursion on the lowest
/// unmatched white, black neighbours in index order).
inline std::vector<DimerCover> enumerate_covers(const DimerGraph& g, size_t cap = 16) {
  std::vector<DimerCover> out;
  if (!g.balanced()) return out;
  const int n = int(g.whites.size());
  if (size_t(n) > cap) throw error("enumerate_covers: too large (cap " + std::to_string(cap) + ")");
  if (g.edges.size() > 64) throw error("enumerate_covers: more than 64 edges");
  std::vector<int> match(n, -1);
  std::vector<bool> busy(g.blacks.size(), false);
  uint64_t mask = 0;
  auto rec = [&](auto&& self, int w) -> void {
    if (w == n) {
      DimerCover c;
      c.match = match;
      c.edge_mask = mask;
      out.push_back(std::move(c));
      return;
    }
    for (int b : g.wadj[w]) {
      if (busy[b]) continue;
      busy[b] = true;
      match[w] = b;
      uint64_t bit = 1ull << g.edge_id.at({b, w});
      mask |= bit;
      self(self, w + 1);
      mask &= ~bit;
      match[w] = -1;
      busy[b] = false;
    }
  };
  rec(rec, 0);
  return out;
}

struct EdgeProbability {
  GQ fast;        // conj(K(b,w)) * conj(K^{-1}(w,b))
  GQ enumerated;  // #covers containing e / #covers
};

/// Probability that edge {w,b} is open in one uniformly random cover;
/// both the Kasteleyn-inverse identity and brute-force enumeration.
inline EdgeProbability edge_open_probability(const DimerGraph& g, int b, int w,
                                             size_t enum_cap = 16) {
  if (!g.has_edge(b, w)) throw error("edge_open_probability: not an edge");
  EdgeProbability r;
  const int n = int(g.whites.size());
  DenseMatrix<GQ> K(n, n);
  for (auto [bb, ww] : g.edges) K(bb, ww) = GQ(g.kasteleyn(bb, ww));
  DenseMatrix<GQ> Kinv = gq_inverse(K);  // Kinv(w,b)
  r.fast = GQ(g.kasteleyn(b, w)).conj() * Kinv(w, b).conj();
  auto covers = enumerate_covers(g, enum_cap);
  if (covers.empty()) throw error("edge_open_probability: graph has no covers");
  uint64_t bit = 1ull << g.edge_id.at({b, w});
  long hits = 0;
  for (auto& c : covers)
    if (c.edge_mask & bit) ++hits;
  r.enumerated = GQ(mpq_class(hits, long(covers.size())), mpq_class(0));
  return r;
}

/// Spanning trees of the even sublattice graph G_bullet (edges between even
/// blacks at Manhattan distance 2), by Matrix-Tree: any cofactor of the
/// Laplacian.  The Temperley count cross-check for temperleyan domains.
inline mpz_class spanning_trees_even(const Domain& d) {
  std::vector<LP> evens;
  for (LP p : d.vertices)
    if (classify(p) == Color::EvenBlack) evens.push_back(p);
  std::sort(evens.begin(), evens.end());
  std::unordered_map<LP, int, LPHash> idx;
  for (int i = 0; i < int(evens.size()); ++i) idx[evens[i]] = i;
  const int n = int(evens.size());
  if (n <= 1) return 1;
  DenseMatrix<GInt> L(n - 1, n - 1);  // delete last row/col
  const std::array<LP, 4> steps = {LP{2, 0}, LP{0, 2}, LP{-2, 0}, LP{0, -2}};
  for (int i = 0; i < n; ++i)
    for (LP s : steps) {
      auto it = idx.find(evens[i] + s);
      if (it == idx.end()) continue;
      int j = it->second;
      if (i < n - 1) L(i, i) += GInt(1);
      if (i < n - 1 && j < n - 1) L(i, j) -= GInt(1);
    }
  GInt det = bareiss_det(L);
  if (det.im != 0) throw error("matrix-tree: non-real determinant");
  return abs(det.re);
}

}  // namespace disfermion
