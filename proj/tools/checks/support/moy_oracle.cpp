#include "moy_oracle.hpp"

#include <bit>
#include <map>
#include <queue>
#include <stdexcept>

namespace qholo::testing {
namespace {

// #{(a, b) : a in A, b in B, a > b}
int inversions(unsigned A, unsigned B) {
  int n = 0;
  for (unsigned a = A; a; a &= a - 1) {
    const int i = std::countr_zero(a);
    n += std::popcount(B & ((1u << i) - 1));
  }
  return n;
}

struct Vertex {
  int thick, left, right;  // edge ids
};

struct StateSum {
  const Web& w;
  int N;
  std::vector<Vertex> verts;
  std::vector<std::vector<int>> verts_of_edge;
  std::vector<int> order;
  std::vector<unsigned> label;
  std::vector<bool> set;
  std::vector<int> face_side;  // scratch
  Web::Faces faces;
  int outer;
  std::map<int, long long> acc;  // doubled exponent -> count

  StateSum(const Web& web, int n, int outer_face) : w(web), N(n), faces(web.faces()), outer(outer_face) {
    const int ne = w.num_edges();
    verts_of_edge.resize(static_cast<std::size_t>(ne));
    for (int v = 0; v < w.num_vertices(); ++v) {
      const auto& r = w.rotation(v);
      int k = 0;
      const bool merge = w.is_merge(v);
      // Thick dart: the lone out-dart of a merge or the lone in-dart of a split.
      while (((r[static_cast<std::size_t>(k)] & 1) != 0) == merge) ++k;
      const int t = r[static_cast<std::size_t>(k)];
      const int d1 = r[static_cast<std::size_t>((k + 1) % 3)], d2 = r[static_cast<std::size_t>((k + 2) % 3)];
      Vertex vx{};
      vx.thick = Web::edge_of(t);
      if (merge) {
        vx.left = Web::edge_of(d1);
        vx.right = Web::edge_of(d2);
      } else {
        vx.right = Web::edge_of(d1);
        vx.left = Web::edge_of(d2);
      }
      verts.push_back(vx);
      for (int d : r) verts_of_edge[static_cast<std::size_t>(Web::edge_of(d))].push_back(v);
    }
    // BFS edge order so vertices complete early.
    std::vector<bool> seen(static_cast<std::size_t>(ne), false);
    for (int s = 0; s < ne; ++s) {
      if (seen[static_cast<std::size_t>(s)]) continue;
      std::queue<int> q;
      q.push(s);
      seen[static_cast<std::size_t>(s)] = true;
      while (!q.empty()) {
        const int e = q.front();
        q.pop();
        order.push_back(e);
        for (int v : verts_of_edge[static_cast<std::size_t>(e)])
          for (int d : w.rotation(v)) {
            const int f = Web::edge_of(d);
            if (!seen[static_cast<std::size_t>(f)]) {
              seen[static_cast<std::size_t>(f)] = true;
              q.push(f);
            }
          }
      }
    }
    label.assign(static_cast<std::size_t>(ne), 0);
    set.assign(static_cast<std::size_t>(ne), false);
  }

  bool vertex_ok(int v) const {
    const auto& x = verts[static_cast<std::size_t>(v)];
    if (!set[static_cast<std::size_t>(x.thick)] || !set[static_cast<std::size_t>(x.left)] || !set[static_cast<std::size_t>(x.right)])
      return true;
    const unsigned L = label[static_cast<std::size_t>(x.left)], R = label[static_cast<std::size_t>(x.right)];
    return (L & R) == 0 && (L | R) == label[static_cast<std::size_t>(x.thick)];
  }

  // Rotation number (+1 counterclockwise) of the level curve made of the given edges.
  int rotation_sum(unsigned element_bit) {
    const int ne = w.num_edges();
    std::vector<bool> on(static_cast<std::size_t>(ne));
    for (int e = 0; e < ne; ++e) on[static_cast<std::size_t>(e)] = (label[static_cast<std::size_t>(e)] & element_bit) != 0;
    std::vector<bool> used(static_cast<std::size_t>(ne), false);
    int total = 0;
    for (int e0 = 0; e0 < ne; ++e0) {
      if (!on[static_cast<std::size_t>(e0)] || used[static_cast<std::size_t>(e0)]) continue;
      std::vector<bool> in_curve(static_cast<std::size_t>(ne), false);
      std::vector<int> curve;
      int e = e0;
      do {
        used[static_cast<std::size_t>(e)] = in_curve[static_cast<std::size_t>(e)] = true;
        curve.push_back(e);
        const int v = w.head_vertex(e);
        int next = -1;
        for (int d : w.rotation(v))
          if (!(d & 1) && on[static_cast<std::size_t>(Web::edge_of(d))]) next = Web::edge_of(d);
        if (next < 0) throw std::logic_error("broken level curve");
        e = next;
      } while (e != e0);
      // Flood the faces on the left of the curve without crossing it.
      const std::size_t nf = faces.cycles.size();
      std::vector<bool> left(nf, false);
      std::queue<int> q;
      for (int c : curve) {
        const int f = faces.face_of[static_cast<std::size_t>(2 * c)];
        if (!left[static_cast<std::size_t>(f)]) {
          left[static_cast<std::size_t>(f)] = true;
          q.push(f);
        }
      }
      while (!q.empty()) {
        const int f = q.front();
        q.pop();
        for (int d : faces.cycles[static_cast<std::size_t>(f)]) {
          if (in_curve[static_cast<std::size_t>(Web::edge_of(d))]) continue;
          const int g = faces.face_of[static_cast<std::size_t>(Web::twin(d))];
          if (!left[static_cast<std::size_t>(g)]) {
            left[static_cast<std::size_t>(g)] = true;
            q.push(g);
          }
        }
      }
      total += left[static_cast<std::size_t>(outer)] ? -1 : 1;
    }
    return total;
  }

  void record() {
    int twice = 0;
    for (const auto& x : verts)
      twice += inversions(label[static_cast<std::size_t>(x.left)], label[static_cast<std::size_t>(x.right)]) -
               inversions(label[static_cast<std::size_t>(x.right)], label[static_cast<std::size_t>(x.left)]);
    for (int i = 1; i <= N; ++i) twice += 2 * (N + 1 - 2 * i) * rotation_sum(1u << (i - 1));
    acc[twice] += 1;
  }

  void run(std::size_t k) {
    if (k == order.size()) {
      record();
      return;
    }
    const int e = order[k];
    const int c = w.color(e);
    for (unsigned s = 0; s < (1u << N); ++s) {
      if (std::popcount(s) != c) continue;
      label[static_cast<std::size_t>(e)] = s;
      set[static_cast<std::size_t>(e)] = true;
      bool ok = true;
      for (int v : verts_of_edge[static_cast<std::size_t>(e)]) ok = ok && vertex_ok(v);
      if (ok) run(k + 1);
      set[static_cast<std::size_t>(e)] = false;
    }
  }
};

LaurentPoly circle(int N, int k) {
  std::map<int, long long> acc;
  for (unsigned s = 0; s < (1u << N); ++s) {
    if (std::popcount(s) != k) continue;
    int e = 0;
    for (int i = 1; i <= N; ++i)
      if (s & (1u << (i - 1))) e += N + 1 - 2 * i;
    acc[e] += 1;
  }
  LaurentPoly p;
  for (const auto& [e, c] : acc) p += LaurentPoly::monomial(Integer(static_cast<long>(c)), {0, e, 0}, kVarsQ);
  return p;
}

}  // namespace

LaurentPoly moy_state_sum(const Web& w, int N, int outer_face) {
  if (N > 16) throw std::invalid_argument("state sum supports N <= 16");
  LaurentPoly result(1L);
  result.declare(kVarsQ);
  for (const auto& [c, k] : w.loops())
    for (int i = 0; i < k; ++i) result *= circle(N, c);
  if (w.num_vertices() == 0) return result;
  for (int e = 0; e < w.num_edges(); ++e)
    if (w.color(e) > N) return LaurentPoly().declare(kVarsQ);
  StateSum s(w, N, outer_face);
  s.run(0);
  LaurentPoly p;
  for (const auto& [twice, c] : s.acc) {
    if (twice % 2 != 0) throw std::logic_error("odd doubled exponent in state sum");
    p += LaurentPoly::monomial(Integer(static_cast<long>(c)), {0, twice / 2, 0}, kVarsQ);
  }
  return (result * p).declare(kVarsQ);
}

}  // namespace qholo::testing
