#include "qholo/web.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>
#include <unordered_map>

namespace qholo {

const char* to_string(WebErrorCode c) {
  switch (c) {
    case WebErrorCode::kNonTrivalent: return "non-trivalent vertex";
    case WebErrorCode::kFlowViolation: return "flow violation";
    case WebErrorCode::kSinkOrSource: return "sink or source";
    case WebErrorCode::kNonPlanar: return "non-planar map";
    case WebErrorCode::kMalformed: return "malformed web";
  }
  return "web error";
}

bool Web::is_merge(int v) const {
  const auto& r = rotation(v);
  return (r[0] & 1) + (r[1] & 1) + (r[2] & 1) == 2;
}

int Web::total_loops() const {
  int n = 0;
  for (const auto& [c, k] : loops_) n += k;
  return n;
}

Web::Faces Web::faces() const {
  Faces f;
  f.face_of.assign(static_cast<std::size_t>(num_darts()), -1);
  for (int d = 0; d < num_darts(); ++d) {
    if (f.face_of[static_cast<std::size_t>(d)] >= 0) continue;
    const int id = static_cast<int>(f.cycles.size());
    f.cycles.emplace_back();
    int x = d;
    do {
      f.face_of[static_cast<std::size_t>(x)] = id;
      f.cycles.back().push_back(x);
      x = face_next(x);
    } while (x != d);
  }
  return f;
}

namespace {

// Union-find over vertices.
struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(static_cast<std::size_t>(n)) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[static_cast<std::size_t>(x)] != x) x = p[static_cast<std::size_t>(x)] = p[static_cast<std::size_t>(p[static_cast<std::size_t>(x)])];
    return x;
  }
  void unite(int a, int b) { p[static_cast<std::size_t>(find(a))] = find(b); }
};

std::vector<int> component_ids(const Web& w, int* count) {
  Dsu dsu(w.num_vertices());
  for (int e = 0; e < w.num_edges(); ++e) dsu.unite(w.tail_vertex(e), w.head_vertex(e));
  std::vector<int> id(static_cast<std::size_t>(w.num_vertices()), -1);
  std::unordered_map<int, int> root_to_id;
  int n = 0;
  for (int v = 0; v < w.num_vertices(); ++v) {
    auto [it, ins] = root_to_id.try_emplace(dsu.find(v), n);
    if (ins) ++n;
    id[static_cast<std::size_t>(v)] = it->second;
  }
  *count = n;
  return id;
}

}  // namespace

int Web::count_map_components() const {
  int n = 0;
  component_ids(*this, &n);
  return n;
}

std::vector<Web> Web::components() const {
  int n = 0;
  const std::vector<int> comp = component_ids(*this, &n);
  std::vector<Web> out(static_cast<std::size_t>(n));
  // New ids are assigned in increasing old-id order inside each component.
  std::vector<int> new_edge(static_cast<std::size_t>(num_edges())), new_vert(static_cast<std::size_t>(num_vertices()));
  for (int v = 0; v < num_vertices(); ++v) {
    Web& c = out[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])];
    new_vert[static_cast<std::size_t>(v)] = static_cast<int>(c.rot_.size());
    c.rot_.push_back({-1, -1, -1});
  }
  for (int e = 0; e < num_edges(); ++e) {
    Web& c = out[static_cast<std::size_t>(comp[static_cast<std::size_t>(tail_vertex(e))])];
    new_edge[static_cast<std::size_t>(e)] = static_cast<int>(c.color_.size());
    c.color_.push_back(color(e));
  }
  for (auto& c : out) {
    c.vert_.assign(c.color_.size() * 2, -1);
    c.pos_.assign(c.color_.size() * 2, -1);
  }
  for (int v = 0; v < num_vertices(); ++v) {
    Web& c = out[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])];
    const int nv = new_vert[static_cast<std::size_t>(v)];
    for (int k = 0; k < 3; ++k) {
      const int d = rot_[static_cast<std::size_t>(v)][static_cast<std::size_t>(k)];
      const int nd = 2 * new_edge[static_cast<std::size_t>(edge_of(d))] + (d & 1);
      c.rot_[static_cast<std::size_t>(nv)][static_cast<std::size_t>(k)] = nd;
      c.vert_[static_cast<std::size_t>(nd)] = nv;
      c.pos_[static_cast<std::size_t>(nd)] = k;
    }
  }
  for (const auto& [color, count] : loops_) {
    for (int i = 0; i < count; ++i) {
      Web l;
      l.loops_[color] = 1;
      out.push_back(std::move(l));
    }
  }
  return out;
}

std::string Web::canonical_code() const {
  std::vector<std::string> parts;
  if (num_vertices() > 0) {
    for (const Web& c : components()) {
      if (c.num_vertices() == 0) continue;
      std::vector<int> best;
      std::vector<int> code;
      std::vector<int> label(static_cast<std::size_t>(c.num_vertices()));
      std::vector<int> entry(static_cast<std::size_t>(c.num_vertices()));
      std::vector<int> order;
      for (int d0 = 0; d0 < c.num_darts(); ++d0) {
        code.clear();
        order.clear();
        std::fill(label.begin(), label.end(), -1);
        const int v0 = c.vertex_of(d0);
        label[static_cast<std::size_t>(v0)] = 0;
        entry[static_cast<std::size_t>(v0)] = d0;
        order.push_back(v0);
        bool worse = false;
        for (std::size_t idx = 0; idx < order.size() && !worse; ++idx) {
          const int v = order[idx];
          int d = entry[static_cast<std::size_t>(v)];
          for (int k = 0; k < 3; ++k, d = c.ccw(d)) {
            const int o = twin(d);
            const int w = c.vertex_of(o);
            if (label[static_cast<std::size_t>(w)] < 0) {
              label[static_cast<std::size_t>(w)] = static_cast<int>(order.size());
              entry[static_cast<std::size_t>(w)] = o;
              order.push_back(w);
            }
            code.push_back(d & 1);
            code.push_back(c.color(edge_of(d)));
            code.push_back(label[static_cast<std::size_t>(w)]);
            code.push_back((c.position_of(o) - c.position_of(entry[static_cast<std::size_t>(w)]) + 3) % 3);
          }
          // Early exit once the prefix is already larger than the best code.
          if (!best.empty() &&
              std::lexicographical_compare(best.begin(), best.begin() + static_cast<long>(code.size()), code.begin(),
                                           code.end()))
            worse = true;
        }
        if (!worse && (best.empty() || code < best)) best = code;
      }
      std::ostringstream os;
      os << 'V' << c.num_vertices() << ':';
      for (std::size_t i = 0; i < best.size(); ++i) os << (i ? "," : "") << best[i];
      parts.push_back(os.str());
    }
  }
  std::sort(parts.begin(), parts.end());
  std::ostringstream os;
  for (const auto& p : parts) os << '[' << p << ']';
  for (const auto& [color, count] : loops_) os << "(O" << color << 'x' << count << ')';
  return os.str();
}

Web Web::disjoint_union(const Web& x, const Web& y) {
  Web r = x;
  const int eo = x.num_edges(), vo = x.num_vertices();
  r.color_.insert(r.color_.end(), y.color_.begin(), y.color_.end());
  for (int d = 0; d < y.num_darts(); ++d) {
    r.vert_.push_back(y.vert_[static_cast<std::size_t>(d)] + vo);
    r.pos_.push_back(y.pos_[static_cast<std::size_t>(d)]);
  }
  for (const auto& rt : y.rot_) r.rot_.push_back({rt[0] + 2 * eo, rt[1] + 2 * eo, rt[2] + 2 * eo});
  for (const auto& [c, k] : y.loops_) r.loops_[c] += k;
  return r;
}

RawWeb Web::to_raw() const {
  RawWeb raw;
  for (const auto& r : rot_) raw.vertices.push_back({r[0], r[1], r[2]});
  for (int e = 0; e < num_edges(); ++e) raw.edges.push_back({2 * e, 2 * e + 1, color(e)});
  raw.loops = loops_;
  return raw;
}

// ---------------------------------------------------------------------------

WebBuilder::WebBuilder(const Web& w) {
  color_ = w.color_;
  vert_ = w.vert_;
  for (const auto& r : w.rot_) rot_.push_back({r[0], r[1], r[2]});
  dead_.assign(rot_.size(), false);
  loops_ = w.loops_;
}

int WebBuilder::add_edge(int color) {
  color_.push_back(color);
  vert_.push_back(-1);
  vert_.push_back(-1);
  return static_cast<int>(color_.size()) - 1;
}

int WebBuilder::add_vertex(std::vector<int> darts_ccw) {
  const int v = static_cast<int>(rot_.size());
  for (int d : darts_ccw) vert_[static_cast<std::size_t>(d)] = v;
  rot_.push_back(std::move(darts_ccw));
  dead_.push_back(false);
  return v;
}

void WebBuilder::remove_vertex(int v) {
  for (int d : rot_[static_cast<std::size_t>(v)])
    if (vert_[static_cast<std::size_t>(d)] == v) vert_[static_cast<std::size_t>(d)] = -1;
  rot_[static_cast<std::size_t>(v)].clear();
  dead_[static_cast<std::size_t>(v)] = true;
}

void WebBuilder::remove_edge(int e) {
  for (int d : {2 * e, 2 * e + 1}) {
    const int v = vert_[static_cast<std::size_t>(d)];
    if (v >= 0) {
      auto& r = rot_[static_cast<std::size_t>(v)];
      r.erase(std::remove(r.begin(), r.end(), d), r.end());
    }
    vert_[static_cast<std::size_t>(d)] = -1;
  }
  color_[static_cast<std::size_t>(e)] = -1;
}

void WebBuilder::add_loops(int color, int count) {
  if (color > 0 && count > 0) loops_[color] += count;
}

Web WebBuilder::finish(bool check_planarity) {
  const int ne = static_cast<int>(color_.size());
  for (int e = 0; e < ne; ++e) {
    const int c = color_[static_cast<std::size_t>(e)];
    if (c < 0) continue;  // removed
    if (vert_[static_cast<std::size_t>(2 * e)] < 0 || vert_[static_cast<std::size_t>(2 * e + 1)] < 0)
      throw WebError(WebErrorCode::kMalformed, "edge " + std::to_string(e) + " has a dangling end");
  }
  for (int e = 0; e < ne; ++e)
    if (color_[static_cast<std::size_t>(e)] == 0) remove_edge(e);

  // Contract two-valent vertices until none remain.
  for (std::size_t v = 0; v < rot_.size(); ++v) {
    if (dead_[v]) continue;
    auto& r = rot_[v];
    if (r.empty()) {
      dead_[v] = true;
      continue;
    }
    if (r.size() == 1 || r.size() > 3)
      throw WebError(WebErrorCode::kNonTrivalent,
                     "vertex " + std::to_string(v) + " has degree " + std::to_string(r.size()));
    if (r.size() != 2) continue;
    const int d1 = r[0], d2 = r[1];
    if ((d1 & 1) == (d2 & 1))
      throw WebError(WebErrorCode::kSinkOrSource, "two-valent vertex " + std::to_string(v) + " is a sink or source");
    const int in = (d1 & 1) ? d1 : d2;
    const int out = (d1 & 1) ? d2 : d1;
    const int e1 = Web::edge_of(in), e2 = Web::edge_of(out);
    if (color_[static_cast<std::size_t>(e1)] != color_[static_cast<std::size_t>(e2)])
      throw WebError(WebErrorCode::kFlowViolation, "two-valent vertex " + std::to_string(v) + " changes color");
    if (e1 == e2) {
      loops_[color_[static_cast<std::size_t>(e1)]] += 1;
      color_[static_cast<std::size_t>(e1)] = -1;
      vert_[static_cast<std::size_t>(in)] = vert_[static_cast<std::size_t>(out)] = -1;
    } else {
      const int h2 = 2 * e2 + 1;
      const int w = vert_[static_cast<std::size_t>(h2)];
      auto& rw = rot_[static_cast<std::size_t>(w)];
      std::replace(rw.begin(), rw.end(), h2, in);
      vert_[static_cast<std::size_t>(in)] = w;
      vert_[static_cast<std::size_t>(h2)] = vert_[static_cast<std::size_t>(out)] = -1;
      color_[static_cast<std::size_t>(e2)] = -1;
    }
    r.clear();
    dead_[v] = true;
  }

  // Compact.
  Web web;
  std::vector<int> new_edge(static_cast<std::size_t>(ne), -1);
  for (int e = 0; e < ne; ++e) {
    if (color_[static_cast<std::size_t>(e)] < 0) continue;
    new_edge[static_cast<std::size_t>(e)] = static_cast<int>(web.color_.size());
    web.color_.push_back(color_[static_cast<std::size_t>(e)]);
  }
  web.vert_.assign(web.color_.size() * 2, -1);
  web.pos_.assign(web.color_.size() * 2, -1);
  for (std::size_t v = 0; v < rot_.size(); ++v) {
    if (dead_[v]) continue;
    const auto& r = rot_[v];
    const int nv = static_cast<int>(web.rot_.size());
    std::array<int, 3> nr{};
    int heads = 0, flow = 0;
    for (int k = 0; k < 3; ++k) {
      const int d = r[static_cast<std::size_t>(k)];
      const int nd = 2 * new_edge[static_cast<std::size_t>(Web::edge_of(d))] + (d & 1);
      nr[static_cast<std::size_t>(k)] = nd;
      web.vert_[static_cast<std::size_t>(nd)] = nv;
      web.pos_[static_cast<std::size_t>(nd)] = k;
      heads += d & 1;
      flow += (d & 1 ? 1 : -1) * color_[static_cast<std::size_t>(Web::edge_of(d))];
    }
    if (heads == 0 || heads == 3)
      throw WebError(WebErrorCode::kSinkOrSource, "vertex " + std::to_string(v) + (heads ? " is a sink" : " is a source"));
    if (flow != 0)
      throw WebError(WebErrorCode::kFlowViolation, "vertex " + std::to_string(v) + " violates the flow condition");
    web.rot_.push_back(nr);
  }
  for (const auto& [c, k] : loops_)
    if (c > 0 && k > 0) web.loops_[c] += k;

  if (check_planarity && web.num_vertices() > 0) {
    int ncomp = 0;
    const std::vector<int> comp = component_ids(web, &ncomp);
    std::vector<int> V(static_cast<std::size_t>(ncomp)), E(static_cast<std::size_t>(ncomp)), F(static_cast<std::size_t>(ncomp));
    for (int v = 0; v < web.num_vertices(); ++v) ++V[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])];
    for (int e = 0; e < web.num_edges(); ++e) ++E[static_cast<std::size_t>(comp[static_cast<std::size_t>(web.tail_vertex(e))])];
    const Web::Faces faces = web.faces();
    for (const auto& cyc : faces.cycles) ++F[static_cast<std::size_t>(comp[static_cast<std::size_t>(web.vertex_of(cyc[0]))])];
    for (int c = 0; c < ncomp; ++c)
      if (V[static_cast<std::size_t>(c)] - E[static_cast<std::size_t>(c)] + F[static_cast<std::size_t>(c)] != 2)
        throw WebError(WebErrorCode::kNonPlanar, "Euler characteristic " +
                                                     std::to_string(V[static_cast<std::size_t>(c)] - E[static_cast<std::size_t>(c)] + F[static_cast<std::size_t>(c)]) +
                                                     " on a connected component");
  }
  return web;
}

Web validate_web(const RawWeb& raw) {
  std::unordered_map<int, int> dart_index;  // user dart id -> internal dart
  WebBuilder b;
  for (std::size_t i = 0; i < raw.edges.size(); ++i) {
    const auto& e = raw.edges[i];
    if (e.color < 0) throw WebError(WebErrorCode::kFlowViolation, "edge " + std::to_string(i) + " has a negative color");
    if (e.tail == e.head) throw WebError(WebErrorCode::kMalformed, "edge " + std::to_string(i) + " reuses one dart");
    const int id = b.add_edge(e.color);
    if (!dart_index.emplace(e.tail, 2 * id).second || !dart_index.emplace(e.head, 2 * id + 1).second)
      throw WebError(WebErrorCode::kMalformed, "dart used by two edges");
  }
  std::vector<bool> used(2 * raw.edges.size(), false);
  for (std::size_t v = 0; v < raw.vertices.size(); ++v) {
    const auto& ds = raw.vertices[v];
    if (ds.size() != 3 && ds.size() != 2)
      throw WebError(WebErrorCode::kNonTrivalent, "vertex " + std::to_string(v) + " has degree " + std::to_string(ds.size()));
    std::vector<int> internal;
    for (int d : ds) {
      auto it = dart_index.find(d);
      if (it == dart_index.end()) throw WebError(WebErrorCode::kMalformed, "unknown dart " + std::to_string(d));
      if (used[static_cast<std::size_t>(it->second)]) throw WebError(WebErrorCode::kMalformed, "dart " + std::to_string(d) + " used twice");
      used[static_cast<std::size_t>(it->second)] = true;
      internal.push_back(it->second);
    }
    b.add_vertex(std::move(internal));
  }
  for (const auto& [c, k] : raw.loops) {
    if (c < 0 || k < 0) throw WebError(WebErrorCode::kMalformed, "negative loop color or count");
    b.add_loops(c, k);
  }
  return b.finish(true);
}

FlowGraph underlying_graph(const Web& w) {
  FlowGraph g;
  g.num_vertices = w.num_vertices();
  for (int e = 0; e < w.num_edges(); ++e) g.edges.emplace_back(w.tail_vertex(e), w.head_vertex(e));
  for (const auto& [c, k] : w.loops()) {
    for (int i = 0; i < k; ++i) {
      // A circle is modelled by two subdivision vertices and two edges.
      const int v = g.num_vertices;
      g.num_vertices += 2;
      g.edges.emplace_back(v, v + 1);
      g.edges.emplace_back(v + 1, v);
    }
  }
  return g;
}

std::vector<std::vector<int>> coloring_basis(const FlowGraph& g) {
  const int n = g.num_vertices;
  const int m = static_cast<int>(g.edges.size());
  // Adjacency: (neighbor, edge, sign) with sign +1 when traversing along the edge.
  std::vector<std::vector<std::array<int, 3>>> adj(static_cast<std::size_t>(n));
  for (int e = 0; e < m; ++e) {
    const auto [t, h] = g.edges[static_cast<std::size_t>(e)];
    if (t < 0 || h < 0 || t >= n || h >= n) throw WebError(WebErrorCode::kMalformed, "edge endpoint out of range");
    adj[static_cast<std::size_t>(t)].push_back({h, e, +1});
    adj[static_cast<std::size_t>(h)].push_back({t, e, -1});
  }
  std::vector<int> parent_edge(static_cast<std::size_t>(n), -1), parent(static_cast<std::size_t>(n), -1),
      parent_sign(static_cast<std::size_t>(n), 0), depth(static_cast<std::size_t>(n), -1);
  std::vector<bool> tree_edge(static_cast<std::size_t>(m), false);
  for (int root = 0; root < n; ++root) {
    if (depth[static_cast<std::size_t>(root)] >= 0) continue;
    depth[static_cast<std::size_t>(root)] = 0;
    std::queue<int> bfs;
    bfs.push(root);
    while (!bfs.empty()) {
      const int v = bfs.front();
      bfs.pop();
      for (const auto& [w, e, s] : adj[static_cast<std::size_t>(v)]) {
        if (depth[static_cast<std::size_t>(w)] >= 0) continue;
        depth[static_cast<std::size_t>(w)] = depth[static_cast<std::size_t>(v)] + 1;
        parent[static_cast<std::size_t>(w)] = v;
        parent_edge[static_cast<std::size_t>(w)] = e;
        parent_sign[static_cast<std::size_t>(w)] = s;  // +1: edge points parent -> w
        tree_edge[static_cast<std::size_t>(e)] = true;
        bfs.push(w);
      }
    }
  }
  // Order non-tree edges by component (roots are increasing), then by index.
  std::vector<int> root(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    int r = v;
    while (parent[static_cast<std::size_t>(r)] >= 0) r = parent[static_cast<std::size_t>(r)];
    root[static_cast<std::size_t>(v)] = r;
  }
  std::vector<int> cotree;
  for (int e = 0; e < m; ++e)
    if (!tree_edge[static_cast<std::size_t>(e)]) cotree.push_back(e);
  std::stable_sort(cotree.begin(), cotree.end(), [&](int x, int y) {
    return root[static_cast<std::size_t>(g.edges[static_cast<std::size_t>(x)].first)] <
           root[static_cast<std::size_t>(g.edges[static_cast<std::size_t>(y)].first)];
  });
  std::vector<std::vector<int>> basis;
  for (int e : cotree) {
    std::vector<int> vec(static_cast<std::size_t>(m), 0);
    vec[static_cast<std::size_t>(e)] = 1;
    // Close the cycle: route from head back to tail through the tree.
    int x = g.edges[static_cast<std::size_t>(e)].second, y = g.edges[static_cast<std::size_t>(e)].first;
    while (x != y) {
      if (depth[static_cast<std::size_t>(x)] >= depth[static_cast<std::size_t>(y)]) {
        // walk x -> parent(x): along the tree edge, against its orientation if it points parent -> x
        vec[static_cast<std::size_t>(parent_edge[static_cast<std::size_t>(x)])] -= parent_sign[static_cast<std::size_t>(x)];
        x = parent[static_cast<std::size_t>(x)];
      } else {
        // walk parent(y) -> y
        vec[static_cast<std::size_t>(parent_edge[static_cast<std::size_t>(y)])] += parent_sign[static_cast<std::size_t>(y)];
        y = parent[static_cast<std::size_t>(y)];
      }
    }
    basis.push_back(std::move(vec));
  }
  return basis;
}

int bounded_face_count(const Web& w) {
  int count = w.total_loops();
  if (w.num_vertices() == 0) return count;
  const int faces = static_cast<int>(w.faces().cycles.size());
  const int comps = w.count_map_components();
  // Each component contributes F_c - 1 bounded faces.
  return count + faces - comps;
}

}  // namespace qholo
