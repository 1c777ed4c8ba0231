#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "qholo/errors.hpp"

namespace qholo {

/// Reasons a raw web is rejected.
enum class WebErrorCode {
  kNonTrivalent,
  kFlowViolation,
  kSinkOrSource,
  kNonPlanar,
  kMalformed,
};

const char* to_string(WebErrorCode c);

class WebError : public Error {
 public:
  WebError(WebErrorCode code, const std::string& what)
      : Error(std::string(to_string(code)) + ": " + what), code_(code) {}
  WebErrorCode code() const noexcept { return code_; }

 private:
  WebErrorCode code_;
};

/// User-facing description of a web, mirroring the file format: every vertex lists its
/// dart ids in counterclockwise order, every edge names its tail dart (leaving the tail
/// vertex) and head dart (entering the head vertex). Dart ids are arbitrary integers.
struct RawWeb {
  struct Edge {
    int tail;
    int head;
    int color;
  };
  std::vector<std::vector<int>> vertices;
  std::vector<Edge> edges;
  std::map<int, int> loops;  // color -> number of free circles
};

/// A closed MOY web stored as a combinatorial map.
///
/// Edge e owns darts 2e (at its tail) and 2e+1 (at its head). Each vertex lists its three
/// darts counterclockwise. Colors are positive; zero-colored edges and two-valent vertices
/// never survive construction, and isolated circles live in the loop counter.
class Web {
 public:
  Web() = default;

  int num_vertices() const { return static_cast<int>(rot_.size()); }
  int num_edges() const { return static_cast<int>(color_.size()); }
  int num_darts() const { return 2 * num_edges(); }
  int color(int e) const { return color_[static_cast<std::size_t>(e)]; }
  const std::vector<int>& colors() const { return color_; }
  const std::array<int, 3>& rotation(int v) const { return rot_[static_cast<std::size_t>(v)]; }
  int vertex_of(int dart) const { return vert_[static_cast<std::size_t>(dart)]; }
  /// Position (0..2) of a dart in its vertex's rotation.
  int position_of(int dart) const { return pos_[static_cast<std::size_t>(dart)]; }
  static int edge_of(int dart) { return dart >> 1; }
  static int twin(int dart) { return dart ^ 1; }
  static bool is_tail(int dart) { return (dart & 1) == 0; }
  int tail_vertex(int e) const { return vertex_of(2 * e); }
  int head_vertex(int e) const { return vertex_of(2 * e + 1); }
  /// Next dart counterclockwise around the same vertex.
  int ccw(int dart) const { return rot_[static_cast<std::size_t>(vertex_of(dart))][(position_of(dart) + 1) % 3]; }
  int cw(int dart) const { return rot_[static_cast<std::size_t>(vertex_of(dart))][(position_of(dart) + 2) % 3]; }
  /// Successor of a dart along the face lying to its left.
  int face_next(int dart) const { return cw(twin(dart)); }
  /// A vertex is a merge when two of its darts are heads (incoming).
  bool is_merge(int v) const;

  const std::map<int, int>& loops() const { return loops_; }
  int total_loops() const;
  bool empty() const { return rot_.empty() && loops_.empty(); }

  /// Faces as dart cycles; face_of[d] gives the index of the face left of dart d.
  struct Faces {
    std::vector<std::vector<int>> cycles;
    std::vector<int> face_of;
  };
  Faces faces() const;

  /// Connected components (loops become separate single-loop webs).
  std::vector<Web> components() const;
  /// Vertex-connected components of the map only (ignores loops).
  int count_map_components() const;

  /// Canonical string: equal for webs related by an orientation-preserving map isomorphism.
  std::string canonical_code() const;

  /// Disjoint union.
  static Web disjoint_union(const Web& x, const Web& y);

  RawWeb to_raw() const;

 private:
  friend class WebBuilder;
  std::vector<int> color_;
  std::vector<int> vert_;
  std::vector<int> pos_;
  std::vector<std::array<int, 3>> rot_;
  std::map<int, int> loops_;
};

/// Mutable scratch structure used to build webs and apply local moves.
///
/// Darts keep their ids while vertices are rewired, so external edges can be reattached to
/// new vertices. finish() deletes zero-colored edges, contracts two-valent vertices, turns
/// vertex-free cycles into loops, checks the invariants and compacts ids.
class WebBuilder {
 public:
  WebBuilder() = default;
  explicit WebBuilder(const Web& w);

  int add_edge(int color);
  /// Adds a vertex whose darts are listed counterclockwise.
  int add_vertex(std::vector<int> darts_ccw);
  void remove_vertex(int v);
  void remove_edge(int e);
  void set_color(int e, int color) { color_[static_cast<std::size_t>(e)] = color; }
  int color(int e) const { return color_[static_cast<std::size_t>(e)]; }
  void add_loops(int color, int count = 1);

  /// Validates everything (trivalence, flow, no sinks or sources, planarity).
  Web finish(bool check_planarity = true);

 private:
  std::vector<int> color_;            // -1 marks a removed edge
  std::vector<int> vert_;             // per dart; -1 if detached
  std::vector<std::vector<int>> rot_; // per vertex; empty + dead_ marks removal
  std::vector<bool> dead_;
  std::map<int, int> loops_;
};

/// Checks every invariant of a raw web and converts it. Throws WebError with a distinct code.
Web validate_web(const RawWeb& raw);

/// Undirected-orientation graph used for coloring lattices: vertices 0..n-1, edges tail->head.
struct FlowGraph {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;
};

FlowGraph underlying_graph(const Web& w);

/// Integer basis of the kernel of the boundary map on edges (the lattice of flows).
/// Components are handled independently and their bases concatenated in order of the
/// smallest vertex index in each component. Each basis vector is the fundamental cycle
/// of one non-tree edge, so every integer flow is a unique integer combination.
std::vector<std::vector<int>> coloring_basis(const FlowGraph& g);

/// Number of bounded faces summed over connected components (loops count one each).
int bounded_face_count(const Web& w);

}  // namespace qholo
