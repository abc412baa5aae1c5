#pragma once

#include <cstdint>
#include <vector>

#include "beadpath/geometry.hpp"

namespace beadpath {

enum class EdgeKind : std::uint8_t { LineLine, VertexLine, VertexVertex, Rib };

struct StNode {
  Point pos;
  double R = 0;          // mm
  double b_tilde = 0;    // 2R / w*
  int b_bar = -1;        // quantized count on central nodes, -1 when unset
  double b_hat = -1;     // smoothed count on central nodes, -1 when unset
  bool central = false;
};

struct StEdge {
  int from = -1;
  int to = -1;
  int twin = -1;
  int next = -1;  // -1 at the end of a face chain
  int prev = -1;  // -1 at the start of a face chain
  int source = -1;
  EdgeKind kind = EdgeKind::LineLine;
  bool central = false;
};

// Outline element generating a Voronoi cell.
struct SourceSite {
  enum class Type : std::uint8_t { Segment, Vertex } type = Type::Segment;
  Point a;  // segment start or the vertex
  Point b;  // segment end
  int ring = -1;
  int index = -1;  // segment index (starts at ring vertex `index`) or vertex index
};

struct StOptions {
  double w_star = 0.4;             // mm
  double d_discretization = 0.2;   // mm
  double alpha_max_deg = 135.0;
  double discretization_tolerance = 0.005;  // mm, max chord to curve distance
};

struct SkeletalTrapezoidation {
  std::vector<StNode> nodes;
  std::vector<StEdge> edges;
  std::vector<SourceSite> sources;
  // First edge of the first face of each source's cell, -1 if the cell is empty.
  std::vector<int> source_first_edge;
  // Source ids of each ring in domain traversal order.
  std::vector<std::vector<int>> ring_sources;
  std::vector<std::vector<int>> out_edges;
  PolygonSet outline;  // normalized outline the graph was built from
  double w_star = 0.4;

  bool is_rib(int e) const { return edges[e].kind == EdgeKind::Rib; }
  bool is_skeletal(int e) const { return edges[e].kind != EdgeKind::Rib; }
  bool is_upward(int e) const { return nodes[edges[e].from].R < nodes[edges[e].to].R; }
  double length(int e) const { return coord_to_mm(dist(nodes[edges[e].from].pos, nodes[edges[e].to].pos)); }
  Vec2 pos(int n) const { return Vec2(nodes[n].pos); }

  // First edges of all faces.
  std::vector<int> faces() const;
  std::vector<int> face_edges(int first_edge) const;
  // Nearest point of a source to p, in micrometers.
  Vec2 support_point(int source, const Vec2& p) const;

  int add_node(const Point& p, double R);
  int add_edge(int from, int to, EdgeKind kind, int source);
  // Splits a skeletal edge (and its twin) at `p` with radius R, adding ribs
  // on both sides. Returns the new node, or an existing endpoint if p is
  // within 1 um of it.
  int split_edge(int e, const Vec2& p, double R);
  // Splits at the parameter t in [0,1] from the edge's origin, interpolating R linearly.
  int split_edge_at(int e, double t);
};

struct DiscretizedPoint {
  Vec2 p;    // um
  double R;  // mm
};

// Interior Voronoi graph before assembly into half-edges: the retained
// edges with their two generating sites.
struct VoronoiEdgeInfo {
  Vec2 p0, p1;
  int left_source = -1;
  int right_source = -1;
  EdgeKind kind = EdgeKind::LineLine;
  bool secondary = false;
};

struct VoronoiGraph {
  std::vector<SourceSite> sources;
  std::vector<VoronoiEdgeInfo> edges;
};

// Validates and normalizes the outline, then computes the segment Voronoi
// diagram and keeps the edges interior to it.
VoronoiGraph build_interior_voronoi(const PolygonSet& outline);

// Interior split points of one Voronoi edge, ordered from p0 to p1.
std::vector<DiscretizedPoint> discretize_edge(const VoronoiEdgeInfo& e, const std::vector<SourceSite>& sources,
                                              const StOptions& opt);

// Significance boundaries in canonical units (focus or half-distance = 1).
double parabola_boundary(double alpha_max_deg);
double vertex_vertex_boundary(double alpha_max_deg);

SkeletalTrapezoidation build_st(const PolygonSet& outline, const StOptions& opt = {});

struct Domain {
  int ring = -1;
  std::vector<int> faces;  // first edges, in outline order
};

std::vector<Domain> assign_domains(const SkeletalTrapezoidation& st);

}  // namespace beadpath
