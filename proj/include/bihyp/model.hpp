#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bihyp/classify.hpp"
#include "bihyp/picture.hpp"

namespace bihyp {

enum class VertexTag { plain, plus, minus, pp, pm, mp, mm };

const char* tag_str(VertexTag t);

// How many vertices a principal cluster contributes and how its formal
// (+/-, +/-) labels collapse onto them.
enum class VClass { single, pair, quad };
VClass vertex_class(const Classification& cls, int id);

struct Vertex {
    int cluster = -1;
    VertexTag tag = VertexTag::plain;
    int genus = 0;
};

enum class EdgeKind { chain, loop };

// Which theorem row produced an edge. The Frobenius action is keyed on this.
enum class EdgeOrigin {
    chain_chromatic,    // chromatic principal child -> parent, one of two chains
    chain_black,        // black principal child -> parent, one of four chains
    loop_chromatic_twin,
    loop_black_twin,
    cotwin_loop_chromatic, // top not principal, cotwin with purple child
    cotwin_loop_black,     // top not principal, cotwin with black child
    top_chain_chromatic,   // top = union of two principal clusters, same chromatic color
    top_chain_black,       // top = union of two black principal clusters
    top_loop_purple_twin,  // top = purple principal + purple twin
    top_loop_black_twin,   // top = black principal + black twin
};

struct Edge {
    std::string name;
    int from = -1, to = -1; // vertex indices; order fixes the loop orientation
    Rat length;
    EdgeKind kind = EdgeKind::chain;
    EdgeOrigin origin = EdgeOrigin::chain_chromatic;
    int key_cluster = -1; // the cluster the row is attached to (child / twin / cotwin)
    int aux_cluster = -1; // second cluster for top-decomposition rows
    int sign = 0;         // +1/-1 for the two-member families, 0 otherwise
    int fa = 0, fb = 0;   // formal (a,b) coordinates for the four-member families
};

struct DualGraph {
    const Picture* pic = nullptr;
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;

    int vertex_id(int cluster, VertexTag tag) const; // -1 if absent
    bool connected() const;
    int betti() const; // E - V + 1, valid on connected graphs
    int genus_sum() const;

    // Canonical description minimized over the gauge group: independent
    // +/- flips per pair-class cluster and independent coordinate flips per
    // quad-class cluster. Two graphs agree up to gauge iff the strings match.
    std::string canonical_string() const;

    std::string to_dot() const;
    std::string to_text() const;
};

// Vertices contributed by a principal cluster (throws if not principal).
std::vector<Vertex> vertices_for(const Classification& cls, int id);

// The theorem's identification of formal labels with concrete vertices.
std::pair<int, VertexTag> identify(const Classification& cls, int id, int a, int b);
std::pair<int, VertexTag> identify_pm(const Classification& cls, int id, int sign);

// Edge families. These return edges with vertex endpoints unresolved
// (cluster/tag pairs are resolved against the graph by build).
struct DualGraphBuilder;

// Full construction. Non-integer depths are handled by scaling to integers,
// building, and dividing all lengths back.
DualGraph build_dual_graph(const Picture& pic, int deg1 = -1, int deg2 = -1);
DualGraph build_dual_graph(const Picture& pic, const Classification& cls);

} // namespace bihyp
