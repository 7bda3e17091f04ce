#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bihyp/rational.hpp"

namespace bihyp {

enum class LeafColor { red, blue };

// One disc/cluster of a chromatic cluster picture. Nodes are pooled inside
// the picture and referred to by index; indices follow canonical preorder,
// so the root is always cluster 0 and serialization is stable.
struct Cluster {
    int id = -1;
    int parent = -1;                     // -1 on the root
    std::vector<int> children;           // canonical order
    std::optional<LeafColor> leaf_color; // set exactly on leaves
    Rat rel_depth = 0;                   // depth relative to the parent; 0 on the root

    // Derived at construction.
    int size = 0;        // number of leaf descendants
    int red_leaves = 0;
    int blue_leaves = 0;
    Rat depth = 0;       // absolute depth

    bool is_leaf() const { return leaf_color.has_value(); }
    bool is_proper() const { return size >= 2; }
    bool is_twin() const { return size == 2; }
};

// Rooted depth-labelled tree with red/blue leaves. Immutable once built; all
// operations are const and the object can be shared freely across threads.
class ChromaticClusterPicture {
public:
    // Transient construction form (pre-canonical tree).
    struct Node {
        Rat rel_depth = 0;                   // ignored on the root
        std::optional<LeafColor> color;      // set on leaves only
        std::vector<Node> children;
        int tag = -1;                        // optional caller key, see id_of_tag
    };

    ChromaticClusterPicture(const Node& root, Rat top_depth,
                            std::optional<long long> prime_hint = std::nullopt);

    int root() const { return 0; }
    int node_count() const { return static_cast<int>(nodes_.size()); }
    const Cluster& cluster(int id) const { return nodes_.at(static_cast<std::size_t>(id)); }
    const std::vector<Cluster>& clusters() const { return nodes_; }
    const Rat& top_depth() const { return top_depth_; }
    std::optional<long long> prime_hint() const { return prime_hint_; }

    int total_leaves() const { return nodes_[0].size; }
    int red_leaves() const { return nodes_[0].red_leaves; }
    int blue_leaves() const { return nodes_[0].blue_leaves; }

    // Leaf ids under a cluster, in canonical order.
    const std::vector<int>& leaves_of(int id) const { return leaves_.at(static_cast<std::size_t>(id)); }

    // Lowest common ancestor (the smallest cluster containing both).
    int wedge(int a, int b) const;

    // d_a + d_b - 2 d_{a wedge b}.
    Rat rel_distance(int a, int b) const;

    bool is_ancestor_or_self(int anc, int id) const;

    // Canonical serialization of the subtree rooted at id. For the root this
    // is the full picture text.
    const std::string& canonical_text(int id) const { return text_.at(static_cast<std::size_t>(id)); }

    bool structurally_equal(const ChromaticClusterPicture& o) const {
        return top_depth_ == o.top_depth_ && text_[0] == o.text_[0];
    }

    // Node id carrying the given construction tag; construction tags survive
    // canonical reordering, which is how external data stays attached to the
    // right leaf.
    int id_of_tag(int tag) const;

private:
    std::vector<Cluster> nodes_;
    std::vector<std::vector<int>> leaves_;
    std::vector<std::string> text_;
    std::vector<std::pair<int, int>> tag_to_id_;
    Rat top_depth_;
    std::optional<long long> prime_hint_;
};

using Picture = ChromaticClusterPicture;

// Text grammar: cluster := '(' depth item+ ')', item := 'r' | 'b' | cluster.
// The top-level depth is absolute, nested depths are relative.
Picture parse_picture(const std::string& text);
std::string emit_picture(const Picture& pic);

// Same tree with every depth (absolute and relative) multiplied by e > 0.
// Node ids are preserved.
Picture scale_depths(const Picture& pic, const Rat& e);

// The three pictures a chromatic cluster picture projects to: the red one
// keeps only red leaves, the blue one only blue leaves, the composite keeps
// everything. 1/2/h in the notation of the input format.
enum class Pidx { red = 0, blue = 1, comp = 2 };

inline const char* pidx_name(Pidx i) {
    switch (i) {
    case Pidx::red: return "1";
    case Pidx::blue: return "2";
    default: return "h";
    }
}

// A derived picture shares the disc tree of its base picture (node ids are
// the back map); only leaf membership changes. Unlike the base picture it
// may contain empty nodes and chain nodes (a single surviving child).
struct DerivedPicture {
    Pidx index = Pidx::comp;
    const Picture* base = nullptr;
    std::vector<int> size;               // surviving leaves per node
    std::vector<std::vector<int>> leaves; // surviving leaf ids per node

    int back_map(int node) const { return node; }
    bool empty_node(int node) const { return size.at(static_cast<std::size_t>(node)) == 0; }
};

DerivedPicture derive(const Picture& pic, Pidx index);

// Size of a cluster inside one of the derived pictures, without
// materializing the whole DerivedPicture.
int size_in(const Picture& pic, int id, Pidx index);
inline bool even_in(const Picture& pic, int id, Pidx index) { return size_in(pic, id, index) % 2 == 0; }
inline bool empty_in(const Picture& pic, int id, Pidx index) { return size_in(pic, id, index) == 0; }

} // namespace bihyp
