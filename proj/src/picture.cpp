#include "bihyp/picture.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>

namespace bihyp {

std::string rat_str(const Rat& q) {
    Rat c = q;
    c.canonicalize();
    return c.get_str();
}

Rat parse_rat(const std::string& text, std::size_t base_pos) {
    if (text.empty()) throw parse_error("expected a rational number", base_pos);
    std::size_t i = 0;
    auto digits = [&](std::size_t from) {
        std::size_t j = from;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        return j;
    };
    std::size_t j = i;
    if (text[j] == '-') ++j;
    std::size_t num_end = digits(j);
    if (num_end == j) throw parse_error("expected a rational number", base_pos + j);
    std::size_t end = num_end;
    if (end < text.size() && text[end] == '/') {
        std::size_t den_end = digits(end + 1);
        if (den_end == end + 1) throw parse_error("expected a denominator", base_pos + end + 1);
        end = den_end;
    }
    if (end != text.size()) throw parse_error("trailing characters in rational", base_pos + end);
    Rat q;
    if (q.set_str(text, 10) != 0) throw parse_error("malformed rational", base_pos);
    if (q.get_den() == 0) throw parse_error("zero denominator", base_pos);
    q.canonicalize();
    return q;
}

mpz_class den_lcm(const mpz_class& acc, const Rat& q) {
    mpz_class out;
    mpz_lcm(out.get_mpz_t(), acc.get_mpz_t(), q.get_den().get_mpz_t());
    return out;
}

namespace {

struct BuildNode {
    Rat rel_depth;
    std::optional<LeafColor> color;
    std::vector<BuildNode> children;
    int tag = -1;
    int size = 0;
    int red = 0, blue = 0;
    std::string shape;  // depth-free canonical text, used as a scale-stable sort key
    std::string text;   // canonical text with depths
};

// Child order: size descending, leaves before that by color (r < b), then by
// depth-free shape, then by relative depth, then by full text. Keeping the
// numeric depth comparison ahead of the full text makes the order invariant
// under scaling all depths by a positive rational.
std::tuple<int, int, const std::string&, const Rat&, const std::string&> sort_key(const BuildNode& n) {
    int color_code = n.color ? (*n.color == LeafColor::red ? 0 : 1) : 2;
    return {-n.size, color_code, n.shape, n.rel_depth, n.text};
}

void canonicalize(BuildNode& n, bool is_root, const Rat& top_depth) {
    if (n.color) {
        n.size = 1;
        n.red = *n.color == LeafColor::red ? 1 : 0;
        n.blue = 1 - n.red;
        n.shape = n.text = n.red ? "r" : "b";
        return;
    }
    if (n.children.size() == 1)
        throw domain_error("proper cluster with exactly one child");
    if (n.children.empty())
        throw domain_error("internal cluster with no members");
    for (auto& c : n.children) {
        canonicalize(c, false, top_depth);
        n.size += c.size;
        n.red += c.red;
        n.blue += c.blue;
    }
    std::sort(n.children.begin(), n.children.end(),
              [](const BuildNode& a, const BuildNode& b) { return sort_key(a) < sort_key(b); });
    const Rat& shown = is_root ? top_depth : n.rel_depth;
    n.shape = "(";
    n.text = "(" + rat_str(shown);
    for (const auto& c : n.children) {
        n.shape += " " + c.shape;
        n.text += " " + c.text;
    }
    n.shape += ")";
    n.text += ")";
}

} // namespace

ChromaticClusterPicture::ChromaticClusterPicture(const Node& root, Rat top_depth,
                                                 std::optional<long long> prime_hint)
    : top_depth_(std::move(top_depth)), prime_hint_(prime_hint) {
    top_depth_.canonicalize();

    // Re-root into the canonical build form.
    struct Conv {
        static BuildNode run(const Node& n) {
            BuildNode b;
            b.rel_depth = n.rel_depth;
            b.rel_depth.canonicalize();
            b.color = n.color;
            b.tag = n.tag;
            b.children.reserve(n.children.size());
            for (const auto& c : n.children) b.children.push_back(run(c));
            return b;
        }
    };
    BuildNode b = Conv::run(root);
    if (b.color) throw domain_error("top cluster cannot be a single root");
    canonicalize(b, true, top_depth_);
    if (b.red == 0 || b.blue == 0)
        throw domain_error("picture needs at least one red and one blue root");

    // Flatten in preorder.
    struct Flat {
        std::vector<Cluster>& nodes;
        std::vector<std::pair<int, int>>& tags;
        void run(const BuildNode& n, int parent, const Rat& parent_depth) {
            int id = static_cast<int>(nodes.size());
            if (n.tag >= 0) tags.emplace_back(n.tag, id);
            nodes.emplace_back();
            Cluster& c = nodes.back();
            c.id = id;
            c.parent = parent;
            c.leaf_color = n.color;
            c.rel_depth = parent < 0 ? Rat(0) : n.rel_depth;
            c.size = n.size;
            c.red_leaves = n.red;
            c.blue_leaves = n.blue;
            c.depth = parent_depth + c.rel_depth;
            if (parent >= 0) {
                // proper clusters need positive relative depth; leaves carry none
                if (!c.leaf_color && c.rel_depth <= 0)
                    throw domain_error("relative depth must be positive");
                if (c.leaf_color && c.rel_depth != 0)
                    throw domain_error("leaves carry no depth of their own");
                nodes[static_cast<std::size_t>(parent)].children.push_back(id);
            }
            for (const auto& ch : n.children) run(ch, id, nodes[static_cast<std::size_t>(id)].depth);
        }
    };
    Flat flat{nodes_, tag_to_id_};
    flat.run(b, -1, top_depth_);
    nodes_[0].depth = top_depth_;

    // Leaf lists and canonical texts per node.
    leaves_.assign(nodes_.size(), {});
    text_.assign(nodes_.size(), {});
    for (int id = static_cast<int>(nodes_.size()) - 1; id >= 0; --id) {
        const Cluster& c = nodes_[static_cast<std::size_t>(id)];
        if (c.is_leaf()) {
            leaves_[static_cast<std::size_t>(id)] = {id};
            text_[static_cast<std::size_t>(id)] = *c.leaf_color == LeafColor::red ? "r" : "b";
            continue;
        }
        std::string t = "(" + rat_str(id == 0 ? top_depth_ : c.rel_depth);
        auto& lv = leaves_[static_cast<std::size_t>(id)];
        for (int ch : c.children) {
            const auto& sub = leaves_[static_cast<std::size_t>(ch)];
            lv.insert(lv.end(), sub.begin(), sub.end());
            t += " " + text_[static_cast<std::size_t>(ch)];
        }
        t += ")";
        text_[static_cast<std::size_t>(id)] = t;
    }
}

int ChromaticClusterPicture::wedge(int a, int b) const {
    if (a < 0 || b < 0 || a >= node_count() || b >= node_count())
        throw domain_error("wedge: cluster id out of range");
    // Walk the deeper node up; depth strictly increases along root paths.
    while (a != b) {
        const Rat& da = nodes_[static_cast<std::size_t>(a)].depth;
        const Rat& db = nodes_[static_cast<std::size_t>(b)].depth;
        if (da > db || (da == db && a > b))
            a = nodes_[static_cast<std::size_t>(a)].parent;
        else
            b = nodes_[static_cast<std::size_t>(b)].parent;
        if (a < 0 || b < 0) throw domain_error("wedge: clusters from different pictures");
    }
    return a;
}

Rat ChromaticClusterPicture::rel_distance(int a, int b) const {
    int w = wedge(a, b);
    return nodes_[static_cast<std::size_t>(a)].depth + nodes_[static_cast<std::size_t>(b)].depth -
           2 * nodes_[static_cast<std::size_t>(w)].depth;
}

int ChromaticClusterPicture::id_of_tag(int tag) const {
    for (const auto& [t, id] : tag_to_id_)
        if (t == tag) return id;
    throw domain_error("unknown construction tag " + std::to_string(tag));
}

bool ChromaticClusterPicture::is_ancestor_or_self(int anc, int id) const {
    while (id >= 0) {
        if (id == anc) return true;
        id = nodes_[static_cast<std::size_t>(id)].parent;
    }
    return false;
}

namespace {

struct TextParser {
    const std::string& s;
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    [[noreturn]] void fail(const std::string& msg) { throw parse_error(msg, i); }

    Rat rational() {
        skip_ws();
        std::size_t start = i;
        if (i < s.size() && s[i] == '-') ++i;
        while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/')) ++i;
        if (i == start) fail("expected a depth");
        return parse_rat(s.substr(start, i - start), start);
    }

    ChromaticClusterPicture::Node cluster(bool is_root, Rat* top_depth) {
        skip_ws();
        if (i >= s.size() || s[i] != '(') fail("expected '('");
        ++i;
        ChromaticClusterPicture::Node n;
        Rat d = rational();
        if (is_root)
            *top_depth = d;
        else
            n.rel_depth = d;
        while (true) {
            skip_ws();
            if (i >= s.size()) fail("unterminated cluster");
            if (s[i] == ')') {
                ++i;
                break;
            }
            if (s[i] == '(') {
                n.children.push_back(cluster(false, nullptr));
            } else if (s[i] == 'r' || s[i] == 'b') {
                ChromaticClusterPicture::Node leaf;
                leaf.color = s[i] == 'r' ? LeafColor::red : LeafColor::blue;
                n.children.push_back(leaf);
                ++i;
            } else {
                fail("expected 'r', 'b' or a nested cluster");
            }
        }
        return n;
    }
};

} // namespace

Picture parse_picture(const std::string& text) {
    TextParser p{text};
    Rat top;
    auto root = p.cluster(true, &top);
    p.skip_ws();
    if (p.i != text.size()) throw parse_error("trailing characters after picture", p.i);
    return Picture(root, top);
}

std::string emit_picture(const Picture& pic) { return pic.canonical_text(0); }

namespace {

ChromaticClusterPicture::Node rebuild(const Picture& pic, int id, const Rat& e) {
    const Cluster& c = pic.cluster(id);
    ChromaticClusterPicture::Node n;
    n.color = c.leaf_color;
    n.rel_depth = c.rel_depth * e;
    for (int ch : c.children) n.children.push_back(rebuild(pic, ch, e));
    return n;
}

} // namespace

Picture scale_depths(const Picture& pic, const Rat& e) {
    if (e <= 0) throw domain_error("depth scale factor must be positive");
    return Picture(rebuild(pic, 0, e), pic.top_depth() * e, pic.prime_hint());
}

DerivedPicture derive(const Picture& pic, Pidx index) {
    DerivedPicture d;
    d.index = index;
    d.base = &pic;
    auto n = static_cast<std::size_t>(pic.node_count());
    d.size.assign(n, 0);
    d.leaves.assign(n, {});
    for (std::size_t id = 0; id < n; ++id) {
        for (int leaf : pic.leaves_of(static_cast<int>(id))) {
            LeafColor col = *pic.cluster(leaf).leaf_color;
            bool keep = index == Pidx::comp || (index == Pidx::red && col == LeafColor::red) ||
                        (index == Pidx::blue && col == LeafColor::blue);
            if (keep) {
                d.size[id]++;
                d.leaves[id].push_back(leaf);
            }
        }
    }
    return d;
}

int size_in(const Picture& pic, int id, Pidx index) {
    const Cluster& c = pic.cluster(id);
    switch (index) {
    case Pidx::red: return c.red_leaves;
    case Pidx::blue: return c.blue_leaves;
    default: return c.size;
    }
}

} // namespace bihyp
