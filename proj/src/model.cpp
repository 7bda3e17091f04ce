#include "bihyp/model.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>

namespace bihyp {

const char* tag_str(VertexTag t) {
    switch (t) {
    case VertexTag::plain: return "";
    case VertexTag::plus: return "+";
    case VertexTag::minus: return "-";
    case VertexTag::pp: return "++";
    case VertexTag::pm: return "+-";
    case VertexTag::mp: return "-+";
    default: return "--";
    }
}

VClass vertex_class(const Classification& cls, int id) {
    const ClusterInfo& in = cls.info(id);
    if (!in.ubereven)
        return in.chromaticity == Chromaticity::polychromatic ? VClass::single : VClass::pair;
    return in.chromatic_children > 0 ? VClass::pair : VClass::quad;
}

std::vector<Vertex> vertices_for(const Classification& cls, int id) {
    if (!cls.info(id).principal)
        throw domain_error("cluster c" + std::to_string(id) + " is not chromatically principal");
    int g = cls.info(id).chromatic_genus;
    switch (vertex_class(cls, id)) {
    case VClass::single: return {{id, VertexTag::plain, g}};
    case VClass::pair: return {{id, VertexTag::plus, g}, {id, VertexTag::minus, g}};
    default:
        return {{id, VertexTag::pp, g}, {id, VertexTag::pm, g}, {id, VertexTag::mp, g},
                {id, VertexTag::mm, g}};
    }
}

std::pair<int, VertexTag> identify(const Classification& cls, int id, int a, int b) {
    switch (vertex_class(cls, id)) {
    case VClass::single: return {id, VertexTag::plain};
    case VClass::pair:
        switch (cls.info(id).chromaticity) {
        case Chromaticity::mono_red: return {id, a > 0 ? VertexTag::plus : VertexTag::minus};
        case Chromaticity::mono_blue: return {id, b > 0 ? VertexTag::plus : VertexTag::minus};
        default: // ubereven with chromatic children: equal signs collapse to +
            return {id, a == b ? VertexTag::plus : VertexTag::minus};
        }
    default:
        if (a > 0) return {id, b > 0 ? VertexTag::pp : VertexTag::pm};
        return {id, b > 0 ? VertexTag::mp : VertexTag::mm};
    }
}

std::pair<int, VertexTag> identify_pm(const Classification& cls, int id, int sign) {
    switch (vertex_class(cls, id)) {
    case VClass::single: return {id, VertexTag::plain};
    case VClass::pair: return {id, sign > 0 ? VertexTag::plus : VertexTag::minus};
    default:
        throw domain_error("one-sign label on a four-vertex cluster c" + std::to_string(id));
    }
}

int DualGraph::vertex_id(int cluster, VertexTag tag) const {
    for (int i = 0; i < static_cast<int>(vertices.size()); ++i)
        if (vertices[static_cast<std::size_t>(i)].cluster == cluster &&
            vertices[static_cast<std::size_t>(i)].tag == tag)
            return i;
    return -1;
}

bool DualGraph::connected() const {
    if (vertices.empty()) return false;
    std::vector<int> seen(vertices.size(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const Edge& e : edges) {
            int other = -1;
            if (e.from == v) other = e.to;
            else if (e.to == v) other = e.from;
            if (other >= 0 && !seen[static_cast<std::size_t>(other)]) {
                seen[static_cast<std::size_t>(other)] = 1;
                stack.push_back(other);
            }
        }
    }
    for (int s : seen)
        if (!s) return false;
    return true;
}

int DualGraph::betti() const {
    return static_cast<int>(edges.size()) - static_cast<int>(vertices.size()) + 1;
}

int DualGraph::genus_sum() const {
    int g = 0;
    for (const Vertex& v : vertices) g += v.genus;
    return g;
}

namespace {

VertexTag flip_tag(VertexTag t, int f1, int f2) {
    auto sa = [&](int a) { return a > 0; };
    switch (t) {
    case VertexTag::plain: return t;
    case VertexTag::plus: return f1 > 0 ? VertexTag::plus : VertexTag::minus;
    case VertexTag::minus: return f1 > 0 ? VertexTag::minus : VertexTag::plus;
    default: {
        int a = (t == VertexTag::pp || t == VertexTag::pm) ? 1 : -1;
        int b = (t == VertexTag::pp || t == VertexTag::mp) ? 1 : -1;
        a *= f1;
        b *= f2;
        if (sa(a)) return sa(b) ? VertexTag::pp : VertexTag::pm;
        return sa(b) ? VertexTag::mp : VertexTag::mm;
    }
    }
}

} // namespace

std::string DualGraph::canonical_string() const {
    // Clusters owning flippable vertices, in order.
    std::vector<int> pair_clusters, quad_clusters;
    for (const Vertex& v : vertices) {
        if (v.tag == VertexTag::plus) pair_clusters.push_back(v.cluster);
        if (v.tag == VertexTag::pp) quad_clusters.push_back(v.cluster);
    }
    std::size_t combos = 1;
    for (std::size_t i = 0; i < pair_clusters.size(); ++i) combos *= 2;
    for (std::size_t i = 0; i < quad_clusters.size(); ++i) combos *= 4;

    std::string best;
    for (std::size_t mask = 0; mask < combos; ++mask) {
        std::size_t m = mask;
        std::map<int, std::pair<int, int>> flips;
        for (int c : pair_clusters) {
            flips[c] = {m % 2 ? -1 : 1, 1};
            m /= 2;
        }
        for (int c : quad_clusters) {
            flips[c] = {m % 2 ? -1 : 1, (m / 2) % 2 ? -1 : 1};
            m /= 4;
        }
        auto key = [&](int vi) {
            const Vertex& v = vertices[static_cast<std::size_t>(vi)];
            auto it = flips.find(v.cluster);
            VertexTag t = it == flips.end() ? v.tag : flip_tag(v.tag, it->second.first, it->second.second);
            return "c" + std::to_string(v.cluster) + std::string(tag_str(t));
        };
        std::vector<std::string> vs;
        for (int i = 0; i < static_cast<int>(vertices.size()); ++i)
            vs.push_back(key(i) + ":g" + std::to_string(vertices[static_cast<std::size_t>(i)].genus));
        std::sort(vs.begin(), vs.end());
        std::vector<std::string> es;
        for (const Edge& e : edges) {
            std::string a = key(e.from), b = key(e.to);
            if (b < a) std::swap(a, b);
            es.push_back(a + "--" + b + ":" + rat_str(e.length) +
                         (e.kind == EdgeKind::loop ? ":loop" : ":chain"));
        }
        std::sort(es.begin(), es.end());
        std::string s;
        for (const auto& v : vs) s += v + ";";
        s += "|";
        for (const auto& e : es) s += e + ";";
        if (best.empty() || s < best) best = s;
    }
    return best;
}

std::string DualGraph::to_dot() const {
    std::ostringstream os;
    os << "graph dual {\n";
    for (int i = 0; i < static_cast<int>(vertices.size()); ++i) {
        const Vertex& v = vertices[static_cast<std::size_t>(i)];
        os << "  v" << i << " [label=\"c" << v.cluster << tag_str(v.tag) << " g=" << v.genus
           << "\"];\n";
    }
    for (const Edge& e : edges)
        os << "  v" << e.from << " -- v" << e.to << " [label=\"" << rat_str(e.length) << "\"];\n";
    os << "}\n";
    return os.str();
}

std::string DualGraph::to_text() const {
    std::ostringstream os;
    os << vertices.size() << " vertices, " << edges.size() << " edges, betti "
       << (connected() ? betti() : -1) << "\n";
    for (int i = 0; i < static_cast<int>(vertices.size()); ++i) {
        const Vertex& v = vertices[static_cast<std::size_t>(i)];
        os << "  vertex v" << i << " = c" << v.cluster << tag_str(v.tag) << "  genus " << v.genus
           << "\n";
    }
    for (const Edge& e : edges) {
        const Vertex& a = vertices[static_cast<std::size_t>(e.from)];
        const Vertex& b = vertices[static_cast<std::size_t>(e.to)];
        os << "  " << (e.kind == EdgeKind::loop ? "loop " : "chain") << " " << e.name << ": c"
           << a.cluster << tag_str(a.tag) << " -- c" << b.cluster << tag_str(b.tag) << "  length "
           << rat_str(e.length) << "\n";
    }
    return os.str();
}

namespace {

struct Builder {
    const Picture& pic;
    const Classification& cls;
    DualGraph g;
    bool integral_input;

    Builder(const Picture& p, const Classification& c, bool integral)
        : pic(p), cls(c), integral_input(integral) {
        g.pic = &p;
    }

    int resolve(std::pair<int, VertexTag> ct) {
        int v = g.vertex_id(ct.first, ct.second);
        if (v < 0) throw domain_error("internal: missing vertex on cluster c" + std::to_string(ct.first));
        return v;
    }

    void check_length(const Rat& len, int cluster) {
        if (len <= 0)
            throw domain_error("non-positive chain length at cluster c" + std::to_string(cluster));
        if (integral_input && !is_integer(len))
            throw domain_error(
                "chain length " + rat_str(len) + " at cluster c" + std::to_string(cluster) +
                " is not an integer; the input violates a consequence of semistable reduction");
    }

    void add_edge(std::string name, std::pair<int, VertexTag> from, std::pair<int, VertexTag> to,
                  Rat length, EdgeKind kind, EdgeOrigin origin, int key, int aux, int sign, int fa,
                  int fb) {
        check_length(length, key);
        Edge e;
        e.name = std::move(name);
        e.from = resolve(from);
        e.to = resolve(to);
        e.length = std::move(length);
        e.kind = kind;
        e.origin = origin;
        e.key_cluster = key;
        e.aux_cluster = aux;
        e.sign = sign;
        e.fa = fa;
        e.fb = fb;
        g.edges.push_back(std::move(e));
    }

    std::string label(int c) const { return "c" + std::to_string(c); }

    void child_edges(int s, int c) {
        const Rat& delta = pic.cluster(c).rel_depth;
        const ClusterInfo& ci = cls.info(c);
        if (ci.principal) {
            if (ci.color != ClusterColor::black) {
                int sg = sigma(cls, s, c);
                add_edge("L_" + label(c) + "+", identify_pm(cls, s, +1), identify_pm(cls, c, sg),
                         delta / 2, EdgeKind::chain, EdgeOrigin::chain_chromatic, c, s, +1, 0, 0);
                add_edge("L_" + label(c) + "-", identify_pm(cls, s, -1), identify_pm(cls, c, -sg),
                         delta / 2, EdgeKind::chain, EdgeOrigin::chain_chromatic, c, s, -1, 0, 0);
            } else {
                for (int a : {+1, -1})
                    for (int b : {+1, -1})
                        add_edge("L_" + label(c) + (a > 0 ? "+" : "-") + (b > 0 ? "+" : "-"),
                                 identify(cls, s, a, b), identify(cls, c, a, b), delta,
                                 EdgeKind::chain, EdgeOrigin::chain_black, c, s, 0, a, b);
            }
            return;
        }
        if (ci.twin) {
            if (ci.color != ClusterColor::black) {
                add_edge("L_" + label(c), identify_pm(cls, s, +1), identify_pm(cls, s, -1), delta,
                         EdgeKind::loop, EdgeOrigin::loop_chromatic_twin, c, s, 0, 0, 0);
            } else {
                int sg = sigma(cls, s, c);
                add_edge("L_" + label(c) + "+", identify(cls, s, +1, +1), identify(cls, s, sg, -sg),
                         2 * delta, EdgeKind::loop, EdgeOrigin::loop_black_twin, c, s, +1, 0, 0);
                add_edge("L_" + label(c) + "-", identify(cls, s, -1, -1), identify(cls, s, -sg, sg),
                         2 * delta, EdgeKind::loop, EdgeOrigin::loop_black_twin, c, s, -1, 0, 0);
            }
            return;
        }
        if (!pic.cluster(c).is_leaf())
            throw domain_error("internal: non-principal proper child c" + std::to_string(c));
    }

    void nonprincipal_top() {
        int r = pic.root();
        const Cluster& root = pic.cluster(r);

        if (cls.info(r).cotwin) {
            int child = -1;
            for (int ch : root.children)
                if (pic.cluster(ch).size == cls.two_g_h()) child = ch;
            assert(child >= 0);
            const ClusterInfo& ci = cls.info(child);
            if (!ci.principal)
                throw domain_error("unsupported degenerate top: cotwin child c" +
                                   std::to_string(child) + " is not principal");
            const Rat& ds = pic.cluster(child).rel_depth;
            if (ci.color == ClusterColor::purple) {
                add_edge("L_" + label(r), identify_pm(cls, child, +1), identify_pm(cls, child, -1),
                         ds, EdgeKind::loop, EdgeOrigin::cotwin_loop_chromatic, r, child, 0, 0, 0);
                return;
            }
            if (ci.color == ClusterColor::black) {
                int sg = sigma(cls, r, child);
                add_edge("L_" + label(r) + "+", identify(cls, child, +1, +1),
                         identify(cls, child, sg, -sg), 2 * ds, EdgeKind::loop,
                         EdgeOrigin::cotwin_loop_black, r, child, +1, 0, 0);
                add_edge("L_" + label(r) + "-", identify(cls, child, -1, -1),
                         identify(cls, child, -sg, sg), 2 * ds, EdgeKind::loop,
                         EdgeOrigin::cotwin_loop_black, r, child, -1, 0, 0);
                return;
            }
            throw domain_error("unsupported degenerate top: cotwin child has odd color");
        }

        if (root.children.size() == 2) {
            int s = root.children[0], s2 = root.children[1];
            const ClusterInfo &a = cls.info(s), &b = cls.info(s2);
            const Rat sum = pic.cluster(s).rel_depth + pic.cluster(s2).rel_depth;
            if (a.principal && b.principal && a.color == b.color &&
                a.color != ClusterColor::black) {
                std::string base = "L_" + label(s) + "_" + label(s2);
                add_edge(base + "+", identify_pm(cls, s, +1), identify_pm(cls, s2, +1), sum / 2,
                         EdgeKind::chain, EdgeOrigin::top_chain_chromatic, s, s2, +1, 0, 0);
                add_edge(base + "-", identify_pm(cls, s, -1), identify_pm(cls, s2, -1), sum / 2,
                         EdgeKind::chain, EdgeOrigin::top_chain_chromatic, s, s2, -1, 0, 0);
                return;
            }
            if (a.principal && b.principal && a.color == ClusterColor::black &&
                b.color == ClusterColor::black) {
                std::string base = "L_" + label(s) + "_" + label(s2);
                for (int x : {+1, -1})
                    for (int y : {+1, -1})
                        add_edge(base + (x > 0 ? "+" : "-") + (y > 0 ? "+" : "-"),
                                 identify(cls, s, x, y), identify(cls, s2, x, y), sum,
                                 EdgeKind::chain, EdgeOrigin::top_chain_black, s, s2, 0, x, y);
                return;
            }
            // One side principal, the other a twin of the same color.
            int pr = a.principal ? s : (b.principal ? s2 : -1);
            int tw = a.principal ? s2 : s;
            if (pr >= 0 && cls.info(tw).twin) {
                ClusterColor pc = cls.info(pr).color, tc = cls.info(tw).color;
                if (pc == ClusterColor::purple && tc == ClusterColor::purple) {
                    add_edge("L_" + label(tw), identify_pm(cls, pr, +1), identify_pm(cls, pr, -1),
                             sum, EdgeKind::loop, EdgeOrigin::top_loop_purple_twin, tw, pr, 0, 0, 0);
                    return;
                }
                if (pc == ClusterColor::black && tc == ClusterColor::black) {
                    int sg = sigma(cls, pr, tw);
                    add_edge("L_" + label(tw) + "+", identify(cls, pr, +1, +1),
                             identify(cls, pr, sg, -sg), 2 * sum, EdgeKind::loop,
                             EdgeOrigin::top_loop_black_twin, tw, pr, +1, 0, 0);
                    add_edge("L_" + label(tw) + "-", identify(cls, pr, -1, -1),
                             identify(cls, pr, -sg, sg), 2 * sum, EdgeKind::loop,
                             EdgeOrigin::top_loop_black_twin, tw, pr, -1, 0, 0);
                    return;
                }
            }
        }
        throw domain_error("unsupported degenerate input: top cluster is not principal and "
                           "matches no decomposition handled by the construction");
    }

    DualGraph run() {
        for (int id : cls.principal_clusters())
            for (Vertex v : vertices_for(cls, id)) g.vertices.push_back(v);
        if (g.vertices.empty()) throw domain_error("no chromatically principal cluster");

        for (int id : cls.principal_clusters())
            for (int ch : pic.cluster(id).children) child_edges(id, ch);
        if (!cls.info(pic.root()).principal) nonprincipal_top();

        if (!g.connected())
            throw domain_error("internal: dual graph is not connected");
        return std::move(g);
    }
};

} // namespace

DualGraph build_dual_graph(const Picture& pic, const Classification& cls) {
    mpz_class l = den_lcm(1, pic.top_depth());
    for (const Cluster& c : pic.clusters()) l = den_lcm(l, c.rel_depth);
    if (l == 1) {
        Builder b(pic, cls, true);
        return b.run();
    }
    // Scale to integer depths, build, and divide the lengths back. Node ids
    // are stable under scaling, so only the picture pointer and lengths need
    // fixing up.
    Picture scaled = scale_depths(pic, Rat(l));
    Classification scls(scaled, cls.deg1(), cls.deg2());
    Builder b(scaled, scls, true);
    DualGraph g = b.run();
    g.pic = &pic;
    for (Edge& e : g.edges) {
        e.length /= Rat(l);
        e.length.canonicalize();
    }
    return g;
}

DualGraph build_dual_graph(const Picture& pic, int deg1, int deg2) {
    Classification cls(pic, deg1, deg2);
    return build_dual_graph(pic, cls);
}

} // namespace bihyp
