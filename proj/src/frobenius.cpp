#include "bihyp/frobenius.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace bihyp {

void validate_action(const Picture& pic, const FrobeniusAction& action) {
    const auto& perm = action.cluster_perm;
    if (static_cast<int>(perm.size()) != pic.node_count())
        throw domain_error("cluster permutation has the wrong size");
    std::vector<int> seen(perm.size(), 0);
    for (int v : perm) {
        if (v < 0 || v >= pic.node_count()) throw domain_error("cluster permutation out of range");
        seen[static_cast<std::size_t>(v)]++;
    }
    for (int s : seen)
        if (s != 1) throw domain_error("cluster permutation is not a bijection");
    if (perm[0] != pic.root()) throw domain_error("cluster permutation must fix the root");
    for (int id = 0; id < pic.node_count(); ++id) {
        const Cluster& a = pic.cluster(id);
        const Cluster& b = pic.cluster(perm[static_cast<std::size_t>(id)]);
        if (a.parent >= 0 && perm[static_cast<std::size_t>(a.parent)] != b.parent)
            throw domain_error("cluster permutation does not preserve the tree");
        if (a.size != b.size || a.red_leaves != b.red_leaves || a.blue_leaves != b.blue_leaves)
            throw domain_error("cluster permutation does not preserve sizes or colors");
        if (a.leaf_color != b.leaf_color)
            throw domain_error("cluster permutation does not preserve leaf colors");
        if (a.rel_depth != b.rel_depth)
            throw domain_error("cluster permutation does not preserve depths");
    }
}

namespace {

// Indices where the cluster's vertex pair transforms by rule (i): the
// pictures in which it is ubereven.
std::vector<Pidx> rule1_indices(const Picture& pic, int s) {
    std::vector<Pidx> out;
    for (Pidx i : {Pidx::red, Pidx::blue, Pidx::comp})
        if (ubereven_in(pic, s, i)) out.push_back(i);
    return out;
}

// Indices where a chromatic cluster is even; drives rules (iii) and (v).
std::vector<Pidx> even_indices(const Picture& pic, int s) {
    std::vector<Pidx> out;
    for (Pidx i : {Pidx::red, Pidx::blue, Pidx::comp})
        if (even_in(pic, s, i)) out.push_back(i);
    return out;
}

Pidx empty_index_of_black_twin(const Picture& pic, int t) {
    bool e1 = empty_in(pic, t, Pidx::red), e2 = empty_in(pic, t, Pidx::blue);
    if (e1 == e2)
        throw domain_error("internal: black twin should be empty in exactly one colored picture");
    return e1 ? Pidx::red : Pidx::blue;
}

struct Actor {
    const DualGraph& g;
    const Classification& cls;
    const FrobeniusAction& act;
    const Picture& pic;

    int phi(int cluster) const { return act.cluster_perm[static_cast<std::size_t>(cluster)]; }

    int eps(int cluster, Pidx idx) const {
        auto v = act.eps.get(cluster, idx);
        if (!v)
            throw domain_error("missing epsilon entry for cluster c" + std::to_string(cluster) +
                               " in picture " + pidx_name(idx));
        return *v;
    }

    // Evaluates eps over all qualifying indices and insists they agree.
    int eps_consistent(int cluster, const std::vector<Pidx>& idxs, const char* what) const {
        if (idxs.empty())
            throw domain_error(std::string("no qualifying picture index for ") + what +
                               " at cluster c" + std::to_string(cluster));
        int v = eps(cluster, idxs[0]);
        for (std::size_t i = 1; i < idxs.size(); ++i)
            if (eps(cluster, idxs[i]) != v)
                throw domain_error(std::string("inconsistent epsilon values across indices for ") +
                                   what + " at cluster c" + std::to_string(cluster));
        return v;
    }

    std::vector<int> vertex_map() const {
        std::vector<int> vm(g.vertices.size(), -1);
        for (int vi = 0; vi < static_cast<int>(g.vertices.size()); ++vi) {
            const Vertex& v = g.vertices[static_cast<std::size_t>(vi)];
            int s2 = phi(v.cluster);
            VertexTag t = v.tag;
            switch (vertex_class(cls, v.cluster)) {
            case VClass::single:
                break;
            case VClass::pair: {
                int e = eps_consistent(v.cluster, rule1_indices(pic, v.cluster), "rule (i)");
                if (e < 0)
                    t = v.tag == VertexTag::plus ? VertexTag::minus : VertexTag::plus;
                break;
            }
            case VClass::quad: {
                int e2 = eps(v.cluster, Pidx::blue);
                int e1 = eps(v.cluster, Pidx::red);
                int a = (v.tag == VertexTag::pp || v.tag == VertexTag::pm) ? 1 : -1;
                int b = (v.tag == VertexTag::pp || v.tag == VertexTag::mp) ? 1 : -1;
                a *= e2;
                b *= e1;
                t = a > 0 ? (b > 0 ? VertexTag::pp : VertexTag::pm)
                          : (b > 0 ? VertexTag::mp : VertexTag::mm);
                break;
            }
            }
            int target = g.vertex_id(s2, t);
            if (target < 0)
                throw domain_error("no image vertex for c" + std::to_string(v.cluster) +
                                   tag_str(v.tag));
            vm[static_cast<std::size_t>(vi)] = target;
        }
        return vm;
    }

    int find_edge(EdgeOrigin origin, int key, int aux, int sign, int fa, int fb) const {
        int found = -1;
        for (int ei = 0; ei < static_cast<int>(g.edges.size()); ++ei) {
            const Edge& e = g.edges[static_cast<std::size_t>(ei)];
            if (e.origin != origin || e.sign != sign || e.fa != fa || e.fb != fb) continue;
            bool keys_match = (e.key_cluster == key && (aux < 0 || e.aux_cluster == aux)) ||
                              (aux >= 0 && e.key_cluster == aux && e.aux_cluster == key);
            if (!keys_match) continue;
            if (found >= 0) throw domain_error("internal: ambiguous image edge");
            found = ei;
        }
        if (found < 0) throw domain_error("internal: no image edge found");
        return found;
    }

    GraphAutomorphism run() const {
        GraphAutomorphism out;
        out.vertex_map = vertex_map();
        out.edge_map.assign(g.edges.size(), {-1, 0});

        for (int ei = 0; ei < static_cast<int>(g.edges.size()); ++ei) {
            const Edge& e = g.edges[static_cast<std::size_t>(ei)];
            int target = -1;
            int rule_sign = 1;
            bool is_loop_rule = false;
            switch (e.origin) {
            case EdgeOrigin::chain_chromatic: {
                int ev = eps_consistent(e.key_cluster, even_indices(pic, e.key_cluster), "rule (iii)");
                target = find_edge(e.origin, phi(e.key_cluster), -1, e.sign * ev, 0, 0);
                break;
            }
            case EdgeOrigin::chain_black: {
                int e2 = eps(e.key_cluster, Pidx::blue);
                int e1 = eps(e.key_cluster, Pidx::red);
                target = find_edge(e.origin, phi(e.key_cluster), -1, 0, e.fa * e2, e.fb * e1);
                break;
            }
            case EdgeOrigin::loop_chromatic_twin: {
                rule_sign = eps(e.key_cluster, Pidx::comp);
                is_loop_rule = true;
                target = find_edge(e.origin, phi(e.key_cluster), -1, 0, 0, 0);
                break;
            }
            case EdgeOrigin::loop_black_twin: {
                Pidx i = empty_index_of_black_twin(pic, e.key_cluster);
                Pidx j = i == Pidx::red ? Pidx::blue : Pidx::red;
                int swap = eps(e.key_cluster, i);
                rule_sign = eps(e.key_cluster, j);
                is_loop_rule = true;
                target = find_edge(e.origin, phi(e.key_cluster), -1, e.sign * swap, 0, 0);
                break;
            }
            case EdgeOrigin::cotwin_loop_chromatic: {
                rule_sign = eps(e.key_cluster, Pidx::comp); // the cotwin's character
                is_loop_rule = true;
                target = find_edge(e.origin, phi(e.key_cluster), phi(e.aux_cluster), 0, 0, 0);
                break;
            }
            case EdgeOrigin::cotwin_loop_black:
                throw domain_error("Frobenius action on cotwin loops with a black child is not "
                                   "determined by the construction's rules");
            case EdgeOrigin::top_chain_chromatic: {
                int v1 = eps_consistent(e.key_cluster, even_indices(pic, e.key_cluster),
                                        "top chains");
                int v2 = eps_consistent(e.aux_cluster, even_indices(pic, e.aux_cluster),
                                        "top chains");
                if (v1 != v2)
                    throw domain_error("inconsistent epsilon values across the two top clusters");
                target = find_edge(e.origin, phi(e.key_cluster), phi(e.aux_cluster), e.sign * v1,
                                   0, 0);
                break;
            }
            case EdgeOrigin::top_chain_black: {
                int e2 = eps(e.key_cluster, Pidx::blue);
                int e1 = eps(e.key_cluster, Pidx::red);
                if (e2 != eps(e.aux_cluster, Pidx::blue) || e1 != eps(e.aux_cluster, Pidx::red))
                    throw domain_error("inconsistent epsilon values across the two top clusters");
                target = find_edge(e.origin, phi(e.key_cluster), phi(e.aux_cluster), 0, e.fa * e2,
                                   e.fb * e1);
                break;
            }
            case EdgeOrigin::top_loop_purple_twin: {
                rule_sign = eps(e.key_cluster, Pidx::comp);
                is_loop_rule = true;
                target = find_edge(e.origin, phi(e.key_cluster), phi(e.aux_cluster), 0, 0, 0);
                break;
            }
            case EdgeOrigin::top_loop_black_twin: {
                Pidx i = empty_index_of_black_twin(pic, e.key_cluster);
                Pidx j = i == Pidx::red ? Pidx::blue : Pidx::red;
                int swap = eps(e.key_cluster, i);
                rule_sign = eps(e.key_cluster, j);
                is_loop_rule = true;
                target = find_edge(e.origin, phi(e.key_cluster), phi(e.aux_cluster),
                                   e.sign * swap, 0, 0);
                break;
            }
            }

            const Edge& te = g.edges[static_cast<std::size_t>(target)];
            int F = out.vertex_map[static_cast<std::size_t>(e.from)];
            int T = out.vertex_map[static_cast<std::size_t>(e.to)];
            int orient;
            if (F == te.from && T == te.to)
                orient = 1;
            else if (F == te.to && T == te.from)
                orient = -1;
            else
                throw domain_error("rule image disagrees with vertex images on edge " + e.name);
            int sign;
            if (is_loop_rule) {
                if (te.from != te.to && orient != rule_sign)
                    throw domain_error("loop sign disagrees with endpoint images on edge " +
                                       e.name);
                sign = rule_sign;
            } else {
                sign = orient;
            }
            out.edge_map[static_cast<std::size_t>(ei)] = {target, sign};
        }

        // the result must be an automorphism
        std::vector<int> vseen(g.vertices.size(), 0), eseen(g.edges.size(), 0);
        for (int v : out.vertex_map) vseen[static_cast<std::size_t>(v)]++;
        for (auto [t, s] : out.edge_map) eseen[static_cast<std::size_t>(t)]++;
        for (int s : vseen)
            if (s != 1) throw domain_error("vertex map is not a bijection");
        for (int s : eseen)
            if (s != 1) throw domain_error("edge map is not a bijection");
        for (int vi = 0; vi < static_cast<int>(g.vertices.size()); ++vi) {
            const Vertex& a = g.vertices[static_cast<std::size_t>(vi)];
            const Vertex& b = g.vertices[static_cast<std::size_t>(out.vertex_map[static_cast<std::size_t>(vi)])];
            if (a.genus != b.genus) throw domain_error("vertex map does not preserve genus");
        }
        for (int ei = 0; ei < static_cast<int>(g.edges.size()); ++ei) {
            const Edge& a = g.edges[static_cast<std::size_t>(ei)];
            const Edge& b = g.edges[static_cast<std::size_t>(out.edge_map[static_cast<std::size_t>(ei)].first)];
            if (a.length != b.length || a.kind != b.kind)
                throw domain_error("edge map does not preserve lengths and kinds");
        }
        return out;
    }
};

} // namespace

std::vector<std::pair<int, Pidx>> demanded_eps(const DualGraph& g, const Classification& cls) {
    const Picture& pic = *g.pic;
    std::set<std::pair<int, int>> acc;
    auto add = [&](int c, Pidx i) { acc.insert({c, static_cast<int>(i)}); };

    std::set<int> vertex_clusters;
    for (const Vertex& v : g.vertices) vertex_clusters.insert(v.cluster);
    for (int c : vertex_clusters) {
        switch (vertex_class(cls, c)) {
        case VClass::single: break;
        case VClass::pair:
            for (Pidx i : rule1_indices(pic, c)) add(c, i);
            break;
        case VClass::quad:
            add(c, Pidx::red);
            add(c, Pidx::blue);
            break;
        }
    }
    for (const Edge& e : g.edges) {
        switch (e.origin) {
        case EdgeOrigin::chain_chromatic:
            for (Pidx i : even_indices(pic, e.key_cluster)) add(e.key_cluster, i);
            break;
        case EdgeOrigin::chain_black:
            add(e.key_cluster, Pidx::red);
            add(e.key_cluster, Pidx::blue);
            break;
        case EdgeOrigin::loop_chromatic_twin:
        case EdgeOrigin::cotwin_loop_chromatic:
        case EdgeOrigin::top_loop_purple_twin:
            add(e.key_cluster, Pidx::comp);
            break;
        case EdgeOrigin::loop_black_twin:
        case EdgeOrigin::top_loop_black_twin:
            add(e.key_cluster, Pidx::red);
            add(e.key_cluster, Pidx::blue);
            break;
        case EdgeOrigin::cotwin_loop_black:
            break; // unsupported downstream; nothing to demand
        case EdgeOrigin::top_chain_chromatic:
            for (Pidx i : even_indices(pic, e.key_cluster)) add(e.key_cluster, i);
            for (Pidx i : even_indices(pic, e.aux_cluster)) add(e.aux_cluster, i);
            break;
        case EdgeOrigin::top_chain_black:
            add(e.key_cluster, Pidx::red);
            add(e.key_cluster, Pidx::blue);
            add(e.aux_cluster, Pidx::red);
            add(e.aux_cluster, Pidx::blue);
            break;
        }
    }
    std::vector<std::pair<int, Pidx>> out;
    for (auto [c, i] : acc) out.push_back({c, static_cast<Pidx>(i)});
    return out;
}

GraphAutomorphism act(const DualGraph& g, const Classification& cls,
                      const FrobeniusAction& action) {
    validate_action(*g.pic, action);
    Actor actor{g, cls, action, *g.pic};
    return actor.run();
}

FrobeniusAction action_from_context(const Picture& pic, const Classification& cls,
                                    const ArithContext& ctx, const DualGraph& g) {
    FrobeniusAction action;
    action.cluster_perm = ctx.cluster_frobenius(pic);
    std::string missing;
    for (auto [c, i] : demanded_eps(g, cls)) {
        auto v = ctx.epsilon(pic, cls, c, i);
        if (!v) {
            missing += std::string(missing.empty() ? "" : ", ") + "(c" + std::to_string(c) + "," +
                       pidx_name(i) + ")";
            continue;
        }
        action.eps.set(c, i, *v);
    }
    if (!missing.empty())
        throw domain_error("epsilon undefined (odd valuation) for entries: " + missing);
    return action;
}

std::string automorphism_text(const DualGraph& g, const GraphAutomorphism& a) {
    std::ostringstream os;
    for (int vi = 0; vi < static_cast<int>(g.vertices.size()); ++vi) {
        const Vertex& v = g.vertices[static_cast<std::size_t>(vi)];
        const Vertex& w = g.vertices[static_cast<std::size_t>(a.vertex_map[static_cast<std::size_t>(vi)])];
        os << "  vertex c" << v.cluster << tag_str(v.tag) << " -> c" << w.cluster << tag_str(w.tag)
           << "\n";
    }
    for (int ei = 0; ei < static_cast<int>(g.edges.size()); ++ei) {
        auto [t, s] = a.edge_map[static_cast<std::size_t>(ei)];
        os << "  edge " << g.edges[static_cast<std::size_t>(ei)].name << " -> "
           << (s < 0 ? "-" : "") << g.edges[static_cast<std::size_t>(t)].name << "\n";
    }
    return os.str();
}

} // namespace bihyp
