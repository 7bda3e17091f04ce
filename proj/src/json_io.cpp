#include "bihyp/json_io.hpp"

#include <algorithm>

namespace bihyp {

namespace {

Json node_to_json(const Picture& pic, int id) {
    const Cluster& c = pic.cluster(id);
    Json j;
    j["depth"] = nullptr;
    if (id != pic.root() && !c.is_leaf()) j["depth"] = rat_str(c.rel_depth);
    j["color"] = nullptr;
    if (c.is_leaf()) j["color"] = *c.leaf_color == LeafColor::red ? "r" : "b";
    j["children"] = Json::array();
    for (int ch : c.children) j["children"].push_back(node_to_json(pic, ch));
    return j;
}

Picture::Node node_from_json(const Json& j, bool is_root) {
    Picture::Node n;
    if (!j.is_object()) throw domain_error("picture JSON: node must be an object");
    if (j.contains("color") && !j["color"].is_null()) {
        std::string c = j["color"].get<std::string>();
        if (c == "r")
            n.color = LeafColor::red;
        else if (c == "b")
            n.color = LeafColor::blue;
        else
            throw domain_error("picture JSON: color must be \"r\" or \"b\"");
    }
    if (!is_root && !n.color) {
        if (!j.contains("depth") || j["depth"].is_null())
            throw domain_error("picture JSON: non-root cluster needs a depth");
        n.rel_depth = parse_rat(j["depth"].get<std::string>());
    }
    if (j.contains("children"))
        for (const auto& ch : j["children"]) n.children.push_back(node_from_json(ch, false));
    if (!n.color && n.children.empty())
        throw domain_error("picture JSON: childless node is missing its color");
    return n;
}

Rat rat_from_json(const Json& j, const char* what) {
    if (j.is_string()) return parse_rat(j.get<std::string>());
    if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
    throw domain_error(std::string("expected ") + what + " as a string or integer");
}

} // namespace

Json picture_to_json(const Picture& pic) {
    Json j;
    j["top_depth"] = rat_str(pic.top_depth());
    j["tree"] = node_to_json(pic, pic.root());
    return j;
}

Picture picture_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("top_depth") || !j.contains("tree"))
        throw domain_error("picture JSON: expected {\"top_depth\": ..., \"tree\": ...}");
    Rat top = rat_from_json(j["top_depth"], "top_depth");
    Picture::Node root = node_from_json(j["tree"], true);
    return Picture(root, top);
}

Rat parse_p_literal(const std::string& text, long long p) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' '; }), s.end());
    if (s.empty()) throw domain_error("empty coefficient literal");
    Rat u = 1;
    std::size_t i = 0;
    bool have_u = false;
    if (s[0] == '-' && s.size() > 1 && s[1] == 'p') {
        u = -1;
        i = 1;
    } else if (s[0] != 'p') {
        std::size_t end = i;
        while (end < s.size() && s[end] != '*') ++end;
        u = parse_rat(s.substr(i, end - i));
        have_u = true;
        i = end;
        if (i < s.size() && s[i] == '*') ++i;
    }
    if (i == s.size()) {
        if (!have_u) throw domain_error("malformed coefficient literal: " + text);
        return u;
    }
    if (s[i] != 'p') throw domain_error("malformed coefficient literal: " + text);
    ++i;
    long long m = 1;
    if (i < s.size()) {
        if (s[i] != '^') throw domain_error("malformed coefficient literal: " + text);
        ++i;
        Rat e = parse_rat(s.substr(i));
        if (!is_integer(e) || e < 0) throw domain_error("exponent must be a nonnegative integer");
        m = static_cast<long long>(e.get_num().get_si());
    }
    mpz_class pm;
    mpz_ui_pow_ui(pm.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(m));
    return u * Rat(pm);
}

PolynomialInput polynomial_input_from_json(const Json& j, long long p_override) {
    PolynomialInput in;
    if (!j.is_object() || !j.contains("p") || !j.contains("f1") || !j.contains("f2"))
        throw domain_error("polynomial JSON: expected {\"p\": ..., \"f1\": ..., \"f2\": ...}");
    in.p = p_override > 0 ? p_override : j["p"].get<long long>();
    auto read_side = [&](const Json& side, LeafColor color, Rat& lead,
                         std::vector<RootDescriptor>& out) {
        if (side.contains("lead")) {
            if (side["lead"].is_string())
                lead = parse_p_literal(side["lead"].get<std::string>(), in.p);
            else
                lead = rat_from_json(side["lead"], "lead");
        }
        if (!side.contains("factors") || !side["factors"].is_array())
            throw domain_error("polynomial JSON: each side needs a \"factors\" array");
        for (const auto& f : side["factors"]) {
            RootDescriptor d;
            d.color = color;
            if (f.contains("z")) {
                if (f["z"].is_string())
                    d.z = parse_p_literal(f["z"].get<std::string>(), in.p);
                else
                    d.z = rat_from_json(f["z"], "z");
            }
            if (!f.contains("c")) throw domain_error("polynomial JSON: factor is missing \"c\"");
            if (f["c"].is_string())
                d.c = parse_p_literal(f["c"].get<std::string>(), in.p);
            else
                d.c = rat_from_json(f["c"], "c");
            d.n = f.contains("n") ? f["n"].get<int>() : 1;
            out.push_back(d);
        }
    };
    read_side(j["f1"], LeafColor::red, in.lead1, in.red);
    read_side(j["f2"], LeafColor::blue, in.lead2, in.blue);
    return in;
}

Json graph_to_json(const DualGraph& g) {
    Json j;
    j["vertices"] = Json::array();
    for (const Vertex& v : g.vertices)
        j["vertices"].push_back({{"cluster", v.cluster}, {"tag", tag_str(v.tag)}, {"genus", v.genus}});
    j["edges"] = Json::array();
    for (const Edge& e : g.edges)
        j["edges"].push_back({{"name", e.name},
                              {"from", e.from},
                              {"to", e.to},
                              {"length", rat_str(e.length)},
                              {"kind", e.kind == EdgeKind::loop ? "loop" : "chain"}});
    j["betti"] = g.betti();
    j["genus_sum"] = g.genus_sum();
    return j;
}

Json classification_to_json(const Classification& cls) {
    const Picture& pic = cls.picture();
    Json arr = Json::array();
    for (int id = 0; id < pic.node_count(); ++id) {
        const ClusterInfo& in = cls.info(id);
        auto par = parity_profile(pic, id);
        arr.push_back({{"cluster", id},
                       {"size", pic.cluster(id).size},
                       {"color", color_name(in.color)},
                       {"parity", {par[0], par[1], par[2]}},
                       {"ubereven", in.ubereven},
                       {"twin", in.twin},
                       {"cotwin", in.cotwin},
                       {"principal", in.principal},
                       {"chromaticity", chromaticity_name(in.chromaticity)},
                       {"genus", in.genus},
                       {"chromatic_genus", in.chromatic_genus},
                       {"star", in.star}});
    }
    return Json{{"clusters", arr}};
}

namespace {

int cluster_ref(const Json& j, const Picture& pic) {
    int id = -1;
    if (j.is_number_integer())
        id = j.get<int>();
    else if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (!s.empty() && s[0] == 'c') s = s.substr(1);
        id = std::stoi(s);
    } else {
        throw domain_error("cluster reference must be an integer or \"c<k>\"");
    }
    if (id < 0 || id >= pic.node_count())
        throw domain_error("cluster reference out of range: " + j.dump());
    return id;
}

} // namespace

EpsilonTable eps_table_from_json(const Json& j, const Picture& pic) {
    EpsilonTable t;
    if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array())
        throw domain_error("epsilon JSON: expected {\"entries\": [...]}");
    for (const auto& e : j["entries"]) {
        int c = cluster_ref(e.at("cluster"), pic);
        std::string idx = e.at("index").get<std::string>();
        Pidx i;
        if (idx == "1")
            i = Pidx::red;
        else if (idx == "2")
            i = Pidx::blue;
        else if (idx == "h")
            i = Pidx::comp;
        else
            throw domain_error("epsilon JSON: index must be \"1\", \"2\" or \"h\"");
        int v = e.at("value").get<int>();
        if (v != 1 && v != -1) throw domain_error("epsilon JSON: value must be +1 or -1");
        t.set(c, i, v);
    }
    return t;
}

std::vector<int> cluster_perm_from_json(const Json& j, const Picture& pic) {
    std::vector<int> perm(static_cast<std::size_t>(pic.node_count()));
    for (int i = 0; i < pic.node_count(); ++i) perm[static_cast<std::size_t>(i)] = i;
    if (j.is_null()) return perm;
    if (!j.is_object() || !j.contains("map") || !j["map"].is_array())
        throw domain_error("permutation JSON: expected {\"map\": [[from, to], ...]}");
    for (const auto& pair : j["map"]) {
        if (!pair.is_array() || pair.size() != 2)
            throw domain_error("permutation JSON: entries are [from, to] pairs");
        perm[static_cast<std::size_t>(cluster_ref(pair[0], pic))] = cluster_ref(pair[1], pic);
    }
    return perm;
}

Json automorphism_to_json(const DualGraph& g, const GraphAutomorphism& a) {
    Json j;
    j["vertex_map"] = Json::array();
    for (int vi = 0; vi < static_cast<int>(g.vertices.size()); ++vi) {
        const Vertex& v = g.vertices[static_cast<std::size_t>(vi)];
        const Vertex& w = g.vertices[static_cast<std::size_t>(a.vertex_map[static_cast<std::size_t>(vi)])];
        j["vertex_map"].push_back({{"from", "c" + std::to_string(v.cluster) + tag_str(v.tag)},
                                   {"to", "c" + std::to_string(w.cluster) + tag_str(w.tag)}});
    }
    j["edge_map"] = Json::array();
    for (int ei = 0; ei < static_cast<int>(g.edges.size()); ++ei) {
        auto [t, s] = a.edge_map[static_cast<std::size_t>(ei)];
        j["edge_map"].push_back({{"from", g.edges[static_cast<std::size_t>(ei)].name},
                                 {"to", g.edges[static_cast<std::size_t>(t)].name},
                                 {"sign", s}});
    }
    return j;
}

} // namespace bihyp
