#include "bihyp/verify.hpp"

#include <algorithm>
#include <sstream>

namespace bihyp {

namespace {

std::vector<Fixture> make_fixtures() {
    using V = Fixture::V;
    using E = Fixture::E;
    const auto plain = VertexTag::plain;
    const auto plus = VertexTag::plus;
    const auto minus = VertexTag::minus;
    std::vector<Fixture> out;

    {
        // one purple twin of depth 2 under a polychromatic top
        Fixture f;
        f.name = "purple-twin";
        f.picture_text = "(0 (2 r b) r r b b)";
        f.polynomials_json = R"({"p": 7,
            "f1": {"lead": 1, "factors": [{"z": "0", "c": "p^2", "n": 1}, {"z": "0", "c": "1", "n": 2}]},
            "f2": {"lead": 1, "factors": [{"z": "0", "c": "-1*p^2", "n": 1}, {"z": "0", "c": "2", "n": 2}]}})";
        f.vertices = {V{0, plain, 3}};
        f.edges = {E{0, plain, 0, plain, 2, EdgeKind::loop}};
        f.betti = 1;
        f.genus_total = 4;
        out.push_back(f);
    }
    {
        // one black twin of depth 3; two loops of twice the depth
        Fixture f;
        f.name = "black-twin";
        f.picture_text = "(0 (3 r r) r b b b)";
        f.polynomials_json = R"({"p": 7,
            "f1": {"lead": 1, "factors": [{"z": "0", "c": "p^6", "n": 2}, {"z": "0", "c": "1", "n": 1}]},
            "f2": {"lead": 1, "factors": [{"z": "0", "c": "2", "n": 3}]}})";
        f.vertices = {V{0, plain, 2}};
        f.edges = {E{0, plain, 0, plain, 6, EdgeKind::loop}, E{0, plain, 0, plain, 6, EdgeKind::loop}};
        f.betti = 2;
        f.genus_total = 4;
        out.push_back(f);
    }
    {
        // three children under the top: a polychromatic cluster, a black
        // mono-red cluster, a blue cluster
        Fixture f;
        f.name = "three-children";
        f.picture_text = "(0 (2 r r r b b b) (3 r r r r) (6 b b b))";
        // canonical ids: c0 top, c1 six-leaf cluster, c8 four reds, c13 three blues
        f.vertices = {V{0, plain, 0}, V{1, plain, 4},  V{8, plus, 1},
                      V{8, minus, 1}, V{13, plus, 1},  V{13, minus, 1}};
        f.edges = {E{0, plain, 1, plain, 1, EdgeKind::chain},
                   E{0, plain, 1, plain, 1, EdgeKind::chain},
                   E{0, plain, 8, plus, 3, EdgeKind::chain},
                   E{0, plain, 8, plus, 3, EdgeKind::chain},
                   E{0, plain, 8, minus, 3, EdgeKind::chain},
                   E{0, plain, 8, minus, 3, EdgeKind::chain},
                   E{0, plain, 13, plus, 3, EdgeKind::chain},
                   E{0, plain, 13, minus, 3, EdgeKind::chain}};
        f.betti = 3;
        f.genus_total = 11;
        out.push_back(f);
    }
    {
        // a black cluster nested inside a red one nested in the top
        Fixture f;
        f.name = "nested";
        f.picture_text = "(0 (4 (1 b b b b) r r r) r r r b b b)";
        // canonical ids: c0 top, c1 the seven-leaf cluster, c2 the four blues
        f.vertices = {V{0, plain, 5}, V{1, plus, 1}, V{1, minus, 1}, V{2, plus, 1},
                      V{2, minus, 1}};
        f.edges = {E{0, plain, 1, plus, 2, EdgeKind::chain},
                   E{0, plain, 1, minus, 2, EdgeKind::chain},
                   E{1, plus, 2, plus, 1, EdgeKind::chain},
                   E{1, plus, 2, minus, 1, EdgeKind::chain},
                   E{1, minus, 2, plus, 1, EdgeKind::chain},
                   E{1, minus, 2, minus, 1, EdgeKind::chain}};
        f.betti = 2;
        f.genus_total = 11;
        out.push_back(f);
    }
    {
        // totally degenerate fibre; the ubereven cluster holds two black
        // twins, the top holds it and a purple twin
        Fixture f;
        f.name = "k33";
        f.picture_text = "(0 (2 (5 r r) (4 b b)) (3 r b))";
        // canonical ids: c0 top, c1 the four-leaf cluster, c2 blue twin,
        // c5 red twin, c8 purple twin
        const auto pp = VertexTag::pp, pm = VertexTag::pm, mp = VertexTag::mp, mm = VertexTag::mm;
        f.vertices = {V{0, plus, 0}, V{0, minus, 0}, V{1, pp, 0}, V{1, pm, 0}, V{1, mp, 0},
                      V{1, mm, 0}};
        f.edges = {E{0, plus, 0, minus, 3, EdgeKind::loop},
                   E{0, plus, 1, pp, 2, EdgeKind::chain},
                   E{0, minus, 1, pm, 2, EdgeKind::chain},
                   E{0, minus, 1, mp, 2, EdgeKind::chain},
                   E{0, plus, 1, mm, 2, EdgeKind::chain},
                   E{1, pp, 1, pm, 10, EdgeKind::loop},
                   E{1, mm, 1, mp, 10, EdgeKind::loop},
                   E{1, pp, 1, mp, 8, EdgeKind::loop},
                   E{1, mm, 1, pm, 8, EdgeKind::loop}};
        f.betti = 4;
        f.genus_total = 4;
        out.push_back(f);
    }
    return out;
}

} // namespace

const std::vector<Fixture>& fixtures() {
    static const std::vector<Fixture> fs = make_fixtures();
    return fs;
}

const Fixture& fixture(const std::string& name) {
    for (const auto& f : fixtures())
        if (f.name == name) return f;
    throw domain_error("unknown fixture: " + name);
}

DualGraph expected_graph(const Fixture& f, const Picture& pic) {
    DualGraph g;
    g.pic = &pic;
    for (const auto& v : f.vertices) g.vertices.push_back({v.cluster, v.tag, v.genus});
    for (const auto& e : f.edges) {
        Edge ed;
        ed.name = "expected";
        ed.from = g.vertex_id(e.c_from, e.t_from);
        ed.to = g.vertex_id(e.c_to, e.t_to);
        if (ed.from < 0 || ed.to < 0) throw domain_error("fixture edge references a missing vertex");
        ed.length = e.length;
        ed.kind = e.kind;
        g.edges.push_back(ed);
    }
    return g;
}

bool match_fixture(const std::string& name, std::string* details) {
    const Fixture& f = fixture(name);
    Picture pic = parse_picture(f.picture_text);
    DualGraph built = build_dual_graph(pic);
    DualGraph expect = expected_graph(f, pic);
    std::string a = built.canonical_string(), b = expect.canonical_string();
    bool pass = a == b && built.betti() == f.betti;
    if (name == "k33") pass = pass && is_k33(built);
    if (details) {
        *details = pass ? "matched" : "built " + a + " vs expected " + b;
    }
    return pass;
}

bool Report::all_pass() const {
    return std::all_of(items.begin(), items.end(), [](const CheckItem& c) { return c.pass; });
}

std::string Report::text() const {
    std::ostringstream os;
    for (const auto& c : items)
        os << (c.pass ? "pass" : "FAIL") << "  " << c.name
           << (c.details.empty() ? "" : ": " + c.details) << "\n";
    return os.str();
}

int expected_balance(const Picture& pic) {
    int n1 = pic.red_leaves(), n2 = pic.blue_leaves();
    return (n1 - 1) / 2 + (n2 - 1) / 2 + (n1 + n2 - 1) / 2;
}

Report check_graph(const Picture& pic, bool balance_hard) {
    Report rep;
    Classification cls(pic);
    DualGraph g;
    try {
        g = build_dual_graph(pic, cls);
    } catch (const domain_error& e) {
        rep.items.push_back({"build", false, e.what()});
        return rep;
    }
    rep.items.push_back({"build", true, std::to_string(g.vertices.size()) + " vertices, " +
                                            std::to_string(g.edges.size()) + " edges"});
    rep.items.push_back({"connected", g.connected(), ""});

    // vertex count per principal cluster
    bool vc = true;
    std::string vc_detail;
    for (int id : cls.principal_clusters()) {
        int expect = vertex_class(cls, id) == VClass::single ? 1
                     : vertex_class(cls, id) == VClass::pair ? 2
                                                             : 4;
        int have = 0;
        for (const Vertex& v : g.vertices)
            if (v.cluster == id) ++have;
        if (have != expect) {
            vc = false;
            vc_detail = "cluster c" + std::to_string(id);
        }
    }
    rep.items.push_back({"vertex-count law", vc, vc_detail});

    // chain multiplicity per principal child of a principal parent
    bool cm = true;
    std::string cm_detail;
    for (int id : cls.principal_clusters()) {
        if (id == pic.root()) continue;
        int parent = pic.cluster(id).parent;
        if (!cls.info(parent).principal) continue;
        int chains = 0;
        for (const Edge& e : g.edges)
            if ((e.origin == EdgeOrigin::chain_chromatic || e.origin == EdgeOrigin::chain_black) &&
                e.key_cluster == id)
                ++chains;
        int expect = cls.info(id).color != ClusterColor::black ? 2 : 4;
        if (chains != expect) {
            cm = false;
            cm_detail = "cluster c" + std::to_string(id);
        }
    }
    rep.items.push_back({"chain-multiplicity law", cm, cm_detail});

    int balance = g.genus_sum() + g.betti();
    int expect_bal = expected_balance(pic);
    bool bal_ok = balance == expect_bal;
    std::string bal_detail = std::to_string(g.genus_sum()) + " + " + std::to_string(g.betti()) +
                             " vs expected " + std::to_string(expect_bal);
    if (balance_hard)
        rep.items.push_back({"genus balance", bal_ok, bal_detail});
    else
        rep.items.push_back({"genus balance (diagnostic)", true,
                             bal_ok ? bal_detail : "MISMATCH " + bal_detail +
                                                       " (input may not be semistable-realizable)"});

    // scaling equivariance at e = 2
    try {
        DualGraph doubled = build_dual_graph(scale_depths(pic, 2), cls.deg1(), cls.deg2());
        for (Edge& e : doubled.edges) e.length /= 2;
        bool eq = doubled.canonical_string() == g.canonical_string();
        rep.items.push_back({"scaling equivariance (e=2)", eq, ""});
    } catch (const domain_error& e) {
        rep.items.push_back({"scaling equivariance (e=2)", false, e.what()});
    }
    return rep;
}

Picture random_picture(std::mt19937_64& rng, int max_leaves, int min_per_color) {
    auto rand_int = [&](int lo, int hi) {
        return lo + static_cast<int>(rng() % static_cast<unsigned long long>(hi - lo + 1));
    };
    for (;;) {
        int leaves = rand_int(std::max(2, 2 * min_per_color), max_leaves);
        std::vector<LeafColor> colors;
        std::function<Picture::Node(int)> gen = [&](int budget) {
            Picture::Node n;
            if (budget == 1) {
                n.color = rng() % 2 ? LeafColor::red : LeafColor::blue;
                colors.push_back(*n.color);
                return n;
            }
            n.rel_depth = rand_int(1, 4);
            int parts = rand_int(2, std::min(budget, 4));
            std::vector<int> sizes(static_cast<std::size_t>(parts), 1);
            for (int extra = budget - parts; extra > 0; --extra)
                sizes[static_cast<std::size_t>(rand_int(0, parts - 1))]++;
            for (int s : sizes) n.children.push_back(gen(s));
            return n;
        };
        Picture::Node root = gen(leaves);
        int reds = 0;
        for (LeafColor c : colors)
            if (c == LeafColor::red) ++reds;
        int blues = static_cast<int>(colors.size()) - reds;
        if (reds < min_per_color || blues < min_per_color) continue;
        return Picture(root, Rat(0));
    }
}

bool is_k33(const DualGraph& g) {
    if (g.vertices.size() != 6 || g.edges.size() != 9) return false;
    std::vector<std::pair<int, int>> simple;
    for (const Edge& e : g.edges) {
        if (e.from == e.to) return false;
        auto pr = std::minmax(e.from, e.to);
        simple.emplace_back(pr.first, pr.second);
    }
    std::sort(simple.begin(), simple.end());
    if (std::adjacent_find(simple.begin(), simple.end()) != simple.end()) return false;
    // 3-regular
    std::vector<int> deg(6, 0);
    for (auto [a, b] : simple) {
        deg[static_cast<std::size_t>(a)]++;
        deg[static_cast<std::size_t>(b)]++;
    }
    for (int d : deg)
        if (d != 3) return false;
    // bipartite 2-coloring
    std::vector<int> side(6, -1);
    side[0] = 0;
    std::vector<int> stack{0};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (auto [a, b] : simple) {
            int other = a == v ? b : (b == v ? a : -1);
            if (other < 0) continue;
            if (side[static_cast<std::size_t>(other)] < 0) {
                side[static_cast<std::size_t>(other)] = 1 - side[static_cast<std::size_t>(v)];
                stack.push_back(other);
            } else if (side[static_cast<std::size_t>(other)] == side[static_cast<std::size_t>(v)]) {
                return false;
            }
        }
    }
    int zeros = 0;
    for (int s : side) {
        if (s < 0) return false;
        if (s == 0) ++zeros;
    }
    // 3-regular bipartite with parts of size 3 and 9 edges is complete
    return zeros == 3;
}

} // namespace bihyp
