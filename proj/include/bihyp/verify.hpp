#pragma once

#include <random>
#include <string>
#include <vector>

#include "bihyp/model.hpp"

namespace bihyp {

// A bundled worked example: input picture (and polynomial data where the
// construction admits it), the expected dual graph, and the expected
// Frobenius behavior as Legendre-symbol arguments parameterized by p.
struct Fixture {
    std::string name;
    std::string picture_text;
    std::string polynomials_json; // empty when no polynomial form ships

    // expected graph, encoded against canonical cluster ids of picture_text
    struct V {
        int cluster;
        VertexTag tag;
        int genus;
    };
    struct E {
        int c_from;
        VertexTag t_from;
        int c_to;
        VertexTag t_to;
        Rat length;
        EdgeKind kind;
    };
    std::vector<V> vertices;
    std::vector<E> edges;
    int betti = 0;
    int genus_total = 0; // expected genus sum + betti (the balance value)
};

const std::vector<Fixture>& fixtures();
const Fixture& fixture(const std::string& name);

DualGraph expected_graph(const Fixture& f, const Picture& pic);

// Builds from the fixture input and compares against the expected graph up
// to the gauge group.
bool match_fixture(const std::string& name, std::string* details = nullptr);

struct CheckItem {
    std::string name;
    bool pass = false;
    std::string details;
};
struct Report {
    std::vector<CheckItem> items;
    bool all_pass() const;
    std::string text() const;
};

// Connectivity, vertex-count law, chain multiplicity, genus balance,
// scaling equivariance. Genus balance is a hard failure only when
// balance_hard is set (bundled fixtures); otherwise it reports as a
// diagnostic that cannot fail the report.
Report check_graph(const Picture& pic, bool balance_hard);

int expected_balance(const Picture& pic);

// Random colored trees for the property suites, <= max_leaves leaves, at
// least one leaf of each color (min_per_color >= 1).
Picture random_picture(std::mt19937_64& rng, int max_leaves, int min_per_color);

// The underlying simple graph is complete bipartite K_{3,3}.
bool is_k33(const DualGraph& g);

} // namespace bihyp
