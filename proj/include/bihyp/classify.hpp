#pragma once

#include <array>
#include <string>
#include <vector>

#include "bihyp/picture.hpp"

namespace bihyp {

enum class ClusterColor { red, blue, purple, black };
enum class Chromaticity { polychromatic, mono_red, mono_blue, none };

const char* color_name(ClusterColor c);
const char* chromaticity_name(Chromaticity c);

struct ClusterInfo {
    ClusterColor color = ClusterColor::black;
    bool ubereven = false;
    bool twin = false;
    bool cotwin = false;
    bool principal = false;
    Chromaticity chromaticity = Chromaticity::none;
    int chromatic_children = 0; // |s_chi|
    int genus = 0;              // from the count of odd children
    int chromatic_genus = 0;
    int star = -1;              // smallest cluster containing s whose parent is not ubereven
};

// Per-cluster classification cache. Computed once per picture, read-only
// afterwards. deg1/deg2 default to the red/blue leaf counts.
class Classification {
public:
    explicit Classification(const Picture& pic, int deg1 = -1, int deg2 = -1);

    const Picture& picture() const { return *pic_; }
    const ClusterInfo& info(int id) const { return info_.at(static_cast<std::size_t>(id)); }
    int deg1() const { return deg1_; }
    int deg2() const { return deg2_; }
    // 2 g(C_h) derived from the total leaf count n via 2g+1 = n or 2g+2 = n.
    int two_g_h() const { return two_g_h_; }

    bool any_principal() const;
    std::vector<int> principal_clusters() const;

private:
    const Picture* pic_;
    std::vector<ClusterInfo> info_;
    int deg1_, deg2_;
    int two_g_h_;
};

// Parities of |s| in the red, blue and composite pictures; 1 = odd. Computed
// from sizes, independently of the color rules (their agreement is the color
// parity lemma and is asserted in tests).
std::array<int, 3> parity_profile(const Picture& pic, int id);

// sigma(s, s2) in {+1, -1}: -1 iff s and s2 have monochromatic children of
// opposite colors, or s is black ubereven and s2 black with monochromatic
// blue children.
int sigma(const Classification& cls, int s, int s2);

// All children of s are even inside the derived picture (empty children
// count as even).
bool ubereven_in(const Picture& pic, int id, Pidx index);

// Smallest cluster containing id whose parent fails ubereven_in; the root if
// the walk exhausts the tree.
int star_in(const Picture& pic, int id, Pidx index);

// Principality of a node viewed inside one derived picture, with the
// standard top-cluster exceptions. This is the comparison side of the
// cross-check lemma (chromatically principal iff principal in at least one
// of the three pictures).
bool classical_principal_in(const Picture& pic, int id, Pidx index);

// Text table used by the `classify` CLI subcommand.
std::string classification_table(const Classification& cls);

} // namespace bihyp
