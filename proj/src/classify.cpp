#include "bihyp/classify.hpp"

#include <sstream>

namespace bihyp {

const char* color_name(ClusterColor c) {
    switch (c) {
    case ClusterColor::red: return "red";
    case ClusterColor::blue: return "blue";
    case ClusterColor::purple: return "purple";
    default: return "black";
    }
}

const char* chromaticity_name(Chromaticity c) {
    switch (c) {
    case Chromaticity::polychromatic: return "polychromatic";
    case Chromaticity::mono_red: return "mono_red";
    case Chromaticity::mono_blue: return "mono_blue";
    default: return "none";
    }
}

Classification::Classification(const Picture& pic, int deg1, int deg2) : pic_(&pic) {
    deg1_ = deg1 < 0 ? pic.red_leaves() : deg1;
    deg2_ = deg2 < 0 ? pic.blue_leaves() : deg2;
    int n = pic.total_leaves();
    two_g_h_ = 2 * ((n - 1) / 2);

    auto count = static_cast<std::size_t>(pic.node_count());
    info_.assign(count, {});

    // Colors bottom-up: ids are preorder, so children have larger ids.
    for (int id = static_cast<int>(count) - 1; id >= 0; --id) {
        const Cluster& c = pic.cluster(id);
        ClusterInfo& in = info_[static_cast<std::size_t>(id)];
        if (c.is_leaf()) {
            in.color = *c.leaf_color == LeafColor::red ? ClusterColor::red : ClusterColor::blue;
            continue;
        }
        // A purple child counts as both a red and a blue child.
        int reds = 0, blues = 0;
        for (int ch : c.children) {
            ClusterColor cc = info_[static_cast<std::size_t>(ch)].color;
            if (cc == ClusterColor::red || cc == ClusterColor::purple) ++reds;
            if (cc == ClusterColor::blue || cc == ClusterColor::purple) ++blues;
        }
        bool odd_red = reds % 2 == 1, odd_blue = blues % 2 == 1;
        in.color = odd_red ? (odd_blue ? ClusterColor::purple : ClusterColor::red)
                           : (odd_blue ? ClusterColor::blue : ClusterColor::black);
    }

    for (int id = 0; id < static_cast<int>(count); ++id) {
        const Cluster& c = pic.cluster(id);
        ClusterInfo& in = info_[static_cast<std::size_t>(id)];
        in.twin = c.size == 2;
        if (c.is_leaf()) continue;

        bool ubereven = true;
        bool has_purple = false, has_red = false, has_blue = false;
        int odd_children = 0, chrom = 0;
        for (int ch : c.children) {
            const Cluster& cc = pic.cluster(ch);
            if (cc.size % 2 == 1) {
                ubereven = false;
                ++odd_children;
            }
            switch (info_[static_cast<std::size_t>(ch)].color) {
            case ClusterColor::purple: has_purple = true; ++chrom; break;
            case ClusterColor::red: has_red = true; ++chrom; break;
            case ClusterColor::blue: has_blue = true; ++chrom; break;
            default: break;
            }
        }
        in.ubereven = ubereven;
        in.chromatic_children = chrom;
        if (has_purple || (has_red && has_blue))
            in.chromaticity = Chromaticity::polychromatic;
        else if (has_red)
            in.chromaticity = Chromaticity::mono_red;
        else if (has_blue)
            in.chromaticity = Chromaticity::mono_blue;
        else
            in.chromaticity = Chromaticity::none;

        in.genus = odd_children == 0 ? 0 : (odd_children - 1) / 2;

        // Cotwin: a child of size 2g(C_h) whose complement in s is not a
        // twin, except when s is purple and the child black. The complement
        // is a twin exactly when s has two children, the other being a twin.
        if (two_g_h_ >= 2) {
            for (int ch : c.children) {
                if (pic.cluster(ch).size != two_g_h_) continue;
                bool complement_twin =
                    c.children.size() == 2 &&
                    pic.cluster(ch == c.children[0] ? c.children[1] : c.children[0]).size == 2;
                bool excluded = in.color == ClusterColor::purple &&
                                info_[static_cast<std::size_t>(ch)].color == ClusterColor::black;
                if (!complement_twin && !excluded) in.cotwin = true;
            }
        }
    }

    // Chromatic principality.
    for (int id = 0; id < static_cast<int>(count); ++id) {
        const Cluster& c = pic.cluster(id);
        ClusterInfo& in = info_[static_cast<std::size_t>(id)];
        if (c.size < 3) continue;
        in.principal = true;
        if (id != pic.root()) continue;
        if (c.children.size() == 2) {
            ClusterColor a = info_[static_cast<std::size_t>(c.children[0])].color;
            ClusterColor b = info_[static_cast<std::size_t>(c.children[1])].color;
            if (a == b) in.principal = false;
        }
        if (in.principal && two_g_h_ >= 2) {
            int match = -1, matches = 0;
            for (int ch : c.children)
                if (pic.cluster(ch).size == two_g_h_) {
                    match = ch;
                    ++matches;
                }
            if (matches == 1) {
                ClusterColor cc = info_[static_cast<std::size_t>(match)].color;
                // A purple top with a black child of this size stays principal.
                if (cc == ClusterColor::purple ||
                    (in.color == ClusterColor::black && cc == ClusterColor::black))
                    in.principal = false;
            }
        }
    }

    // s*: climb while the parent is ubereven.
    for (int id = 0; id < static_cast<int>(count); ++id) {
        int t = id;
        while (pic.cluster(t).parent >= 0 &&
               info_[static_cast<std::size_t>(pic.cluster(t).parent)].ubereven)
            t = pic.cluster(t).parent;
        info_[static_cast<std::size_t>(id)].star = t;
    }

    // Chromatic genus.
    for (int id = 0; id < static_cast<int>(count); ++id) {
        const Cluster& c = pic.cluster(id);
        ClusterInfo& in = info_[static_cast<std::size_t>(id)];
        if (c.is_leaf()) continue;
        int k = in.chromatic_children;
        switch (in.chromaticity) {
        case Chromaticity::none:
            in.chromatic_genus = 0;
            break;
        case Chromaticity::mono_red:
        case Chromaticity::mono_blue:
            in.chromatic_genus = (k - 1) / 2;
            break;
        case Chromaticity::polychromatic: {
            if (in.ubereven) {
                // Chromatic children of an ubereven cluster are purple; its
                // paired components have the genus counting them as the odd
                // children of the one-colored pictures.
                in.chromatic_genus = (k - 1) / 2;
                break;
            }
            // Offset 3 exactly when the boundary direction of the disc is
            // unbranched in both double covers: an even number of red and of
            // blue roots inside (for the top cluster, even degrees).
            bool unbranched = id == pic.root()
                                  ? (deg1_ % 2 == 0 && deg2_ % 2 == 0)
                                  : in.color == ClusterColor::black;
            in.chromatic_genus = k - (unbranched ? 3 : 2);
            if (in.chromatic_genus < 0)
                throw domain_error("chromatic genus would be negative at cluster " +
                                   std::to_string(id) + "; malformed input");
            break;
        }
        }
    }
}

bool Classification::any_principal() const {
    for (const auto& in : info_)
        if (in.principal) return true;
    return false;
}

std::vector<int> Classification::principal_clusters() const {
    std::vector<int> out;
    for (int id = 0; id < static_cast<int>(info_.size()); ++id)
        if (info_[static_cast<std::size_t>(id)].principal) out.push_back(id);
    return out;
}

std::array<int, 3> parity_profile(const Picture& pic, int id) {
    const Cluster& c = pic.cluster(id);
    return {c.red_leaves % 2, c.blue_leaves % 2, c.size % 2};
}

int sigma(const Classification& cls, int s, int s2) {
    Chromaticity a = cls.info(s).chromaticity;
    Chromaticity b = cls.info(s2).chromaticity;
    if ((a == Chromaticity::mono_red && b == Chromaticity::mono_blue) ||
        (a == Chromaticity::mono_blue && b == Chromaticity::mono_red))
        return -1;
    if (cls.info(s).color == ClusterColor::black && cls.info(s).ubereven &&
        cls.info(s2).color == ClusterColor::black && b == Chromaticity::mono_blue)
        return -1;
    return 1;
}

bool ubereven_in(const Picture& pic, int id, Pidx index) {
    const Cluster& c = pic.cluster(id);
    if (c.is_leaf()) return false;
    for (int ch : c.children)
        if (size_in(pic, ch, index) % 2 == 1) return false;
    return true;
}

int star_in(const Picture& pic, int id, Pidx index) {
    int t = id;
    while (pic.cluster(t).parent >= 0 && ubereven_in(pic, pic.cluster(t).parent, index))
        t = pic.cluster(t).parent;
    return t;
}

bool classical_principal_in(const Picture& pic, int id, Pidx index) {
    int sz = size_in(pic, id, index);
    if (sz < 3) return false;
    if (id != pic.root()) return true;
    const Cluster& c = pic.cluster(id);
    int nonempty = 0;
    for (int ch : c.children)
        if (size_in(pic, ch, index) > 0) ++nonempty;
    if (nonempty <= 1) return false;              // chain or empty top
    if (nonempty == 2 && sz % 2 == 0) return false; // even union of two clusters
    int g = (sz - 1) / 2;
    if (g >= 2) {
        int matches = 0;
        for (int ch : c.children)
            if (size_in(pic, ch, index) == 2 * g) ++matches;
        if (matches == 1) return false;
    }
    return true;
}

std::string classification_table(const Classification& cls) {
    const Picture& pic = cls.picture();
    std::ostringstream os;
    os << "cluster  size  color   parity(1,2,h)  uber  twin  cotwin  princ  chrom          g   g_chi\n";
    for (int id = 0; id < pic.node_count(); ++id) {
        const ClusterInfo& in = cls.info(id);
        auto par = parity_profile(pic, id);
        auto flag = [](bool b) { return b ? "yes" : "-"; };
        char buf[160];
        std::snprintf(buf, sizeof buf, "c%-7d %-5d %-7s %d,%d,%d          %-5s %-5s %-7s %-6s %-14s %-3d %d\n",
                      id, pic.cluster(id).size, color_name(in.color), par[0], par[1], par[2],
                      flag(in.ubereven), flag(in.twin), flag(in.cotwin), flag(in.principal),
                      chromaticity_name(in.chromaticity), in.genus, in.chromatic_genus);
        os << buf;
    }
    return os.str();
}

} // namespace bihyp
