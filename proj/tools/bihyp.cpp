// Command-line front end: build dual graphs of special fibres from chromatic
// cluster pictures or polynomial data, classify clusters, compute the
// Frobenius action, and run the consistency checks.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "bihyp/json_io.hpp"
#include "bihyp/verify.hpp"

namespace {

using namespace bihyp;

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InputOpts {
    std::string picture_text;
    std::string picture_json_path;
    std::string polynomials_path;
    long long p_override = 0;
    std::string scale = "1";
};

void add_input_flags(CLI::App* cmd, InputOpts& in, bool with_scale = true) {
    cmd->add_option("--picture", in.picture_text, "picture in cluster notation");
    cmd->add_option("--picture-json", in.picture_json_path, "picture as a JSON file");
    cmd->add_option("--polynomials", in.polynomials_path, "polynomial input JSON file");
    cmd->add_option("--p", in.p_override, "prime override for polynomial mode");
    if (with_scale) cmd->add_option("--scale", in.scale, "multiply all depths by this rational");
}

Json load_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw domain_error("cannot read file: " + path);
    Json j;
    f >> j;
    return j;
}

// Returns the picture plus the arithmetic context when polynomial mode was used.
std::pair<Picture, std::optional<ArithContext>> load_input(const InputOpts& in) {
    int sources = !in.picture_text.empty();
    sources += !in.picture_json_path.empty();
    sources += !in.polynomials_path.empty();
    if (sources != 1)
        throw usage_error("exactly one of --picture, --picture-json, --polynomials is required");
    std::optional<Picture> pic;
    std::optional<ArithContext> ctx;
    if (!in.picture_text.empty()) {
        pic = parse_picture(in.picture_text);
    } else if (!in.picture_json_path.empty()) {
        pic = picture_from_json(load_json(in.picture_json_path));
    } else {
        PolynomialInput pin =
            polynomial_input_from_json(load_json(in.polynomials_path), in.p_override);
        ArithResult r = build_picture_from_polynomials(pin);
        pic = std::move(r.picture);
        ctx = std::move(r.context);
    }
    Rat e = parse_rat(in.scale);
    if (e != 1) {
        if (ctx) throw domain_error("--scale applies to picture mode only");
        pic = scale_depths(*pic, e);
    }
    return {std::move(*pic), std::move(ctx)};
}

int run(int argc, char** argv) {
    CLI::App app{"dual graphs of semistable bihyperelliptic curves from chromatic cluster "
                 "pictures"};
    app.require_subcommand(1);
    std::string format = "text";

    InputOpts build_in;
    auto* cmd_build = app.add_subcommand("build", "build the dual graph of the special fibre");
    add_input_flags(cmd_build, build_in);
    cmd_build->add_option("--format", format, "text, json or dot");

    InputOpts classify_in;
    auto* cmd_classify = app.add_subcommand("classify", "per-cluster color and predicate table");
    add_input_flags(cmd_classify, classify_in);
    cmd_classify->add_option("--format", format, "text or json");

    InputOpts frob_in;
    std::string eps_path, perm_path;
    auto* cmd_frob = app.add_subcommand("frobenius", "Frobenius action on the dual graph");
    add_input_flags(cmd_frob, frob_in, false);
    cmd_frob->add_option("--eps", eps_path, "epsilon table JSON (picture mode)");
    cmd_frob->add_option("--perm", perm_path, "cluster permutation JSON (picture mode)");
    cmd_frob->add_option("--format", format, "text or json");

    InputOpts check_in;
    auto* cmd_check = app.add_subcommand("check", "run construction checks and diagnostics");
    add_input_flags(cmd_check, check_in);
    cmd_check->add_option("--format", format, "text or json");

    InputOpts render_in;
    auto* cmd_render = app.add_subcommand("render", "emit the dual graph as DOT");
    add_input_flags(cmd_render, render_in);

    bool list_examples = false;
    std::string example_name;
    auto* cmd_examples = app.add_subcommand("examples", "bundled worked examples");
    cmd_examples->add_flag("--list", list_examples, "list fixture names");
    cmd_examples->add_option("name", example_name, "print one fixture's input");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage problems exit with 2
    }

    if (cmd_build->parsed()) {
        auto [pic, ctx] = load_input(build_in);
        DualGraph g = build_dual_graph(pic);
        if (format == "json")
            std::cout << graph_to_json(g).dump(2) << "\n";
        else if (format == "dot")
            std::cout << g.to_dot();
        else
            std::cout << g.to_text();
        return 0;
    }
    if (cmd_classify->parsed()) {
        auto [pic, ctx] = load_input(classify_in);
        Classification cls(pic);
        if (format == "json")
            std::cout << classification_to_json(cls).dump(2) << "\n";
        else
            std::cout << classification_table(cls);
        return 0;
    }
    if (cmd_frob->parsed()) {
        auto [pic, ctx] = load_input(frob_in);
        Classification cls(pic);
        DualGraph g = build_dual_graph(pic, cls);
        FrobeniusAction action;
        if (ctx) {
            action = action_from_context(pic, cls, *ctx, g);
        } else {
            if (eps_path.empty())
                throw domain_error("picture mode needs --eps (the picture alone does not "
                                   "determine the epsilon values)");
            action.eps = eps_table_from_json(load_json(eps_path), pic);
            Json perm = perm_path.empty() ? Json(nullptr) : load_json(perm_path);
            action.cluster_perm = cluster_perm_from_json(perm, pic);
        }
        GraphAutomorphism a = act(g, cls, action);
        if (format == "json")
            std::cout << automorphism_to_json(g, a).dump(2) << "\n";
        else
            std::cout << automorphism_text(g, a);
        return 0;
    }
    if (cmd_check->parsed()) {
        auto [pic, ctx] = load_input(check_in);
        Report rep = check_graph(pic, false);
        if (format == "json") {
            Json items = Json::array();
            for (const auto& c : rep.items)
                items.push_back({{"name", c.name}, {"pass", c.pass}, {"details", c.details}});
            std::cout << Json{{"checks", items}, {"all_pass", rep.all_pass()}}.dump(2) << "\n";
        } else {
            std::cout << rep.text();
        }
        return rep.all_pass() ? 0 : 1;
    }
    if (cmd_render->parsed()) {
        auto [pic, ctx] = load_input(render_in);
        std::cout << build_dual_graph(pic).to_dot();
        return 0;
    }
    if (cmd_examples->parsed()) {
        if (!example_name.empty()) {
            const Fixture& f = fixture(example_name);
            std::cout << "picture: " << f.picture_text << "\n";
            if (!f.polynomials_json.empty())
                std::cout << "polynomials: " << Json::parse(f.polynomials_json).dump(2) << "\n";
            return 0;
        }
        for (const auto& f : fixtures()) std::cout << f.name << "\n";
        return 0;
    }
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const bihyp::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
