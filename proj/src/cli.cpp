#include "cadph/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>

#include <CLI11.hpp>

#include "cadph/diagram.hpp"
#include "cadph/io.hpp"
#include "cadph/oracle.hpp"
#include "cadph/random.hpp"
#include "cadph/verify.hpp"

namespace cadph {

using nlohmann::json;

namespace {

struct Common {
    std::string input;
    std::string field;
    std::string mode = "full";
    bool json = false;
    bool csv = false;
};

// Thrown to unwind with an exit code after the message has been written.
struct Exit {
    int code;
};

ComplexSpec load(const Common& c) {
    auto spec = load_document(c.input);
    if (!c.field.empty()) spec.field = FieldSpec::parse(c.field);
    return spec;
}

/// Validates, writes violations to err and exits 2 (3 for unknown faces).
void require_valid(const ComplexSpec& spec, std::ostream& err) {
    const auto violations = validate(spec);
    if (violations.empty()) return;
    bool unknown = false;
    for (const auto& v : violations) {
        err << v.message() << '\n';
        unknown = unknown || v.kind == Violation::Kind::unknown_face;
    }
    throw Exit{unknown ? exit_usage : exit_invalid};
}

template <class Fn>
void with_memory(const ComplexSpec& spec, Fn&& fn) {
    visit_field(spec.field, [&](const auto& f) {
        using Fld = std::decay_t<decltype(f)>;
        const auto k = FilteredComplex<Fld>::build(spec, f);
        const Memory<Fld> mem(k);
        fn(mem);
    });
}

int cmd_validate(const Common& c, std::ostream& out) {
    const auto spec = load(c);
    const auto violations = validate(spec);
    bool unknown = false;
    for (const auto& v : violations) unknown = unknown || v.kind == Violation::Kind::unknown_face;
    if (c.json) {
        json vs = json::array();
        for (const auto& v : violations) vs.push_back({{"kind", v.kind_name()}, {"cell", v.cell}, {"detail", v.detail}});
        out << json{{"format_version", kFormatVersion}, {"valid", violations.empty()}, {"violations", vs}}.dump(2)
            << '\n';
    } else if (violations.empty()) {
        out << "valid: " << spec.cells.size() << " cells over " << spec.field.to_string() << '\n';
    } else {
        for (const auto& v : violations) out << v.message() << '\n';
    }
    if (violations.empty()) return exit_ok;
    return unknown ? exit_usage : exit_invalid;
}

int cmd_diagram(const Common& c, std::optional<std::size_t> degree, bool all, const std::string& method,
                std::size_t jobs, std::ostream& out, std::ostream& err) {
    const auto spec = load(c);
    require_valid(spec, err);
    DiagramOptions opt;
    opt.mode = parse_blanket_mode(c.mode);
    opt.all = all;
    opt.jobs = jobs;
    if (method == "lifespan") {
        opt.method = RankMethod::lifespan;
    } else if (method != "derivative") {
        throw ParseError("unknown method '" + method + "'");
    }
    with_memory(spec, [&](const auto& mem) {
        const auto entries = degree ? compute_diagram(mem, *degree, opt) : compute_full_diagram(mem, opt);
        if (c.csv) {
            out << diagram_to_csv(spec.poset, entries);
        } else {
            out << diagram_to_json(spec.poset, entries).dump(2) << '\n';
        }
    });
    return exit_ok;
}

int cmd_barcode(const Common& c, const std::string& svg, std::size_t jobs, std::ostream& out, std::ostream& err) {
    const auto spec = load(c);
    require_valid(spec, err);
    if (!spec.poset.is_chain()) {
        err << "barcode needs a chain poset; use the diagram command for multiparameter input\n";
        return exit_usage;
    }
    DiagramOptions opt;
    opt.mode = parse_blanket_mode(c.mode);
    opt.jobs = jobs;
    with_memory(spec, [&](const auto& mem) {
        const auto bars = bars_from_diagram(spec.poset, compute_full_diagram(mem, opt));
        if (c.json) {
            out << bars_to_json(spec.poset, bars).dump(2) << '\n';
        } else if (c.csv) {
            out << bars_to_csv(spec.poset, bars);
        } else {
            for (const auto& b : bars) out << render_bar(spec.poset, b) << '\n';
        }
        if (!svg.empty()) {
            std::ofstream f(svg);
            if (!f) throw ParseError("cannot write " + svg);
            f << bars_to_svg(spec.poset, bars);
        }
    });
    return exit_ok;
}

int cmd_verify(const Common& c, const VerifyOptions& base, std::ostream& out, std::ostream& err) {
    const auto spec = load(c);
    require_valid(spec, err);
    auto opt = base;
    opt.mode = parse_blanket_mode(c.mode);
    int code = exit_ok;
    with_memory(spec, [&](const auto& mem) {
        const auto report = verify(mem, opt);
        if (c.json) {
            out << report.to_json().dump(2) << '\n';
        } else {
            out << report.to_text();
        }
        code = report.ok() ? exit_ok : exit_counterexamples;
    });
    return code;
}

int cmd_blankets(const Common& c, const std::string& birth, const std::string& death, std::size_t degree,
                 std::ostream& out, std::ostream& err) {
    const auto spec = load(c);
    const auto& p = spec.poset;
    const PairOpen pair{parse_open(p, birth), parse_open(p, death)};
    if (!pair.valid()) {
        err << "invalid pair: death " << describe_open(p, pair.death) << " is not contained in birth "
            << describe_open(p, pair.birth) << '\n';
        return exit_invalid;
    }
    const auto mode = parse_blanket_mode(c.mode);
    const auto result = degree_blankets(p, pair, degree, mode);
    if (c.json) {
        auto open_json = [&](const UpSet& u, bool inf) {
            auto xs = min_elements(p, u);
            if (inf && xs.empty()) return json("inf");
            json a = json::array();
            for (auto x : make_entry(p, 0, {u, u}, 0).birth) a.push_back(element_to_json(p, x));
            return a;
        };
        json list = json::array();
        for (const auto& w : result) list.push_back({{"birth", open_json(w.birth, false)}, {"death", open_json(w.death, true)}});
        out << json{{"format_version", kFormatVersion},
                    {"pair", {{"birth", open_json(pair.birth, false)}, {"death", open_json(pair.death, true)}}},
                    {"degree", degree},
                    {"mode", to_string(mode)},
                    {"blankets", list}}
                   .dump(2)
            << '\n';
    } else {
        for (const auto& w : result) out << describe_pair(p, w) << '\n';
    }
    return exit_ok;
}

int cmd_generate(const RandomComplexOptions& opt, std::uint64_t seed, const std::string& output, std::ostream& out) {
    Rng rng(seed);
    const auto doc = document_to_json(random_complex(opt, rng)).dump(2) + "\n";
    if (output.empty()) {
        out << doc;
    } else {
        std::ofstream f(output);
        if (!f) throw ParseError("cannot write " + output);
        f << doc;
    }
    return exit_ok;
}

void add_common(CLI::App* sub, Common& c, bool formats) {
    sub->add_option("input", c.input, "Input document (JSON)")->required();
    sub->add_option("--field", c.field, "Override the document field: gf2, gf:p or rational");
    sub->add_option("--mode", c.mode, "Blanket mode: full or principal")->capture_default_str();
    auto* j = sub->add_flag("--json", c.json, "Emit JSON");
    if (formats) sub->add_flag("--csv", c.csv, "Emit CSV")->excludes(j);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Generalized persistence pair groups via change-action derivatives", "cadph"};
    app.require_subcommand(1);

    Common common;

    auto* validate_cmd = app.add_subcommand("validate", "Check a filtered complex for structural violations");
    validate_cmd->add_option("input", common.input, "Input document (JSON)")->required();
    validate_cmd->add_option("--field", common.field, "Override the document field");
    validate_cmd->add_flag("--json", common.json, "Emit JSON");

    std::optional<std::size_t> degree;
    bool all = false;
    std::string method = "derivative";
    std::size_t jobs = 1;
    auto* diagram_cmd = app.add_subcommand("diagram", "Pair-group multiplicities for every principal pair");
    add_common(diagram_cmd, common, true);
    diagram_cmd->add_option("--degree", degree, "Homological degree (default: every degree with cells)");
    diagram_cmd->add_flag("--all", all, "Keep zero-multiplicity pairs");
    diagram_cmd->add_option("--method", method, "derivative or lifespan")->capture_default_str();
    diagram_cmd->add_option("--jobs", jobs, "Worker threads")->capture_default_str();

    std::string svg;
    auto* barcode_cmd = app.add_subcommand("barcode", "Barcode of a one-parameter filtration");
    add_common(barcode_cmd, common, true);
    barcode_cmd->add_option("--svg", svg, "Also write an SVG drawing to this path");
    barcode_cmd->add_option("--jobs", jobs, "Worker threads")->capture_default_str();

    VerifyOptions vopt;
    auto* verify_cmd = app.add_subcommand("verify", "Check the derivative axioms and the pair-group identity");
    add_common(verify_cmd, common, false);
    verify_cmd->add_option("--samples", vopt.samples, "Samples per homological degree")->capture_default_str();
    verify_cmd->add_option("--seed", vopt.seed, "Random seed")->capture_default_str();
    verify_cmd->add_option("--max-shift", vopt.max_shift, "Largest sampled degree shift")->capture_default_str();
    verify_cmd->add_flag("--oracle", vopt.oracle, "Compare against column reduction (chain posets)");
    verify_cmd->add_option("--jobs", vopt.jobs, "Worker threads")->capture_default_str();

    std::string birth, death;
    std::size_t blanket_degree = 1;
    auto* blankets_cmd = app.add_subcommand("blankets", "List the degree-n blankets of a pair of opens");
    add_common(blankets_cmd, common, false);
    blankets_cmd->add_option("--birth", birth, "Birth open, e.g. \"{(1,1),(0,2)}\"")->required();
    blankets_cmd->add_option("--death", death, "Death open; \"inf\" or \"{}\" for the empty open")->required();
    blankets_cmd->add_option("--degree", blanket_degree, "Blanket degree n")->capture_default_str();

    RandomComplexOptions gopt;
    std::uint64_t gseed = 42;
    std::string gfield = "gf2";
    std::string output;
    auto* generate_cmd = app.add_subcommand("generate", "Write a random filtered complex on a grid");
    generate_cmd->add_option("--shape", gopt.shape, "Grid shape, e.g. 3,3")->delimiter(',')->capture_default_str();
    generate_cmd->add_option("--cells", gopt.max_cells, "Maximum number of cells")->capture_default_str();
    generate_cmd->add_option("--vertices", gopt.max_vertices, "Maximum number of vertices")->capture_default_str();
    generate_cmd->add_option("--dim", gopt.max_dim, "Maximum simplex dimension")->capture_default_str();
    generate_cmd->add_option("--births", gopt.max_births, "Maximum births per cell")->capture_default_str();
    generate_cmd->add_option("--seed", gseed, "Random seed")->capture_default_str();
    generate_cmd->add_option("--field", gfield, "Field recorded in the document")->capture_default_str();
    generate_cmd->add_option("-o,--output", output, "Output path (default stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return exit_ok;
        }
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    }

    try {
        if (*validate_cmd) return cmd_validate(common, out);
        if (*diagram_cmd) return cmd_diagram(common, degree, all, method, jobs, out, err);
        if (*barcode_cmd) return cmd_barcode(common, svg, jobs, out, err);
        if (*verify_cmd) return cmd_verify(common, vopt, out, err);
        if (*blankets_cmd) return cmd_blankets(common, birth, death, blanket_degree, out, err);
        if (*generate_cmd) {
            gopt.field = FieldSpec::parse(gfield);
            return cmd_generate(gopt, gseed, output, out);
        }
    } catch (const Exit& e) {
        return e.code;
    } catch (const ValidationError& e) {
        err << e.what() << '\n';
        return exit_invalid;
    } catch (const InvalidPair& e) {
        err << e.what() << '\n';
        return exit_invalid;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}

}  // namespace cadph
