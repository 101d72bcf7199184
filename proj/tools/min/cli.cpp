#include "cli.hpp"

#include "minforge/generators.hpp"
#include "minforge/io.hpp"
#include "minforge/json.hpp"
#include "minforge/paths.hpp"
#include "minforge/render.hpp"
#include "minforge/service.hpp"
#include "minforge/sim.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>

namespace minforge::cli {

namespace {

struct Failure {
    int code;
    std::string message;
};

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Failure{exit_io, "cannot open " + path + " for writing"};
    out << text;
    if (!out.flush())
        throw Failure{exit_io, "failed to write " + path};
}

CircuitDocument load(const std::string& path, bool check_structure = true)
{
    return load_circuit_file(path, LoadOptions{.check_structure = check_structure});
}

// Prints the validation outcome; error messages go to stderr verbatim.
bool report_validation(const ValidationReport& report, std::ostream& err)
{
    for (const auto* flag : report.errors())
        err << flag->message << '\n';
    for (const auto* flag : report.warnings())
        err << "warning: " << flag->message << '\n';
    return report.ok();
}

std::string join(const std::vector<std::size_t>& xs, char sep)
{
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i)
            out += sep;
        out += std::to_string(xs[i]);
    }
    return out;
}

struct Options {
    std::string file;
    std::string output;

    std::string family;
    std::size_t size = 8;
    std::size_t copies = 2;

    std::string path;
    std::string faults;
    std::string format = "text";

    std::size_t src = 0;
    std::size_t dst = 0;
    std::size_t k = 2;

    int ticks = default_duration_ticks;
    std::string parity = "drop-first";
    std::string droplog;
    std::string report;
    std::string scenario;

    std::string state = "green";
    int frame = -1;
    bool bug_compat = false;

    std::string host = "127.0.0.1";
    int port = 0;
    std::string circuit;
};

int cmd_gen(const Options& o, std::ostream& out)
{
    Circuit circuit;
    if (o.family == "omega")
        circuit = generate_omega(o.size);
    else if (o.family == "extra-stage")
        circuit = generate_extra_stage(o.size);
    else
        circuit = generate_replicated(generate_omega(o.size), o.copies);
    const std::string text = circuit_to_text({circuit_format_version, circuit});
    if (o.output.empty() || o.output == "-")
        out << text;
    else
        write_file(o.output, text);
    return exit_ok;
}

int cmd_check(const Options& o, std::ostream& out, std::ostream& err)
{
    const CircuitDocument doc = load(o.file, false);
    const auto violations = check_circuit(doc.circuit);
    for (const auto& v : violations)
        err << v.describe() << '\n';
    if (!violations.empty())
        return exit_structural;
    out << "ok: " << doc.circuit.component_count() << " components, " << doc.circuit.wire_count() << " wires\n";
    return exit_ok;
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err)
{
    const CircuitDocument doc = load(o.file);
    const ValidationReport report = validate_text(doc.circuit, o.path, o.faults);
    if (o.format == "machine")
        out << canonical_text(json(report));
    const bool ok = report_validation(report, err);
    if (o.format != "machine")
        out << (ok ? "valid" : "invalid") << '\n';
    return ok ? exit_ok : exit_validation;
}

int cmd_paths(const Options& o, std::ostream& out)
{
    const CircuitDocument doc = load(o.file);
    const PathSetResult result = max_disjoint_paths(doc.circuit, o.src, o.dst, o.k);
    if (o.format == "machine") {
        out << canonical_text(json(result));
        return exit_ok;
    }
    out << "k=" << result.disjointness << '\n';
    for (std::size_t i = 0; i < result.paths.size(); ++i)
        out << "path " << i << ": components " << join(result.paths[i], ' ') << "; wires "
            << join(result.wires[i], ',') << '\n';
    return exit_ok;
}

int cmd_simulate(Options o, std::ostream& out, std::ostream& err, const CLI::App& sub)
{
    if (!o.scenario.empty()) {
        std::ifstream in(o.scenario, std::ios::binary);
        if (!in)
            throw Failure{exit_io, "cannot open " + o.scenario};
        const ScenarioDocument sc = load_scenario(in);
        if (sub.count("--path") == 0)
            o.path = sc.path_input;
        if (sub.count("--faults") == 0)
            o.faults = sc.faults_input;
        if (sub.count("--ticks") == 0)
            o.ticks = sc.duration_ticks;
        if (sub.count("--parity") == 0)
            o.parity = std::string(parity_name(sc.drop_parity));
    }
    const CircuitDocument doc = load(o.file);
    const ValidationReport check = validate_text(doc.circuit, o.path, o.faults);
    if (!report_validation(check, err))
        return exit_validation;

    const SimConfig config{o.ticks, *parity_from_name(o.parity)};
    const SimulationReport report =
        run(doc.circuit, PathSpec::parse(o.path), FaultSet::parse(o.faults), config);
    out << "delivered=" << report.delivered << " dropped=" << report.dropped << '\n';

    if (!o.droplog.empty()) {
        std::ofstream log(o.droplog, std::ios::binary);
        if (!log)
            throw Failure{exit_io, "cannot open " + o.droplog + " for writing"};
        export_drop_log(report, log);
    }
    if (!o.report.empty())
        write_file(o.report, canonical_text(json(report)));
    return exit_ok;
}

int cmd_render(const Options& o, std::ostream& out, std::ostream& err, const CLI::App& sub)
{
    const CircuitDocument doc = load(o.file);
    const RenderOptions options{.bug_compat = o.bug_compat};
    RenderPlan plan;
    if (sub.count("--path") == 0) {
        plan = plan_circuit(doc.circuit, options);
    } else {
        const ValidationReport check = validate_text(doc.circuit, o.path, o.faults);
        if (!report_validation(check, err))
            return exit_validation;
        const PathSpec path = PathSpec::parse(o.path);
        const FaultSet faults = FaultSet::parse(o.faults);
        PathState state = o.state == "red" ? PathState::red : PathState::green;
        if (o.frame >= 0) {
            const auto event = tick_event(o.frame, faults_on_path(doc.circuit, path, faults), *parity_from_name(o.parity));
            state = event.outcome == Outcome::dropped ? PathState::red : PathState::green;
        }
        plan = plan_simulation_frame(doc.circuit, path, faults, state, options);
    }
    const std::string svg = svg_text(plan);
    if (o.output.empty() || o.output == "-")
        out << svg;
    else
        write_file(o.output, svg);
    return exit_ok;
}

int cmd_serve(const Options& o, std::ostream& out, std::ostream& err, const CLI::App& sub)
{
    CircuitDocument doc;
    if (!o.circuit.empty())
        doc = load(o.circuit);
    const int port = sub.count("--port") ? o.port : port_from_environment();
    Service service(std::move(doc));
    out << "serving on http://" << o.host << ':' << port << std::endl;
    if (!serve(service, o.host, port)) {
        err << "cannot listen on " << o.host << ':' << port << '\n';
        return exit_io;
    }
    return exit_ok;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Multistage interconnection network workbench", "min"};
    app.require_subcommand(1);
    Options o;

    const std::vector<std::string> families{"omega", "replicated", "extra-stage"};
    const std::vector<std::string> parities{"drop-first", "deliver-first", "drop_first", "deliver_first"};

    auto* gen = app.add_subcommand("gen", "Generate a circuit document");
    gen->add_option("family", o.family, "omega | replicated | extra-stage")
        ->required()
        ->check(CLI::IsMember(families));
    gen->add_option("--size", o.size, "Terminal count (power of two >= 4)")->required();
    gen->add_option("--copies", o.copies, "Planes for the replicated family");
    gen->add_option("-o,--output", o.output, "Output .mincir file (stdout when omitted)");

    auto* check = app.add_subcommand("check", "Report structural violations");
    check->add_option("file", o.file)->required();

    auto* validate_cmd = app.add_subcommand("validate", "Validate a path and fault set");
    validate_cmd->add_option("file", o.file)->required();
    validate_cmd->add_option("--path", o.path)->required();
    validate_cmd->add_option("--faults", o.faults);
    validate_cmd->add_option("--format", o.format)->check(CLI::IsMember({"text", "machine"}));

    auto* paths = app.add_subcommand("paths", "Find node-disjoint paths");
    paths->add_option("file", o.file)->required();
    paths->add_option("--src", o.src)->required();
    paths->add_option("--dst", o.dst)->required();
    paths->add_option("--k", o.k, "Maximum number of paths");
    paths->add_option("--format", o.format)->check(CLI::IsMember({"text", "machine"}));

    auto* simulate = app.add_subcommand("simulate", "Run the packet-drop simulation");
    simulate->add_option("file", o.file)->required();
    simulate->add_option("--path", o.path);
    simulate->add_option("--faults", o.faults);
    simulate->add_option("--ticks", o.ticks)->check(CLI::PositiveNumber);
    simulate->add_option("--parity", o.parity)->check(CLI::IsMember(parities));
    simulate->add_option("--scenario", o.scenario, "Read path, faults, ticks and parity from a .minsc file");
    simulate->add_option("--droplog", o.droplog, "Write dropped packets to a .droplog file");
    simulate->add_option("--report", o.report, "Write the full report as JSON");

    auto* render = app.add_subcommand("render", "Render a circuit or simulation frame as SVG");
    render->add_option("file", o.file)->required();
    render->add_option("--path", o.path);
    render->add_option("--faults", o.faults);
    render->add_option("--state", o.state)->check(CLI::IsMember({"green", "red"}));
    render->add_option("--frame", o.frame, "Pick the state of this tick instead of --state")->check(CLI::NonNegativeNumber);
    render->add_option("--parity", o.parity)->check(CLI::IsMember(parities));
    render->add_flag("--bug-compat", o.bug_compat, "Size both bent-wire detours from the first port");
    render->add_option("-o,--output", o.output);

    auto* serve_cmd = app.add_subcommand("serve", "Start the HTTP service");
    serve_cmd->add_option("--port", o.port)->check(CLI::Range(1, 65535));
    serve_cmd->add_option("--host", o.host);
    serve_cmd->add_option("--circuit", o.circuit, "Initial circuit document");

    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_io;
    }

    try {
        if (gen->parsed())
            return cmd_gen(o, out);
        if (check->parsed())
            return cmd_check(o, out, err);
        if (validate_cmd->parsed())
            return cmd_validate(o, out, err);
        if (paths->parsed())
            return cmd_paths(o, out);
        if (simulate->parsed())
            return cmd_simulate(o, out, err, *simulate);
        if (render->parsed())
            return cmd_render(o, out, err, *render);
        if (serve_cmd->parsed())
            return cmd_serve(o, out, err, *serve_cmd);
    } catch (const Failure& f) {
        err << f.message << '\n';
        return f.code;
    } catch (const InvalidCircuit& e) {
        err << e.what() << '\n';
        return exit_structural;
    } catch (const ValidationFailed& e) {
        report_validation(e.report(), err);
        return exit_validation;
    } catch (const NoPath& e) {
        err << e.what() << '\n';
        return exit_no_path;
    } catch (const UnknownComponent& e) {
        err << e.what() << '\n';
        return exit_validation;
    } catch (const SameEndpoint& e) {
        err << e.what() << '\n';
        return exit_validation;
    } catch (const Error& e) {
        err << e.what() << '\n';
        return exit_io;
    }
    return exit_io;
}

} // namespace minforge::cli
