#ifndef STOCHEQ_TOOLS_CLI_APP_HPP
#define STOCHEQ_TOOLS_CLI_APP_HPP

// Command-line front end. Kept in a header so the test suite can drive it
// in-process through run().
//
// Exit codes: 0 unique equilibrium / success, 2 degenerate (several closed
// classes), 1 any error.

#include <stocheq/io.hpp>
#include <stocheq/stocheq.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace stocheq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitDegenerate = 2;

/// Environment variable holding the default scalar mode ("exact"/"float").
inline constexpr const char* kModeEnv = "STOCHEQ_MODE";

struct Options {
    std::string command;
    bool json = false;
    std::string mode;  // "", "exact", "float"
    std::string format = "auto";
    std::optional<double> tol;
    std::string epsilon;
    std::optional<double> edge_threshold;
    std::string file = "-";
    std::size_t ratio_i = 0, ratio_j = 0;  // 1-based
    std::string pi_file;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

using io::json;

inline std::string read_source(const std::string& path, std::istream& in) {
    std::ostringstream buf;
    if (path == "-") {
        buf << in.rdbuf();
    } else {
        std::ifstream f(path);
        if (!f) throw UsageError("cannot open '" + path + "'");
        buf << f.rdbuf();
    }
    return buf.str();
}

inline std::optional<Mode> parse_mode(const std::string& s) {
    if (s.empty()) return std::nullopt;
    if (s == "exact") return Mode::Exact;
    if (s == "float") return Mode::Float;
    throw UsageError("unknown mode '" + s + "' (expected exact or float)");
}

inline io::InputFormat parse_format(const std::string& s) {
    if (s == "auto") return io::InputFormat::Auto;
    if (s == "matrix") return io::InputFormat::Matrix;
    if (s == "graph") return io::InputFormat::Graph;
    if (s == "json") return io::InputFormat::Json;
    throw UsageError("unknown format '" + s + "'");
}

template <Scalar T>
T literal_as(const io::Literal& lit) {
    if constexpr (is_exact_v<T>) {
        return lit.value;
    } else {
        return static_cast<double>(lit.value);
    }
}

template <Scalar T>
int exit_for(const DecompositionReport<T>& r) {
    return r.closed_class_count() >= 2 ? kExitDegenerate : kExitOk;
}

template <Scalar T>
void print_report(std::ostream& out, const DecompositionReport<T>& r, bool with_vertices) {
    out << "classes:\n";
    for (std::size_t c = 0; c < r.classes.size(); ++c)
        out << "  " << io::format_indices(r.classes[c]) << (r.closed[c] ? "  closed" : "  transitory") << "\n";
    out << "transitory states: " << io::format_indices(r.transitory_states) << "\n";
    if (with_vertices) {
        out << "vertex equilibria:\n";
        for (const auto& v : r.vertex_equilibria) out << "  " << io::format_vector(v.span()) << "\n";
    }
}

template <Scalar T>
std::string text(std::span<const T> v) {
    return io::format_vector(v);
}

struct Context {
    const Options& opts;
    std::ostream& out;
    std::istream& in;
    StructureOptions structure;
};

template <Scalar T>
std::vector<double> as_double(std::span<const T> v) {
    std::vector<double> out;
    for (const T& x : v) out.push_back(ScalarTraits<T>::to_double(x));
    return out;
}

template <Scalar T>
int run_compare(const Context& ctx, const StochasticMatrix<T>& p) {
    using clock = std::chrono::steady_clock;
    auto ms = [](clock::duration d) { return std::chrono::duration<double, std::milli>(d).count(); };

    struct Row {
        std::string method;
        bool solved = false;
        std::string pi_text;
        json pi_json;
        std::vector<double> pi;
        double residual = 0;
        double millis = 0;
        std::string note;
    };
    auto solved_row = [&]<Scalar U>(const char* name, const ProbabilityVector<U>& pi, const StochasticMatrix<U>& m,
                                     clock::time_point t0) {
        return Row{name, true, text(pi.span()), io::to_json(pi.span()), as_double(pi.span()),
                   ScalarTraits<U>::to_double(verify_equilibrium(pi, m)), ms(clock::now() - t0), ""};
    };
    std::vector<Row> rows;

    auto t0 = clock::now();
    const EquilibriumResult<T> minor_result = stationary(p, ctx.structure);
    if (minor_result.is_unique()) {
        rows.push_back(solved_row("minor", minor_result.pi(), p, t0));
    } else {
        rows.push_back({"minor", false, "", nullptr, {}, 0, ms(clock::now() - t0),
                        "degenerate: " + std::to_string(minor_result.degenerate().report.closed_class_count()) +
                            " closed classes"});
    }

    t0 = clock::now();
    try {
        const ProbabilityVector<T> pi = linear_solve_stationary(p);
        rows.push_back(solved_row("linear-solve", pi, p, t0));
    } catch (const SingularSystem&) {
        rows.push_back({"linear-solve", false, "", nullptr, {}, 0, ms(clock::now() - t0), "singular system"});
    }

    PowerMethodOptions pm;
    if (ctx.opts.tol) pm.tol = *ctx.opts.tol;
    t0 = clock::now();
    const PowerMethodReport power = power_method(p, pm);
    Row power_row = solved_row("power", power.pi_estimate, stochastic_cast<double>(p), t0);
    power_row.note = std::to_string(power.iterations) + " squarings, spread " +
                     ScalarTraits<double>::to_string(power.final_spread) +
                     (power.converged ? "" : (power.idempotent ? ", not converged (P^2 = P)" : ", not converged"));
    rows.push_back(power_row);

    const std::vector<double>& reference = rows.front().pi;
    auto diff = [&](const Row& row) -> std::optional<double> {
        if (!row.solved || reference.empty()) return std::nullopt;
        double worst = 0;
        for (std::size_t k = 0; k < reference.size(); ++k) worst = std::max(worst, std::fabs(row.pi[k] - reference[k]));
        return worst;
    };

    if (ctx.opts.json) {
        json methods = json::array();
        for (const Row& row : rows) {
            json m{{"method", row.method}, {"milliseconds", row.millis}, {"note", row.note}, {"pi", row.pi_json}};
            m["residual"] = row.solved ? json(row.residual) : json(nullptr);
            const auto d = diff(row);
            m["linf_vs_minor"] = d ? json(*d) : json(nullptr);
            methods.push_back(m);
        }
        methods.back()["power_method"] = io::to_json(power);
        ctx.out << json{{"type", "Comparison"}, {"mode", to_string(ScalarTraits<T>::mode)}, {"methods", methods}}.dump(2)
                << "\n";
    } else {
        ctx.out << std::left << std::setw(14) << "method" << std::setw(14) << "residual" << std::setw(15) << "linf-vs-minor"
                << std::setw(10) << "time-ms" << "pi\n";
        for (const Row& row : rows) {
            const auto d = diff(row);
            ctx.out << std::setw(14) << row.method << std::setw(14)
                    << (row.solved ? ScalarTraits<double>::to_string(row.residual) : std::string("-")) << std::setw(15)
                    << (d ? ScalarTraits<double>::to_string(*d) : std::string("-")) << std::setw(10)
                    << ScalarTraits<double>::to_string(row.millis, 3) << (row.solved ? row.pi_text : std::string("-"));
            if (!row.note.empty()) ctx.out << "  (" << row.note << ")";
            ctx.out << "\n";
        }
    }
    return minor_result.is_unique() ? kExitOk : kExitDegenerate;
}

template <Scalar T>
int run_matrix(const Context& ctx, const StochasticMatrix<T>& p) {
    const Options& o = ctx.opts;
    std::ostream& out = ctx.out;

    if (o.command == "stationary" || o.command == "weights") {
        const EquilibriumResult<T> r = stationary(p, ctx.structure);
        if (o.json) {
            json j = io::to_json(r);
            if (o.command == "weights") {
                j = json{{"type", "WeightVector"},
                         {"mode", to_string(ScalarTraits<T>::mode)},
                         {"weights", io::to_json(std::span<const T>(r.weights().values))},
                         {"total", io::to_json(r.weights().total())}};
            }
            out << j.dump(2) << "\n";
        } else if (o.command == "weights") {
            out << "w = " << text(std::span<const T>(r.weights().values)) << "\n";
            out << "sum = " << format_scalar(r.weights().total()) << "\n";
        } else if (r.is_unique()) {
            out << "pi = " << text(r.pi().span()) << "\n";
        } else {
            out << "Degenerate: all principal minors of I - P vanish; no unique equilibrium\n";
            print_report(out, r.degenerate().report, true);
        }
        return r.is_unique() ? kExitOk : kExitDegenerate;
    }
    if (o.command == "classes" || o.command == "polytope") {
        const bool vertices = o.command == "polytope";
        const DecompositionReport<T> r = vertices ? equilibrium_polytope(p, ctx.structure) : communicating_classes(p, ctx.structure);
        if (o.json) {
            json j = io::to_json(r);
            if (!vertices) j.erase("vertex_equilibria");
            out << j.dump(2) << "\n";
        } else {
            print_report(out, r, vertices);
        }
        return exit_for(r);
    }
    if (o.command == "ratio") {
        if (o.ratio_i < 1 || o.ratio_j < 1 || o.ratio_i > p.size() || o.ratio_j > p.size())
            throw UsageError("ratio: state index out of range 1.." + std::to_string(p.size()));
        const T value = relative_probability(p, o.ratio_i - 1, o.ratio_j - 1);
        if (o.json) {
            out << json{{"type", "RelativeProbability"}, {"i", o.ratio_i}, {"j", o.ratio_j}, {"value", io::to_json(value)}}.dump(2)
                << "\n";
        } else {
            out << "pi_" << o.ratio_i << " / pi_" << o.ratio_j << " = " << format_scalar(value) << "\n";
        }
        return kExitOk;
    }
    if (o.command == "compare") return run_compare(ctx, p);
    if (o.command == "verify") {
        const std::vector<io::Literal> lits = io::parse_vector(read_source(o.pi_file, ctx.in));
        ProbabilityVector<T> pi;
        for (const auto& l : lits) pi.values.push_back(literal_as<T>(l));
        const T residual = verify_equilibrium(pi, p);
        bool ok;
        if constexpr (is_exact_v<T>) {
            ok = residual == 0;
        } else {
            ok = residual <= o.tol.value_or(1e-12);
        }
        if (o.json) {
            out << json{{"type", "Verification"}, {"residual", io::to_json(residual)}, {"ok", ok}}.dump(2) << "\n";
        } else {
            out << "residual = " << format_scalar(residual) << (ok ? "  ok" : "  FAIL") << "\n";
        }
        return ok ? kExitOk : kExitError;
    }
    throw UsageError("unknown subcommand '" + o.command + "'");
}

inline int run_graph(const Context& ctx, const Graph& g) {
    const Options& o = ctx.opts;
    if (o.command != "stationary" && o.command != "weights") return run_matrix(ctx, walk_matrix(g));

    const GraphEquilibrium ge = graph_stationary(g);
    auto ints = [](const std::vector<BigInt>& v) {
        std::vector<Rational> r(v.begin(), v.end());
        return r;
    };
    if (o.json) {
        json j = io::to_json(ge.result);
        j["degrees"] = io::to_json(std::span<const Rational>(ints(ge.degrees)));
        j["minors"] = io::to_json(std::span<const Rational>(ints(ge.minors)));
        j["numerators"] = io::to_json(std::span<const Rational>(ints(ge.numerators)));
        j["denominator"] = ge.denominator.str();
        if (o.command == "weights") j["type"] = "GraphWeights";
        ctx.out << j.dump(2) << "\n";
    } else if (o.command == "weights") {
        ctx.out << "degrees = " << text(std::span<const Rational>(ints(ge.degrees))) << "\n";
        ctx.out << "minors of D - A = " << text(std::span<const Rational>(ints(ge.minors))) << "\n";
        ctx.out << "numerators = " << text(std::span<const Rational>(ints(ge.numerators))) << "\n";
        ctx.out << "denominator = " << ge.denominator.str() << "\n";
        if (ge.result.is_unique()) ctx.out << "pi = " << text(ge.result.pi().span()) << "\n";
    } else if (ge.result.is_unique()) {
        ctx.out << "pi = " << text(ge.result.pi().span()) << "\n";
    } else {
        ctx.out << "Degenerate: all principal minors of D - A vanish; no unique equilibrium\n";
        print_report(ctx.out, ge.result.degenerate().report, true);
    }
    return ge.result.is_unique() ? kExitOk : kExitDegenerate;
}

inline int dispatch(const Options& o, std::ostream& out, std::istream& in) {
    std::optional<Mode> mode = parse_mode(o.mode);
    if (!mode) {
        if (const char* env = std::getenv(kModeEnv); env && *env) mode = parse_mode(env);
    }
    const bool mode_from_flag = !o.mode.empty();
    if (o.command == "verify" && o.file == "-" && o.pi_file == "-")
        throw UsageError("verify: the matrix and the vector cannot both come from stdin");
    const std::string source = read_source(o.file, in);
    const io::InputDocument doc = io::parse_input(source, parse_format(o.format), mode_from_flag ? mode : std::nullopt);

    // The environment default only applies to matrix input; graphs are integer data.
    std::optional<Mode> effective = mode;
    if (doc.kind == io::InputKind::Graph) {
        if (mode_from_flag && *mode == Mode::Float) throw UsageError("flag conflict: --mode float does not apply to graph input");
        effective = Mode::Exact;
    }

    Context ctx{o, out, in, {}};
    if (o.edge_threshold) {
        if (!(*o.edge_threshold >= 0)) throw UsageError("--edge-threshold must be nonnegative");
        ctx.structure.edge_threshold = *o.edge_threshold;
    }
    if (o.tol && !(*o.tol > 0)) throw UsageError("--tol must be positive");

    auto with_epsilon = [&]<Scalar T>(StochasticMatrix<T> p) {
        if (o.epsilon.empty()) return p;
        const auto lit = io::parse_literal(o.epsilon);
        if (!lit) throw UsageError("malformed --epsilon '" + o.epsilon + "'");
        return perturb(p, literal_as<T>(*lit));
    };

    auto run_exact = [&](StochasticMatrix<Rational> p) {
        if (o.edge_threshold) throw UsageError("flag conflict: --edge-threshold applies to float mode only");
        return run_matrix(ctx, with_epsilon(std::move(p)));
    };
    auto run_float = [&](StochasticMatrix<double> p) { return run_matrix(ctx, with_epsilon(std::move(p))); };

    if (doc.kind == io::InputKind::Graph) {
        if (!o.epsilon.empty()) return run_exact(walk_matrix(doc.graph()));
        if (o.edge_threshold) throw UsageError("flag conflict: --edge-threshold applies to float mode only");
        return run_graph(ctx, doc.graph());
    }
    // An environment default converts already-parsed matrices.
    const Mode m = mode_from_flag ? *mode : effective.value_or(doc.source_mode);
    if (doc.source_mode == Mode::Exact) {
        const auto& p = doc.matrix<Rational>();
        return m == Mode::Exact ? run_exact(p) : run_float(stochastic_cast<double>(p));
    }
    if (m == Mode::Exact) {
        // Re-read the decimals exactly rather than converting rounded doubles.
        const io::InputDocument exact = io::parse_input(source, parse_format(o.format), Mode::Exact);
        return run_exact(exact.matrix<Rational>());
    }
    return run_float(doc.matrix<double>());
}

}  // namespace detail

/// Parses argv and runs one subcommand. Never throws.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, std::istream& in) {
    CLI::App app{"Stationary distributions of finite Markov chains from principal minors", "stocheq"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_flag("--json", o.json, "Structured JSON output");
        sub->add_option("--mode", o.mode, "Scalar mode: exact or float (default: inferred, or $STOCHEQ_MODE)");
        sub->add_option("--format", o.format, "Input format: auto, matrix, graph or json");
        sub->add_option("--tol", o.tol, "Power-method tolerance (compare) / float residual tolerance (verify)");
        sub->add_option("--epsilon", o.epsilon, "Replace P by (1-eps) P + (eps/n) J before solving");
        sub->add_option("--edge-threshold", o.edge_threshold, "Float mode: entries above this are transitions (default 1e-14)");
    };

    struct Command {
        const char* name;
        const char* help;
    };
    const Command commands[] = {
        {"stationary", "Stationary distribution, or the degenerate decomposition"},
        {"weights", "Minor weights M_ii(I - P); integer numerators for graphs"},
        {"classes", "Communicating classes and transitory states"},
        {"polytope", "Vertex equilibria, one per closed class"},
        {"ratio", "Relative probability pi_i / pi_j"},
        {"compare", "Minor method vs linear solve vs power method"},
        {"verify", "Residual |pi P - pi| of a supplied vector"},
    };
    for (const Command& s : commands) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        add_common(sub);
        if (std::string(s.name) == "ratio") {
            sub->add_option("i", o.ratio_i, "State i (1-based)")->required();
            sub->add_option("j", o.ratio_j, "State j (1-based)")->required();
        }
        if (std::string(s.name) == "verify") sub->add_option("pi-file", o.pi_file, "Vector to check (text or JSON)")->required();
        sub->add_option("file", o.file, "Input file, or - for stdin");
        sub->callback([&o, sub] { o.command = sub->get_name(); });
    }

    try {
        std::vector<std::string> args;
        for (int k = argc - 1; k > 0; --k) args.emplace_back(argv[k]);
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitError;
    }

    try {
        return detail::dispatch(o, out, in);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
}

}  // namespace stocheq::cli

#endif  // STOCHEQ_TOOLS_CLI_APP_HPP
