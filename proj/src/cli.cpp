#include "matsym/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "matsym/decompose.hpp"
#include "matsym/error.hpp"
#include "matsym/model_io.hpp"
#include "matsym/oracle.hpp"
#include "matsym/problems.hpp"
#include "matsym/solver.hpp"
#include "matsym/symbreak.hpp"

namespace matsym::cli {

namespace {

struct ModelSource {
    std::string model_file;
    std::string problem;
    int v = 0, b = 0, r = 0, k = 0, lambda = 0;
    int rows = 2, cols = 2, domain_size = 2;
    double density = 0.3;
    std::uint64_t seed = 42;
    std::string racks;
    std::string cards;
};

struct SearchOptions {
    std::string var_order = "rowwise";
    std::string val_order = "asc";
    std::uint64_t node_limit = 0;
    double time_limit = 0.0;
    bool decompose = false;
    std::uint64_t guard = symbreak::default_lexleader_guard;
};

void add_builder_options(CLI::App* app, ModelSource& src) {
    app->add_option("--v", src.v, "BIBD: number of points (rows)");
    app->add_option("--b", src.b, "BIBD: number of blocks (columns)");
    app->add_option("--r", src.r, "BIBD: row sum");
    app->add_option("--k", src.k, "BIBD: column sum");
    app->add_option("--lambda", src.lambda, "BIBD: pairwise row scalar product");
    app->add_option("--rows", src.rows, "grid/random: rows")->capture_default_str();
    app->add_option("--cols", src.cols, "grid/random: columns")->capture_default_str();
    app->add_option("--domain-size", src.domain_size, "grid/random: values 0..n-1")->capture_default_str();
    app->add_option("--density", src.density, "random: constraint family probability")->capture_default_str();
    app->add_option("--seed", src.seed, "random: seed")->capture_default_str();
    app->add_option("--racks", src.racks, "rack: models as capacity:power:count,...");
    app->add_option("--cards", src.cards, "rack: card types as power:quantity,...");
}

void add_model_options(CLI::App* app, ModelSource& src) {
    app->add_option("--model", src.model_file, "model JSON file");
    app->add_option("--problem", src.problem, "builder: bibd, rack, grid, random")
        ->check(CLI::IsMember({"bibd", "rack", "grid", "random"}));
    add_builder_options(app, src);
}

void add_search_options(CLI::App* app, SearchOptions& opts) {
    app->add_option("--var-order", opts.var_order, "rowwise, colwise, snake, smallest-domain")
        ->check(CLI::IsMember({"rowwise", "colwise", "snake", "smallest-domain"}))
        ->capture_default_str();
    app->add_option("--val-order", opts.val_order, "asc or desc")
        ->check(CLI::IsMember({"asc", "desc"}))
        ->capture_default_str();
    app->add_option("--node-limit", opts.node_limit, "stop after this many nodes");
    app->add_option("--time-limit", opts.time_limit, "stop after this many seconds");
    app->add_flag("--decompose", opts.decompose, "post lex constraints through their linear decomposition");
    app->add_option("--lexleader-guard", opts.guard, "largest group the lexleader scheme may expand")
        ->capture_default_str();
}

std::vector<int> parse_ints(const std::string& text, char sep, const std::string& what) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) {
        int value = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
        if (ec != std::errc() || ptr != item.data() + item.size()) {
            throw Error(ErrorCode::InvalidParams, "malformed " + what + " '" + text + "'");
        }
        out.push_back(value);
    }
    return out;
}

problems::RackParams parse_rack(const ModelSource& src) {
    problems::RackParams p;
    std::stringstream racks(src.racks);
    std::string item;
    while (std::getline(racks, item, ',')) {
        const auto f = parse_ints(item, ':', "rack model");
        if (f.size() != 3) throw Error(ErrorCode::InvalidParams, "rack model needs capacity:power:count");
        p.rack_models.push_back({f[0], f[1], f[2]});
    }
    std::stringstream cards(src.cards);
    while (std::getline(cards, item, ',')) {
        const auto f = parse_ints(item, ':', "card type");
        if (f.size() != 2) throw Error(ErrorCode::InvalidParams, "card type needs power:quantity");
        p.card_types.push_back({f[0], f[1]});
    }
    return p;
}

MatrixModel build_from_builder(const std::string& kind, const ModelSource& src) {
    if (kind == "bibd") return problems::build_bibd({src.v, src.b, src.r, src.k, src.lambda});
    if (kind == "rack") return problems::build_rack(parse_rack(src)).model;
    if (kind == "grid") {
        if (src.domain_size < 1) throw Error(ErrorCode::InvalidParams, "domain size must be positive");
        return oracle::unconstrained_grid(src.rows, src.cols, Domain::range(0, src.domain_size - 1));
    }
    if (kind == "random") return problems::random_model({src.rows, src.cols}, src.domain_size, src.density, src.seed);
    throw Error(ErrorCode::InvalidParams, "unknown problem '" + kind + "'");
}

MatrixModel load_model(const ModelSource& src) {
    if (!src.model_file.empty() && !src.problem.empty()) {
        throw Error(ErrorCode::InvalidParams, "give either --model or --problem, not both");
    }
    if (!src.model_file.empty()) return read_model(src.model_file);
    if (!src.problem.empty()) return build_from_builder(src.problem, src);
    throw Error(ErrorCode::InvalidParams, "no model: give --model FILE or --problem NAME");
}

solver::SearchConfig make_config(const SearchOptions& opts, solver::SearchMode mode) {
    solver::SearchConfig config;
    if (opts.var_order == "colwise") config.var_order = solver::VarOrder::ColWise;
    else if (opts.var_order == "snake") config.var_order = solver::VarOrder::Snake;
    else if (opts.var_order == "smallest-domain") config.var_order = solver::VarOrder::SmallestDomainFirst;
    config.val_order = opts.val_order == "desc" ? solver::ValOrder::Descending : solver::ValOrder::Ascending;
    config.mode = mode;
    if (opts.node_limit > 0) config.node_limit = opts.node_limit;
    if (opts.time_limit > 0.0) config.time_limit = opts.time_limit;
    return config;
}

symbreak::Scheme with_guard(symbreak::Scheme scheme, std::uint64_t guard) {
    for (auto& part : scheme.parts) part.guard = guard;
    return scheme;
}

ConstraintSet breaking_constraints(const MatrixModel& model, const symbreak::Scheme& scheme, bool decompose) {
    auto set = symbreak::generate(model, scheme);
    return decompose ? solver::decompose_lex_terms(model, set) : set;
}

std::string sanitize(std::string s) {
    std::replace(s.begin(), s.end(), ',', ';');
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

std::string solution_line(std::span<const int> s) {
    std::string line = "[";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) line += ',';
        line += std::to_string(s[i]);
    }
    return line + "]";
}

int cmd_solve(const ModelSource& src, const SearchOptions& opts, const std::string& scheme_text,
              solver::SearchMode mode, const std::string& solutions_path, const std::string& instance,
              std::ostream& out) {
    const auto scheme = with_guard(symbreak::parse_scheme(scheme_text), opts.guard);
    const auto model = load_model(src);
    const auto extra = breaking_constraints(model, scheme, opts.decompose);
    const auto config = make_config(opts, mode);

    std::unique_ptr<std::ofstream> file;
    std::ostream* stream = nullptr;
    if (solutions_path == "-") {
        stream = &out;
    } else if (!solutions_path.empty()) {
        file = std::make_unique<std::ofstream>(solutions_path);
        if (!*file) throw Error(ErrorCode::InvalidParams, "cannot write " + solutions_path);
        stream = file.get();
    }
    solver::SolutionSink sink;
    if (stream) sink = [&](std::span<const int> s) { *stream << solution_line(s) << '\n'; };

    const auto result = solver::solve(model, extra, config, sink);
    out << stats_header << '\n';
    out << format_stats_row({sanitize(instance.empty() ? model.name() : instance), symbreak::to_string(scheme),
                             result.stats.nodes, result.stats.failures, result.stats.solutions,
                             result.stats.elapsed})
        << '\n';
    if (result.status == solver::SolveStatus::LimitExceeded) return exit_limit;
    return result.stats.solutions == 0 ? exit_infeasible : exit_success;
}

int cmd_verify(const ModelSource& src, const std::string& schemes_text, const oracle::Budgets& budgets,
               std::uint64_t guard, std::ostream& out) {
    const auto model = load_model(src);
    std::vector<std::pair<std::string, ConstraintSet>> sets;
    for (const auto& s : symbreak::parse_scheme_list(schemes_text)) {
        const auto scheme = with_guard(s, guard);
        sets.emplace_back(symbreak::to_string(scheme), symbreak::generate(model, scheme));
    }
    const auto truth = oracle::compute_ground_truth(model, budgets);
    nlohmann::json reports = nlohmann::json::array();
    for (const auto& [label, set] : sets) reports.push_back(oracle::to_json(oracle::check_scheme(truth, set, label), model));
    out << reports.dump(2) << '\n';
    return exit_success;
}

int cmd_compare(const ModelSource& src, const SearchOptions& opts, const std::string& schemes_text,
                solver::SearchMode mode, int jobs, std::ostream& out) {
    const auto model = load_model(src);
    const auto config = make_config(opts, mode);
    std::vector<std::string> labels;
    std::vector<ConstraintSet> sets;
    for (const auto& s : symbreak::parse_scheme_list(schemes_text)) {
        const auto scheme = with_guard(s, opts.guard);
        labels.push_back(symbreak::to_string(scheme));
        sets.push_back(breaking_constraints(model, scheme, opts.decompose));
    }
    const auto n = static_cast<std::int64_t>(sets.size());
    std::vector<solver::SolveResult> results(sets.size());
    std::vector<std::string> failures(sets.size());
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, jobs))
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            results[static_cast<std::size_t>(i)] = solver::solve(model, sets[static_cast<std::size_t>(i)], config);
        } catch (const std::exception& e) {
            failures[static_cast<std::size_t>(i)] = e.what();
        }
    }
    for (const auto& f : failures) {
        if (!f.empty()) throw Error(ErrorCode::InvalidParams, f);
    }
    bool limited = false;
    out << stats_header << '\n';
    for (std::size_t i = 0; i < sets.size(); ++i) {
        const auto& st = results[i].stats;
        limited = limited || results[i].status == solver::SolveStatus::LimitExceeded;
        out << format_stats_row({sanitize(model.name()), labels[i], st.nodes, st.failures, st.solutions, st.elapsed})
            << '\n';
    }
    return limited ? exit_limit : exit_success;
}

int cmd_sweep(const std::string& scheme_text, int domain_size, int max_cells, std::uint64_t guard, bool text,
              const oracle::Budgets& budgets, std::ostream& out) {
    if (domain_size < 1) throw Error(ErrorCode::InvalidParams, "domain size must be positive");
    const auto scheme = with_guard(symbreak::parse_scheme(scheme_text), guard);
    const auto sweep = oracle::find_smallest_incompleteness_witness(scheme, max_cells,
                                                                    Domain::range(0, domain_size - 1), budgets);
    if (!text) {
        auto j = oracle::to_json(sweep);
        j["scheme"] = symbreak::to_string(scheme);
        out << j.dump(2) << '\n';
        return exit_success;
    }
    if (!sweep.witness) {
        out << "none found (" << sweep.checked.size() << " instances checked, " << sweep.skipped.size()
            << " skipped)\n";
        return exit_success;
    }
    const auto& w = *sweep.witness;
    out << "witness at " << w.dims[0] << "x" << w.dims[1] << "\n"
        << "first    " << solution_line(w.first) << "\n"
        << "second   " << solution_line(w.second) << "\n"
        << "row_perm " << solution_line(w.mapping[0]) << "\n"
        << "col_perm " << solution_line(w.mapping[1]) << "\n";
    return exit_success;
}

int cmd_problem(const std::string& kind, const ModelSource& src, const std::string& output, std::ostream& out) {
    const auto model = build_from_builder(kind, src);
    if (output.empty() || output == "-") {
        out << model_to_json(model).dump(2) << '\n';
    } else {
        write_model(model, output);
    }
    return exit_success;
}

}  // namespace

std::string format_stats_row(const StatsRow& row) {
    std::ostringstream os;
    os << row.instance << ',' << row.scheme << ',' << row.nodes << ',' << row.failures << ',' << row.solutions << ','
       << std::fixed << std::setprecision(6) << row.seconds;
    return os.str();
}

std::optional<StatsRow> parse_stats_row(const std::string& line) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) f.push_back(item);
    if (f.size() != 6) return std::nullopt;
    StatsRow row;
    row.instance = f[0];
    row.scheme = f[1];
    auto parse_u64 = [](const std::string& s, std::uint64_t& v) {
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        return ec == std::errc() && ptr == s.data() + s.size();
    };
    if (!parse_u64(f[2], row.nodes) || !parse_u64(f[3], row.failures) || !parse_u64(f[4], row.solutions)) {
        return std::nullopt;
    }
    char* end = nullptr;
    row.seconds = std::strtod(f[5].c_str(), &end);
    if (end != f[5].c_str() + f[5].size() || f[5].empty()) return std::nullopt;
    return row;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Symmetry breaking for matrix models: solve, verify, compare, sweep", "matsym"};
    app.require_subcommand(1);

    ModelSource src;
    SearchOptions search;
    std::string scheme = "none";
    std::string schemes = "none";
    std::string solutions_path;
    std::string instance;
    std::string output;
    std::string kind;
    bool count = false, all = false, first = false, text = false;
    int jobs = 1;
    int max_cells = 9;
    std::uint64_t enum_budget = 0, group_budget = 0;

    auto* solve = app.add_subcommand("solve", "solve a model with a symmetry-breaking scheme; prints stats CSV");
    add_model_options(solve, src);
    add_search_options(solve, search);
    solve->add_option("--scheme", scheme, "scheme, e.g. doublelex or doublelex+allperm")->capture_default_str();
    auto* count_flag = solve->add_flag("--count", count, "count solutions without printing them");
    auto* all_flag = solve->add_flag("--all", all, "enumerate every solution");
    solve->add_flag("--first", first, "stop at the first solution (default)")->excludes(count_flag)->excludes(all_flag);
    count_flag->excludes(all_flag);
    solve->add_option("--solutions", solutions_path, "write solutions, one row-major array per line ('-' = stdout)");
    solve->add_option("--instance", instance, "instance label for the CSV row");

    auto* verify = app.add_subcommand("verify", "oracle soundness/completeness report (JSON)");
    add_model_options(verify, src);
    verify->add_option("--scheme,--schemes", schemes, "comma-separated schemes")->capture_default_str();
    verify->add_option("--enum-budget", enum_budget, "max assignments enumerated");
    verify->add_option("--group-budget", group_budget, "max group elements swept per canonical form");
    verify->add_option("--lexleader-guard", search.guard, "largest group the lexleader scheme may expand")
        ->capture_default_str();

    auto* compare = app.add_subcommand("compare", "solve once per scheme; prints one CSV row per scheme");
    add_model_options(compare, src);
    add_search_options(compare, search);
    compare->add_option("--schemes,--scheme", schemes, "comma-separated schemes")->capture_default_str();
    compare->add_flag("--first", first, "stop each run at its first solution (default counts all)");
    compare->add_option("--jobs", jobs, "parallel workers")->capture_default_str();

    auto* sweep = app.add_subcommand("sweep", "search the smallest grid where a scheme leaves symmetric survivors");
    sweep->add_option("--scheme", scheme, "scheme")->required();
    sweep->add_option("--domain-size", src.domain_size, "values 0..n-1")->capture_default_str();
    sweep->add_option("--max-cells", max_cells, "largest rows*cols examined")->capture_default_str();
    sweep->add_option("--enum-budget", enum_budget, "max assignments enumerated");
    sweep->add_option("--group-budget", group_budget, "max group elements swept per canonical form");
    sweep->add_option("--lexleader-guard", search.guard, "largest group the lexleader scheme may expand")
        ->capture_default_str();
    sweep->add_flag("--text", text, "human-readable output instead of JSON");

    auto* problem = app.add_subcommand("problem", "build a named problem and write its model JSON");
    problem->add_option("kind", kind, "bibd, rack, grid, random")
        ->required()
        ->check(CLI::IsMember({"bibd", "rack", "grid", "random"}));
    add_builder_options(problem, src);
    problem->add_option("-o,--output", output, "output file (default stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_success : exit_usage;
    }

    auto budgets = [&] {
        auto b = oracle::Budgets::from_env();
        if (enum_budget > 0) b.enumeration = enum_budget;
        if (group_budget > 0) b.group = group_budget;
        return b;
    };

    try {
        if (*solve) {
            const auto mode = count ? solver::SearchMode::CountOnly
                                    : (all ? solver::SearchMode::EnumerateAll : solver::SearchMode::FirstSolution);
            return cmd_solve(src, search, scheme, mode, solutions_path, instance, out);
        }
        if (*verify) return cmd_verify(src, schemes, budgets(), search.guard, out);
        if (*compare) {
            const auto mode = first ? solver::SearchMode::FirstSolution : solver::SearchMode::CountOnly;
            return cmd_compare(src, search, schemes, mode, jobs, out);
        }
        if (*sweep) return cmd_sweep(scheme, src.domain_size, max_cells, search.guard, text, budgets(), out);
        if (*problem) return cmd_problem(kind, src, output, out);
    } catch (const GroupTooLarge& e) {
        err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
        return exit_limit;
    } catch (const BudgetExceeded& e) {
        err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
        return exit_limit;
    } catch (const Error& e) {
        err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}

}  // namespace matsym::cli
