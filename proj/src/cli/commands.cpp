#include "dirichlet/cli/commands.hpp"

#include "dirichlet/cli/experiment.hpp"
#include "dirichlet/cli/report_io.hpp"
#include "dirichlet/mce.hpp"
#include "dirichlet/schauder.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>

namespace dirichlet::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

struct Invocation {
    std::string command;
    fs::path config;
    fs::path out = ".";
    std::optional<std::int64_t> seed;
};

struct Context {
    Invocation inv;
    ExperimentConfig cfg;
    std::ostream& out;
    std::ostream& err;
};

int exit_code(Outcome o)
{
    switch (o) {
    case Outcome::Converged:
        return kConverged;
    case Outcome::Diverged:
        return kDiverged;
    case Outcome::MaxIters:
        return kMaxIters;
    }
    return kUsage;
}

ordered_json json_number(double v)
{
    if (std::isfinite(v))
        return v;
    return format_number(v);
}

struct Lambda {
    double value;
    std::string source;
};

Lambda resolve_lambda(const ExperimentConfig& cfg, const GridPtr& grid)
{
    if (cfg.analysis.Lambda)
        return {*cfg.analysis.Lambda, "given"};
    const double v = estimate_schauder_constant(grid, cfg.analysis.norms, cfg.analysis.trials, cfg.analysis.seed);
    return {v, "estimated(trials=" + std::to_string(cfg.analysis.trials)
                   + ",seed=" + std::to_string(cfg.analysis.seed) + ")"};
}

int cmd_solve(Context& ctx)
{
    const ExperimentConfig& cfg = ctx.cfg;
    const GridPtr grid = build_grid(cfg.domain, cfg.h);
    const RhsSpec spec = make_rhs(cfg.rhs);
    const RhsNorms norms = rhs_norms(spec, grid, cfg.analysis.norms);
    const Lambda L = resolve_lambda(cfg, grid);
    const ContractionAnalysis theory = analyze_contraction(spec, grid->domain(), norms, L.value,
                                                           cfg.analysis.kappa_kind);

    const IterationResult result = dirichlet_iterate(grid, spec, make_iteration(cfg, grid), theory);
    const SolveSummary summary = summarize(result, spec, norms, L.source);

    write_text(ctx.inv.out / "report.json", summary_to_json(summary));
    trace_table(result.report).write(ctx.inv.out / "trace.csv");
    solution_table(result.u).write(ctx.inv.out / "solution.csv");

    ctx.out << "outcome: " << summary.outcome << " after " << summary.iterations << " iterations\n"
            << "residual_sup: " << format_number(summary.final_residual) << "\n"
            << "C_empirical: " << format_number(summary.C_empirical) << "\n"
            << "Lambda: " << format_number(L.value) << " (" << L.source << ")\n"
            << "fixed point t*: " << (summary.fixed_point ? format_number(*summary.fixed_point) : "none") << "\n";
    return exit_code(result.report.outcome);
}

int cmd_sweep(Context& ctx)
{
    const ExperimentConfig& cfg = ctx.cfg;
    if (!cfg.sweep)
        throw ConfigError(0, "sweep needs a [sweep] section");
    const SweepBlock& sweep = *cfg.sweep;
    const GridPtr grid = build_grid(cfg.domain, cfg.h);
    const IterationConfig it = make_iteration(cfg, grid);

    CsvTable table({"value", "outcome", "iters", "max_rho", "final_residual"});
    std::vector<bool> converged;
    for (double v : sweep.values) {
        const RhsBlock rhs = with_sweep_value(cfg.rhs, sweep.parameter, v, *grid);
        try {
            const IterationResult r = dirichlet_iterate(grid, make_rhs(rhs), it);
            const auto rho = r.report.max_rho();
            table.add_row({format_number(v), std::string(to_string(r.report.outcome)),
                           std::to_string(r.report.iterations()), rho ? format_number(*rho) : "",
                           format_number(r.report.final_residual())});
            converged.push_back(r.report.outcome == Outcome::Converged);
        } catch (const Error& e) {
            ctx.err << "sweep value " << format_number(v) << ": " << e.what() << "\n";
            table.add_row({format_number(v), "error", "0", "", "nan"});
            converged.push_back(false);
        }
    }
    table.write(ctx.inv.out / "sweep.csv");

    // Midpoint between the last converged value and the first failure.
    const auto first_fail = std::find(converged.begin(), converged.end(), false);
    std::optional<double> threshold;
    if (first_fail != converged.begin() && first_fail != converged.end()) {
        const auto j = static_cast<std::size_t>(first_fail - converged.begin());
        threshold = 0.5 * (sweep.values[j - 1] + sweep.values[j]);
    }
    const bool monotone = std::find(first_fail, converged.end(), true) == converged.end();

    ordered_json j;
    j["parameter"] = to_string(sweep.parameter);
    j["threshold"] = threshold ? json_number(*threshold) : ordered_json(nullptr);
    j["monotone"] = monotone;
    write_text(ctx.inv.out / "sweep.json", j.dump(2) + "\n");

    ctx.out << "threshold: " << (threshold ? format_number(*threshold) : "none") << "\n";
    if (!monotone)
        ctx.out << "note: outcomes are not monotone in " << to_string(sweep.parameter) << "\n";
    return kConverged;
}

struct NamedField {
    std::string id;
    GridField u;
};

std::vector<NamedField> poincare_suite(const GridPtr& grid, const PoincareBlock& block, std::uint64_t seed)
{
    using std::numbers::pi;
    const Grid& g = *grid;
    const double x0 = g.x(0), y0 = g.y(0);
    const double lx = g.realized_extent_x(), ly = g.realized_extent_y();
    auto local = [&](auto fn) {
        GridField f = GridField::sample(grid, [&](double x, double y) { return fn((x - x0) / lx, (y - y0) / ly); });
        BoundarySpec::homogeneous().impose(f);
        return f;
    };

    std::vector<NamedField> suite;
    suite.push_back({"zero", GridField(grid)});
    for (auto [p, q] : {std::pair{1, 1}, {1, 2}, {2, 1}, {2, 2}, {3, 1}, {1, 3}})
        suite.push_back({"eigen_" + std::to_string(p) + "_" + std::to_string(q), local([=](double s, double t) {
                             return std::sin(p * pi * s) * std::sin(q * pi * t);
                         })});
    suite.push_back({"tensor_poly", local([](double s, double t) { return s * (1 - s) * t * (1 - t); })});
    suite.push_back({"tensor_skew", local([](double s, double t) { return s * s * (1 - s) * t * (1 - t) * (1 - t); })});
    suite.push_back({"tensor_mixed", local([](double s, double t) { return s * (1 - s) * std::sin(pi * t); })});

    // Smooth bumps supported inside the rectangle.
    std::mt19937_64 rng(seed);
    auto uniform = [&](double lo, double hi) {
        return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };
    for (int r = 0; r < block.random_fields; ++r) {
        std::vector<std::array<double, 4>> bumps;
        for (int b = 0; b < 4; ++b) {
            const double rad = uniform(0.1, 0.45) * std::min(lx, ly);
            bumps.push_back({uniform(x0 + rad, x0 + lx - rad), uniform(y0 + rad, y0 + ly - rad), rad,
                             uniform(-1.0, 1.0)});
        }
        GridField f = GridField::sample(grid, [&](double x, double y) {
            double s = 0.0;
            for (const auto& b : bumps) {
                const double q = 1.0 - ((x - b[0]) * (x - b[0]) + (y - b[1]) * (y - b[1])) / (b[2] * b[2]);
                if (q > 0.0)
                    s += b[3] * q * q;
            }
            return s;
        });
        BoundarySpec::homogeneous().impose(f);
        suite.push_back({"bumps_" + std::to_string(r), std::move(f)});
    }
    return suite;
}

int cmd_poincare(Context& ctx)
{
    const ExperimentConfig& cfg = ctx.cfg;
    const GridPtr grid = build_grid(cfg.domain, cfg.h);
    std::vector<NamedField> suite = poincare_suite(grid, cfg.poincare, cfg.analysis.seed);
    if (cfg.poincare.extra) {
        const Expression e = *cfg.poincare.extra;
        suite.push_back({"extra", GridField::sample(grid, [e](double x, double y) { return e(x, y); })});
    }

    CsvTable table({"id", "lhs", "grad", "rhs_vol", "rhs_slab", "holds_vol", "holds_slab", "holds"});
    bool all = true;
    for (const NamedField& f : suite) {
        const PoincareCheck c = verify_poincare(f.u, grid->domain());
        const bool holds = c.holds_vol && c.holds_slab;
        all = all && holds;
        table.add_row({f.id, format_number(c.lhs), format_number(c.grad), format_number(c.rhs_vol),
                       format_number(c.rhs_slab), c.holds_vol ? "1" : "0", c.holds_slab ? "1" : "0",
                       holds ? "1" : "0"});
    }
    table.write(ctx.inv.out / "poincare.csv");
    ctx.out << (all ? "all " : "not all ") << table.rows() << " fields satisfy the inequalities\n";
    return all ? kConverged : kUsage;
}

int cmd_exhaust(Context& ctx)
{
    const ExperimentConfig& cfg = ctx.cfg;
    if (!cfg.exhaust)
        throw ConfigError(0, "exhaust needs an [exhaust] section");
    if (cfg.boundary)
        throw ConfigError(0, "exhaust runs use zero boundary data; remove [boundary] phi");
    const ExhaustBlock& e = *cfg.exhaust;
    ExhaustionConfig ex;
    ex.d = e.d;
    ex.n_start = e.n_start;
    ex.n_max = e.n_max;
    ex.compact_halfwidth = e.N;
    ex.compact_tol = e.compact_tol;
    ex.iteration = cfg.iteration;
    ex.iteration.norms = cfg.analysis.norms;
    try {
        ex.validate();
    } catch (const InvalidArgument& err) {
        throw ConfigError(e.line, std::string("[exhaust] ") + err.what());
    }

    const RhsSpec spec = make_rhs(cfg.rhs);
    CsvTable table({"n", "sup_diff_on_compact", "iters", "outcome"});
    ordered_json j;
    int code = kConverged;
    try {
        const ExhaustionResult r = exhaustion_solve(spec, ex, cfg.h);
        for (std::size_t k = 0; k < r.tail.size(); ++k) {
            const TruncationRun& run = r.runs[k + 1];
            table.add_row({std::to_string(run.n), format_number(r.tail[k]), std::to_string(run.iterations),
                           std::string(to_string(run.outcome))});
        }
        j["tail_within_tol"] = r.tail_within(ex.compact_tol);

        // Analytic comparison when one exists.
        const Grid& g = r.u_final.grid();
        std::optional<std::function<double(double)>> profile;
        if (cfg.rhs.kind == RhsKind::MeanCurvature && !cfg.rhs.H.depends_on_position()) {
            const double H = cfg.rhs.H(0.0, 0.0);
            if (cfg.rhs.n == 2 && ArcSolution::admissible(ex.d, H)) {
                const ArcSolution arc(ex.d, H);
                profile = [arc](double y) { return arc(y); };
                j["reference"] = "arc_solution";
            }
        } else if (cfg.rhs.kind == RhsKind::GradLipschitz && cfg.rhs.K == 0.0 && !cfg.rhs.h.depends_on_position()) {
            const double c = cfg.rhs.h(0.0, 0.0);
            const double d = ex.d;
            profile = [c, d](double y) { return c * (y * y - d * d / 4) / 2; };
            j["reference"] = "one_dimensional_profile";
        }
        if (profile) {
            double err = 0.0;
            for (std::size_t i = 0; i < g.nx(); ++i) {
                if (std::abs(g.x(i)) > ex.compact_halfwidth + 1e-9 * g.spacing())
                    continue;
                for (std::size_t jj = 0; jj < g.ny(); ++jj)
                    err = std::max(err, std::abs(r.u_final.at(i, jj) - (*profile)(g.y(jj))));
            }
            j["compact_error_vs_reference"] = json_number(err);
            ctx.out << "final compact error vs " << j["reference"].get<std::string>() << ": " << format_number(err)
                    << "\n";
        }
    } catch (const TruncationFailure& f) {
        ctx.err << f.what() << "\n";
        j["failed_truncation"] = f.truncation();
        code = exit_code(f.report().outcome);
    }
    table.write(ctx.inv.out / "tail.csv");
    write_text(ctx.inv.out / "exhaust.json", j.dump(2) + "\n");
    ctx.out << table.rows() << " tail entries written\n";
    return code;
}

int cmd_schauder(Context& ctx)
{
    const ExperimentConfig& cfg = ctx.cfg;
    const int trials = cfg.schauder.trials.value_or(cfg.analysis.trials);
    CsvTable table({"target", "Lambda"});
    if (cfg.schauder.n_list.empty()) {
        const double v = estimate_schauder_constant(build_grid(cfg.domain, cfg.h), cfg.analysis.norms, trials,
                                                    cfg.analysis.seed);
        table.add_row({"domain", format_number(v)});
        ctx.out << "Lambda: " << format_number(v) << "\n";
    } else {
        const double d = cfg.schauder.d.value_or(
            cfg.domain.kind() == DomainKind::StripTruncation ? cfg.domain.strip_width() : 1.0);
        const SchauderProbe p = schauder_uniformity_probe(d, cfg.schauder.n_list, cfg.h, cfg.analysis.norms, trials,
                                                          cfg.analysis.seed);
        for (std::size_t i = 0; i < p.estimates.size(); ++i)
            table.add_row({std::to_string(cfg.schauder.n_list[i]), format_number(p.estimates[i])});
        ctx.out << "max Lambda: " << format_number(p.max) << "\nmax/min: " << format_number(p.max_over_min) << "\n";
    }
    table.write(ctx.inv.out / "schauder.csv");
    return kConverged;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Dirichlet iteration experiments"};
    app.require_subcommand(1);
    Invocation inv;
    std::int64_t seed = 0;
    for (const char* name : {"solve", "sweep", "poincare", "exhaust", "schauder"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", inv.config, "experiment config (INI)")->required();
        sub->add_option("--out", inv.out, "output directory");
        sub->add_option("--seed", seed, "overrides [analysis] seed")->check(CLI::NonNegativeNumber);
    }

    std::vector<const char*> argv{"dirichlet"};
    for (const std::string& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : kUsage;
    }
    inv.command = app.get_subcommands().front()->get_name();
    if (app.get_subcommands().front()->count("--seed"))
        inv.seed = seed;

    try {
        ExperimentConfig cfg;
        try {
            cfg = read_experiment(IniDocument::load(inv.config));
        } catch (const ConfigError& e) {
            err << inv.config.string() << ": " << e.what() << "\n";
            return kUsage;
        }
        if (inv.seed)
            cfg.analysis.seed = static_cast<std::uint64_t>(*inv.seed);
        fs::create_directories(inv.out);

        Context ctx{inv, std::move(cfg), out, err};
        if (inv.command == "solve")
            return cmd_solve(ctx);
        if (inv.command == "sweep")
            return cmd_sweep(ctx);
        if (inv.command == "poincare")
            return cmd_poincare(ctx);
        if (inv.command == "exhaust")
            return cmd_exhaust(ctx);
        return cmd_schauder(ctx);
    } catch (const ConfigError& e) {
        err << inv.config.string() << ": " << e.what() << "\n";
        return kUsage;
    } catch (const NotConforming& e) {
        err << "NotConforming: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
}

} // namespace dirichlet::cli
