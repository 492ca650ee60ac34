#include "dirichlet/cli/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

namespace dirichlet::cli {

namespace {

const std::set<std::string> kSections{"domain",   "grid",     "rhs",      "boundary", "iteration",
                                      "analysis", "sweep",    "exhaust",  "schauder", "poincare"};

/// Typed access to one section; every key must be consumed.
class Reader {
public:
    Reader(const IniDocument& doc, const std::string& name) : section_(doc.section(name)), name_(name) {}

    bool present() const { return section_ != nullptr; }
    int line() const { return section_ ? section_->line : 0; }

    const IniEntry* entry(const std::string& key)
    {
        if (!section_)
            return nullptr;
        used_.insert(key);
        const auto it = section_->entries.find(key);
        return it == section_->entries.end() ? nullptr : &it->second;
    }

    std::optional<std::string> text(const std::string& key)
    {
        const IniEntry* e = entry(key);
        if (!e)
            return std::nullopt;
        if (e->value.empty())
            throw ConfigError(e->line, "empty value for '" + key + "'");
        return e->value;
    }

    std::optional<double> number(const std::string& key)
    {
        const IniEntry* e = entry(key);
        if (!e)
            return std::nullopt;
        return parse_number(*e, key);
    }

    double number(const std::string& key, double fallback) { return number(key).value_or(fallback); }

    std::optional<int> integer(const std::string& key)
    {
        const IniEntry* e = entry(key);
        if (!e)
            return std::nullopt;
        int v = 0;
        const char* end = e->value.data() + e->value.size();
        const auto [ptr, ec] = std::from_chars(e->value.data(), end, v);
        if (ec != std::errc() || ptr != end)
            throw ConfigError(e->line, "expected an integer for '" + key + "', got '" + e->value + "'");
        return v;
    }

    int integer(const std::string& key, int fallback) { return integer(key).value_or(fallback); }

    std::optional<Expression> expression(const std::string& key)
    {
        const IniEntry* e = entry(key);
        if (!e)
            return std::nullopt;
        try {
            return Expression::parse(e->value);
        } catch (const ExpressionError& err) {
            throw ConfigError(e->line, "in expression for '" + key + "': " + err.what());
        }
    }

    std::vector<double> numbers(const IniEntry& e, const std::string& key)
    {
        std::vector<double> out;
        std::size_t pos = 0;
        const std::string& v = e.value;
        while (pos < v.size()) {
            auto comma = v.find(',', pos);
            if (comma == std::string::npos)
                comma = v.size();
            std::string item = v.substr(pos, comma - pos);
            item.erase(0, item.find_first_not_of(" \t"));
            item.erase(item.find_last_not_of(" \t") + 1);
            out.push_back(parse_number(IniEntry{item, e.line}, key));
            pos = comma + 1;
        }
        return out;
    }

    /// Rejects keys nobody asked for.
    void finish() const
    {
        if (!section_)
            return;
        for (const auto& [key, e] : section_->entries)
            if (!used_.count(key))
                throw ConfigError(e.line, "unknown key '" + key + "' in [" + name_ + "]");
    }

    [[noreturn]] void fail(const std::string& key, const std::string& message)
    {
        const IniEntry* e = entry(key);
        throw ConfigError(e ? e->line : line(), message);
    }

private:
    static double parse_number(const IniEntry& e, const std::string& key)
    {
        double v = 0.0;
        const char* begin = e.value.data();
        const char* end = begin + e.value.size();
        if (begin != end && *begin == '+')
            ++begin;
        const auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc() || ptr != end || begin == end)
            throw ConfigError(e.line, "expected a number for '" + key + "', got '" + e.value + "'");
        return v;
    }

    const IniSection* section_;
    std::string name_;
    std::set<std::string> used_;
};

void read_domain(Reader& r, ExperimentConfig& cfg)
{
    const std::string kind = r.text("kind").value_or("rectangle");
    if (kind == "rectangle") {
        const double a = r.number("a", 1.0), b = r.number("b", 1.0);
        if (!(a > 0.0) || !(b > 0.0))
            r.fail("a", "rectangle extents must be positive");
        cfg.domain = Domain::rectangle(a, b);
    } else if (kind == "strip") {
        const double d = r.number("d", 1.0);
        const double n = r.number("n_trunc", 4.0);
        if (!(d > 0.0))
            r.fail("d", "strip width must be positive");
        if (!(n > 0.0))
            r.fail("n_trunc", "truncation half-length must be positive");
        cfg.domain = Domain::strip_truncation(d, n);
    } else {
        r.fail("kind", "domain kind must be 'rectangle' or 'strip', got '" + kind + "'");
    }
}

void read_rhs(Reader& r, ExperimentConfig& cfg)
{
    if (!r.present())
        throw ConfigError(0, "missing [rhs] section");
    RhsBlock& rhs = cfg.rhs;
    rhs.line = r.line();
    const auto variant = r.text("variant");
    if (!variant)
        throw ConfigError(r.line(), "[rhs] needs 'variant'");
    if (*variant == "grad_lipschitz") {
        rhs.kind = RhsKind::GradLipschitz;
        rhs.h = r.expression("h").value_or(Expression::constant(0.0));
        const auto K = r.number("K");
        if (!K)
            throw ConfigError(r.line(), "grad_lipschitz needs 'K'");
        rhs.K = *K;
        rhs.m = r.number("m", 2.0);
    } else if (*variant == "gamma_g") {
        rhs.kind = RhsKind::GammaG;
        const auto gamma = r.expression("gamma");
        if (!gamma)
            throw ConfigError(r.line(), "gamma_g needs 'gamma'");
        rhs.gamma = *gamma;
        rhs.h = r.expression("h").value_or(Expression::constant(0.0));
        rhs.m = r.number("m", 2.0);
        rhs.k = r.number("k", 1.0);
    } else if (*variant == "mean_curvature") {
        rhs.kind = RhsKind::MeanCurvature;
        const auto H = r.expression("H");
        if (!H)
            throw ConfigError(r.line(), "mean_curvature needs 'H'");
        rhs.H = *H;
        rhs.n = r.integer("n", 2);
    } else {
        r.fail("variant", "unknown rhs variant '" + *variant + "'");
    }
    // Fail early on parameters the builders reject.
    try {
        make_rhs(rhs);
    } catch (const InvalidArgument& e) {
        throw ConfigError(rhs.line, std::string("[rhs] ") + e.what());
    }
}

void read_iteration(Reader& r, ExperimentConfig& cfg)
{
    IterationConfig& it = cfg.iteration;
    it.max_iters = r.integer("max_iters", it.max_iters);
    it.h1_tol = r.number("h1_tol", it.h1_tol);
    it.blowup_sup = r.number("blowup_sup", it.blowup_sup);
    it.growth_window = r.integer("growth_window", it.growth_window);
    const std::string start = r.text("start").value_or("zero");
    if (start == "zero")
        it.start = StartKind::Zero;
    else if (start == "lift")
        it.start = StartKind::BoundaryLift;
    else
        r.fail("start", "start must be 'zero' or 'lift'");
}

void read_analysis(Reader& r, ExperimentConfig& cfg)
{
    AnalysisBlock& a = cfg.analysis;
    a.norms.alpha = r.number("alpha", a.norms.alpha);
    const int budget = r.integer("pair_budget", 0);
    if (budget < 0)
        r.fail("pair_budget", "pair_budget must be nonnegative");
    a.norms.pair_budget = static_cast<std::size_t>(budget);
    if (const auto L = r.text("Lambda"); L && *L != "estimate") {
        a.Lambda = r.number("Lambda");
        if (!(*a.Lambda > 0.0))
            r.fail("Lambda", "Lambda must be positive");
    }
    a.trials = r.integer("trials", a.trials);
    if (a.trials < 1)
        r.fail("trials", "trials must be at least 1");
    const int seed = r.integer("seed", 1);
    if (seed < 0)
        r.fail("seed", "seed must be nonnegative");
    a.seed = static_cast<std::uint64_t>(seed);
    const std::string kappa = r.text("poincare").value_or("slab");
    if (kappa == "slab")
        a.kappa_kind = PoincareConstant::Slab;
    else if (kappa == "volumetric")
        a.kappa_kind = PoincareConstant::Volumetric;
    else
        r.fail("poincare", "poincare must be 'slab' or 'volumetric'");
}

void read_sweep(Reader& r, ExperimentConfig& cfg)
{
    if (!r.present())
        return;
    SweepBlock s;
    s.line = r.line();
    const auto p = r.text("parameter");
    if (!p)
        throw ConfigError(r.line(), "[sweep] needs 'parameter'");
    if (*p == "K")
        s.parameter = SweepParameter::K;
    else if (*p == "H_amplitude")
        s.parameter = SweepParameter::HAmplitude;
    else if (*p == "gamma_sup")
        s.parameter = SweepParameter::GammaSup;
    else
        r.fail("parameter", "sweep parameter must be K, H_amplitude or gamma_sup");
    const IniEntry* values = r.entry("values");
    if (!values)
        throw ConfigError(r.line(), "[sweep] needs 'values'");
    if (values->value.empty())
        throw ConfigError(values->line, "sweep values list is empty");
    s.values = r.numbers(*values, "values");
    if (!std::is_sorted(s.values.begin(), s.values.end()))
        throw ConfigError(values->line, "sweep values must be sorted ascending");
    cfg.sweep = std::move(s);
}

void read_exhaust(Reader& r, ExperimentConfig& cfg)
{
    if (!r.present())
        return;
    ExhaustBlock e;
    e.line = r.line();
    e.d = r.number("d", cfg.domain.kind() == DomainKind::StripTruncation ? cfg.domain.strip_width() : 1.0);
    e.n_start = r.integer("n_start", e.n_start);
    e.n_max = r.integer("n_max", e.n_max);
    e.N = r.number("N", e.N);
    e.compact_tol = r.number("compact_tol", e.compact_tol);
    cfg.exhaust = e;
}

void read_schauder(Reader& r, ExperimentConfig& cfg)
{
    if (const IniEntry* e = r.entry("n_list")) {
        for (double v : r.numbers(*e, "n_list")) {
            if (v < 1 || v != std::floor(v))
                throw ConfigError(e->line, "n_list entries must be positive integers");
            cfg.schauder.n_list.push_back(static_cast<int>(v));
        }
    }
    cfg.schauder.d = r.number("d");
    cfg.schauder.trials = r.integer("trials");
}

void read_poincare(Reader& r, ExperimentConfig& cfg)
{
    cfg.poincare.extra = r.expression("extra");
    cfg.poincare.random_fields = r.integer("random_fields", cfg.poincare.random_fields);
    if (cfg.poincare.random_fields < 0)
        r.fail("random_fields", "random_fields must be nonnegative");
}

PointFunction as_function(const Expression& e)
{
    return [e](double x, double y) { return e(x, y); };
}

double grid_sup(const Expression& e, const Grid& g)
{
    double s = 0.0;
    for (std::size_t j = 0; j < g.ny(); ++j)
        for (std::size_t i = 0; i < g.nx(); ++i)
            s = std::max(s, std::abs(e(g.x(i), g.y(j))));
    return s;
}

} // namespace

ExperimentConfig read_experiment(const IniDocument& doc)
{
    for (const IniSection& s : doc.sections())
        if (!kSections.count(s.name))
            throw ConfigError(s.line, "unknown section [" + s.name + "]");

    ExperimentConfig cfg;
    Reader domain(doc, "domain"), grid(doc, "grid"), rhs(doc, "rhs"), boundary(doc, "boundary"),
        iteration(doc, "iteration"), analysis(doc, "analysis"), sweep(doc, "sweep"), exhaust(doc, "exhaust"),
        schauder(doc, "schauder"), poincare(doc, "poincare");

    read_domain(domain, cfg);
    cfg.h = grid.number("h", cfg.h);
    if (!(cfg.h > 0.0))
        grid.fail("h", "grid spacing must be positive");
    read_rhs(rhs, cfg);
    cfg.boundary = boundary.expression("phi");
    read_iteration(iteration, cfg);
    read_analysis(analysis, cfg);
    read_sweep(sweep, cfg);
    read_exhaust(exhaust, cfg);
    read_schauder(schauder, cfg);
    read_poincare(poincare, cfg);

    for (Reader* r : {&domain, &grid, &rhs, &boundary, &iteration, &analysis, &sweep, &exhaust, &schauder, &poincare})
        r->finish();
    try {
        cfg.iteration.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError(iteration.line(), std::string("[iteration] ") + e.what());
    }
    return cfg;
}

RhsSpec make_rhs(const RhsBlock& rhs)
{
    switch (rhs.kind) {
    case RhsKind::GradLipschitz:
        return make_grad_lipschitz(as_function(rhs.h), rhs.K, rhs.m);
    case RhsKind::GammaG:
        return make_gamma_g(as_function(rhs.gamma), as_function(rhs.h), rhs.m, rhs.k);
    case RhsKind::MeanCurvature:
        return make_mean_curvature(as_function(rhs.H), rhs.n);
    }
    throw InvalidArgument("unknown rhs variant");
}

RhsBlock with_sweep_value(const RhsBlock& rhs, SweepParameter p, double value, const Grid& grid)
{
    RhsBlock out = rhs;
    switch (p) {
    case SweepParameter::K:
        if (rhs.kind != RhsKind::GradLipschitz)
            throw InvalidArgument("sweeping K needs the grad_lipschitz variant");
        out.K = value;
        break;
    case SweepParameter::HAmplitude: {
        if (rhs.kind != RhsKind::MeanCurvature)
            throw InvalidArgument("sweeping H_amplitude needs the mean_curvature variant");
        const double s = grid_sup(rhs.H, grid);
        if (!(s > 0.0))
            throw InvalidArgument("H vanishes on the grid; nothing to rescale");
        out.H = rhs.H.scaled(value / s);
        break;
    }
    case SweepParameter::GammaSup: {
        if (rhs.kind != RhsKind::GammaG)
            throw InvalidArgument("sweeping gamma_sup needs the gamma_g variant");
        const double s = grid_sup(rhs.gamma, grid);
        if (!(s > 0.0))
            throw InvalidArgument("gamma vanishes on the grid; nothing to rescale");
        out.gamma = rhs.gamma.scaled(value / s);
        break;
    }
    }
    return out;
}

IterationConfig make_iteration(const ExperimentConfig& cfg, const GridPtr& grid)
{
    IterationConfig it = cfg.iteration;
    it.norms = cfg.analysis.norms;
    it.boundary = cfg.boundary ? BoundarySpec::prescribed(GridField::sample(grid, as_function(*cfg.boundary)))
                               : BoundarySpec::homogeneous();
    return it;
}

std::string to_string(SweepParameter p)
{
    switch (p) {
    case SweepParameter::K:
        return "K";
    case SweepParameter::HAmplitude:
        return "H_amplitude";
    case SweepParameter::GammaSup:
        return "gamma_sup";
    }
    return "unknown";
}

} // namespace dirichlet::cli
