#include "dirichlet/cli/report_io.hpp"

#include "dirichlet/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dirichlet::cli {

using nlohmann::ordered_json;

std::string format_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> cells)
{
    if (cells.size() != header_.size())
        throw Error("internal error: CSV row width does not match the header");
    rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const
{
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i)
                out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    line(header_);
    for (const auto& r : rows_)
        line(r);
    return out;
}

void CsvTable::write(const std::filesystem::path& path) const
{
    write_text(path, str());
}

CsvTable trace_table(const IterationReport& report)
{
    CsvTable t({"iter", "sup_u", "c2alpha_est", "h1_diff", "rho_i", "residual_sup"});
    for (const IterationRow& r : report.rows)
        t.add_row({std::to_string(r.i), format_number(r.sup_u), format_number(r.c2alpha_est),
                   format_number(r.h1_diff), r.rho ? format_number(*r.rho) : "", format_number(r.residual_sup)});
    return t;
}

CsvTable solution_table(const GridField& u)
{
    const Grid& g = u.grid();
    CsvTable t({"x", "y", "u"});
    for (std::size_t j = 0; j < g.ny(); ++j)
        for (std::size_t i = 0; i < g.nx(); ++i)
            t.add_row({format_number(g.x(i)), format_number(g.y(j)), format_number(u.at(i, j))});
    return t;
}

SolveSummary summarize(const IterationResult& result, const RhsSpec& spec, const RhsNorms& norms,
                       const std::string& Lambda_source)
{
    const IterationReport& rep = result.report;
    const Grid& g = result.u.grid();
    SolveSummary s;
    s.outcome = std::string(to_string(rep.outcome));
    s.iterations = rep.iterations();
    if (!rep.rows.empty()) {
        s.final_sup_u = rep.rows.back().sup_u;
        s.final_c2alpha = rep.rows.back().c2alpha_est;
        s.final_h1_diff = rep.rows.back().h1_diff;
        s.final_residual = rep.rows.back().residual_sup;
    }
    s.C_empirical = rep.C_empirical;
    s.rho_empirical_max = rep.max_rho();
    s.h = g.spacing();
    s.nx = static_cast<int>(g.nx());
    s.ny = static_cast<int>(g.ny());
    s.h_alpha = norms.h_alpha;
    s.gamma_alpha = norms.gamma_alpha;
    s.H_alpha = norms.H_alpha;
    s.Lambda_source = Lambda_source;
    if (rep.theory) {
        const ContractionAnalysis& a = *rep.theory;
        s.Lambda = a.Lambda;
        s.fixed_point = a.C;
        s.kappa = a.kappa;
        s.kappa_kind = a.kappa_kind == PoincareConstant::Slab ? "slab" : "volumetric";
        s.rho_theory = a.rho;
        s.rho_partial = a.rho_partial;
        s.K0 = a.K0;
        s.K_threshold = a.K_threshold;
        s.B = a.B;
        if (std::isfinite(rep.C_empirical)) {
            try {
                s.rho_bound_at_C_empirical = contraction_bound(spec, norms, rep.C_empirical, a.kappa).rho;
            } catch (const MissingNorm&) {
            }
        }
    }
    return s;
}

namespace {

ordered_json number(double v)
{
    if (std::isfinite(v))
        return v;
    return format_number(v);
}

ordered_json optional_number(const std::optional<double>& v)
{
    return v ? number(*v) : ordered_json(nullptr);
}

double read_number(const ordered_json& j)
{
    if (j.is_number())
        return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf")
            return INFINITY;
        if (s == "-inf")
            return -INFINITY;
        if (s == "nan")
            return NAN;
    }
    throw Error("report: expected a number, got " + j.dump());
}

std::optional<double> read_optional(const ordered_json& j)
{
    if (j.is_null())
        return std::nullopt;
    return read_number(j);
}

} // namespace

std::string summary_to_json(const SolveSummary& s)
{
    ordered_json j;
    j["outcome"] = s.outcome;
    j["iterations"] = s.iterations;
    j["final"] = {{"sup_u", number(s.final_sup_u)},
                  {"c2alpha_est", number(s.final_c2alpha)},
                  {"h1_diff", number(s.final_h1_diff)},
                  {"residual_sup", number(s.final_residual)}};
    j["empirical"] = {{"C", number(s.C_empirical)}, {"rho_max", optional_number(s.rho_empirical_max)}};
    j["grid"] = {{"h", number(s.h)}, {"nx", s.nx}, {"ny", s.ny}};
    j["data_norms"] = {{"h_alpha", optional_number(s.h_alpha)},
                       {"gamma_alpha", optional_number(s.gamma_alpha)},
                       {"H_alpha", optional_number(s.H_alpha)}};
    j["theory"] = {{"Lambda", number(s.Lambda)},
                   {"Lambda_source", s.Lambda_source},
                   {"fixed_point", optional_number(s.fixed_point)},
                   {"uniqueness_radius", optional_number(s.fixed_point)},
                   {"kappa", number(s.kappa)},
                   {"kappa_kind", s.kappa_kind},
                   {"rho", optional_number(s.rho_theory)},
                   {"rho_partial", s.rho_partial},
                   {"rho_bound_at_C_empirical", optional_number(s.rho_bound_at_C_empirical)},
                   {"K0", optional_number(s.K0)},
                   {"K_threshold", optional_number(s.K_threshold)},
                   {"B", optional_number(s.B)}};
    return j.dump(2) + "\n";
}

SolveSummary summary_from_json(const std::string& text)
{
    ordered_json j;
    try {
        j = ordered_json::parse(text);
        SolveSummary s;
        s.outcome = j.at("outcome").get<std::string>();
        s.iterations = j.at("iterations").get<int>();
        const auto& f = j.at("final");
        s.final_sup_u = read_number(f.at("sup_u"));
        s.final_c2alpha = read_number(f.at("c2alpha_est"));
        s.final_h1_diff = read_number(f.at("h1_diff"));
        s.final_residual = read_number(f.at("residual_sup"));
        s.C_empirical = read_number(j.at("empirical").at("C"));
        s.rho_empirical_max = read_optional(j.at("empirical").at("rho_max"));
        s.h = read_number(j.at("grid").at("h"));
        s.nx = j.at("grid").at("nx").get<int>();
        s.ny = j.at("grid").at("ny").get<int>();
        const auto& dn = j.at("data_norms");
        s.h_alpha = read_optional(dn.at("h_alpha"));
        s.gamma_alpha = read_optional(dn.at("gamma_alpha"));
        s.H_alpha = read_optional(dn.at("H_alpha"));
        const auto& t = j.at("theory");
        s.Lambda = read_number(t.at("Lambda"));
        s.Lambda_source = t.at("Lambda_source").get<std::string>();
        s.fixed_point = read_optional(t.at("fixed_point"));
        s.kappa = read_number(t.at("kappa"));
        s.kappa_kind = t.at("kappa_kind").get<std::string>();
        s.rho_theory = read_optional(t.at("rho"));
        s.rho_partial = t.at("rho_partial").get<bool>();
        s.rho_bound_at_C_empirical = read_optional(t.at("rho_bound_at_C_empirical"));
        s.K0 = read_optional(t.at("K0"));
        s.K_threshold = read_optional(t.at("K_threshold"));
        s.B = read_optional(t.at("B"));
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("report: ") + e.what());
    }
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error("cannot write " + path.string());
    out << text;
    if (!out)
        throw Error("write failed for " + path.string());
}

} // namespace dirichlet::cli
