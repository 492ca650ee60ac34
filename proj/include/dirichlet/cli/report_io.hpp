#pragma once

#include "dirichlet/iteration.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace dirichlet::cli {

/// 17 significant digits; non-finite values as inf, -inf, nan.
std::string format_number(double v);

/// Minimal CSV writer: header first, then rows of preformatted cells.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);
    void add_row(std::vector<std::string> cells);
    std::string str() const;
    void write(const std::filesystem::path& path) const;
    std::size_t rows() const noexcept { return rows_.size(); }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

CsvTable trace_table(const IterationReport& report);
CsvTable solution_table(const GridField& u);

/// Everything report.json carries.
struct SolveSummary {
    std::string outcome;
    int iterations = 0;
    double final_sup_u = 0.0;
    double final_c2alpha = 0.0;
    double final_h1_diff = 0.0;
    double final_residual = 0.0;
    double C_empirical = 0.0;
    std::optional<double> rho_empirical_max;
    double h = 0.0;
    int nx = 0;
    int ny = 0;
    double Lambda = 0.0;
    std::string Lambda_source;
    std::optional<double> h_alpha;
    std::optional<double> gamma_alpha;
    std::optional<double> H_alpha;
    std::optional<double> fixed_point; ///< t*, also the uniqueness radius
    double kappa = 0.0;
    std::string kappa_kind;
    std::optional<double> rho_theory;
    bool rho_partial = false;
    std::optional<double> rho_bound_at_C_empirical;
    std::optional<double> K0;
    std::optional<double> K_threshold;
    std::optional<double> B;

    bool operator==(const SolveSummary&) const = default;
};

SolveSummary summarize(const IterationResult& result, const RhsSpec& spec, const RhsNorms& norms,
                       const std::string& Lambda_source);

std::string summary_to_json(const SolveSummary& s);
/// Inverse of summary_to_json; throws Error on malformed input.
SolveSummary summary_from_json(const std::string& text);

void write_text(const std::filesystem::path& path, const std::string& text);

} // namespace dirichlet::cli
