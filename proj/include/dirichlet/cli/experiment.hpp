#pragma once

#include "dirichlet/cli/expression.hpp"
#include "dirichlet/cli/ini.hpp"
#include "dirichlet/iteration.hpp"
#include "dirichlet/nonlinearity.hpp"
#include "dirichlet/slab.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dirichlet::cli {

enum class RhsKind { GradLipschitz, GammaG, MeanCurvature };

struct RhsBlock {
    RhsKind kind = RhsKind::GradLipschitz;
    Expression h = Expression::constant(0.0);
    Expression gamma = Expression::constant(0.0);
    Expression H = Expression::constant(0.0);
    double K = 0.0;
    double m = 2.0;
    double k = 1.0;
    int n = 2;
    int line = 0;
};

struct AnalysisBlock {
    NormConfig norms;
    std::optional<double> Lambda; ///< absent: estimate it
    int trials = 8;
    std::uint64_t seed = 1;
    PoincareConstant kappa_kind = PoincareConstant::Slab;
};

enum class SweepParameter { K, HAmplitude, GammaSup };

struct SweepBlock {
    SweepParameter parameter = SweepParameter::K;
    std::vector<double> values;
    int line = 0;
};

struct ExhaustBlock {
    double d = 1.0;
    int n_start = 3;
    int n_max = 8;
    double N = 2.0;
    double compact_tol = 1e-6;
    int line = 0;
};

struct SchauderBlock {
    std::vector<int> n_list; ///< empty: the configured domain
    std::optional<double> d;
    std::optional<int> trials;
};

struct PoincareBlock {
    std::optional<Expression> extra;
    int random_fields = 12;
};

struct ExperimentConfig {
    Domain domain = Domain::rectangle(1.0, 1.0);
    double h = 1.0 / 32;
    RhsBlock rhs;
    std::optional<Expression> boundary;
    IterationConfig iteration; ///< boundary left homogeneous; see make_iteration
    AnalysisBlock analysis;
    std::optional<SweepBlock> sweep;
    std::optional<ExhaustBlock> exhaust;
    SchauderBlock schauder;
    PoincareBlock poincare;
};

/// Reads and validates every section; throws ConfigError with the line of
/// the offending entry.
ExperimentConfig read_experiment(const IniDocument& doc);

RhsSpec make_rhs(const RhsBlock& rhs);

/// The rhs with the swept parameter set to `value`. K replaces the Lipschitz
/// constant; H_amplitude and gamma_sup rescale the data expression so its
/// sup over the grid nodes equals `value`.
RhsBlock with_sweep_value(const RhsBlock& rhs, SweepParameter p, double value, const Grid& grid);

IterationConfig make_iteration(const ExperimentConfig& cfg, const GridPtr& grid);

std::string to_string(SweepParameter p);

} // namespace dirichlet::cli
