#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "rtmixed/errors.hpp"
#include "rtmixed/mesh.hpp"
#include "rtmixed/solver.hpp"

namespace rtmixed {

enum class ExampleId { Convex, LShape, SmootherRect, SmootherLShape };

ExampleId parse_example(std::string_view name);
std::string_view to_string(ExampleId id);

struct ExampleSetup {
  Domain domain;
  double alpha;
};

/// Domain and singular exponent of each experiment: -0.4999 for the rough data,
/// -1/3 for the H^{1/6-eps} data.
ExampleSetup example_setup(ExampleId id);

/// Predicted u-rate t + s - 1/2 with the regularity index s (1 on the convex
/// rectangle, pi / (3 pi / 2) = 2/3 on the L-shape) and data smoothness t (0
/// or 1/6), with every epsilon set to zero.
struct ExpectedRate {
  double s;
  double t;

  double predicted() const { return t + s - 0.5; }
};

ExpectedRate expected_rate(ExampleId id);
double predict_rate(ExampleId id);

struct ExperimentConfig {
  ExampleId example = ExampleId::Convex;
  std::vector<int> levels{2, 4, 8, 16, 32, 64, 128};
  /// Fine level of the sigma reference; 0 skips the sigma errors.
  int sigma_ref_n = 512;
  /// CSV goes to out_dir / "example_<id>.csv" when set.
  std::filesystem::path out_dir;
  SolverConfig solver;
};

/// Throws Error unless levels are strictly increasing powers of two and
/// sigma_ref_n is 0 or a multiple of every level.
void validate(const ExperimentConfig& cfg);

/// Progress callback: (level, message).
using ProgressFn = std::function<void(int, const std::string&)>;

/// Mesh, assemble, solve and measure each level. Errors are rethrown tagged
/// with the failing level.
ConvergenceReport run_example(const ExperimentConfig& cfg, const ProgressFn& progress = {});

struct ComparisonResult {
  std::filesystem::path mixed_csv;
  std::filesystem::path p1_csv;
  int mixed_rows = 0;
  int p1_rows = 0;
  /// max |P1 nodal value| over vertices within 2/n of the origin.
  double p1_peak_near_origin = 0.0;
  /// max |u_h| over cells with a vertex at the origin.
  double mixed_peak_near_origin = 0.0;
};

/// Mixed solution and P1 solution with L^2(Gamma)-projected data on the same
/// mesh, written as mixed_<domain>_n<N>.csv (cx,cy,u) and
/// p1_<domain>_n<N>.csv (x,y,u).
ComparisonResult compare_p1(Domain domain, int n, double alpha, const std::filesystem::path& out_dir,
                            const SolverConfig& cfg = {});

/// Same with explicit boundary data (used for the zero-data check).
ComparisonResult compare_p1(Domain domain, int n, const BoundaryData& g,
                            const std::filesystem::path& out_dir, const SolverConfig& cfg = {});

}  // namespace rtmixed
