#pragma once

#include "adini/analysis.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace adini::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kAssertionFailed = 3, kSolverFailed = 4 };

/// Observed-order band asserted on a convergence study, written "norm:lo:hi"
/// with norm one of l2, h1, h2.
struct OrderBand {
  std::string norm;
  double lo = 0.0;
  double hi = 0.0;
};

/// Throws std::invalid_argument on malformed text.
OrderBand parse_order_band(const std::string& text);

struct RunConfig {
  std::string command;
  std::size_t dim = 2;
  std::size_t n = 4;
  std::vector<std::size_t> ns;
  std::string solution = "u2";
  double jitter = 0.0;
  std::uint64_t seed = 1;
  std::string mesh_file;
  std::string write_mesh;
  int quad_assembly = 4;
  int quad_error = 6;
  double tol = 1e-10;
  std::size_t maxit = 0;
  std::string out;
  std::optional<std::size_t> threads;
  std::string dump_matrix;
  std::vector<OrderBand> bands;
  std::size_t assert_pairs = 1;
  std::size_t trials = 20;
  std::size_t boxes = 5;
  bool identity19 = false;
  bool timing = true;
};

/// Throws std::invalid_argument describing the first violated constraint.
void validate(const RunConfig& config);

std::string csv_header();
/// One 17-significant-digit CSV row; orders are left empty when absent.
std::string csv_row(std::size_t dim, const ErrorRecord& record, const std::array<double, 3>* orders, double seconds);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace adini::cli
