#include "adini/cli.hpp"

#include "adini/lemmas.hpp"
#include "adini/parallel.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace adini::cli {

namespace {

constexpr double kIdentityTolerance = 1e-8;
constexpr double kMaxJitter = 0.45;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::size_t order_slot(const std::string& norm) {
  if (norm == "l2") return 0;
  if (norm == "h1") return 1;
  if (norm == "h2") return 2;
  throw std::invalid_argument("unknown norm '" + norm + "' (expected l2, h1 or h2)");
}

std::optional<std::size_t> env_threads() {
  const char* v = std::getenv("ADINI_THREADS");
  if (v == nullptr || *v == '\0') return std::nullopt;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 1) throw std::invalid_argument("ADINI_THREADS must be a positive integer");
  return static_cast<std::size_t>(n);
}

BoxMesh build_mesh(const RunConfig& c, std::size_t n) {
  const RationalVector lo(c.dim, 0), hi(c.dim, 1);
  const std::vector<std::size_t> counts(c.dim, n);
  if (c.jitter > 0.0) return graded_mesh(lo, hi, counts, c.seed, c.jitter);
  return uniform_mesh(lo, hi, counts);
}

ProblemOptions problem_options(const RunConfig& c) {
  ProblemOptions o;
  o.quad_assembly = c.quad_assembly;
  o.quad_error = c.quad_error;
  o.cg.tol = c.tol;
  o.cg.maxit = c.maxit;
  return o;
}

// Output goes to --out when given, else to the command's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::invalid_argument("cannot open output file '" + path + "'");
    }
    os_ = path.empty() ? &fallback : &file_;
  }
  std::ostream& stream() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_solve(RunConfig c, std::ostream& out, std::ostream& err) {
  std::optional<BoxMesh> mesh;
  if (!c.mesh_file.empty()) {
    std::ifstream in(c.mesh_file);
    if (!in) throw std::invalid_argument("cannot open mesh file '" + c.mesh_file + "'");
    try {
      mesh = read_mesh(in);
    } catch (const std::exception& e) {
      throw std::invalid_argument(e.what());
    }
    c.dim = mesh->dim();
    validate(c);
    if (mesh->interior_vertex_count() == 0) throw std::invalid_argument("no free DOFs: the mesh has no interior vertex");
  } else {
    mesh = build_mesh(c, c.n);
  }
  if (!c.write_mesh.empty()) {
    std::ofstream os(c.write_mesh);
    if (!os) throw std::invalid_argument("cannot open mesh output '" + c.write_mesh + "'");
    write_mesh(os, *mesh);
  }
  FieldPtr u = make_solution(c.solution, c.dim);
  const ProblemOptions options = problem_options(c);
  if (!c.dump_matrix.empty()) {
    std::ofstream os(c.dump_matrix);
    if (!os) throw std::invalid_argument("cannot open matrix output '" + c.dump_matrix + "'");
    const DofMap dofs(*mesh);
    const ShapeCache cache(c.dim, gauss_rule(c.quad_assembly));
    dump_matrix(os, assemble(*mesh, dofs, cache));
  }
  Sink sink(c.out, out);
  const auto t0 = std::chrono::steady_clock::now();
  const ErrorRecord r = run_case(u, *mesh, options);
  const double secs = c.timing ? seconds_since(t0) : 0.0;
  sink.stream() << csv_header() << '\n' << csv_row(c.dim, r, nullptr, secs) << '\n';
  (void)err;
  return kOk;
}

int cmd_convergence(const RunConfig& c, std::ostream& out, std::ostream& err) {
  FieldPtr u = make_solution(c.solution, c.dim);
  const ProblemOptions options = problem_options(c);
  std::vector<ErrorRecord> records;
  std::vector<double> seconds;
  for (std::size_t n : c.ns) {
    const auto t0 = std::chrono::steady_clock::now();
    records.push_back(run_case(u, build_mesh(c, n), options));
    seconds.push_back(c.timing ? seconds_since(t0) : 0.0);
  }
  const RateTable table = rate_table(records);
  Sink sink(c.out, out);
  sink.stream() << csv_header() << '\n';
  for (std::size_t i = 0; i < table.records.size(); ++i)
    sink.stream() << csv_row(c.dim, table.records[i], i == 0 ? nullptr : &table.orders[i - 1], seconds[i]) << '\n';

  int code = kOk;
  const std::size_t pairs = table.orders.size();
  const std::size_t first = pairs - std::min(pairs, c.assert_pairs);
  for (const OrderBand& band : c.bands) {
    const std::size_t slot = order_slot(band.norm);
    for (std::size_t p = first; p < pairs; ++p) {
      const double order = table.orders[p][slot];
      if (!(order >= band.lo && order <= band.hi)) {
        err << "order assertion failed: " << band.norm << " order " << format_double(order) << " between N="
            << c.ns[p] << " and N=" << c.ns[p + 1] << " outside [" << band.lo << ", " << band.hi << "]\n";
        code = kAssertionFailed;
      }
    }
  }
  return code;
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream&) {
  Sink sink(c.out, out);
  std::ostream& os = sink.stream();
  bool ok = true;
  const auto reports = verify_element_suite(c.dim, c.trials, c.boxes, c.seed);
  for (const LemmaReport& r : reports) {
    ok = ok && r.passed();
    os << (r.passed() ? "PASS " : "FAIL ") << r.name << " (" << (r.checks - r.failures) << "/" << r.checks << ")";
    if (!r.passed() && !r.witness.empty()) os << " witness: " << r.witness;
    os << '\n';
  }
  if (c.identity19) {
    FieldPtr u = make_solution(c.solution, c.dim);
    if (u->polynomial() == nullptr)
      throw std::invalid_argument("identity check needs a polynomial solution (u2 or a polynomial file)");
    const Identity19Report r = identity19_check(u, build_mesh(c, c.n), problem_options(c));
    const bool pass = r.residual <= kIdentityTolerance;
    ok = ok && pass;
    os << (pass ? "PASS " : "FAIL ") << "error identity N=" << c.n << " residual " << format_double(r.residual)
       << " (lhs " << format_double(r.lhs) << ", rhs " << format_double(r.rhs) << ")\n";
  }
  return ok ? kOk : kAssertionFailed;
}

}  // namespace

OrderBand parse_order_band(const std::string& text) {
  std::istringstream is(text);
  OrderBand b;
  std::string lo, hi;
  if (!std::getline(is, b.norm, ':') || !std::getline(is, lo, ':') || !std::getline(is, hi) || lo.empty() || hi.empty())
    throw std::invalid_argument("order band '" + text + "' is not of the form norm:lo:hi");
  order_slot(b.norm);
  try {
    std::size_t used = 0;
    b.lo = std::stod(lo, &used);
    if (used != lo.size()) throw std::invalid_argument(lo);
    b.hi = std::stod(hi, &used);
    if (used != hi.size()) throw std::invalid_argument(hi);
  } catch (const std::exception&) {
    throw std::invalid_argument("order band '" + text + "' has non-numeric bounds");
  }
  if (!(b.lo <= b.hi)) throw std::invalid_argument("order band '" + text + "' has lo > hi");
  return b;
}

void validate(const RunConfig& c) {
  if (c.dim < 1 || c.dim > 3) throw std::invalid_argument("--d must be 1, 2 or 3");
  if (!(c.jitter >= 0.0 && c.jitter <= kMaxJitter)) throw std::invalid_argument("--jitter must lie in [0, 0.45]");
  if (c.quad_assembly < 1 || c.quad_assembly > kMaxGaussPoints || c.quad_error < 1 || c.quad_error > kMaxGaussPoints)
    throw std::invalid_argument("quadrature orders must lie in [1, 16]");
  if (!(c.tol > 0.0)) throw std::invalid_argument("--tol must be positive");
  if (c.command == "solve" && c.mesh_file.empty() && c.n < 2)
    throw std::invalid_argument("no free DOFs: --N must be at least 2 so the mesh has an interior vertex");
  if (c.command == "convergence") {
    if (c.ns.size() < 2) throw std::invalid_argument("--Ns needs at least two mesh levels");
    for (std::size_t i = 0; i < c.ns.size(); ++i) {
      if (c.ns[i] < 2) throw std::invalid_argument("every N in --Ns must be at least 2");
      if (i > 0 && c.ns[i] <= c.ns[i - 1]) throw std::invalid_argument("--Ns must be strictly increasing");
    }
    if (c.assert_pairs < 1) throw std::invalid_argument("--assert-pairs must be at least 1");
  }
  if (c.command == "verify") {
    if (c.trials < 1 || c.boxes < 1) throw std::invalid_argument("--trials and --boxes must be positive");
    if (c.identity19 && c.n < 2) throw std::invalid_argument("no free DOFs: --N must be at least 2");
  }
  if (c.threads && *c.threads < 1) throw std::invalid_argument("--threads must be positive");
}

std::string csv_header() { return "d,N,h,dofs,l2_err,h1_err,h2_err,l2_order,h1_order,h2_order,cg_iters,seconds"; }

std::string csv_row(std::size_t dim, const ErrorRecord& r, const std::array<double, 3>* orders, double seconds) {
  std::ostringstream os;
  os << dim << ',' << r.n << ',' << format_double(r.h) << ',' << r.dofs << ',' << format_double(r.l2) << ','
     << format_double(r.h1) << ',' << format_double(r.h2);
  for (std::size_t k = 0; k < 3; ++k) {
    os << ',';
    if (orders) os << format_double((*orders)[k]);
  }
  os << ',' << r.report.iterations << ',' << format_double(seconds);
  return os.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  std::vector<std::string> bands;

  CLI::App app{"Adini finite elements for the clamped biharmonic problem on box meshes"};
  app.require_subcommand(1);
  auto common = [&](CLI::App* sub) {
    sub->add_option("--d", c.dim, "space dimension (1, 2 or 3)");
    sub->add_option("--u", c.solution, "exact solution: u1, u2 or a polynomial file");
    sub->add_option("--jitter", c.jitter, "breakpoint jitter fraction in [0, 0.45]");
    sub->add_option("--seed", c.seed, "random seed");
    sub->add_option("--quad-assembly", c.quad_assembly, "Gauss points per axis for assembly");
    sub->add_option("--quad-error", c.quad_error, "Gauss points per axis for error integrals");
    sub->add_option("--tol", c.tol, "CG relative residual tolerance");
    sub->add_option("--maxit", c.maxit, "CG iteration cap (default 50 sqrt(n))");
    sub->add_option("--out", c.out, "write output to this file instead of stdout");
    sub->add_option("--threads", c.threads, "worker threads (default: ADINI_THREADS or all cores)");
    sub->add_flag("--no-timing{false}", c.timing, "write 0 in the seconds column");
  };

  CLI::App* solve = app.add_subcommand("solve", "solve on one mesh and report the errors");
  common(solve);
  solve->add_option("--N", c.n, "cells per axis");
  solve->add_option("--mesh-file", c.mesh_file, "read the mesh from a file");
  solve->add_option("--write-mesh", c.write_mesh, "write the mesh used to a file");
  solve->add_option("--dump-matrix", c.dump_matrix, "write the stiffness matrix in coordinate format");

  CLI::App* conv = app.add_subcommand("convergence", "run a refinement study and report observed orders");
  common(conv);
  conv->add_option("--Ns", c.ns, "comma-separated cells per axis, increasing")->delimiter(',');
  conv->add_option("--assert-orders", bands, "order band norm:lo:hi (repeatable)")->delimiter(',');
  conv->add_option("--assert-pairs", c.assert_pairs, "number of finest mesh pairs the bands apply to");

  CLI::App* verify = app.add_subcommand("verify", "run the exact element checks");
  common(verify);
  verify->add_option("--trials", c.trials, "random inputs per box");
  verify->add_option("--boxes", c.boxes, "random rational boxes");
  verify->add_flag("--identity19", c.identity19, "also check the error identity on a unit mesh");
  verify->add_option("--N", c.n, "cells per axis for the error identity");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    c.command = solve->parsed() ? "solve" : conv->parsed() ? "convergence" : "verify";
    for (const auto& b : bands) c.bands.push_back(parse_order_band(b));
    if (!c.threads) c.threads = env_threads();
    if (c.threads) set_thread_count(*c.threads);
    validate(c);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    if (c.command == "solve") return cmd_solve(c, out, err);
    if (c.command == "convergence") return cmd_convergence(c, out, err);
    return cmd_verify(c, out, err);
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what() << '\n';
    return kSolverFailed;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace adini::cli
