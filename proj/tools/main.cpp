#include <fovgmres/bounds.hpp>
#include <fovgmres/cdr.hpp>
#include <fovgmres/config.hpp>
#include <fovgmres/csv.hpp>
#include <fovgmres/deflation.hpp>
#include <fovgmres/errors.hpp>
#include <fovgmres/fov.hpp>
#include <fovgmres/gmres.hpp>
#include <fovgmres/matrix_market.hpp>
#include <fovgmres/preconditioner.hpp>
#include <fovgmres/svg.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using namespace fovgmres;

namespace {

constexpr Real kSpectralSetConstant = 2.414213562373095;  // 1 + sqrt(2)

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p);
  if (!out) throw IoError("cannot open " + p.string() + " for writing");
  return out;
}

AssembledProblem make_problem(const RunConfig& cfg) {
  if (!cfg.problem_load_dir.empty()) {
    const fs::path dir = cfg.problem_load_dir;
    AssembledProblem p;
    p.A = read_matrix_market((dir / "A.mtx").string());
    p.M = read_matrix_market((dir / "M.mtx").string());
    p.N = read_matrix_market((dir / "N.mtx").string());
    p.b = read_vector((dir / "b.vec").string()).cast<Complex>();
    p.n = p.A.rows();
    p.spec = cfg.problem;
    if (p.M.rows() != p.n || p.N.rows() != p.n || p.b.size() != p.n)
      throw DimensionMismatch("loaded problem files disagree on the dimension");
    return p;
  }
  return build_cdr(cfg.problem);
}

struct DeflationBundle {
  std::optional<DeflationOperator> op;
  Real tau = 0.0;
  bool exact_hypothesis = true;
  std::optional<SpectralDeflationSpace> space;
};

DeflationBundle make_deflation(const RunConfig& cfg, const AssembledProblem& problem,
                               const PreconditionerSetup& setup) {
  DeflationBundle out;
  if (!cfg.deflation_load_y.empty() || !cfg.deflation_load_z.empty()) {
    if (cfg.deflation_load_y.empty() || cfg.deflation_load_z.empty())
      throw ConfigError("deflation.load_y and deflation.load_z must be given together");
    const ComplexMatrix Y = read_matrix_market(cfg.deflation_load_y);
    const ComplexMatrix Z = read_matrix_market(cfg.deflation_load_z);
    out.op = build_projectors(problem.A, Y, Z, &setup.H);
    out.exact_hypothesis = false;
    return out;
  }
  if (!cfg.deflation_enabled || cfg.deflation_m == 0) return out;
  out.space = build_spectral_space(problem, setup.H, cfg.deflation_gevp, cfg.deflation_m);
  const Pairing pairing = make_pairing(*out.space, problem, setup.H, cfg.deflation_variant);
  out.op = build_projectors(problem.A, pairing.Y, pairing.Z, &setup.H);
  out.tau = out.space->tau;
  out.exact_hypothesis = pairing.exact_hypothesis;
  if (!cfg.deflation_save_dir.empty()) {
    const fs::path dir = cfg.deflation_save_dir;
    fs::create_directories(dir);
    write_matrix_market((dir / "Y.mtx").string(), pairing.Y, MmLayout::Array);
    write_matrix_market((dir / "Z.mtx").string(), pairing.Z, MmLayout::Array);
  }
  return out;
}

void write_trace_csv(const fs::path& path, const GmresTrace& trace) {
  auto out = open_out(path);
  out << "k,residual_norm,relative_residual\n";
  const auto rel = trace.relative();
  for (std::size_t k = 0; k < trace.residual_norms.size(); ++k)
    out << k << "," << fmt17(trace.residual_norms[k]) << "," << fmt17(rel[k]) << "\n";
}

int cmd_problem(const RunConfig& cfg) {
  const AssembledProblem p = make_problem(cfg);
  fs::create_directories(cfg.output_dir);
  const fs::path dir = cfg.output_dir;
  write_matrix_market((dir / "A.mtx").string(), p.A);
  write_matrix_market((dir / "M.mtx").string(), p.M);
  write_matrix_market((dir / "N.mtx").string(), p.N);
  write_vector((dir / "b.vec").string(), p.b.real());
  std::cout << "n: " << p.n << "\nwrote: A.mtx M.mtx N.mtx b.vec in " << dir.string() << "\n";
  return 0;
}

int cmd_solve(const RunConfig& cfg) {
  const AssembledProblem p = make_problem(cfg);
  const PreconditionerSetup setup =
      build_preconditioner(p, cfg.precond_kind, cfg.placement, cfg.precond_blocks);
  const DeflationBundle defl = make_deflation(cfg, p, setup);
  if (defl.op.has_value() && defl.op->m > 0)
    std::cout << "deflation: m=" << defl.op->m << " core rcond=" << fmt17(defl.op->core_rcond)
              << "\n";
  GmresConfig gc;
  gc.tol = cfg.solve_tol;
  gc.max_it = cfg.solve_max_it;
  const GmresTrace trace =
      gmres_solve(p.A, p.b, setup, defl.op.has_value() ? &*defl.op : nullptr, gc);
  fs::create_directories(cfg.output_dir);
  write_trace_csv(fs::path(cfg.output_dir) / "trace.csv", trace);
  if (trace.converged)
    std::cout << "iterations_to_tol: " << trace.iterations_to_tol << "\n";
  else
    std::cout << "iterations_to_tol: not converged (last relative residual "
              << fmt17(trace.relative().back()) << ")\n";
  if (defl.op.has_value() && defl.op->m > 0) {
    const ComplexVector x_full = defl.op->compose_full_solution(trace.solution, p.b);
    std::cout << "full-system relative residual: "
              << fmt17((p.b - p.A * x_full).norm() / p.b.norm()) << "\n";
  }
  return 0;
}

int cmd_bounds(const RunConfig& cfg) {
  const auto curves = evaluate_bounds(cfg.bounds_mu, cfg.bounds_rho, cfg.bounds_k_max,
                                      cfg.bounds_methods);
  fs::create_directories(cfg.output_dir);
  auto out = open_out(fs::path(cfg.output_dir) / "bounds.csv");
  out << "k,method,raw,clipped\n";
  std::vector<SvgSeries> series;
  for (const BoundCurve& c : curves) {
    if (!c.applicable) continue;
    SvgSeries s;
    s.label = method_name(c.method);
    for (std::size_t k = 0; k < c.values.size(); ++k) {
      out << k << "," << method_name(c.method) << "," << fmt17(c.raw[k]) << ","
          << fmt17(c.values[k]) << "\n";
      s.x.push_back(static_cast<Real>(k));
      s.y.push_back(c.values[k]);
    }
    series.push_back(std::move(s));
  }
  write_svg_log_chart((fs::path(cfg.output_dir) / "bounds.svg").string(),
                      "min-max bounds on [1," + std::to_string(cfg.bounds_mu) + "] x i[-" +
                          std::to_string(cfg.bounds_rho) + "," + std::to_string(cfg.bounds_rho) +
                          "]",
                      series);
  if (cfg.bounds_laurent_csv && cfg.bounds_mu > 1.0 && cfg.bounds_rho > 0.0) {
    const ExteriorMapRectangle map =
        build_exterior_map(cfg.bounds_mu, cfg.bounds_rho, cfg.bounds_k_max);
    auto lout = open_out(fs::path(cfg.output_dir) / "laurent.csv");
    lout << "power,coefficient\n";
    lout << "1," << fmt17(map.capacity) << "\n";
    lout << "0," << fmt17(map.center) << "\n";
    for (Index j = 1; j <= map.truncation(); ++j)
      lout << -j << "," << fmt17(map.laurent_neg[static_cast<std::size_t>(j - 1)]) << "\n";
  }
  return 0;
}

int cmd_fov(const RunConfig& cfg) {
  const AssembledProblem p = make_problem(cfg);
  const PreconditionerSetup setup =
      build_preconditioner(p, cfg.precond_kind, cfg.placement, cfg.precond_blocks);
  const InnerProduct iph = InnerProduct::from_weight(setup.H);
  const ComplexMatrix AH = p.A * setup.H;
  const FovSample sample = fov_boundary(AH, iph, cfg.fov_n_angles);
  const Rectangle o1 = enclosure_omega1(p, setup.H);
  const Rectangle o2 = enclosure_omega2(p, setup.H);

  fs::create_directories(cfg.output_dir);
  auto out = open_out(fs::path(cfg.output_dir) / "fov.csv");
  out << "theta,re,im\n";
  for (std::size_t a = 0; a < sample.boundary.size(); ++a) {
    const Real theta = 2.0 * EIGEN_PI * static_cast<Real>(a) /
                       static_cast<Real>(sample.boundary.size());
    out << fmt17(theta) << "," << fmt17(sample.boundary[a].real()) << ","
        << fmt17(sample.boundary[a].imag()) << "\n";
  }
  write_svg_plane((fs::path(cfg.output_dir) / "fov.svg").string(),
                  "weighted field of values of the preconditioned operator", sample.boundary,
                  {{"omega1", o1.re_min, o1.re_max, o1.im_half},
                   {"omega2", o2.re_min, o2.re_max, o2.im_half}});
  std::cout << "omega1: [" << fmt17(o1.re_min) << ", " << fmt17(o1.re_max) << "] x i[-"
            << fmt17(o1.im_half) << ", " << fmt17(o1.im_half) << "]\n";
  std::cout << "omega2 im_half: " << fmt17(o2.im_half) << "\n";
  return 0;
}

int cmd_spectrum(const RunConfig& cfg) {
  const AssembledProblem p = make_problem(cfg);
  const PreconditionerSetup setup =
      build_preconditioner(p, cfg.precond_kind, cfg.placement, cfg.precond_blocks);
  SpectralDeflationSpace space = build_spectral_space(p, setup.H, cfg.spectrum_pencil, 0);
  fs::create_directories(cfg.output_dir);
  auto out = open_out(fs::path(cfg.output_dir) / "spectrum.csv");
  out << "j,abs_lambda\n";
  const Index count = cfg.spectrum_count == 0
                          ? space.spectrum.size()
                          : std::min<Index>(cfg.spectrum_count, space.spectrum.size());
  for (Index j = 0; j < count; ++j)
    out << (j + 1) << "," << fmt17(std::abs(space.spectrum(j))) << "\n";
  return 0;
}

int cmd_compare(const RunConfig& cfg) {
  if (!cfg.deflation_enabled)
    throw ConfigError("compare requires deflation.gevp to be hn or minv-n");
  const AssembledProblem p = make_problem(cfg);
  const PreconditionerSetup setup =
      build_preconditioner(p, cfg.precond_kind, cfg.placement, cfg.precond_blocks);

  fs::create_directories(cfg.output_dir);
  auto out = open_out(fs::path(cfg.output_dir) / "compare.csv");
  out << "m,tau,k,bound,achieved,iterations_to_tol,exact_hypothesis\n";

  for (const Index m : cfg.compare_m_list) {
    const SpectralDeflationSpace space =
        build_spectral_space(p, setup.H, cfg.deflation_gevp, m);
    std::optional<DeflationOperator> op;
    bool exact = true;
    if (m > 0) {
      const Pairing pairing = make_pairing(space, p, setup.H, cfg.deflation_variant);
      op = build_projectors(p.A, pairing.Y, pairing.Z, &setup.H);
      exact = pairing.exact_hypothesis;
    }
    const Rectangle rect = enclosure_tau(p, setup.H, space);
    const NormalizedRectangle nr = normalize(rect);
    const Index kmax = *std::max_element(cfg.compare_k_list.begin(), cfg.compare_k_list.end());
    const BoundCurve best = best_curve(nr.mu, nr.rho, kmax, cfg.bounds_methods);

    GmresConfig gc;
    gc.tol = cfg.solve_tol;
    gc.max_it = cfg.solve_max_it;
    const GmresTrace trace = gmres_solve(p.A, p.b, setup, op.has_value() ? &*op : nullptr, gc);
    const auto rel = trace.relative();

    for (const Index k : cfg.compare_k_list) {
      const Real bound =
          kSpectralSetConstant * best.values[static_cast<std::size_t>(std::min(k, kmax))];
      const Real achieved =
          rel[std::min<std::size_t>(static_cast<std::size_t>(k), rel.size() - 1)];
      out << m << "," << fmt17(space.tau) << "," << k << "," << fmt17(bound) << ","
          << fmt17(achieved) << ","
          << (trace.converged ? std::to_string(trace.iterations_to_tol) : "-1") << ","
          << (exact ? 1 : 0) << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted deflated GMRES with field-of-values rectangle bounds"};
  app.require_subcommand(1);
  app.fallthrough(true);
  std::string config_path;
  std::vector<std::string> overrides;
  app.add_option("--config", config_path, "configuration file (key = value lines)");
  app.add_option("--set", overrides, "override a configuration key (key=value)");

  auto* sc_problem = app.add_subcommand("problem", "assemble and write A.mtx M.mtx N.mtx b.vec");
  auto* sc_solve = app.add_subcommand("solve", "run GMRES and write the residual trace");
  auto* sc_bounds = app.add_subcommand("bounds", "evaluate bound curves on a rectangle");
  auto* sc_fov = app.add_subcommand("fov", "sample the weighted field of values");
  auto* sc_spectrum = app.add_subcommand("spectrum", "pencil spectrum |lambda_j| vs j");
  auto* sc_compare = app.add_subcommand("compare", "bounds vs achieved residuals across m");

  CLI11_PARSE(app, argc, argv);

  try {
    const RunConfig cfg = load_config(config_path, overrides);
    if (sc_problem->parsed()) return cmd_problem(cfg);
    if (sc_solve->parsed()) return cmd_solve(cfg);
    if (sc_bounds->parsed()) return cmd_bounds(cfg);
    if (sc_fov->parsed()) return cmd_fov(cfg);
    if (sc_spectrum->parsed()) return cmd_spectrum(cfg);
    if (sc_compare->parsed()) return cmd_compare(cfg);
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
