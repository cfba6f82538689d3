#pragma once

#include <fovgmres/bounds.hpp>
#include <fovgmres/cdr.hpp>
#include <fovgmres/deflation.hpp>
#include <fovgmres/preconditioner.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace fovgmres {

/// Raised on schema violations (unknown key, bad type, constraint breach).
/// The CLI maps it to exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& w) : std::runtime_error(w) {}
};

/// Flat dotted-key configuration for the CLI. Every key is validated against
/// the schema below; unknown keys are rejected.
struct RunConfig {
  CdrProblemSpec problem;
  std::string problem_load_dir;  // read A/M/N/b instead of assembling

  PrecondKind precond_kind = PrecondKind::JacobiM;
  Placement placement = Placement::Right;
  Index precond_blocks = 4;

  bool deflation_enabled = false;
  GevpKind deflation_gevp = GevpKind::HN;
  Index deflation_m = 0;
  PairingVariant deflation_variant = PairingVariant::YhAZ;
  std::string deflation_save_dir;
  std::string deflation_load_y, deflation_load_z;

  Real solve_tol = 1e-10;
  Index solve_max_it = 200;

  Real bounds_mu = 2.0;
  Real bounds_rho = 4.0;
  Index bounds_k_max = 100;
  std::vector<BoundMethod> bounds_methods = all_bound_methods();
  bool bounds_laurent_csv = false;  // dump the exterior-map Laurent data

  Index fov_n_angles = 360;

  GevpKind spectrum_pencil = GevpKind::HN;
  Index spectrum_count = 0;  // 0 = all

  std::vector<Index> compare_m_list = {0, 6, 12};
  std::vector<Index> compare_k_list = {50, 100};

  std::string output_dir = "out";
};

/// Parses "key = value" lines ('#' comments); then applies the overrides
/// (strings of the form key=value) in order.
RunConfig load_config(const std::string& path_or_empty,
                      const std::vector<std::string>& overrides);

}  // namespace fovgmres
