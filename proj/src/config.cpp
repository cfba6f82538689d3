#include <fovgmres/config.hpp>

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace fovgmres {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

Index parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return static_cast<Index>(x);
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected integer, got '" + v + "'");
  }
}

Real parse_real(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const Real x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected number, got '" + v + "'");
  }
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

BoundMethod parse_method(const std::string& key, const std::string& v) {
  for (BoundMethod m : all_bound_methods())
    if (method_name(m) == v) return m;
  throw ConfigError(key + ": unknown bound method '" + v + "'");
}

void apply(RunConfig& c, const std::string& key, const std::string& value) {
  using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;
  static const std::map<std::string, Setter> schema = {
      {"problem.nx",
       [](RunConfig& r, const std::string& k, const std::string& v) {
         r.problem.nx = parse_int(k, v);
         if (r.problem.nx < 3) throw ConfigError(k + ": must be >= 3");
       }},
      {"problem.c0",
       [](RunConfig& r, const std::string& k, const std::string& v) {
         r.problem.c0 = parse_real(k, v);
         if (!(r.problem.c0 > 0)) throw ConfigError(k + ": must be positive");
       }},
      {"problem.nu",
       [](RunConfig& r, const std::string& k, const std::string& v) {
         r.problem.nu = parse_real(k, v);
         if (!(r.problem.nu > 0)) throw ConfigError(k + ": must be positive");
       }},
      {"problem.eta",
       [](RunConfig& r, const std::string& k, const std::string& v) {
         r.problem.eta = parse_real(k, v);
       }},
      {"problem.load_dir",
       [](RunConfig& r, const std::string&, const std::string& v) { r.problem_load_dir = v; }},
      {"precond.kind",
       [](RunConfig& r, const std::string& k, const std::string& v) {
         if (v == "exact-m")
           r.precond_kind = PrecondKind::ExactM;
         else if (v == "jacobi-m")
           r.precond_kind = PrecondKind::JacobiM;
         else if (v == "block-jacobi-m")
           r.precond_kind = PrecondKind::BlockJacobiM;
         else
           throw ConfigError(k + ": expected exact-m|jacobi-m|block-jacobi-m, got '" + v + "'");
       }},
      {"precond.blocks",
       [](RunConfig& r, const std::string& k, const std::string& v) {
         r.precond_blocks = parse_int(k, v);
         if (r.precond_blocks < 1) throw ConfigError(k + ": must be >= 1");
       }},
      {"precond.placement",
       [](RunConfig& r, const std::string& k, const std::string& v) {
         if (v == "left")
           r.placement = Placement::Left;
         else if (v == "right")
           r.placement = Placement::Right;
         else if (v == "split")
           r.placement = Placement::Split;
         else
           throw ConfigError(k + ": expected left|right|split, got '" + v + "'");
       }},
      {"deflation.gevp",
       [](RunConfig& r, const std::string& k, const std::string& v) {
         if (v == "none")
           r.deflation_enabled = false;
         else if (v == "hn") {
           r.deflation_enabled = true;
           r.deflation_gevp = GevpKind::HN;
         } else if (v == "minv-n") {
           r.deflation_enabled = true;
           r.deflation_gevp = GevpKind::MinvN;
         } else
           throw ConfigError(k + ": expected none|hn|minv-n, got '" + v + "'");
       }},
      {"deflation.m",
       [](RunConfig& r, const std::string& k, const std::string& v) {
         r.deflation_m = parse_int(k, v);
         if (r.deflation_m < 0 || r.deflation_m % 2 != 0)
           throw ConfigError(k + ": must be an even count >= 0");
       }},
      {"deflation.variant",
       [](RunConfig& r, const std::string& k, const std::string& v) {
         if (v == "y-haz")
           r.deflation_variant = PairingVariant::YhAZ;
         else if (v == "z-equals-y")
           r.deflation_variant = PairingVariant::ZequalsY;
         else if (v == "z-equals-ny")
           r.deflation_variant = PairingVariant::ZequalsNY;
         else
           throw ConfigError(k + ": expected y-haz|z-equals-y|z-equals-ny, got '" + v + "'");
       }},
      {"deflation.save_dir",
       [](RunConfig& r, const std::string&, const std::string& v) { r.deflation_save_dir = v; }},
      {"deflation.load_y",
       [](RunConfig& r, const std::string&, const std::string& v) { r.deflation_load_y = v; }},
      {"deflation.load_z",
       [](RunConfig& r, const std::string&, const std::string& v) { r.deflation_load_z = v; }},
      {"solve.tol",
       [](RunConfig& r, const std::string& k, const std::string& v) {
         r.solve_tol = parse_real(k, v);
         if (!(r.solve_tol > 0)) throw ConfigError(k + ": must be positive");
       }},
      {"solve.max_it",
       [](RunConfig& r, const std::string& k, const std::string& v) {
         r.solve_max_it = parse_int(k, v);
         if (r.solve_max_it < 1) throw ConfigError(k + ": must be >= 1");
       }},
      {"bounds.mu",
       [](RunConfig& r, const std::string& k, const std::string& v) {
         r.bounds_mu = parse_real(k, v);
         if (!(r.bounds_mu >= 1)) throw ConfigError(k + ": must be >= 1");
       }},
      {"bounds.rho",
       [](RunConfig& r, const std::string& k, const std::string& v) {
         r.bounds_rho = parse_real(k, v);
         if (!(r.bounds_rho >= 0)) throw ConfigError(k + ": must be >= 0");
       }},
      {"bounds.k_max",
       [](RunConfig& r, const std::string& k, const std::string& v) {
         r.bounds_k_max = parse_int(k, v);
         if (r.bounds_k_max < 0) throw ConfigError(k + ": must be >= 0");
       }},
      {"bounds.laurent_csv",
       [](RunConfig& r, const std::string& k, const std::string& v) {
         if (v == "0")
           r.bounds_laurent_csv = false;
         else if (v == "1")
           r.bounds_laurent_csv = true;
         else
           throw ConfigError(k + ": expected 0 or 1, got '" + v + "'");
       }},
      {"bounds.methods",
       [](RunConfig& r, const std::string& k, const std::string& v) {
         r.bounds_methods.clear();
         for (const std::string& item : split_list(v))
           r.bounds_methods.push_back(parse_method(k, item));
         if (r.bounds_methods.empty()) throw ConfigError(k + ": empty method list");
       }},
      {"fov.n_angles",
       [](RunConfig& r, const std::string& k, const std::string& v) {
         r.fov_n_angles = parse_int(k, v);
         if (r.fov_n_angles < 8) throw ConfigError(k + ": must be >= 8");
       }},
      {"spectrum.pencil",
       [](RunConfig& r, const std::string& k, const std::string& v) {
         if (v == "hn")
           r.spectrum_pencil = GevpKind::HN;
         else if (v == "minv-n")
           r.spectrum_pencil = GevpKind::MinvN;
         else
           throw ConfigError(k + ": expected hn|minv-n, got '" + v + "'");
       }},
      {"spectrum.count",
       [](RunConfig& r, const std::string& k, const std::string& v) {
         r.spectrum_count = parse_int(k, v);
         if (r.spectrum_count < 0) throw ConfigError(k + ": must be >= 0");
       }},
      {"compare.m_list",
       [](RunConfig& r, const std::string& k, const std::string& v) {
         r.compare_m_list.clear();
         for (const std::string& item : split_list(v)) {
           const Index m = parse_int(k, item);
           if (m < 0 || m % 2 != 0) throw ConfigError(k + ": entries must be even counts >= 0");
           r.compare_m_list.push_back(m);
         }
         if (r.compare_m_list.empty()) throw ConfigError(k + ": empty list");
       }},
      {"compare.k_list",
       [](RunConfig& r, const std::string& k, const std::string& v) {
         r.compare_k_list.clear();
         for (const std::string& item : split_list(v)) {
           const Index kk = parse_int(k, item);
           if (kk < 1) throw ConfigError(k + ": entries must be >= 1");
           r.compare_k_list.push_back(kk);
         }
         if (r.compare_k_list.empty()) throw ConfigError(k + ": empty list");
       }},
      {"output.dir",
       [](RunConfig& r, const std::string&, const std::string& v) { r.output_dir = v; }},
  };

  const auto it = schema.find(key);
  if (it == schema.end()) throw ConfigError("unknown configuration key '" + key + "'");
  it->second(c, key, value);
}

}  // namespace

RunConfig load_config(const std::string& path_or_empty, const std::vector<std::string>& overrides) {
  RunConfig cfg;
  if (!path_or_empty.empty()) {
    std::ifstream in(path_or_empty);
    if (!in) throw ConfigError("cannot open config file " + path_or_empty);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ConfigError(path_or_empty + ":" + std::to_string(lineno) + ": expected key = value");
      apply(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
  }
  for (const std::string& ov : overrides) {
    const auto eq = ov.find('=');
    if (eq == std::string::npos) throw ConfigError("override must be key=value, got '" + ov + "'");
    apply(cfg, trim(ov.substr(0, eq)), trim(ov.substr(eq + 1)));
  }
  return cfg;
}

}  // namespace fovgmres
