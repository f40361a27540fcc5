#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semigrowth/bounds.hpp"
#include "semigrowth/spectrum.hpp"

namespace semigrowth {

/// Declarative spectral model: `type` is one of finite, lattice, curve, union.
struct ModelSpec {
  std::string type = "lattice";
  std::string profile = "power";  ///< lattice only: power | log
  double exponent = 0.5;          ///< power profile
  double scale = 1.0;
  double k_max = 1e10;            ///< lattice truncation; infinity selects adaptive scanning
  double imag_bound = 0.0;
  std::vector<std::pair<double, double>> points;  ///< finite / curve: (re, im)
  std::vector<ModelSpec> members;                 ///< union
  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

struct GridSpec {
  double min = 0.0;
  double max = 0.0;
  int per_decade = 16;
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct CheckSpec {
  CheckId id = CheckId::sandwich_62;
  std::optional<double> epsilon;
  std::optional<double> c;
  std::optional<std::vector<double>> c_grid;
  /// Multiplies the growth curve before the check (constructed violations).
  std::optional<double> curve_scale;
  friend bool operator==(const CheckSpec&, const CheckSpec&) = default;
};

struct RunConfig {
  ModelSpec model;
  GridSpec t_grid{1e-5, 1e-1, 16};
  GridSpec s_grid{10.0, 1e8, 16};
  GridSpec eta_grid{10.0, 1e6, 16};
  std::vector<CheckSpec> checks;
  std::string output_dir = "out";
  std::uint64_t seed = 1;
  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses and validates a YAML run description. Unknown keys, unknown check
/// ids and invalid grids raise ConfigError with line/column context.
RunConfig parse_config(std::string_view text, std::string_view source = "<config>");
RunConfig load_config(const std::string& path);

/// Canonical YAML rendering; parse_config(echo_config(c)) == c.
std::string echo_config(const RunConfig& config);

SpectralModel build_model(const ModelSpec& spec);

}  // namespace semigrowth
