#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "frameforge/congruence.hpp"

namespace frameforge::cli {

struct Tolerances {
  double frame = 1e-6;             // orthonormality
  double frenet = 1e-4;            // Frenet equation residuals
  double kappa = 1e-6;             // known-curvature checks
  double identity = 1e-5;          // div/curl identities, both paths
  double compatibility = 1e-4;     // mixed-partial system (reported, not gating)
  double maxwell = 1e-8;           // the four divergence residuals
  double kappa_electric = 1e-8;
  double kappa_magnetic = 1e-4;
  double dual_divergence = 1e-4;
  double curl = 1e-3;
  double energy_refinement = 1e-8;
};

enum class CongruenceKind { Rotate, Const };

struct RunConfig {
  std::optional<int> q;  // space form override; required for CSV input
  std::optional<int> c;

  AnalyticCurve curve = AnalyticCurve::small_circle(0.7071067811865476);
  std::optional<double> s0, s1;
  std::size_t samples = 2001;
  bool exact = true;

  CongruenceKind kind = CongruenceKind::Rotate;
  std::array<double, 6> generator_xi{0.3, 0.0, 1.0, 0.0, 0.0, 1.5};
  std::array<double, 6> generator_eta{0.3, 0.0, 1.0, 0.0, 0.0, 1.5};
  double ramp_xi = 0.0;
  double ramp_eta = 0.0;
  std::optional<std::array<double, 3>> origin;  // default: middle half of the small circle
  std::optional<std::array<double, 3>> extent;
  std::array<std::size_t, 3> shape{161, 13, 13};

  int fd_order = 4;
  Tolerances tol;

  std::size_t panels = 2000;
  bool normalize_half = false;

  bool synthesize = false;
  std::string field_csv;
  bool strict_paper = false;
  std::string out_dir = "frameforge_out";
  std::string input;  // --input, meaning depends on the subcommand

  SpaceForm form() const;
  std::pair<double, double> interval() const;
  RotationCongruence congruence() const;
  void validate() const;
};

// TOML-style subset: [section] headers, `key = value` lines, `#` comments,
// numbers, true/false, bare or double-quoted strings, comma lists.
// Unknown sections or keys are rejected.
RunConfig parse_config(const std::string& text, const std::string& origin);
RunConfig load_config(const std::string& path);

// `section.key=value`, same value syntax as the file.
void apply_override(RunConfig& cfg, const std::string& assignment);

}  // namespace frameforge::cli
