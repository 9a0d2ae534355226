#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "transplanck/dispersion.hpp"
#include "transplanck/reconstruct.hpp"
#include "transplanck/spectra.hpp"

namespace transplanck::cli {

enum class Format { Csv, Json };

std::string_view to_string(Format f);
Format format_from_string(std::string_view s);

struct BogoliubovBlock {
  BetaMode mode = BetaMode::Constant;
  double constant = 1.0;
  BogoliubovParams params;
  double k_lo = 0.1;
  double k_hi = 10.0;
  int samples = 41;

  BetaTreatment treatment() const;
};

struct RatioBlock {
  std::optional<double> k_h;
  std::optional<double> k_h_over_kp;
  std::optional<double> k_end;
  bool detuning = false;
};

struct ScanBlock {
  std::vector<double> betas;
  std::vector<double> Ls;
  double k_h_over_kp = 0.5;
  double alpha = 1.0;
  double k_p = 1.0;
};

struct TauRange {
  double start;
  double stop;
  int steps;
};

struct CurveBlock {
  int samples = 401;
  double k_min_log = 1e-8;  ///< in units of k_p
  std::optional<double> k_max;
};

struct SearchBlock {
  Branch branch = Branch::Decaying;
  std::optional<Bracket> bracket;
};

/// Typed view of a schema-valid run configuration. Absent optional blocks
/// stay empty; present ones are filled with defaults.
struct RunConfig {
  std::optional<DispersionModel> model;
  std::optional<double> scales_k_p;  ///< defaults to the model's k_p
  PhysicalScales scales;
  QuadratureConfig quadrature;
  std::optional<BogoliubovBlock> bogoliubov;
  std::optional<ReconstructionConfig> reconstruction;
  std::optional<TauRange> tau_range;
  std::optional<RatioBlock> ratio;
  std::optional<ScanBlock> scan;
  CurveBlock curve;
  SearchBlock search;
  std::optional<std::string> output_path;
  std::optional<Format> output_format;

  BetaTreatment beta_treatment() const;
  PhysicalScales resolved_scales() const;
};

/// Schema validation followed by conversion. Throws ConfigError listing every
/// violation; model parameters outside a law's domain surface as DomainError.
RunConfig parse_run_config(const nlohmann::json& j);

/// The configuration with every default made explicit. Valid against the
/// run-config schema.
nlohmann::json resolved_json(const RunConfig& cfg);

}  // namespace transplanck::cli
