#include "transplanck/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <spdlog/spdlog.h>

#include "transplanck/errors.hpp"

namespace transplanck::cli {

using nlohmann::json;

namespace {

const DispersionModel& need_model(const RunConfig& cfg) {
  if (!cfg.model) throw ConfigError("this command needs a 'model' block");
  return *cfg.model;
}

double curve_end(const RunConfig& cfg, const DispersionModel& model) {
  const double k_max = cfg.curve.k_max.value_or(model.k_p());
  if (k_max > model.domain_end())
    throw DomainError("curve.k_max beyond the model's domain");
  return k_max;
}

json report_json(const RatioReport& r) {
  return {{"k_H", r.k_h},
          {"k_end", r.k_end},
          {"rho_tail", r.rho_tail},
          {"rho_total", r.rho_total},
          {"ratio", r.ratio},
          {"est_error", r.est_error},
          {"interpretation", std::string(to_string(r.interpretation))},
          {"beta_mode", std::string(to_string(r.beta_mode))}};
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_csv(const Table& t) {
  std::string s;
  for (std::size_t i = 0; i < t.columns.size(); ++i) s += (i ? "," : "") + t.columns[i];
  s += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) s += ',';
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) s += format_number(v);
            else if constexpr (std::is_same_v<T, long long>) s += std::to_string(v);
            else s += v;
          },
          row[i]);
    }
    s += '\n';
  }
  return s;
}

std::vector<double> curve_grid(double k_p, double k_min_log, double k_max, int samples) {
  if (samples < 2) throw ConfigError("curve needs at least two samples");
  const double lo = k_min_log * k_p;
  if (!(k_max > lo)) throw ConfigError("curve.k_max must exceed k_min_log * k_p");
  const int interior = samples - 2;
  const double split = std::min(0.01 * k_p, k_max);
  const int n_log = lo >= split ? 0 : split < k_max ? interior / 2 : interior;
  const int n_lin = interior - n_log;

  std::vector<double> g{0.0};
  for (int j = 0; j < n_log; ++j) g.push_back(lo * std::pow(split / lo, static_cast<double>(j) / n_log));
  for (int j = 0; j < n_lin; ++j) g.push_back(split + (k_max - split) * j / n_lin);
  g.push_back(k_max);
  return g;
}

CommandOutput cmd_dispersion_curve(const RunConfig& cfg) {
  const auto& model = need_model(cfg);
  const double k_max = curve_end(cfg, model);
  auto grid = curve_grid(model.k_p(), cfg.curve.k_min_log, k_max, cfg.curve.samples);

  CommandOutput o;
  std::optional<std::size_t> hump_row;
  if (grid.size() > 2) {
    try {
      Bracket b = cfg.search.bracket.value_or(default_hump_bracket(model));
      b.hi = std::min(b.hi, k_max);
      const auto h = find_hump(model, b);
      // The nearest interior sample is replaced by k*; ordering is preserved.
      std::size_t best = 1;
      for (std::size_t i = 1; i + 1 < grid.size(); ++i)
        if (std::fabs(grid[i] - h.k_star) < std::fabs(grid[best] - h.k_star)) best = i;
      if (h.k_star > grid[best - 1] && h.k_star < grid[best + 1]) {
        grid[best] = h.k_star;
        hump_row = best;
        o.summary["hump"] = {{"k_star", h.k_star}, {"omega_star", h.omega_star}};
      }
    } catch (const NoInteriorMaximumError& e) {
      spdlog::debug("no hump flagged: {}", e.what());
    }
  }
  if (!hump_row) o.summary["hump"] = nullptr;

  o.table.columns = {"k", "omega", "omega_squared", "hump"};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double k = grid[i];
    o.table.rows.push_back({k, eval_omega(model, k), eval_omega_squared(model, k),
                            static_cast<long long>(hump_row && *hump_row == i)});
  }
  o.summary["model"] = std::string(model.name());
  return o;
}

CommandOutput cmd_ratio(const RunConfig& cfg) {
  const auto& model = need_model(cfg);
  const auto scales = cfg.resolved_scales();
  const RatioBlock block = cfg.ratio.value_or(RatioBlock{});
  KHSpec k_h = SolveKHFromH0{};
  if (block.k_h) k_h = ExplicitKH{*block.k_h};
  if (block.k_h_over_kp) k_h = ExplicitKH{*block.k_h_over_kp * model.k_p()};

  const auto beta = cfg.beta_treatment();
  const auto r = tail_total_ratio(model, scales, k_h, beta, cfg.quadrature, block.k_end);
  spdlog::info("ratio {} at k_H = {} (est_error {})", r.ratio, r.k_h, r.est_error);

  CommandOutput o;
  o.default_format = Format::Json;
  o.rows_in_json = false;
  o.summary = report_json(r);
  o.summary["closed_form_estimate"] = mersini_closed_form_estimate(scales);
  o.table.columns = {"k_H", "k_end", "rho_tail", "rho_total", "ratio", "est_error", "interpretation", "beta_mode"};
  o.table.rows.push_back({r.k_h, r.k_end, r.rho_tail, r.rho_total, r.ratio, r.est_error,
                          std::string(to_string(r.interpretation)), std::string(to_string(r.beta_mode))});

  if (block.detuning) {
    json rows = json::array();
    for (const auto& d : detuning_scan(model, beta, cfg.quadrature))
      rows.push_back({{"M", d.k_h / model.k_p()}, {"ratio", d.ratio}, {"est_error", d.est_error}});
    o.summary["detuning"] = rows;
  }
  return o;
}

CommandOutput cmd_scan(const RunConfig& cfg) {
  if (!cfg.scan) throw ConfigError("scan needs a 'scan' block");
  ScanRequest req;
  req.betas = cfg.scan->betas;
  req.Ls = cfg.scan->Ls;
  req.k_h_over_kp = cfg.scan->k_h_over_kp;
  req.alpha = cfg.scan->alpha;
  req.k_p = cfg.scan->k_p;
  req.beta = cfg.beta_treatment();
  req.qcfg = cfg.quadrature;

  CommandOutput o;
  o.table.columns = {"beta", "L", "k_H_over_kp", "interpretation", "ratio", "est_error"};
  json failures = json::array();
  const std::string interp(to_string(cfg.quadrature.interpretation));
  for (const auto& cell : appendix_iii_scan(req)) {
    const double nan = std::nan("");
    const double ratio = cell.report ? cell.report->ratio : nan;
    const double err = cell.report ? cell.report->est_error : nan;
    o.table.rows.push_back({cell.beta, cell.L, cell.k_h_over_kp, interp, ratio, err});
    if (!cell.report) {
      spdlog::warn("scan cell beta={} L={} failed: {}", cell.beta, cell.L, cell.error);
      failures.push_back({{"beta", cell.beta}, {"L", cell.L}, {"error", cell.error}});
    }
  }
  o.summary["failures"] = failures;
  o.summary["beta_mode"] = std::string(to_string(req.beta.mode));
  return o;
}

CommandOutput cmd_bogoliubov(const RunConfig& cfg) {
  if (!cfg.bogoliubov) throw ConfigError("bogoliubov needs a 'bogoliubov' block");
  const auto& b = *cfg.bogoliubov;
  if (!(b.k_lo < b.k_hi)) throw DomainError("bogoliubov needs k_lo < k_hi");

  CommandOutput o;
  o.table.columns = {"k", "omega_hat_plus", "omega_hat_minus", "beta_k_squared"};
  for (int i = 0; i < b.samples; ++i) {
    const double t = b.samples == 1 ? 0.0 : static_cast<double>(i) / (b.samples - 1);
    const double k = b.k_lo * std::pow(b.k_hi / b.k_lo, t);
    o.table.rows.push_back({k, omega_hat_plus(b.params, k), omega_hat_minus(b.params, k),
                            beta_k_squared(b.params, k)});
  }
  const auto approx = thermal_constant_approx(b.params, b.k_lo, b.k_hi, b.samples);
  o.summary["gamma"] = gamma(b.params.B, b.params.x0);
  o.summary["constant_approximation"] = {{"mean", approx.mean},
                                         {"max_relative_deviation", approx.max_relative_deviation}};
  return o;
}

CommandOutput cmd_reconstruct(const RunConfig& cfg) {
  if (!cfg.reconstruction) throw ConfigError("reconstruct needs a 'reconstruction' block");
  const auto t = march(*cfg.reconstruction, need_model(cfg));
  if (t.zero_crossing) spdlog::warn("scale factor crossed zero");

  CommandOutput o;
  o.table.columns = {"tau", "k", "a", "u_t", "regime"};
  for (std::size_t i = 0; i < t.tau.size(); ++i)
    o.table.rows.push_back({t.tau[i], t.k[i], t.a[i], t.u_t[i], std::string(to_string(t.regime[i]))});
  o.summary["zero_crossing"] = t.zero_crossing;
  return o;
}

CommandOutput cmd_find_kh(const RunConfig& cfg) {
  const auto& model = need_model(cfg);
  const double H0 = cfg.scales.H0;
  const auto hump = find_hump(model, cfg.search.bracket);
  const double k_h = find_k_h(model, H0, cfg.search.branch);
  const double omega_h = eval_omega(model, k_h);
  if (std::fabs(omega_h - H0) > 1e-6 * H0)
    spdlog::warn("omega(k_H) = {} vs H0 = {}: the root is closer to a domain edge than double precision resolves",
                 omega_h, H0);

  CommandOutput o;
  o.default_format = Format::Json;
  o.rows_in_json = false;
  const std::string branch(to_string(cfg.search.branch));
  o.summary = {{"branch", branch},
               {"H0", H0},
               {"k_H", k_h},
               {"omega_at_k_H", omega_h},
               {"k_star", hump.k_star},
               {"omega_star", hump.omega_star}};
  o.table.columns = {"branch", "H0", "k_H", "omega_at_k_H", "k_star", "omega_star"};
  o.table.rows.push_back({branch, H0, k_h, omega_h, hump.k_star, hump.omega_star});
  return o;
}

CommandOutput cmd_find_hump(const RunConfig& cfg) {
  const auto& model = need_model(cfg);
  const auto hump = find_hump(model, cfg.search.bracket);
  CommandOutput o;
  o.default_format = Format::Json;
  o.rows_in_json = false;
  o.summary = {{"k_star", hump.k_star}, {"omega_star", hump.omega_star}};
  o.table.columns = {"k_star", "omega_star"};
  o.table.rows.push_back({hump.k_star, hump.omega_star});
  return o;
}

}  // namespace transplanck::cli
