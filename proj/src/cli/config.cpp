#include "transplanck/cli/config.hpp"

#include <cmath>

#include "transplanck/cli/schema.hpp"
#include "transplanck/errors.hpp"

namespace transplanck::cli {

using nlohmann::json;

namespace {

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  auto it = j.find(key);
  return it == j.end() ? fallback : it->get<T>();
}

std::optional<double> get_opt(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) return std::nullopt;
  return it->get<double>();
}

DispersionModel parse_model(const json& j) {
  const auto type = j.at("type").get<std::string>();
  if (type == "magueijo_smolin") {
    MagueijoSmolin m;
    return DispersionModel{MagueijoSmolin{get_or(j, "alpha", m.alpha), get_or(j, "k_p", m.k_p)}};
  }
  if (type == "modified_ms") {
    ModifiedMS m;
    return DispersionModel{ModifiedMS{get_or(j, "alpha", m.alpha), get_or(j, "beta", m.beta),
                                      get_or(j, "k_p", m.k_p)}};
  }
  if (type == "exp_suppressed") {
    ExpSuppressed m;
    return DispersionModel{ExpSuppressed{get_or(j, "alpha", m.alpha), get_or(j, "beta1", m.beta1),
                                         get_or(j, "beta2", m.beta2), get_or(j, "k_p", m.k_p)}};
  }
  if (type == "generalized_l") {
    GeneralizedL m;
    return DispersionModel{GeneralizedL{get_or(j, "alpha", m.alpha), get_or(j, "beta", m.beta),
                                        get_or(j, "L", m.L), get_or(j, "k_p", m.k_p)}};
  }
  EpsteinParams p;
  return DispersionModel{EpsteinNonlinear{{get_or(j, "B", p.B), get_or(j, "C", p.C), get_or(j, "E", p.E),
                                           get_or(j, "x0", p.x0), get_or(j, "k1_tilde", p.k1_tilde),
                                           get_or(j, "k_p", p.k_p)}}};
}

json model_json(const DispersionModel& model) {
  json j;
  j["type"] = std::string(model.name());
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, MagueijoSmolin>) {
          j["alpha"] = m.alpha;
          j["k_p"] = m.k_p;
        } else if constexpr (std::is_same_v<T, ModifiedMS>) {
          j["alpha"] = m.alpha;
          j["beta"] = m.beta;
          j["k_p"] = m.k_p;
        } else if constexpr (std::is_same_v<T, ExpSuppressed>) {
          j["alpha"] = m.alpha;
          j["beta1"] = m.beta1;
          j["beta2"] = m.beta2;
          j["k_p"] = m.k_p;
        } else if constexpr (std::is_same_v<T, GeneralizedL>) {
          j["alpha"] = m.alpha;
          j["beta"] = m.beta;
          j["L"] = m.L;
          j["k_p"] = m.k_p;
        } else {
          const auto& p = m.params;
          j["B"] = p.B;
          j["C"] = p.C;
          j["E"] = p.E;
          j["x0"] = p.x0;
          j["k1_tilde"] = p.k1_tilde;
          j["k_p"] = p.k_p;
        }
      },
      model.variant());
  return j;
}

std::vector<double> tau_grid_from(const TauRange& r) {
  if (!(r.stop > r.start)) throw ConfigError("reconstruction.tau_range needs stop > start");
  std::vector<double> g(static_cast<std::size_t>(r.steps) + 1);
  for (int i = 0; i <= r.steps; ++i) g[i] = r.start + (r.stop - r.start) * i / r.steps;
  g.back() = r.stop;
  return g;
}

}  // namespace

std::string_view to_string(Format f) { return f == Format::Csv ? "csv" : "json"; }

Format format_from_string(std::string_view s) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  throw ConfigError("unknown format '" + std::string(s) + "'");
}

BetaTreatment BogoliubovBlock::treatment() const {
  return mode == BetaMode::Constant ? BetaTreatment::constant_value(constant) : BetaTreatment::full(params);
}

BetaTreatment RunConfig::beta_treatment() const {
  return bogoliubov ? bogoliubov->treatment() : BetaTreatment::constant_value();
}

PhysicalScales RunConfig::resolved_scales() const {
  PhysicalScales s = scales;
  if (scales_k_p) s.k_p = *scales_k_p;
  else if (model) s.k_p = model->k_p();
  return s;
}

RunConfig parse_run_config(const json& j) {
  const auto violations = validate_against(run_config_schema(), j);
  if (!violations.empty()) {
    std::string msg = "configuration does not match the schema:";
    for (const auto& v : violations) msg += "\n  " + v.path + ": " + v.message;
    throw ConfigError(msg);
  }

  RunConfig c;
  if (auto it = j.find("model"); it != j.end()) c.model = parse_model(*it);

  if (auto it = j.find("scales"); it != j.end()) {
    c.scales.H0 = get_or(*it, "H0", c.scales.H0);
    c.scales.M_p = get_or(*it, "M_p", c.scales.M_p);
    c.scales_k_p = get_opt(*it, "k_p");
  }

  if (auto it = j.find("quadrature"); it != j.end()) {
    auto& q = c.quadrature;
    if (it->contains("method")) q.method = quad::method_from_string(it->at("method").get<std::string>());
    q.rel_tol = get_or(*it, "rel_tol", q.rel_tol);
    q.abs_tol = get_or(*it, "abs_tol", q.abs_tol);
    q.max_subdivisions = get_or(*it, "max_subdivisions", q.max_subdivisions);
    if (it->contains("interpretation"))
      q.interpretation = interpretation_from_string(it->at("interpretation").get<std::string>());
  }

  if (auto it = j.find("bogoliubov"); it != j.end()) {
    BogoliubovBlock b;
    if (it->contains("mode")) b.mode = beta_mode_from_string(it->at("mode").get<std::string>());
    b.constant = get_or(*it, "constant", b.constant);
    b.params.B = get_or(*it, "B", b.params.B);
    b.params.eta_ratio = get_or(*it, "eta_ratio", b.params.eta_ratio);
    b.params.x0 = get_or(*it, "x0", b.params.x0);
    b.k_lo = get_or(*it, "k_lo", b.k_lo);
    b.k_hi = get_or(*it, "k_hi", b.k_hi);
    b.samples = get_or(*it, "samples", b.samples);
    c.bogoliubov = b;
  }

  if (auto it = j.find("reconstruction"); it != j.end()) {
    ReconstructionConfig r;
    r.k_init = get_or(*it, "k_init", r.k_init);
    r.c1 = get_or(*it, "c1", r.c1);
    r.k_evol = get_or(*it, "k_evol", r.k_evol);
    r.A = get_or(*it, "A", r.A);
    r.a_initial = get_opt(*it, "a_initial");
    r.tau_star = get_opt(*it, "tau_star");
    r.a1 = get_or(*it, "a1", r.a1);
    if (it->contains("sign_mode")) r.sign_mode = sign_mode_from_string(it->at("sign_mode").get<std::string>());
    if (it->contains("normalization"))
      r.normalization = normalization_from_string(it->at("normalization").get<std::string>());
    r.regime_eps = get_or(*it, "regime_eps", r.regime_eps);

    const bool grid = it->contains("tau_grid"), range = it->contains("tau_range");
    if (grid == range) throw ConfigError("reconstruction needs exactly one of tau_grid or tau_range");
    if (grid) {
      r.tau_grid = it->at("tau_grid").get<std::vector<double>>();
    } else {
      const auto& tr = it->at("tau_range");
      c.tau_range = TauRange{tr.at("start").get<double>(), tr.at("stop").get<double>(), tr.at("steps").get<int>()};
      r.tau_grid = tau_grid_from(*c.tau_range);
    }
    c.reconstruction = r;
  }

  if (auto it = j.find("ratio"); it != j.end()) {
    RatioBlock r;
    r.k_h = get_opt(*it, "k_H");
    r.k_h_over_kp = get_opt(*it, "k_H_over_kp");
    r.k_end = get_opt(*it, "k_end");
    r.detuning = get_or(*it, "detuning", false);
    if (r.k_h && r.k_h_over_kp) throw ConfigError("ratio takes k_H or k_H_over_kp, not both");
    c.ratio = r;
  }

  if (auto it = j.find("scan"); it != j.end()) {
    ScanBlock s;
    s.betas = it->at("betas").get<std::vector<double>>();
    s.Ls = it->at("Ls").get<std::vector<double>>();
    s.k_h_over_kp = get_or(*it, "k_H_over_kp", s.k_h_over_kp);
    s.alpha = get_or(*it, "alpha", s.alpha);
    s.k_p = get_or(*it, "k_p", s.k_p);
    c.scan = s;
  }

  if (auto it = j.find("curve"); it != j.end()) {
    c.curve.samples = get_or(*it, "samples", c.curve.samples);
    c.curve.k_min_log = get_or(*it, "k_min_log", c.curve.k_min_log);
    c.curve.k_max = get_opt(*it, "k_max");
  }

  if (auto it = j.find("search"); it != j.end()) {
    if (it->contains("branch")) c.search.branch = branch_from_string(it->at("branch").get<std::string>());
    if (it->contains("bracket")) {
      const auto b = it->at("bracket").get<std::vector<double>>();
      c.search.bracket = Bracket{b[0], b[1]};
    }
  }

  if (auto it = j.find("output"); it != j.end()) {
    if (it->contains("path")) c.output_path = it->at("path").get<std::string>();
    if (it->contains("format")) c.output_format = format_from_string(it->at("format").get<std::string>());
  }
  return c;
}

json resolved_json(const RunConfig& c) {
  json j;
  if (c.model) j["model"] = model_json(*c.model);

  const auto s = c.resolved_scales();
  j["scales"] = {{"H0", s.H0}, {"M_p", s.M_p}, {"k_p", s.k_p}};

  const auto& q = c.quadrature;
  j["quadrature"] = {{"method", quad::to_string(q.method)},
                     {"rel_tol", q.rel_tol},
                     {"abs_tol", q.abs_tol},
                     {"max_subdivisions", q.max_subdivisions},
                     {"interpretation", to_string(q.interpretation)}};

  if (c.bogoliubov) {
    const auto& b = *c.bogoliubov;
    j["bogoliubov"] = {{"mode", to_string(b.mode)},     {"constant", b.constant},
                       {"B", b.params.B},               {"eta_ratio", b.params.eta_ratio},
                       {"x0", b.params.x0},             {"k_lo", b.k_lo},
                       {"k_hi", b.k_hi},                {"samples", b.samples}};
  }

  if (c.reconstruction) {
    const auto& r = *c.reconstruction;
    json rj = {{"k_init", r.k_init},
               {"c1", r.c1},
               {"k_evol", r.k_evol},
               {"A", r.A},
               {"a1", r.a1},
               {"sign_mode", to_string(r.sign_mode)},
               {"normalization", to_string(r.normalization)},
               {"regime_eps", r.regime_eps}};
    if (c.tau_range)
      rj["tau_range"] = {{"start", c.tau_range->start}, {"stop", c.tau_range->stop}, {"steps", c.tau_range->steps}};
    else
      rj["tau_grid"] = r.tau_grid;
    if (r.a_initial) rj["a_initial"] = *r.a_initial;
    if (r.tau_star) rj["tau_star"] = *r.tau_star;
    j["reconstruction"] = rj;
  }

  if (c.ratio) {
    json rj = {{"detuning", c.ratio->detuning}};
    if (c.ratio->k_h) rj["k_H"] = *c.ratio->k_h;
    if (c.ratio->k_h_over_kp) rj["k_H_over_kp"] = *c.ratio->k_h_over_kp;
    if (c.ratio->k_end) rj["k_end"] = *c.ratio->k_end;
    j["ratio"] = rj;
  }

  if (c.scan) {
    j["scan"] = {{"betas", c.scan->betas},
                 {"Ls", c.scan->Ls},
                 {"k_H_over_kp", c.scan->k_h_over_kp},
                 {"alpha", c.scan->alpha},
                 {"k_p", c.scan->k_p}};
  }

  j["curve"] = {{"samples", c.curve.samples}, {"k_min_log", c.curve.k_min_log}};
  if (c.curve.k_max) j["curve"]["k_max"] = *c.curve.k_max;

  j["search"] = {{"branch", to_string(c.search.branch)}};
  if (c.search.bracket) j["search"]["bracket"] = {c.search.bracket->lo, c.search.bracket->hi};

  json out = json::object();
  if (c.output_path) out["path"] = *c.output_path;
  if (c.output_format) out["format"] = to_string(c.output_format.value());
  j["output"] = out;
  return j;
}

}  // namespace transplanck::cli
