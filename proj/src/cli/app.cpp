#include "transplanck/cli/app.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "transplanck/cli/commands.hpp"
#include "transplanck/errors.hpp"

namespace transplanck::cli {

using nlohmann::json;

namespace {

constexpr const char* kExitCodes =
    "Exit codes:\n"
    "  0  success\n"
    "  1  internal error\n"
    "  2  usage or configuration error (schema violation, unreadable file)\n"
    "  3  domain error (k outside a law's domain, no root, no hump, ...)\n"
    "  4  numerical error (quadrature non-convergence, fit mismatch, blow-up)\n"
    "Diagnostics go to stderr; TRANSPLANCK_LOG=trace|debug|info|warn|error|off sets\n"
    "their verbosity (default warn).";

using Command = std::function<CommandOutput(const RunConfig&)>;

const std::map<std::string, std::pair<Command, const char*>>& commands() {
  static const std::map<std::string, std::pair<Command, const char*>> table{
      {"dispersion-curve", {cmd_dispersion_curve, "sample omega(k) on a log-then-linear grid"}},
      {"ratio", {cmd_ratio, "tail/total energy-density ratio"}},
      {"scan", {cmd_scan, "ratio table over (beta, L) for the generalized law"}},
      {"bogoliubov", {cmd_bogoliubov, "|beta_k|^2 on a log grid"}},
      {"reconstruct", {cmd_reconstruct, "march the scale factor along k(tau)"}},
      {"find-kh", {cmd_find_kh, "root of omega(k) = H0 on one side of the hump"}},
      {"find-hump", {cmd_find_hump, "interior maximum of omega(k)"}},
  };
  return table;
}

void setup_logging(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err, true);
  auto logger = std::make_shared<spdlog::logger>("transplanck", sink);
  logger->set_pattern("transplanck: [%l] %v");
  auto level = spdlog::level::warn;
  if (const char* env = std::getenv("TRANSPLANCK_LOG"); env && *env) {
    const auto parsed = spdlog::level::from_str(env);
    // from_str maps anything unknown to off; only trust it for "off" itself.
    if (parsed != spdlog::level::off || std::string(env) == "off") level = parsed;
  }
  logger->set_level(level);
  spdlog::set_default_logger(logger);
}

json load_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
}

json table_json(const Table& t) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    json r = json::array();
    for (const auto& cell : row) std::visit([&](const auto& v) { r.push_back(v); }, cell);
    rows.push_back(r);
  }
  return {{"columns", t.columns}, {"rows", rows}};
}

struct Flags {
  std::string config;
  std::string out;
  std::string format;
  std::string interpretation;
  std::string sign;
  std::string normalization;
  int samples = 0;
};

int execute(const std::string& name, const Flags& flags, std::ostream& out) {
  RunConfig cfg = parse_run_config(load_json(flags.config));

  if (!flags.interpretation.empty())
    cfg.quadrature.interpretation = interpretation_from_string(flags.interpretation);
  ReconstructionConfig defaults;
  auto* rc = cfg.reconstruction ? &*cfg.reconstruction : &defaults;
  if (!flags.sign.empty()) rc->sign_mode = sign_mode_from_string(flags.sign);
  if (!flags.normalization.empty()) rc->normalization = normalization_from_string(flags.normalization);
  if (flags.samples > 0) {
    cfg.curve.samples = flags.samples;
    if (cfg.bogoliubov) cfg.bogoliubov->samples = flags.samples;
  }
  if (!flags.format.empty()) cfg.output_format = format_from_string(flags.format);
  if (!flags.out.empty()) cfg.output_path = flags.out;

  spdlog::debug("running {}", name);
  const CommandOutput result = commands().at(name).first(cfg);
  const Format format = cfg.output_format.value_or(result.default_format);

  std::string text;
  if (format == Format::Csv) {
    text = to_csv(result.table);
  } else {
    json report;
    report["command"] = name;
    report["config"] = resolved_json(cfg);
    report["flags"] = {{"interpretation", std::string(to_string(cfg.quadrature.interpretation))},
                       {"sign", std::string(to_string(rc->sign_mode))},
                       {"normalization", std::string(to_string(rc->normalization))},
                       {"beta_mode", std::string(to_string(cfg.beta_treatment().mode))}};
    json body = result.summary;
    if (result.rows_in_json) body.update(table_json(result.table));
    report["result"] = body;
    text = report.dump(2) + "\n";
  }

  if (cfg.output_path) {
    std::ofstream f(*cfg.output_path, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot write output file '" + *cfg.output_path + "'");
    f << text;
    if (!f.flush()) throw ConfigError("failed writing '" + *cfg.output_path + "'");
  } else {
    out << text;
    out.flush();
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  setup_logging(err);

  CLI::App app{"Trans-Planckian dispersion, Bogoliubov and energy-density toolkit", "transplanck"};
  app.footer(kExitCodes);
  app.require_subcommand(1, 1);
  app.fallthrough();

  Flags flags;
  app.add_option("--config", flags.config, "JSON run configuration")->required()->check(CLI::ExistingFile);
  app.add_option("--out", flags.out, "write data here instead of stdout");
  app.add_option("--format", flags.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--interpretation", flags.interpretation, "double-integral reading")
      ->check(CLI::IsMember({"iterated-inner", "chain-rule"}));
  app.add_option("--sign", flags.sign, "marching relation sign")->check(CLI::IsMember({"eq27c", "eq27d"}));
  app.add_option("--normalization", flags.normalization, "second-difference scaling")
      ->check(CLI::IsMember({"paper-literal", "second-derivative"}));
  app.add_option("--samples", flags.samples, "sample count for curves")->check(CLI::PositiveNumber);
  for (const auto& [name, entry] : commands()) app.add_subcommand(name, entry.second);

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  std::ostringstream cli_out, cli_err;
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, cli_out, cli_err);
    out << cli_out.str();
    err << cli_err.str();
    return code == 0 ? kOk : kConfig;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    return execute(name, flags, out);
  } catch (const ConfigError& e) {
    spdlog::error("{}", e.what());
    return kConfig;
  } catch (const DomainError& e) {
    spdlog::error("{}", e.what());
    return kDomain;
  } catch (const NumericalError& e) {
    spdlog::error("{}", e.what());
    return kNumerical;
  } catch (const std::exception& e) {
    spdlog::critical("internal error: {}", e.what());
    return kInternal;
  }
}

}  // namespace transplanck::cli
