#include "genchar/cli/command.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <set>

namespace genchar::cli {

namespace {

constexpr std::array<std::pair<Command, std::string_view>, 12> command_names{{
    {Command::charpoly, "charpoly"},
    {Command::genpoly, "genpoly"},
    {Command::geneval, "geneval"},
    {Command::resolvent, "resolvent"},
    {Command::quadform, "quadform"},
    {Command::gramdist, "gramdist"},
    {Command::delta, "delta"},
    {Command::minimize, "minimize"},
    {Command::diverge, "diverge"},
    {Command::onesdist, "onesdist"},
    {Command::bench, "bench"},
    {Command::verify, "verify"},
}};

struct OptionInfo {
  const char* name;
  const char* help;
  std::set<Command> commands;
};

using C = Command;

const std::vector<OptionInfo>& option_table() {
  static const std::vector<OptionInfo> table{
      {"input", "matrix file (CSV, or JSON with rows/cols/data/mode)",
       {C::charpoly, C::genpoly, C::geneval, C::resolvent, C::quadform, C::gramdist, C::delta, C::minimize,
        C::verify}},
      {"lambda", "comma-separated diagonal shift lambda_1..lambda_n",
       {C::geneval, C::resolvent, C::quadform, C::verify}},
      {"a", "comma-separated vector a (quadform, verify) or weights (minimize)", {C::quadform, C::minimize, C::verify}},
      {"b", "comma-separated constraint vector b", {C::minimize}},
      {"t", "scalar t for the classical resolvent (tI - C)^-1", {C::resolvent}},
      {"cap", "subset cap for 2^n enumeration (default 16; float <= 24, exact <= 20)",
       {C::genpoly, C::geneval, C::resolvent, C::quadform, C::bench, C::verify}},
      {"N", "number of truncations (diverge), window size (onesdist), largest n (bench)",
       {C::diverge, C::onesdist, C::bench}},
      {"threshold", "divergence threshold (default 1e6)", {C::diverge}},
      {"omit", "index s of the row left out of the denominator (default 0)", {C::diverge}},
      {"kind", "diverge diagnostic: quadform (default), gram or det", {C::diverge}},
      {"grid", "number of lambda grid points (default 100)", {C::bench}},
      {"seed", "random seed (default 1)", {C::bench, C::verify}},
  };
  return table;
}

constexpr const char* description =
    "Generalized characteristic polynomials, resolvents and Gram geometry.\n\n"
    "Subset masks: bit (k-1) set means index k belongs to the subset; masks are\n"
    "printed as decimal integers. Sequence specs: kind:params:N[:start] with kind\n"
    "explicit, harmonic (params scale,exponent; value scale/k^exponent) or power\n"
    "(params ratio,scale; value scale*ratio^k). Values that start with '-' need\n"
    "the --opt=value form.";

}  // namespace

std::string_view command_name(Command c) {
  for (const auto& [cmd, name] : command_names)
    if (cmd == c) return name;
  return "unknown";
}

Command parse_command(std::string_view name) {
  for (const auto& [cmd, known] : command_names)
    if (known == name) return cmd;
  std::string list;
  for (const auto& [cmd, known] : command_names) list += (list.empty() ? "" : ", ") + std::string(known);
  throw UsageError("unknown command '" + std::string(name) + "' (expected one of " + list + ")");
}

std::optional<std::string> CommandRequest::get(const std::string& key) const {
  const auto it = options.find(key);
  if (it == options.end()) return std::nullopt;
  return it->second;
}

ParsedArguments parse_arguments(const std::vector<std::string>& argv, std::optional<std::string> env_cap) {
  CLI::App app{description, argv.empty() ? "genchar" : argv.front()};
  app.set_help_flag("-h,--help", "print this help and exit");

  std::string command;
  app.add_option("command", command, "one of charpoly, genpoly, geneval, resolvent, quadform, gramdist, delta, "
                                     "minimize, diverge, onesdist, bench, verify")
      ->required();
  std::string mode;
  app.add_option("--mode", mode, "exact (default) or float");
  std::string out;
  app.add_option("--out", out, "write the result document to this path instead of stdout");
  std::vector<std::string> specs;
  app.add_option("--spec", specs, "sequence spec; repeat for several sequences")->expected(1)->take_all();

  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> handles;
  for (const auto& info : option_table())
    handles[info.name] = app.add_option(std::string("--") + info.name, values[info.name], info.help);

  std::vector<std::string> args(argv.size() > 1 ? argv.begin() + 1 : argv.end(), argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    return {std::nullopt, app.help()};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  CommandRequest req;
  req.command = parse_command(command);
  req.specs = specs;
  if (!mode.empty()) {
    parse_mode(mode);
    req.options["mode"] = mode;
  }
  if (!out.empty()) req.options["out"] = out;
  for (const auto& info : option_table()) {
    if (handles[info.name]->count() == 0) continue;
    if (!info.commands.count(req.command))
      throw UsageError("option --" + std::string(info.name) + " does not apply to '" + command + "'");
    req.options[info.name] = values[info.name];
  }
  if (!specs.empty() && req.command != Command::diverge && req.command != Command::onesdist)
    throw UsageError("option --spec does not apply to '" + command + "'");
  if (auto it = req.options.find("input"); it != req.options.end()) {
    req.input_path = it->second;
    req.options.erase(it);
  }
  const auto cap_info = std::find_if(option_table().begin(), option_table().end(),
                                     [](const OptionInfo& o) { return std::string_view(o.name) == "cap"; });
  const bool uses_cap = cap_info->commands.count(req.command) != 0;
  if (!req.has("cap") && env_cap && uses_cap) req.options["cap"] = *env_cap;
  return {std::move(req), {}};
}

int exit_code(ErrorClass cls) {
  switch (cls) {
    case ErrorClass::usage: return 2;
    case ErrorClass::parse:
    case ErrorClass::shape: return 3;
    case ErrorClass::domain: return 4;
    case ErrorClass::capacity: return 5;
  }
  return 2;
}

Json ResultDocument::to_json() const {
  Json doc{{"command", command}, {"mode", mode}, {"status", status}, {"timing_ms", timing_ms}};
  if (status == 0 || (!payload.is_null() && status == verify_failure_exit)) doc["payload"] = payload;
  if (!error.empty()) doc["error"] = error;
  return doc;
}

}  // namespace genchar::cli
