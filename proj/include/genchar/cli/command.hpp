#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "genchar/cli/json.hpp"
#include "genchar/errors.hpp"

namespace genchar::cli {

enum class Command {
  charpoly,
  genpoly,
  geneval,
  resolvent,
  quadform,
  gramdist,
  delta,
  minimize,
  diverge,
  onesdist,
  bench,
  verify,
};

std::string_view command_name(Command c);
/// Throws UsageError for an unknown name.
Command parse_command(std::string_view name);

/// Options keep their raw text; `spec` may repeat and is kept in order.
struct CommandRequest {
  Command command = Command::charpoly;
  std::string input_path;
  std::map<std::string, std::string> options;
  std::vector<std::string> specs;

  bool has(const std::string& key) const { return options.count(key) != 0; }
  std::optional<std::string> get(const std::string& key) const;
};

/// Either a request to run or text to print (--help) and exit successfully.
struct ParsedArguments {
  std::optional<CommandRequest> request;
  std::string help;
};

/// argv[0] is skipped. Unknown commands and options raise UsageError.
/// `env_cap` is the value of GENCHAR_SUBSET_CAP when set; --cap takes precedence.
ParsedArguments parse_arguments(const std::vector<std::string>& argv, std::optional<std::string> env_cap = {});

/// Process exit status per error class: usage 2, parse/shape 3, domain 4, capacity 5.
int exit_code(ErrorClass cls);

/// Exit status of a `verify` run with at least one failed identity.
inline constexpr int verify_failure_exit = 1;

struct ResultDocument {
  std::string command;
  std::string mode;
  Json payload;  // null when status != 0
  double timing_ms = 0.0;
  int status = 0;
  std::string error;  // message when status != 0
  /// Plain-text rendering printed instead of JSON (bench table); empty otherwise.
  std::string text;

  Json to_json() const;
};

/// Runs the request; library errors become a nonzero status, never exceptions.
ResultDocument execute(const CommandRequest& request);

}  // namespace genchar::cli
