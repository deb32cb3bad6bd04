#include <cstdlib>
#include <fstream>
#include <iostream>

#include "genchar/cli/command.hpp"

namespace {

int fail_usage(const std::string& message) {
  std::cerr << "genchar: " << message << "\nRun 'genchar --help' for usage.\n";
  return genchar::cli::exit_code(genchar::ErrorClass::usage);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace genchar::cli;
  std::optional<std::string> env_cap;
  if (const char* value = std::getenv("GENCHAR_SUBSET_CAP")) env_cap = value;

  ParsedArguments parsed;
  try {
    parsed = parse_arguments(std::vector<std::string>(argv, argv + argc), env_cap);
  } catch (const genchar::Error& e) {
    return fail_usage(e.what());
  }
  if (!parsed.request) {
    std::cout << parsed.help;
    return 0;
  }

  const CommandRequest& request = *parsed.request;
  const ResultDocument doc = execute(request);
  const std::string json = doc.to_json().dump(2) + "\n";

  if (auto out = request.get("out")) {
    std::ofstream file(*out);
    if (!(file << json)) return fail_usage("cannot write '" + *out + "'");
  } else if (doc.text.empty() || doc.status != 0) {
    std::cout << json;
  }
  if (!doc.text.empty() && doc.status == 0) std::cout << doc.text;
  if (doc.status != 0) std::cerr << "genchar " << doc.command << ": " << doc.error << "\n";
  return doc.status;
}
