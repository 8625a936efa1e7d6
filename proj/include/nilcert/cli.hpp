#ifndef NILCERT_CLI_HPP
#define NILCERT_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace nilcert::cli {

struct RunConfig {
  std::string command;
  std::string alphabet = "a,b";
  int klass = 2;  // --class
  int r = 0;
  int64_t n = 0;
  int64_t budget_nodes = 200000;
  int64_t budget_conj = -1;
  std::string format = "json";
  std::string out_path;
  int threads = 0;
  std::vector<std::string> words;
};

// Exit statuses: 0 success, 1 verification failure, 2 usage error,
// 3 budget exhaustion.
enum ExitStatus : int {
  kOk = 0,
  kVerificationFailed = 1,
  kUsageError = 2,
  kBudgetExhausted = 3,
};

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Parses argv (excluding the program name) and runs the single subcommand.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main_entry(int argc, char** argv);

}  // namespace nilcert::cli

#endif
