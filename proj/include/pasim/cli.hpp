#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace pasim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;       // unreadable or unparseable input, write failure
inline constexpr int kExitInvalid = 2;  // validation or usage failure

struct SimulateArgs {
  std::string model_path;
  std::size_t runs = 1000;
  std::uint64_t seed = 1;
  double bucket_hours = 24.0;
  std::string out_path;      // JSON report; empty = none
  std::string profile_path;  // CSV profile; empty = derived from out_path
  bool zero_logistics = false;
  unsigned threads = 1;
};

struct IndicatorArgs {
  std::string model_path;
  std::size_t runs = 1000;
  std::uint64_t seed = 1;
  double bucket_hours = 24.0;
  std::vector<std::string> subsystems{"all"};
  std::string out_path;
  bool zero_logistics = false;
  unsigned threads = 1;
};

int cmd_validate(const std::string& model_path, std::ostream& out, std::ostream& err);
int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err);
int cmd_indicators(const IndicatorArgs& args, std::ostream& out, std::ostream& err);
/// Writes the bundled reference model as a model document.
int cmd_reference(std::ostream& out);

/// Full command-line entry point (argv[0] is the program name).
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace pasim::cli
