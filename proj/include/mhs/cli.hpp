#ifndef MHS_CLI_HPP
#define MHS_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace mhs {

struct RunConfig {
  std::string subcommand;
  std::string family;  // equator | clifford | otsuki (or scan for `family`)
  int n = 2;
  int k = 1;
  int p = 2;
  int q = 3;
  double tol = 1e-10;
  std::optional<int> resolution;    // torus phi cells / icosphere level / sampling grid
  std::optional<int> resolution_t;  // torus t cells (per radial period for otsuki)
  int count = 12;
  std::optional<double> zero_tol;
  double delta1 = 0.5;
  std::uint64_t seed = 0;
  int draws = 100;
  double cutoff = 10.0;
  int samples = 40;
  std::string input;
  std::string output;
  std::string format = "json";

  double delta2() const { return 1.0 - delta1; }
};

nlohmann::json to_json(const RunConfig& config);

// Exit status: 0 success, 1 invalid input, 2 numerical failure. The report is
// written to config.output (or out) only after the whole run succeeded.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mhs

#endif  // MHS_CLI_HPP
