#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pbar/congruence.hpp"

namespace pbar::cli {

enum ExitCode : int {
  kOk = 0,
  kSelftestFailed = 1,
  kInvalidArguments = 2,
  kIoFailure = 3,
  kCorruptResults = 4,
  kCounterexample = 5,
};

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

/// PBAR_WORKERS if set to a positive integer, else the hardware concurrency.
unsigned default_workers();

// One hunt result per line, as a JSON object with the fields
// ell, j, q, interesting, witness_n (null when interesting), n0, kappa,
// elapsed_ms. checked_terms is not stored; it is recovered on parse from the
// witness position.
struct HuntLine {
  HuntRecord record;
  std::uint64_t elapsed_ms = 0;

  friend bool operator==(const HuntLine&, const HuntLine&) = default;
};

std::string serialize(const HuntLine& line);

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws ParseError when the text is not a well-formed, self-consistent record.
HuntLine parse_hunt_line(const std::string& text);

class CorruptResults : public std::runtime_error {
 public:
  CorruptResults(std::size_t line, const std::string& why)
      : std::runtime_error("line " + std::to_string(line) + ": " + why), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Every record in a results file; a missing file yields no records.
/// Throws CorruptResults naming the first bad line (1-based).
std::vector<HuntLine> read_results(const std::string& path);

int cmd_compute(const std::string& n, const std::optional<std::string>& modulus,
                const std::optional<std::string>& path, Streams io);
int cmd_table(const std::string& n_max, const std::optional<std::string>& path, Streams io);
int cmd_hunt(std::uint64_t ell, unsigned j, std::uint64_t q_max,
             const std::optional<std::string>& path, unsigned workers, Streams io);
int cmd_verify(std::uint64_t ell, unsigned j, std::uint64_t q, std::size_t count, Streams io);
int cmd_selftest(Streams io);

/// Parses argv and dispatches; returns the process exit code.
int run(int argc, const char* const* argv, Streams io);

}  // namespace pbar::cli
