#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "fmpartners/fmcount.hpp"

namespace fmpartners::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;

inline constexpr int kSchemaVersion = 1;

/// Default d' bounds for the costlier verification paths.
inline constexpr std::uint64_t kDefaultEnumerationMaxDPrime = 10'000;
inline constexpr std::uint64_t kDefaultOracleMaxDPrime = 10'000;
inline constexpr std::uint64_t kDefaultGramMaxDPrime = 50;

enum class Depth { Formula, Enumeration, Oracle, Gram };

std::string csv_header();
std::string to_csv_row(const fmcount::FMRecord& r);
/// Single-line JSON object including schema_version.
std::string to_json(const fmcount::FMRecord& r);

/// Records for every admissible d in [d_min, d_max], ascending; `jobs`
/// worker threads (0 = hardware concurrency).
std::vector<fmcount::FMRecord> tabulate(std::uint64_t d_min, std::uint64_t d_max, unsigned jobs,
                                        const fmcount::RecordOptions& options);

struct VerifyOptions {
  std::uint64_t d_max = 0;
  Depth depth = Depth::Oracle;
  unsigned jobs = 1;
  std::uint64_t enumeration_max_d_prime = kDefaultEnumerationMaxDPrime;
  std::uint64_t oracle_max_d_prime = kDefaultOracleMaxDPrime;
  std::uint64_t gram_max_d_prime = kDefaultGramMaxDPrime;
};

struct VerifyOutcome {
  std::size_t checked = 0;
  std::size_t lattices_assembled = 0;
  std::vector<std::string> mismatches;
  std::vector<std::string> skipped;
};

VerifyOutcome verify(const VerifyOptions& options);

/// Entry point shared by the executable and the tests. Returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fmpartners::cli
