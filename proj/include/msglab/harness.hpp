#pragma once

// Reproducible experiments over families of groups and the property suites
// driven from a flat key=value config file.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "msglab/centralizers.hpp"
#include "msglab/geodesics.hpp"

namespace msglab {

/// A finite schedule of groups standing in for a sequence G_1, G_2, ...
struct FamilyDescriptor {
  enum class Kind { Alternating, PSL } kind = Kind::Alternating;
  std::vector<std::size_t> sizes;
  std::vector<std::uint64_t> fields;  ///< PSL only, one q per size
  /// Prime, or 0 for infinite characteristic.
  std::uint64_t declared_characteristic = 0;

  /// Throws std::invalid_argument when the schedule is inconsistent.
  void validate() const;
};

/// "A:50,100,500" or "PSL:2,3,4:9,9,9:3" (sizes:fields:characteristic, with
/// "inf" for increasing characteristic).
FamilyDescriptor parse_family(const std::string& text);

struct ReportRow {
  std::size_t family = 0;
  std::size_t n = 0;
  std::uint64_t q = 0;  ///< 0 for permutation groups
  std::size_t trial = 0;
  std::string quantity;
  std::string value;
};

struct ExperimentReport {
  std::vector<ReportRow> rows;
  std::map<std::string, std::string> metadata;

  void add(std::size_t family, std::size_t n, std::uint64_t q, std::size_t trial, std::string quantity,
           std::string value);
  /// Header "family,n,q,trial,quantity,value" and one line per row.
  std::string to_csv() const;
  std::string metadata_text() const;
};

/// For every n and trial: a random element, its Hamming (or projective rank)
/// length, its conjugacy length and their ratio; per n, the median of
/// |d_c - l|. Budget errors become "error" rows.
ExperimentReport equivalence_experiment(const FamilyDescriptor& family, std::size_t trials, std::uint64_t seed);

/// For every (n, q) and prime p: the semisimple order-p element of
/// GL_2n(q) when p != char q, the block unipotent element of SL_2n(q) when
/// p = char q, and the p-core order of its centralizer.
ExperimentReport fingerprint_experiment(const FamilyDescriptor& family, const std::vector<std::uint64_t>& primes,
                                        std::uint64_t seed);

/// Outcome of one property suite.
struct SuiteResult {
  std::string name;
  bool passed = true;
  std::string detail;
  std::optional<std::string> reproducer;
  ExperimentReport report;
  std::map<std::string, std::string> summary;
};

struct SuiteParams {
  std::uint64_t seed = 1;
  std::size_t trials = 0;  ///< 0 selects the suite's default
};

SuiteResult near_root_suite(const SuiteParams& params);
SuiteResult centralize_suite(const SuiteParams& params);
SuiteResult factorization_suite(const SuiteParams& params);
SuiteResult niceblock_suite(const SuiteParams& params);
SuiteResult geodesic_suite(const SuiteParams& params);
SuiteResult equivalence_suite(const SuiteParams& params);

/// Suite names accepted by run_suite.
std::vector<std::string> suite_names();
SuiteResult run_named_suite(const std::string& name, const SuiteParams& params);

/// Parses "key = value" lines; '#' starts a comment.
std::map<std::string, std::string> parse_config(std::istream& in);

/// Runs the suites listed under `suites`, writes <out_dir>/<name>.csv when
/// out_dir is set, and compares summaries against an `expected` file of
/// "suite.key = value" lines. Returns 0 iff every suite passed and every
/// expected value matched.
int run_suite(const std::map<std::string, std::string>& config, std::ostream& log);

}  // namespace msglab
