#pragma once

// Command-line front end: `dim`, `gen`, `estimate`, `verify`.
//
// Machine output is JSON on the output stream; diagnostics go to the error
// stream. Exit codes: 0 success, 2 parse/validation error, 3 resource limit,
// 4 every numerical sample rejected, 5 verify mismatch.

#include "amoeba/estimator.hpp"
#include "amoeba/search.hpp"
#include "amoeba/span_complex.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace amoeba::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalidInput = 2,
  kResourceLimit = 3,
  kSamplingFailed = 4,
  kMismatch = 5,
};

enum class VarietyKind { param, implicit };

nlohmann::ordered_json to_json(const SearchResult& result);
nlohmann::ordered_json to_json(const RankEstimate& estimate);
nlohmann::ordered_json to_json(const Verdict& verdict);

/// Semicolon-separated vectors in Q^n; each is "e<i>" or comma-separated
/// rationals, e.g. "e1;e2;-1,-1,-1". Vectors are scaled to primitive integers.
std::vector<IntegerVector> parse_vector_list(std::string_view text, std::size_t n);

/// `gen` families: hyperplane N | orbit N VECS | curve N VECS |
/// torus_invariant FAN VECS | product FAN FAN.
SpanComplex generate_family(const std::string& family, const std::vector<std::string>& params);

RankEstimate estimate_file(const std::string& path, VarietyKind kind, const EstimatorOptions& options);

std::string read_file(const std::string& path);

/// Full CLI; `argv[0]` is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace amoeba::cli
