#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "abc/enumerate.hpp"

namespace abc::cli {

inline constexpr const char* kVersion = "1.0.0";

enum class Method { Brute, DegreeSequence };

/// Splits the search space into `jobs` contiguous ranges, runs them on
/// worker threads and merges the partial results in range order.
SearchResult parallel_search(Method method, int n, int jobs, bool force = false);

/// The deterministic part of a search result (timing excluded), as a
/// compact JSON string.
std::string payload_json(const SearchResult& r);

/// 16 hex digits; stable across runs and platforms.
std::string stable_hash(const std::string& text);

/// Parses "A..B" (inclusive). Throws std::invalid_argument.
std::pair<int, int> parse_range(const std::string& text);

/// Store path: $ABC_RESULTS if set, else abc_results.jsonl.
std::string default_store_path();

/// One CSV row per n in [lo, hi] that has at least one search record;
/// n values without records are returned in `gaps`.
std::string report_csv(const std::string& store_path, int lo, int hi, double tol,
                       std::vector<int>* gaps = nullptr);

/// Runs the command line (without the program name). Exit codes: 0 ok,
/// 1 verification failure, 2 usage or domain error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace abc::cli
