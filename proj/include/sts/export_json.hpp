#pragma once

#include <array>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "sts/models.hpp"

namespace sts {

/// Serialized form of a built model. Rationals are lowest-term "p/q"
/// strings; indices are 0-based; only nonzero entries appear, sorted
/// lexicographically; the product tensor is listed for i <= j only (it is
/// symmetric in the first two slots). Serialization is byte-stable:
/// import followed by export reproduces the input exactly.
struct ExportRecord {
  ModelLabel label;
  int dim = 0;
  uint64_t seed = kDefaultSeed;
  std::vector<std::tuple<int, int, std::string>> omega;
  std::vector<std::tuple<int, int, int, int, std::string>> trip;
  std::vector<int> deg1, deg3;
  std::optional<int> inder_dim;
  std::optional<int> envelope_dim;
  std::optional<std::array<int, 4>> signatures;  // g, sp, inder, odd
  std::optional<std::string> verification;

  friend bool operator==(const ExportRecord& a, const ExportRecord& b) = default;
};

ExportRecord make_record(const BuiltModel& m, uint64_t seed);
std::string record_to_json(const ExportRecord& r);
ExportRecord record_from_json(const std::string& text);

TripleSystem system_of(const ExportRecord& r);
Z4Grading grading_of(const ExportRecord& r);

}  // namespace sts
