#pragma once
// Verification report entries, the run configuration and their JSON forms.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wmlab/phasespace.hpp"

namespace wmlab {

enum class Status { pass, fail, reported };
std::string_view status_name(Status s) noexcept;

/// Current UTC time as "YYYY-MM-DDTHH:MM:SSZ".
std::string utc_timestamp();

struct ReportEntry {
  std::string equation_id;  // "Eq.10", "Eq.12-equivalence", ...
  std::string convention;   // "paper-literal" or "repaired"
  std::optional<double> residual;  // empty when the check could not run
  std::optional<double> threshold;
  Status status = Status::reported;
  std::string module;
  std::string operation;
  std::string note;
};

/// Sort key: equation number, then letter suffix, then the base id before
/// its suffixed sub-checks in insertion order.
bool equation_order(const std::string& a, const std::string& b);

struct VerificationReport {
  std::vector<ReportEntry> entries;

  /// pass when residual <= threshold, fail otherwise; reported without
  /// a threshold.
  void add(ReportEntry e);
  void sort();
  std::size_t count(Status s) const;
  bool all_pass() const { return count(Status::fail) == 0; }
  const ReportEntry* find(const std::string& id) const;

  nlohmann::json to_json(const nlohmann::json& config, bool with_timestamp) const;
};

struct Config {
  PhysParams params;
  double extent = 8.0;
  std::size_t n = 256;
  std::size_t truncation = 64;
  std::size_t spin_n_max = 7;

  PhaseGrid grid() const { return PhaseGrid::square(extent, n); }
  nlohmann::json to_json() const;
  /// Missing keys keep their defaults. Throws IoError for unreadable files
  /// or malformed JSON and InvalidArgument for out-of-range values.
  static Config from_json(const nlohmann::json& j);
  static Config load(const std::filesystem::path& path);
  void validate() const;
};

}  // namespace wmlab
