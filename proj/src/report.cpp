#include "wmlab/report.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <ctime>
#include <tuple>

#include "wmlab/errors.hpp"
#include "wmlab/io.hpp"

namespace wmlab {
namespace {

struct IdKey {
  int number = 0;
  std::string letter;
  bool suffixed = false;
};

IdKey parse_id(const std::string& id) {
  IdKey k;
  std::size_t pos = id.rfind("Eq.", 0) == 0 ? 3 : 0;
  while (pos < id.size() && std::isdigit(static_cast<unsigned char>(id[pos]))) {
    k.number = k.number * 10 + (id[pos] - '0');
    ++pos;
  }
  while (pos < id.size() && std::isalpha(static_cast<unsigned char>(id[pos]))) k.letter += id[pos++];
  k.suffixed = pos < id.size();
  return k;
}

}  // namespace

std::string_view status_name(Status s) noexcept {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::reported: return "reported";
  }
  return "reported";
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

bool equation_order(const std::string& a, const std::string& b) {
  const IdKey ka = parse_id(a), kb = parse_id(b);
  return std::tie(ka.number, ka.letter, ka.suffixed) < std::tie(kb.number, kb.letter, kb.suffixed);
}

void VerificationReport::add(ReportEntry e) {
  if (e.threshold) {
    const bool ok = e.residual && std::isfinite(*e.residual) && *e.residual <= *e.threshold;
    e.status = ok ? Status::pass : Status::fail;
  } else {
    e.status = Status::reported;
  }
  entries.push_back(std::move(e));
}

void VerificationReport::sort() {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const ReportEntry& a, const ReportEntry& b) { return equation_order(a.equation_id, b.equation_id); });
}

std::size_t VerificationReport::count(Status s) const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [s](const ReportEntry& e) { return e.status == s; }));
}

const ReportEntry* VerificationReport::find(const std::string& id) const {
  for (const auto& e : entries)
    if (e.equation_id == id) return &e;
  return nullptr;
}

nlohmann::json VerificationReport::to_json(const nlohmann::json& config, bool with_timestamp) const {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& e : entries) {
    nlohmann::json j;
    j["equation_id"] = e.equation_id;
    j["convention"] = e.convention;
    j["residual"] = e.residual && std::isfinite(*e.residual) ? nlohmann::json(*e.residual) : nlohmann::json(nullptr);
    j["threshold"] = e.threshold ? nlohmann::json(*e.threshold) : nlohmann::json(nullptr);
    j["status"] = status_name(e.status);
    j["module"] = e.module;
    j["operation"] = e.operation;
    if (!e.note.empty()) j["note"] = e.note;
    list.push_back(std::move(j));
  }
  nlohmann::json out;
  out["config"] = config;
  out["summary"] = {{"entries", entries.size()},
                    {"pass", count(Status::pass)},
                    {"fail", count(Status::fail)},
                    {"reported", count(Status::reported)}};
  out["entries"] = std::move(list);
  if (with_timestamp) out["generated_at"] = utc_timestamp();
  return out;
}

nlohmann::json Config::to_json() const {
  return {{"params", {{"m", params.m}, {"omega", params.omega}, {"hbar", params.hbar}}},
          {"grid", {{"extent", extent}, {"n", n}}},
          {"truncation", truncation},
          {"spin_n_max", spin_n_max}};
}

Config Config::from_json(const nlohmann::json& j) {
  Config c;
  try {
    if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
    if (j.contains("params")) {
      const auto& p = j.at("params");
      c.params.m = p.value("m", c.params.m);
      c.params.omega = p.value("omega", c.params.omega);
      c.params.hbar = p.value("hbar", c.params.hbar);
    }
    if (j.contains("grid")) {
      const auto& g = j.at("grid");
      c.extent = g.value("extent", c.extent);
      c.n = g.value("n", c.n);
    }
    c.truncation = j.value("truncation", c.truncation);
    c.spin_n_max = j.value("spin_n_max", c.spin_n_max);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

Config Config::load(const std::filesystem::path& path) {
  const std::string text = io::read_text(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }
  return from_json(j);
}

void Config::validate() const {
  params.validate();
  if (!(std::isfinite(extent) && extent > 0.0)) throw InvalidArgument("grid extent must be positive");
  if (n < 16 || !is_power_of_two(n)) throw InvalidArgument("grid n must be a power of two >= 16");
  if (truncation < 2) throw InvalidArgument("truncation must be at least 2");
  if (truncation > 128) throw InvalidArgument("truncation above 128 is not supported");
  if (spin_n_max > 20) throw InvalidArgument("spin_n_max above 20 is not supported");
}

}  // namespace wmlab
