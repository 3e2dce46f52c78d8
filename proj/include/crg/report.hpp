#pragma once

// Verdict reports shared by the command-line tool and the acceptance runner.

#include <chrono>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "crg/groebner.hpp"
#include "crg/invariants.hpp"
#include "crg/random.hpp"
#include "crg/serialize.hpp"

namespace crg {

inline constexpr const char* kVersion = "0.3.0";

struct RunConfig {
  std::uint64_t seed = kDefaultSeed;
  int degree_cap = kDefaultDegreeCap;
  std::size_t closure_cap = kDefaultClosureCap;
  std::size_t gb_steps = kDefaultGbSteps;
  bool json = false;
  bool timings = false;
  std::string catalog;
};

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

class Report {
 public:
  explicit Report(std::string command, const RunConfig& cfg) : command_(std::move(command)), cfg_(cfg) {}

  void check(std::string name, bool pass, std::string detail = "") {
    checks_.push_back({std::move(name), pass, std::move(detail)});
  }
  void line(std::string text) { lines_.push_back(std::move(text)); }
  Json& data() { return data_; }

  // Wall-clock sections, emitted only with --timings so reports stay reproducible.
  void time(const std::string& section, double seconds) { timings_[section] += seconds; }

  bool all_pass() const {
    for (const auto& c : checks_)
      if (!c.pass) return false;
    return true;
  }
  const std::vector<Check>& checks() const { return checks_; }

  Json to_json() const {
    Json checks = Json::array();
    for (const auto& c : checks_) checks.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    Json j{{"command", command_},
           {"version", kVersion},
           {"config",
            {{"seed", cfg_.seed},
             {"degree_cap", cfg_.degree_cap},
             {"closure_cap", cfg_.closure_cap},
             {"gb_steps", cfg_.gb_steps},
             {"catalog", cfg_.catalog}}},
           {"checks", checks},
           {"pass", all_pass()}};
    if (!data_.is_null()) j["data"] = data_;
    if (cfg_.timings) j["timings"] = timings_;
    return j;
  }

  std::string to_text() const {
    std::ostringstream os;
    os << "crg " << kVersion << "  " << command_ << "  seed=" << cfg_.seed << " degree-cap=" << cfg_.degree_cap
       << " closure-cap=" << cfg_.closure_cap << " gb-steps=" << cfg_.gb_steps << "\n";
    for (const auto& l : lines_) os << l << "\n";
    if (!lines_.empty() && !checks_.empty()) os << "\n";
    std::size_t passed = 0;
    for (const auto& c : checks_) {
      os << (c.pass ? "PASS  " : "FAIL  ") << c.name;
      if (!c.detail.empty()) os << "  [" << c.detail << "]";
      os << "\n";
      passed += c.pass;
    }
    os << passed << "/" << checks_.size() << " checks passed\n";
    if (cfg_.timings)
      for (const auto& [k, v] : timings_) os << "time " << k << ": " << v << " s\n";
    return os.str();
  }

 private:
  std::string command_;
  RunConfig cfg_;
  std::vector<Check> checks_;
  std::vector<std::string> lines_;
  std::map<std::string, double> timings_;
  Json data_;
};

class Stopwatch {
 public:
  Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count(); }

 private:
  std::chrono::steady_clock::time_point t0_;
};

inline std::string join(const std::vector<int>& v, const char* sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

}  // namespace crg
