#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace toda {

// Fixed 17-significant-digit formatting; used for every floating value
// emitted by reports, CSV tables and the CLI.
inline std::string format_double(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string json_escape(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

inline std::string json_number(double v) { return std::isfinite(v) ? format_double(v) : "null"; }

struct CheckResult {
  std::string relation;
  bool pass = false;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string witness;  // empty when passing
};

struct VerificationReport {
  std::string suite;
  int n = 0;
  std::optional<std::uint64_t> seed;
  std::vector<CheckResult> checks;

  void add(std::string relation, bool pass, double residual, double tolerance, std::string witness = {}) {
    checks.push_back({std::move(relation), pass, residual, tolerance, std::move(witness)});
  }
  void merge(const VerificationReport& other) { checks.insert(checks.end(), other.checks.begin(), other.checks.end()); }

  bool passed() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  const CheckResult* first_failure() const {
    for (const auto& c : checks)
      if (!c.pass) return &c;
    return nullptr;
  }
  double max_residual() const {
    double m = 0.0;
    for (const auto& c : checks) m = std::max(m, c.residual);
    return m;
  }

  std::string record_json(const CheckResult& c) const {
    std::ostringstream os;
    os << "{\"suite\":" << json_escape(suite) << ",\"n\":" << n << ",\"relation\":" << json_escape(c.relation)
       << ",\"status\":" << (c.pass ? "\"PASS\"" : "\"FAIL\"") << ",\"residual\":" << json_number(c.residual)
       << ",\"tolerance\":" << json_number(c.tolerance) << ",\"seed\":";
    if (seed) os << *seed; else os << "null";
    os << ",\"witness\":" << (c.witness.empty() ? std::string("null") : json_escape(c.witness)) << "}";
    return os.str();
  }

  std::string to_json() const {
    std::ostringstream os;
    os << "{\"suite\":" << json_escape(suite) << ",\"n\":" << n << ",\"seed\":";
    if (seed) os << *seed; else os << "null";
    os << ",\"status\":" << (passed() ? "\"PASS\"" : "\"FAIL\"") << ",\"first_failure\":";
    if (const auto* f = first_failure()) os << record_json(*f); else os << "null";
    os << ",\"results\":[";
    for (std::size_t k = 0; k < checks.size(); ++k) os << (k ? "," : "") << record_json(checks[k]);
    os << "]}";
    return os.str();
  }
};

// JSON Schema (draft 2020-12) for VerificationReport::to_json output.
inline std::string report_schema() {
  return R"({"$schema":"https://json-schema.org/draft/2020-12/schema","title":"VerificationReport","type":"object",)"
         R"("required":["suite","n","seed","status","first_failure","results"],)"
         R"("properties":{"suite":{"type":"string"},"n":{"type":"integer"},"seed":{"type":["integer","null"]},)"
         R"("status":{"enum":["PASS","FAIL"]},"first_failure":{"oneOf":[{"$ref":"#/$defs/record"},{"type":"null"}]},)"
         R"("results":{"type":"array","items":{"$ref":"#/$defs/record"}}},)"
         R"("$defs":{"record":{"type":"object",)"
         R"("required":["suite","n","relation","status","residual","tolerance","seed","witness"],)"
         R"("properties":{"suite":{"type":"string"},"n":{"type":"integer"},"relation":{"type":"string"},)"
         R"("status":{"enum":["PASS","FAIL"]},"residual":{"type":["number","null"]},)"
         R"("tolerance":{"type":["number","null"]},"seed":{"type":["integer","null"]},)"
         R"("witness":{"type":["string","null"]}}}}})";
}

// Seeded draws built directly on the engine output: std:: distributions are
// not bit-stable across standard library implementations.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  double uniform() { return double(next() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  long integer(long lo, long hi) { return lo + long(next() % std::uint64_t(hi - lo + 1)); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace toda
