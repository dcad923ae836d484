#include <charconv>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "randnil/errors.hpp"
#include "randnil/experiments.hpp"

#ifndef RANDNIL_VERSION
#define RANDNIL_VERSION "unknown"
#endif

namespace randnil {

namespace {

// Shortest text that reads back to the same double.
std::string number(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

const char* tri(const std::optional<bool>& b) {
  if (!b) return "";
  return *b ? "1" : "0";
}

}  // namespace

std::string code_version() { return RANDNIL_VERSION; }

std::string format_csv_row(const SummaryRow& r) {
  std::string s = r.experiment;
  s += ',' + std::to_string(r.n);
  s += ',' + std::to_string(r.length);
  s += ',' + (r.c ? number(*r.c) : std::string());
  s += ',' + std::to_string(r.trials);
  s += ',' + number(r.estimate);
  s += ',' + number(r.stderr_);
  s += ',' + (r.theory ? number(*r.theory) : std::string());
  s += ',' + std::to_string(r.seed);
  return s;
}

void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows, const RunHeader& h) {
  os << "# randnil " << code_version() << '\n';
  os << "# timestamp: " << (h.timestamp.empty() ? utc_timestamp() : h.timestamp) << '\n';
  os << "# seed: " << h.seed << '\n';
  os << "# exact: " << (h.exact ? "true" : "false") << '\n';
  os << "# config: " << h.config_json << '\n';
  os << "experiment,n,ell,c,trials,estimate,stderr,theory,seed\n";
  for (const SummaryRow& r : rows) os << format_csv_row(r) << '\n';
}

void write_summary_json(std::ostream& os, const std::vector<SummaryRow>& rows, const RunHeader& h) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json meta;
  meta["version"] = code_version();
  meta["timestamp"] = h.timestamp.empty() ? utc_timestamp() : h.timestamp;
  meta["seed"] = h.seed;
  meta["exact"] = h.exact;
  meta["config"] = h.config_json.empty() ? nlohmann::ordered_json::object() : nlohmann::ordered_json::parse(h.config_json);
  j["meta"] = meta;
  auto arr = nlohmann::ordered_json::array();
  for (const SummaryRow& r : rows) {
    nlohmann::ordered_json o;
    o["experiment"] = r.experiment;
    o["n"] = r.n;
    o["ell"] = r.length;
    o["c"] = r.c ? nlohmann::ordered_json(*r.c) : nlohmann::ordered_json(nullptr);
    o["trials"] = r.trials;
    o["estimate"] = r.estimate;
    o["stderr"] = r.stderr_;
    o["theory"] = r.theory ? nlohmann::ordered_json(*r.theory) : nlohmann::ordered_json(nullptr);
    o["seed"] = r.seed;
    if (r.exact) o["exact"] = r.exact->get_str();
    arr.push_back(o);
  }
  j["rows"] = arr;
  os << j.dump(2) << '\n';
}

void write_records_csv(std::ostream& os, const std::vector<TrialRecord>& records) {
  os << "trial,n,ell,abelian,supercommute,F,B,D,empty_bins,full_step,corner_probe_zero,type_i,type_i_count,"
        "zero_coordinate\n";
  for (const TrialRecord& r : records) {
    os << r.trial << ',' << r.n << ',' << r.length << ',' << tri(r.abelian) << ',' << (r.supercommute ? 1 : 0) << ','
       << r.F << ',' << r.B << ',' << r.D << ',' << r.empty_bins << ',' << (r.full_step ? to_string(*r.full_step) : "")
       << ',' << tri(r.corner_probe_zero) << ',' << (r.type_i ? std::to_string(*r.type_i) : "") << ','
       << r.type_i_count << ',' << tri(r.zero_coordinate) << '\n';
  }
}

namespace {

template <class Writer>
void write_to(const std::string& path, Writer&& writer) {
  if (path.empty() || path == "-") {
    writer(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  writer(out);
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace

void emit(const std::vector<SummaryRow>& rows, const RunHeader& header, const std::string& format,
          const std::string& path) {
  if (rows.empty()) throw InvalidArgument("nothing to emit");
  RunHeader h = header;
  if (h.timestamp.empty()) h.timestamp = utc_timestamp();
  if (format == "csv")
    write_to(path, [&](std::ostream& os) { write_summary_csv(os, rows, h); });
  else if (format == "json")
    write_to(path, [&](std::ostream& os) { write_summary_json(os, rows, h); });
  else
    throw InvalidArgument("format must be csv or json, got '" + format + "'");
}

void emit_records(const std::vector<TrialRecord>& records, const std::string& path) {
  write_to(path, [&](std::ostream& os) { write_records_csv(os, records); });
}

}  // namespace randnil
