#include "edgesim/metrics.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "edgesim/error.hpp"
#include "json_util.hpp"

namespace edgesim {

const char* const kCsvHeader =
    "run_id,seed,policy,partitioned,period,requests,hits,avg_precision,avg_qoe,hit_rate,"
    "memory_utilization,bytes_in_flight_mb,objective,lp_bound";

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') throw Error(ErrorCode::Io, "bad number '" + s + "' in CSV");
  return v;
}

std::int64_t parse_int(const std::string& s) {
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (s.empty() || *end != '\0') throw Error(ErrorCode::Io, "bad integer '" + s + "' in CSV");
  return v;
}

}  // namespace

double quantize9(double x) { return std::strtod(num(x).c_str(), nullptr); }

void PeriodRecord::quantize() {
  avg_precision = quantize9(avg_precision);
  avg_qoe = quantize9(avg_qoe);
  memory_utilization = quantize9(memory_utilization);
  bytes_in_flight_mb = quantize9(bytes_in_flight_mb);
  objective = quantize9(objective);
  if (lp_bound) lp_bound = quantize9(*lp_bound);
}

RunMetrics aggregate(const std::vector<PeriodRecord>& records) {
  if (records.empty()) throw Error(ErrorCode::EmptyRecords, "no records to aggregate");
  RunMetrics m;
  double precision_sum = 0.0, qoe_sum = 0.0, util_sum = 0.0, obj_sum = 0.0, lp_sum = 0.0;
  bool all_lp = true;
  for (const PeriodRecord& r : records) {
    m.requests += r.requests;
    m.hits += r.hits;
    precision_sum += r.avg_precision * static_cast<double>(r.requests);
    qoe_sum += r.avg_qoe * static_cast<double>(r.requests);
    util_sum += r.memory_utilization;
    obj_sum += r.objective;
    if (r.lp_bound) {
      lp_sum += *r.lp_bound;
    } else {
      all_lp = false;
    }
  }
  const double periods = static_cast<double>(records.size());
  m.periods = static_cast<int>(records.size());
  if (m.requests > 0) {
    const double total = static_cast<double>(m.requests);
    m.avg_inference_precision = precision_sum / total;
    m.avg_qoe = qoe_sum / total;
    m.hit_rate = static_cast<double>(m.hits) / total;
  }
  m.memory_utilization = util_sum / periods;
  m.mean_objective = obj_sum / periods;
  if (all_lp) m.mean_lp_bound = lp_sum / periods;
  return m;
}

std::string to_csv(const std::vector<PeriodRecord>& records) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const PeriodRecord& r : records) {
    out += r.run_id + ',' + std::to_string(r.seed) + ',' + r.policy + ',' + (r.partitioned ? "1" : "0") +
           ',' + std::to_string(r.period) + ',' + std::to_string(r.requests) + ',' +
           std::to_string(r.hits) + ',' + num(r.avg_precision) + ',' + num(r.avg_qoe) + ',' +
           num(r.hit_rate()) + ',' + num(r.memory_utilization) + ',' + num(r.bytes_in_flight_mb) + ',' +
           num(r.objective) + ',' + (r.lp_bound ? num(*r.lp_bound) : std::string()) + '\n';
  }
  return out;
}

std::vector<PeriodRecord> from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw Error(ErrorCode::Io, "unexpected CSV header");
  std::vector<PeriodRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 14) throw Error(ErrorCode::Io, "CSV row with " + std::to_string(f.size()) + " fields");
    PeriodRecord r;
    r.run_id = f[0];
    r.seed = static_cast<std::uint64_t>(std::strtoull(f[1].c_str(), nullptr, 10));
    r.policy = f[2];
    r.partitioned = f[3] == "1";
    r.period = static_cast<int>(parse_int(f[4]));
    r.requests = parse_int(f[5]);
    r.hits = parse_int(f[6]);
    r.avg_precision = parse_double(f[7]);
    r.avg_qoe = parse_double(f[8]);
    r.memory_utilization = parse_double(f[10]);
    r.bytes_in_flight_mb = parse_double(f[11]);
    r.objective = parse_double(f[12]);
    if (!f[13].empty()) r.lp_bound = parse_double(f[13]);
    out.push_back(std::move(r));
  }
  return out;
}

std::string metrics_json(const RunMetrics& m) {
  detail::json j{{"avg_inference_precision", m.avg_inference_precision},
                 {"avg_qoe", m.avg_qoe},
                 {"hit_rate", m.hit_rate},
                 {"memory_utilization", m.memory_utilization},
                 {"requests", m.requests},
                 {"hits", m.hits},
                 {"periods", m.periods},
                 {"mean_objective", m.mean_objective}};
  j["mean_lp_bound"] = m.mean_lp_bound ? detail::json(*m.mean_lp_bound) : detail::json(nullptr);
  return j.dump(2) + "\n";
}

}  // namespace edgesim
