#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace edgesim {

/// Metrics of one observation window or time slot of one run. Real-valued
/// fields are kept at 9 significant digits from the start, which is exactly
/// what the CSV stores, so aggregating a reloaded file gives the same bits.
struct PeriodRecord {
  std::string run_id;
  std::uint64_t seed = 0;
  std::string policy;
  bool partitioned = true;
  int period = 0;
  std::int64_t requests = 0;
  std::int64_t hits = 0;
  double avg_precision = 0.0;
  double avg_qoe = 0.0;
  double memory_utilization = 0.0;
  double bytes_in_flight_mb = 0.0;
  double objective = 0.0;               // summed precision
  std::optional<double> lp_bound;       // relaxation value, when one was solved

  double hit_rate() const {
    return requests > 0 ? static_cast<double>(hits) / static_cast<double>(requests) : 0.0;
  }
  /// Round every real field to 9 significant digits.
  void quantize();
  friend bool operator==(const PeriodRecord&, const PeriodRecord&) = default;
};

/// Round to 9 significant digits (the persisted precision).
double quantize9(double x);

struct RunMetrics {
  double avg_inference_precision = 0.0;  // over all requests, cloud counts 0
  double avg_qoe = 0.0;
  double hit_rate = 0.0;
  double memory_utilization = 0.0;       // mean over periods
  std::int64_t requests = 0;
  std::int64_t hits = 0;
  double mean_objective = 0.0;           // per period
  std::optional<double> mean_lp_bound;   // per period, when every period has one
  int periods = 0;
  friend bool operator==(const RunMetrics&, const RunMetrics&) = default;
};

/// Throws EmptyRecords on an empty input.
RunMetrics aggregate(const std::vector<PeriodRecord>& records);

extern const char* const kCsvHeader;
std::string to_csv(const std::vector<PeriodRecord>& records);
std::vector<PeriodRecord> from_csv(const std::string& text);

std::string metrics_json(const RunMetrics& m);

}  // namespace edgesim
