#pragma once

// DAQ log files. Layout (UTF-8, LF line endings):
//
//   # muflux-log v1
//   timestamp,ch1,ch2,coinc,temp_c,rh_pct,p_hpa
//   2022-06-01T10:00:00Z,701,698,40,21.5,48,1013.2
//
// Counts are per-interval deltas, NOT cumulative totals: each row holds the
// counts collected during one sample period starting at its timestamp.
// Missing telemetry is an empty field.

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "muflux/counting.hpp"

namespace muflux {

using Timestamp = std::chrono::sys_seconds;

inline constexpr std::string_view kLogMagic = "# muflux-log v1";
inline constexpr std::string_view kLogColumns = "timestamp,ch1,ch2,coinc,temp_c,rh_pct,p_hpa";

// Strict "YYYY-MM-DDTHH:MM:SSZ".
std::optional<Timestamp> parse_timestamp(std::string_view text);
std::string format_timestamp(Timestamp t);

struct LogRecord {
  Timestamp timestamp{};
  std::uint64_t ch1 = 0;
  std::uint64_t ch2 = 0;
  std::uint64_t coinc = 0;
  std::optional<double> temperature_c;
  std::optional<double> humidity_pct;
  std::optional<double> pressure_hpa;
  std::size_t line = 0;  // source line, 0 when not parsed from a file

  // Compares content only; the source line is ignored.
  bool operator==(const LogRecord& other) const;
};

struct LineDiagnostic {
  std::size_t line;
  std::string message;
};

struct ParseOptions {
  // Malformed lines tolerated before the whole file is rejected.
  std::size_t bad_line_budget = 100;
};

struct ParseResult {
  std::vector<LogRecord> records;
  std::vector<LineDiagnostic> diagnostics;
};

// Throws FormatError on a wrong magic or column line, or when the number of
// malformed lines exceeds the budget. Rows out of time order are reported
// as malformed.
ParseResult parse_log(std::istream& in, const ParseOptions& options = {});

void serialize_log(std::span<const LogRecord> records, std::ostream& out);
std::string serialize_log(std::span<const LogRecord> records);

struct RateSummary {
  Timestamp window_start{};
  Timestamp window_end{};
  std::size_t n_records = 0;
  double live_time_min = 0.0;
  RateMeasurement ch1;
  RateMeasurement ch2;
  RateMeasurement coinc;
  std::optional<double> mean_temperature_c;
  std::optional<double> mean_humidity_pct;
  std::optional<double> mean_pressure_hpa;
  bool partial = false;  // trailing window not fully covered by data
};

// Tumbling windows aligned to the first record. Records may be pushed one at
// a time; completed windows are returned as soon as a later record starts a
// new window.
class WindowAggregator {
 public:
  explicit WindowAggregator(double window_min, double sample_period_s = 60.0);

  std::vector<RateSummary> push(const LogRecord& record);
  std::vector<RateSummary> push(std::span<const LogRecord> records);
  // Emits the last (possibly partial) window; the aggregator is then empty.
  std::optional<RateSummary> finish();

 private:
  struct Accumulator {
    std::int64_t index = 0;
    std::size_t n = 0;
    std::uint64_t ch1 = 0;
    std::uint64_t ch2 = 0;
    std::uint64_t coinc = 0;
    double temp_sum = 0.0;
    std::size_t temp_n = 0;
    double rh_sum = 0.0;
    std::size_t rh_n = 0;
    double p_sum = 0.0;
    std::size_t p_n = 0;
    Timestamp last{};
  };

  RateSummary summarize(const Accumulator& acc, bool trailing) const;

  double window_s_;
  double period_s_;
  std::optional<Timestamp> origin_;
  std::optional<Accumulator> current_;
};

// Throws DomainError for unsorted records or a non-positive window.
std::vector<RateSummary> aggregate(std::span<const LogRecord> records, double window_min,
                                   double sample_period_s = 60.0);

}  // namespace muflux
