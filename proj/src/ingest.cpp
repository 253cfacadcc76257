#include "muflux/ingest.hpp"

#include <charconv>
#include <cstdio>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "muflux/errors.hpp"

namespace muflux {

namespace {

using namespace std::chrono;

template <typename Int>
bool parse_fixed_digits(std::string_view text, Int& out) {
  for (char c : text) {
    if (c < '0' || c > '9') return false;
  }
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

bool parse_count(std::string_view text, std::uint64_t& out) {
  return !text.empty() && parse_fixed_digits(text, out);
}

// Empty field -> nullopt; anything else must be a complete finite number.
bool parse_optional_double(std::string_view text, std::optional<double>& out) {
  if (text.empty()) {
    out.reset();
    return true;
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
    return false;
  }
  out = value;
  return true;
}

void append_double(std::string& line, const std::optional<double>& value) {
  if (!value) return;
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, *value);
  line.append(buf, ptr);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::optional<std::string> parse_row(std::string_view line, LogRecord& record) {
  const auto fields = split_fields(line);
  if (fields.size() != 7) {
    return "expected 7 fields, found " + std::to_string(fields.size());
  }
  const auto ts = parse_timestamp(fields[0]);
  if (!ts) return "bad timestamp '" + std::string(fields[0]) + "'";
  record.timestamp = *ts;
  if (!parse_count(fields[1], record.ch1)) return "bad ch1 count";
  if (!parse_count(fields[2], record.ch2)) return "bad ch2 count";
  if (!parse_count(fields[3], record.coinc)) return "bad coinc count";
  if (!parse_optional_double(fields[4], record.temperature_c)) return "bad temperature";
  if (!parse_optional_double(fields[5], record.humidity_pct)) return "bad humidity";
  if (!parse_optional_double(fields[6], record.pressure_hpa)) return "bad pressure";
  return std::nullopt;
}

}  // namespace

std::optional<Timestamp> parse_timestamp(std::string_view text) {
  // 0123456789012345678 9
  // YYYY-MM-DDTHH:MM:SSZ
  if (text.size() != 20 || text[4] != '-' || text[7] != '-' || text[10] != 'T' ||
      text[13] != ':' || text[16] != ':' || text[19] != 'Z') {
    return std::nullopt;
  }
  int y = 0;
  unsigned mo = 0, d = 0, h = 0, mi = 0, s = 0;
  if (!parse_fixed_digits(text.substr(0, 4), y) || !parse_fixed_digits(text.substr(5, 2), mo) ||
      !parse_fixed_digits(text.substr(8, 2), d) || !parse_fixed_digits(text.substr(11, 2), h) ||
      !parse_fixed_digits(text.substr(14, 2), mi) || !parse_fixed_digits(text.substr(17, 2), s)) {
    return std::nullopt;
  }
  const year_month_day ymd{year{y}, month{mo}, day{d}};
  if (!ymd.ok() || h > 23 || mi > 59 || s > 59) {
    return std::nullopt;
  }
  return sys_days{ymd} + hours{h} + minutes{mi} + seconds{s};
}

std::string format_timestamp(Timestamp t) {
  const auto day_point = floor<days>(t);
  const year_month_day ymd{day_point};
  const hh_mm_ss hms{t - day_point};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return buf;
}

bool LogRecord::operator==(const LogRecord& other) const {
  return timestamp == other.timestamp && ch1 == other.ch1 && ch2 == other.ch2 &&
         coinc == other.coinc && temperature_c == other.temperature_c &&
         humidity_pct == other.humidity_pct && pressure_hpa == other.pressure_hpa;
}

ParseResult parse_log(std::istream& in, const ParseOptions& options) {
  ParseResult result;
  std::string line;
  std::size_t line_no = 0;

  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };

  if (!next_line() || line != kLogMagic) {
    throw FormatError("line 1: expected header '" + std::string(kLogMagic) + "'");
  }
  if (!next_line() || line != kLogColumns) {
    throw FormatError("line 2: expected column header '" + std::string(kLogColumns) + "'");
  }

  while (next_line()) {
    if (line.empty()) continue;
    LogRecord record;
    auto error = parse_row(line, record);
    if (!error && !result.records.empty() && record.timestamp < result.records.back().timestamp) {
      error = "timestamp earlier than previous record";
    }
    if (error) {
      result.diagnostics.push_back({line_no, *error});
      if (result.diagnostics.size() > options.bad_line_budget) {
        throw FormatError("too many malformed lines (" +
                          std::to_string(result.diagnostics.size()) + "), last at line " +
                          std::to_string(line_no) + ": " + *error);
      }
      continue;
    }
    record.line = line_no;
    result.records.push_back(std::move(record));
  }
  return result;
}

void serialize_log(std::span<const LogRecord> records, std::ostream& out) {
  out << kLogMagic << '\n' << kLogColumns << '\n';
  std::string line;
  for (const auto& r : records) {
    line = format_timestamp(r.timestamp);
    line += ',';
    line += std::to_string(r.ch1);
    line += ',';
    line += std::to_string(r.ch2);
    line += ',';
    line += std::to_string(r.coinc);
    line += ',';
    append_double(line, r.temperature_c);
    line += ',';
    append_double(line, r.humidity_pct);
    line += ',';
    append_double(line, r.pressure_hpa);
    line += '\n';
    out << line;
  }
}

std::string serialize_log(std::span<const LogRecord> records) {
  std::ostringstream out;
  serialize_log(records, out);
  return out.str();
}

WindowAggregator::WindowAggregator(double window_min, double sample_period_s)
    : window_s_(window_min * 60.0), period_s_(sample_period_s) {
  if (!(window_min > 0.0) || !std::isfinite(window_min)) {
    throw DomainError("aggregation window must be positive");
  }
  if (!(sample_period_s > 0.0) || !std::isfinite(sample_period_s)) {
    throw DomainError("sample period must be positive");
  }
}

RateSummary WindowAggregator::summarize(const Accumulator& acc, bool trailing) const {
  const double live_min = static_cast<double>(acc.n) * period_s_ / 60.0;
  const double start_s = static_cast<double>(acc.index) * window_s_;
  const auto start = *origin_ + seconds{static_cast<std::int64_t>(std::llround(start_s))};
  const auto end =
      *origin_ + seconds{static_cast<std::int64_t>(std::llround(start_s + window_s_))};
  auto mean = [](double sum, std::size_t n) -> std::optional<double> {
    if (n == 0) return std::nullopt;
    return sum / static_cast<double>(n);
  };
  const double covered_until = static_cast<double>((acc.last - *origin_).count()) + period_s_;
  return RateSummary{
      .window_start = start,
      .window_end = end,
      .n_records = acc.n,
      .live_time_min = live_min,
      .ch1 = rate_from_counts(acc.ch1, live_min),
      .ch2 = rate_from_counts(acc.ch2, live_min),
      .coinc = rate_from_counts(acc.coinc, live_min),
      .mean_temperature_c = mean(acc.temp_sum, acc.temp_n),
      .mean_humidity_pct = mean(acc.rh_sum, acc.rh_n),
      .mean_pressure_hpa = mean(acc.p_sum, acc.p_n),
      .partial = trailing && covered_until < start_s + window_s_,
  };
}

std::vector<RateSummary> WindowAggregator::push(const LogRecord& record) {
  std::vector<RateSummary> done;
  if (current_ && record.timestamp < current_->last) {
    throw DomainError("records are not sorted by timestamp (line " + std::to_string(record.line) +
                      ")");
  }
  if (!origin_) origin_ = record.timestamp;
  const double offset = static_cast<double>((record.timestamp - *origin_).count());
  const auto index = static_cast<std::int64_t>(std::floor(offset / window_s_));
  if (current_ && current_->index != index) {
    done.push_back(summarize(*current_, false));
    current_.reset();
  }
  if (!current_) {
    current_ = Accumulator{};
    current_->index = index;
  }
  Accumulator& acc = *current_;
  ++acc.n;
  acc.ch1 += record.ch1;
  acc.ch2 += record.ch2;
  acc.coinc += record.coinc;
  if (record.temperature_c) {
    acc.temp_sum += *record.temperature_c;
    ++acc.temp_n;
  }
  if (record.humidity_pct) {
    acc.rh_sum += *record.humidity_pct;
    ++acc.rh_n;
  }
  if (record.pressure_hpa) {
    acc.p_sum += *record.pressure_hpa;
    ++acc.p_n;
  }
  acc.last = record.timestamp;
  return done;
}

std::vector<RateSummary> WindowAggregator::push(std::span<const LogRecord> records) {
  std::vector<RateSummary> done;
  for (const auto& r : records) {
    auto emitted = push(r);
    done.insert(done.end(), std::make_move_iterator(emitted.begin()),
                std::make_move_iterator(emitted.end()));
  }
  return done;
}

std::optional<RateSummary> WindowAggregator::finish() {
  if (!current_) return std::nullopt;
  auto summary = summarize(*current_, true);
  current_.reset();
  origin_.reset();
  return summary;
}

std::vector<RateSummary> aggregate(std::span<const LogRecord> records, double window_min,
                                   double sample_period_s) {
  WindowAggregator aggregator(window_min, sample_period_s);
  auto summaries = aggregator.push(records);
  if (auto last = aggregator.finish()) {
    summaries.push_back(std::move(*last));
  }
  return summaries;
}

}  // namespace muflux
