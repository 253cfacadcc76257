#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <sstream>

#include "../support/log_gen.hpp"
#include "muflux/errors.hpp"
#include "muflux/ingest.hpp"

using namespace muflux;
using namespace std::chrono;

namespace {

ParseResult parse_text(const std::string& text, ParseOptions opts = {}) {
  std::istringstream in(text);
  return parse_log(in, opts);
}

const std::string kHeader = "# muflux-log v1\ntimestamp,ch1,ch2,coinc,temp_c,rh_pct,p_hpa\n";

}  // namespace

TEST_CASE("timestamps") {
  const auto t = parse_timestamp("2022-06-01T10:00:00Z");
  REQUIRE(t);
  CHECK(format_timestamp(*t) == "2022-06-01T10:00:00Z");
  CHECK(parse_timestamp("2024-02-29T23:59:59Z"));
  CHECK_FALSE(parse_timestamp("2023-02-29T00:00:00Z"));
  CHECK_FALSE(parse_timestamp("2022-06-01T24:00:00Z"));
  CHECK_FALSE(parse_timestamp("2022-06-01T10:00:00"));
  CHECK_FALSE(parse_timestamp("2022-06-01T10:00:00+01:00"));
  CHECK_FALSE(parse_timestamp("2022-6-01T10:00:00Z"));
}

TEST_CASE("three-line file") {
  const auto result = parse_text(kHeader +
                                 "2022-06-01T10:00:00Z,701,698,40,21.5,48,1013.2\n"
                                 "2022-06-01T10:01:00Z,705,690,41,21.6,,1013.1\n"
                                 "2022-06-01T10:02:00Z,699,702,39,,,\n");
  REQUIRE(result.records.size() == 3);
  CHECK(result.diagnostics.empty());
  CHECK(result.records[0].ch1 == 701);
  CHECK(result.records[0].pressure_hpa == 1013.2);
  CHECK_FALSE(result.records[1].humidity_pct);
  CHECK(result.records[2].line == 5);
  CHECK_FALSE(result.records[2].temperature_c);
}

TEST_CASE("crlf line endings and blank lines") {
  const auto result = parse_text(
      "# muflux-log v1\r\ntimestamp,ch1,ch2,coinc,temp_c,rh_pct,p_hpa\r\n\r\n"
      "2022-06-01T10:00:00Z,1,2,3,,,\r\n");
  REQUIRE(result.records.size() == 1);
  CHECK(result.diagnostics.empty());
}

TEST_CASE("empty file with a valid header") {
  const auto result = parse_text(kHeader);
  CHECK(result.records.empty());
  CHECK(result.diagnostics.empty());
  CHECK(aggregate(result.records, 60.0).empty());
}

TEST_CASE("header errors") {
  CHECK_THROWS_AS(parse_text(""), FormatError);
  CHECK_THROWS_AS(parse_text("# muflux-log v2\ntimestamp,ch1,ch2,coinc,temp_c,rh_pct,p_hpa\n"),
                  FormatError);
  CHECK_THROWS_AS(parse_text("# muflux-log v1\ntimestamp,ch1,ch2,coinc\n"), FormatError);
  CHECK_THROWS_AS(parse_text("2022-06-01T10:00:00Z,1,2,3,,,\n"), FormatError);
}

TEST_CASE("one corrupt line among a hundred") {
  CounterRng rng(11, 0);
  const auto records = testing::random_records(rng, 100);
  std::string text = serialize_log(records);
  // Insert a truncated row after the 50th record (line 52 of the file).
  std::size_t pos = 0;
  for (int i = 0; i < 52; ++i) pos = text.find('\n', pos) + 1;
  text.insert(pos, "2022-06-01T10:00:00Z,12,13\n");
  const auto result = parse_text(text);
  CHECK(result.records.size() == 100);
  REQUIRE(result.diagnostics.size() == 1);
  CHECK(result.diagnostics[0].line == 53);
  CHECK(result.records == records);
}

TEST_CASE("malformed line budget") {
  std::string text = kHeader;
  for (int i = 0; i < 4; ++i) text += "garbage\n";
  CHECK(parse_text(text, {.bad_line_budget = 4}).diagnostics.size() == 4);
  CHECK_THROWS_AS(parse_text(text, {.bad_line_budget = 3}), FormatError);
  CHECK_THROWS_AS(parse_text(text, {.bad_line_budget = 0}), FormatError);
}

TEST_CASE("rows out of time order are diagnosed") {
  const auto result = parse_text(kHeader +
                                 "2022-06-01T10:05:00Z,1,1,1,,,\n"
                                 "2022-06-01T10:04:00Z,1,1,1,,,\n"
                                 "2022-06-01T10:06:00Z,1,1,1,,,\n");
  CHECK(result.records.size() == 2);
  REQUIRE(result.diagnostics.size() == 1);
  CHECK(result.diagnostics[0].line == 4);
}

TEST_CASE("telemetry round trips exactly") {
  LogRecord r;
  r.timestamp = *parse_timestamp("2022-06-01T10:00:00Z");
  r.temperature_c = 0.1 + 0.2;
  r.humidity_pct = 1e-300;
  r.pressure_hpa = 1013.2500000000001;
  const std::vector<LogRecord> one{r};
  const auto back = parse_text(serialize_log(one));
  REQUIRE(back.records.size() == 1);
  CHECK(back.records[0] == r);
}

TEST_CASE("twenty hours at forty counts per minute") {
  std::vector<LogRecord> records(1200);
  const auto start = *parse_timestamp("2022-06-01T00:00:00Z");
  for (std::size_t i = 0; i < records.size(); ++i) {
    records[i].timestamp = start + minutes{i};
    records[i].coinc = 40;
  }
  const auto windows = aggregate(records, 1200.0);
  REQUIRE(windows.size() == 1);
  const auto& w = windows[0];
  CHECK(w.coinc.counts() == 48000);
  CHECK(w.live_time_min == 1200.0);
  CHECK(w.coinc.rate() == 40.0);
  CHECK(std::round(w.coinc.sigma() * 100) / 100 == doctest::Approx(0.18));
  CHECK_FALSE(w.partial);
}

TEST_CASE("data shorter than the window is partial") {
  std::vector<LogRecord> records(30);
  const auto start = *parse_timestamp("2022-06-01T00:00:00Z");
  for (std::size_t i = 0; i < records.size(); ++i) {
    records[i].timestamp = start + minutes{i};
    records[i].coinc = 2;
  }
  const auto windows = aggregate(records, 60.0);
  REQUIRE(windows.size() == 1);
  CHECK(windows[0].partial);
  CHECK(windows[0].live_time_min == 30.0);
  CHECK(windows[0].coinc.rate() == 2.0);
  CHECK(format_timestamp(windows[0].window_end) == "2022-06-01T01:00:00Z");
}

TEST_CASE("unsorted input is rejected") {
  std::vector<LogRecord> records(2);
  records[0].timestamp = *parse_timestamp("2022-06-01T00:05:00Z");
  records[1].timestamp = *parse_timestamp("2022-06-01T00:04:00Z");
  CHECK_THROWS_AS(aggregate(records, 60.0), DomainError);
  CHECK_THROWS_AS(aggregate(records, 0.0), DomainError);
}

TEST_CASE("windowed aggregation properties on random logs") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    CAPTURE(seed);
    CounterRng rng(seed, 0);
    const auto n = 50 + rng.next_u64() % 3000;
    const auto log = testing::random_log(rng, n, 0.02);
    const auto parsed = parse_text(log.text);

    // Corrupt lines are dropped and reported; every valid record survives.
    CHECK(parsed.diagnostics.size() == log.corrupt_lines);
    REQUIRE(parsed.records == log.records);
    CHECK(serialize_log(parsed.records) == serialize_log(log.records));

    const double window = 1.0 + static_cast<double>(rng.next_u64() % 240);
    const auto windows = aggregate(parsed.records, window);
    std::uint64_t ch1 = 0, ch2 = 0, coinc = 0;
    std::size_t count = 0;
    for (const auto& w : windows) {
      ch1 += w.ch1.counts();
      ch2 += w.ch2.counts();
      coinc += w.coinc.counts();
      count += w.n_records;
      CHECK(w.window_end > w.window_start);
    }
    std::uint64_t ch1_total = 0, ch2_total = 0, coinc_total = 0;
    for (const auto& r : log.records) {
      ch1_total += r.ch1;
      ch2_total += r.ch2;
      coinc_total += r.coinc;
    }
    CHECK(ch1 == ch1_total);
    CHECK(ch2 == ch2_total);
    CHECK(coinc == coinc_total);
    CHECK(count == log.records.size());

    // Feeding records in arbitrary batches gives the same windows.
    WindowAggregator streaming(window);
    std::vector<RateSummary> streamed;
    std::size_t pos = 0;
    while (pos < parsed.records.size()) {
      const std::size_t batch =
          std::min<std::size_t>(1 + rng.next_u64() % 97, parsed.records.size() - pos);
      auto out = streaming.push(std::span(parsed.records).subspan(pos, batch));
      streamed.insert(streamed.end(), out.begin(), out.end());
      pos += batch;
    }
    if (auto last = streaming.finish()) streamed.push_back(*last);
    REQUIRE(streamed.size() == windows.size());
    for (std::size_t i = 0; i < windows.size(); ++i) {
      CHECK(streamed[i].window_start == windows[i].window_start);
      CHECK(streamed[i].coinc.counts() == windows[i].coinc.counts());
      CHECK(streamed[i].n_records == windows[i].n_records);
      CHECK(streamed[i].partial == windows[i].partial);
    }
  }
}
