#include "coxkde/ingest.hpp"

#include "coxkde/dataset_io.hpp"

#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <vector>

using namespace coxkde;

namespace {

std::filesystem::path data_dir() {
    const char* dir = std::getenv("COXKDE_TEST_DATA");
    REQUIRE(dir != nullptr);
    return dir;
}

std::string fixture(const char* name) { return read_text_file(data_dir() / name); }

struct ExpectedPipeline {
    std::vector<DatedValue> oil_returns;
    std::vector<DatedValue> equity_returns;
    std::vector<DatedValue> volume_increments;
    std::vector<std::pair<Date, int>> schedule_dates;
    std::vector<std::pair<Date, int>> jump_dates;
};

ExpectedPipeline load_expected() {
    ExpectedPipeline expected;
    const std::string text = fixture("expected_fixture_pipeline.csv");
    std::size_t start = text.find('\n') + 1;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        const std::string line = text.substr(start, end - start);
        start = end + 1;
        if (line.empty()) continue;
        const auto first = line.find(',');
        const auto second = line.find(',', first + 1);
        const std::string kind = line.substr(0, first);
        const Date date = Date::parse(line.substr(first + 1, second - first - 1));
        const std::string value = line.substr(second + 1);
        if (kind == "oil_return") {
            expected.oil_returns.push_back({date, std::stod(value)});
        } else if (kind == "equity_return") {
            expected.equity_returns.push_back({date, std::stod(value)});
        } else if (kind == "volume_increment") {
            expected.volume_increments.push_back({date, std::stod(value)});
        } else if (kind == "schedule_date") {
            expected.schedule_dates.emplace_back(date, std::stoi(value));
        } else if (kind == "jump_date") {
            expected.jump_dates.emplace_back(date, std::stoi(value));
        }
    }
    return expected;
}

void check_series(const std::vector<DatedValue>& actual, const std::vector<DatedValue>& expected) {
    REQUIRE(actual.size() == expected.size());
    for (std::size_t i = 0; i < actual.size(); ++i) {
        CHECK(actual[i].date == expected[i].date);
        CHECK(std::abs(actual[i].value - expected[i].value) < 1e-9);
    }
}

} // namespace

TEST_CASE("date parsing and formatting") {
    const Date date = Date::parse("2015-06-23");
    CHECK(date.year == 2015);
    CHECK(date.month == 6);
    CHECK(date.day == 23);
    CHECK(date.iso() == "2015-06-23");
    CHECK(Date::parse("2015-06-12") < Date::parse("2015-06-15"));
    CHECK_THROWS_AS(Date::parse("2015/06/23"), ParseError);
    CHECK_THROWS_AS(Date::parse("2015-13-01"), ParseError);
}

TEST_CASE("yahoo parser on the fixture") {
    const MarketSeries series = parse_yahoo(fixture("agilent_10.csv"));
    REQUIRE(series.rows() == 10);
    // ascending after normalization; the raw file is descending
    CHECK(series.dates.front().iso() == "2015-06-10");
    CHECK(series.dates.back().iso() == "2015-06-23");
    // Table row: 2015-06-23 open 39.89, volume 2,053,600
    CHECK(series.open.back() == doctest::Approx(39.89).epsilon(1e-12));
    CHECK(series.volume.back() == 2053600.0);
    CHECK(series.adj_close.front() == doctest::Approx(40.52).epsilon(1e-12));
}

TEST_CASE("yahoo parser error paths") {
    CHECK(parse_yahoo("Date,Open,High,Low,Close,Volume,Adj.Close\n").rows() == 0);
    CHECK(parse_yahoo("").rows() == 0);

    SUBCASE("missing column") {
        CHECK_THROWS_AS(parse_yahoo("Date,Open,High,Low,Close,Volume\n"), ParseError);
    }
    SUBCASE("unparseable number names the row") {
        const std::string text = "Date,Open,High,Low,Close,Volume,Adj.Close\n"
                                 "2015-06-23,39.89,39.95,39.42,39.60,2053600,39.60\n"
                                 "2015-06-22,N/A,40.01,39.73,39.81,3901700,39.81\n";
        try {
            parse_yahoo(text);
            FAIL("expected ParseError");
        } catch (const ParseError& error) {
            CHECK(error.line() == 3);
        }
    }
    SUBCASE("duplicate dates are rejected") {
        const std::string text = "Date,Open,High,Low,Close,Volume,Adj.Close\n"
                                 "2015-06-23,39.89,39.95,39.42,39.60,2053600,39.60\n"
                                 "2015-06-23,39.81,40.01,39.73,39.81,3901700,39.81\n";
        CHECK_THROWS_AS(parse_yahoo(text), ParseError);
    }
    SUBCASE("header order does not matter") {
        const std::string text = "Open,Date,High,Low,Close,Adj.Close,Volume\n"
                                 "39.89,2015-06-23,39.95,39.42,39.60,39.60,2053600\n";
        const MarketSeries series = parse_yahoo(text);
        REQUIRE(series.rows() == 1);
        CHECK(series.open[0] == doctest::Approx(39.89));
        CHECK(series.volume[0] == 2053600.0);
    }
}

TEST_CASE("investing parser on the fixture") {
    const MarketSeries series = parse_investing(fixture("crude_oil_10.csv"));
    REQUIRE(series.rows() == 10);
    // Table row 2015-06-12: open 60.92, volume 91.96K, change -1.34%
    const std::size_t i = 2; // ascending order: 06-10, 06-11, 06-12
    CHECK(series.dates[i].iso() == "2015-06-12");
    CHECK(series.open[i] == doctest::Approx(60.92).epsilon(1e-12));
    CHECK(series.volume[i] == 91960.0);
    CHECK(series.change[i] == doctest::Approx(-0.0134).epsilon(1e-12));
    // suffix expansion is exact: 336.22K on 06-23
    CHECK(series.volume.back() == 336220.0);
    CHECK(series.change.back() == doctest::Approx(0.0104).epsilon(1e-12));
}

TEST_CASE("tiny change values survive the percent round trip") {
    MarketSeries series;
    series.dates = {Date::parse("2015-06-10")};
    series.price = {60.0};
    series.open = {60.0};
    series.high = {61.0};
    series.low = {59.0};
    series.volume = {100.0};
    series.change = {1e-5}; // shortest double text is scientific
    const MarketSeries again = parse_investing(to_investing_csv(series));
    REQUIRE(again.rows() == 1);
    CHECK(again.change[0] == series.change[0]);
}

TEST_CASE("investing parser error paths") {
    const std::string header = "Date,Price,Open,High,Low,Vol.,Change\n";
    CHECK_THROWS_AS(parse_investing(header + "2015-06-23,61.01,60.21,61.49,59.55,336.22Q,1.04%\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_investing(header + "2015-06-23,61.01,60.21,61.49,59.55,336.22K,1.04\n"),
                    ParseError);
    CHECK(parse_investing("").rows() == 0);
}

TEST_CASE("round trip: parse, serialize, parse") {
    const MarketSeries yahoo = parse_yahoo(fixture("agilent_10.csv"));
    const MarketSeries yahoo_again = parse_yahoo(to_yahoo_csv(yahoo));
    CHECK(yahoo_again.dates == yahoo.dates);
    CHECK(yahoo_again.open == yahoo.open);
    CHECK(yahoo_again.high == yahoo.high);
    CHECK(yahoo_again.low == yahoo.low);
    CHECK(yahoo_again.close == yahoo.close);
    CHECK(yahoo_again.volume == yahoo.volume);
    CHECK(yahoo_again.adj_close == yahoo.adj_close);

    const MarketSeries oil = parse_investing(fixture("crude_oil_10.csv"));
    const MarketSeries oil_again = parse_investing(to_investing_csv(oil));
    CHECK(oil_again.dates == oil.dates);
    CHECK(oil_again.price == oil.price);
    CHECK(oil_again.open == oil.open);
    CHECK(oil_again.volume == oil.volume);
    CHECK(oil_again.change == oil.change);
}

TEST_CASE("returns and increments match the committed oracle") {
    const ExpectedPipeline expected = load_expected();
    const MarketSeries oil = parse_investing(fixture("crude_oil_10.csv"));
    const MarketSeries equity = parse_yahoo(fixture("agilent_10.csv"));

    check_series(percent_returns(oil), expected.oil_returns);
    check_series(percent_returns(equity), expected.equity_returns);
    check_series(volume_increments(equity), expected.volume_increments);
}

TEST_CASE("returns error paths") {
    MarketSeries series;
    series.dates = {Date::parse("2015-06-10"), Date::parse("2015-06-11")};
    series.open = {0.0, 10.0};
    series.volume = {100.0, 200.0};
    CHECK_THROWS_AS(percent_returns(series), std::invalid_argument);
    series.open = {10.0, 11.0};
    series.volume = {0.0, 200.0};
    CHECK_THROWS_AS(volume_increments(series), std::invalid_argument);

    MarketSeries single;
    single.dates = {Date::parse("2015-06-10")};
    single.open = {10.0};
    CHECK_THROWS_AS(percent_returns(single), std::invalid_argument);

    MarketSeries constant;
    constant.dates = series.dates;
    constant.open = {10.0, 10.0};
    constant.volume = {5.0, 5.0};
    CHECK(percent_returns(constant)[0].value == 0.0);
    CHECK(volume_increments(constant)[0].value == 0.0);
}

TEST_CASE("calendar alignment") {
    const MarketSeries oil = parse_investing(fixture("crude_oil_10.csv"));
    const MarketSeries equity = parse_yahoo(fixture("agilent_10.csv"));

    SUBCASE("identical calendars intersect to themselves") {
        const std::vector<MarketSeries> both = {oil, equity};
        const std::vector<Date> calendar = align_calendar(both);
        CHECK(calendar == oil.dates);
    }

    SUBCASE("a missing day drops everywhere") {
        MarketSeries trimmed = equity;
        trimmed.dates.erase(trimmed.dates.begin() + 4);
        trimmed.open.erase(trimmed.open.begin() + 4);
        trimmed.high.erase(trimmed.high.begin() + 4);
        trimmed.low.erase(trimmed.low.begin() + 4);
        trimmed.close.erase(trimmed.close.begin() + 4);
        trimmed.volume.erase(trimmed.volume.begin() + 4);
        trimmed.adj_close.erase(trimmed.adj_close.begin() + 4);
        const std::vector<MarketSeries> both = {oil, trimmed};
        const std::vector<Date> calendar = align_calendar(both);
        CHECK(calendar.size() == 9);
        for (const Date& date : calendar) CHECK(!(date == Date::parse("2015-06-16")));
    }

    SUBCASE("empty intersection is an error") {
        MarketSeries other;
        other.dates = {Date::parse("2020-01-02")};
        other.open = {1.0};
        const std::vector<MarketSeries> both = {oil, other};
        CHECK_THROWS_AS(align_calendar(both), std::invalid_argument);
    }

    SUBCASE("two-date calendar normalizes to {0, 1}") {
        const std::vector<Date> calendar = {Date::parse("2015-06-10"), Date::parse("2015-06-23")};
        CHECK(calendar_position(calendar, calendar[0]) == 0.0);
        CHECK(calendar_position(calendar, calendar[1]) == 1.0);
    }

    SUBCASE("restriction errors on a missing date") {
        const std::vector<Date> calendar = {Date::parse("2015-06-10"), Date::parse("2015-07-01")};
        CHECK_THROWS_AS(restrict_to_calendar(equity, calendar), std::invalid_argument);
    }
}

TEST_CASE("schedule and counts from the fixture thresholds") {
    const ExpectedPipeline expected = load_expected();
    const MarketSeries oil = parse_investing(fixture("crude_oil_10.csv"));
    const MarketSeries equity = parse_yahoo(fixture("agilent_10.csv"));
    const std::vector<MarketSeries> both = {oil, equity};
    const std::vector<Date> calendar = align_calendar(both);
    const auto denominator = static_cast<double>(calendar.size() - 1);

    const ObservationSchedule schedule = build_schedule(percent_returns(oil), -0.01, calendar);
    REQUIRE(schedule.times.size() == expected.schedule_dates.size());
    for (std::size_t j = 0; j < schedule.times.size(); ++j) {
        CHECK(schedule.times[j] ==
              static_cast<double>(expected.schedule_dates[j].second) / denominator);
    }

    const CountingRealization counts = build_counts(percent_returns(equity), -0.015, calendar);
    REQUIRE(counts.jump_times.size() == expected.jump_dates.size());
    for (std::size_t j = 0; j < counts.jump_times.size(); ++j) {
        CHECK(counts.jump_times[j] ==
              static_cast<double>(expected.jump_dates[j].second) / denominator);
    }

    // 2015-06-12 is on the schedule; 2015-06-15 is not
    const double position_0612 = calendar_position(calendar, Date::parse("2015-06-12"));
    const double position_0615 = calendar_position(calendar, Date::parse("2015-06-15"));
    CHECK(std::find(schedule.times.begin(), schedule.times.end(), position_0612) !=
          schedule.times.end());
    CHECK(std::find(schedule.times.begin(), schedule.times.end(), position_0615) ==
          schedule.times.end());
}

TEST_CASE("threshold monotonicity") {
    const MarketSeries oil = parse_investing(fixture("crude_oil_10.csv"));
    const std::vector<MarketSeries> one = {oil};
    const std::vector<Date> calendar = align_calendar(one);
    const auto returns = percent_returns(oil);

    std::size_t previous = build_schedule(returns, 0.02, calendar).times.size();
    for (double alpha : {0.005, 0.0, -0.005, -0.01, -0.015, -0.02, -1.0}) {
        const std::size_t count = build_schedule(returns, alpha, calendar).times.size();
        CHECK(count <= previous);
        previous = count;
    }
    CHECK(build_schedule(returns, -1.0, calendar).times.empty());

    // strict inequality: a return exactly at the threshold does not trigger
    const auto exact = returns[0].value;
    const std::size_t with_exact = build_counts(returns, exact, calendar).jump_times.size();
    std::size_t strictly_below = 0;
    for (const DatedValue& item : returns) {
        if (item.value < exact) ++strictly_below;
    }
    CHECK(with_exact == strictly_below);
}
