#pragma once

#include "coxkde/process.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace coxkde {

// Calendar date; ordering is lexicographic on (year, month, day).
struct Date {
    int year = 0;
    int month = 0;
    int day = 0;

    friend auto operator<=>(const Date&, const Date&) = default;

    std::string iso() const;
    // strict ISO YYYY-MM-DD
    static Date parse(std::string_view text);
};

struct DatedValue {
    Date date;
    double value = 0.0;
};

// Daily market rows, normalized to ascending dates. Columns that a format
// does not carry stay empty.
struct MarketSeries {
    std::vector<Date> dates;
    std::vector<double> open;
    std::vector<double> high;
    std::vector<double> low;
    std::vector<double> close;
    std::vector<double> volume;
    std::vector<double> adj_close; // Yahoo only
    std::vector<double> price;     // Investing only
    std::vector<double> change;    // Investing only, stored as a decimal fraction

    std::size_t rows() const noexcept { return dates.size(); }
};

struct ThresholdConfig {
    double alpha = -0.01;     // schedule trigger on the driving series returns
    double beta_thr = -0.015; // jump trigger on the per-company returns
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::size_t line)
        : std::runtime_error(std::move(message)), line_(line) {}

    // 1-based line number in the source text, 0 when not tied to a line
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Header Date,Open,High,Low,Close,Volume,Adj.Close (any order, case and
// whitespace tolerant). Rows are sorted ascending; duplicate dates are
// rejected.
MarketSeries parse_yahoo(std::string_view csv_text);

// Header Date,Price,Open,High,Low,Vol.,Change. Volume suffixes K/M/B expand
// decimally (336.22K -> 336220 exactly); Change loses its % sign and is
// stored divided by 100.
MarketSeries parse_investing(std::string_view csv_text);

std::string to_yahoo_csv(const MarketSeries& series);
std::string to_investing_csv(const MarketSeries& series);

// Day-over-day relative changes of the open column; errors name the date of
// a non-positive previous open.
std::vector<DatedValue> percent_returns(const MarketSeries& series);

// Same for the volume column.
std::vector<DatedValue> volume_increments(const MarketSeries& series);

// Ascending intersection of the trading days of all series; errors when the
// intersection is empty.
std::vector<Date> align_calendar(std::span<const MarketSeries> series);

// The series restricted to exactly the calendar dates; a missing date is an
// error, never imputed.
MarketSeries restrict_to_calendar(const MarketSeries& series, std::span<const Date> calendar);

// Position of a date in [0, 1], uniform in trading-day index (first date 0,
// last date 1). The date must be on the calendar.
double calendar_position(std::span<const Date> calendar, const Date& date);

// Observation times at the normalized positions of the dates whose return
// falls strictly below alpha.
ObservationSchedule build_schedule(std::span<const DatedValue> driving_returns, double alpha,
                                   std::span<const Date> calendar);

// Jump times at the normalized positions of the dates whose return falls
// strictly below the threshold.
CountingRealization build_counts(std::span<const DatedValue> returns, double threshold,
                                 std::span<const Date> calendar);

} // namespace coxkde
