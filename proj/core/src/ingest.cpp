#include "coxkde/ingest.hpp"

#include "detail_text.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <numeric>
#include <set>

namespace coxkde {

namespace {

using detail::split_csv_line;
using detail::trim;

std::string normalize_header(std::string_view cell) {
    std::string name;
    for (char c : cell) {
        if (c == ' ' || c == '\t') continue;
        name.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return name;
}

struct RawRow {
    Date date;
    std::size_t line = 0;
    std::vector<double> fields;
};

// Splits the text into non-empty lines, keyed by 1-based physical line number.
std::vector<std::pair<std::size_t, std::string_view>> numbered_lines(std::string_view text) {
    std::vector<std::pair<std::size_t, std::string_view>> lines;
    std::size_t number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t newline = text.find('\n', start);
        const std::size_t end = newline == std::string_view::npos ? text.size() : newline;
        ++number;
        const std::string_view line = trim(text.substr(start, end - start));
        if (!line.empty()) lines.emplace_back(number, line);
        if (newline == std::string_view::npos) break;
        start = newline + 1;
    }
    return lines;
}

int parse_int_field(std::string_view text, std::size_t line, const char* what) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ParseError(std::string("unparseable ") + what + " in row at line " +
                             std::to_string(line),
                         line);
    }
    return value;
}

Date parse_date_field(std::string_view text, std::size_t line) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        throw ParseError("malformed date (expected YYYY-MM-DD) at line " + std::to_string(line),
                         line);
    }
    Date date;
    date.year = parse_int_field(text.substr(0, 4), line, "date");
    date.month = parse_int_field(text.substr(5, 2), line, "date");
    date.day = parse_int_field(text.substr(8, 2), line, "date");
    if (date.month < 1 || date.month > 12 || date.day < 1 || date.day > 31) {
        throw ParseError("date out of range at line " + std::to_string(line), line);
    }
    return date;
}

double parse_number_field(std::string_view text, std::size_t line, const char* column) {
    double value = 0.0;
    if (!detail::parse_double(text, value)) {
        throw ParseError(std::string("unparseable number in column ") + column + " at line " +
                             std::to_string(line),
                         line);
    }
    return value;
}

// "336.22K" -> 336220 by shifting the decimal point, so suffix expansion is
// exact. Plain numbers pass through.
double parse_volume_field(std::string_view text, std::size_t line) {
    text = trim(text);
    if (text.empty()) throw ParseError("empty volume at line " + std::to_string(line), line);
    int shift = 0;
    switch (text.back()) {
    case 'K': case 'k': shift = 3; break;
    case 'M': case 'm': shift = 6; break;
    case 'B': case 'b': shift = 9; break;
    default:
        if (!std::isdigit(static_cast<unsigned char>(text.back())) && text.back() != '.') {
            throw ParseError("unknown volume suffix at line " + std::to_string(line), line);
        }
    }
    if (shift != 0) text.remove_suffix(1);
    double value = 0.0;
    try {
        if (!detail::parse_double(detail::shift_decimal(text, shift), value)) {
            throw ParseError("unparseable volume at line " + std::to_string(line), line);
        }
    } catch (const std::invalid_argument&) {
        throw ParseError("unparseable volume at line " + std::to_string(line), line);
    }
    return value;
}

// "1.04%" -> 0.0104, again via an exact decimal shift
double parse_change_field(std::string_view text, std::size_t line) {
    text = trim(text);
    if (text.empty() || text.back() != '%') {
        throw ParseError("change column must end in % at line " + std::to_string(line), line);
    }
    text.remove_suffix(1);
    double value = 0.0;
    try {
        if (!detail::parse_double(detail::shift_decimal(text, -2), value)) {
            throw ParseError("unparseable change at line " + std::to_string(line), line);
        }
    } catch (const std::invalid_argument&) {
        throw ParseError("unparseable change at line " + std::to_string(line), line);
    }
    return value;
}

std::map<std::string, std::size_t> read_header(std::string_view line,
                                               const std::vector<std::string>& required) {
    std::map<std::string, std::size_t> columns;
    const auto cells = split_csv_line(line);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        columns[normalize_header(cells[i])] = i;
    }
    for (const std::string& name : required) {
        if (!columns.contains(name)) {
            throw ParseError("missing required column '" + name + "'", 1);
        }
    }
    return columns;
}

void sort_and_check_dates(std::vector<RawRow>& rows) {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const RawRow& a, const RawRow& b) { return a.date < b.date; });
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].date == rows[i - 1].date) {
            throw ParseError("duplicate date " + rows[i].date.iso() + " at line " +
                                 std::to_string(rows[i].line),
                             rows[i].line);
        }
    }
}

} // namespace

std::string Date::iso() const {
    char buffer[11];
    std::snprintf(buffer, sizeof(buffer), "%04d-%02d-%02d", year, month, day);
    return buffer;
}

Date Date::parse(std::string_view text) { return parse_date_field(trim(text), 0); }

MarketSeries parse_yahoo(std::string_view csv_text) {
    const auto lines = numbered_lines(csv_text);
    MarketSeries series;
    if (lines.empty()) return series;

    const std::vector<std::string> names = {"date", "open",   "high",     "low",
                                            "close", "volume", "adj.close"};
    const auto columns = read_header(lines.front().second, names);

    std::vector<RawRow> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto [line_number, line] = lines[i];
        const auto cells = split_csv_line(line);
        if (cells.size() <= columns.at("adj.close") || cells.size() < names.size()) {
            throw ParseError("too few fields at line " + std::to_string(line_number), line_number);
        }
        RawRow row;
        row.line = line_number;
        row.date = parse_date_field(cells[columns.at("date")], line_number);
        for (std::size_t c = 1; c < names.size(); ++c) {
            row.fields.push_back(
                parse_number_field(cells[columns.at(names[c])], line_number, names[c].c_str()));
        }
        rows.push_back(std::move(row));
    }
    sort_and_check_dates(rows);

    for (const RawRow& row : rows) {
        series.dates.push_back(row.date);
        series.open.push_back(row.fields[0]);
        series.high.push_back(row.fields[1]);
        series.low.push_back(row.fields[2]);
        series.close.push_back(row.fields[3]);
        series.volume.push_back(row.fields[4]);
        series.adj_close.push_back(row.fields[5]);
    }
    return series;
}

MarketSeries parse_investing(std::string_view csv_text) {
    const auto lines = numbered_lines(csv_text);
    MarketSeries series;
    if (lines.empty()) return series;

    const std::vector<std::string> names = {"date", "price", "open", "high", "low", "vol.", "change"};
    const auto columns = read_header(lines.front().second, names);

    std::vector<RawRow> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto [line_number, line] = lines[i];
        const auto cells = split_csv_line(line);
        if (cells.size() < names.size()) {
            throw ParseError("too few fields at line " + std::to_string(line_number), line_number);
        }
        RawRow row;
        row.line = line_number;
        row.date = parse_date_field(cells[columns.at("date")], line_number);
        row.fields.push_back(parse_number_field(cells[columns.at("price")], line_number, "price"));
        row.fields.push_back(parse_number_field(cells[columns.at("open")], line_number, "open"));
        row.fields.push_back(parse_number_field(cells[columns.at("high")], line_number, "high"));
        row.fields.push_back(parse_number_field(cells[columns.at("low")], line_number, "low"));
        row.fields.push_back(parse_volume_field(cells[columns.at("vol.")], line_number));
        row.fields.push_back(parse_change_field(cells[columns.at("change")], line_number));
        rows.push_back(std::move(row));
    }
    sort_and_check_dates(rows);

    for (const RawRow& row : rows) {
        series.dates.push_back(row.date);
        series.price.push_back(row.fields[0]);
        series.open.push_back(row.fields[1]);
        series.high.push_back(row.fields[2]);
        series.low.push_back(row.fields[3]);
        series.volume.push_back(row.fields[4]);
        series.change.push_back(row.fields[5]);
    }
    return series;
}

std::string to_yahoo_csv(const MarketSeries& series) {
    std::string out = "Date,Open,High,Low,Close,Volume,Adj.Close\n";
    for (std::size_t i = 0; i < series.rows(); ++i) {
        out += series.dates[i].iso();
        for (const auto* column : {&series.open, &series.high, &series.low, &series.close,
                                   &series.volume, &series.adj_close}) {
            out += ',';
            out += detail::format_double((*column)[i]);
        }
        out += '\n';
    }
    return out;
}

std::string to_investing_csv(const MarketSeries& series) {
    std::string out = "Date,Price,Open,High,Low,Vol.,Change\n";
    for (std::size_t i = 0; i < series.rows(); ++i) {
        out += series.dates[i].iso();
        for (const auto* column : {&series.price, &series.open, &series.high, &series.low}) {
            out += ',';
            out += detail::format_double((*column)[i]);
        }
        out += ',';
        out += detail::format_double(series.volume[i]);
        out += ',';
        out += detail::shift_decimal(detail::format_double(series.change[i]), 2);
        out += "%\n";
    }
    return out;
}

std::vector<DatedValue> percent_returns(const MarketSeries& series) {
    if (series.rows() < 2) {
        throw std::invalid_argument("percent returns: need at least two rows");
    }
    std::vector<DatedValue> returns;
    returns.reserve(series.rows() - 1);
    for (std::size_t i = 1; i < series.rows(); ++i) {
        const double previous = series.open[i - 1];
        if (!(previous > 0.0)) {
            throw std::invalid_argument("percent returns: non-positive open before " +
                                        series.dates[i].iso());
        }
        returns.push_back({series.dates[i], (series.open[i] - previous) / previous});
    }
    return returns;
}

std::vector<DatedValue> volume_increments(const MarketSeries& series) {
    if (series.rows() < 2) {
        throw std::invalid_argument("volume increments: need at least two rows");
    }
    std::vector<DatedValue> increments;
    increments.reserve(series.rows() - 1);
    for (std::size_t i = 1; i < series.rows(); ++i) {
        const double previous = series.volume[i - 1];
        if (!(previous > 0.0)) {
            throw std::invalid_argument("volume increments: non-positive volume before " +
                                        series.dates[i].iso());
        }
        increments.push_back({series.dates[i], (series.volume[i] - previous) / previous});
    }
    return increments;
}

std::vector<Date> align_calendar(std::span<const MarketSeries> series) {
    if (series.empty()) throw std::invalid_argument("align_calendar: need at least one series");
    std::set<Date> shared(series.front().dates.begin(), series.front().dates.end());
    for (std::size_t s = 1; s < series.size(); ++s) {
        const std::set<Date> dates(series[s].dates.begin(), series[s].dates.end());
        std::set<Date> kept;
        std::ranges::set_intersection(shared, dates, std::inserter(kept, kept.begin()));
        shared.swap(kept);
    }
    if (shared.empty()) throw std::invalid_argument("align_calendar: empty intersection");
    return {shared.begin(), shared.end()};
}

MarketSeries restrict_to_calendar(const MarketSeries& series, std::span<const Date> calendar) {
    MarketSeries restricted;
    auto copy_row = [&](std::size_t i) {
        restricted.dates.push_back(series.dates[i]);
        for (auto [to, from] :
             {std::pair{&restricted.open, &series.open}, {&restricted.high, &series.high},
              {&restricted.low, &series.low}, {&restricted.close, &series.close},
              {&restricted.volume, &series.volume}, {&restricted.adj_close, &series.adj_close},
              {&restricted.price, &series.price}, {&restricted.change, &series.change}}) {
            if (!from->empty()) to->push_back((*from)[i]);
        }
    };
    for (const Date& date : calendar) {
        const auto it = std::lower_bound(series.dates.begin(), series.dates.end(), date);
        if (it == series.dates.end() || !(*it == date)) {
            throw std::invalid_argument("series is missing the aligned date " + date.iso());
        }
        copy_row(static_cast<std::size_t>(it - series.dates.begin()));
    }
    return restricted;
}

double calendar_position(std::span<const Date> calendar, const Date& date) {
    if (calendar.size() < 2) {
        throw std::invalid_argument("calendar position: need at least two dates");
    }
    const auto it = std::lower_bound(calendar.begin(), calendar.end(), date);
    if (it == calendar.end() || !(*it == date)) {
        throw std::invalid_argument("date " + date.iso() + " is not on the calendar");
    }
    return static_cast<double>(it - calendar.begin()) / static_cast<double>(calendar.size() - 1);
}

ObservationSchedule build_schedule(std::span<const DatedValue> driving_returns, double alpha,
                                   std::span<const Date> calendar) {
    ObservationSchedule schedule;
    schedule.horizon = 1.0;
    for (const DatedValue& item : driving_returns) {
        if (item.value < alpha) {
            schedule.times.push_back(calendar_position(calendar, item.date));
        }
    }
    schedule.validate();
    return schedule;
}

CountingRealization build_counts(std::span<const DatedValue> returns, double threshold,
                                 std::span<const Date> calendar) {
    CountingRealization realization;
    for (const DatedValue& item : returns) {
        if (item.value < threshold) {
            realization.jump_times.push_back(calendar_position(calendar, item.date));
        }
    }
    realization.validate();
    return realization;
}

} // namespace coxkde
