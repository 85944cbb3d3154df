#ifndef GREYCAST_CSV_HPP
#define GREYCAST_CSV_HPP

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "greycast/errors.hpp"
#include "greycast/numio.hpp"
#include "greycast/series.hpp"

namespace greycast {

/// Column layout of an input CSV. Defaults cover the two documented shapes:
/// `date,open,high,low,close` and `date,value`.
struct CsvSchema {
    std::string date_column = "date";
    // Empty entries fall back on auto-detection from the header.
    std::string open_column, high_column, low_column, close_column, value_column;
};

struct RejectedRow {
    std::size_t line_number; // 1-based, header included
    std::string reason;
};

struct CsvLoadResult {
    OhlcFrame frame;
    std::vector<RejectedRow> rejected;
};

namespace detail {

struct RawRow {
    std::string date;
    double open, high, low, close;
};

} // namespace detail

/// Reads a CSV file into an OhlcFrame. Rows whose values fail to parse (or
/// are non-finite) are rejected and reported with their line numbers; rows
/// are sorted by date afterwards; duplicate dates are an error naming the
/// offending dates. Univariate files replicate `value` across all channels.
inline CsvLoadResult load_csv(const std::string& path, const CsvSchema& schema = {}) {
    std::ifstream in(path);
    if (!in) throw DataError("load_csv: cannot open '" + path + "'");

    std::string header_line;
    if (!std::getline(in, header_line)) throw DataError("load_csv: '" + path + "' is empty");
    auto header = split(trim(header_line), ',');
    std::map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < header.size(); ++i) col[std::string(trim(header[i]))] = i;

    auto find = [&](const std::string& name) -> std::optional<std::size_t> {
        auto it = col.find(name);
        if (it == col.end()) return std::nullopt;
        return it->second;
    };

    auto date_idx = find(schema.date_column);
    if (!date_idx) throw DataError("load_csv: missing column '" + schema.date_column + "' in '" + path + "'");

    const bool explicit_value = !schema.value_column.empty();
    std::optional<std::size_t> o_idx, h_idx, l_idx, c_idx, v_idx;
    if (explicit_value) {
        v_idx = find(schema.value_column);
        if (!v_idx) throw DataError("load_csv: missing column '" + schema.value_column + "'");
    } else {
        o_idx = find(schema.open_column.empty() ? "open" : schema.open_column);
        h_idx = find(schema.high_column.empty() ? "high" : schema.high_column);
        l_idx = find(schema.low_column.empty() ? "low" : schema.low_column);
        c_idx = find(schema.close_column.empty() ? "close" : schema.close_column);
        const bool ohlc = o_idx && h_idx && l_idx && c_idx;
        if (!ohlc) {
            v_idx = find("value");
            if (!v_idx) {
                if (!schema.open_column.empty() || !schema.close_column.empty())
                    throw DataError("load_csv: declared OHLC columns not all present in '" + path + "'");
                throw DataError("load_csv: '" + path +
                                "' has neither open/high/low/close nor value columns");
            }
        }
    }

    std::vector<detail::RawRow> rows;
    std::vector<RejectedRow> rejected;
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        auto t = trim(line);
        if (t.empty()) continue;
        auto fields = split(t, ',');
        auto field = [&](std::size_t i) -> std::string_view {
            return i < fields.size() ? fields[i] : std::string_view{};
        };

        detail::RawRow row;
        row.date = std::string(trim(field(*date_idx)));
        if (!detail::valid_iso_date(row.date)) {
            rejected.push_back({line_no, "unparseable date '" + row.date + "'"});
            continue;
        }
        bool ok = true;
        auto take = [&](std::optional<std::size_t> idx, const char* what, double& out) {
            if (!ok) return;
            if (!parse_double(field(*idx), out) || !std::isfinite(out)) {
                rejected.push_back({line_no, std::string("bad ") + what + " value '" +
                                                 std::string(trim(field(*idx))) + "'"});
                ok = false;
            }
        };
        if (v_idx) {
            double v = 0.0;
            take(v_idx, "value", v);
            if (!ok) continue;
            row.open = row.high = row.low = row.close = v;
        } else {
            take(o_idx, "open", row.open);
            take(h_idx, "high", row.high);
            take(l_idx, "low", row.low);
            take(c_idx, "close", row.close);
            if (!ok) continue;
        }
        rows.push_back(std::move(row));
    }

    std::stable_sort(rows.begin(), rows.end(),
                     [](const detail::RawRow& a, const detail::RawRow& b) { return a.date < b.date; });
    std::string dup_dates;
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].date == rows[i - 1].date) dup_dates += (dup_dates.empty() ? "" : ", ") + rows[i].date;
    if (!dup_dates.empty()) throw DataError("load_csv: duplicate dates in '" + path + "': " + dup_dates);

    std::vector<std::string> ts;
    std::vector<double> o, h, l, c;
    ts.reserve(rows.size());
    for (auto& r : rows) {
        ts.push_back(std::move(r.date));
        o.push_back(r.open);
        h.push_back(r.high);
        l.push_back(r.low);
        c.push_back(r.close);
    }
    return CsvLoadResult{OhlcFrame(std::move(ts), std::move(o), std::move(h), std::move(l), std::move(c), path),
                         std::move(rejected)};
}

/// Writes a frame back out with shortest round-trip formatting, so that
/// load(write(frame)) reproduces values bit-exactly.
inline void write_csv(const OhlcFrame& frame, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("write_csv: cannot open '" + path + "' for writing");
    out << "date,open,high,low,close\n";
    for (std::size_t i = 0; i < frame.size(); ++i) {
        out << frame.timestamps()[i] << ',' << format_exact(frame.open()[i]) << ','
            << format_exact(frame.high()[i]) << ',' << format_exact(frame.low()[i]) << ','
            << format_exact(frame.close()[i]) << '\n';
    }
}

inline void write_series_csv(const Series& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("write_series_csv: cannot open '" + path + "' for writing");
    out << "date,value\n";
    for (std::size_t i = 0; i < s.size(); ++i)
        out << s.timestamps()[i] << ',' << format_exact(s.values()[i]) << '\n';
}

} // namespace greycast

#endif
