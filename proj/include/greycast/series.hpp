#ifndef GREYCAST_SERIES_HPP
#define GREYCAST_SERIES_HPP

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "greycast/errors.hpp"

namespace greycast {

enum class Channel { open, high, low, close };

inline const char* channel_name(Channel c) {
    switch (c) {
        case Channel::open: return "open";
        case Channel::high: return "high";
        case Channel::low: return "low";
        case Channel::close: return "close";
    }
    return "?";
}

namespace detail {

// Howard Hinnant's civil date algorithms; enough calendar support to mint
// synthetic ISO dates without dragging in locale-dependent machinery.
inline std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

inline void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const int yr = static_cast<int>(yoe) + static_cast<int>(era) * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y = yr + (m <= 2);
}

inline std::string iso_date(std::int64_t day_number) {
    int y;
    unsigned m, d;
    civil_from_days(day_number, y, m, d);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", y, m, d);
    return std::string(buf);
}

inline bool valid_iso_date(const std::string& s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (s[i] < '0' || s[i] > '9') return false;
    int m = (s[5] - '0') * 10 + (s[6] - '0');
    int d = (s[8] - '0') * 10 + (s[9] - '0');
    return m >= 1 && m <= 12 && d >= 1 && d <= 31;
}

} // namespace detail

/// Univariate price series. Immutable after construction; the constructor
/// enforces strictly increasing dates and finite values.
class Series {
public:
    Series(std::vector<std::string> timestamps, std::vector<double> values,
           Channel channel = Channel::close, std::string name = "series")
        : timestamps_(std::move(timestamps)),
          values_(std::move(values)),
          channel_(channel),
          name_(std::move(name)) {
        if (timestamps_.size() != values_.size())
            throw DataError("series '" + name_ + "': timestamp/value length mismatch");
        // Slices (e.g. a 1-day test window) may be shorter than ingested
        // series, which OhlcFrame holds to >= 2 rows.
        if (values_.empty())
            throw DataError("series '" + name_ + "': empty");
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (!std::isfinite(values_[i]))
                throw DataError("series '" + name_ + "': non-finite value at index " + std::to_string(i));
            if (i > 0 && !(timestamps_[i - 1] < timestamps_[i]))
                throw DataError("series '" + name_ + "': timestamps not strictly increasing at " +
                                timestamps_[i]);
        }
    }

    /// Builds a series with synthetic consecutive dates (tests, generators).
    static Series synthetic(std::vector<double> values, std::string name = "series",
                            Channel channel = Channel::close) {
        const std::int64_t base = detail::days_from_civil(2000, 1, 1);
        std::vector<std::string> ts;
        ts.reserve(values.size());
        for (std::size_t i = 0; i < values.size(); ++i)
            ts.push_back(detail::iso_date(base + static_cast<std::int64_t>(i)));
        return Series(std::move(ts), std::move(values), channel, std::move(name));
    }

    const std::vector<std::string>& timestamps() const { return timestamps_; }
    const std::vector<double>& values() const { return values_; }
    Channel channel() const { return channel_; }
    const std::string& name() const { return name_; }
    std::size_t size() const { return values_.size(); }

private:
    std::vector<std::string> timestamps_;
    std::vector<double> values_;
    Channel channel_;
    std::string name_;
};

/// Aligned open/high/low/close frame. OHLC ordering violations are recorded
/// as warnings, not failures; real feeds contain them.
class OhlcFrame {
public:
    OhlcFrame(std::vector<std::string> timestamps, std::vector<double> open,
              std::vector<double> high, std::vector<double> low, std::vector<double> close,
              std::string name = "frame")
        : timestamps_(std::move(timestamps)),
          open_(std::move(open)),
          high_(std::move(high)),
          low_(std::move(low)),
          close_(std::move(close)),
          name_(std::move(name)) {
        const std::size_t n = timestamps_.size();
        if (open_.size() != n || high_.size() != n || low_.size() != n || close_.size() != n)
            throw DataError("frame '" + name_ + "': channel length mismatch");
        if (n < 2) throw DataError("frame '" + name_ + "': need at least 2 rows");
        for (std::size_t i = 0; i < n; ++i) {
            for (double v : {open_[i], high_[i], low_[i], close_[i]})
                if (!std::isfinite(v))
                    throw DataError("frame '" + name_ + "': non-finite value at row " + std::to_string(i));
            if (i > 0 && !(timestamps_[i - 1] < timestamps_[i]))
                throw DataError("frame '" + name_ + "': duplicate or out-of-order date " + timestamps_[i]);
            double lo = std::min(open_[i], close_[i]);
            double hi = std::max(open_[i], close_[i]);
            if (low_[i] > lo || high_[i] < hi)
                warnings_.push_back("row " + std::to_string(i) + " (" + timestamps_[i] +
                                    "): OHLC ordering violated");
        }
    }

    static OhlcFrame from_close(const Series& s) {
        return OhlcFrame(s.timestamps(), s.values(), s.values(), s.values(), s.values(), s.name());
    }

    Series channel(Channel c) const {
        const std::vector<double>* v = nullptr;
        switch (c) {
            case Channel::open: v = &open_; break;
            case Channel::high: v = &high_; break;
            case Channel::low: v = &low_; break;
            case Channel::close: v = &close_; break;
        }
        return Series(timestamps_, *v, c, name_ + "." + channel_name(c));
    }

    const std::vector<std::string>& timestamps() const { return timestamps_; }
    const std::vector<double>& open() const { return open_; }
    const std::vector<double>& high() const { return high_; }
    const std::vector<double>& low() const { return low_; }
    const std::vector<double>& close() const { return close_; }
    const std::vector<std::string>& warnings() const { return warnings_; }
    const std::string& name() const { return name_; }
    std::size_t size() const { return timestamps_.size(); }

private:
    std::vector<std::string> timestamps_;
    std::vector<double> open_, high_, low_, close_;
    std::string name_;
    std::vector<std::string> warnings_;
};

struct SplitSpec {
    std::size_t fit_length = 70;
    std::size_t horizon = 22;
};

/// Splits off the trailing fit+horizon window: fit takes the first
/// fit_length points of that window, test the remaining horizon points.
/// Their concatenation is exactly the window.
inline std::pair<Series, Series> split(const Series& series, const SplitSpec& spec) {
    if (spec.fit_length == 0 || spec.horizon == 0)
        throw DataError("split: fit_length and horizon must be positive");
    const std::size_t need = spec.fit_length + spec.horizon;
    if (need > series.size())
        throw DataError("split: fit_length + horizon = " + std::to_string(need) +
                        " exceeds series length " + std::to_string(series.size()));
    const std::size_t start = series.size() - need;
    auto slice = [&](std::size_t from, std::size_t count, const char* tag) {
        std::vector<std::string> ts(series.timestamps().begin() + static_cast<std::ptrdiff_t>(from),
                                    series.timestamps().begin() + static_cast<std::ptrdiff_t>(from + count));
        std::vector<double> vs(series.values().begin() + static_cast<std::ptrdiff_t>(from),
                               series.values().begin() + static_cast<std::ptrdiff_t>(from + count));
        return Series(std::move(ts), std::move(vs), series.channel(), series.name() + "." + tag);
    };
    return {slice(start, spec.fit_length, "fit"), slice(start + spec.fit_length, spec.horizon, "test")};
}

} // namespace greycast

#endif
