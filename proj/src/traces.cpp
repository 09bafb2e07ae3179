#include "opr/traces.hpp"

#include "opr/errors.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

namespace opr {

namespace {

constexpr std::int64_t kHour = 3600;
constexpr std::int64_t kSyntheticStart = 1640995200; // 2022-01-01T00:00:00Z

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

bool parse_double(std::string_view s, double& out)
{
    s = trim(s);
    if (s.empty())
        return false;
    // strtod accepts forms from_chars rejects (leading '+'); keep both lenient
    // and strict about trailing junk.
    std::string buf(s);
    char* end = nullptr;
    out = std::strtod(buf.c_str(), &end);
    return end == buf.c_str() + buf.size() && std::isfinite(out);
}

template <class Int>
bool parse_int(std::string_view s, Int& out)
{
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    const auto res = std::from_chars(first, last, out);
    return res.ec == std::errc{} && res.ptr == last;
}

} // namespace

std::string_view to_string(TraceKind kind)
{
    return kind == TraceKind::Intensity ? "intensity" : "carbon_free_pct";
}

TraceKind parse_trace_kind(std::string_view text)
{
    if (text == "intensity")
        return TraceKind::Intensity;
    if (text == "carbon_free_pct" || text == "cfp")
        return TraceKind::CarbonFreePct;
    throw ParameterError("unknown trace kind '" + std::string(text) + "'");
}

std::int64_t parse_utc_timestamp(std::string_view text)
{
    // YYYY-MM-DDTHH:MM[:SS][Z|+00:00]; a space may replace the 'T'.
    text = trim(text);
    if (text.ends_with('Z'))
        text.remove_suffix(1);
    else if (text.ends_with("+00:00"))
        text.remove_suffix(6);
    if (text.size() != 16 && text.size() != 19)
        throw DataError("malformed timestamp '" + std::string(text) + "'");
    if (text[4] != '-' || text[7] != '-' || (text[10] != 'T' && text[10] != ' ') || text[13] != ':' ||
        (text.size() == 19 && text[16] != ':'))
        throw DataError("malformed timestamp '" + std::string(text) + "'");

    int y = 0;
    unsigned mo = 0, d = 0, h = 0, mi = 0, s = 0;
    if (!parse_int(text.substr(0, 4), y) || !parse_int(text.substr(5, 2), mo) ||
        !parse_int(text.substr(8, 2), d) || !parse_int(text.substr(11, 2), h) ||
        !parse_int(text.substr(14, 2), mi) || (text.size() == 19 && !parse_int(text.substr(17, 2), s)))
        throw DataError("malformed timestamp '" + std::string(text) + "'");

    using namespace std::chrono;
    const year_month_day ymd{year{y}, month{mo}, day{d}};
    if (!ymd.ok() || h > 23 || mi > 59 || s > 59)
        throw DataError("invalid calendar time '" + std::string(text) + "'");
    const auto days = sys_days{ymd}.time_since_epoch().count();
    return static_cast<std::int64_t>(days) * 86400 + h * 3600 + mi * 60 + s;
}

std::string format_utc_timestamp(std::int64_t seconds)
{
    using namespace std::chrono;
    const auto day_count = static_cast<int>(std::floor(static_cast<double>(seconds) / 86400.0));
    const std::int64_t rem = seconds - static_cast<std::int64_t>(day_count) * 86400;
    const year_month_day ymd{sys_days{days{day_count}}};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<int>(rem / 3600), static_cast<int>(rem % 3600 / 60), static_cast<int>(rem % 60));
    return buf;
}

TraceDataset parse_trace(std::istream& in, const TraceParseOptions& options)
{
    TraceDataset ds;
    ds.kind = options.kind;
    std::string line;
    bool header_seen = false;
    long row = 0;

    while (std::getline(in, line)) {
        std::string_view view = trim(line);
        if (view.empty())
            continue;
        if (view.front() == '#') {
            view.remove_prefix(1);
            view = trim(view);
            if (view.starts_with("region:"))
                ds.region = std::string(trim(view.substr(7)));
            else if (view.starts_with("kind:"))
                ds.kind = parse_trace_kind(trim(view.substr(5)));
            continue;
        }
        if (!header_seen) {
            if (view != "timestamp,value")
                throw DataError("expected header 'timestamp,value', got '" + std::string(view) + "'");
            header_seen = true;
            continue;
        }

        ++row;
        const auto comma = view.find(',');
        if (comma == std::string_view::npos || view.find(',', comma + 1) != std::string_view::npos)
            throw DataError("expected two columns", row);
        std::int64_t ts = 0;
        try {
            ts = parse_utc_timestamp(view.substr(0, comma));
        } catch (const DataError& e) {
            throw DataError(e.what(), row);
        }
        double value = 0.0;
        if (!parse_double(view.substr(comma + 1), value))
            throw DataError("malformed value '" + std::string(view.substr(comma + 1)) + "'", row);
        if (value < 0.0)
            throw DataError("negative value " + std::string(trim(view.substr(comma + 1))), row);
        if (ds.kind == TraceKind::CarbonFreePct && value > 100.0)
            throw DataError("carbon-free percentage above 100", row);
        if (!ds.timestamps.empty()) {
            const std::int64_t step = ts - ds.timestamps.back();
            if (step <= 0)
                throw DataError("timestamps must be strictly increasing", row);
            if (options.require_hourly && step != kHour)
                throw DataError("missing hour(s) before " + format_utc_timestamp(ts), row);
        }
        ds.timestamps.push_back(ts);
        ds.values.push_back(value);
    }

    if (ds.values.empty())
        throw DataError("trace contains no data rows");
    return ds;
}

TraceDataset parse_trace_file(const std::filesystem::path& path, const TraceParseOptions& options)
{
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open trace file " + path.string());
    return parse_trace(in, options);
}

void write_trace(std::ostream& out, const TraceDataset& ds)
{
    if (!ds.region.empty())
        out << "# region: " << ds.region << '\n';
    out << "# kind: " << to_string(ds.kind) << '\n';
    out << "timestamp,value\n";
    char buf[64];
    for (std::size_t i = 0; i < ds.values.size(); ++i) {
        // shortest representation that parses back to the same double
        const auto res = std::to_chars(buf, buf + sizeof buf, ds.values[i]);
        out << format_utc_timestamp(ds.timestamps[i]) << ',' << std::string_view(buf, res.ptr - buf) << '\n';
    }
}

TraceBounds trace_bounds(const TraceDataset& ds)
{
    if (ds.values.empty())
        throw DataError("trace_bounds of an empty dataset");
    const auto [lo, hi] = std::minmax_element(ds.values.begin(), ds.values.end());
    TraceBounds b{*lo, *hi, false};
    if (b.lower <= 0.0) {
        double smallest = std::numeric_limits<double>::infinity();
        for (const double v : ds.values)
            if (v > 0.0)
                smallest = std::min(smallest, v);
        if (!std::isfinite(smallest))
            throw DataError("trace has no positive values; theta is undefined");
        b.lower = smallest;
        b.lower_floored = true;
    }
    return b;
}

Segment sample_segment(const TraceDataset& ds, int length, std::uint64_t seed)
{
    if (length < 1)
        throw ParameterError("segment length must be >= 1");
    if (static_cast<std::size_t>(length) > ds.size())
        throw DataError("segment length " + std::to_string(length) + " exceeds trace length " +
                        std::to_string(ds.size()));
    const std::uint64_t offsets = ds.size() - static_cast<std::size_t>(length) + 1;
    Segment seg;
    seg.offset = static_cast<std::size_t>(seed % offsets);
    const auto first = ds.values.begin() + static_cast<std::ptrdiff_t>(seg.offset);
    seg.values.assign(first, first + length);
    return seg;
}

std::vector<double> apply_noise(std::span<const double> prices, double m, TraceKind kind)
{
    if (!(m >= 1.0) || !std::isfinite(m))
        throw ParameterError("noise factor must be >= 1");
    if (prices.empty())
        return {};
    const double mean = std::accumulate(prices.begin(), prices.end(), 0.0) / static_cast<double>(prices.size());
    std::vector<double> out;
    out.reserve(prices.size());
    for (const double v : prices) {
        double scaled = m == 1.0 ? v : mean + m * (v - mean);
        scaled = std::max(scaled, 0.0);
        if (kind == TraceKind::CarbonFreePct)
            scaled = std::min(scaled, 100.0);
        out.push_back(scaled);
    }
    return out;
}

SyntheticTraceSpec parse_synthetic_spec(std::string_view text)
{
    SyntheticTraceSpec spec;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = std::min(text.find(',', start), text.size());
        const std::string_view item = trim(text.substr(start, end - start));
        start = end + 1;
        if (item.empty())
            continue;
        const auto eq = item.find('=');
        if (eq == std::string_view::npos)
            throw ParameterError("synthetic spec item '" + std::string(item) + "' is not key=value");
        const std::string_view key = trim(item.substr(0, eq));
        const std::string_view val = trim(item.substr(eq + 1));

        if (key == "kind") {
            spec.kind = parse_trace_kind(val);
            continue;
        }
        if (key == "region") {
            spec.region = std::string(val);
            continue;
        }
        if (key == "seed") {
            if (!parse_int(val, spec.seed))
                throw ParameterError("synthetic seed must be a nonnegative integer");
            continue;
        }
        if (key == "hours") {
            if (!parse_int(val, spec.hours) || spec.hours < 1)
                throw ParameterError("synthetic hours must be a positive integer");
            continue;
        }
        double x = 0.0;
        if (!parse_double(val, x))
            throw ParameterError("synthetic spec value for '" + std::string(key) + "' is not a number");
        if (key == "period")
            spec.period = x;
        else if (key == "amp" || key == "amplitude")
            spec.amplitude = x;
        else if (key == "mean")
            spec.mean = x;
        else if (key == "noise")
            spec.noise = x;
        else if (key == "weather")
            spec.weather = x;
        else if (key == "rho" || key == "persistence")
            spec.persistence = x;
        else
            throw ParameterError("unknown synthetic spec key '" + std::string(key) + "'");
    }
    if (!(spec.period > 0.0) || spec.amplitude < 0.0 || spec.noise < 0.0 || spec.weather < 0.0 ||
        !(spec.persistence >= 0.0 && spec.persistence < 1.0))
        throw ParameterError("synthetic spec needs period > 0, amp/noise/weather >= 0, 0 <= rho < 1");
    return spec;
}

TraceDataset generate_synthetic_trace(const SyntheticTraceSpec& spec)
{
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    TraceDataset ds;
    ds.region = spec.region;
    ds.kind = spec.kind;
    ds.values.reserve(static_cast<std::size_t>(spec.hours));
    ds.timestamps.reserve(static_cast<std::size_t>(spec.hours));

    double weather = 0.0;
    for (int t = 0; t < spec.hours; ++t) {
        weather = spec.persistence * weather + spec.weather * gauss(rng);
        const double diurnal = spec.amplitude * std::sin(2.0 * std::numbers::pi * t / spec.period);
        double v = spec.mean + weather + diurnal + spec.noise * gauss(rng);
        v = std::max(v, 0.0);
        if (spec.kind == TraceKind::CarbonFreePct)
            v = std::min(v, 100.0);
        // keep the files short and readable
        v = std::round(v * 100.0) / 100.0;
        ds.values.push_back(v);
        ds.timestamps.push_back(kSyntheticStart + t * kHour);
    }
    return ds;
}

} // namespace opr
