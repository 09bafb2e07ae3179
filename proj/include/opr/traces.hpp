#ifndef OPR_TRACES_HPP
#define OPR_TRACES_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace opr {

enum class TraceKind { Intensity, CarbonFreePct };

std::string_view to_string(TraceKind kind);
TraceKind parse_trace_kind(std::string_view text);

/// Hourly carbon series. Timestamps are UTC seconds since the epoch, spaced
/// exactly one hour apart.
struct TraceDataset {
    std::string region;
    std::vector<std::int64_t> timestamps;
    std::vector<double> values;
    TraceKind kind = TraceKind::Intensity;

    std::size_t size() const noexcept { return values.size(); }
};

struct TraceBounds {
    double lower = 0.0;
    double upper = 0.0;
    /// True when the raw minimum was 0 and L was raised to the smallest
    /// positive value so that theta stays finite.
    bool lower_floored = false;
};

struct TraceParseOptions {
    TraceKind kind = TraceKind::Intensity; ///< overridden by a `# kind:` comment
    /// Reject any step other than exactly one hour. When false, timestamps
    /// only need to increase strictly (sub-hourly or gappy exports).
    bool require_hourly = true;
};

/// Reads the trace CSV format:
///
///     # region: Ontario
///     # kind: intensity
///     timestamp,value
///     2021-10-19T00:00:00Z,35.2
///
/// `#` lines are comments; `region:` and `kind:` comments set metadata.
/// Throws DataError on empty input, malformed rows, negative values,
/// percentages above 100, non-increasing timestamps or missing hours.
TraceDataset parse_trace(std::istream& in, const TraceParseOptions& options = {});
TraceDataset parse_trace_file(const std::filesystem::path& path, const TraceParseOptions& options = {});

/// Writes the same format with round-trip precision on values.
void write_trace(std::ostream& out, const TraceDataset& ds);

std::int64_t parse_utc_timestamp(std::string_view text);
std::string format_utc_timestamp(std::int64_t seconds);

/// (min, max) of the values; see TraceBounds::lower_floored.
TraceBounds trace_bounds(const TraceDataset& ds);

struct Segment {
    std::size_t offset = 0;
    std::vector<double> values;
};

/// Contiguous window of `length` values starting at seed mod (n - length + 1).
/// Callers pass well-mixed seeds (see derive_trial_seed) for uniform offsets.
Segment sample_segment(const TraceDataset& ds, int length, std::uint64_t seed);

/// Scales every deviation from the segment mean by m >= 1, truncating at 0
/// (and at 100 for carbon-free percentages).
std::vector<double> apply_noise(std::span<const double> prices, double m, TraceKind kind);

/// Diurnal synthetic trace: mean + amplitude * sin(2 pi t / period) plus a
/// persistent AR(1) "weather" component and hourly Gaussian noise.
struct SyntheticTraceSpec {
    double period = 24.0;
    double amplitude = 30.0;
    double mean = 100.0;
    double noise = 5.0;       ///< sd of the hourly noise
    double weather = 5.0;     ///< innovation sd of the AR(1) component
    double persistence = 0.98;
    int hours = 4000;
    std::uint64_t seed = 1;
    TraceKind kind = TraceKind::Intensity;
    std::string region = "synthetic";
};

/// Parses "period=24,amp=30,mean=100,noise=5,weather=5,rho=0.98,hours=4000,seed=1,kind=intensity".
/// Every key is optional.
SyntheticTraceSpec parse_synthetic_spec(std::string_view text);

TraceDataset generate_synthetic_trace(const SyntheticTraceSpec& spec);

} // namespace opr

#endif // OPR_TRACES_HPP
