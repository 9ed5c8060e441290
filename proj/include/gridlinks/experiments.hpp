#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "gridlinks/exact.hpp"
#include "gridlinks/invariants.hpp"
#include "gridlinks/sampler.hpp"
#include "gridlinks/stats.hpp"

namespace gridlinks::experiments {

enum class Experiment { knot_size, components, writhe_grid, writhe_length };

inline const char* name(Experiment e) {
    switch (e) {
        case Experiment::knot_size: return "knot-size";
        case Experiment::components: return "components";
        case Experiment::writhe_grid: return "writhe-grid";
        case Experiment::writhe_length: return "writhe-length";
    }
    return "?";
}

inline Experiment experiment_from_name(const std::string& s) {
    if (s == "knot-size") return Experiment::knot_size;
    if (s == "components") return Experiment::components;
    if (s == "writhe-grid") return Experiment::writhe_grid;
    if (s == "writhe-length") return Experiment::writhe_length;
    throw std::invalid_argument("unknown experiment: " + s);
}

struct SweepConfig {
    int n_start = 10;
    int n_end = 1000;
    int n_step = 10;
    std::uint64_t samples = 10000;  // per grid size; total for writhe-length
    std::uint64_t seed = 0;
    int threads = 1;
    double bin_width = 10000;    // writhe-length: lengths round to the nearest bin
    double length_cap = 650000;  // writhe-length: rounded lengths above this are dropped

    std::vector<int> grid_sizes() const {
        std::vector<int> out;
        for (int n = n_start; n <= n_end; n += n_step)
            out.push_back(n);
        return out;
    }

    /// Full-scale defaults for each experiment.
    static SweepConfig preset(Experiment e) {
        SweepConfig c;
        if (e == Experiment::writhe_length) {
            c.n_start = 2;
            c.n_end = 1000;
            c.n_step = 1;
            c.samples = 1000000;
        }
        return c;
    }
};

struct SummaryRow {
    std::int64_t key;  // grid size n, or rounded length bin
    stats::SampleSummary summary;
};

namespace detail {

// Streams are keyed independently of the thread count: a fixed fan-out of
// kStreams lanes per grid size (or per whole run for writhe-length), with
// sample quotas fixed by lane index and results merged in lane order.
// 1 worker and W workers therefore produce identical output.
inline constexpr int kStreams = 16;
inline constexpr std::uint64_t kStreamStride = 64;

inline std::uint64_t stream_quota(std::uint64_t samples, int lane) {
    return samples / kStreams + (static_cast<std::uint64_t>(lane) < samples % kStreams ? 1 : 0);
}

template <typename Work>
void run_units(std::size_t unit_count, int threads, Work&& work) {
    if (threads <= 1) {
        for (std::size_t i = 0; i < unit_count; ++i)
            work(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto loop = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= unit_count)
                return;
            work(i);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t)
        pool.emplace_back(loop);
    for (auto& th : pool)
        th.join();
}

inline double measure(Experiment e, int n, RandomStream& rs) {
    switch (e) {
        case Experiment::knot_size:
            return static_cast<double>(knot_size(sample_closing_knot(n, rs)));
        case Experiment::components:
            return static_cast<double>(component_count(sample_link(n, rs)));
        case Experiment::writhe_grid:
            return static_cast<double>(writhe(knot_to_link(sample_full_knot(n, rs))));
        default:
            throw std::logic_error("measure: not a per-grid-size experiment");
    }
}

}  // namespace detail

/// Runs one experiment sweep. Deterministic for a fixed (seed, config):
/// the thread count changes scheduling only, never the draws or the merge
/// order, so any worker count reproduces the 1-worker result exactly.
inline std::vector<SummaryRow> run_sweep(Experiment e, const SweepConfig& cfg) {
    using detail::kStreams;
    using detail::kStreamStride;

    if (e == Experiment::writhe_length) {
        std::vector<std::map<std::int64_t, stats::SampleSummary>> per_lane(kStreams);
        detail::run_units(kStreams, cfg.threads, [&](std::size_t lane) {
            RandomStream rs(cfg.seed, static_cast<std::uint64_t>(lane));
            auto& bins = per_lane[lane];
            const std::uint64_t quota = detail::stream_quota(cfg.samples, static_cast<int>(lane));
            for (std::uint64_t i = 0; i < quota; ++i) {
                const int n = static_cast<int>(rs.next_in(cfg.n_start, cfg.n_end));
                const KnotLoop k = sample_closing_knot(n, rs);
                const auto length = static_cast<double>(knot_length(k));
                const std::int64_t bin =
                    std::llround(length / cfg.bin_width) * static_cast<std::int64_t>(cfg.bin_width);
                if (static_cast<double>(bin) > cfg.length_cap)
                    continue;
                const auto w = static_cast<double>(writhe(knot_to_link(k)));
                bins.try_emplace(bin).first->second.add(w);
            }
        });
        std::map<std::int64_t, stats::SampleSummary> merged;
        for (const auto& bins : per_lane)
            for (const auto& [bin, summary] : bins) {
                auto [it, inserted] = merged.try_emplace(bin, summary);
                if (!inserted)
                    it->second.merge(summary);
            }
        std::vector<SummaryRow> rows;
        rows.reserve(merged.size());
        for (auto& [bin, summary] : merged)
            rows.push_back({bin, std::move(summary)});
        return rows;
    }

    const std::vector<int> sizes = cfg.grid_sizes();
    std::vector<stats::SampleSummary> slots(sizes.size() * kStreams);
    detail::run_units(slots.size(), cfg.threads, [&](std::size_t unit) {
        const std::size_t size_idx = unit / kStreams;
        const int lane = static_cast<int>(unit % kStreams);
        const int n = sizes[size_idx];
        RandomStream rs(cfg.seed,
                        static_cast<std::uint64_t>(n) * kStreamStride + static_cast<std::uint64_t>(lane));
        const std::uint64_t quota = detail::stream_quota(cfg.samples, lane);
        stats::SampleSummary& summary = slots[unit];
        for (std::uint64_t i = 0; i < quota; ++i)
            summary.add(detail::measure(e, n, rs));
    });

    std::vector<SummaryRow> rows;
    rows.reserve(sizes.size());
    for (std::size_t s = 0; s < sizes.size(); ++s) {
        stats::SampleSummary acc;
        for (int lane = 0; lane < kStreams; ++lane)
            acc.merge(slots[s * kStreams + lane]);
        rows.push_back({sizes[s], std::move(acc)});
    }
    return rows;
}

/// Cross-checks sampled means against exact predictions where closed
/// forms exist: knot size (EV = n/2 + 1), component count (harmonic-sum
/// EV, for n <= 512), and writhe (EV = 0, against the sampled spread).
/// Returns one message per violation; empty means verified.
inline std::vector<std::string> verify_sweep(Experiment e, const SweepConfig& cfg,
                                             const std::vector<SummaryRow>& rows) {
    std::vector<std::string> problems;
    char buf[160];
    auto check = [&](std::int64_t key, double mean, double expected, double stderr_4sigma) {
        if (std::abs(mean - expected) > stderr_4sigma) {
            std::snprintf(buf, sizeof buf,
                          "key %lld: sampled mean %.6f vs exact %.6f (allowed |diff| %.6f)",
                          static_cast<long long>(key), mean, expected, stderr_4sigma);
            problems.emplace_back(buf);
        }
    };
    for (const auto& row : rows) {
        const double count = static_cast<double>(row.summary.count());
        if (count == 0)
            continue;
        switch (e) {
            case Experiment::knot_size: {
                const auto dist = exact::knot_size_distribution(static_cast<int>(row.key));
                check(row.key, row.summary.mean(), to_double(dist.ev()),
                      4.0 * std::sqrt(to_double(dist.variance()) / count));
                break;
            }
            case Experiment::components: {
                if (row.key > 512)
                    continue;
                const double ev = to_double(exact::expected_components(static_cast<int>(row.key)));
                const double var = to_double(exact::variance_components(static_cast<int>(row.key)));
                check(row.key, row.summary.mean(), ev, 4.0 * std::sqrt(var / count));
                break;
            }
            case Experiment::writhe_grid:
            case Experiment::writhe_length: {
                const double var = row.summary.variance();
                if (var > 0)
                    check(row.key, row.summary.mean(), 0.0, 4.0 * std::sqrt(var / count));
                break;
            }
        }
    }
    return problems;
}

namespace detail {

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline double kurtosis_or_nan(const stats::SampleSummary& s) {
    return (s.count() >= 4 && s.m2() > 0) ? s.kurtosis()
                                          : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace detail

inline void write_csv(std::ostream& os, Experiment e, const SweepConfig& cfg,
                      const std::vector<SummaryRow>& rows) {
    os << "# gridlinks v1 " << name(e) << "\n";
    os << "# seed=" << cfg.seed << " samples=" << cfg.samples << " n=" << cfg.n_start << ".."
       << cfg.n_end << ":" << cfg.n_step;
    if (e == Experiment::writhe_length)
        os << " bin-width=" << detail::fmt(cfg.bin_width)
           << " length-cap=" << detail::fmt(cfg.length_cap);
    os << " variance=population\n";
    os << (e == Experiment::writhe_length ? "bin" : "n")
       << ",count,mean,variance,m4,kurtosis,ci_low,ci_high\n";
    for (const auto& row : rows) {
        const auto ci = row.summary.mean_ci95();
        os << row.key << ',' << row.summary.count() << ',' << detail::fmt(row.summary.mean())
           << ',' << detail::fmt(row.summary.variance()) << ','
           << detail::fmt(row.summary.moment4()) << ','
           << detail::fmt(detail::kurtosis_or_nan(row.summary)) << ',' << detail::fmt(ci.lo)
           << ',' << detail::fmt(ci.hi) << "\n";
    }
}

inline nlohmann::json to_json(Experiment e, const SweepConfig& cfg,
                              const std::vector<SummaryRow>& rows) {
    nlohmann::json out{
        {"schema", "gridlinks v1"},
        {"experiment", name(e)},
        {"seed", cfg.seed},
        {"samples", cfg.samples},
        {"variance", "population"},
    };
    auto& json_rows = out["rows"] = nlohmann::json::array();
    for (const auto& row : rows) {
        const auto ci = row.summary.mean_ci95();
        json_rows.push_back({{e == Experiment::writhe_length ? "bin" : "n", row.key},
                             {"count", row.summary.count()},
                             {"mean", row.summary.mean()},
                             {"variance", row.summary.variance()},
                             {"m4", row.summary.moment4()},
                             {"kurtosis", detail::kurtosis_or_nan(row.summary)},
                             {"ci_low", ci.lo},
                             {"ci_high", ci.hi}});
    }
    return out;
}

}  // namespace gridlinks::experiments
