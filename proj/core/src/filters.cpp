#include "oversparse/filters.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "oversparse/error.hpp"

namespace oversparse {

namespace detail {
extern const std::string_view kFilterTable;
}

std::size_t FilterBank::length() const noexcept {
    std::size_t n = 0;
    for (const auto& c : channels) n = std::max(n, c.size());
    return n;
}

std::string_view builtin_filter_table() { return detail::kFilterTable; }

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<double> parse_taps(std::string_view field, std::size_t offset) {
    std::vector<double> taps;
    std::size_t pos = 0;
    while (pos <= field.size()) {
        const std::size_t comma = std::min(field.find(',', pos), field.size());
        const std::string_view tok = trim(field.substr(pos, comma - pos));
        double v = 0.0;
        const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
            throw ParseError("bad filter tap '" + std::string(tok) + "'", offset + pos);
        taps.push_back(v);
        pos = comma + 1;
    }
    return taps;
}

}  // namespace

std::vector<FilterTableEntry> parse_filter_table(std::string_view text) {
    std::vector<FilterTableEntry> entries;
    std::size_t line_start = 0;
    while (line_start < text.size()) {
        std::size_t line_end = text.find('\n', line_start);
        if (line_end == std::string_view::npos) line_end = text.size();
        const std::string_view line = trim(text.substr(line_start, line_end - line_start));
        if (!line.empty() && line.front() != '#') {
            std::array<std::string_view, 4> fields;
            std::string_view rest = line;
            for (auto& f : fields) {
                const std::size_t sp = rest.find_first_of(" \t");
                if (sp == std::string_view::npos)
                    throw ParseError("filter line needs 5 fields", line_start);
                f = rest.substr(0, sp);
                rest = trim(rest.substr(sp));
            }
            const std::size_t taps_offset = line_start + static_cast<std::size_t>(rest.data() - line.data()) +
                                            static_cast<std::size_t>(line.data() - text.data() - line_start);
            entries.push_back({std::string(fields[0]), std::string(fields[1]), std::string(fields[2]),
                               std::string(fields[3]), parse_taps(rest, taps_offset)});
        }
        line_start = line_end + 1;
    }
    return entries;
}

namespace {

// Autocorrelation-type sums over all channels at lag k >= 0.
double lag_sum(const FilterBank& b, std::size_t k, bool alternating) {
    double s = 0.0;
    for (const auto& h : b.channels) {
        for (std::size_t n = 0; n + k < h.size(); ++n) {
            const double sign = (alternating && (n % 2 == 1)) ? -1.0 : 1.0;
            s += sign * h[n] * h[n + k];
        }
    }
    return s;
}

// Sum over n of (-1)^(n+k) h[n+k] h[n], the mirrored half of the alias term.
double lag_sum_mirror(const FilterBank& b, std::size_t k) {
    double s = 0.0;
    for (const auto& h : b.channels) {
        for (std::size_t n = 0; n + k < h.size(); ++n) {
            const double sign = ((n + k) % 2 == 1) ? -1.0 : 1.0;
            s += sign * h[n + k] * h[n];
        }
    }
    return s;
}

struct Residual {
    Eigen::VectorXd value;
    Eigen::MatrixXd jacobian;
};

Residual tight_frame_residual(const FilterBank& bank, const std::vector<std::pair<std::size_t, std::size_t>>& vars) {
    const std::size_t len = bank.length();
    const std::size_t rows = len + 2 * len - 1 + (bank.channel_count() - 1);
    Residual r{Eigen::VectorXd::Zero(static_cast<Eigen::Index>(rows)),
               Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(vars.size()))};
    auto tap = [&](std::size_t ch, long n) -> double {
        const auto& h = bank.channels[ch];
        return (n >= 0 && static_cast<std::size_t>(n) < h.size()) ? h[static_cast<std::size_t>(n)] : 0.0;
    };
    auto parity = [](long n) { return (n % 2 == 0) ? 1.0 : -1.0; };
    Eigen::Index row = 0;
    for (std::size_t k = 0; k < len; ++k, ++row) {
        r.value[row] = lag_sum(bank, k, false) - (k == 0 ? 2.0 : 0.0);
        for (std::size_t v = 0; v < vars.size(); ++v) {
            const auto [ch, m] = vars[v];
            const long mm = static_cast<long>(m), kk = static_cast<long>(k);
            r.jacobian(row, static_cast<Eigen::Index>(v)) = tap(ch, mm + kk) + tap(ch, mm - kk);
        }
    }
    // Alias cancellation: sum_n (-1)^n h[n] h[n+k] for k in -(len-1)..(len-1).
    for (long k = -static_cast<long>(len) + 1; k < static_cast<long>(len); ++k, ++row) {
        r.value[row] = k >= 0 ? lag_sum(bank, static_cast<std::size_t>(k), true)
                              : lag_sum_mirror(bank, static_cast<std::size_t>(-k));
        for (std::size_t v = 0; v < vars.size(); ++v) {
            const auto [ch, m] = vars[v];
            const long mm = static_cast<long>(m);
            r.jacobian(row, static_cast<Eigen::Index>(v)) =
                parity(mm) * tap(ch, mm + k) + parity(mm - k) * tap(ch, mm - k);
        }
    }
    for (std::size_t ch = 1; ch < bank.channel_count(); ++ch, ++row) {
        double s = 0.0;
        for (double t : bank.channels[ch]) s += t;
        r.value[row] = s;
        for (std::size_t v = 0; v < vars.size(); ++v)
            if (vars[v].first == ch) r.jacobian(row, static_cast<Eigen::Index>(v)) = 1.0;
    }
    return r;
}

}  // namespace

double tight_frame_defect(const FilterBank& bank) {
    const std::size_t len = bank.length();
    double worst = 0.0;
    for (std::size_t k = 0; k < len; ++k) {
        worst = std::max(worst, std::abs(lag_sum(bank, k, false) - (k == 0 ? 2.0 : 0.0)));
        worst = std::max(worst, std::abs(lag_sum(bank, k, true)));
        worst = std::max(worst, std::abs(lag_sum_mirror(bank, k)));
    }
    return worst;
}

FilterBank project_to_tight_frame(const FilterBank& bank, int max_iterations) {
    FilterBank out = bank;
    std::vector<std::pair<std::size_t, std::size_t>> vars;
    for (std::size_t ch = 0; ch < out.channel_count(); ++ch)
        for (std::size_t n = 0; n < out.channels[ch].size(); ++n)
            if (out.channels[ch][n] != 0.0) vars.emplace_back(ch, n);

    for (int it = 0; it < max_iterations; ++it) {
        const Residual r = tight_frame_residual(out, vars);
        if (r.value.cwiseAbs().maxCoeff() < 1e-15) break;
        const Eigen::VectorXd step = r.jacobian.completeOrthogonalDecomposition().solve(-r.value);
        for (std::size_t v = 0; v < vars.size(); ++v)
            out.channels[vars[v].first][vars[v].second] += step[static_cast<Eigen::Index>(v)];
    }
    return out;
}

namespace {

std::string_view table_set_name(TransformKind kind) {
    switch (kind) {
        case TransformKind::DWT: return "dwt";
        case TransformKind::DT_COMPLEX: return "dtcwt";
        case TransformKind::DD_DWT: return "dd";
        case TransformKind::DD_DT_REAL:
        case TransformKind::DD_DT_COMPLEX: return "dddt";
    }
    return "";
}

FilterBank collect_bank(const std::vector<FilterTableEntry>& entries, std::string_view set, std::string_view stage,
                        std::string_view tree, int channels) {
    static constexpr std::array<std::string_view, 3> two = {"lo", "hi", ""};
    static constexpr std::array<std::string_view, 3> three = {"lo", "hi1", "hi2"};
    FilterBank bank;
    for (int c = 0; c < channels; ++c) {
        const std::string_view band = channels == 2 ? two[static_cast<std::size_t>(c)] : three[static_cast<std::size_t>(c)];
        const auto it = std::find_if(entries.begin(), entries.end(), [&](const FilterTableEntry& e) {
            return e.set == set && e.tree == tree && e.band == band && (e.stage == stage || e.stage == "all");
        });
        if (it == entries.end())
            throw ArgumentError("filter table has no entry " + std::string(set) + "/" + std::string(stage) + "/" +
                                std::string(tree) + "/" + std::string(band));
        bank.channels.push_back(it->taps);
    }
    return bank;
}

FilterSet load_set(TransformKind kind) {
    const auto entries = parse_filter_table(builtin_filter_table());
    FilterSet set;
    set.kind = kind;
    const int channels = channel_count(kind);
    const std::string_view name = table_set_name(kind);
    static constexpr std::array<std::string_view, 2> tree_names = {"h", "g"};
    for (int t = 0; t < tree_count(kind); ++t) {
        TreeFilters tf;
        tf.first = project_to_tight_frame(collect_bank(entries, name, "first", tree_names[static_cast<std::size_t>(t)], channels));
        tf.later = project_to_tight_frame(collect_bank(entries, name, "later", tree_names[static_cast<std::size_t>(t)], channels));
        set.trees.push_back(std::move(tf));
    }
    return set;
}

}  // namespace

const FilterSet& builtin_filters(TransformKind kind) {
    static std::once_flag once;
    static std::map<TransformKind, FilterSet> sets;
    std::call_once(once, [] {
        for (auto k : kAllKinds) sets.emplace(k, load_set(k));
    });
    return sets.at(kind);
}

}  // namespace oversparse
