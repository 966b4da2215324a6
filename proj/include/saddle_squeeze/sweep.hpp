#pragma once

#include <algorithm>
#include <cstdlib>
#include <cstdio>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "saddle_squeeze/config.hpp"
#include "saddle_squeeze/oracle.hpp"
#include "saddle_squeeze/transmission.hpp"

namespace saddle_squeeze {

// Per-point status bits. Boundary and singular outcomes are tabulated, never
// fatal: a sweep always yields one row per grid point.
namespace status_flag {
constexpr unsigned ok = 0;
constexpr unsigned geom_floor = 1u << 0;    // a_sq(0) already exceeds c_cand
constexpr unsigned dep_floor = 1u << 1;     // reactive energy depleted at s = 0
constexpr unsigned no_root = 1u << 2;       // no depletion crossing in the bracket
constexpr unsigned singular = 1u << 3;      // coupling cancelled the reactive channel
constexpr unsigned closed = 1u << 4;        // E <= E0, bottleneck not open
constexpr unsigned series_limit = 1u << 5;  // level sum failed to converge
constexpr unsigned nonfinite = 1u << 6;     // some emitted field is inf/nan
}  // namespace status_flag

inline std::string status_string(unsigned flags) {
    if (flags == status_flag::ok) return "ok";
    static const std::pair<unsigned, const char*> names[] = {
        {status_flag::geom_floor, "geom_floor"},   {status_flag::dep_floor, "dep_floor"},
        {status_flag::no_root, "no_root"},         {status_flag::singular, "singular"},
        {status_flag::closed, "closed"},           {status_flag::series_limit, "series_limit"},
        {status_flag::nonfinite, "nonfinite"}};
    std::string out;
    for (const auto& [bit, name] : names) {
        if (flags & bit) {
            if (!out.empty()) out += ';';
            out += name;
        }
    }
    return out;
}

inline unsigned parse_status(const std::string& text) {
    if (text == "ok") return status_flag::ok;
    unsigned flags = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = text.find(';', start);
        const std::string token = text.substr(start, end - start);
        if (token == "geom_floor") flags |= status_flag::geom_floor;
        else if (token == "dep_floor") flags |= status_flag::dep_floor;
        else if (token == "no_root") flags |= status_flag::no_root;
        else if (token == "singular") flags |= status_flag::singular;
        else if (token == "closed") flags |= status_flag::closed;
        else if (token == "series_limit") flags |= status_flag::series_limit;
        else if (token == "nonfinite") flags |= status_flag::nonfinite;
        if (end == std::string::npos) break;
        start = end + 1;
    }
    return flags;
}

// Full diagnostic bundle at one (E, s) grid point.
struct SweepRecord {
    double E = 0.0;
    double s = 0.0;
    double j2_mean = 0.0;
    double j2_sq_mean = 0.0;
    double a_sq = 0.0;
    double c_cand = 0.0;
    double h_react = 0.0;
    double t_quad = 0.0;
    double t_qnf = 0.0;
    double s_metric_quad = 0.0;
    double s_metric_qnf = 0.0;
    double s_geom = 0.0;
    double s_dep = 0.0;
    unsigned status = status_flag::ok;
};

// Fixed column order of the CSV table and the record field accessors.
inline const std::vector<std::pair<std::string, double SweepRecord::*>>& record_columns() {
    static const std::vector<std::pair<std::string, double SweepRecord::*>> cols = {
        {"E", &SweepRecord::E},
        {"s", &SweepRecord::s},
        {"j2_mean", &SweepRecord::j2_mean},
        {"j2_sq_mean", &SweepRecord::j2_sq_mean},
        {"a_sq", &SweepRecord::a_sq},
        {"c_cand", &SweepRecord::c_cand},
        {"h_react", &SweepRecord::h_react},
        {"t_quad", &SweepRecord::t_quad},
        {"t_qnf", &SweepRecord::t_qnf},
        {"S_quad", &SweepRecord::s_metric_quad},
        {"S_qnf", &SweepRecord::s_metric_qnf},
        {"s_geom", &SweepRecord::s_geom},
        {"s_dep", &SweepRecord::s_dep}};
    return cols;
}

// 17 significant digits: enough for an exact double round-trip through text.
inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline double parse_double(const std::string& text) {
    return std::strtod(text.c_str(), nullptr);
}

inline SweepRecord evaluate_point(const ModelParams& model, double E, double s, double tol,
                                  double threshold_s_max) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    SweepRecord rec;
    rec.E = E;
    rec.s = s;

    const SqueezedState state(s, model.hbar);
    const SqueezedState reference(0.0, model.hbar);
    rec.j2_mean = expected_bath_action(state);
    rec.j2_sq_mean = bath_action_power_moment(state, 2);
    rec.a_sq = action_area_scale(state);

    try {
        rec.c_cand = candidate_width(model, E);
        const ThresholdResult geom = geometric_threshold(model, E);
        if (geom.found()) {
            rec.s_geom = geom.s;
        } else {
            rec.s_geom = 0.0;
            rec.status |= status_flag::geom_floor;
        }
    } catch (const NoBottleneckError&) {
        rec.c_cand = nan;
        rec.s_geom = nan;
        rec.status |= status_flag::closed;
    } catch (const std::domain_error&) {
        rec.c_cand = nan;
        rec.s_geom = nan;
        rec.status |= status_flag::nonfinite;
    }

    try {
        rec.h_react = reactive_energy(model, state, E).h_react;
        rec.t_qnf = kemble(rec.h_react, model.lambda, model.hbar);
        const double t0 = transmission_qnf(model, reference, E);
        rec.s_metric_qnf = suppression_metric(rec.t_qnf, t0);
    } catch (const SingularDenominatorError&) {
        rec.h_react = nan;
        rec.t_qnf = nan;
        rec.s_metric_qnf = nan;
        rec.status |= status_flag::singular;
    } catch (const std::domain_error&) {
        rec.s_metric_qnf = nan;
    }

    try {
        rec.t_quad = transmission_quadratic(model, state, E, tol).value;
        const double t0 = transmission_quadratic(model, reference, E, tol).value;
        rec.s_metric_quad = suppression_metric(rec.t_quad, t0);
    } catch (const SeriesLimitError&) {
        rec.t_quad = nan;
        rec.s_metric_quad = nan;
        rec.status |= status_flag::series_limit;
    } catch (const std::domain_error&) {
        rec.s_metric_quad = nan;
    }

    try {
        const ThresholdResult dep = depletion_threshold(model, E, threshold_s_max);
        switch (dep.status) {
            case ThresholdStatus::found:
                rec.s_dep = dep.s;
                break;
            case ThresholdStatus::at_floor:
                rec.s_dep = 0.0;
                rec.status |= status_flag::dep_floor;
                break;
            case ThresholdStatus::no_root:
                rec.s_dep = nan;
                rec.status |= status_flag::no_root;
                break;
        }
    } catch (const SingularDenominatorError&) {
        rec.s_dep = nan;
        rec.status |= status_flag::singular;
    }

    for (const auto& [name, member] : record_columns())
        if (!std::isfinite(rec.*member)) rec.status |= status_flag::nonfinite;
    return rec;
}

namespace sweep_detail {

inline int resolve_workers(std::size_t n_points, int requested) {
    long workers = requested;
    if (workers <= 0) {
        workers = 0;
        if (const char* env = std::getenv("SADDLE_SQUEEZE_THREADS")) {
            char* end = nullptr;
            const long parsed = std::strtol(env, &end, 10);
            if (end != env && *end == '\0' && parsed > 0) workers = parsed;
        }
        if (workers == 0) workers = static_cast<long>(std::thread::hardware_concurrency());
    }
    workers = std::max(workers, 1L);
    workers = std::min(workers, static_cast<long>(std::max<std::size_t>(n_points, 1)));
    return static_cast<int>(workers);
}

}  // namespace sweep_detail

// Evaluates the diagnostic bundle on the full (E, s) grid; rows ordered
// lexicographically by (E, s). Grid points are independent pure evaluations,
// so results do not depend on the worker count; SADDLE_SQUEEZE_THREADS (or
// the explicit argument) caps parallelism, 0 means auto.
inline std::vector<SweepRecord> run_sweep(const RunConfig& cfg, int workers = 0) {
    cfg.validate();
    std::vector<double> e_values = cfg.e_axis.values;
    std::vector<double> s_values = cfg.s_axis.values;
    std::sort(e_values.begin(), e_values.end());
    std::sort(s_values.begin(), s_values.end());

    std::vector<std::pair<double, double>> points;
    points.reserve(e_values.size() * s_values.size());
    for (double e : e_values)
        for (double s : s_values) points.emplace_back(e, s);

    std::vector<SweepRecord> records(points.size());
    const int n_workers = sweep_detail::resolve_workers(points.size(), workers);
    const auto worker = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            records[i] = evaluate_point(cfg.model, points[i].first, points[i].second, cfg.tol,
                                        cfg.threshold_s_max);
    };
    if (n_workers == 1) {
        worker(0, points.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (points.size() + n_workers - 1) / n_workers;
        for (int w = 0; w < n_workers; ++w) {
            const std::size_t begin = static_cast<std::size_t>(w) * chunk;
            const std::size_t end = std::min(points.size(), begin + chunk);
            if (begin < end) pool.emplace_back(worker, begin, end);
        }
        for (std::thread& t : pool) t.join();
    }
    return records;
}

// --- table / curve emission --------------------------------------------------

inline std::string csv_header() {
    std::string header;
    for (const auto& [name, member] : record_columns()) {
        if (!header.empty()) header += ',';
        header += name;
    }
    return header + ",status";
}

// Fixed-order table; log_prob appends two log10 columns after status for the
// deep-suppression regime where t_* underflows linear scale.
inline void write_csv(std::ostream& os, const std::vector<SweepRecord>& records,
                      bool log_prob = false) {
    os << csv_header();
    if (log_prob) os << ",log10_t_quad,log10_t_qnf";
    os << '\n';
    for (const SweepRecord& rec : records) {
        bool first = true;
        for (const auto& [name, member] : record_columns()) {
            if (!first) os << ',';
            os << format_double(rec.*member);
            first = false;
        }
        os << ',' << status_string(rec.status);
        if (log_prob)
            os << ',' << format_double(std::log10(rec.t_quad)) << ','
               << format_double(std::log10(rec.t_qnf));
        os << '\n';
    }
}

inline std::vector<SweepRecord> read_csv(std::istream& is) {
    std::vector<SweepRecord> records;
    std::string line;
    if (!std::getline(is, line)) return records;
    if (line != csv_header()) throw std::runtime_error("read_csv: unexpected header: " + line);
    const auto& cols = record_columns();
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            const std::size_t end = line.find(',', start);
            fields.push_back(line.substr(start, end - start));
            if (end == std::string::npos) break;
            start = end + 1;
        }
        if (fields.size() != cols.size() + 1)
            throw std::runtime_error("read_csv: wrong field count in row: " + line);
        SweepRecord rec;
        for (std::size_t i = 0; i < cols.size(); ++i) rec.*(cols[i].second) = parse_double(fields[i]);
        rec.status = parse_status(fields.back());
        records.push_back(rec);
    }
    return records;
}

// Records-of-objects structured output. JSON numbers cannot carry inf/nan,
// so non-finite fields are emitted as the literal tokens used by the CSV.
inline void write_structured(std::ostream& os, const std::vector<SweepRecord>& records) {
    nlohmann::json arr = nlohmann::json::array();
    for (const SweepRecord& rec : records) {
        nlohmann::json row;
        for (const auto& [name, member] : record_columns()) {
            const double v = rec.*member;
            if (std::isfinite(v)) {
                row[name] = v;
            } else {
                row[name] = format_double(v);
            }
        }
        row["status"] = status_string(rec.status);
        arr.push_back(std::move(row));
    }
    os << arr.dump(2) << '\n';
}

// Two-column plain-text curve of one diagnostic against s, one block per E
// value (gnuplot-style blank-line separation). The values are regenerated
// library output, frozen as regression references; they are not tabulated
// from any external source.
inline void write_curve(std::ostream& os, const std::vector<SweepRecord>& records,
                        const std::string& diagnostic) {
    double SweepRecord::* member = nullptr;
    for (const auto& [name, col] : record_columns())
        if (name == diagnostic) member = col;
    if (member == nullptr || diagnostic == "E" || diagnostic == "s")
        throw std::invalid_argument("write_curve: unknown diagnostic column: " + diagnostic);

    os << "# " << diagnostic << " vs s (self-generated regression curve, not published data)\n";
    os << "# columns: s " << diagnostic << '\n';
    bool any_block = false;
    std::size_t i = 0;
    while (i < records.size()) {
        const double e = records[i].E;
        if (any_block) os << '\n';
        os << "# E = " << format_double(e) << '\n';
        while (i < records.size() && records[i].E == e) {
            os << format_double(records[i].s) << ' ' << format_double(records[i].*member) << '\n';
            ++i;
        }
        any_block = true;
    }
}

// Parses a curve file back into (s, value) pairs, ignoring comments and
// block separators.
inline std::vector<std::pair<double, double>> read_curve(std::istream& is) {
    std::vector<std::pair<double, double>> points;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        const std::size_t split = line.find(' ');
        if (split == std::string::npos) continue;
        points.emplace_back(parse_double(line.substr(0, split)),
                            parse_double(line.substr(split + 1)));
    }
    return points;
}

}  // namespace saddle_squeeze
