#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "polariton/analytic/gaussian.hpp"
#include "polariton/errors.hpp"
#include "polariton/harness/config.hpp"
#include "polariton/numeric/state.hpp"

namespace polariton {

inline constexpr int run_record_schema_version = 1;

struct RunRecord {
    std::string tag;
    Solver solver = Solver::both;
    nlohmann::json config;
    std::string config_hash;
    std::vector<TrajectoryPoint> analytic;
    std::vector<TrajectoryPoint> numeric;
    nlohmann::json summary = nlohmann::json::object();
    nlohmann::json diagnostics = nlohmann::json::object();
    double wall_clock_s = 0.0;
    std::optional<WavepacketState> final_state;  ///< numeric runs only, for checkpoints
};

inline nlohmann::json to_json(const TrajectoryPoint& p) {
    return {{"t", p.t}, {"x", p.x}, {"y", p.y}, {"z", p.z}, {"var_x", p.var_x},
            {"var_y", p.var_y}, {"var_z", p.var_z}, {"norm", p.norm}};
}

inline nlohmann::json to_json(const RunRecord& r, bool with_trajectories = true) {
    nlohmann::json j;
    j["schema_version"] = run_record_schema_version;
    j["scenario"] = r.tag;
    j["solver"] = solver_name(r.solver);
    j["config"] = r.config;
    j["config_hash"] = r.config_hash;
    j["summary"] = r.summary;
    j["diagnostics"] = r.diagnostics;
    j["wall_clock_s"] = r.wall_clock_s;
    if (with_trajectories) {
        auto series = [](const std::vector<TrajectoryPoint>& v) {
            nlohmann::json a = nlohmann::json::array();
            for (const auto& p : v) a.push_back(to_json(p));
            return a;
        };
        j["trajectories"] = nlohmann::json::object();
        if (!r.analytic.empty()) j["trajectories"]["analytic"] = series(r.analytic);
        if (!r.numeric.empty()) j["trajectories"]["numeric"] = series(r.numeric);
    }
    return j;
}

/// Shortest text that carries 17 significant digits, independent of the C locale.
inline std::string format_number(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, r.ptr);
}

inline constexpr const char* trajectory_csv_header = "t,x_c,y_c,z_c,var_x,var_y,norm";

inline std::string trajectory_csv(const std::vector<TrajectoryPoint>& series) {
    std::string out = std::string(trajectory_csv_header) + "\n";
    for (const auto& p : series) {
        for (double v : {p.t, p.x, p.y, p.z, p.var_x, p.var_y}) out += format_number(v) + ",";
        out += format_number(p.norm) + "\n";
    }
    return out;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << text;
    if (!out) throw ConfigError("write failed for " + path.string());
}

/// Append-only JSON-lines log. All writers share one instance, whose mutex serializes lines.
class RecordAppender {
public:
    explicit RecordAppender(std::filesystem::path path) : path_(std::move(path)) {}

    void append(const nlohmann::json& record) {
        const std::string line = record.dump() + "\n";
        std::lock_guard lock(mutex_);
        std::ofstream out(path_, std::ios::app | std::ios::binary);
        if (!out) throw ConfigError("cannot append to " + path_.string());
        out << line;
    }

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
    std::mutex mutex_;
};

/// Writes <stem>-analytic.csv, <stem>-numeric.csv and <stem>.json under `dir`; returns the stem.
inline std::string write_run_outputs(const std::filesystem::path& dir, const RunRecord& r) {
    std::filesystem::create_directories(dir);
    const std::string stem = r.tag + "-" + r.config_hash.substr(0, 12);
    if (!r.analytic.empty()) write_text(dir / (stem + "-analytic.csv"), trajectory_csv(r.analytic));
    if (!r.numeric.empty()) write_text(dir / (stem + "-numeric.csv"), trajectory_csv(r.numeric));
    write_text(dir / (stem + ".json"), to_json(r, false).dump(2) + "\n");
    return stem;
}

}  // namespace polariton
