#pragma once

#include <atomic>
#include <cstdlib>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "polariton/harness/record.hpp"
#include "polariton/harness/scenario.hpp"

namespace polariton {

struct SweepRow {
    std::string value;
    std::optional<RunRecord> record;
    std::string error;       ///< empty on success
    std::string error_kind;  ///< "config", "guard", "numerical" or "error"
};

/// Worker count from POLARITON_THREADS, else the hardware concurrency.
inline unsigned sweep_threads() {
    if (const char* env = std::getenv("POLARITON_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs `base` once per value with the parameter at `path` replaced. Rows are independent and
/// run concurrently; the table keeps the order of `values`. A failing row records its error and
/// the sweep continues. When `appender` is given each finished record is appended to it.
inline std::vector<SweepRow> sweep(const Scenario& base, const std::string& path,
                                   const std::vector<std::string>& values,
                                   RecordAppender* appender = nullptr, unsigned threads = 0) {
    std::vector<SweepRow> rows(values.size());
    if (values.empty()) return rows;
    if (!base.config.tree || !base.config.tree.IsMap())
        throw ConfigError("sweep: base scenario has no source tree to vary");
    // resolve the path once up front so a typo fails before any work
    with_value(base.config.tree, path, values.front());

    // Configs are built here, on one thread; only the runs themselves are parallel.
    std::vector<std::optional<Scenario>> scenarios(values.size());
    auto record_error = [](SweepRow& row, const std::string& kind, const char* what) {
        row.error = what;
        row.error_kind = kind;
    };
    for (std::size_t i = 0; i < values.size(); ++i) {
        rows[i].value = values[i];
        try {
            scenarios[i] = Scenario{base.tag, config_from_yaml(with_value(base.config.tree, path, values[i])), base.solver};
        } catch (const ConfigError& e) {
            record_error(rows[i], "config", e.what());
        } catch (const DomainError& e) {
            record_error(rows[i], "config", e.what());
        }
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < values.size(); i = next++) {
            if (!scenarios[i]) continue;
            auto& row = rows[i];
            try {
                row.record = run_scenario(*scenarios[i]);
                if (appender) appender->append(to_json(*row.record));
            } catch (const ConfigError& e) {
                record_error(row, "config", e.what());
            } catch (const DomainError& e) {
                record_error(row, "config", e.what());
            } catch (const GuardFailure& e) {
                record_error(row, "guard", e.what());
            } catch (const NumericalFailure& e) {
                record_error(row, "numerical", e.what());
            } catch (const std::exception& e) {
                record_error(row, "error", e.what());
            }
        }
    };
    const unsigned n = std::min<unsigned>(threads ? threads : sweep_threads(), static_cast<unsigned>(values.size()));
    std::vector<std::jthread> pool;
    for (unsigned k = 1; k < n; ++k) pool.emplace_back(worker);
    worker();
    pool.clear();  // join before the rows are handed out
    return rows;
}

/// One line per row: value, status, and the headline summary numbers of each solver.
inline std::string sweep_table_csv(const std::vector<SweepRow>& rows) {
    std::string out = "value,status,analytic_exit_x,numeric_exit_x,analytic_deflection,numeric_deflection,error\n";
    auto num = [](const nlohmann::json& j, const char* solver, const char* key) -> std::string {
        if (j.contains(solver) && j[solver].contains(key) && j[solver][key].is_number())
            return format_number(j[solver][key].get<double>());
        return "";
    };
    for (const auto& r : rows) {
        std::string err = r.error;
        for (auto& ch : err)
            if (ch == ',' || ch == '\n') ch = ';';
        out += "\"" + r.value + "\"," + (r.record ? "ok" : r.error_kind) + ",";
        if (r.record) {
            const auto& s = r.record->summary;
            out += num(s, "analytic", "exit_center_x") + "," + num(s, "numeric", "exit_center_x") + "," +
                   num(s, "analytic", "deflection_angle") + "," + num(s, "numeric", "deflection_angle") + ",";
        } else {
            out += ",,,,";
        }
        out += err + "\n";
    }
    return out;
}

}  // namespace polariton
