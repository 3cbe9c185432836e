#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "polariton/harness/record.hpp"
#include "polariton/harness/scenario.hpp"
#include "polariton/harness/sweep.hpp"
#include "polariton/harness/units.hpp"

using namespace polariton;
namespace fs = std::filesystem;

namespace {

const std::string config_dir = POLARITON_CONFIG_DIR;

YAML::Node shipped(const std::string& tag) { return YAML::LoadFile(config_dir + "/" + tag + ".yaml"); }

Scenario scenario(const std::string& tag, std::initializer_list<std::pair<const char*, const char*>> edits = {}) {
    YAML::Node tree = shipped(tag);
    for (const auto& [path, value] : edits) tree = with_value(tree, path, value);
    return Scenario::from_config(config_from_yaml(tree));
}

// Independent small-angle deflection: alpha = v_x / v_g with v_x = mu sin^2(theta) B1 T / m_eff.
double reference_angle(const SystemConfig& c, double B1) {
    const double mu = c.atom.mu_s - c.atom.mu_g;
    const double th = std::atan(c.coupling.gsqrtN / c.coupling.Omega0);
    const double vg = c.coupling.c * std::cos(th) * std::cos(th);
    const double T = c.length / vg;
    const double vx = mu * std::sin(th) * std::sin(th) * B1 * T / (c.coupling.k / vg);
    return vx / vg;
}

const char* linear_yaml = R"(
scenario: linear-b
atom: {mF_g: -2, gF_g: 0.5, mF_s: 0, gF_s: -0.5, gamma1: 2.87 MHz}
coupling: {Omega0: 14.35 MHz, tan_theta: 1732, wavelength: 795 nm}
field: {type: linear, B0: 0 G, B1: 0.1 G/cm}
probe: {width: 1 mm}
medium: {length: 7.5 cm}
run: {solver: analytic, samples: 20}
)";

const char* linear_yaml_reordered = R"(
run: {samples: 20, solver: analytic}
medium: {length: 75 mm}
probe: {width: 1e-3}
field: {B1: 0.1 G/cm, type: linear, B0: 0 T}
coupling: {wavelength: 795 nm, tan_theta: 1732, Omega0: 14.35 MHz}
atom: {gamma1: 2.87 MHz, gF_s: -0.5, mF_s: 0, gF_g: 0.5, mF_g: -2}
scenario: linear-b
)";

}  // namespace

TEST(Units, ParsesSuffixedScalars) {
    using D = units::Dimension;
    EXPECT_DOUBLE_EQ(units::parse_quantity("7.5 cm", D::length), 0.075);
    EXPECT_DOUBLE_EQ(units::parse_quantity("2.87 MHz", D::rate), 2.0 * M_PI * 2.87e6);
    EXPECT_DOUBLE_EQ(units::parse_quantity("5e-3 T/m", D::field_gradient), 5e-3);
    EXPECT_DOUBLE_EQ(units::parse_quantity("0.1 G/cm", D::field_gradient), 1e-3);
    EXPECT_DOUBLE_EQ(units::parse_quantity("1e13 cm^-3", D::number_density), 1e19);
    EXPECT_DOUBLE_EQ(units::parse_quantity("  0.25 ", D::length), 0.25);
    EXPECT_THROW(units::parse_quantity("7.5 furlong", D::length), ConfigError);
    EXPECT_THROW(units::parse_quantity("7.5 MHz", D::length), ConfigError);
    EXPECT_THROW(units::parse_quantity("cm", D::length), ConfigError);
    EXPECT_THROW(units::parse_quantity("", D::length), ConfigError);
}

TEST(Config, HashStableUnderKeyOrderAndUnitSpelling) {
    const auto a = parse_config(linear_yaml);
    const auto b = parse_config(linear_yaml_reordered);
    EXPECT_EQ(canonical_json(a).dump(), canonical_json(b).dump());
    EXPECT_EQ(config_hash(a), config_hash(b));
    EXPECT_EQ(config_hash(a).size(), 64u);

    const auto c = parse_config(YAML::Dump(with_value(YAML::Load(linear_yaml), "field.B1", "0.2 G/cm")));
    EXPECT_NE(config_hash(a), config_hash(c));
}

TEST(Config, Sha256KnownAnswer) {
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Config, RejectsBadInput) {
    auto bad = [](const std::string& path, const std::string& value) {
        return YAML::Dump(with_value(YAML::Load(linear_yaml), path, value));
    };
    EXPECT_THROW(parse_config(bad("field.B2", "1 T/m")), ConfigError);
    EXPECT_THROW(parse_config(bad("field.B1", "1 MHz")), ConfigError);
    EXPECT_THROW(parse_config(bad("field.type", "sextupole")), ConfigError);
    EXPECT_THROW(parse_config(bad("run.solver", "guess")), ConfigError);
    EXPECT_THROW(parse_config(bad("run.samples", "2")), ConfigError);
    EXPECT_THROW(parse_config(bad("probe.width", "-1 mm")), ConfigError);
    EXPECT_THROW(parse_config(YAML::Dump(with_value(YAML::Load(bad("probe.width_x", "1 mm")), "probe.alpha_x", "1e6"))),
                 ConfigError);
    EXPECT_THROW(parse_config(bad("coupling.Omega0", "0 MHz")), DomainError);
    EXPECT_THROW(parse_config("atom: [1, 2"), ConfigError);
    EXPECT_THROW(with_value(YAML::Load(linear_yaml), "nowhere.deeper.B1", "1"), ConfigError);
}

TEST(Config, ShippedConfigsLoadAndValidate) {
    for (const char* tag : scenario_tags) {
        SCOPED_TRACE(tag);
        const auto s = Scenario::from_config(config_from_yaml(shipped(tag)));
        EXPECT_EQ(s.tag, tag);
        EXPECT_NO_THROW(validate_scenario(s));
    }
}

TEST(Scenario, TagRestrictsFieldVariant) {
    auto s = Scenario::from_config(parse_config(linear_yaml));
    s.tag = "harmonic-b";
    EXPECT_THROW(validate_scenario(s), ConfigError);
    s.tag = "gaussian-control";
    EXPECT_THROW(validate_scenario(s), ConfigError);
    s.tag = "no-such-tag";
    EXPECT_THROW(validate_scenario(s), ConfigError);

    EXPECT_THROW(validate_scenario(scenario("gaussian-control", {{"atom.gamma2", "10 Hz"}})), ConfigError);
    EXPECT_THROW(validate_scenario(scenario("gaussian-control-dephased", {{"atom.gamma2", "0 Hz"}})), ConfigError);
    EXPECT_THROW(validate_scenario(scenario("harmonic-b", {{"probe.center_x", "1 um"}})), ConfigError);
    auto detuned = scenario("gaussian-control-detuned");
    detuned.tag = "gaussian-control";
    EXPECT_THROW(validate_scenario(detuned), ConfigError);
}

TEST(Scenario, ZeroGradientGivesZeroDeflection) {
    for (Solver solver : {Solver::analytic, Solver::numeric}) {
        auto s = scenario("linear-b", {{"field.B1", "0 T/m"}});
        s.solver = solver;
        const auto r = run_scenario(s);
        const auto& sum = r.summary[solver == Solver::analytic ? "analytic" : "numeric"];
        EXPECT_NEAR(sum["deflection_angle"].get<double>(), 0.0, 1e-12) << solver_name(solver);
        EXPECT_EQ(sum["bend"], "none");
    }
}

TEST(Scenario, ControlBeamBendsLeftForPositiveOffsetNegativeDetuning) {
    for (const char* tag : {"gaussian-control", "gaussian-control-detuned"}) {
        SCOPED_TRACE(tag);
        const auto s = scenario(tag);
        ASSERT_GT(s.config.probe.a_x, 0.0);
        const auto r = run_scenario(s);
        EXPECT_EQ(r.summary["analytic"]["bend"], "left");
        EXPECT_EQ(r.summary["numeric"]["bend"], "left");
        EXPECT_LT(r.summary["numeric"]["exit_shift_x"].get<double>(), 0.0);
    }
}

TEST(Scenario, BothSolversAgreeWithinTolerance) {
    // harmonic-b is covered by the acceptance suite; it takes a few seconds on a 2-D grid
    for (const char* tag : {"linear-b", "gaussian-control", "gaussian-control-detuned", "gaussian-control-dephased",
                            "quadratic-control"}) {
        SCOPED_TRACE(tag);
        const auto r = run_scenario(scenario(tag));
        ASSERT_TRUE(r.summary.contains("comparison"));
        EXPECT_TRUE(r.summary["comparison"]["within_tolerance"].get<bool>()) << r.summary["comparison"].dump();
        EXPECT_EQ(r.analytic.size(), r.numeric.size());
        if (std::string(tag) == "gaussian-control-dephased") {
            EXPECT_TRUE(r.diagnostics["norm_non_increasing"].get<bool>());
        }
    }
}

TEST(Scenario, LinearDeflectionMatchesFormula) {
    const auto s = scenario("linear-b");
    const auto r = run_scenario(s);
    const double ref = reference_angle(s.config, std::get<LinearB>(s.config.field).B1);
    EXPECT_NEAR(r.summary["analytic"]["deflection_angle"].get<double>(), ref, 1e-12 * std::abs(ref));
    EXPECT_NEAR(r.summary["numeric"]["deflection_angle"].get<double>(), ref, 1e-2 * std::abs(ref));
}

TEST(Scenario, ReRunFromSnapshotIsBitIdentical) {
    const auto first = run_scenario(scenario("gaussian-control-dephased"));
    // the snapshot is JSON, which YAML reads directly
    const auto again = run_scenario(Scenario::from_config(config_from_yaml(YAML::Load(first.config.dump()))));
    EXPECT_EQ(first.config_hash, again.config_hash);
    EXPECT_EQ(first.summary.dump(), again.summary.dump());
    ASSERT_EQ(first.numeric.size(), again.numeric.size());
    EXPECT_EQ(trajectory_csv(first.numeric), trajectory_csv(again.numeric));
    EXPECT_EQ(trajectory_csv(first.analytic), trajectory_csv(again.analytic));
}

TEST(Scenario, GuardFailureNamesTheGuard) {
    // a 1 mm packet on a +-3 mm grid leaves mass at the boundary
    auto s = scenario("linear-b", {{"numeric.extent_x", "3 mm"}});
    s.solver = Solver::numeric;
    try {
        run_scenario(s);
        FAIL() << "expected a guard failure";
    } catch (const GuardFailure& e) {
        EXPECT_EQ(e.guard(), "edge-mass");
    }
}

TEST(Scenario, CoarseGridIsRejectedBeforeRunning) {
    // twice the default gradient kicks the packet past what 512 points on the auto extent resolve
    auto s = scenario("linear-b", {{"field.B1", "0.2 G/cm"}});
    s.solver = Solver::numeric;
    EXPECT_THROW(run_scenario(s), ConfigError);
    s = scenario("linear-b", {{"field.B1", "0.2 G/cm"}, {"numeric.grid", "1024"}});
    s.solver = Solver::both;
    const auto r = run_scenario(s);
    const double an = r.summary["analytic"]["deflection_angle"].get<double>();
    EXPECT_NEAR(r.summary["numeric"]["deflection_angle"].get<double>(), an, 1e-2 * an);
}

TEST(Scenario, MomentumAliasingTripsTheSpectralGuard) {
    // a fixed extent bypasses the up-front check; the propagator must still refuse
    auto s = scenario("linear-b", {{"field.B1", "0.2 G/cm"}, {"numeric.extent_x", "8 mm"}});
    s.solver = Solver::numeric;
    try {
        run_scenario(s);
        FAIL() << "expected a guard failure";
    } catch (const GuardFailure& e) {
        EXPECT_EQ(e.guard(), "spectral-edge");
    }
}

TEST(Sweep, DeflectionIsLinearInGradient) {
    auto base = scenario("linear-b");
    base.solver = Solver::analytic;
    const auto rows = sweep(base, "field.B1", {"0 G/cm", "0.1 G/cm", "0.2 G/cm"}, nullptr, 3);
    ASSERT_EQ(rows.size(), 3u);
    std::vector<double> a;
    for (const auto& r : rows) {
        ASSERT_TRUE(r.record) << r.error;
        a.push_back(r.record->summary["analytic"]["deflection_angle"].get<double>());
    }
    const double alpha = reference_angle(base.config, 1e-3);
    EXPECT_EQ(a[0], 0.0);
    EXPECT_NEAR(a[1], alpha, 1e-12 * alpha);
    EXPECT_NEAR(a[2], 2.0 * alpha, 1e-12 * alpha);
    EXPECT_EQ(rows[1].value, "0.1 G/cm");
}

TEST(Sweep, DeflectionScalesAsTanSquaredTheta) {
    // alpha = mu B1 L sin^2(theta) / (k v_g) = mu B1 L tan^2(theta) / (k c)
    auto base = scenario("linear-b");
    base.solver = Solver::analytic;
    const auto rows = sweep(base, "coupling.tan_theta", {"500", "1000", "2000"});
    std::vector<double> a;
    for (const auto& r : rows) {
        ASSERT_TRUE(r.record) << r.error;
        a.push_back(r.record->summary["analytic"]["deflection_angle"].get<double>());
    }
    EXPECT_NEAR(a[1] / a[0], 4.0, 1e-12);
    EXPECT_NEAR(a[2] / a[1], 4.0, 1e-12);
}

TEST(Sweep, NumericRowsMatchAnalyticRows) {
    auto base = scenario("linear-b");
    const auto rows = sweep(base, "field.B1", {"0.025 G/cm", "0.05 G/cm", "0.075 G/cm", "0.1 G/cm"});
    for (const auto& r : rows) {
        ASSERT_TRUE(r.record) << r.error;
        const double an = r.record->summary["analytic"]["deflection_angle"].get<double>();
        EXPECT_NEAR(r.record->summary["numeric"]["deflection_angle"].get<double>(), an, 1e-2 * an);
    }
}

TEST(Sweep, EmptyValuesGiveEmptyTable) {
    const auto rows = sweep(scenario("linear-b"), "field.B1", {});
    EXPECT_TRUE(rows.empty());
    EXPECT_EQ(sweep_table_csv(rows), "value,status,analytic_exit_x,numeric_exit_x,analytic_deflection,numeric_deflection,error\n");
}

TEST(Sweep, FailingRowsAreRecordedAndTheSweepContinues) {
    auto base = scenario("linear-b");
    base.solver = Solver::numeric;
    const auto rows = sweep(base, "numeric.extent_x", {"7 mm", "3 mm", "1 furlong", "7.5 mm"}, nullptr, 2);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_TRUE(rows[0].record);
    EXPECT_EQ(rows[1].error_kind, "guard");
    EXPECT_EQ(rows[2].error_kind, "config");
    EXPECT_TRUE(rows[3].record);
    EXPECT_FALSE(rows[2].error.empty());
    const auto table = sweep_table_csv(rows);
    EXPECT_NE(table.find("\"3 mm\",guard,"), std::string::npos);
}

TEST(Sweep, UnresolvablePathFailsUpFront) {
    EXPECT_THROW(sweep(scenario("linear-b"), "field.B1.sub", {"1"}), ConfigError);
}

TEST(Sweep, AppenderSerializesRecords) {
    const auto path = fs::temp_directory_path() / "polariton_sweep_records.jsonl";
    fs::remove(path);
    RecordAppender appender(path);
    auto base = scenario("linear-b");
    base.solver = Solver::analytic;
    std::vector<std::string> values;
    for (int i = 0; i < 16; ++i) values.push_back(std::to_string(0.01 * i) + " G/cm");
    const auto rows = sweep(base, "field.B1", values, &appender, 4);
    std::ifstream in(path);
    std::size_t lines = 0;
    for (std::string line; std::getline(in, line); ++lines) {
        const auto j = nlohmann::json::parse(line);
        EXPECT_EQ(j["schema_version"], run_record_schema_version);
        EXPECT_EQ(j["scenario"], "linear-b");
    }
    EXPECT_EQ(lines, values.size());
    fs::remove(path);
}

TEST(Record, CsvLayoutAndNumberFormat) {
    EXPECT_EQ(format_number(0.1), "0.10000000000000001");
    EXPECT_EQ(format_number(1.0), "1");
    EXPECT_EQ(format_number(-2.5e-300), "-2.5e-300");
    EXPECT_EQ(format_number(1.0 / 3.0), "0.33333333333333331");
    auto s = scenario("linear-b");
    s.solver = Solver::analytic;
    const auto r = run_scenario(s);
    const auto csv = trajectory_csv(r.analytic);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "t,x_c,y_c,z_c,var_x,var_y,norm");
    std::size_t rows = 0;
    for (; std::getline(in, line); ++rows) {
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), 6);
        EXPECT_EQ(line.find(' '), std::string::npos);
        std::istringstream fields(line);
        for (std::string f; std::getline(fields, f, ',');) EXPECT_NO_THROW((void)std::stod(f));
    }
    EXPECT_EQ(rows, s.config.samples + 1);
}

TEST(Record, WriteRunOutputs) {
    const auto dir = fs::temp_directory_path() / "polariton_outputs";
    fs::remove_all(dir);
    const auto r = run_scenario(scenario("linear-b"));
    const auto stem = write_run_outputs(dir, r);
    EXPECT_EQ(stem, "linear-b-" + r.config_hash.substr(0, 12));
    EXPECT_TRUE(fs::exists(dir / (stem + "-analytic.csv")));
    EXPECT_TRUE(fs::exists(dir / (stem + "-numeric.csv")));
    std::ifstream in(dir / (stem + ".json"));
    const auto j = nlohmann::json::parse(in);
    EXPECT_EQ(j["config_hash"], r.config_hash);
    EXPECT_FALSE(j.contains("trajectories"));
    EXPECT_TRUE(j["summary"].contains("comparison"));
    fs::remove_all(dir);
}

TEST(Record, AppenderIsSafeAcrossThreads) {
    const auto path = fs::temp_directory_path() / "polariton_appender.jsonl";
    fs::remove(path);
    RecordAppender appender(path);
    {
        std::vector<std::jthread> pool;
        for (int t = 0; t < 8; ++t)
            pool.emplace_back([&, t] {
                for (int i = 0; i < 50; ++i) appender.append({{"thread", t}, {"i", i}, {"pad", std::string(200, 'x')}});
            });
    }
    std::ifstream in(path);
    std::size_t lines = 0;
    for (std::string line; std::getline(in, line); ++lines) EXPECT_TRUE(nlohmann::json::accept(line));
    EXPECT_EQ(lines, 400u);
    fs::remove(path);
}
