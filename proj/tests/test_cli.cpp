// End-to-end checks of the omsim binary: exit codes, output formats, presets.
// The binary path arrives via the OMSIM_BIN environment variable set by ctest.
#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CliResult {
    int exit_code;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const std::string& binary() {
    static const std::string bin = [] {
        const char* env = std::getenv("OMSIM_BIN");
        EXPECT_NE(env, nullptr) << "OMSIM_BIN must point at the omsim binary";
        return std::string(env ? env : "");
    }();
    return bin;
}

CliResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path dir = fs::path("cli_test_io");
    fs::create_directories(dir);
    const fs::path out = dir / ("out" + std::to_string(counter) + ".txt");
    const fs::path err = dir / ("err" + std::to_string(counter) + ".txt");
    ++counter;

    const std::string cmd =
        binary() + " " + args + " > " + out.string() + " 2> " + err.string();
    const int raw = std::system(cmd.c_str());
    const int code = raw == -1 ? -1 : WEXITSTATUS(raw);
    return {code, slurp(out), slurp(err)};
}

TEST(Cli, PointEmitsFlatJson) {
    const CliResult r = run_cli("point");
    ASSERT_EQ(r.exit_code, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_EQ(j.at("status"), "ok");
    EXPECT_NEAR(j.at("e_n").get<double>(), 0.058706056365567, 1e-9);
    EXPECT_TRUE(j.contains("v_qq"));
    EXPECT_TRUE(j.contains("char_a1"));
    EXPECT_TRUE(j.contains("nu_minus"));
}

TEST(Cli, PointReportsUnstableWithoutError) {
    const CliResult r = run_cli("point --set detuning_over_omega_m=-1");
    ASSERT_EQ(r.exit_code, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_EQ(j.at("status"), "unstable");
    EXPECT_FALSE(j.contains("e_n"));
    EXPECT_TRUE(j.contains("hurwitz_pass"));
}

TEST(Cli, ExitCodesPerErrorClass) {
    EXPECT_EQ(run_cli("bogus_subcommand").exit_code, 2);     // usage
    EXPECT_EQ(run_cli("preset nope").exit_code, 2);          // usage: unknown preset
    EXPECT_EQ(run_cli("point --set mech_q=-1").exit_code, 4);  // validation
    EXPECT_EQ(run_cli("point --set mech_q=abc").exit_code, 3);  // parse
    // instability: collapse on the unstable detuning side
    EXPECT_EQ(
        run_cli("collapse --set detuning_over_omega_m=-1.8 --set temperature_k=10").exit_code,
        6);
    // numerical: tc bracket does not contain the boundary
    EXPECT_EQ(run_cli("tc --tlo 600 --thi 900").exit_code, 5);
}

TEST(Cli, UnknownPresetListsValidNames) {
    const CliResult r = run_cli("preset nope");
    EXPECT_EQ(r.exit_code, 2);
    for (const char* name : {"fig2a", "fig2b", "fig3a", "fig3b", "fig4a", "fig4b"}) {
        EXPECT_NE(r.err.find(name), std::string::npos) << name;
    }
}

TEST(Cli, ConfigFileParseErrorCarriesLine) {
    const fs::path cfg = "cli_test_io/bad.cfg";
    fs::create_directories("cli_test_io");
    std::ofstream(cfg) << "mech_q = 1e6\nthis line is wrong\n";
    const CliResult r = run_cli("point --config " + cfg.string());
    EXPECT_EQ(r.exit_code, 3);
    EXPECT_NE(r.err.find("line 2"), std::string::npos);
}

TEST(Cli, SweepCsvShape) {
    const CliResult r = run_cli("sweep --axis delta_s:1.2:2.2:6 --workers 2");
    ASSERT_EQ(r.exit_code, 0) << r.err;
    std::istringstream in(r.out);
    std::string line;
    ASSERT_TRUE(std::getline(in, line));
    EXPECT_EQ(line, "delta_s_over_omega_m,e_n,status,q_s,x_s,nu_minus,lyap_residual");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), 6) << line;
    }
    EXPECT_EQ(rows, 6);
}

TEST(Cli, SweepJsonHasMetadataAndPoints) {
    const CliResult r =
        run_cli("sweep --axis temperature:0.01:1:3:log --format json --workers 1");
    ASSERT_EQ(r.exit_code, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_TRUE(j.at("metadata").contains("config_hash"));
    EXPECT_EQ(j.at("points").size(), 3u);
}

TEST(Cli, TcCommand) {
    const CliResult r = run_cli("tc --set mech_q=1e4");
    ASSERT_EQ(r.exit_code, 0) << r.err;
    const json j = json::parse(r.out);
    const double tc = j.at("t_c_k").get<double>();
    EXPECT_GT(tc, 3.5);
    EXPECT_LT(tc, 5.5);
}

TEST(Cli, CollapseCommand) {
    const CliResult r =
        run_cli("collapse --set temperature_k=10 --set drop_gamma_in_drift=true");
    ASSERT_EQ(r.exit_code, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_LT(j.at("max_relative_spread").get<double>(), 1e-3);
    EXPECT_EQ(j.at("e_n").size(), 4u);
}

TEST(Cli, PresetFig3aSeriesStructure) {
    const CliResult r = run_cli("preset fig3a --out cli_test_io/fig3a --workers 0 --plots");
    ASSERT_EQ(r.exit_code, 0) << r.err;
    const std::string csv = slurp("cli_test_io/fig3a/fig3a.csv");
    ASSERT_FALSE(csv.empty());

    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line,
              "series,delta_s_over_omega_m,e_n,status,q_s,x_s,nu_minus,lyap_residual");
    int dc_rc = 0, dc_only = 0, rc_only = 0, rc_nonzero = 0;
    while (std::getline(in, line)) {
        if (line.rfind("dc_rc,", 0) == 0) ++dc_rc;
        if (line.rfind("dc_only,", 0) == 0) ++dc_only;
        if (line.rfind("rc_only,", 0) == 0) {
            ++rc_only;
            // e_n column (third field) must be exactly zero for every point
            std::istringstream fields(line);
            std::string cell;
            std::getline(fields, cell, ',');
            std::getline(fields, cell, ',');
            std::getline(fields, cell, ',');
            if (!cell.empty() && std::strtod(cell.c_str(), nullptr) > 1e-9) ++rc_nonzero;
        }
    }
    EXPECT_EQ(dc_rc, 81);
    EXPECT_EQ(dc_only, 81);
    EXPECT_EQ(rc_only, 81);
    EXPECT_EQ(rc_nonzero, 0);
    EXPECT_TRUE(fs::exists("cli_test_io/fig3a/fig3a.json"));
    EXPECT_TRUE(fs::exists("cli_test_io/fig3a/fig3a.gp"));
}

TEST(Cli, PresetFig4bEmitsFitSummaryRow) {
    const CliResult r = run_cli("preset fig4b --out cli_test_io/fig4b");
    ASSERT_EQ(r.exit_code, 0) << r.err;
    const std::string csv = slurp("cli_test_io/fig4b/fig4b.csv");
    std::istringstream in(csv);
    std::string line, fit_row;
    std::getline(in, line);
    const auto header_fields = std::count(line.begin(), line.end(), ',');
    int tc_rows = 0;
    while (std::getline(in, line)) {
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), header_fields) << line;
        if (line.rfind("tc,", 0) == 0) ++tc_rows;
        if (line.rfind("fit,", 0) == 0) fit_row = line;
    }
    EXPECT_EQ(tc_rows, 4);
    ASSERT_FALSE(fit_row.empty());

    const json j = json::parse(slurp("cli_test_io/fig4b/fig4b.json"));
    const auto& fit = j.at("tc_and_fit");
    EXPECT_GT(fit.at("r_squared").get<double>(), 0.99);
    EXPECT_GT(fit.at("slope_k_per_qm").get<double>(), 0.0);
    EXPECT_EQ(fit.at("points").size(), 4u);
}

TEST(Cli, PresetFig2aReportsRefinedOptimum) {
    const CliResult r = run_cli("preset fig2a --out cli_test_io/fig2a");
    ASSERT_EQ(r.exit_code, 0) << r.err;
    const json j = json::parse(slurp("cli_test_io/fig2a/fig2a.json"));
    const double refined = j.at("optimum").at("refined_argmax_ratio").get<double>();
    EXPECT_GE(refined, 0.2);
    EXPECT_LE(refined, 0.45);
    EXPECT_EQ(j.at("metadata").at("preset"), "fig2a");
    EXPECT_TRUE(j.at("metadata").contains("caption_fixed"));
    EXPECT_TRUE(j.at("metadata").contains("inherited_keys"));
}

}  // namespace
