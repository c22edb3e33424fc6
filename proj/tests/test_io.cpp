#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <sstream>

#include "json.hpp"

#include "lrtc/error.hpp"
#include "lrtc/report.hpp"
#include "lrtc/run_config.hpp"
#include "lrtc/tensor_io.hpp"

namespace {

using lrtc::CsvLayout;
using lrtc::ObservationMask;
using lrtc::Tensor3;
using lrtc::TensorFormat;

struct Sample {
    Tensor3 tensor;
    ObservationMask mask;
};

Sample random_sample(const lrtc::Shape& dims, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0.0, 100.0);
    std::bernoulli_distribution coin(0.7);
    std::vector<double> v(lrtc::element_count(dims));
    std::vector<std::uint8_t> f(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        f[i] = coin(rng);
        v[i] = f[i] ? n(rng) : 0.0;
    }
    return {Tensor3(dims, v), ObservationMask(dims, f)};
}

std::string parse_error_message(const std::string& text, bool csv) {
    std::istringstream in(text);
    try {
        if (csv)
            lrtc::read_csv(in, {2, 2}, "f.csv");
        else
            lrtc::read_dense(in, "f.txt");
    } catch (const lrtc::ParseError& e) {
        return e.what();
    }
    return "";
}

TEST(Dense, MinimalFile) {
    std::istringstream in("1 1 2\n3.0 nan");
    const auto loaded = lrtc::read_dense(in);
    EXPECT_EQ(loaded.tensor, Tensor3({1, 1, 2}, {3.0, 0.0}));
    EXPECT_EQ(loaded.mask, ObservationMask({1, 1, 2}, std::vector<std::uint8_t>{1, 0}));
}

TEST(Dense, RoundtripWithMask) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto s = random_sample({3 + seed, 4, 5}, seed);
        std::stringstream buf;
        lrtc::write_dense(buf, s.tensor, &s.mask);
        const auto back = lrtc::read_dense(buf);
        EXPECT_EQ(back.tensor, s.tensor);
        EXPECT_EQ(back.mask, s.mask);
    }
}

TEST(Dense, ZeroTensorAndCompleteExport) {
    std::stringstream buf;
    lrtc::write_dense(buf, Tensor3({1, 2, 2}));
    EXPECT_EQ(buf.str(), "1 2 2\n0 0\n0 0\n");
    const auto s = random_sample({2, 3, 4}, 9);
    std::stringstream out;
    lrtc::write_dense(out, s.tensor);
    EXPECT_EQ(out.str().find("nan"), std::string::npos);
}

TEST(Dense, ErrorsCarryLineAndColumn) {
    EXPECT_NE(parse_error_message("1 1 2\n3.0 abc\n", false).find("f.txt:2:5:"), std::string::npos);
    EXPECT_NE(parse_error_message("1 x 2\n1 2\n", false).find("f.txt:1:3:"), std::string::npos);
    EXPECT_NE(parse_error_message("1 1 3\n1 2\n", false).find("requires 3 values"), std::string::npos);
    EXPECT_NE(parse_error_message("1 1 1\n1 2\n", false).find("f.txt:2:3:"), std::string::npos);
    EXPECT_NE(parse_error_message("1 1 1\ninf\n", false).find("f.txt:2:1:"), std::string::npos);
    EXPECT_FALSE(parse_error_message("", false).empty());
}

TEST(Csv, ChronologicalColumns) {
    std::istringstream in("t0,t1,t2,t3\n1,2,3,4\n5,,nan,8\n");
    const auto loaded = lrtc::read_csv(in, {2, 2});
    ASSERT_EQ(loaded.tensor.dims(), (lrtc::Shape{2, 2, 2}));
    EXPECT_EQ(loaded.tensor(0, 1, 0), 3.0);
    EXPECT_EQ(loaded.tensor(1, 1, 1), 8.0);
    EXPECT_FALSE(loaded.mask.observed(loaded.tensor.index(1, 0, 1)));
    EXPECT_FALSE(loaded.mask.observed(loaded.tensor.index(1, 1, 0)));
    EXPECT_EQ(loaded.mask.observed_count(), 6u);
}

TEST(Csv, RoundtripWithMask) {
    const auto s = random_sample({5, 3, 4}, 21);
    std::stringstream buf;
    lrtc::write_csv(buf, s.tensor, &s.mask);
    const auto back = lrtc::read_csv(buf, {3, 4});
    EXPECT_EQ(back.tensor, s.tensor);
    EXPECT_EQ(back.mask, s.mask);
}

TEST(Csv, FullSizeTrafficMatrix) {
    const std::size_t rows = 214, cols = 61 * 144;
    std::string text;
    text.reserve(rows * cols * 3);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            if (c) text += ',';
            text += std::to_string((r + c) % 50);
        }
        text += '\n';
    }
    std::istringstream in(text);
    const auto loaded = lrtc::read_csv(in, {61, 144});
    EXPECT_EQ(loaded.tensor.dims(), (lrtc::Shape{214, 61, 144}));
    EXPECT_EQ(loaded.tensor(3, 1, 5), double((3 + 144 + 5) % 50));
}

TEST(Csv, ErrorsCarryLineAndColumn) {
    EXPECT_NE(parse_error_message("1,2,3,4\n1,2,oops,4\n", true).find("f.csv:2:3:"), std::string::npos);
    EXPECT_NE(parse_error_message("1,2,3,4\n1,2,3\n", true).find("f.csv:2:1:"), std::string::npos);
}

TEST(LoadTensor, FileErrors) {
    EXPECT_THROW(lrtc::load_tensor("/nonexistent/x.txt", TensorFormat::dense), lrtc::IoError);
    const auto path = std::filesystem::temp_directory_path() / "lrtc_io_test.csv";
    const auto s = random_sample({2, 2, 3}, 1);
    lrtc::save_tensor(path.string(), TensorFormat::csv, s.tensor, &s.mask);
    EXPECT_THROW(lrtc::load_tensor(path.string(), TensorFormat::csv), lrtc::ConfigError);
    const auto back = lrtc::load_tensor(path.string(), TensorFormat::csv, CsvLayout{2, 3});
    EXPECT_EQ(back.tensor, s.tensor);
    std::filesystem::remove(path);
    EXPECT_THROW(lrtc::parse_format("npy"), lrtc::ConfigError);
}

std::string config_error(const std::string& text) {
    std::istringstream in(text);
    try {
        lrtc::parse_run_config(in, "run.cfg");
    } catch (const lrtc::ConfigError& e) {
        return e.what();
    }
    return "";
}

TEST(RunConfig, ParsesAllKeys) {
    std::istringstream in(
        "# experiment\n"
        "solver = halrtc\n theta = 0.3\nalphas = 0.2, 0.3, 0.5\nrho0 = 1e-4\nrho_max = 10\n"
        "rho_mult = 1.1\nepsilon = 1e-5\nmax_iter = 50\npattern = NM\nrate = 0.4\nseed = 7\n"
        "input = a.csv\nformat = csv\ndims = 61 144\noutput = b.txt # trailing\ntrace_output = t.csv\n"
        "report = r.json\ntheta_grid = 0.1,0.2\nholdout_fraction = 0.25\n");
    const auto cfg = lrtc::parse_run_config(in);
    EXPECT_EQ(cfg.solver, "halrtc");
    EXPECT_EQ(cfg.pattern, lrtc::MissingPattern::fiber);
    EXPECT_EQ(cfg.dims->days, 61u);
    EXPECT_EQ(cfg.output, "b.txt");
    EXPECT_EQ(cfg.theta_grid->size(), 2u);

    const auto merged = lrtc::merge_solver_config(cfg, {});
    EXPECT_EQ(merged.theta, 0.3);
    EXPECT_EQ(merged.alphas[2], 0.5);
    EXPECT_EQ(merged.max_iter, 50);
    EXPECT_EQ(merged.rho_mult, 1.1);
}

TEST(RunConfig, ErrorsNameTheLine) {
    EXPECT_EQ(config_error("theta = 0.1\ntheta = 0.2\n").rfind("run.cfg:2:", 0), 0u);
    EXPECT_EQ(config_error("\n\ncolour = red\n").rfind("run.cfg:3:", 0), 0u);
    EXPECT_EQ(config_error("theta = 1.5\n").rfind("run.cfg:1:", 0), 0u);
    EXPECT_EQ(config_error("alphas = 0.5,0.5,0.5\n").rfind("run.cfg:1:", 0), 0u);
    EXPECT_EQ(config_error("pattern = xm\n").rfind("run.cfg:1:", 0), 0u);
    EXPECT_EQ(config_error("rho0 = 5\nrho_max = 1\n").rfind("run.cfg:2:", 0), 0u);
    EXPECT_EQ(config_error("just words\n").rfind("run.cfg:1:", 0), 0u);
    EXPECT_THROW(lrtc::load_run_config("/nonexistent.cfg"), lrtc::IoError);
}

std::vector<lrtc::ReportRow> sample_rows() {
    return {{"rm", 0.4, 1, "tnn", 0.1, 1.5, 0.25, 100, 0.5},
            {"nm", 0.4, 0, "tnn", 0.1, 2.5, 0.5, 120, 0.6},
            {"rm", 0.4, 1, "halrtc", 0.0, 3.0, 0.75, 80, 0.4},
            {"rm", 0.2, 1, "tnn", 0.1, 1.0, 0.125, 90, 0.3}};
}

TEST(Report, SortedCsvAndJson) {
    auto rows = sample_rows();
    lrtc::sort_rows(rows);
    EXPECT_EQ(rows[0].pattern, "nm");
    EXPECT_EQ(rows[1].rate, 0.2);
    EXPECT_EQ(rows[2].solver, "halrtc");

    std::ostringstream csv;
    lrtc::write_report_csv(csv, rows);
    const std::string text = csv.str();
    std::istringstream lines(text);
    std::string header;
    std::getline(lines, header);
    EXPECT_EQ(header, "pattern,rate,seed,solver,theta,mape,rmse,iterations,wall_time");
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 5);

    std::ostringstream js;
    lrtc::write_report_json(js, rows);
    const auto doc = nlohmann::json::parse(js.str());
    ASSERT_EQ(doc.size(), 4u);
    EXPECT_EQ(doc[0]["pattern"], "nm");
    EXPECT_EQ(doc[3]["rmse"], 0.25);
}

} // namespace
