#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "gausspid/samples.hpp"
#include "gausspid/stats.hpp"
#include "gausspid/systems.hpp"
#include "support/random_systems.hpp"

using namespace gausspid;

namespace {

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("sample matrix validation") {
    const BlockLayout layout(1, {1, 1});
    CHECK_THROWS_AS(SampleMatrix(layout, Eigen::MatrixXd::Zero(3, 2)), InputError);
    Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(3, 3);
    bad(1, 1) = std::nan("");
    CHECK_THROWS_AS(SampleMatrix(layout, bad), InputError);
}

TEST_CASE("covariance of identical rows is zero") {
    const BlockLayout layout(1, {1, 1});
    Eigen::MatrixXd data(2, 3);
    data << 1.5, -2.0, 0.25, 1.5, -2.0, 0.25;
    const JointCovariance cov = empirical_covariance(SampleMatrix(layout, data));
    CHECK(cov.matrix().isZero(0.0));

    CHECK_THROWS_AS(empirical_covariance(SampleMatrix(layout, data.topRows(1))), InputError);
}

TEST_CASE("doubling the dataset leaves the biased covariance unchanged") {
    const JointCovariance cov = testing::random_system(3);
    const SampleMatrix samples = sample_gaussian(cov, 64, 5);
    Eigen::MatrixXd doubled_data(128, samples.layout.total_dim());
    doubled_data << samples.data, samples.data;
    const SampleMatrix doubled(samples.layout, doubled_data);

    const int m = samples.count();
    const Eigen::MatrixXd biased =
        empirical_covariance(samples).matrix() * (m - 1) / static_cast<double>(m);
    const Eigen::MatrixXd biased_doubled =
        empirical_covariance(doubled).matrix() * (2 * m - 1) / static_cast<double>(2 * m);
    CHECK((biased - biased_doubled).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("empirical covariance converges at the root-M rate") {
    const JointCovariance cov = testing::random_system_with_dims(11, 1, {1, 1});
    const std::vector<int> sizes = {100, 1000, 10000, 100000};
    std::vector<double> errors;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        double total = 0.0;
        for (int repeat = 0; repeat < 3; ++repeat) {
            const SampleMatrix draw = sample_gaussian(
                cov, sizes[i],
                100 + static_cast<std::uint64_t>(repeat) * 17 + static_cast<std::uint64_t>(i));
            total += (empirical_covariance(draw).matrix() - cov.matrix()).norm();
        }
        errors.push_back(total / 3.0);
    }
    std::vector<double> sizes_double(sizes.begin(), sizes.end());
    const double slope = log_log_slope(sizes_double, errors);
    CHECK(slope > -0.7);
    CHECK(slope < -0.3);
}

TEST_CASE("gaussian sampling is deterministic in the seed") {
    const JointCovariance cov = five_source_benchmark();
    const SampleMatrix a = sample_gaussian(cov, 50, 1234);
    const SampleMatrix b = sample_gaussian(cov, 50, 1234);
    CHECK(a.data == b.data);
    const SampleMatrix c = sample_gaussian(cov, 50, 1235);
    CHECK(a.data != c.data);

    CHECK_THROWS_AS(sample_gaussian(cov, 0, 1), InputError);
}

TEST_CASE("sampling the identity reproduces it") {
    const JointCovariance identity(BlockLayout(1, {1, 1}), Eigen::MatrixXd::Identity(3, 3));
    const SampleMatrix draw = sample_gaussian(identity, 100000, 77);
    const JointCovariance estimate = empirical_covariance(draw);
    CHECK((estimate.matrix() - identity.matrix()).cwiseAbs().maxCoeff() < 0.02);
}

TEST_CASE("sampling a non-PD covariance fails") {
    const JointCovariance degenerate(BlockLayout(1, {1, 1}), Eigen::MatrixXd::Ones(3, 3));
    CHECK_THROWS_AS(sample_gaussian(degenerate, 10, 1), NumericalFailure);
}

TEST_CASE("csv round-trip preserves every printed digit") {
    const BlockLayout layout(1, {1, 1});
    PhiloxRng rng(9);
    Eigen::MatrixXd data(40, 3);
    for (int r = 0; r < data.rows(); ++r) {
        data(r, 0) = rng.normal() * 1e-7;
        data(r, 1) = rng.normal() * 1e9;
        data(r, 2) = rng.normal();
    }
    const SampleMatrix samples(layout, data);

    const auto path = temp_path("gausspid_roundtrip.csv");
    write_samples_csv(samples, path.string(), true);
    const SampleMatrix loaded = load_samples_csv(path.string(), layout, true);
    CHECK(loaded.data == samples.data);

    write_samples_csv(samples, path.string(), false);
    CHECK(load_samples_csv(path.string(), layout, false).data == samples.data);
    std::filesystem::remove(path);
}

TEST_CASE("csv errors name the offending cell") {
    const auto path = temp_path("gausspid_bad.csv");
    {
        std::ofstream out(path);
        out << "1.0,2.0,3.0\n1.0,2.0\n";
    }
    const BlockLayout layout(1, {1, 1});
    try {
        load_samples_csv(path.string(), layout, false);
        FAIL("expected InputError");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("row 2") != std::string::npos);
    }
    {
        std::ofstream out(path);
        out << "1.0,zz,3.0\n";
    }
    try {
        load_samples_csv(path.string(), layout, false);
        FAIL("expected InputError");
    } catch (const InputError& e) {
        const std::string what = e.what();
        CHECK(what.find("row 1") != std::string::npos);
        CHECK(what.find("column 2") != std::string::npos);
    }
    {
        std::ofstream out(path);
        out << "1.0,2.0,3.0,4.0\n";
    }
    CHECK_THROWS_AS(load_samples_csv(path.string(), layout, false), InputError);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_samples_csv(path.string(), layout, false), InputError);
}

TEST_CASE("layout sidecar round-trip and validation") {
    const auto path = temp_path("gausspid_layout.json");
    const BlockLayout layout(2, {1, 3, 2});
    write_layout_json(layout, path.string());
    CHECK(load_layout_json(path.string()) == layout);

    {
        std::ofstream out(path);
        out << R"({"target_dim": 1, "source_dims": [1], "extra": 3})";
    }
    CHECK_THROWS_AS(load_layout_json(path.string()), InputError);
    {
        std::ofstream out(path);
        out << R"({"target_dim": 1})";
    }
    CHECK_THROWS_AS(load_layout_json(path.string()), InputError);
    {
        std::ofstream out(path);
        out << "not json";
    }
    CHECK_THROWS_AS(load_layout_json(path.string()), InputError);
    std::filesystem::remove(path);
}

TEST_CASE("plug-in covariance converges on the generator") {
    const JointCovariance cov = testing::random_system(21);
    const JointCovariance estimate = empirical_covariance(sample_gaussian(cov, 200000, 3));
    CHECK((estimate.matrix() - cov.matrix()).norm() / cov.matrix().norm() < 0.02);
}
