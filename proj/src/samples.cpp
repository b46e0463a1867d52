#include "gausspid/samples.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "json.hpp"

#include "gausspid/report.hpp"
#include "gausspid/rng.hpp"

namespace gausspid {

SampleMatrix::SampleMatrix(BlockLayout layout_in, Eigen::MatrixXd data_in)
    : layout(std::move(layout_in)), data(std::move(data_in)) {
    if (data.cols() != layout.total_dim()) {
        throw InputError("sample matrix has " + std::to_string(data.cols()) +
                         " columns but the layout has total dimension " +
                         std::to_string(layout.total_dim()));
    }
    if (data.rows() < 1) {
        throw InputError("sample matrix must have at least one row");
    }
    if (!data.allFinite()) {
        throw InputError("sample matrix contains non-finite entries");
    }
}

JointCovariance empirical_covariance(const SampleMatrix& samples) {
    const int m = samples.count();
    if (m < 2) {
        throw InputError("empirical covariance needs at least two samples");
    }
    const Eigen::RowVectorXd col_means = samples.data.colwise().mean();
    const Eigen::MatrixXd centered = samples.data.rowwise() - col_means;
    Eigen::MatrixXd cov(samples.layout.total_dim(), samples.layout.total_dim());
    cov.noalias() = centered.transpose() * centered;
    cov /= static_cast<double>(m - 1);
    return JointCovariance(samples.layout, symmetrized(cov));
}

SampleMatrix sample_gaussian(const JointCovariance& cov, int count, std::uint64_t seed) {
    if (count < 1) {
        throw InputError("sample count must be positive");
    }
    const Cholesky chol(cov.matrix(), "covariance");
    const int dim = cov.layout().total_dim();
    // Standard normals filled row by row, then scaled by the factor; each row
    // is one draw L z.
    Eigen::MatrixXd z(count, dim);
    PhiloxRng rng(seed);
    for (int r = 0; r < count; ++r) {
        for (int c = 0; c < dim; ++c) {
            z(r, c) = rng.normal();
        }
    }
    const Eigen::MatrixXd factor = chol.factor().triangularView<Eigen::Lower>();
    Eigen::MatrixXd draws(count, dim);
    draws.noalias() = z * factor.transpose();
    return SampleMatrix(cov.layout(), std::move(draws));
}

SampleMatrix load_samples_csv(const std::string& path, const BlockLayout& layout,
                              bool expect_header) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open '" + path + "'");
    }
    const int cols = layout.total_dim();
    std::vector<double> cells;
    std::string line;
    int data_row = 0;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (first && expect_header) {
            first = false;
            continue;
        }
        first = false;
        if (line.empty()) continue;
        ++data_row;
        int col = 0;
        std::size_t begin = 0;
        while (begin <= line.size()) {
            std::size_t end = line.find(',', begin);
            if (end == std::string::npos) end = line.size();
            ++col;
            if (col > cols) {
                throw InputError("row " + std::to_string(data_row) + ": expected " +
                                 std::to_string(cols) + " columns, found more");
            }
            double value = 0.0;
            const char* s = line.data() + begin;
            const char* e = line.data() + end;
            while (s < e && (*s == ' ' || *s == '\t')) ++s;
            auto [ptr, ec] = std::from_chars(s, e, value);
            while (ptr < e && (*ptr == ' ' || *ptr == '\t')) ++ptr;
            if (ec != std::errc() || ptr != e) {
                throw InputError("row " + std::to_string(data_row) + ", column " +
                                 std::to_string(col) + ": cannot parse '" +
                                 line.substr(begin, end - begin) + "' as a number");
            }
            cells.push_back(value);
            if (end == line.size()) break;
            begin = end + 1;
        }
        if (col != cols) {
            throw InputError("row " + std::to_string(data_row) + ": expected " +
                             std::to_string(cols) + " columns, got " + std::to_string(col));
        }
    }
    if (data_row == 0) {
        throw InputError("'" + path + "' contains no data rows");
    }
    Eigen::MatrixXd data(data_row, cols);
    for (int r = 0; r < data_row; ++r) {
        for (int c = 0; c < cols; ++c) {
            data(r, c) = cells[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) +
                               static_cast<std::size_t>(c)];
        }
    }
    return SampleMatrix(layout, std::move(data));
}

namespace {

std::string header_line(const BlockLayout& layout) {
    std::ostringstream out;
    for (int j = 0; j < layout.target_dim(); ++j) {
        if (j > 0) out << ',';
        out << 't' << (j + 1);
    }
    for (int i = 1; i <= layout.num_sources(); ++i) {
        for (int j = 0; j < layout.source_dim(i); ++j) {
            out << ",s" << i;
            if (layout.source_dim(i) > 1) out << '_' << (j + 1);
        }
    }
    return out.str();
}

}  // namespace

void write_samples_csv(const SampleMatrix& samples, const std::string& path, bool write_header) {
    std::string out;
    out.reserve(static_cast<std::size_t>(samples.count()) *
                static_cast<std::size_t>(samples.layout.total_dim()) * 12);
    if (write_header) {
        out += header_line(samples.layout);
        out += '\n';
    }
    for (int r = 0; r < samples.count(); ++r) {
        for (int c = 0; c < samples.layout.total_dim(); ++c) {
            if (c > 0) out += ',';
            out += format_double(samples.data(r, c));
        }
        out += '\n';
    }
    atomic_write_file(path, out);
}

BlockLayout load_layout_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open '" + path + "'");
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw InputError("'" + path + "' is not valid JSON: " + e.what());
    }
    if (!doc.is_object() || !doc.contains("target_dim") || !doc.contains("source_dims")) {
        throw InputError("layout file needs the keys target_dim and source_dims");
    }
    for (const auto& [key, value] : doc.items()) {
        if (key != "target_dim" && key != "source_dims") {
            throw InputError("layout file has unknown key '" + key + "'");
        }
    }
    try {
        return BlockLayout(doc.at("target_dim").get<int>(),
                           doc.at("source_dims").get<std::vector<int>>());
    } catch (const nlohmann::json::exception& e) {
        throw InputError("layout file is malformed: " + std::string(e.what()));
    }
}

void write_layout_json(const BlockLayout& layout, const std::string& path) {
    nlohmann::json doc;
    doc["target_dim"] = layout.target_dim();
    doc["source_dims"] = layout.source_dims();
    atomic_write_file(path, doc.dump(2) + "\n");
}

}  // namespace gausspid
