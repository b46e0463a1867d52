#include "gausspid/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "gausspid/errors.hpp"

namespace gausspid {

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

void atomic_write_file(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path temp = target.string() + ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw InputError("cannot write '" + temp.string() + "'");
        }
        out << content;
        out.flush();
        if (!out.good()) {
            std::error_code ec;
            fs::remove(temp, ec);
            throw InputError("failed while writing '" + temp.string() + "'");
        }
    }
    std::error_code ec;
    fs::rename(temp, target, ec);
    if (ec) {
        fs::remove(temp, ec);
        throw InputError("cannot move output into place at '" + path + "'");
    }
}

nlohmann::json measure_report_to_json(const MeasureReport& report) {
    nlohmann::json doc;
    doc["measure"] = report.measure;
    doc["labels"] = report.labels;
    doc["values"] = report.values;
    doc["signed"] = report.signed_measure;
    doc["unit"] = "nats";
    doc["lambda"] = report.lambda;
    doc["layout"] = {{"target_dim", report.target_dim}, {"source_dims", report.source_dims}};
    doc["threads"] = report.threads;
    doc["wall_seconds"] = report.wall_seconds;
    return doc;
}

std::string measure_report_to_csv(const MeasureReport& report) {
    std::string out = "measure,label,value,lambda\n";
    for (std::size_t i = 0; i < report.values.size(); ++i) {
        out += report.measure;
        out += ',';
        out += report.labels[i];
        out += ',';
        out += format_double(report.values[i]);
        out += ',';
        out += format_double(report.lambda);
        out += '\n';
    }
    return out;
}

}  // namespace gausspid
