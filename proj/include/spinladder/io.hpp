#pragma once

// CSV and manifest output. Numbers are serialized with 17 significant
// digits so reruns with identical configs are byte-identical.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace spinladder::io {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
        : out_(path) {
        if (!out_) throw std::runtime_error("CsvWriter: cannot open " + path.string());
        for (std::size_t i = 0; i < header.size(); ++i)
            out_ << (i ? "," : "") << header[i];
        out_ << "\n";
        columns_ = header.size();
    }

    void row(const std::vector<std::string>& cells) {
        if (cells.size() != columns_) throw std::logic_error("CsvWriter: column mismatch");
        for (std::size_t i = 0; i < cells.size(); ++i)
            out_ << (i ? "," : "") << cells[i];
        out_ << "\n";
    }

    // convenience: all-numeric row
    void row(const std::vector<double>& values) {
        std::vector<std::string> cells;
        cells.reserve(values.size());
        for (double v : values) cells.push_back(format_double(v));
        row(cells);
    }

private:
    std::ofstream out_;
    std::size_t columns_ = 0;
};

inline void write_manifest(const std::filesystem::path& path, nlohmann::json config,
                           double wall_seconds, const std::string& version) {
    nlohmann::json manifest;
    manifest["config"] = std::move(config);
    manifest["version"] = version;
    manifest["wall_seconds"] = wall_seconds;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_manifest: cannot open " + path.string());
    out << manifest.dump(2) << "\n";
}

class WallClock {
public:
    WallClock() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace spinladder::io
