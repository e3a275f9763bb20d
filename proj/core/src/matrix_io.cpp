#include "m2v/matrix_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "m2v/errors.hpp"

namespace m2v {

namespace {

double row_norm(const EmbeddingVector& row, Normalize normalize) {
    double norm = 0.0;
    for (const auto& [bucket, count] : row.nonzeros) {
        double v = static_cast<double>(count);
        norm += normalize == Normalize::l1 ? v : v * v;
    }
    if (normalize == Normalize::l2) norm = std::sqrt(norm);
    return norm;
}

std::string format_value(std::uint64_t count, double norm, Normalize normalize) {
    if (normalize == Normalize::none) return std::to_string(count);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g",
                  norm == 0.0 ? 0.0 : static_cast<double>(count) / norm);
    return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw io_error("cannot write file: " + path.string());
    }
    return out;
}

}  // namespace

void write_dense_csv(const EmbeddingMatrix& matrix, const std::filesystem::path& path,
                     Normalize normalize) {
    auto out = open_out(path);
    out << "id,label";
    for (std::uint64_t j = 0; j < matrix.config.m; ++j) out << ",f" << j;
    out << '\n';
    for (std::size_t i = 0; i < matrix.rows.size(); ++i) {
        out << matrix.ids[i] << ',' << matrix.labels[i].value_or("");
        const double norm = row_norm(matrix.rows[i], normalize);
        std::uint64_t next = 0;
        for (const auto& [bucket, count] : matrix.rows[i].nonzeros) {
            for (; next < bucket; ++next) out << ",0";
            out << ',' << format_value(count, norm, normalize);
            ++next;
        }
        for (; next < matrix.config.m; ++next) out << ",0";
        out << '\n';
    }
}

void write_sparse_csv(const EmbeddingMatrix& matrix, const std::filesystem::path& path,
                      Normalize normalize) {
    auto out = open_out(path);
    out << "row,col,value\n";
    for (std::size_t i = 0; i < matrix.rows.size(); ++i) {
        const double norm = row_norm(matrix.rows[i], normalize);
        for (const auto& [bucket, count] : matrix.rows[i].nonzeros) {
            out << i << ',' << bucket << ',' << format_value(count, norm, normalize) << '\n';
        }
    }
}

void write_sidecar(const EmbeddingMatrix& matrix, double collision_fraction,
                   const std::filesystem::path& path) {
    nlohmann::json sidecar;
    sidecar["k"] = matrix.config.k;
    sidecar["m"] = matrix.config.m;
    sidecar["seed"] = matrix.config.seed;
    sidecar["ids"] = matrix.ids;
    auto& labels = sidecar["labels"] = nlohmann::json::array();
    for (const auto& label : matrix.labels) {
        if (label) {
            labels.push_back(*label);
        } else {
            labels.push_back(nullptr);
        }
    }
    sidecar["skipped_ids"] = matrix.skipped_ids;
    sidecar["collision_fraction"] = collision_fraction;

    auto out = open_out(path);
    out << sidecar.dump(2) << '\n';
}

}  // namespace m2v
