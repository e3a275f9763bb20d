#ifndef M2V_MATRIX_IO_HPP
#define M2V_MATRIX_IO_HPP

#include <filesystem>

#include "m2v/embed.hpp"

namespace m2v {

enum class Normalize { none, l1, l2 };

// Dense CSV: header `id,label,f0..f{m-1}`, one row per embedding. Unlabeled
// rows get an empty label column. Counts are written as integers unless a
// normalization is requested.
void write_dense_csv(const EmbeddingMatrix& matrix, const std::filesystem::path& path,
                     Normalize normalize = Normalize::none);

// Sparse triplet CSV: header `row,col,value`, nonzero cells only, row-major.
void write_sparse_csv(const EmbeddingMatrix& matrix, const std::filesystem::path& path,
                      Normalize normalize = Normalize::none);

// JSON sidecar carrying everything needed to reproduce the matrix:
// {k, m, seed, ids, labels, skipped_ids, collision_fraction}.
void write_sidecar(const EmbeddingMatrix& matrix, double collision_fraction,
                   const std::filesystem::path& path);

}  // namespace m2v

#endif  // M2V_MATRIX_IO_HPP
