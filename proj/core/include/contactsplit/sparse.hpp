#pragma once

#include "contactsplit/dense.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace contactsplit {

struct Triplet {
    int row;
    int col;
    double value;
};

/// Rectangular sparse matrix, compressed-sparse-row. Column indices are
/// strictly increasing within each row; duplicate triplets are summed on
/// construction.
struct SparseRect {
    int rows = 0;
    int cols = 0;
    std::vector<int> row_offsets;  // size rows+1
    std::vector<int> col_indices;
    std::vector<double> values;

    static SparseRect from_triplets(int rows, int cols, std::vector<Triplet> entries);

    int nnz() const { return static_cast<int>(col_indices.size()); }
    double at(int i, int j) const;  // 0 if not stored
    bool row_empty(int i) const { return row_offsets[i] == row_offsets[i + 1]; }
};

/// Symmetric sparse matrix storing the full pattern in CSR. Construction
/// verifies structural symmetry, a(i,j) == a(j,i) to 1e-14 relative, and
/// inserts explicit (possibly zero) diagonal entries.
struct SparseSym {
    int n = 0;
    std::vector<int> row_offsets;
    std::vector<int> col_indices;
    std::vector<double> values;

    static SparseSym from_triplets(int n, std::vector<Triplet> entries);

    int nnz() const { return static_cast<int>(col_indices.size()); }
    double at(int i, int j) const;
    double max_abs_diag() const;
};

Vector spmv(const SparseSym& a, const Vector& x);
Vector spmv(const SparseRect& a, const Vector& x, bool transpose = false);

/// Matrix Market coordinate format, 1-based indices. SparseSym is written
/// with the `symmetric` qualifier (lower triangle); SparseRect as `general`.
void write_matrix_market(const std::string& path, const SparseSym& a);
void write_matrix_market(const std::string& path, const SparseRect& a);
SparseSym read_matrix_market_sym(const std::string& path);
SparseRect read_matrix_market_rect(const std::string& path);

} // namespace contactsplit
