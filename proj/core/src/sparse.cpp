#include "contactsplit/sparse.hpp"
#include "contactsplit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace contactsplit {

namespace {

// Sort by (row, col) and sum duplicates. The stable sort keeps duplicate
// contributions in insertion order, so symmetric entry pairs assembled in
// the same element order sum to bit-identical values.
void compress(std::vector<Triplet>& entries) {
    std::stable_sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    std::size_t out = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (out > 0 && entries[out - 1].row == entries[i].row &&
            entries[out - 1].col == entries[i].col) {
            entries[out - 1].value += entries[i].value;
        } else {
            entries[out++] = entries[i];
        }
    }
    entries.resize(out);
}

void build_csr(int rows, const std::vector<Triplet>& entries, std::vector<int>& row_offsets,
               std::vector<int>& col_indices, std::vector<double>& values) {
    row_offsets.assign(rows + 1, 0);
    for (const Triplet& t : entries) ++row_offsets[t.row + 1];
    for (int i = 0; i < rows; ++i) row_offsets[i + 1] += row_offsets[i];
    col_indices.resize(entries.size());
    values.resize(entries.size());
    for (std::size_t k = 0; k < entries.size(); ++k) {
        col_indices[k] = entries[k].col;
        values[k] = entries[k].value;
    }
}

double csr_at(const std::vector<int>& row_offsets, const std::vector<int>& col_indices,
              const std::vector<double>& values, int i, int j) {
    for (int k = row_offsets[i]; k < row_offsets[i + 1]; ++k)
        if (col_indices[k] == j) return values[k];
    return 0.0;
}

} // namespace

SparseRect SparseRect::from_triplets(int rows, int cols, std::vector<Triplet> entries) {
    for (const Triplet& t : entries)
        if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
            throw DimensionMismatch("SparseRect: triplet out of range");
    compress(entries);
    SparseRect m;
    m.rows = rows;
    m.cols = cols;
    build_csr(rows, entries, m.row_offsets, m.col_indices, m.values);
    return m;
}

double SparseRect::at(int i, int j) const { return csr_at(row_offsets, col_indices, values, i, j); }

SparseSym SparseSym::from_triplets(int n, std::vector<Triplet> entries) {
    for (const Triplet& t : entries)
        if (t.row < 0 || t.row >= n || t.col < 0 || t.col >= n)
            throw DimensionMismatch("SparseSym: triplet out of range");
    // Explicit diagonal, possibly zero-valued.
    for (int i = 0; i < n; ++i) entries.push_back({i, i, 0.0});
    compress(entries);
    SparseSym m;
    m.n = n;
    build_csr(n, entries, m.row_offsets, m.col_indices, m.values);
    for (int i = 0; i < n; ++i) {
        for (int k = m.row_offsets[i]; k < m.row_offsets[i + 1]; ++k) {
            const int j = m.col_indices[k];
            if (j <= i) continue;
            bool present = false;
            double aji = 0.0;
            for (int kk = m.row_offsets[j]; kk < m.row_offsets[j + 1]; ++kk)
                if (m.col_indices[kk] == i) {
                    present = true;
                    aji = m.values[kk];
                    break;
                }
            if (!present)
                throw DimensionMismatch("SparseSym: pattern not structurally symmetric at (" +
                                        std::to_string(i) + "," + std::to_string(j) + ")");
            if (!close(m.values[k], aji, 1e-14))
                throw DimensionMismatch("SparseSym: values not symmetric at (" + std::to_string(i) +
                                        "," + std::to_string(j) + ")");
        }
    }
    return m;
}

double SparseSym::at(int i, int j) const { return csr_at(row_offsets, col_indices, values, i, j); }

double SparseSym::max_abs_diag() const {
    double m = 0.0;
    for (int i = 0; i < n; ++i) m = std::max(m, std::fabs(at(i, i)));
    return m;
}

Vector spmv(const SparseSym& a, const Vector& x) {
    if (static_cast<int>(x.size()) != a.n) throw DimensionMismatch("spmv: K dimension mismatch");
    Vector y(a.n, 0.0);
    for (int i = 0; i < a.n; ++i) {
        double s = 0.0;
        for (int k = a.row_offsets[i]; k < a.row_offsets[i + 1]; ++k)
            s += a.values[k] * x[a.col_indices[k]];
        y[i] = s;
    }
    return y;
}

Vector spmv(const SparseRect& a, const Vector& x, bool transpose) {
    if (!transpose) {
        if (static_cast<int>(x.size()) != a.cols)
            throw DimensionMismatch("spmv: B dimension mismatch");
        Vector y(a.rows, 0.0);
        for (int i = 0; i < a.rows; ++i) {
            double s = 0.0;
            for (int k = a.row_offsets[i]; k < a.row_offsets[i + 1]; ++k)
                s += a.values[k] * x[a.col_indices[k]];
            y[i] = s;
        }
        return y;
    }
    if (static_cast<int>(x.size()) != a.rows)
        throw DimensionMismatch("spmv: B^T dimension mismatch");
    Vector y(a.cols, 0.0);
    for (int i = 0; i < a.rows; ++i)
        for (int k = a.row_offsets[i]; k < a.row_offsets[i + 1]; ++k)
            y[a.col_indices[k]] += a.values[k] * x[i];
    return y;
}

namespace {

struct MmHeader {
    bool symmetric = false;
    int rows = 0, cols = 0;
    long nnz = 0;
};

MmHeader read_mm_header(std::istream& is, const std::string& path) {
    std::string line;
    if (!std::getline(is, line)) throw IoError("empty Matrix Market file: " + path);
    std::istringstream hs(line);
    std::string banner, object, format, field, symmetry;
    hs >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket" || object != "matrix" || format != "coordinate")
        throw IoError("not a Matrix Market coordinate file: " + path);
    if (field != "real")
        throw IoError("unsupported Matrix Market field '" + field + "': " + path);
    MmHeader h;
    if (symmetry == "symmetric")
        h.symmetric = true;
    else if (symmetry != "general")
        throw IoError("unsupported Matrix Market symmetry '" + symmetry + "': " + path);
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '%') continue;
        std::istringstream ss(line);
        if (!(ss >> h.rows >> h.cols >> h.nnz)) throw IoError("bad size line: " + path);
        return h;
    }
    throw IoError("missing size line: " + path);
}

std::vector<Triplet> read_mm_entries(std::istream& is, const MmHeader& h, const std::string& path) {
    std::vector<Triplet> entries;
    entries.reserve(static_cast<std::size_t>(h.nnz));
    std::string line;
    long count = 0;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '%') continue;
        std::istringstream ss(line);
        int i, j;
        double v;
        if (!(ss >> i >> j >> v)) throw IoError("bad entry line: '" + line + "' in " + path);
        entries.push_back({i - 1, j - 1, v});
        ++count;
    }
    if (count != h.nnz) throw IoError("entry count mismatch in " + path);
    return entries;
}

} // namespace

void write_matrix_market(const std::string& path, const SparseSym& a) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open for writing: " + path);
    long nnz_lower = 0;
    for (int i = 0; i < a.n; ++i)
        for (int k = a.row_offsets[i]; k < a.row_offsets[i + 1]; ++k)
            if (a.col_indices[k] <= i) ++nnz_lower;
    os << "%%MatrixMarket matrix coordinate real symmetric\n";
    os << a.n << ' ' << a.n << ' ' << nnz_lower << '\n';
    for (int i = 0; i < a.n; ++i)
        for (int k = a.row_offsets[i]; k < a.row_offsets[i + 1]; ++k)
            if (a.col_indices[k] <= i)
                os << (i + 1) << ' ' << (a.col_indices[k] + 1) << ' '
                   << format_double(a.values[k]) << '\n';
    if (!os) throw IoError("write failed: " + path);
}

void write_matrix_market(const std::string& path, const SparseRect& a) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open for writing: " + path);
    os << "%%MatrixMarket matrix coordinate real general\n";
    os << a.rows << ' ' << a.cols << ' ' << a.nnz() << '\n';
    for (int i = 0; i < a.rows; ++i)
        for (int k = a.row_offsets[i]; k < a.row_offsets[i + 1]; ++k)
            os << (i + 1) << ' ' << (a.col_indices[k] + 1) << ' ' << format_double(a.values[k])
               << '\n';
    if (!os) throw IoError("write failed: " + path);
}

SparseSym read_matrix_market_sym(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open: " + path);
    const MmHeader h = read_mm_header(is, path);
    if (h.rows != h.cols) throw IoError("symmetric matrix must be square: " + path);
    std::vector<Triplet> entries = read_mm_entries(is, h, path);
    if (h.symmetric) {
        const std::size_t stored = entries.size();
        for (std::size_t k = 0; k < stored; ++k)
            if (entries[k].row != entries[k].col)
                entries.push_back({entries[k].col, entries[k].row, entries[k].value});
    }
    return SparseSym::from_triplets(h.rows, std::move(entries));
}

SparseRect read_matrix_market_rect(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open: " + path);
    const MmHeader h = read_mm_header(is, path);
    std::vector<Triplet> entries = read_mm_entries(is, h, path);
    if (h.symmetric) {
        const std::size_t stored = entries.size();
        for (std::size_t k = 0; k < stored; ++k)
            if (entries[k].row != entries[k].col)
                entries.push_back({entries[k].col, entries[k].row, entries[k].value});
    }
    return SparseRect::from_triplets(h.rows, h.cols, std::move(entries));
}

} // namespace contactsplit
