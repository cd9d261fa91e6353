#include "contactsplit/dense.hpp"
#include "contactsplit/errors.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace contactsplit {

double dot(const Vector& a, const Vector& b) {
    if (a.size() != b.size())
        throw DimensionMismatch("dot: sizes " + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()));
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const Vector& a) { return std::sqrt(dot(a, a)); }

double norm_inf(const Vector& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::fabs(v));
    return m;
}

void axpy(double alpha, const Vector& x, Vector& y) {
    if (x.size() != y.size()) throw DimensionMismatch("axpy: size mismatch");
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void scale(Vector& x, double alpha) {
    for (double& v : x) v *= alpha;
}

Vector add(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("add: size mismatch");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vector sub(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("sub: size mismatch");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

bool all_finite(const Vector& a) {
    for (double v : a)
        if (!std::isfinite(v)) return false;
    return true;
}

bool close(double a, double b, double rtol, double atol) {
    return std::fabs(a - b) <= atol + rtol * std::max(std::fabs(a), std::fabs(b));
}

std::string format_double(double x) {
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) return buf;
    }
    return buf;
}

void write_vec(std::ostream& os, const Vector& v) {
    for (double x : v) os << format_double(x) << '\n';
}

void write_vec(const std::string& path, const Vector& v) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open for writing: " + path);
    write_vec(os, v);
    if (!os) throw IoError("write failed: " + path);
}

Vector read_vec(std::istream& is) {
    Vector v;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        double x;
        if (!(ls >> x)) throw IoError("bad vector entry: '" + line + "'");
        v.push_back(x);
    }
    return v;
}

Vector read_vec(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open: " + path);
    return read_vec(is);
}

} // namespace contactsplit
