#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace contactsplit {

using Vector = std::vector<double>;

double dot(const Vector& a, const Vector& b);
double norm2(const Vector& a);
double norm_inf(const Vector& a);

/// y += alpha * x
void axpy(double alpha, const Vector& x, Vector& y);
void scale(Vector& x, double alpha);

Vector add(const Vector& a, const Vector& b);
Vector sub(const Vector& a, const Vector& b);

bool all_finite(const Vector& a);

/// Hybrid absolute/relative closeness: |a-b| <= atol + rtol*max(|a|,|b|).
bool close(double a, double b, double rtol, double atol = 1e-14);

/// One-value-per-line text format; values round-trip bit-exactly.
void write_vec(const std::string& path, const Vector& v);
Vector read_vec(const std::string& path);

void write_vec(std::ostream& os, const Vector& v);
Vector read_vec(std::istream& is);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double x);

} // namespace contactsplit
