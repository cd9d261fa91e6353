#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

namespace contactsplit {

/// Tensor-product Q1 mesh: quadrilaterals in 2D, hexahedra in 3D.
/// Canonical boundary node sets are named xmin/xmax/ymin/ymax (and
/// zmin/zmax in 3D).
struct StructuredMesh {
    int dim = 2;
    std::vector<std::array<double, 3>> nodes;  // third coordinate unused in 2D
    std::vector<std::array<int, 8>> elems;     // first 4 entries used in 2D
    std::map<std::string, std::vector<int>> node_sets;

    int nodes_per_elem() const { return dim == 2 ? 4 : 8; }
    int num_nodes() const { return static_cast<int>(nodes.size()); }
    int num_elems() const { return static_cast<int>(elems.size()); }
    const std::vector<int>& node_set(const std::string& name) const;
};

struct Material {
    double youngs_modulus;  // Pa
    double poisson_ratio;
};

/// Throws on E <= 0 or nu outside (-1, 0.5).
void check_material(const Material& m);

StructuredMesh tensor_mesh(const std::vector<double>& xs, const std::vector<double>& ys);
StructuredMesh tensor_mesh(const std::vector<double>& xs, const std::vector<double>& ys,
                           const std::vector<double>& zs);

std::vector<double> uniform_coords(double a, double b, int n_elems);

/// Appends n_elems geometrically growing cells beyond coords.back() up to
/// `to`; each appended cell is `ratio` times the previous appended one.
void append_graded(std::vector<double>& coords, double to, int n_elems, double ratio);

/// Validates node-index ranges and positive element Jacobians at the 2x2(x2)
/// Gauss points; throws on violation.
void check_mesh(const StructuredMesh& mesh);

/// Translate all nodes by (dx, dy, dz).
void translate(StructuredMesh& mesh, double dx, double dy, double dz = 0.0);

} // namespace contactsplit
