#include "contactsplit/mesh.hpp"
#include "contactsplit/errors.hpp"
#include "q1_shape.hpp"

#include <cmath>
#include <stdexcept>

namespace contactsplit {

const std::vector<int>& StructuredMesh::node_set(const std::string& name) const {
    auto it = node_sets.find(name);
    if (it == node_sets.end()) throw std::out_of_range("no node set named '" + name + "'");
    return it->second;
}

void check_material(const Material& m) {
    if (!(m.youngs_modulus > 0.0))
        throw std::invalid_argument("Young's modulus must be positive");
    if (!(m.poisson_ratio > -1.0 && m.poisson_ratio < 0.5))
        throw std::invalid_argument("Poisson ratio must lie in (-1, 0.5)");
}

std::vector<double> uniform_coords(double a, double b, int n_elems) {
    std::vector<double> xs(n_elems + 1);
    for (int i = 0; i <= n_elems; ++i) xs[i] = a + (b - a) * i / n_elems;
    return xs;
}

void append_graded(std::vector<double>& coords, double to, int n_elems, double ratio) {
    if (coords.empty()) throw std::invalid_argument("append_graded: need a start coordinate");
    const double from = coords.back();
    double weight = 0.0, w = 1.0;
    for (int i = 0; i < n_elems; ++i) {
        weight += w;
        w *= ratio;
    }
    const double h0 = (to - from) / weight;
    double x = from, h = h0;
    for (int i = 0; i < n_elems; ++i) {
        x += h;
        coords.push_back(i == n_elems - 1 ? to : x);
        h *= ratio;
    }
}

StructuredMesh tensor_mesh(const std::vector<double>& xs, const std::vector<double>& ys) {
    StructuredMesh m;
    m.dim = 2;
    const int nx = static_cast<int>(xs.size()) - 1;
    const int ny = static_cast<int>(ys.size()) - 1;
    if (nx < 1 || ny < 1) throw std::invalid_argument("tensor_mesh: need at least one element");
    auto node = [&](int i, int j) { return j * (nx + 1) + i; };
    m.nodes.resize(static_cast<std::size_t>(nx + 1) * (ny + 1));
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i) m.nodes[node(i, j)] = {xs[i], ys[j], 0.0};
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            m.elems.push_back({node(i, j), node(i + 1, j), node(i + 1, j + 1), node(i, j + 1),
                               0, 0, 0, 0});
    for (int j = 0; j <= ny; ++j) {
        m.node_sets["xmin"].push_back(node(0, j));
        m.node_sets["xmax"].push_back(node(nx, j));
    }
    for (int i = 0; i <= nx; ++i) {
        m.node_sets["ymin"].push_back(node(i, 0));
        m.node_sets["ymax"].push_back(node(i, ny));
    }
    return m;
}

StructuredMesh tensor_mesh(const std::vector<double>& xs, const std::vector<double>& ys,
                           const std::vector<double>& zs) {
    StructuredMesh m;
    m.dim = 3;
    const int nx = static_cast<int>(xs.size()) - 1;
    const int ny = static_cast<int>(ys.size()) - 1;
    const int nz = static_cast<int>(zs.size()) - 1;
    if (nx < 1 || ny < 1 || nz < 1)
        throw std::invalid_argument("tensor_mesh: need at least one element");
    auto node = [&](int i, int j, int k) { return (k * (ny + 1) + j) * (nx + 1) + i; };
    m.nodes.resize(static_cast<std::size_t>(nx + 1) * (ny + 1) * (nz + 1));
    for (int k = 0; k <= nz; ++k)
        for (int j = 0; j <= ny; ++j)
            for (int i = 0; i <= nx; ++i) m.nodes[node(i, j, k)] = {xs[i], ys[j], zs[k]};
    for (int k = 0; k < nz; ++k)
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i)
                m.elems.push_back({node(i, j, k), node(i + 1, j, k), node(i + 1, j + 1, k),
                                   node(i, j + 1, k), node(i, j, k + 1), node(i + 1, j, k + 1),
                                   node(i + 1, j + 1, k + 1), node(i, j + 1, k + 1)});
    for (int k = 0; k <= nz; ++k)
        for (int j = 0; j <= ny; ++j) {
            m.node_sets["xmin"].push_back(node(0, j, k));
            m.node_sets["xmax"].push_back(node(nx, j, k));
        }
    for (int k = 0; k <= nz; ++k)
        for (int i = 0; i <= nx; ++i) {
            m.node_sets["ymin"].push_back(node(i, 0, k));
            m.node_sets["ymax"].push_back(node(i, ny, k));
        }
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i) {
            m.node_sets["zmin"].push_back(node(i, j, 0));
            m.node_sets["zmax"].push_back(node(i, j, nz));
        }
    return m;
}

void translate(StructuredMesh& mesh, double dx, double dy, double dz) {
    for (auto& p : mesh.nodes) {
        p[0] += dx;
        p[1] += dy;
        p[2] += dz;
    }
}

void check_mesh(const StructuredMesh& mesh) {
    if (mesh.dim != 2 && mesh.dim != 3) throw std::invalid_argument("mesh dimension must be 2 or 3");
    const int npe = mesh.nodes_per_elem();
    for (const auto& e : mesh.elems)
        for (int a = 0; a < npe; ++a)
            if (e[a] < 0 || e[a] >= mesh.num_nodes())
                throw std::out_of_range("element node index out of range");
    // Positive Jacobian at every quadrature point.
    for (const auto& e : mesh.elems) {
        const int nq = mesh.dim == 2 ? 4 : 8;
        for (int q = 0; q < nq; ++q) {
            const double xi = q1::kGauss2[q & 1];
            const double eta = q1::kGauss2[(q >> 1) & 1];
            const double zeta = q1::kGauss2[(q >> 2) & 1];
            double det = 0.0;
            if (mesh.dim == 2) {
                double n[4], dn[4][2];
                q1::shape_2d(xi, eta, n, dn);
                double j[2][2] = {{0, 0}, {0, 0}};
                for (int a = 0; a < 4; ++a)
                    for (int r = 0; r < 2; ++r)
                        for (int c = 0; c < 2; ++c) j[r][c] += mesh.nodes[e[a]][r] * dn[a][c];
                det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
            } else {
                double n[8], dn[8][3];
                q1::shape_3d(xi, eta, zeta, n, dn);
                double j[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
                for (int a = 0; a < 8; ++a)
                    for (int r = 0; r < 3; ++r)
                        for (int c = 0; c < 3; ++c) j[r][c] += mesh.nodes[e[a]][r] * dn[a][c];
                det = j[0][0] * (j[1][1] * j[2][2] - j[1][2] * j[2][1]) -
                      j[0][1] * (j[1][0] * j[2][2] - j[1][2] * j[2][0]) +
                      j[0][2] * (j[1][0] * j[2][1] - j[1][1] * j[2][0]);
            }
            if (!(det > 0.0)) throw std::invalid_argument("non-positive element Jacobian");
        }
    }
}

} // namespace contactsplit
