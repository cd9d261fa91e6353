#include "contactsplit/assembly.hpp"
#include "contactsplit/errors.hpp"
#include "q1_shape.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace contactsplit {

namespace {

// Element stiffness, symmetrized; ndof = 8 (2D plane strain) or 24 (3D).
void element_stiffness(const StructuredMesh& mesh, const Material& mat, int elem, double ke[24][24]) {
    const int dim = mesh.dim;
    const int npe = mesh.nodes_per_elem();
    const int ndof = npe * dim;
    for (int a = 0; a < ndof; ++a)
        for (int b = 0; b < ndof; ++b) ke[a][b] = 0.0;

    const double e = mat.youngs_modulus;
    const double nu = mat.poisson_ratio;
    const double lambda = e * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
    const double mu = e / (2.0 * (1.0 + nu));

    const auto& conn = mesh.elems[elem];
    const int nq = dim == 2 ? 4 : 8;
    for (int q = 0; q < nq; ++q) {
        const double xi = q1::kGauss2[q & 1];
        const double eta = q1::kGauss2[(q >> 1) & 1];
        const double zeta = q1::kGauss2[(q >> 2) & 1];

        double dn[8][3];
        double jac[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
        if (dim == 2) {
            double n[4], d2[4][2];
            q1::shape_2d(xi, eta, n, d2);
            for (int a = 0; a < 4; ++a) {
                dn[a][0] = d2[a][0];
                dn[a][1] = d2[a][1];
                dn[a][2] = 0.0;
            }
            for (int a = 0; a < 4; ++a)
                for (int r = 0; r < 2; ++r)
                    for (int c = 0; c < 2; ++c) jac[r][c] += mesh.nodes[conn[a]][r] * dn[a][c];
            jac[2][2] = 1.0;
        } else {
            double n[8];
            q1::shape_3d(xi, eta, zeta, n, dn);
            for (int a = 0; a < 8; ++a)
                for (int r = 0; r < 3; ++r)
                    for (int c = 0; c < 3; ++c) jac[r][c] += mesh.nodes[conn[a]][r] * dn[a][c];
        }
        const double det = jac[0][0] * (jac[1][1] * jac[2][2] - jac[1][2] * jac[2][1]) -
                           jac[0][1] * (jac[1][0] * jac[2][2] - jac[1][2] * jac[2][0]) +
                           jac[0][2] * (jac[1][0] * jac[2][1] - jac[1][1] * jac[2][0]);
        if (!(det > 0.0)) throw std::invalid_argument("non-positive Jacobian in element");
        double inv[3][3];
        inv[0][0] = (jac[1][1] * jac[2][2] - jac[1][2] * jac[2][1]) / det;
        inv[0][1] = (jac[0][2] * jac[2][1] - jac[0][1] * jac[2][2]) / det;
        inv[0][2] = (jac[0][1] * jac[1][2] - jac[0][2] * jac[1][1]) / det;
        inv[1][0] = (jac[1][2] * jac[2][0] - jac[1][0] * jac[2][2]) / det;
        inv[1][1] = (jac[0][0] * jac[2][2] - jac[0][2] * jac[2][0]) / det;
        inv[1][2] = (jac[0][2] * jac[1][0] - jac[0][0] * jac[1][2]) / det;
        inv[2][0] = (jac[1][0] * jac[2][1] - jac[1][1] * jac[2][0]) / det;
        inv[2][1] = (jac[0][1] * jac[2][0] - jac[0][0] * jac[2][1]) / det;
        inv[2][2] = (jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0]) / det;

        double grad[8][3];  // dN_a/dx_r
        for (int a = 0; a < npe; ++a)
            for (int r = 0; r < dim; ++r) {
                double s = 0.0;
                for (int c = 0; c < dim; ++c) s += dn[a][c] * inv[c][r];
                grad[a][r] = s;
            }

        const double w = det;  // 2-point Gauss weights are 1
        // sigma = lambda tr(eps) I + 2 mu eps; accumulate B^T D B directly
        // from gradients.
        for (int a = 0; a < npe; ++a)
            for (int b = 0; b < npe; ++b)
                for (int r = 0; r < dim; ++r)
                    for (int s = 0; s < dim; ++s) {
                        double v = lambda * grad[a][r] * grad[b][s] +
                                   mu * grad[a][s] * grad[b][r];
                        if (r == s) {
                            double g = 0.0;
                            for (int c = 0; c < dim; ++c) g += grad[a][c] * grad[b][c];
                            v += mu * g;
                        }
                        ke[a * dim + r][b * dim + s] += w * v;
                    }
    }
    for (int a = 0; a < ndof; ++a)
        for (int b = a + 1; b < ndof; ++b) {
            const double v = 0.5 * (ke[a][b] + ke[b][a]);
            ke[a][b] = v;
            ke[b][a] = v;
        }
}

struct Face {
    std::vector<int> nodes;  // 2 (2D edge) or 4 (3D quad)
};

std::vector<Face> boundary_faces(const StructuredMesh& mesh) {
    std::map<std::vector<int>, std::pair<int, Face>> count;
    auto add = [&](std::vector<int> f) {
        std::vector<int> key = f;
        std::sort(key.begin(), key.end());
        auto it = count.find(key);
        if (it == count.end())
            count.emplace(std::move(key), std::make_pair(1, Face{std::move(f)}));
        else
            ++it->second.first;
    };
    for (const auto& e : mesh.elems) {
        if (mesh.dim == 2) {
            add({e[0], e[1]});
            add({e[1], e[2]});
            add({e[2], e[3]});
            add({e[3], e[0]});
        } else {
            add({e[0], e[1], e[2], e[3]});
            add({e[4], e[5], e[6], e[7]});
            add({e[0], e[1], e[5], e[4]});
            add({e[1], e[2], e[6], e[5]});
            add({e[2], e[3], e[7], e[6]});
            add({e[3], e[0], e[4], e[7]});
        }
    }
    std::vector<Face> out;
    for (auto& [key, v] : count)
        if (v.first == 1) out.push_back(std::move(v.second));
    return out;
}

double face_measure(const StructuredMesh& mesh, const Face& f) {
    if (mesh.dim == 2) {
        const auto& a = mesh.nodes[f.nodes[0]];
        const auto& b = mesh.nodes[f.nodes[1]];
        return std::hypot(b[0] - a[0], b[1] - a[1]);
    }
    auto tri = [&](int i, int j, int k) {
        const auto& a = mesh.nodes[f.nodes[i]];
        const auto& b = mesh.nodes[f.nodes[j]];
        const auto& c = mesh.nodes[f.nodes[k]];
        const double u[3] = {b[0] - a[0], b[1] - a[1], b[2] - a[2]};
        const double v[3] = {c[0] - a[0], c[1] - a[1], c[2] - a[2]};
        const double cx = u[1] * v[2] - u[2] * v[1];
        const double cy = u[2] * v[0] - u[0] * v[2];
        const double cz = u[0] * v[1] - u[1] * v[0];
        return 0.5 * std::sqrt(cx * cx + cy * cy + cz * cz);
    };
    return tri(0, 1, 2) + tri(0, 2, 3);
}

} // namespace

AssemblyResult assemble_stiffness(const StructuredMesh& mesh, const Material& mat,
                                  const std::vector<DirichletBc>& dirichlet,
                                  const std::vector<PointLoad>& loads,
                                  const std::vector<FaceTraction>& tractions,
                                  const std::vector<NodeSpring>& springs) {
    check_mesh(mesh);
    check_material(mat);
    const int dim = mesh.dim;
    const int nn = mesh.num_nodes();

    DofMap dofs;
    dofs.dim = dim;
    dofs.n_nodes = nn;
    dofs.index.assign(static_cast<std::size_t>(nn) * dim, 0);
    dofs.prescribed.assign(static_cast<std::size_t>(nn) * dim, 0.0);
    bool any_prescribed = false;
    for (const auto& bc : dirichlet) {
        for (int node : mesh.node_set(bc.node_set)) {
            const int c0 = bc.comp < 0 ? 0 : bc.comp;
            const int c1 = bc.comp < 0 ? dim - 1 : bc.comp;
            for (int c = c0; c <= c1; ++c) {
                dofs.index[node * dim + c] = -1;
                dofs.prescribed[node * dim + c] = bc.value;
                any_prescribed = true;
            }
        }
    }
    if (!any_prescribed && springs.empty())
        throw SingularMatrix("assemble_stiffness: no Dirichlet condition, rigid modes remain");
    for (int i = 0; i < nn * dim; ++i)
        if (dofs.index[i] == 0) dofs.index[i] = dofs.n_free++;
        else dofs.index[i] = -1;

    std::vector<Triplet> trip;
    Vector load(dofs.n_free, 0.0);
    double ke[24][24];
    const int npe = mesh.nodes_per_elem();
    for (int e = 0; e < mesh.num_elems(); ++e) {
        element_stiffness(mesh, mat, e, ke);
        const auto& conn = mesh.elems[e];
        for (int a = 0; a < npe; ++a)
            for (int r = 0; r < dim; ++r) {
                const int ga = dofs.free_index(conn[a], r);
                if (ga < 0) continue;
                for (int b = 0; b < npe; ++b)
                    for (int s = 0; s < dim; ++s) {
                        const int gb = dofs.free_index(conn[b], s);
                        const double v = ke[a * dim + r][b * dim + s];
                        if (gb >= 0)
                            trip.push_back({ga, gb, v});
                        else
                            load[ga] -= v * dofs.prescribed_value(conn[b], s);
                    }
            }
    }

    for (const auto& sp : springs)
        for (int node : mesh.node_set(sp.node_set)) {
            const int g = dofs.free_index(node, sp.comp);
            if (g >= 0) trip.push_back({g, g, sp.stiffness});
        }

    for (const auto& pl : loads)
        for (int node : mesh.node_set(pl.node_set)) {
            const int g = dofs.free_index(node, pl.comp);
            if (g >= 0) load[g] += pl.value;
        }

    if (!tractions.empty()) {
        const auto faces = boundary_faces(mesh);
        for (const auto& tr : tractions) {
            std::set<int> in_set(mesh.node_set(tr.node_set).begin(),
                                 mesh.node_set(tr.node_set).end());
            for (const auto& f : faces) {
                bool all = true;
                for (int node : f.nodes)
                    if (!in_set.count(node)) all = false;
                if (!all) continue;
                const double w = face_measure(mesh, f) / static_cast<double>(f.nodes.size());
                for (int node : f.nodes)
                    for (int c = 0; c < dim; ++c) {
                        const int g = dofs.free_index(node, c);
                        if (g >= 0) load[g] += w * tr.traction[c];
                    }
            }
        }
    }

    AssemblyResult out;
    out.stiffness = SparseSym::from_triplets(dofs.n_free, std::move(trip));
    out.load = std::move(load);
    out.dof_map = std::move(dofs);
    return out;
}

std::vector<double> element_stiffness_dense(const StructuredMesh& mesh, const Material& mat,
                                            int elem) {
    const int ndof = mesh.nodes_per_elem() * mesh.dim;
    double ke[24][24];
    element_stiffness(mesh, mat, elem, ke);
    std::vector<double> out(static_cast<std::size_t>(ndof) * ndof);
    for (int a = 0; a < ndof; ++a)
        for (int b = 0; b < ndof; ++b) out[a * ndof + b] = ke[a][b];
    return out;
}

MultiBodyAssembly assemble_bodies(const std::vector<BodySpec>& bodies) {
    MultiBodyAssembly out;
    std::vector<Triplet> trip;
    int offset = 0;
    for (const auto& body : bodies) {
        AssemblyResult r = assemble_stiffness(body.mesh, body.material, body.dirichlet,
                                              body.loads, body.tractions, body.springs);
        out.dof_offsets.push_back(offset);
        for (int i = 0; i < r.stiffness.n; ++i)
            for (int k = r.stiffness.row_offsets[i]; k < r.stiffness.row_offsets[i + 1]; ++k)
                trip.push_back({offset + i, offset + r.stiffness.col_indices[k], r.stiffness.values[k]});
        out.load.insert(out.load.end(), r.load.begin(), r.load.end());
        offset += r.stiffness.n;
        out.dof_maps.push_back(std::move(r.dof_map));
    }
    out.stiffness = SparseSym::from_triplets(offset, std::move(trip));
    return out;
}

std::vector<double> expand_solution(const DofMap& dofs, const Vector& u_free) {
    if (static_cast<int>(u_free.size()) != dofs.n_free)
        throw DimensionMismatch("expand_solution: free-dof count mismatch");
    std::vector<double> full(dofs.index.size());
    for (std::size_t i = 0; i < dofs.index.size(); ++i)
        full[i] = dofs.index[i] >= 0 ? u_free[dofs.index[i]] : dofs.prescribed[i];
    return full;
}

double strain_energy(const StructuredMesh& mesh, const Material& mat,
                     const std::vector<double>& u_full) {
    if (u_full.size() != static_cast<std::size_t>(mesh.num_nodes()) * mesh.dim)
        throw DimensionMismatch("strain_energy: field length mismatch");
    const int dim = mesh.dim;
    const int npe = mesh.nodes_per_elem();
    double energy = 0.0;
    double ke[24][24];
    std::vector<double> ue(static_cast<std::size_t>(npe) * dim);
    for (int e = 0; e < mesh.num_elems(); ++e) {
        element_stiffness(mesh, mat, e, ke);
        const auto& conn = mesh.elems[e];
        for (int a = 0; a < npe; ++a)
            for (int r = 0; r < dim; ++r) ue[a * dim + r] = u_full[conn[a] * dim + r];
        for (int a = 0; a < npe * dim; ++a)
            for (int b = 0; b < npe * dim; ++b) energy += 0.5 * ue[a] * ke[a][b] * ue[b];
    }
    return energy;
}

std::vector<double> tributary_measures(const StructuredMesh& mesh,
                                       const std::vector<int>& surface_nodes) {
    std::set<int> in_set(surface_nodes.begin(), surface_nodes.end());
    std::map<int, double> acc;
    for (const auto& f : boundary_faces(mesh)) {
        bool all = true;
        for (int node : f.nodes)
            if (!in_set.count(node)) all = false;
        if (!all) continue;
        const double w = face_measure(mesh, f) / static_cast<double>(f.nodes.size());
        for (int node : f.nodes) acc[node] += w;
    }
    std::vector<double> out;
    out.reserve(surface_nodes.size());
    for (int node : surface_nodes) out.push_back(acc.count(node) ? acc[node] : 0.0);
    return out;
}

} // namespace contactsplit
