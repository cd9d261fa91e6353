#include "contactsplit/pairing.hpp"
#include "contactsplit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace contactsplit {

namespace {

constexpr double kMatchTol = 1e-9;  // m

std::array<double, 2> in_plane(const std::array<double, 3>& p, int axis) {
    std::array<double, 2> q{};
    int c = 0;
    for (int r = 0; r < 3; ++r)
        if (r != axis) q[c++] = p[r];
    return q;
}

std::vector<int> sorted_by_plane(const StructuredMesh& mesh, std::vector<int> nodes, int axis) {
    std::sort(nodes.begin(), nodes.end(), [&](int a, int b) {
        const auto pa = in_plane(mesh.nodes[a], axis);
        const auto pb = in_plane(mesh.nodes[b], axis);
        if (std::fabs(pa[0] - pb[0]) > kMatchTol) return pa[0] < pb[0];
        return pa[1] < pb[1];
    });
    return nodes;
}

// Fold one coefficient into either the row entries or the gap adjustment.
void emit(PairingRows& out, int row, const PairSide& side, int node, int axis, double coef) {
    if (side.dofs->is_prescribed(node, axis)) {
        out.d[row] -= coef * side.dofs->prescribed_value(node, axis);
    } else {
        out.entries.push_back({row, side.dof_offset + side.dofs->free_index(node, axis), coef});
    }
}

} // namespace

PairingRows build_pairing_node_to_node(const PairSide& slave, const std::vector<int>& slave_nodes,
                                       const PairSide& master, const std::vector<int>& master_nodes,
                                       int axis, int sign,
                                       const std::optional<Vector>& gap_override) {
    if (slave_nodes.size() != master_nodes.size())
        throw MismatchedInterfaces("node-to-node: " + std::to_string(slave_nodes.size()) +
                                   " slave vs " + std::to_string(master_nodes.size()) +
                                   " master nodes");
    const auto s_sorted = sorted_by_plane(*slave.mesh, slave_nodes, axis);
    const auto m_sorted = sorted_by_plane(*master.mesh, master_nodes, axis);
    const int np = static_cast<int>(s_sorted.size());
    if (gap_override && static_cast<int>(gap_override->size()) != np)
        throw DimensionMismatch("node-to-node: gap override length mismatch");

    PairingRows out;
    out.d.assign(np, 0.0);
    for (int j = 0; j < np; ++j) {
        const int ns = s_sorted[j];
        const int nm = m_sorted[j];
        const auto ps = in_plane(slave.mesh->nodes[ns], axis);
        const auto pm = in_plane(master.mesh->nodes[nm], axis);
        if (std::fabs(ps[0] - pm[0]) > kMatchTol || std::fabs(ps[1] - pm[1]) > kMatchTol)
            throw MismatchedInterfaces("node-to-node: unmatched positions at pair " +
                                       std::to_string(j));
        out.d[j] = gap_override
                       ? (*gap_override)[j]
                       : sign * (master.mesh->nodes[nm][axis] - slave.mesh->nodes[ns][axis]);
        emit(out, j, slave, ns, axis, +sign);
        emit(out, j, master, nm, axis, -sign);
        out.slave_nodes.push_back(ns);
        out.master_nodes.push_back(nm);
        out.slave_positions.push_back(slave.mesh->nodes[ns]);
    }
    return out;
}

PairingRows build_pairing_node_to_surface(const PairSide& slave,
                                          const std::vector<int>& slave_nodes,
                                          const PairSide& master,
                                          const std::vector<int>& master_surface_nodes, int axis,
                                          int sign, const std::optional<Vector>& gap_override) {
    // Candidate master faces: boundary faces with every node in the surface
    // set. Recovered from the mesh by brute force; fine at desk scale.
    const StructuredMesh& mm = *master.mesh;
    std::set<int> in_set(master_surface_nodes.begin(), master_surface_nodes.end());
    struct MasterFace {
        std::vector<int> nodes;
        double lo[2], hi[2];
    };
    std::vector<MasterFace> faces;
    {
        std::map<std::vector<int>, std::pair<int, std::vector<int>>> counted;
        auto add = [&](std::vector<int> f) {
            std::vector<int> key = f;
            std::sort(key.begin(), key.end());
            auto it = counted.find(key);
            if (it == counted.end()) counted.emplace(std::move(key), std::make_pair(1, std::move(f)));
            else ++it->second.first;
        };
        for (const auto& e : mm.elems) {
            if (mm.dim == 2) {
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
        for (auto& [key, v] : counted) {
            if (v.first != 1) continue;
            bool all = true;
            for (int n : v.second)
                if (!in_set.count(n)) all = false;
            if (!all) continue;
            MasterFace mf;
            mf.nodes = v.second;
            mf.lo[0] = mf.lo[1] = 1e300;
            mf.hi[0] = mf.hi[1] = -1e300;
            for (int n : mf.nodes) {
                const auto q = in_plane(mm.nodes[n], axis);
                mf.lo[0] = std::min(mf.lo[0], q[0]);
                mf.lo[1] = std::min(mf.lo[1], q[1]);
                mf.hi[0] = std::max(mf.hi[0], q[0]);
                mf.hi[1] = std::max(mf.hi[1], q[1]);
            }
            faces.push_back(std::move(mf));
        }
    }
    if (faces.empty()) throw NoProjection("node-to-surface: master surface has no faces");

    const auto s_sorted = sorted_by_plane(*slave.mesh, slave_nodes, axis);
    const int np = static_cast<int>(s_sorted.size());
    if (gap_override && static_cast<int>(gap_override->size()) != np)
        throw DimensionMismatch("node-to-surface: gap override length mismatch");

    PairingRows out;
    out.d.assign(np, 0.0);
    for (int j = 0; j < np; ++j) {
        const int ns = s_sorted[j];
        const auto q = in_plane(slave.mesh->nodes[ns], axis);
        const MasterFace* hit = nullptr;
        for (const auto& mf : faces) {
            if (q[0] >= mf.lo[0] - kMatchTol && q[0] <= mf.hi[0] + kMatchTol &&
                q[1] >= mf.lo[1] - kMatchTol && q[1] <= mf.hi[1] + kMatchTol) {
                hit = &mf;
                break;
            }
        }
        if (!hit)
            throw NoProjection("node-to-surface: slave node " + std::to_string(ns) +
                               " projects outside the master patch");

        // Bilinear (2D: linear) weights on the axis-aligned face.
        std::vector<double> weights(hit->nodes.size(), 0.0);
        double master_axis_coord = 0.0;
        if (mm.dim == 2) {
            const auto a = in_plane(mm.nodes[hit->nodes[0]], axis);
            const auto b = in_plane(mm.nodes[hit->nodes[1]], axis);
            const double len = b[0] - a[0];
            const double t = len != 0.0 ? (q[0] - a[0]) / len : 0.0;
            weights[0] = 1.0 - t;
            weights[1] = t;
        } else {
            const double dx = hit->hi[0] - hit->lo[0];
            const double dy = hit->hi[1] - hit->lo[1];
            const double tx = dx != 0.0 ? (q[0] - hit->lo[0]) / dx : 0.0;
            const double ty = dy != 0.0 ? (q[1] - hit->lo[1]) / dy : 0.0;
            for (std::size_t a = 0; a < hit->nodes.size(); ++a) {
                const auto p = in_plane(mm.nodes[hit->nodes[a]], axis);
                const double wx = std::fabs(p[0] - hit->hi[0]) < std::fabs(p[0] - hit->lo[0])
                                      ? tx
                                      : 1.0 - tx;
                const double wy = std::fabs(p[1] - hit->hi[1]) < std::fabs(p[1] - hit->lo[1])
                                      ? ty
                                      : 1.0 - ty;
                weights[a] = wx * wy;
            }
        }
        for (std::size_t a = 0; a < hit->nodes.size(); ++a)
            master_axis_coord += weights[a] * mm.nodes[hit->nodes[a]][axis];

        out.d[j] = gap_override ? (*gap_override)[j]
                                : sign * (master_axis_coord - slave.mesh->nodes[ns][axis]);
        emit(out, j, slave, ns, axis, +sign);
        for (std::size_t a = 0; a < hit->nodes.size(); ++a)
            if (weights[a] != 0.0) emit(out, j, master, hit->nodes[a], axis, -sign * weights[a]);
        out.slave_nodes.push_back(ns);
        out.slave_positions.push_back(slave.mesh->nodes[ns]);
    }
    return out;
}

Vector parabolic_gap_profile(double radius, const std::vector<std::array<double, 3>>& points,
                             const std::array<double, 3>& center, int normal_axis, double g_min) {
    if (!(radius > 0.0)) throw std::invalid_argument("parabolic_gap_profile: radius must be > 0");
    Vector d(points.size());
    for (std::size_t j = 0; j < points.size(); ++j) {
        double r2 = 0.0;
        for (int c = 0; c < 3; ++c)
            if (c != normal_axis) {
                const double dc = points[j][c] - center[c];
                r2 += dc * dc;
            }
        d[j] = r2 / (2.0 * radius) + g_min;
    }
    return d;
}

SparseRect pairing_matrix(const PairingRows& rows, int n_free_dofs) {
    return SparseRect::from_triplets(rows.rows(), n_free_dofs, rows.entries);
}

} // namespace contactsplit
