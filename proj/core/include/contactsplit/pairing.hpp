#pragma once

#include "contactsplit/assembly.hpp"
#include "contactsplit/mesh.hpp"
#include "contactsplit/sparse.hpp"

#include <array>
#include <optional>
#include <vector>

namespace contactsplit {

/// One body's view in a pairing: its mesh, its eliminated dof map, and the
/// offset of its free dofs in the assembled multi-body system.
struct PairSide {
    const StructuredMesh* mesh;
    const DofMap* dofs;
    int dof_offset;
};

/// Pairing rows over global free dofs. Contributions of prescribed dofs are
/// folded into d. The sign convention: `direction` points from the first
/// (slave) side toward the second (master) side, the slave normal dof gets
/// +sign and positive (BU - D) means penetration.
struct PairingRows {
    std::vector<Triplet> entries;  // (row, global free dof, coefficient)
    Vector d;
    std::vector<int> slave_nodes;
    std::vector<int> master_nodes;  // node-to-node only
    std::vector<std::array<double, 3>> slave_positions;

    int rows() const { return static_cast<int>(d.size()); }
};

/// Matching-grid pairing: one row per node pair matched by in-plane
/// position (1e-9 m tolerance); errors with MismatchedInterfaces.
/// d defaults to the geometric normal distance; gap_override replaces it
/// (same pair order as the returned rows: sorted by in-plane position).
PairingRows build_pairing_node_to_node(const PairSide& slave, const std::vector<int>& slave_nodes,
                                       const PairSide& master, const std::vector<int>& master_nodes,
                                       int axis, int sign,
                                       const std::optional<Vector>& gap_override = std::nullopt);

/// Projects each slave node along the axis onto one master boundary face;
/// master weights come from the face's bilinear (2D: linear) shape functions
/// at the projection point. Errors with NoProjection when a slave node lies
/// outside every master face.
PairingRows build_pairing_node_to_surface(const PairSide& slave,
                                          const std::vector<int>& slave_nodes,
                                          const PairSide& master,
                                          const std::vector<int>& master_surface_nodes, int axis,
                                          int sign,
                                          const std::optional<Vector>& gap_override = std::nullopt);

/// Hertz-equivalent gap profile: d_j = r_j^2 / (2 R) + g_min with r_j the
/// in-plane distance of point j from the contact center.
Vector parabolic_gap_profile(double radius, const std::vector<std::array<double, 3>>& points,
                             const std::array<double, 3>& center, int normal_axis,
                             double g_min = 0.0);

SparseRect pairing_matrix(const PairingRows& rows, int n_free_dofs);

} // namespace contactsplit
