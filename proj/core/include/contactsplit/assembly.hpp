#pragma once

#include "contactsplit/mesh.hpp"
#include "contactsplit/sparse.hpp"

#include <string>
#include <vector>

namespace contactsplit {

/// Component-wise Dirichlet condition on a named node set.
/// comp = -1 prescribes all components.
struct DirichletBc {
    std::string node_set;
    int comp;
    double value;
};

struct PointLoad {
    std::string node_set;
    int comp;
    double value;  // N, applied to every node of the set
};

/// Constant traction (Pa) on the boundary faces whose nodes all belong to
/// the named set; integrated with consistent Q1 nodal loads.
struct FaceTraction {
    std::string node_set;
    std::array<double, 3> traction;
};

/// Grounding spring on one displacement component of every node in the
/// set. Standard device for suppressing rigid modes of bodies held only
/// by contact, keeping the stiffness matrix nonsingular.
struct NodeSpring {
    std::string node_set;
    int comp;
    double stiffness;  // N/m per node
};

/// Free-dof numbering after Dirichlet elimination.
struct DofMap {
    int dim = 2;
    int n_nodes = 0;
    int n_free = 0;
    std::vector<int> index;         // node*dim+comp -> free index, -1 if prescribed
    std::vector<double> prescribed; // node*dim+comp -> prescribed value

    int free_index(int node, int comp) const { return index[node * dim + comp]; }
    bool is_prescribed(int node, int comp) const { return index[node * dim + comp] < 0; }
    double prescribed_value(int node, int comp) const { return prescribed[node * dim + comp]; }
};

struct AssemblyResult {
    SparseSym stiffness;  // on free dofs
    Vector load;          // applied loads plus Dirichlet lifting
    DofMap dof_map;
};

/// Small-deformation linear elasticity, plane strain in 2D, 2x2(x2) Gauss.
/// Dirichlet conditions are eliminated; their lifting loads land in `load`.
/// Throws SingularMatrix when no Dirichlet condition constrains the body.
AssemblyResult assemble_stiffness(const StructuredMesh& mesh, const Material& mat,
                                  const std::vector<DirichletBc>& dirichlet,
                                  const std::vector<PointLoad>& loads = {},
                                  const std::vector<FaceTraction>& tractions = {},
                                  const std::vector<NodeSpring>& springs = {});

struct BodySpec {
    StructuredMesh mesh;
    Material material;
    std::vector<DirichletBc> dirichlet;
    std::vector<PointLoad> loads;
    std::vector<FaceTraction> tractions;
    std::vector<NodeSpring> springs;
};

/// Several independent bodies in one system: block-diagonal stiffness,
/// concatenated loads. Bodies couple only through pairing rows built later.
struct MultiBodyAssembly {
    SparseSym stiffness;
    Vector load;
    std::vector<DofMap> dof_maps;
    std::vector<int> dof_offsets;  // body -> offset of its free dofs
};

MultiBodyAssembly assemble_bodies(const std::vector<BodySpec>& bodies);

/// Dense element stiffness (row-major, node-major dof order), 8x8 in 2D,
/// 24x24 in 3D.
std::vector<double> element_stiffness_dense(const StructuredMesh& mesh, const Material& mat,
                                            int elem);

/// Full nodal field (node*dim+comp) from a free-dof solution.
std::vector<double> expand_solution(const DofMap& dofs, const Vector& u_free);

double strain_energy(const StructuredMesh& mesh, const Material& mat,
                     const std::vector<double>& u_full);

/// Tributary area (3D) or length (2D) of each node of the given set with
/// respect to the boundary faces contained in the set. Converts nodal
/// contact forces to pressures.
std::vector<double> tributary_measures(const StructuredMesh& mesh,
                                       const std::vector<int>& surface_nodes);

} // namespace contactsplit
