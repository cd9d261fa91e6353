#pragma once

#include "contactsplit/assembly.hpp"
#include "contactsplit/contact_problem.hpp"
#include "contactsplit/mesh.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace contactsplit {

struct SpringChainResult {
    ContactProblem problem;
    double lambda_star;  // closed-form multiplier
    double u_end_star;   // closed-form end displacement
};

/// Serial chain of n springs fixed at one end, load at the free end, single
/// obstacle constraint u_end <= gap. The closed form
///   lambda* = max(0, load - (stiffness/n) * gap)
/// is recorded in the bundle description.
SpringChainResult gen_spring_chain(int n_nodes, double stiffness, double end_load, double gap);

struct HertzParams {
    int dim = 2;
    int refinement = 16;  // elements across the estimated contact zone
    double radius = 2e-2;
    double e_lower = 2.1e11;  // block
    double nu_lower = 0.3;
    double e_upper = 2.1e9;   // sphere-equivalent body
    double nu_upper = 0.3;
    double u_d = 3e-4;   // prescribed indentation of the upper body's top
    double g_min = 0.0;  // minimal initial gap at the contact center
    double scale = 1.0;  // multiplies refinement
    // Out-of-plane slice thickness of the 2D plane-strain model (m). The
    // millimetre default keeps nodal contact forces and parameter bounds on
    // the same magnitudes as the 3D configuration.
    double thickness_2d = 1e-3;
};

struct HertzGeometry {
    int dim = 2;
    double radius = 0.0;
    double u_d = 0.0;
    double g_min = 0.0;
    double e_lower = 0.0, nu_lower = 0.0, e_upper = 0.0, nu_upper = 0.0;
    double symmetry_factor = 1.0;  // force multiplier of the modeled sector
    double h_contact = 0.0;        // in-plane element size in the contact strip
    std::vector<double> pair_radius;  // in-plane distance from the contact center
    std::vector<double> pair_area;    // tributary measure of each pair (m^2, or m in 2D)
    std::vector<int> body_dof_offsets;  // lower body first, then upper
    std::vector<int> body_dof_counts;
};

struct HertzResult {
    ContactProblem problem;
    HertzGeometry geometry;
};

/// Two stacked blocks with a parabolic initial-gap field standing in for the
/// sphere-on-block geometry: matching interface grids, node-to-node pairing,
/// indentation by a prescribed displacement on the upper body's top face.
/// The 3D variant models one symmetry quarter (symmetry_factor = 4).
HertzResult gen_hertz(const HertzParams& prm);

struct MultibodyParams {
    int n_bodies = 3;
    int body_elems = 8;  // elements across one body's width
    double body_width = 1.2e-2;
    double body_height = 8e-3;
    double base_height = 5e-3;
    double radius = 2e-2;     // parabolic-profile radius against the base
    double e_base = 2.1e11;
    double e_body = 2.1e9;
    double nu = 0.3;
    double u_d = 1.5e-3;
    double g_min_base = 1e-3;  // minimal body-to-base gap
    double scale = 1.0;
};

struct PairGroup {
    std::string kind;  // "base" or "neighbor"
    int body_a = 0;    // body index (base pairs: the body above the base)
    int body_b = 0;    // neighbor pairs: the right-hand body
    int first_row = 0;
    int n_rows = 0;
};

struct MultibodyResult {
    ContactProblem problem;
    std::vector<PairGroup> groups;
    std::vector<int> body_dof_offsets;  // base first, then bodies left to right
    std::vector<int> body_dof_counts;
    std::vector<std::array<double, 3>> pair_positions;
};

/// Row of deformable bodies on a base block: parabolic gap against the
/// base per body, zero initial gap between neighbors, indentation by a
/// prescribed displacement on every body's top face.
MultibodyResult gen_multibody(const MultibodyParams& prm);

struct RandomSmallParams {
    int n_dofs = 10;
    int n_pairs = 5;
    std::uint64_t seed = 42;
};

/// Well-conditioned random instance with a nondegenerate KKT point
/// (verified by enumeration during generation; degenerate draws are
/// rejected deterministically).
ContactProblem gen_random_small(const RandomSmallParams& prm);

} // namespace contactsplit
