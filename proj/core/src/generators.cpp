#include "contactsplit/generators.hpp"
#include "contactsplit/errors.hpp"
#include "contactsplit/pairing.hpp"
#include "contactsplit/reference.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace contactsplit {

SpringChainResult gen_spring_chain(int n_nodes, double stiffness, double end_load, double gap) {
    if (n_nodes < 1) throw std::invalid_argument("gen_spring_chain: need n >= 1");
    if (!(stiffness > 0.0)) throw std::invalid_argument("gen_spring_chain: stiffness must be > 0");
    const int n = n_nodes;
    std::vector<Triplet> kt;
    for (int i = 0; i < n; ++i) {
        kt.push_back({i, i, i + 1 < n ? 2.0 * stiffness : stiffness});
        if (i + 1 < n) {
            kt.push_back({i, i + 1, -stiffness});
            kt.push_back({i + 1, i, -stiffness});
        }
    }
    SpringChainResult out;
    out.problem.stiffness = SparseSym::from_triplets(n, std::move(kt));
    out.problem.pairing = SparseRect::from_triplets(1, n, {{0, n - 1, 1.0}});
    out.problem.gaps = {gap};
    out.problem.external_load.assign(n, 0.0);
    out.problem.external_load[n - 1] = end_load;
    out.problem.pair_labels = {"chain_end_vs_obstacle"};

    const double k_eff = stiffness / n;
    out.lambda_star = std::max(0.0, end_load - k_eff * gap);
    out.u_end_star = (end_load - out.lambda_star) / k_eff;
    std::ostringstream desc;
    desc << "spring chain, n=" << n << " springs of k=" << format_double(stiffness)
         << " N/m in series (k_eff=k/n), end load f=" << format_double(end_load)
         << " N, obstacle at d=" << format_double(gap)
         << " m; closed form: lambda* = max(0, f - k_eff d) = " << format_double(out.lambda_star)
         << " N (active contact iff f/k_eff > d), u_end* = (f - lambda*)/k_eff = "
         << format_double(out.u_end_star) << " m";
    out.problem.description = desc.str();
    return out;
}

namespace {

std::vector<int> nodes_below(const StructuredMesh& mesh, const std::vector<int>& set, int axis,
                             double limit) {
    std::vector<int> out;
    for (int n : set)
        if (mesh.nodes[n][axis] < limit) out.push_back(n);
    return out;
}

std::vector<int> nodes_within_plane(const StructuredMesh& mesh, const std::vector<int>& set,
                                    int normal_axis, double max_abs0, double max_abs1) {
    std::vector<int> out;
    for (int n : set) {
        double q[2];
        int c = 0;
        for (int r = 0; r < 3; ++r)
            if (r != normal_axis) q[c++] = mesh.nodes[n][r];
        if (std::fabs(q[0]) <= max_abs0 && std::fabs(q[1]) <= max_abs1) out.push_back(n);
    }
    return out;
}

} // namespace

HertzResult gen_hertz(const HertzParams& prm) {
    const int refinement = std::max(1, static_cast<int>(std::lround(prm.refinement * prm.scale)));
    if (refinement < 4) throw std::invalid_argument("gen_hertz: refinement must be >= 4");
    if (prm.dim != 2 && prm.dim != 3) throw std::invalid_argument("gen_hertz: dim must be 2 or 3");
    if (!(prm.radius > 0.0)) throw std::invalid_argument("gen_hertz: radius must be > 0");

    const double a_est = std::sqrt(prm.radius * std::max(prm.u_d, 1e-12));
    const double w_strip = 1.6 * a_est;

    HertzResult out;
    out.geometry.dim = prm.dim;
    out.geometry.radius = prm.radius;
    out.geometry.u_d = prm.u_d;
    out.geometry.g_min = prm.g_min;
    out.geometry.e_lower = prm.e_lower;
    out.geometry.nu_lower = prm.nu_lower;
    out.geometry.e_upper = prm.e_upper;
    out.geometry.nu_upper = prm.nu_upper;

    std::vector<BodySpec> bodies(2);
    std::vector<int> slave_set;   // lower-body interface nodes, strip only
    std::vector<int> master_set;  // upper-body interface nodes

    if (prm.dim == 2) {
        // Full model: upper body is a column exactly as wide as the paired
        // strip, so the pair count is refinement + 1.
        const double h1 = 1e-2, h2 = 1e-2;
        const int ny = std::max(4, (3 * refinement) / 4);
        std::vector<double> xs_u = uniform_coords(-w_strip, w_strip, refinement);
        out.geometry.h_contact = 2.0 * w_strip / refinement;

        std::vector<double> wing = {w_strip};
        append_graded(wing, 4.0 * w_strip, 6, 1.7);
        std::vector<double> xs_l;
        for (std::size_t i = wing.size(); i-- > 1;) xs_l.push_back(-wing[i]);
        xs_l.insert(xs_l.end(), xs_u.begin(), xs_u.end());
        xs_l.insert(xs_l.end(), wing.begin() + 1, wing.end());

        // The slice thickness scales the plane-strain stiffness linearly, so
        // it is folded into the assembled modulus.
        const double t = prm.thickness_2d;
        if (!(t > 0.0)) throw std::invalid_argument("gen_hertz: thickness_2d must be > 0");
        bodies[0].mesh = tensor_mesh(xs_l, uniform_coords(-h1, 0.0, ny));
        bodies[0].material = {prm.e_lower * t, prm.nu_lower};
        bodies[0].dirichlet = {{"ymin", -1, 0.0}};

        bodies[1].mesh = tensor_mesh(xs_u, uniform_coords(0.0, h2, ny));
        bodies[1].material = {prm.e_upper * t, prm.nu_upper};
        bodies[1].dirichlet = {{"ymax", 0, 0.0}, {"ymax", 1, -prm.u_d}};

        out.geometry.symmetry_factor = 1.0;
    } else {
        // Quarter model: symmetry planes at x = 0 and y = 0.
        const double h_c = 2.0 * a_est / refinement;
        const int n_strip = static_cast<int>(std::ceil(w_strip / h_c));
        out.geometry.h_contact = h_c;

        std::vector<double> plane_u = uniform_coords(0.0, n_strip * h_c, n_strip);
        append_graded(plane_u, 4.0 * a_est, 4, 1.7);
        std::vector<double> plane_l = plane_u;
        append_graded(plane_l, 8.0 * a_est, 3, 1.9);

        const double h1 = 8e-3, h2 = 8e-3;
        std::vector<double> zs_u = {0.0};
        append_graded(zs_u, h2, 6, 1.8);
        std::vector<double> zpos = {0.0};
        append_graded(zpos, h1, 6, 1.8);
        std::vector<double> zs_l;
        for (std::size_t i = zpos.size(); i-- > 0;) zs_l.push_back(-zpos[i]);

        bodies[0].mesh = tensor_mesh(plane_l, plane_l, zs_l);
        bodies[0].material = {prm.e_lower, prm.nu_lower};
        bodies[0].dirichlet = {{"zmin", -1, 0.0}, {"xmin", 0, 0.0}, {"ymin", 1, 0.0}};

        bodies[1].mesh = tensor_mesh(plane_u, plane_u, zs_u);
        bodies[1].material = {prm.e_upper, prm.nu_upper};
        bodies[1].dirichlet = {{"xmin", 0, 0.0},
                               {"ymin", 1, 0.0},
                               {"zmax", 0, 0.0},
                               {"zmax", 1, 0.0},
                               {"zmax", 2, -prm.u_d}};

        out.geometry.symmetry_factor = 4.0;
    }

    MultiBodyAssembly system = assemble_bodies(bodies);
    const int axis = prm.dim - 1;  // interface normal: y in 2D, z in 3D
    const std::string top = prm.dim == 2 ? "ymax" : "zmax";
    const std::string bottom = prm.dim == 2 ? "ymin" : "zmin";

    const double w_master = prm.dim == 2 ? w_strip : 4.0 * a_est;
    slave_set = nodes_within_plane(bodies[0].mesh, bodies[0].mesh.node_set(top), axis,
                                   w_master + 1e-12, w_master + 1e-12);
    master_set = bodies[1].mesh.node_set(bottom);

    PairSide slave{&bodies[0].mesh, &system.dof_maps[0], system.dof_offsets[0]};
    PairSide master{&bodies[1].mesh, &system.dof_maps[1], system.dof_offsets[1]};
    PairingRows rows =
        build_pairing_node_to_node(slave, slave_set, master, master_set, axis, +1);
    rows.d = parabolic_gap_profile(prm.radius, rows.slave_positions, {0.0, 0.0, 0.0}, axis,
                                   prm.g_min);

    out.problem.stiffness = std::move(system.stiffness);
    out.problem.pairing = pairing_matrix(rows, out.problem.stiffness.n);
    out.problem.gaps = rows.d;
    out.problem.external_load = std::move(system.load);
    std::ostringstream desc;
    desc << "hertz-type contact, dim=" << prm.dim << ", refinement=" << refinement
         << ", R=" << format_double(prm.radius) << " m, u_D=" << format_double(prm.u_d)
         << " m, parabolic initial gap r^2/(2R) + " << format_double(prm.g_min);
    out.problem.description = desc.str();

    out.geometry.pair_radius.reserve(rows.rows());
    for (const auto& pos : rows.slave_positions) {
        double r2 = 0.0;
        for (int c = 0; c < 3; ++c)
            if (c != axis) r2 += pos[c] * pos[c];
        out.geometry.pair_radius.push_back(std::sqrt(r2));
    }
    out.geometry.pair_area = tributary_measures(bodies[0].mesh, rows.slave_nodes);
    out.geometry.body_dof_offsets = system.dof_offsets;
    for (const DofMap& dm : system.dof_maps) out.geometry.body_dof_counts.push_back(dm.n_free);
    return out;
}

MultibodyResult gen_multibody(const MultibodyParams& prm) {
    if (prm.n_bodies < 1) throw std::invalid_argument("gen_multibody: need at least one body");
    const int ne = std::max(2, static_cast<int>(std::lround(prm.body_elems * prm.scale)));
    const double w = prm.body_width;
    const int nb = prm.n_bodies;

    std::vector<BodySpec> bodies(1 + nb);
    // Base block spans all bodies.
    const int ny_base = std::max(3, ne / 2);
    bodies[0].mesh =
        tensor_mesh(uniform_coords(0.0, nb * w, nb * ne), uniform_coords(-prm.base_height, 0.0, ny_base));
    bodies[0].material = {prm.e_base, prm.nu};
    bodies[0].dirichlet = {{"ymin", -1, 0.0}};

    const int ny_body = std::max(3, static_cast<int>(std::lround(ne * prm.body_height / w)));
    for (int j = 0; j < nb; ++j) {
        BodySpec& b = bodies[1 + j];
        b.mesh = tensor_mesh(uniform_coords(j * w, (j + 1) * w, ne),
                             uniform_coords(0.0, prm.body_height, ny_body));
        b.material = {prm.e_body, prm.nu};
        b.dirichlet = {{"ymax", 0, 0.0}, {"ymax", 1, -prm.u_d}};
    }

    MultiBodyAssembly system = assemble_bodies(bodies);

    MultibodyResult out;
    std::vector<Triplet> entries;
    Vector d;
    std::vector<std::array<double, 3>> positions;
    auto append_rows = [&](PairingRows&& rows, const std::string& kind, int a, int b) {
        PairGroup g;
        g.kind = kind;
        g.body_a = a;
        g.body_b = b;
        g.first_row = static_cast<int>(d.size());
        g.n_rows = rows.rows();
        const int base_row = g.first_row;
        for (Triplet t : rows.entries) {
            t.row += base_row;
            entries.push_back(t);
        }
        d.insert(d.end(), rows.d.begin(), rows.d.end());
        positions.insert(positions.end(), rows.slave_positions.begin(),
                         rows.slave_positions.end());
        out.groups.push_back(std::move(g));
    };

    // Body-to-base pairs: parabolic profile centered under each body.
    for (int j = 0; j < nb; ++j) {
        const double lo = j * w - 1e-12, hi = (j + 1) * w + 1e-12;
        std::vector<int> base_nodes;
        for (int n : bodies[0].mesh.node_set("ymax")) {
            const double x = bodies[0].mesh.nodes[n][0];
            if (x >= lo && x <= hi) base_nodes.push_back(n);
        }
        PairSide slave{&bodies[0].mesh, &system.dof_maps[0], system.dof_offsets[0]};
        PairSide master{&bodies[1 + j].mesh, &system.dof_maps[1 + j], system.dof_offsets[1 + j]};
        PairingRows rows = build_pairing_node_to_node(
            slave, base_nodes, master, bodies[1 + j].mesh.node_set("ymin"), 1, +1);
        rows.d = parabolic_gap_profile(prm.radius, rows.slave_positions,
                                       {(j + 0.5) * w, 0.0, 0.0}, 1, prm.g_min_base);
        append_rows(std::move(rows), "base", j, j);
    }

    // Neighbor pairs: zero initial gap, x-normal, top (Dirichlet) corners excluded.
    for (int j = 0; j + 1 < nb; ++j) {
        const auto& mesh_a = bodies[1 + j].mesh;
        const auto& mesh_b = bodies[2 + j].mesh;
        std::vector<int> left =
            nodes_below(mesh_a, mesh_a.node_set("xmax"), 1, prm.body_height - 1e-12);
        std::vector<int> right =
            nodes_below(mesh_b, mesh_b.node_set("xmin"), 1, prm.body_height - 1e-12);
        PairSide slave{&mesh_a, &system.dof_maps[1 + j], system.dof_offsets[1 + j]};
        PairSide master{&mesh_b, &system.dof_maps[2 + j], system.dof_offsets[2 + j]};
        append_rows(build_pairing_node_to_node(slave, left, master, right, 0, +1), "neighbor", j,
                    j + 1);
    }

    out.problem.stiffness = std::move(system.stiffness);
    out.problem.pairing =
        SparseRect::from_triplets(static_cast<int>(d.size()), out.problem.stiffness.n, entries);
    out.problem.gaps = std::move(d);
    out.problem.external_load = std::move(system.load);
    out.problem.description = "multibody row: " + std::to_string(nb) +
                              " deformable bodies on a base block, parabolic base gaps, zero "
                              "neighbor gaps";
    out.body_dof_offsets = system.dof_offsets;
    for (std::size_t b = 0; b < system.dof_maps.size(); ++b)
        out.body_dof_counts.push_back(system.dof_maps[b].n_free);
    out.pair_positions = std::move(positions);
    return out;
}

ContactProblem gen_random_small(const RandomSmallParams& prm) {
    if (prm.n_dofs < 2 || prm.n_pairs < 1)
        throw std::invalid_argument("gen_random_small: need n_dofs >= 2, n_pairs >= 1");
    if (prm.n_pairs > 20)
        throw std::invalid_argument("gen_random_small: pair count limited by the enumeration oracle");
    std::mt19937_64 rng(prm.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    const int n = prm.n_dofs, np = prm.n_pairs;
    for (int attempt = 0; attempt < 256; ++attempt) {
        // K = Q^T diag(1..4) Q with Q from Gram-Schmidt on a Gaussian draw.
        std::vector<Vector> q(n, Vector(n));
        for (auto& row : q)
            for (double& v : row) v = gauss(rng);
        bool degenerate = false;
        for (int i = 0; i < n && !degenerate; ++i) {
            for (int j = 0; j < i; ++j) {
                const double pr = dot(q[i], q[j]);
                axpy(-pr, q[j], q[i]);
            }
            const double nn = norm2(q[i]);
            if (nn < 1e-8) degenerate = true;
            else
                for (double& v : q[i]) v /= nn;
        }
        if (degenerate) continue;
        std::vector<Triplet> kt;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= i; ++j) {
                double s = 0.0;
                for (int m = 0; m < n; ++m) {
                    const double eig = 1.0 + 3.0 * m / std::max(1, n - 1);
                    s += q[m][i] * eig * q[m][j];
                }
                kt.push_back({i, j, s});
                if (i != j) kt.push_back({j, i, s});
            }

        std::vector<Triplet> bt;
        for (int r = 0; r < np; ++r) {
            std::vector<int> cols(n);
            for (int c = 0; c < n; ++c) cols[c] = c;
            std::shuffle(cols.begin(), cols.end(), rng);
            const int nnz = 2 + static_cast<int>(unif(rng) * 2.0);
            for (int k = 0; k < std::min(nnz, n); ++k) {
                const double v = (unif(rng) < 0.5 ? -1.0 : 1.0) * (0.5 + unif(rng));
                bt.push_back({r, cols[k], v});
            }
        }

        ContactProblem p;
        p.stiffness = SparseSym::from_triplets(n, std::move(kt));
        p.pairing = SparseRect::from_triplets(np, n, std::move(bt));
        p.gaps.resize(np);
        for (double& v : p.gaps) v = -0.2 + 0.9 * unif(rng);
        p.external_load.resize(n);
        for (double& v : p.external_load) v = gauss(rng);
        p.description = "random small instance, seed " + std::to_string(prm.seed);

        // Keep only robustly nondegenerate instances.
        OracleSolution sol;
        try {
            sol = brute_force_kkt(p);
        } catch (const NoKKTPoint&) {
            continue;
        } catch (const SingularMatrix&) {
            continue;
        }
        if (sol.ambiguous) continue;
        if (sol.active_set.empty()) continue;  // want actual contact
        const double lam_scale = 1.0 + norm_inf(sol.multiplier);
        bool margins_ok = true;
        const Vector bu = spmv(p.pairing, sol.displacement);
        for (int j = 0; j < np; ++j) {
            const double gap = bu[j] - p.gaps[j];
            const bool active =
                std::binary_search(sol.active_set.begin(), sol.active_set.end(), j);
            if (active && sol.multiplier[j] < 1e-5 * lam_scale) margins_ok = false;
            if (!active && gap > -1e-6 * (1.0 + std::fabs(p.gaps[j]))) margins_ok = false;
        }
        if (!margins_ok) continue;
        return p;
    }
    throw NoKKTPoint("gen_random_small: no acceptable instance after 256 draws");
}

} // namespace contactsplit
