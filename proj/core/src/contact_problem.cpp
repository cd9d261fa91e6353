#include "contactsplit/contact_problem.hpp"
#include "contactsplit/errors.hpp"
#include "contactsplit/factorization.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace contactsplit {

ValidationReport validate(const ContactProblem& p) {
    ValidationReport rep;
    const int n = p.stiffness.n;
    const int np = p.pairing.rows;
    if (p.pairing.cols != n)
        rep.errors.push_back("pairing has " + std::to_string(p.pairing.cols) +
                             " columns, stiffness dimension is " + std::to_string(n));
    if (static_cast<int>(p.gaps.size()) != np)
        rep.errors.push_back("gap vector length " + std::to_string(p.gaps.size()) +
                             " does not match pair count " + std::to_string(np));
    if (static_cast<int>(p.external_load.size()) != n)
        rep.errors.push_back("load vector length " + std::to_string(p.external_load.size()) +
                             " does not match dof count " + std::to_string(n));
    if (!p.pair_labels.empty() && static_cast<int>(p.pair_labels.size()) != np)
        rep.errors.push_back("pair label count does not match pair count");
    for (int i = 0; i < np; ++i)
        if (p.pairing.row_empty(i))
            rep.errors.push_back("pairing row " + std::to_string(i) +
                                 " is all-zero (constraint references no dof)");
    try {
        factorize(p.stiffness);
    } catch (const SingularMatrix& e) {
        rep.errors.push_back(std::string("stiffness not factorizable: ") + e.what());
    }
    for (std::size_t j = 0; j < p.gaps.size(); ++j)
        if (p.gaps[j] < 0.0) {
            rep.warnings.push_back("negative initial gap (overlap) at pair " + std::to_string(j));
            break;
        }
    return rep;
}

KktResidual residual_kkt(const ContactProblem& p, const Vector& u, const Vector& lambda) {
    if (static_cast<int>(u.size()) != p.num_dofs())
        throw DimensionMismatch("residual_kkt: displacement length mismatch");
    if (static_cast<int>(lambda.size()) != p.num_pairs())
        throw DimensionMismatch("residual_kkt: multiplier length mismatch");
    Vector r = spmv(p.stiffness, u);
    const Vector btl = spmv(p.pairing, lambda, /*transpose=*/true);
    for (int i = 0; i < p.num_dofs(); ++i) r[i] += btl[i] - p.external_load[i];
    const double fn = norm2(p.external_load);
    KktResidual out;
    out.equilibrium_res = fn > 0.0 ? norm2(r) / fn : norm2(r);
    const Vector bu = spmv(p.pairing, u);
    out.penetration_max = 0.0;
    out.negativity_max = 0.0;
    out.complementarity_max = 0.0;
    for (int j = 0; j < p.num_pairs(); ++j) {
        const double gap = bu[j] - p.gaps[j];
        out.penetration_max = std::max(out.penetration_max, gap);
        out.negativity_max = std::max(out.negativity_max, -lambda[j]);
        out.complementarity_max = std::max(out.complementarity_max, std::fabs(lambda[j] * gap));
    }
    return out;
}

void write_bundle(const std::string& dir, const ContactProblem& p) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    write_matrix_market(dir + "/K.mtx", p.stiffness);
    write_matrix_market(dir + "/B.mtx", p.pairing);
    write_vec(dir + "/D.vec", p.gaps);
    write_vec(dir + "/F.vec", p.external_load);
    std::ofstream meta(dir + "/meta.txt");
    if (!meta) throw IoError("cannot open for writing: " + dir + "/meta.txt");
    meta << "n_dofs = " << p.num_dofs() << '\n';
    meta << "n_pairs = " << p.num_pairs() << '\n';
    std::string desc = p.description;
    for (char& c : desc)
        if (c == '\n') c = ' ';
    meta << "description = " << desc << '\n';
    for (std::size_t j = 0; j < p.pair_labels.size(); ++j)
        meta << "pair_label_" << j << " = " << p.pair_labels[j] << '\n';
    if (!meta) throw IoError("write failed: " + dir + "/meta.txt");
}

ContactProblem read_bundle(const std::string& dir) {
    ContactProblem p;
    p.stiffness = read_matrix_market_sym(dir + "/K.mtx");
    p.pairing = read_matrix_market_rect(dir + "/B.mtx");
    p.gaps = read_vec(dir + "/D.vec");
    p.external_load = read_vec(dir + "/F.vec");
    std::ifstream meta(dir + "/meta.txt");
    if (!meta) throw IoError("cannot open: " + dir + "/meta.txt");
    std::string line;
    int n_dofs = -1, n_pairs = -1;
    std::vector<std::pair<std::size_t, std::string>> labels;
    while (std::getline(meta, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        auto trim = [](std::string& s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t\r");
            s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
        };
        trim(key);
        trim(value);
        if (key == "n_dofs") n_dofs = std::stoi(value);
        else if (key == "n_pairs") n_pairs = std::stoi(value);
        else if (key == "description") p.description = value;
        else if (key.rfind("pair_label_", 0) == 0)
            labels.emplace_back(std::stoul(key.substr(11)), value);
    }
    if (n_dofs >= 0 && n_dofs != p.num_dofs())
        throw IoError("bundle meta n_dofs disagrees with K.mtx in " + dir);
    if (n_pairs >= 0 && n_pairs != p.num_pairs())
        throw IoError("bundle meta n_pairs disagrees with B.mtx in " + dir);
    if (!labels.empty()) {
        p.pair_labels.assign(p.num_pairs(), "");
        for (auto& [idx, text] : labels)
            if (idx < p.pair_labels.size()) p.pair_labels[idx] = text;
    }
    return p;
}

} // namespace contactsplit
