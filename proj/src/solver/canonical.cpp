#include "polymatch/solver/canonical.hpp"

#include <cmath>

namespace polymatch {

std::vector<double> Canonical::scatter(const Eigen::VectorXd &x) const
{
    std::vector<double> values = model_values;
    for (size_t r = 0; r < free_vars.size(); ++r)
        values[free_vars[r]] = x(static_cast<int>(r));
    return values;
}

Canonical canonicalize(const ConicModel &model,
                       const std::map<int, double> &fixings)
{
    const int n_model = model.var_count();
    Canonical out;
    out.model_values.assign(n_model, 0.0);
    out.is_fixed.assign(n_model, false);

    for (int var = 0; var < n_model; ++var) {
        if (model.lb[var] == model.ub[var]) {
            out.is_fixed[var] = true;
            out.model_values[var] = model.lb[var];
        }
    }
    for (const auto &[var, value] : fixings) {
        if (var < 0 || var >= n_model)
            throw Error("canonicalize: fixing refers to unknown variable");
        if (out.is_fixed[var] && out.model_values[var] != value) {
            out.feasible = false;
            out.infeasibility = "conflicting fixings on variable " +
                                std::to_string(var);
            return out;
        }
        out.is_fixed[var] = true;
        out.model_values[var] = value;
    }

    std::vector<int> reduced(n_model, -1);
    for (int var = 0; var < n_model; ++var)
        if (!out.is_fixed[var]) {
            reduced[var] = static_cast<int>(out.free_vars.size());
            out.free_vars.push_back(var);
        }
    const int n = static_cast<int>(out.free_vars.size());

    // Split a row into free-variable triplets and the fixed contribution.
    auto split = [&](const std::vector<LinearTerm> &terms, int row,
                     std::vector<Eigen::Triplet<double>> &sink) {
        double fixed_part = 0.0;
        for (const auto &term : terms) {
            if (out.is_fixed[term.var])
                fixed_part += term.coeff * out.model_values[term.var];
            else
                sink.emplace_back(row, reduced[term.var], term.coeff);
        }
        return fixed_part;
    };

    std::vector<Eigen::Triplet<double>> a_triplets;
    std::vector<double> b_values;
    std::vector<Eigen::Triplet<double>> g_triplets;
    std::vector<double> h_values;

    constexpr double kRowTol = 1e-9;
    for (const auto &block : model.blocks) {
        for (const auto &row : block.equalities) {
            std::vector<Eigen::Triplet<double>> local;
            const double fixed_part =
                split(row.terms, static_cast<int>(b_values.size()), local);
            if (local.empty()) {
                if (std::abs(fixed_part - row.rhs) > kRowTol) {
                    out.feasible = false;
                    out.infeasibility =
                        "fixed " + to_string(block.origin) +
                        " equality violated by " +
                        std::to_string(std::abs(fixed_part - row.rhs));
                    return out;
                }
                continue;
            }
            a_triplets.insert(a_triplets.end(), local.begin(), local.end());
            b_values.push_back(row.rhs - fixed_part);
        }
        for (const auto &row : block.inequalities) {
            std::vector<Eigen::Triplet<double>> local;
            const double fixed_part =
                split(row.terms, static_cast<int>(h_values.size()), local);
            if (local.empty()) {
                if (fixed_part > row.rhs + kRowTol) {
                    out.feasible = false;
                    out.infeasibility =
                        "fixed " + to_string(block.origin) +
                        " inequality violated by " +
                        std::to_string(fixed_part - row.rhs);
                    return out;
                }
                continue;
            }
            g_triplets.insert(g_triplets.end(), local.begin(), local.end());
            h_values.push_back(row.rhs - fixed_part);
        }
    }

    // Finite bounds of the free variables become orthant rows.
    for (int r = 0; r < n; ++r) {
        const int var = out.free_vars[r];
        if (std::isfinite(model.ub[var])) {
            g_triplets.emplace_back(static_cast<int>(h_values.size()), r,
                                    1.0);
            h_values.push_back(model.ub[var]);
        }
        if (std::isfinite(model.lb[var])) {
            g_triplets.emplace_back(static_cast<int>(h_values.size()), r,
                                    -1.0);
            h_values.push_back(-model.lb[var]);
        }
    }

    SocpProblem &prob = out.problem;
    prob.lp_dim = static_cast<int>(h_values.size());

    for (const auto &cone : model.cones) {
        prob.soc_dims.push_back(static_cast<int>(cone.rows.size()) + 1);
        // s0 = epigraph
        if (out.is_fixed[cone.epigraph]) {
            h_values.push_back(out.model_values[cone.epigraph]);
        } else {
            g_triplets.emplace_back(static_cast<int>(h_values.size()),
                                    reduced[cone.epigraph], -1.0);
            h_values.push_back(0.0);
        }
        for (const auto &expr : cone.rows) {
            std::vector<Eigen::Triplet<double>> local;
            const double fixed_part =
                split(expr.terms, static_cast<int>(h_values.size()), local);
            for (auto &t : local)
                g_triplets.emplace_back(t.row(), t.col(), -t.value());
            h_values.push_back(expr.constant + fixed_part);
        }
    }

    prob.A.resize(static_cast<int>(b_values.size()), n);
    prob.A.setFromTriplets(a_triplets.begin(), a_triplets.end());
    prob.b = Eigen::Map<Eigen::VectorXd>(b_values.data(), b_values.size());
    prob.G.resize(static_cast<int>(h_values.size()), n);
    prob.G.setFromTriplets(g_triplets.begin(), g_triplets.end());
    prob.h = Eigen::Map<Eigen::VectorXd>(h_values.data(), h_values.size());

    prob.c = Eigen::VectorXd::Zero(n);
    prob.objective_offset = 0.0;
    for (const auto &term : model.objective) {
        if (out.is_fixed[term.var])
            prob.objective_offset +=
                term.coeff * out.model_values[term.var];
        else
            prob.c(reduced[term.var]) += term.coeff;
    }
    return out;
}

} // namespace polymatch
