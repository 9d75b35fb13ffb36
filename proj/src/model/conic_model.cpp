#include "polymatch/model/conic_model.hpp"

#include "polymatch/geometry/shape.hpp"
#include "polymatch/model/sos2.hpp"

#include <cmath>
#include <nlohmann/json.hpp>
#include <set>

namespace polymatch {

int VariableLayout::pair_index(int i, int j) const
{
    for (size_t n = 0; n < p_pairs.size(); ++n)
        if (p_pairs[n].first == i && p_pairs[n].second == j)
            return static_cast<int>(n);
    return -1;
}

int ConicModel::add_group(const std::string &name, std::vector<int> shape,
                          VarKind kind, double lower, double upper)
{
    int count = 1;
    for (int s : shape)
        count *= s;
    VarGroup group{name, std::move(shape), var_count(), count, kind, lower,
                   upper};
    const int start = group.start;
    groups.push_back(std::move(group));
    lb.insert(lb.end(), count, lower);
    ub.insert(ub.end(), count, upper);
    kinds.insert(kinds.end(), count, kind);
    return start;
}

void ConicModel::fix_var(int var, double value)
{
    lb[var] = value;
    ub[var] = value;
    kinds[var] = VarKind::Continuous;
}

LinearConstraintBlock &ConicModel::block(ConstraintOrigin origin)
{
    for (auto &b : blocks)
        if (b.origin == origin)
            return b;
    blocks.push_back(LinearConstraintBlock{origin, {}, {}});
    return blocks.back();
}

std::vector<int> ConicModel::binary_order() const
{
    std::vector<int> order;
    std::set<int> seen;
    for (const auto &group : sos2_groups)
        for (int bin : group.binaries)
            if (kinds[bin] == VarKind::Binary && seen.insert(bin).second)
                order.push_back(bin);
    for (int var = 0; var < var_count(); ++var)
        if (kinds[var] == VarKind::Binary && seen.insert(var).second)
            order.push_back(var);
    return order;
}

ModelCensus ConicModel::census() const
{
    ModelCensus census;
    census.variables = var_count();
    for (int var = 0; var < var_count(); ++var)
        if (kinds[var] == VarKind::Binary)
            ++census.binaries_total;

    std::set<int> rotation_bins;
    for (const auto &group : sos2_groups)
        rotation_bins.insert(group.binaries.begin(), group.binaries.end());
    for (int var : rotation_bins)
        if (kinds[var] == VarKind::Binary)
            ++census.binaries_rotation;
    for (int var : layout.p_vars) {
        if (kinds[var] == VarKind::Binary)
            ++census.binaries_p;
        else if (lb[var] == ub[var])
            ++census.fixed_p;
    }
    if (layout.delta_start >= 0)
        for (int i = 0; i < layout.u; ++i)
            if (kinds[layout.delta(i)] == VarKind::Binary)
                ++census.binaries_outlier;

    for (const auto &block : blocks) {
        census.equality_rows += static_cast<int>(block.equalities.size());
        census.inequality_rows += static_cast<int>(block.inequalities.size());
    }
    census.cones = static_cast<int>(cones.size());
    census.sos2_groups = static_cast<int>(sos2_groups.size());
    return census;
}

void ConicModel::check_structure() const
{
    auto check_var = [&](int var, const std::string &where) {
        if (var < 0 || var >= var_count())
            throw Error("model: reference to undeclared variable in " +
                        where);
    };
    auto check_terms = [&](const std::vector<LinearTerm> &terms,
                           const std::string &where) {
        for (const auto &term : terms) {
            check_var(term.var, where);
            if (!std::isfinite(term.coeff))
                throw Error("model: non-finite coefficient in " + where);
        }
    };

    for (const auto &block : blocks) {
        const std::string where = to_string(block.origin) + " rows";
        for (const auto &row : block.equalities) {
            check_terms(row.terms, where);
            if (!std::isfinite(row.rhs))
                throw Error("model: non-finite rhs in " + where);
        }
        for (const auto &row : block.inequalities) {
            check_terms(row.terms, where);
            if (!std::isfinite(row.rhs))
                throw Error("model: non-finite rhs in " + where);
        }
    }
    for (const auto &cone : cones) {
        check_var(cone.epigraph, "cone " + cone.name);
        for (const auto &row : cone.rows) {
            check_terms(row.terms, "cone " + cone.name);
            if (!std::isfinite(row.constant))
                throw Error("model: non-finite constant in cone " +
                            cone.name);
        }
    }
    for (int var = 0; var < var_count(); ++var)
        if (kinds[var] == VarKind::Binary &&
            (lb[var] != 0.0 || ub[var] != 1.0))
            throw Error("model: binary variable without {0,1} bounds");
    for (const auto &group : sos2_groups) {
        const int bins = static_cast<int>(group.lambdas.size()) - 1;
        if (static_cast<int>(group.binaries.size()) != gray_bits(bins))
            throw Error("model: sos2 group of size " +
                        std::to_string(bins + 1) + " linked to " +
                        std::to_string(group.binaries.size()) + " binaries");
        for (int var : group.lambdas)
            check_var(var, "sos2 lambdas");
        for (int var : group.binaries)
            check_var(var, "sos2 binaries");
    }
    check_terms(objective, "objective");
}

std::string ConicModel::to_json() const
{
    nlohmann::json out;
    out["format"] = "polymatch-conic-model";
    out["version"] = 1;

    nlohmann::json vars = nlohmann::json::array();
    for (const auto &group : groups) {
        nlohmann::json entry;
        entry["name"] = group.name;
        entry["shape"] = group.shape;
        entry["start"] = group.start;
        entry["count"] = group.count;
        entry["kind"] =
            group.kind == VarKind::Binary ? "binary" : "continuous";
        nlohmann::json bounds = nlohmann::json::array();
        for (int k = 0; k < group.count; ++k) {
            const int var = group.start + k;
            nlohmann::json pair = nlohmann::json::array();
            pair.push_back(std::isfinite(lb[var]) ? nlohmann::json(lb[var])
                                                  : nlohmann::json());
            pair.push_back(std::isfinite(ub[var]) ? nlohmann::json(ub[var])
                                                  : nlohmann::json());
            bounds.push_back(std::move(pair));
        }
        entry["bounds"] = std::move(bounds);
        vars.push_back(std::move(entry));
    }
    out["variables"] = std::move(vars);

    auto rows_to_json = [](const std::vector<LinearRow> &rows) {
        nlohmann::json list = nlohmann::json::array();
        for (const auto &row : rows) {
            nlohmann::json entry;
            nlohmann::json triplets = nlohmann::json::array();
            for (const auto &term : row.terms)
                triplets.push_back({term.var, term.coeff});
            entry["terms"] = std::move(triplets);
            entry["rhs"] = row.rhs;
            list.push_back(std::move(entry));
        }
        return list;
    };

    nlohmann::json blocks_json = nlohmann::json::array();
    for (const auto &block : blocks) {
        nlohmann::json entry;
        entry["origin"] = to_string(block.origin);
        entry["equalities"] = rows_to_json(block.equalities);
        entry["inequalities"] = rows_to_json(block.inequalities);
        blocks_json.push_back(std::move(entry));
    }
    out["linear_blocks"] = std::move(blocks_json);

    nlohmann::json cones_json = nlohmann::json::array();
    for (const auto &cone : cones) {
        nlohmann::json entry;
        entry["name"] = cone.name;
        entry["epigraph"] = cone.epigraph;
        nlohmann::json rows = nlohmann::json::array();
        for (const auto &expr : cone.rows) {
            nlohmann::json row;
            nlohmann::json triplets = nlohmann::json::array();
            for (const auto &term : expr.terms)
                triplets.push_back({term.var, term.coeff});
            row["terms"] = std::move(triplets);
            row["constant"] = expr.constant;
            rows.push_back(std::move(row));
        }
        entry["rows"] = std::move(rows);
        cones_json.push_back(std::move(entry));
    }
    out["cones"] = std::move(cones_json);

    nlohmann::json sos2_json = nlohmann::json::array();
    for (const auto &group : sos2_groups) {
        nlohmann::json entry;
        entry["entry_var"] = group.entry_var;
        entry["lambdas"] = group.lambdas;
        entry["binaries"] = group.binaries;
        entry["grid"] = group.grid;
        sos2_json.push_back(std::move(entry));
    }
    out["sos2_groups"] = std::move(sos2_json);

    nlohmann::json objective_json = nlohmann::json::array();
    for (const auto &term : objective)
        objective_json.push_back({term.var, term.coeff});
    out["objective"] = std::move(objective_json);

    return out.dump(2);
}

} // namespace polymatch
