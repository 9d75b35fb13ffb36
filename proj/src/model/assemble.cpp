#include "polymatch/model/assemble.hpp"

#include "polymatch/deformation/deformation.hpp"
#include "polymatch/model/sos2.hpp"

#include <cmath>

namespace polymatch {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Bound on the violation of any in-cell product envelope over the full
// [-1,1]^2 box; one unit of Gray-code mismatch deactivates a row.
constexpr double kEnvelopeBigM = 4.0;

void register_rotation_vars(ConicModel &model, int bins)
{
    auto &layout = model.layout;
    layout.bins = bins;
    const int bits = gray_bits(bins);
    layout.rotation_start =
        model.add_group("R", {3, 3}, VarKind::Continuous, -1.0, 1.0);
    layout.lambda_start = model.add_group("lambda", {6, bins + 1},
                                          VarKind::Continuous, 0.0, 1.0);
    layout.rot_binary_start =
        model.add_group("rot_bits", {6, bits}, VarKind::Binary, 0.0, 1.0);
    layout.product_start =
        model.add_group("W", {3, 3}, VarKind::Continuous, -1.0, 1.0);
}

// Entry g of the sos2 layout is R(g / 3, g % 3) for g in 0..5.
void build_so3_rows(ConicModel &model)
{
    const auto &layout = model.layout;
    const int bins = layout.bins;
    const int bits = gray_bits(bins);
    const auto grid = sos2_grid(bins);

    auto &sos2 = model.block(ConstraintOrigin::Sos2);
    auto &rotation = model.block(ConstraintOrigin::Rotation);
    auto &envelopes = model.block(ConstraintOrigin::McCormick);

    for (int g = 0; g < 6; ++g) {
        const int entry = layout.rotation(g / 3, g % 3);

        Sos2Group group;
        group.entry_var = entry;
        group.grid = grid;
        for (int m = 0; m <= bins; ++m)
            group.lambdas.push_back(layout.lambda(g, m));
        for (int k = 0; k < bits; ++k)
            group.binaries.push_back(layout.rot_binary_start + g * bits + k);
        model.sos2_groups.push_back(group);

        // x = lambda' * phi
        LinearRow link;
        for (int m = 0; m <= bins; ++m)
            if (grid[m] != 0.0)
                link.terms.push_back({group.lambdas[m], grid[m]});
        link.terms.push_back({entry, -1.0});
        link.rhs = 0.0;
        sos2.equalities.push_back(std::move(link));

        // lambda sums to one
        LinearRow sum;
        for (int m = 0; m <= bins; ++m)
            sum.terms.push_back({group.lambdas[m], 1.0});
        sum.rhs = 1.0;
        sos2.equalities.push_back(std::move(sum));

        // Logarithmic support restriction: grid points incident only to
        // cells with bit k set need y_k = 1, and vice versa.
        for (int k = 0; k < bits; ++k) {
            LinearRow on;
            for (int m : sos2_points_with_bit(bins, k, true))
                on.terms.push_back({group.lambdas[m], 1.0});
            if (!on.terms.empty()) {
                on.terms.push_back({group.binaries[k], -1.0});
                on.rhs = 0.0;
                sos2.inequalities.push_back(std::move(on));
            }
            LinearRow off;
            for (int m : sos2_points_with_bit(bins, k, false))
                off.terms.push_back({group.lambdas[m], 1.0});
            if (!off.terms.empty()) {
                off.terms.push_back({group.binaries[k], 1.0});
                off.rhs = 1.0;
                sos2.inequalities.push_back(std::move(off));
            }
        }
    }

    // ||R_1||^2 = 1 and ||R_2||^2 = 1 through the interpolated squares.
    for (int r = 0; r < 2; ++r) {
        LinearRow norm;
        for (int c = 0; c < 3; ++c) {
            const int g = 3 * r + c;
            for (int m = 0; m <= bins; ++m)
                if (grid[m] != 0.0)
                    norm.terms.push_back(
                        {model.sos2_groups[g].lambdas[m], grid[m] * grid[m]});
        }
        norm.rhs = 1.0;
        rotation.equalities.push_back(std::move(norm));
    }

    // R_1 . R_2 = 0
    {
        LinearRow dot;
        for (int i = 0; i < 3; ++i)
            dot.terms.push_back({layout.product(i, i), 1.0});
        dot.rhs = 0.0;
        rotation.equalities.push_back(std::move(dot));
    }

    // R_3 = R_1 x R_2 through the product auxiliaries.
    {
        const int cross[3][2][2] = {
            {{1, 2}, {2, 1}}, {{2, 0}, {0, 2}}, {{0, 1}, {1, 0}}};
        for (int c = 0; c < 3; ++c) {
            LinearRow row;
            row.terms.push_back({layout.rotation(2, c), 1.0});
            row.terms.push_back(
                {layout.product(cross[c][0][0], cross[c][0][1]), -1.0});
            row.terms.push_back(
                {layout.product(cross[c][1][0], cross[c][1][1]), 1.0});
            row.rhs = 0.0;
            rotation.equalities.push_back(std::move(row));
        }
    }

    // In-cell product envelopes, switched by the Gray codes of both
    // factors' cells. One mismatching bit releases a row by kEnvelopeBigM.
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const int w = layout.product(i, j);
            const int x = layout.rotation(0, i);
            const int y = layout.rotation(1, j);
            const auto &bits_x = model.sos2_groups[i].binaries;
            const auto &bits_y = model.sos2_groups[3 + j].binaries;
            for (int a = 0; a < bins; ++a) {
                for (int b = 0; b < bins; ++b) {
                    // Mismatch count: sum of flipped bits of both codes.
                    std::vector<LinearTerm> slack;
                    double slack_constant = 0.0;
                    auto add_mismatch = [&](const std::vector<int> &vars,
                                            unsigned code) {
                        for (size_t k = 0; k < vars.size(); ++k) {
                            if ((code >> k) & 1u) {
                                slack.push_back(
                                    {vars[k], -kEnvelopeBigM});
                                slack_constant += kEnvelopeBigM;
                            } else {
                                slack.push_back({vars[k], kEnvelopeBigM});
                            }
                        }
                    };
                    add_mismatch(bits_x, gray_code(a));
                    add_mismatch(bits_y, gray_code(b));

                    const double xl = grid[a], xu = grid[a + 1];
                    const double yl = grid[b], yu = grid[b + 1];

                    auto emit = [&](double cx, double cy, double sign) {
                        // sign=+1: w >= cx*y + cy*x - cx*cy - M*s
                        // sign=-1: w <= cx*y + cy*x - cx*cy + M*s
                        LinearRow row;
                        row.terms.push_back({y, sign * cx});
                        row.terms.push_back({x, sign * cy});
                        row.terms.push_back({w, -sign});
                        for (const auto &term : slack)
                            row.terms.push_back({term.var, -term.coeff});
                        row.rhs = sign * cx * cy + slack_constant;
                        envelopes.inequalities.push_back(std::move(row));
                    };
                    emit(xl, yl, 1.0);
                    emit(xu, yu, 1.0);
                    emit(xu, yl, -1.0);
                    emit(xl, yu, -1.0);
                }
            }
        }
    }
}

struct Builder {
    const AssembleInputs &in;
    ConicModel model;
    int u = 0, v = 0, faces = 0;
    MatchMask mask;
    std::vector<int> designated_face; // lowest-index adjacent face per point
    Eigen::MatrixX3d centroids;

    explicit Builder(const AssembleInputs &inputs) : in(inputs)
    {
        in.config.validate();
        u = static_cast<int>(in.control_points.size());
        v = static_cast<int>(in.polyhedra.size());
        faces = in.source.face_count();
        if (u < 1 || v < 1)
            throw Error("assemble: need at least one control point and one "
                        "polyhedron");

        if (in.config.mask) {
            mask = *in.config.mask;
            if (mask.rows() != u || mask.cols() != v)
                throw Error("assemble: mask shape does not match u x v");
        } else {
            mask.allowed.setConstant(u, v, true);
        }
        for (int i = 0; i < u; ++i)
            if (!mask.allowed.row(i).any())
                throw Error("assemble: control point " + std::to_string(i) +
                            " has no allowed matches (infeasible mask)");

        centroids = triangle_centroids(in.source);
        for (int i = 0; i < u; ++i) {
            const auto adjacent =
                adjacent_faces(in.source, in.control_points[i]);
            if (adjacent.empty())
                throw Error("assemble: control point " + std::to_string(i) +
                            " (vertex " +
                            std::to_string(in.control_points[i]) +
                            ") has no adjacent face");
            designated_face.push_back(adjacent.front());
        }
    }

    void register_vars()
    {
        auto &layout = model.layout;
        layout.u = u;
        layout.v = v;
        layout.faces = faces;
        for (const auto &poly : in.polyhedra)
            layout.polyhedron_sizes.push_back(poly.size());

        for (int i = 0; i < u; ++i)
            for (int j = 0; j < v; ++j)
                if (mask.allowed(i, j))
                    layout.p_pairs.emplace_back(i, j);

        const int p_start =
            model.add_group("P", {static_cast<int>(layout.p_pairs.size())},
                            VarKind::Binary, 0.0, 1.0);
        for (size_t n = 0; n < layout.p_pairs.size(); ++n)
            layout.p_vars.push_back(p_start + static_cast<int>(n));

        // Rows with a single allowed column are decided before the solver
        // ever sees them.
        for (int i = 0; i < u; ++i) {
            int allowed = 0, last = -1;
            for (size_t n = 0; n < layout.p_pairs.size(); ++n)
                if (layout.p_pairs[n].first == i) {
                    ++allowed;
                    last = static_cast<int>(n);
                }
            if (allowed == 1)
                model.fix_var(layout.p_vars[last], 1.0);
        }

        int alpha_total = 0;
        for (const auto &pair : layout.p_pairs) {
            layout.alpha_starts.push_back(alpha_total);
            const int d = in.polyhedra[pair.second].size();
            layout.alpha_sizes.push_back(d);
            alpha_total += d;
        }
        const int alpha_start = model.add_group(
            "alpha", {alpha_total}, VarKind::Continuous, 0.0, 1.0);
        for (auto &start : layout.alpha_starts)
            start += alpha_start;

        register_rotation_vars(model, in.config.bins);

        layout.linear_start = model.add_group(
            "T", {faces, 3, 3}, VarKind::Continuous, -in.config.transform_box,
            in.config.transform_box);
        layout.translation_start = model.add_group(
            "t", {faces, 3}, VarKind::Continuous, -in.config.transform_box,
            in.config.transform_box);

        if (in.config.n_out > 0) {
            layout.epsilon_start =
                model.add_group("eps", {u, 3}, VarKind::Continuous,
                                -in.config.big_m, in.config.big_m);
            layout.delta_start =
                model.add_group("delta", {u}, VarKind::Binary, 0.0, 1.0);
        }

        layout.s_corr =
            model.add_group("s_corr", {1}, VarKind::Continuous, 0.0, kInf);
        layout.s_rigid =
            model.add_group("s_rigid", {1}, VarKind::Continuous, 0.0, kInf);
        layout.s_smooth =
            model.add_group("s_smooth", {1}, VarKind::Continuous, 0.0, kInf);
    }

    TransformVarMap transform_vars() const
    {
        const VariableLayout &layout = model.layout;
        TransformVarMap vars;
        vars.rotation = [&layout](int r, int c) {
            return layout.rotation(r, c);
        };
        vars.linear = [&layout](int p, int r, int c) {
            return layout.linear(p, r, c);
        };
        vars.translation = [&layout](int p, int c) {
            return layout.translation(p, c);
        };
        return vars;
    }

    // tau_p(x)_k as an affine expression.
    AffineExpr transform_component(int face, const Eigen::RowVector3d &x,
                                   int k) const
    {
        const auto &layout = model.layout;
        const Eigen::RowVector3d centred = x - centroids.row(face);
        AffineExpr expr;
        for (int m = 0; m < 3; ++m) {
            if (centred(m) != 0.0) {
                expr.terms.push_back({layout.rotation(m, k), centred(m)});
                expr.terms.push_back({layout.linear(face, m, k), centred(m)});
            }
        }
        expr.terms.push_back({layout.translation(face, k), 1.0});
        expr.constant = centroids(face, k);
        return expr;
    }

    void correspondence_block()
    {
        auto &layout = model.layout;
        auto &matching = model.block(ConstraintOrigin::Matching);
        auto &gamma = model.block(ConstraintOrigin::Gamma);

        // P is row-stochastic over the allowed columns.
        for (int i = 0; i < u; ++i) {
            LinearRow row;
            for (size_t n = 0; n < layout.p_pairs.size(); ++n)
                if (layout.p_pairs[n].first == i)
                    row.terms.push_back({layout.p_vars[n], 1.0});
            row.rhs = 1.0;
            matching.equalities.push_back(std::move(row));
        }

        // alpha * 1_d = 1_u
        for (int i = 0; i < u; ++i) {
            LinearRow row;
            for (size_t n = 0; n < layout.p_pairs.size(); ++n)
                if (layout.p_pairs[n].first == i)
                    for (int l = 0; l < layout.alpha_sizes[n]; ++l)
                        row.terms.push_back(
                            {layout.alpha_starts[n] + l, 1.0});
            row.rhs = 1.0;
            gamma.equalities.push_back(std::move(row));
        }

        // alpha_ij * 1_dj <= P_ij
        for (size_t n = 0; n < layout.p_pairs.size(); ++n) {
            LinearRow row;
            for (int l = 0; l < layout.alpha_sizes[n]; ++l)
                row.terms.push_back({layout.alpha_starts[n] + l, 1.0});
            row.terms.push_back({layout.p_vars[n], -1.0});
            row.rhs = 0.0;
            gamma.inequalities.push_back(std::move(row));
        }

        // Soft-injectivity: column sums of alpha at most one, preventing
        // several control points from landing on the same polyhedron vertex.
        for (int j = 0; j < v; ++j) {
            const int d = in.polyhedra[j].size();
            for (int l = 0; l < d; ++l) {
                LinearRow row;
                for (size_t n = 0; n < layout.p_pairs.size(); ++n)
                    if (layout.p_pairs[n].second == j)
                        row.terms.push_back(
                            {layout.alpha_starts[n] + l, 1.0});
                if (row.terms.empty())
                    continue;
                row.rhs = 1.0;
                gamma.inequalities.push_back(std::move(row));
            }
        }

        // Correspondence cone: s_corr >= || tau(X_I) - alpha Z (+ eps) ||
        Cone cone;
        cone.name = "corr";
        cone.epigraph = layout.s_corr;
        for (int i = 0; i < u; ++i) {
            const Eigen::RowVector3d x =
                in.source.vertices.row(in.control_points[i]);
            for (int k = 0; k < 3; ++k) {
                AffineExpr expr =
                    transform_component(designated_face[i], x, k);
                for (size_t n = 0; n < layout.p_pairs.size(); ++n) {
                    if (layout.p_pairs[n].first != i)
                        continue;
                    const auto &poly = in.polyhedra[layout.p_pairs[n].second];
                    for (int l = 0; l < layout.alpha_sizes[n]; ++l)
                        expr.terms.push_back({layout.alpha_starts[n] + l,
                                              -poly.vertices(l, k)});
                }
                if (in.config.n_out > 0)
                    expr.terms.push_back({layout.epsilon(i, k), 1.0});
                cone.rows.push_back(std::move(expr));
            }
        }
        model.cones.push_back(std::move(cone));

        const double weight =
            in.config.lambda_corr / std::sqrt(3.0 * u);
        model.objective.push_back({layout.s_corr, weight});
    }

    void regularizer_cones()
    {
        auto &layout = model.layout;

        Cone rigid;
        rigid.name = "rigid";
        rigid.epigraph = layout.s_rigid;
        for (int p = 0; p < faces; ++p)
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c) {
                    AffineExpr expr;
                    expr.terms.push_back({layout.linear(p, r, c), 1.0});
                    rigid.rows.push_back(std::move(expr));
                }
        model.cones.push_back(std::move(rigid));
        model.objective.push_back(
            {layout.s_rigid,
             in.config.lambda_rigid / std::sqrt(9.0 * faces)});

        const auto terms = smoothness_terms(
            in.source, transform_vars(), in.config.smooth_both_orientations);
        Cone smooth;
        smooth.name = "smth";
        smooth.epigraph = layout.s_smooth;
        for (const auto &term : terms)
            for (int k = 0; k < 3; ++k) {
                AffineExpr expr = term.delta[k];
                for (auto &t : expr.terms)
                    t.coeff *= term.weight;
                expr.constant *= term.weight;
                smooth.rows.push_back(std::move(expr));
            }
        model.cones.push_back(std::move(smooth));
        const double element_count = std::max<size_t>(terms.size() * 3, 1);
        model.objective.push_back(
            {layout.s_smooth,
             in.config.lambda_smooth / std::sqrt(element_count)});
    }

    void consistency_block()
    {
        LinearConstraintBlock rows =
            consistency_constraints(in.source, transform_vars());
        model.block(ConstraintOrigin::Consistency) = std::move(rows);
    }

    void outlier_block()
    {
        if (in.config.n_out == 0)
            return;
        auto &layout = model.layout;
        auto &outlier = model.block(ConstraintOrigin::Outlier);
        if (in.config.n_out >= u)
            model.warnings.push_back(
                "n_out >= u: every control point may opt out");

        for (int i = 0; i < u; ++i)
            for (int k = 0; k < 3; ++k) {
                LinearRow upper;
                upper.terms.push_back({layout.epsilon(i, k), 1.0});
                upper.terms.push_back({layout.delta(i), -in.config.big_m});
                upper.rhs = 0.0;
                outlier.inequalities.push_back(std::move(upper));

                LinearRow lower;
                lower.terms.push_back({layout.epsilon(i, k), -1.0});
                lower.terms.push_back({layout.delta(i), -in.config.big_m});
                lower.rhs = 0.0;
                outlier.inequalities.push_back(std::move(lower));
            }

        LinearRow cardinality;
        for (int i = 0; i < u; ++i)
            cardinality.terms.push_back({layout.delta(i), 1.0});
        cardinality.rhs = in.config.n_out;
        outlier.inequalities.push_back(std::move(cardinality));
    }

    void injectivity_block()
    {
        if (!in.config.injective)
            return;
        if (u > v)
            throw Error("assemble: injective matching requires u <= v");
        auto &layout = model.layout;
        auto &block = model.block(ConstraintOrigin::Injectivity);
        for (int j = 0; j < v; ++j) {
            LinearRow row;
            for (size_t n = 0; n < layout.p_pairs.size(); ++n)
                if (layout.p_pairs[n].second == j)
                    row.terms.push_back({layout.p_vars[n], 1.0});
            if (row.terms.size() < 2)
                continue; // a single entry cannot violate the cap
            row.rhs = 1.0;
            block.inequalities.push_back(std::move(row));
        }
    }

    void distortion_block()
    {
        if (!in.config.distortion_bound)
            return;
        const double bound = *in.config.distortion_bound;
        if (!std::isfinite(bound))
            return;
        const auto &dx = in.source_geodesics;
        const auto &dy = in.target_geodesics;
        if (dx.rows() != u || dx.cols() != u || dy.rows() != v ||
            dy.cols() != v)
            throw Error("assemble: distortion bound needs u x u and v x v "
                        "geodesic matrices");

        auto &layout = model.layout;
        auto &block = model.block(ConstraintOrigin::Distortion);
        for (size_t n1 = 0; n1 < layout.p_pairs.size(); ++n1) {
            for (size_t n2 = n1 + 1; n2 < layout.p_pairs.size(); ++n2) {
                const auto [s, t] = layout.p_pairs[n1];
                const auto [p, q] = layout.p_pairs[n2];
                if (s == p)
                    continue; // row-stochastic rows already exclude these
                if (std::abs(dx(s, p) - dy(t, q)) <= bound)
                    continue;
                LinearRow row;
                row.terms.push_back({layout.p_vars[n1], 1.0});
                row.terms.push_back({layout.p_vars[n2], 1.0});
                row.rhs = 1.0;
                block.inequalities.push_back(std::move(row));
            }
        }
    }

    ConicModel build()
    {
        register_vars();
        build_so3_rows(model);
        correspondence_block();
        regularizer_cones();
        consistency_block();
        outlier_block();
        injectivity_block();
        distortion_block();
        model.check_structure();
        return std::move(model);
    }
};

} // namespace

ConicModel assemble(const AssembleInputs &inputs)
{
    Builder builder(inputs);
    return builder.build();
}

ConicModel build_rotation_model(int bins)
{
    if (bins < 2 || (bins & (bins - 1)) != 0)
        throw Error("build_rotation_model: bins must be a power of two >= 2");
    ConicModel model;
    register_rotation_vars(model, bins);
    build_so3_rows(model);
    model.check_structure();
    return model;
}

} // namespace polymatch
