#include "menugap/constructions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace menugap::layers {

namespace {

constexpr double kPi = std::numbers::pi;

// Axis points are emitted exactly so layer boundaries coincide bitwise:
// each layer ends where the next begins, and the closed-form telescoping
// over layer prefixes has no cross terms.
Vec<double> layer_point(const LayerSpec& s, long j) {
    double a, b;
    if (j == 0) {
        a = 1.0;
        b = 0.0;
    } else if (j == s.n - 1) {
        a = 0.0;
        b = 1.0;
    } else {
        double ang = static_cast<double>(j) * s.theta;
        a = std::cos(ang);
        b = std::sin(ang);
    }
    if (s.counterclockwise) return {a, b};
    return {b, a};
}

}  // namespace

LayerSpec layer_spec(int ell) {
    if (ell < 2) throw std::invalid_argument("layer_spec: ell must be >= 2");
    LayerSpec s;
    s.ell = ell;
    double ln = std::log(static_cast<double>(ell));
    s.n = static_cast<long>(ell) * static_cast<long>(std::ceil(ln * ln)) + 1;
    s.theta = (kPi / 2.0) / static_cast<double>(s.n - 1);
    s.counterclockwise = (ell % 2 == 0);
    return s;
}

PointSeq<double> build_x_sequence(int max_layer) {
    if (max_layer < 2) throw std::invalid_argument("build_x_sequence: max_layer must be >= 2");
    PointSeq<double> x;
    x.k = 2;
    for (int ell = 2; ell <= max_layer; ++ell) {
        LayerSpec s = layer_spec(ell);
        for (long j = 0; j < s.n; ++j) x.points.push_back(layer_point(s, j));
    }
    x.validate();
    return x;
}

Construction build_construction(int max_layer, const Interval& alpha) {
    if (max_layer < 2) throw std::invalid_argument("build_construction: max_layer must be >= 2");
    if (!(alpha.lo > 1.9) || !(alpha.hi <= 3.0) || !(alpha.lo <= alpha.hi))
        throw std::invalid_argument("build_construction: alpha enclosure outside (1.9, 3]");

    Construction c;
    c.max_layer = max_layer;
    c.params.alpha = alpha;
    c.params.alpha_used = alpha.lo;
    c.params.z.assign(static_cast<std::size_t>(max_layer) + 1, 0.0);
    c.params.delta.assign(static_cast<std::size_t>(max_layer) + 1, 0.0);
    c.x.k = 2;
    c.q.k = 2;
    c.q.allocations.push_back(zero_vec<double>(2));

    double z_run = 0.0;
    for (int ell = 2; ell <= max_layer; ++ell) {
        LayerSpec s = layer_spec(ell);
        double ln = std::log(static_cast<double>(ell));
        double delta = 1.0 / (c.params.alpha_used * static_cast<double>(ell) * ln * ln);
        z_run += delta;
        c.params.delta[static_cast<std::size_t>(ell)] = delta;
        c.params.z[static_cast<std::size_t>(ell)] = z_run;

        for (long j = 0; j < s.n; ++j) {
            Vec<double> xp = layer_point(s, j);
            c.x.points.push_back(xp);
            c.layer_of.emplace_back(ell, j);

            if (s.counterclockwise) {
                // Even layer: q = (z_ell, z_{ell,j}). The angle (n-1)theta is
                // pi/2 exactly, so cot there is pinned to zero rather than
                // trusting libm at the singular point; the last two entries
                // of each even layer share second coordinate 1.
                double zlj;
                if (j >= s.n - 2) {
                    zlj = 1.0;
                } else {
                    double ang = static_cast<double>(j + 1) * s.theta;
                    double cot = std::cos(ang) / std::sin(ang);
                    zlj = 1.0 - delta * cot;
                    if (zlj < 0.0 || zlj > 1.0)
                        throw std::invalid_argument(
                            "build_construction: z_{l,j} outside [0,1] at ell=" + std::to_string(ell) +
                            " j=" + std::to_string(j) + " (alpha enclosure too wide)");
                }
                c.q.allocations.push_back({z_run, zlj});
                c.reuse_q_index.push_back(static_cast<int>(c.q.allocations.size()) - 1);
            } else {
                // Odd layer: reuse the earlier allocation maximizing q . x,
                // ties toward the latest layer (>= keeps the last maximizer).
                std::size_t best = 0;
                double best_val = 0.0;
                for (std::size_t m = 1; m < c.q.allocations.size(); ++m) {
                    double v = c.q.allocations[m][0] * xp[0] + c.q.allocations[m][1] * xp[1];
                    if (v >= best_val) {
                        best_val = v;
                        best = m;
                    }
                }
                c.q.allocations.push_back(c.q.allocations[best]);
                c.reuse_q_index.push_back(static_cast<int>(best));
            }
        }
        c.specs.push_back(s);
    }
    c.x.validate();
    c.q.validate();
    return c;
}

AllocSeq<double> build_q_sequence(int max_layer, const Interval& alpha) {
    return build_construction(max_layer, alpha).q;
}

double gap_lower_formula(int ell, long j, const Interval& alpha) {
    if (ell <= 2 || ell % 2 != 0)
        throw std::invalid_argument("gap_lower_formula: only even ell > 2 are in scope");
    LayerSpec s = layer_spec(ell);
    if (j < 0 || j >= s.n) throw std::invalid_argument("gap_lower_formula: j out of range");
    double ln = std::log(static_cast<double>(ell));
    double delta = 1.0 / (alpha.hi * static_cast<double>(ell) * ln * ln);
    return delta * std::sin(s.theta) / std::sin(static_cast<double>(j + 1) * s.theta);
}

double layer_gap_lower_bound(int ell, const Interval& alpha) {
    if (ell <= 2 || ell % 2 != 0)
        throw std::invalid_argument("layer_gap_lower_bound: only even ell > 2 are in scope");
    LayerSpec s = layer_spec(ell);
    double ln = std::log(static_cast<double>(ell));
    double delta = 1.0 / (alpha.hi * static_cast<double>(ell) * ln * ln);
    return delta * std::log(static_cast<double>(s.n)) / 2.0;
}

double lagrel_closed_form(const PointSeq<double>& x, bool include_terminal) {
    x.validate();
    if (x.leading_zero) throw std::invalid_argument("lagrel_closed_form: pass the sentinel-free sequence");
    for (std::size_t i = 0; i < x.points.size(); ++i)
        if (std::fabs(l2_norm_sq(x.points[i]) - 1.0) > 1e-12)
            throw std::invalid_argument("lagrel_closed_form: non-unit point at index " + std::to_string(i));
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < x.points.size(); ++i) sum += 1.0 - dot(x.points[i], x.points[i + 1]);
    if (include_terminal) sum += 1.0;  // x_{N+1} := 0 contributes 1 - x_N . 0
    return std::sqrt(2.0) * sum;
}

double lagrel_tail_bound(int from_layer) {
    if (from_layer < 2) throw std::invalid_argument("lagrel_tail_bound: from_layer must be >= 2");
    const long M = 1'000'000;
    double sum = 0.0;
    for (long l = from_layer; l <= M; ++l) {
        double ln = std::log(static_cast<double>(l));
        sum += 1.0 / (static_cast<double>(l) * std::ceil(ln * ln));
    }
    sum += 1.0 / std::log(static_cast<double>(M));
    return std::sqrt(2.0) * kPi * kPi / 8.0 * sum;
}

double divergence_partial(int max_layer, const Interval& alpha) {
    if (max_layer < 4) throw std::invalid_argument("divergence_partial: max_layer must be >= 4");
    double sum = 0.0;
    for (int ell = 4; ell <= max_layer; ell += 2)
        sum += 1.0 / (2.0 * alpha.hi * static_cast<double>(ell) * std::log(static_cast<double>(ell)));
    return sum;
}

namespace detail {

FastGapModel<double> fast_gap_candidates(const Construction& c) {
    if (c.layer_of.size() != c.x.points.size() || c.q.allocations.size() != c.x.points.size() + 1 ||
        c.reuse_q_index.size() != c.x.points.size())
        throw std::invalid_argument("fast_gap_terms: not a built construction");

    FastGapModel<double> m;
    const std::size_t n = c.x.points.size();
    m.cand_prev_in_layer.assign(n, -1);
    m.cand_prev_even_last.assign(n, -1);

    int last_even_q = 0;     // Q index of the final point of the previous even layer
    int current_ell = -1;
    int pending_even_last = 0;
    for (std::size_t i = 0; i < n; ++i) {
        auto [ell, j] = c.layer_of[i];
        if (ell != current_ell) {
            current_ell = ell;
            last_even_q = pending_even_last;
        }
        if (ell % 2 == 0) {
            m.cand_prev_in_layer[i] = (j > 0) ? static_cast<int>(i) : -1;  // Q index i = point i-1
            m.cand_prev_even_last[i] = last_even_q;                       // 0 means the sentinel
            LayerSpec s = c.specs[static_cast<std::size_t>(ell - 2)];
            if (j == s.n - 1) pending_even_last = static_cast<int>(i) + 1;
        }
    }
    return m;
}

}  // namespace detail

}  // namespace menugap::layers
