#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "menugap/scalar.hpp"

namespace menugap::lp {

/// Dense bounded-variable primal simplex over either backend.
///
/// Solves  max c.x  s.t.  A x <= b,  l <= x <= u  (either bound side may be
/// absent). The solver starts from the all-slack basis with every variable
/// at its start value (lower bound if finite, else upper bound, else 0), so
/// that point must be feasible — which holds for every program in this
/// project (all rows are of the form "expr <= 0" with boxed or free
/// variables). Dantzig pricing with a Bland fallback after a run of
/// degenerate pivots; exact pivoting on the rational backend, tolerance
/// `tol` on the float backend.

enum class Status { optimal, unbounded, infeasible_start, iteration_limit };

template <class S>
struct Problem {
    int num_vars = 0;
    std::vector<S> objective;                  // length num_vars, maximized
    std::vector<std::vector<S>> rows;          // dense A
    std::vector<S> rhs;                        // b
    std::vector<std::optional<S>> lower;       // per-variable bounds
    std::vector<std::optional<S>> upper;

    int add_var(std::optional<S> lo, std::optional<S> up, S obj) {
        lower.push_back(std::move(lo));
        upper.push_back(std::move(up));
        objective.push_back(std::move(obj));
        return num_vars++;
    }
};

template <class S>
struct Solution {
    Status status = Status::optimal;
    S objective = S(0);
    std::vector<S> x;
    std::vector<S> duals;  // one multiplier per row (>= 0 at optimum)
    long iterations = 0;
};

template <class S>
Solution<S> solve(const Problem<S>& p, double tol = 1e-9) {
    const std::size_t n = static_cast<std::size_t>(p.num_vars);
    const std::size_t m = p.rows.size();
    if (p.objective.size() != n || p.lower.size() != n || p.upper.size() != n || p.rhs.size() != m)
        throw std::invalid_argument("lp::solve: inconsistent problem sizes");
    for (const auto& r : p.rows)
        if (r.size() != n) throw std::invalid_argument("lp::solve: row width mismatch");

    const std::size_t nv = n + m;  // structural + slack
    const S zero = S(0);
    auto positive = [&](const S& v) {
        if constexpr (ScalarOps<S>::exact) return v > zero;
        else return v > S(tol);
    };
    auto negative = [&](const S& v) {
        if constexpr (ScalarOps<S>::exact) return v < zero;
        else return v < S(-tol);
    };

    auto lo_of = [&](std::size_t j) -> const std::optional<S>& {
        static const std::optional<S> slack_lo = std::make_optional(S(0));
        return j < n ? p.lower[j] : slack_lo;
    };
    auto up_of = [&](std::size_t j) -> const std::optional<S>& {
        static const std::optional<S> none = std::nullopt;
        return j < n ? p.upper[j] : none;
    };

    // Tableau T = B^-1 [A | I], initially the raw matrix.
    std::vector<std::vector<S>> T(m, std::vector<S>(nv, zero));
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t j = 0; j < n; ++j) T[r][j] = p.rows[r][j];
        T[r][n + r] = S(1);
    }

    enum class At { lower, upper, free_zero, basic };
    std::vector<At> state(nv);
    std::vector<S> nb_value(nv, zero);  // value of each nonbasic variable
    for (std::size_t j = 0; j < nv; ++j) {
        if (lo_of(j)) {
            state[j] = At::lower;
            nb_value[j] = *lo_of(j);
        } else if (up_of(j)) {
            state[j] = At::upper;
            nb_value[j] = *up_of(j);
        } else {
            state[j] = At::free_zero;
            nb_value[j] = zero;
        }
    }

    std::vector<std::size_t> basis(m);
    std::vector<S> val(m);  // current values of basic variables
    {
        // val = b - A x_start (slack j starts basic, so only structural terms)
        for (std::size_t r = 0; r < m; ++r) {
            S acc = p.rhs[r];
            for (std::size_t j = 0; j < n; ++j)
                if (!(nb_value[j] == zero)) acc -= p.rows[r][j] * nb_value[j];
            val[r] = acc;
            basis[r] = n + r;
            state[n + r] = At::basic;
        }
        for (std::size_t r = 0; r < m; ++r)
            if (negative(val[r])) {
                Solution<S> out;
                out.status = Status::infeasible_start;
                return out;
            }
    }

    std::vector<S> d(nv, zero);  // reduced costs (c_B starts at 0: slacks)
    for (std::size_t j = 0; j < n; ++j) d[j] = p.objective[j];

    const long max_iter = 50000;
    long iter = 0;
    int degen_run = 0;
    bool bland = false;

    while (true) {
        if (++iter > max_iter) {
            Solution<S> out;
            out.status = Status::iteration_limit;
            out.iterations = iter;
            return out;
        }

        // ---- pricing ----
        std::size_t enter = nv;
        int dir = 0;
        S best_mag = zero;
        for (std::size_t j = 0; j < nv; ++j) {
            if (state[j] == At::basic) continue;
            int cand_dir = 0;
            if ((state[j] == At::lower || state[j] == At::free_zero) && positive(d[j])) cand_dir = 1;
            else if ((state[j] == At::upper || state[j] == At::free_zero) && negative(d[j])) cand_dir = -1;
            if (cand_dir == 0) continue;
            if (bland) {
                enter = j;
                dir = cand_dir;
                break;
            }
            S mag = ScalarOps<S>::abs(d[j]);
            if (enter == nv || mag > best_mag) {
                enter = j;
                dir = cand_dir;
                best_mag = mag;
            }
        }
        if (enter == nv) break;  // optimal

        // ---- ratio test ----
        // entering moves by t >= 0 in direction dir; basic r changes at rate
        // -dir * T[r][enter]
        bool unbounded = true;
        bool flip = false;
        S best_t = zero;
        std::size_t leave_row = m;
        // entering variable's own range (bound flip)
        if (lo_of(enter) && up_of(enter)) {
            best_t = *up_of(enter) - *lo_of(enter);
            unbounded = false;
            flip = true;
        }
        for (std::size_t r = 0; r < m; ++r) {
            const S& a = T[r][enter];
            S rate = dir > 0 ? S(-a) : a;  // d val[r] / dt
            S limit;
            bool binds = false;
            if (negative(rate)) {
                if (lo_of(basis[r])) {
                    limit = (val[r] - *lo_of(basis[r])) / S(-rate);
                    binds = true;
                }
            } else if (positive(rate)) {
                if (up_of(basis[r])) {
                    limit = (*up_of(basis[r]) - val[r]) / rate;
                    binds = true;
                }
            }
            if (!binds) continue;
            if (limit < zero) limit = zero;  // float guard for slightly out-of-bound values
            if (unbounded || limit < best_t ||
                (limit == best_t && leave_row != m && basis[r] < basis[leave_row])) {
                unbounded = false;
                flip = false;
                best_t = limit;
                leave_row = r;
            }
        }
        if (unbounded) {
            Solution<S> out;
            out.status = Status::unbounded;
            out.iterations = iter;
            return out;
        }

        degen_run = (best_t == zero) ? degen_run + 1 : 0;
        if (degen_run > 64) bland = true;
        else if (best_t > zero) bland = false;

        // ---- apply step ----
        S step = dir > 0 ? best_t : S(-best_t);
        for (std::size_t r = 0; r < m; ++r) {
            if (!(T[r][enter] == zero)) val[r] -= T[r][enter] * step;
        }
        if (flip) {
            nb_value[enter] += step;
            state[enter] = (state[enter] == At::lower) ? At::upper : At::lower;
            continue;
        }

        // entering becomes basic at its new value
        S enter_val = nb_value[enter] + step;
        std::size_t leave = basis[leave_row];
        // leaving variable parks at the bound it hit
        {
            const S& a = T[leave_row][enter];
            S rate = dir > 0 ? S(-a) : a;
            if (negative(rate)) {
                state[leave] = At::lower;
                nb_value[leave] = *lo_of(leave);
            } else {
                state[leave] = At::upper;
                nb_value[leave] = *up_of(leave);
            }
        }

        // row reduction
        S pivot = T[leave_row][enter];
        for (std::size_t j = 0; j < nv; ++j) T[leave_row][j] /= pivot;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == leave_row) continue;
            const S factor = T[r][enter];
            if (factor == zero) continue;
            for (std::size_t j = 0; j < nv; ++j)
                if (!(T[leave_row][j] == zero)) T[r][j] -= factor * T[leave_row][j];
        }
        {
            const S factor = d[enter];
            if (!(factor == zero))
                for (std::size_t j = 0; j < nv; ++j)
                    if (!(T[leave_row][j] == zero)) d[j] -= factor * T[leave_row][j];
        }

        basis[leave_row] = enter;
        state[enter] = At::basic;
        val[leave_row] = enter_val;
    }

    Solution<S> out;
    out.status = Status::optimal;
    out.iterations = iter;
    out.x.assign(n, zero);
    for (std::size_t j = 0; j < n; ++j)
        if (state[j] != At::basic) out.x[j] = nb_value[j];
    for (std::size_t r = 0; r < m; ++r)
        if (basis[r] < n) out.x[basis[r]] = val[r];
    S obj = zero;
    for (std::size_t j = 0; j < n; ++j) obj += p.objective[j] * out.x[j];
    out.objective = obj;
    out.duals.resize(m);
    for (std::size_t r = 0; r < m; ++r) out.duals[r] = -d[n + r];
    return out;
}

}  // namespace menugap::lp
