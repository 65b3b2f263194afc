#include "gfl/linsolve.hpp"

#include <cmath>
#include <stdexcept>

namespace gfl::lin {

TridiagFactor TridiagFactor::build(const std::vector<double>& lo, const std::vector<double>& di,
                                   const std::vector<double>& up) {
    const std::size_t n = di.size();
    TridiagFactor f;
    f.diag.resize(n);
    f.lower.resize(n);
    f.upper = up;
    f.diag[0] = di[0];
    f.lower[0] = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        const double m = lo[i] / f.diag[i - 1];
        f.lower[i] = m;
        f.diag[i] = di[i] - m * up[i - 1];
    }
    return f;
}

void TridiagFactor::solve_inplace(double* x) const {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) x[i] -= lower[i] * x[i - 1];
    x[n - 1] /= diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = (x[i] - upper[i] * x[i + 1]) / diag[i];
}

ShiftedOperatorSolver::ShiftedOperatorSolver(const grushin::OperatorMatrix& op) : op_(op) {
    const auto& g = op.grid();
    weight_.resize(g.nodes());
    for (std::size_t i = 0; i < g.n_r; ++i) {
        const double wr = std::pow(g.r(i), g.dims.N - 1);
        for (std::size_t j = 0; j < g.n_s; ++j)
            weight_[g.index(i, j)] = wr * std::pow(g.s(j), g.dims.k - 1);
    }
}

void ShiftedOperatorSolver::prepare(double dt) {
    if (dt == cached_dt_) return;
    const auto& g = op_.grid();
    const std::size_t nr = g.n_r, ns = g.n_s;
    // I - dt A_r
    std::vector<double> lo(nr), di(nr), up(nr);
    for (std::size_t i = 0; i < nr; ++i) {
        lo[i] = -dt * op_.r_lower()[i];
        di[i] = 1.0 - dt * op_.r_diag()[i];
        up[i] = -dt * op_.r_upper()[i];
    }
    r_factor_ = TridiagFactor::build(lo, di, up);
    // I - dt r_i^2 A_s, one factor per r-line
    s_factors_.clear();
    s_factors_.reserve(nr);
    std::vector<double> slo(ns), sdi(ns), sup(ns);
    for (std::size_t i = 0; i < nr; ++i) {
        const double r2 = g.r(i) * g.r(i);
        for (std::size_t j = 0; j < ns; ++j) {
            slo[j] = -dt * r2 * op_.s_lower()[j];
            sdi[j] = 1.0 - dt * r2 * op_.s_diag()[j];
            sup[j] = -dt * r2 * op_.s_upper()[j];
        }
        s_factors_.push_back(TridiagFactor::build(slo, sdi, sup));
    }
    cached_dt_ = dt;
    dt_ = dt;
}

void ShiftedOperatorSolver::apply_shifted(const std::vector<double>& u,
                                          std::vector<double>& out) const {
    op_.apply_into(u, out);
    for (std::size_t idx = 0; idx < u.size(); ++idx) out[idx] = u[idx] - dt_ * out[idx];
}

void ShiftedOperatorSolver::apply_preconditioner(const std::vector<double>& v,
                                                 std::vector<double>& out) const {
    // Symmetrized multiplicative two-direction sweep,
    //   x <- G_r v;  x <- x + G_s (v - A x);  x <- x + G_r (v - A x),
    // with G_r = (I - dt A_r)^-1 (one cached factor, all s-lines) and
    // G_s = (I - dt A_s)^-1 (one factor per r-line). The r-s-r ordering keeps
    // the preconditioner self-adjoint in the weighted inner product, which
    // plain conjugate gradients requires.
    const auto& g = op_.grid();
    const std::size_t nr = g.n_r, ns = g.n_s;
    const std::size_t n = nr * ns;

    auto solve_r = [&](std::vector<double>& x) {
        scratch_a_.resize(nr);
        for (std::size_t j = 0; j < ns; ++j) {
            for (std::size_t i = 0; i < nr; ++i) scratch_a_[i] = x[i * ns + j];
            r_factor_.solve_inplace(scratch_a_.data());
            for (std::size_t i = 0; i < nr; ++i) x[i * ns + j] = scratch_a_[i];
        }
    };
    auto solve_s = [&](std::vector<double>& x) {
        for (std::size_t i = 0; i < nr; ++i) s_factors_[i].solve_inplace(x.data() + i * ns);
    };

    out = v;
    solve_r(out);
    scratch_b_.resize(n);
    apply_shifted(out, scratch_b_);
    for (std::size_t idx = 0; idx < n; ++idx) scratch_b_[idx] = v[idx] - scratch_b_[idx];
    solve_s(scratch_b_);
    for (std::size_t idx = 0; idx < n; ++idx) out[idx] += scratch_b_[idx];
    apply_shifted(out, scratch_b_);
    for (std::size_t idx = 0; idx < n; ++idx) scratch_b_[idx] = v[idx] - scratch_b_[idx];
    solve_r(scratch_b_);
    for (std::size_t idx = 0; idx < n; ++idx) out[idx] += scratch_b_[idx];
}

double ShiftedOperatorSolver::dot_w(const std::vector<double>& a,
                                    const std::vector<double>& b) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += weight_[i] * a[i] * b[i];
    return acc;
}

SolveStats ShiftedOperatorSolver::solve(double dt, const std::vector<double>& b,
                                        std::vector<double>& x, double rel_tol,
                                        long max_iterations) {
    const std::size_t n = b.size();
    if (x.size() != n) x.assign(n, 0.0);
    prepare(dt);
    if (max_iterations <= 0) max_iterations = static_cast<long>(10 * n);

    std::vector<double> r(n), z(n), p(n), Ap(n);
    apply_shifted(x, Ap);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - Ap[i];
    const double bnorm = std::sqrt(dot_w(b, b));
    SolveStats stats;
    if (bnorm == 0.0) {
        x.assign(n, 0.0);
        stats.converged = true;
        return stats;
    }
    double rnorm = std::sqrt(dot_w(r, r));
    if (rnorm / bnorm <= rel_tol) {
        stats.converged = true;
        stats.relative_residual = rnorm / bnorm;
        return stats;
    }
    apply_preconditioner(r, z);
    p = z;
    double rz = dot_w(r, z);
    for (long it = 1; it <= max_iterations; ++it) {
        apply_shifted(p, Ap);
        const double alpha = rz / dot_w(p, Ap);
        for (std::size_t i = 0; i < n; ++i) x[i] += alpha * p[i];
        for (std::size_t i = 0; i < n; ++i) r[i] -= alpha * Ap[i];
        rnorm = std::sqrt(dot_w(r, r));
        stats.iterations = static_cast<int>(it);
        if (rnorm / bnorm <= rel_tol) {
            stats.converged = true;
            break;
        }
        apply_preconditioner(r, z);
        const double rz_next = dot_w(r, z);
        const double beta = rz_next / rz;
        rz = rz_next;
        for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    stats.relative_residual = rnorm / bnorm;
    return stats;
}

}  // namespace gfl::lin
