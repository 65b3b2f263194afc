#ifndef GFL_LINSOLVE_HPP
#define GFL_LINSOLVE_HPP

#include <cstddef>
#include <vector>

#include "gfl/grushin.hpp"

namespace gfl::lin {

/// Factored tridiagonal system (Thomas algorithm, no pivoting; the shifted
/// operators here are strictly diagonally dominant).
struct TridiagFactor {
    std::vector<double> diag;   // eliminated diagonal
    std::vector<double> lower;  // multipliers
    std::vector<double> upper;  // original superdiagonal

    static TridiagFactor build(const std::vector<double>& lo, const std::vector<double>& di,
                               const std::vector<double>& up);
    void solve_inplace(double* x) const;
};

struct SolveStats {
    int iterations = 0;
    double relative_residual = 0.0;
    bool converged = false;
};

/// Solves (I - dt L) x = b for the bi-radial operator L by conjugate
/// gradients in the r^(N-1) s^(k-1)-weighted inner product (L is
/// self-adjoint there), preconditioned with the additive line preconditioner
///   M^-1 = (I - dt A_r)^-1 + (I - dt A_s)^-1,
/// whose directional factors are cached between calls with the same dt.
class ShiftedOperatorSolver {
  public:
    explicit ShiftedOperatorSolver(const grushin::OperatorMatrix& op);

    /// x carries the initial guess on entry. rel_tol is measured against
    /// ||b|| in the weighted norm. max_iterations <= 0 selects the
    /// 10 * nodes default cap.
    SolveStats solve(double dt, const std::vector<double>& b, std::vector<double>& x,
                     double rel_tol = 1e-10, long max_iterations = 0);

  private:
    void prepare(double dt);
    void apply_shifted(const std::vector<double>& u, std::vector<double>& out) const;
    void apply_preconditioner(const std::vector<double>& v, std::vector<double>& out) const;
    double dot_w(const std::vector<double>& a, const std::vector<double>& b) const;

    const grushin::OperatorMatrix& op_;
    std::vector<double> weight_;
    double cached_dt_ = -1.0;
    double dt_ = 0.0;
    TridiagFactor r_factor_;                  // shared by every s-line
    std::vector<TridiagFactor> s_factors_;    // one per r-line (r^2 scaling)
    mutable std::vector<double> scratch_a_, scratch_b_;
};

}  // namespace gfl::lin

#endif
