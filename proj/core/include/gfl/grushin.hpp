#ifndef GFL_GRUSHIN_HPP
#define GFL_GRUSHIN_HPP

#include <cstddef>
#include <vector>

namespace gfl::grushin {

/// Dimensions of the x- and y-blocks; the homogeneous dimension N+2k is
/// always derived, never stored.
struct GrushinDims {
    int N;
    int k;

    GrushinDims(int N_, int k_);
    int homogeneous_dimension() const { return N + 2 * k; }
    bool operator==(const GrushinDims&) const = default;
};

/// Cell-centered uniform grid in (r, s) = (|x|, |y|); the half-cell offset
/// keeps the (N-1)/r and (k-1)/s terms away from the axes.
struct BiRadialGrid {
    GrushinDims dims;
    double r_max, s_max;
    std::size_t n_r, n_s;

    BiRadialGrid(GrushinDims dims_, double r_max_, double s_max_, std::size_t n_r_, std::size_t n_s_);

    double h_r() const { return r_max / static_cast<double>(n_r); }
    double h_s() const { return s_max / static_cast<double>(n_s); }
    double r(std::size_t i) const { return (static_cast<double>(i) + 0.5) * h_r(); }
    double s(std::size_t j) const { return (static_cast<double>(j) + 0.5) * h_s(); }
    std::size_t nodes() const { return n_r * n_s; }
    std::size_t index(std::size_t i, std::size_t j) const { return i * n_s + j; }
    /// Bi-radial measure weight r^(N-1) s^(k-1) h_r h_s of one cell, without
    /// the sphere-area prefactors.
    double cell_weight(std::size_t i, std::size_t j) const;
    bool operator==(const BiRadialGrid&) const = default;
};

/// Values on the grid lattice; plain value semantics.
struct Field {
    BiRadialGrid grid;
    std::vector<double> values;

    explicit Field(const BiRadialGrid& g, double fill = 0.0);
    Field(const BiRadialGrid& g, std::vector<double> v);
    double& at(std::size_t i, std::size_t j) { return values[grid.index(i, j)]; }
    double at(std::size_t i, std::size_t j) const { return values[grid.index(i, j)]; }
};

/// Pentadiagonal stencil of the bi-radial operator
///   L u = u_rr + (N-1)/r u_r + r^2 (u_ss + (k-1)/s u_s),
/// with mirror (Neumann) rows at the axes and homogeneous Dirichlet rows at
/// r_max, s_max. Coefficients separate by direction, which the time
/// integrator's preconditioner exploits.
class OperatorMatrix {
  public:
    explicit OperatorMatrix(const BiRadialGrid& grid);

    const BiRadialGrid& grid() const { return grid_; }

    // r-direction tridiagonal coefficients (independent of j)
    const std::vector<double>& r_lower() const { return r_lo_; }
    const std::vector<double>& r_diag() const { return r_di_; }
    const std::vector<double>& r_upper() const { return r_up_; }
    // s-direction tridiagonal coefficients, to be scaled by r(i)^2
    const std::vector<double>& s_lower() const { return s_lo_; }
    const std::vector<double>& s_diag() const { return s_di_; }
    const std::vector<double>& s_upper() const { return s_up_; }

    void apply_into(const std::vector<double>& u, std::vector<double>& out) const;

  private:
    BiRadialGrid grid_;
    std::vector<double> r_lo_, r_di_, r_up_;
    std::vector<double> s_lo_, s_di_, s_up_;
};

/// Parameters of the comparison function c exp(-eps sqrt(A + r^4 + s^2)).
struct ThetaParams {
    double epsilon;
    double A;
    double c;

    ThetaParams(double epsilon_, double A_, double c_);
    /// epsilon = 1/(2(N+2)+k), A = 1, c = 1.
    static ThetaParams defaults(const GrushinDims& dims);
    /// Same epsilon/A with c set so the bi-radial integral equals 1.
    static ThetaParams normalized(const GrushinDims& dims, double epsilon, double A);
};

OperatorMatrix assemble(const BiRadialGrid& grid);
Field apply(const OperatorMatrix& op, const Field& u);

double theta_eval(const ThetaParams& params, double r, double s);

/// Exact expression for the operator applied to the comparison function:
/// with rho = A + r^4 + s^2,
///   (1/4)(eps rho^-3/2 + eps^2 rho^-1)(16 r^6 + 4 r^2 s^2) Theta
///   - eps [2(N+2)+k] r^2 rho^-1/2 Theta.
double grushin_theta_analytic(const ThetaParams& params, const GrushinDims& dims, double r, double s);

/// Minimum over a deterministic low-discrepancy sample of [0,20]^2 of
/// grushin_theta_analytic + eps [2(N+2)+k] Theta. Nonnegative up to rounding.
double theta_inequality_margin(const ThetaParams& params, const GrushinDims& dims, std::size_t samples);

/// omega_(N-1) omega_(k-1) sum of u r^(N-1) s^(k-1) h_r h_s (midpoint rule in
/// the bi-radial measure).
double biradial_integral(const Field& u);

/// Quadrature of the bi-radial integral of exp(-eps sqrt(A + r^4 + s^2));
/// used for normalization and as an oracle in tests.
double theta_mass(const GrushinDims& dims, double epsilon, double A);

Field sample_theta(const BiRadialGrid& grid, const ThetaParams& params);

}  // namespace gfl::grushin

#endif
