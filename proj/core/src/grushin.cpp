#include "gfl/grushin.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "gfl/quadrature.hpp"
#include "gfl/util.hpp"

namespace gfl::grushin {

GrushinDims::GrushinDims(int N_, int k_) : N(N_), k(k_) {
    if (N < 1 || k < 1) throw std::invalid_argument("GrushinDims: N, k >= 1 required");
}

BiRadialGrid::BiRadialGrid(GrushinDims dims_, double r_max_, double s_max_, std::size_t n_r_,
                           std::size_t n_s_)
    : dims(dims_), r_max(r_max_), s_max(s_max_), n_r(n_r_), n_s(n_s_) {
    if (n_r < 8 || n_s < 8) throw std::invalid_argument("BiRadialGrid: need at least 8 cells per direction");
    if (!(r_max >= 4.0 && s_max >= 4.0))
        throw std::invalid_argument("BiRadialGrid: truncation radii must be >= 4");
}

double BiRadialGrid::cell_weight(std::size_t i, std::size_t j) const {
    return std::pow(r(i), dims.N - 1) * std::pow(s(j), dims.k - 1) * h_r() * h_s();
}

Field::Field(const BiRadialGrid& g, double fill) : grid(g), values(g.nodes(), fill) {}

Field::Field(const BiRadialGrid& g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.nodes()) throw std::invalid_argument("Field: size mismatch");
}

OperatorMatrix::OperatorMatrix(const BiRadialGrid& grid) : grid_(grid) {
    const std::size_t nr = grid.n_r, ns = grid.n_s;
    const double hr = grid.h_r(), hs = grid.h_s();
    const int N = grid.dims.N, k = grid.dims.k;
    r_lo_.assign(nr, 0.0);
    r_di_.assign(nr, 0.0);
    r_up_.assign(nr, 0.0);
    s_lo_.assign(ns, 0.0);
    s_di_.assign(ns, 0.0);
    s_up_.assign(ns, 0.0);
    for (std::size_t i = 0; i < nr; ++i) {
        const double r = grid.r(i);
        const double diff = 1.0 / (hr * hr);
        const double drift = (N - 1) / (2.0 * hr * r);
        double lo = diff - drift, up = diff + drift, di = -2.0 * diff;
        if (i == 0) {
            // mirror ghost folds the lower connection onto the diagonal
            di += lo;
            lo = 0.0;
        }
        if (i == nr - 1) up = 0.0;  // Dirichlet ghost contributes nothing
        r_lo_[i] = lo;
        r_di_[i] = di;
        r_up_[i] = up;
    }
    for (std::size_t j = 0; j < ns; ++j) {
        const double s = grid.s(j);
        const double diff = 1.0 / (hs * hs);
        const double drift = (k - 1) / (2.0 * hs * s);
        double lo = diff - drift, up = diff + drift, di = -2.0 * diff;
        if (j == 0) {
            di += lo;
            lo = 0.0;
        }
        if (j == ns - 1) up = 0.0;
        s_lo_[j] = lo;
        s_di_[j] = di;
        s_up_[j] = up;
    }
}

void OperatorMatrix::apply_into(const std::vector<double>& u, std::vector<double>& out) const {
    const std::size_t nr = grid_.n_r, ns = grid_.n_s;
    if (u.size() != nr * ns) throw std::invalid_argument("OperatorMatrix::apply_into: size mismatch");
    out.assign(nr * ns, 0.0);
    for (std::size_t i = 0; i < nr; ++i) {
        const double r2 = grid_.r(i) * grid_.r(i);
        const double* row = u.data() + i * ns;
        double* dst = out.data() + i * ns;
        for (std::size_t j = 0; j < ns; ++j) {
            double v = (r_di_[i] + r2 * s_di_[j]) * row[j];
            if (j > 0) v += r2 * s_lo_[j] * row[j - 1];
            if (j + 1 < ns) v += r2 * s_up_[j] * row[j + 1];
            if (i > 0) v += r_lo_[i] * u[(i - 1) * ns + j];
            if (i + 1 < nr) v += r_up_[i] * u[(i + 1) * ns + j];
            dst[j] = v;
        }
    }
}

OperatorMatrix assemble(const BiRadialGrid& grid) { return OperatorMatrix(grid); }

Field apply(const OperatorMatrix& op, const Field& u) {
    if (!(u.grid == op.grid())) throw std::invalid_argument("apply: field and operator grids differ");
    Field out(u.grid);
    op.apply_into(u.values, out.values);
    return out;
}

ThetaParams::ThetaParams(double epsilon_, double A_, double c_) : epsilon(epsilon_), A(A_), c(c_) {
    if (!(epsilon > 0.0 && A > 0.0 && c > 0.0))
        throw std::invalid_argument("ThetaParams: epsilon, A, c must be positive");
}

ThetaParams ThetaParams::defaults(const GrushinDims& dims) {
    return ThetaParams(1.0 / (2.0 * (dims.N + 2) + dims.k), 1.0, 1.0);
}

ThetaParams ThetaParams::normalized(const GrushinDims& dims, double epsilon, double A) {
    const double mass = theta_mass(dims, epsilon, A);
    return ThetaParams(epsilon, A, 1.0 / mass);
}

double theta_eval(const ThetaParams& params, double r, double s) {
    const double rho = params.A + r * r * r * r + s * s;
    return params.c * std::exp(-params.epsilon * std::sqrt(rho));
}

double grushin_theta_analytic(const ThetaParams& params, const GrushinDims& dims, double r,
                              double s) {
    const double eps = params.epsilon;
    const double r2 = r * r;
    const double rho = params.A + r2 * r2 + s * s;
    const double theta = theta_eval(params, r, s);
    const double grad_sq = 16.0 * r2 * r2 * r2 + 4.0 * r2 * s * s;  // |grad_x rho|^2 + r^2 |grad_y rho|^2
    const double quad = 0.25 * (eps * std::pow(rho, -1.5) + eps * eps / rho) * grad_sq * theta;
    const double drift = eps * (2.0 * (dims.N + 2) + dims.k) * r2 / std::sqrt(rho) * theta;
    return quad - drift;
}

double theta_inequality_margin(const ThetaParams& params, const GrushinDims& dims,
                               std::size_t samples) {
    if (samples < 1) throw std::invalid_argument("theta_inequality_margin: samples >= 1");
    const double bound = params.epsilon * (2.0 * (dims.N + 2) + dims.k);
    double margin = std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < samples; ++m) {
        double x, y;
        gfl::halton2(m, x, y);
        const double r = 20.0 * x, s = 20.0 * y;
        const double v = grushin_theta_analytic(params, dims, r, s) + bound * theta_eval(params, r, s);
        margin = std::min(margin, v);
    }
    return margin;
}

double biradial_integral(const Field& u) {
    const BiRadialGrid& g = u.grid;
    const double area = gfl::unit_sphere_area(g.dims.N) * gfl::unit_sphere_area(g.dims.k);
    double acc = 0.0;
    for (std::size_t i = 0; i < g.n_r; ++i) {
        const double wr = std::pow(g.r(i), g.dims.N - 1);
        double row = 0.0;
        for (std::size_t j = 0; j < g.n_s; ++j)
            row += u.at(i, j) * std::pow(g.s(j), g.dims.k - 1);
        acc += wr * row;
    }
    return area * acc * g.h_r() * g.h_s();
}

double theta_mass(const GrushinDims& dims, double epsilon, double A) {
    // Tails: exp(-eps r^2) in r and exp(-eps s) in s.
    const double r_cut = std::max(8.0, 1.5 * std::sqrt(45.0 / epsilon));
    const double s_cut = std::max(8.0, 1.2 * 45.0 / epsilon);
    const double area = gfl::unit_sphere_area(dims.N) * gfl::unit_sphere_area(dims.k);
    auto inner = [&](double r) {
        auto f = [&](double s) {
            const double rho = A + r * r * r * r + s * s;
            return std::exp(-epsilon * std::sqrt(rho)) * std::pow(s, dims.k - 1);
        };
        return gfl::quad::integral(f, 0.0, s_cut, 1e-9, 1e-12);
    };
    auto outer = [&](double r) { return inner(r) * std::pow(r, dims.N - 1); };
    return area * gfl::quad::integral(outer, 0.0, r_cut, 1e-8, 1e-12);
}

Field sample_theta(const BiRadialGrid& grid, const ThetaParams& params) {
    Field f(grid);
    for (std::size_t i = 0; i < grid.n_r; ++i)
        for (std::size_t j = 0; j < grid.n_s; ++j)
            f.at(i, j) = theta_eval(params, grid.r(i), grid.s(j));
    return f;
}

}  // namespace gfl::grushin
