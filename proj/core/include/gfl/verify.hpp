#ifndef GFL_VERIFY_HPP
#define GFL_VERIFY_HPP

#include <string>
#include <vector>

namespace gfl::verify {

/// One verification check. `measured` is compared against `tolerance` in the
/// direction given by `at_least`: error-type checks pass when
/// measured <= tolerance, order/margin-type checks when measured >= tolerance.
struct Check {
    std::string id;
    double measured = 0.0;
    double tolerance = 0.0;
    bool at_least = false;
    bool pass = false;
};

/// Suites keyed by module name: "fraccalc", "grushin", "testfn".
/// tol_scale multiplies the error-type tolerances (0.1 tightens tenfold;
/// lower-bound checks are left untouched).
std::vector<Check> run_module(const std::string& module, double tol_scale = 1.0);
std::vector<Check> run_all(double tol_scale = 1.0);

const std::vector<std::string>& module_names();

/// Oracle for the closed-form weight derivatives: order-(m+alpha) right
/// derivative of (1-t/T)^sigma by adaptive quadrature of the defining
/// integral plus central differencing. Lives here so both the CLI
/// verification and the acceptance suite can call it; it never touches the
/// closed-form path it checks.
double w1_right_derivative_oracle(double t, double T, double sigma, int m, double alpha);

}  // namespace gfl::verify

#endif
