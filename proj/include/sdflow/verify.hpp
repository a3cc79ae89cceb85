// Self-check groups behind the `verify` subcommand: each group re-derives a
// structural identity of the solver and compares against an independent
// route. Tolerances scale with resolution (see the table in the README).
#ifndef SDFLOW_VERIFY_HPP
#define SDFLOW_VERIFY_HPP

#include <string>
#include <vector>

namespace sdflow {

struct VerifyOptions {
    int nx = 64;
    int ntheta = 64;
    double r = 1.5;
    bool negate_dg0 = false;  // test hook: flips the linearization sign to
                              // prove the suite catches it
};

struct VerifyResult {
    std::string group;
    bool pass = false;
    std::string detail;
};

std::vector<VerifyResult> run_verification(const VerifyOptions& opt);

}  // namespace sdflow

#endif
