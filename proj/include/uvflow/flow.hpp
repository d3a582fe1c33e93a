#ifndef UVFLOW_FLOW_HPP
#define UVFLOW_FLOW_HPP

#include <optional>
#include <string>
#include <vector>

#include "uvflow/jacrep.hpp"
#include "uvflow/poly.hpp"
#include "uvflow/uvrep.hpp"

namespace uvflow {

enum class Integrator { Euler, RK4 };

// Configuration of one inverse-dynamics run. The driven image component
// advances at rate det(J(f)); all others are conserved along the flow.
struct FlowSpec {
    PolyMap map;
    int driven_index = 1;
    Integrator integrator = Integrator::Euler;
    double step = 1e-5;
    long max_steps = 0;
    long record_stride = 1;
    std::optional<UVRep> rep; // enables branch-tracked (u, gamma) recovery
    CF initial_branch{1.0, 0.0};
};

// One sampled state. y is always recomputed as f(x), never integrated.
// Rate residuals compare the one-step backward difference of the branch
// coordinates against the symbolic rates evaluated at this record.
struct TrajectoryRecord {
    long step = 0;
    double r = 0.0;
    std::vector<CF> x;
    std::vector<CF> y;
    CF u{0.0, 0.0};
    CF gamma{0.0, 0.0};
    bool has_branch = false;
    std::vector<double> drift; // |f_j(x) - f_j(x0)| for non-driven j, ascending
    double res_u = 0.0;
    double res_gamma = 0.0;
    bool has_residuals = false;
};

enum class RunStatus { Completed, Diverged, BranchAmbiguous };

struct RunResult {
    std::vector<TrajectoryRecord> records;
    RunStatus status = RunStatus::Completed;
    std::string note;
};

std::string status_name(RunStatus s);

// The signed-minor velocity field at x: component i is the cofactor of
// entry (driven, i) of the Jacobian. Along it, f_driven advances at rate
// det(J(f)) and every other image component is conserved.
std::vector<CF> rhs(const PolyMap& f, int driven, const std::vector<CF>& x);

// Fixed-step explicit integration; records every record_stride steps plus
// the initial and final states. Overflowing or non-finite states end the
// run early with a Diverged status rather than an exception.
RunResult integrate(const FlowSpec& spec, const std::vector<CF>& x0);

// Recover (u, gamma) from an ambient point: u is the m-th root of the
// leading coordinate closest to prev_u, and
// gamma = x2 u^L - sum_i h_i u^(m+L-i). Equidistant root candidates raise
// BranchAmbiguous.
std::pair<CF, CF> solve_uv(const UVRep& rep, const std::vector<CF>& x, CF prev_u);

// Measured-minus-symbolic branch rates for two consecutive records, the
// symbolic side evaluated at the newer record.
std::pair<double, double> rate_residuals(const TrajectoryRecord& prev,
                                         const TrajectoryRecord& cur,
                                         const UVRep& rep, const ABExpansion& exp);

// CSV emission, one row per record, floats with 15 significant digits and a
// locale-independent decimal point. The file is written atomically.
void write_csv(const std::string& path, const FlowSpec& spec, const RunResult& run);
std::string csv_header(int arity, int driven_index);

} // namespace uvflow

#endif
