#include "uvflow/flow.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <numbers>

namespace uvflow {

namespace {

constexpr double kOverflowLimit = 1e300;

// Polynomial baked down to complex coefficients for the inner loop.
struct CompiledPoly {
    struct Term {
        CF c;
        std::array<int, 4> e;
    };
    int arity = 0;
    std::vector<Term> terms;

    static CompiledPoly from(const Poly& p) {
        CompiledPoly cp;
        cp.arity = p.arity();
        for (const auto& [e, c] : p.terms()) {
            Term t;
            t.c = CF(c.to_double(), 0.0);
            t.e = {0, 0, 0, 0};
            for (int i = 0; i < p.arity(); ++i) t.e[i] = e[i];
            cp.terms.push_back(t);
        }
        return cp;
    }

    CF eval(const CF* x) const {
        CF acc(0.0, 0.0);
        for (const auto& t : terms) {
            CF v = t.c;
            for (int i = 0; i < arity; ++i)
                for (int k = 0; k < t.e[i]; ++k) v *= x[i];
            acc += v;
        }
        return acc;
    }
};

std::vector<CompiledPoly> compile_velocity(const PolyMap& f, int driven) {
    if (f.arity > 4)
        fail(ErrorKind::TooLarge, "signed-minor velocity limited to arity 4");
    if (driven < 1 || driven > f.arity)
        fail(ErrorKind::IndexOutOfRange, "driven component out of range");
    PolyMatrix jac = jacobian(f);
    std::vector<CompiledPoly> vel;
    for (int i = 1; i <= f.arity; ++i)
        vel.push_back(CompiledPoly::from(signed_minor(jac, driven, i)));
    return vel;
}

bool finite_state(const std::vector<CF>& x) {
    for (const CF& v : x) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        if (std::abs(v.real()) > kOverflowLimit || std::abs(v.imag()) > kOverflowLimit)
            return false;
    }
    return true;
}

CF nth_root_near(CF target, int m, CF prev) {
    if (m == 1) return target;
    CF principal = (m == 2) ? std::sqrt(target)
                            : std::exp(std::log(target) / static_cast<double>(m));
    double best = 0.0, second = 0.0;
    CF best_root = principal;
    for (int k = 0; k < m; ++k) {
        double angle = 2.0 * std::numbers::pi * k / m;
        CF cand = principal * CF(std::cos(angle), std::sin(angle));
        double d = std::abs(cand - prev);
        if (k == 0 || d < best) {
            second = (k == 0) ? d : best;
            best = d;
            best_root = cand;
        } else if (k == 1 || d < second) {
            second = d;
        }
    }
    if (m > 1 && std::abs(best - second) <= 1e-12 * std::max(1.0, std::abs(best_root)))
        fail(ErrorKind::BranchAmbiguous,
             "two branch candidates are equidistant from the previous value");
    return best_root;
}

} // namespace

std::string status_name(RunStatus s) {
    switch (s) {
        case RunStatus::Completed: return "completed";
        case RunStatus::Diverged: return "diverged";
        case RunStatus::BranchAmbiguous: return "branch-ambiguous";
    }
    return "unknown";
}

std::vector<CF> rhs(const PolyMap& f, int driven, const std::vector<CF>& x) {
    f.validate();
    if (static_cast<int>(x.size()) != f.arity)
        fail(ErrorKind::ArityMismatch, "state length != arity");
    auto vel = compile_velocity(f, driven);
    std::vector<CF> out(f.arity);
    for (int i = 0; i < f.arity; ++i) out[i] = vel[i].eval(x.data());
    return out;
}

std::pair<CF, CF> solve_uv(const UVRep& rep, const std::vector<CF>& x, CF prev_u) {
    rep.validate();
    if (x.size() != 2) fail(ErrorKind::ArityMismatch, "branch recovery needs a planar state");
    CF lead = x[rep.role[0] - 1];
    if (lead == CF(0.0, 0.0))
        fail(ErrorKind::ZeroLeadCoordinate, "leading curve coordinate is zero");
    CF target = static_cast<double>(rep.sign) * lead; // sign * x = u^m
    CF u = nth_root_near(target, rep.m, prev_u);
    int L = rep.L();
    CF uL(1.0, 0.0);
    for (int i = 0; i < L; ++i) uL *= u;
    CF gamma = x[rep.role[1] - 1] * uL;
    // subtract sum h_i u^(m+L-i)
    for (int i = 0; i < rep.N; ++i) {
        if (rep.h[i].is_zero()) continue;
        CF up(1.0, 0.0);
        int e = rep.m + L - i;
        CF base = e >= 0 ? u : CF(1.0, 0.0) / u;
        for (int k = 0; k < std::abs(e); ++k) up *= base;
        gamma -= rep.h[i].to_double() * up;
    }
    return {u, gamma};
}

RunResult integrate(const FlowSpec& spec, const std::vector<CF>& x0) {
    spec.map.validate();
    if (static_cast<int>(x0.size()) != spec.map.arity)
        fail(ErrorKind::ArityMismatch, "initial state length != arity");
    if (spec.step <= 0.0) fail(ErrorKind::BadInput, "step must be positive");
    if (spec.max_steps < 0) fail(ErrorKind::BadInput, "max_steps must be >= 0");
    long stride = spec.record_stride > 0 ? spec.record_stride : 1;

    const int n = spec.map.arity;
    auto vel = compile_velocity(spec.map, spec.driven_index);
    std::vector<CompiledPoly> comps;
    for (const auto& c : spec.map.components) comps.push_back(CompiledPoly::from(c));

    // Branch bookkeeping and symbolic rates, when a representation is given.
    bool branch = spec.rep.has_value();
    std::optional<ABExpansion> exp;
    std::optional<FlowRates> rates;
    if (branch) {
        exp = expand_image(*spec.rep, spec.map, 256);
        rates = flow_rates(*exp, *spec.rep);
    }

    RunResult run;
    std::vector<CF> x = x0;
    std::vector<CF> y0(n);
    for (int i = 0; i < n; ++i) y0[i] = comps[i].eval(x.data());

    CF u_prev(0.0, 0.0), g_prev(0.0, 0.0);
    CF u_cur(0.0, 0.0), g_cur(0.0, 0.0);
    if (branch) {
        auto ug = solve_uv(*spec.rep, x, spec.initial_branch);
        u_cur = ug.first;
        g_cur = ug.second;
    }

    auto make_record = [&](long step, bool with_residuals) {
        TrajectoryRecord rec;
        rec.step = step;
        rec.r = static_cast<double>(step) * spec.step;
        rec.x = x;
        rec.y.resize(n);
        for (int i = 0; i < n; ++i) rec.y[i] = comps[i].eval(x.data());
        for (int i = 0; i < n; ++i)
            if (i != spec.driven_index - 1)
                rec.drift.push_back(std::abs(rec.y[i] - y0[i]));
        if (branch) {
            rec.has_branch = true;
            rec.u = u_cur;
            rec.gamma = g_cur;
            if (with_residuals) {
                CF mu = (u_cur - u_prev) / spec.step;
                CF mg = (g_cur - g_prev) / spec.step;
                rec.res_u = (mu - rates->du_dr.eval(u_cur, g_cur)).real();
                rec.res_gamma = (mg - rates->dgamma_dr.eval(u_cur, g_cur)).real();
                rec.has_residuals = true;
            }
        }
        run.records.push_back(std::move(rec));
    };

    make_record(0, false);

    std::vector<CF> v(n), k1(n), k2(n), k3(n), k4(n), tmp(n);
    const double h = spec.step;
    for (long step = 1; step <= spec.max_steps; ++step) {
        if (spec.integrator == Integrator::Euler) {
            for (int i = 0; i < n; ++i) v[i] = vel[i].eval(x.data());
            for (int i = 0; i < n; ++i) x[i] += h * v[i];
        } else {
            for (int i = 0; i < n; ++i) k1[i] = vel[i].eval(x.data());
            for (int i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
            for (int i = 0; i < n; ++i) k2[i] = vel[i].eval(tmp.data());
            for (int i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
            for (int i = 0; i < n; ++i) k3[i] = vel[i].eval(tmp.data());
            for (int i = 0; i < n; ++i) tmp[i] = x[i] + h * k3[i];
            for (int i = 0; i < n; ++i) k4[i] = vel[i].eval(tmp.data());
            for (int i = 0; i < n; ++i)
                x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }

        if (!finite_state(x)) {
            run.status = RunStatus::Diverged;
            run.note = "state overflowed at step " + std::to_string(step);
            // Do not try to evaluate anything else at a non-finite state.
            TrajectoryRecord rec;
            rec.step = step;
            rec.r = static_cast<double>(step) * h;
            rec.x = x;
            rec.y.resize(n, CF(0.0, 0.0));
            run.records.push_back(std::move(rec));
            return run;
        }

        if (branch) {
            u_prev = u_cur;
            g_prev = g_cur;
            try {
                auto ug = solve_uv(*spec.rep, x, u_cur);
                u_cur = ug.first;
                g_cur = ug.second;
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::BranchAmbiguous ||
                    e.kind() == ErrorKind::ZeroLeadCoordinate) {
                    run.status = RunStatus::BranchAmbiguous;
                    run.note = std::string(e.what()) + " at step " + std::to_string(step);
                    make_record(step, false);
                    return run;
                }
                throw;
            }
        }

        if (step % stride == 0 || step == spec.max_steps) make_record(step, branch);
    }
    return run;
}

std::pair<double, double> rate_residuals(const TrajectoryRecord& prev,
                                         const TrajectoryRecord& cur,
                                         const UVRep& rep, const ABExpansion& exp) {
    if (!prev.has_branch || !cur.has_branch)
        fail(ErrorKind::BadInput, "records carry no branch data");
    double dr = cur.r - prev.r;
    if (dr <= 0.0) fail(ErrorKind::BadInput, "records are not consecutive");
    FlowRates fr = flow_rates(exp, rep);
    CF mu = (cur.u - prev.u) / dr;
    CF mg = (cur.gamma - prev.gamma) / dr;
    return {(mu - fr.du_dr.eval(cur.u, cur.gamma)).real(),
            (mg - fr.dgamma_dr.eval(cur.u, cur.gamma)).real()};
}

std::string csv_header(int arity, int driven_index) {
    std::string h = "step,r";
    for (int i = 1; i <= arity; ++i)
        h += ",x" + std::to_string(i) + "_re,x" + std::to_string(i) + "_im";
    for (int i = 1; i <= arity; ++i)
        h += ",y" + std::to_string(i) + "_re,y" + std::to_string(i) + "_im";
    h += ",u_re,u_im,gamma_re,gamma_im";
    for (int i = 1; i <= arity; ++i)
        if (i != driven_index) h += ",drift_" + std::to_string(i);
    h += ",res_u,res_gamma";
    return h;
}

void write_csv(const std::string& path, const FlowSpec& spec, const RunResult& run) {
    std::string tmp = path + ".tmp";
    FILE* f = std::fopen(tmp.c_str(), "wb");
    if (!f) fail(ErrorKind::BadInput, "cannot open '" + tmp + "' for writing");

    auto put = [&](double v) { std::fprintf(f, ",%.15g", v); };
    std::fprintf(f, "%s\n", csv_header(spec.map.arity, spec.driven_index).c_str());
    for (const auto& rec : run.records) {
        std::fprintf(f, "%ld", rec.step);
        put(rec.r);
        for (const CF& v : rec.x) {
            put(v.real());
            put(v.imag());
        }
        for (const CF& v : rec.y) {
            put(v.real());
            put(v.imag());
        }
        if (rec.has_branch) {
            put(rec.u.real());
            put(rec.u.imag());
            put(rec.gamma.real());
            put(rec.gamma.imag());
        } else {
            std::fprintf(f, ",nan,nan,nan,nan");
        }
        for (double d : rec.drift) put(d);
        for (size_t i = rec.drift.size(); i + 1 < static_cast<size_t>(spec.map.arity); ++i)
            std::fprintf(f, ",nan");
        if (rec.has_residuals) {
            put(rec.res_u);
            put(rec.res_gamma);
        } else {
            std::fprintf(f, ",nan,nan");
        }
        std::fprintf(f, "\n");
    }
    std::fclose(f);
    std::filesystem::rename(tmp, path);
}

} // namespace uvflow
