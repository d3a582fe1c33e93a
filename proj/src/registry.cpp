#include "uvflow/registry.hpp"

namespace uvflow {

namespace {

Poly term(int arity, std::vector<int> e, long num, long den = 1) {
    return Poly::monomial(arity, e, Rat(num, den));
}

std::vector<Example> build_registry() {
    std::vector<Example> reg;

    // Planar quadratic pair (x1 x2, x1 x2 + x2^2): the non-Keller workhorse.
    // Component order puts the driven coordinate first; its branch curve is
    // x1 = u, x2 = gamma/u.
    {
        Example ex;
        ex.name = "f0";
        ex.summary = "(x1*x2, x1*x2 + x2^2) with branch x1 = u, x2 = gamma*u^-1";
        ex.map.arity = 2;
        ex.map.vars = {"x1", "x2"};
        ex.map.components = {term(2, {1, 1}, 1),
                             term(2, {1, 1}, 1) + term(2, {0, 2}, 1)};
        UVRep rep;
        rep.m = 1;
        rep.N = 2;
        rep.h = {Rat(0), Rat(0)};
        rep.role = {1, 2};
        rep.sign = 1;
        ex.rep = rep;
        reg.push_back(ex);
    }

    // Same map through the doubled chart x1 = v^2, x2 = gamma*v^-2.
    {
        Example ex = reg.back();
        ex.name = "f0-sqrt";
        ex.summary = "(x1*x2, x1*x2 + x2^2) with branch x1 = v^2, x2 = gamma*v^-2";
        UVRep rep;
        rep.m = 2;
        rep.N = 4;
        rep.h = {Rat(0), Rat(0), Rat(0), Rat(0)};
        rep.role = {1, 2};
        rep.sign = 1;
        ex.rep = rep;
        reg.push_back(ex);
    }

    // The quadratic pair composed with the Keller shear (z1, z2 + z1^2);
    // component order follows the long-run experiment (driven first).
    // Branch: z1 = v + gamma*v^-2, z2 = -v^2.
    {
        Example ex;
        ex.name = "f1";
        ex.summary = "shear composite with branch z1 = v + gamma*v^-2, z2 = -v^2";
        ex.map.arity = 2;
        ex.map.vars = {"z1", "z2"};
        // y1 = z1^4 + 2 z1^2 z2 + z1^3 + z1 z2 + z2^2, y2 = z1^3 + z1 z2
        ex.map.components = {term(2, {4, 0}, 1) + term(2, {2, 1}, 2) + term(2, {3, 0}, 1) +
                                 term(2, {1, 1}, 1) + term(2, {0, 2}, 1),
                             term(2, {3, 0}, 1) + term(2, {1, 1}, 1)};
        UVRep rep;
        rep.m = 2;
        rep.N = 4;
        rep.h = {Rat(0), Rat(1), Rat(0), Rat(0)};
        rep.role = {2, 1}; // z2 carries v^2 (negated), z1 carries gamma
        rep.sign = -1;
        ex.rep = rep;
        reg.push_back(ex);
    }

    // The Keller shear on its own.
    {
        Example ex;
        ex.name = "g0";
        ex.summary = "Keller shear (z1, z2 + z1^2)";
        ex.map.arity = 2;
        ex.map.vars = {"z1", "z2"};
        ex.map.components = {term(2, {1, 0}, 1),
                             term(2, {0, 1}, 1) + term(2, {2, 0}, 1)};
        reg.push_back(ex);
    }

    // Triangular Keller map in three variables.
    {
        Example ex;
        ex.name = "n3-triangular";
        ex.summary = "triangular Keller map (x1 + x2^2, x2 + x3^2, x3)";
        ex.map.arity = 3;
        ex.map.vars = {"x1", "x2", "x3"};
        ex.map.components = {term(3, {1, 0, 0}, 1) + term(3, {0, 2, 0}, 1),
                             term(3, {0, 1, 0}, 1) + term(3, {0, 0, 2}, 1),
                             term(3, {0, 0, 1}, 1)};
        reg.push_back(ex);
    }

    return reg;
}

std::vector<Experiment> build_experiments() {
    std::vector<Experiment> xs;

    {
        Experiment e;
        e.name = "f0-basic";
        e.example = "f0";
        e.description = "drive x1*x2 from (-7,3); the other component holds -12";
        e.driven_index = 1;
        e.step = 1e-5;
        e.max_steps = 800000;
        e.record_stride = 1000;
        e.x0 = {CF(-7.0, 0.0), CF(3.0, 0.0)};
        e.initial_branch = CF(-7.0, 0.0);
        xs.push_back(e);
    }

    auto sqrt_run = [](const std::string& name, double step, double branch,
                       long steps, long stride) {
        Experiment e;
        e.name = name;
        e.example = "f0-sqrt";
        e.description = "doubled chart from (9,3); branch rate residual probe";
        e.driven_index = 1;
        e.step = step;
        e.max_steps = steps;
        e.record_stride = stride;
        e.x0 = {CF(9.0, 0.0), CF(3.0, 0.0)};
        e.initial_branch = CF(branch, 0.0);
        return e;
    };
    xs.push_back(sqrt_run("f0-sqrt-res5", 1e-5, -3.0, 100, 1));
    xs.push_back(sqrt_run("f0-sqrt-res6", 1e-6, 3.0, 100, 1));
    xs.push_back(sqrt_run("f0-sqrt-res6-neg", 1e-6, -3.0, 100, 1));
    xs.push_back(sqrt_run("f0-sqrt-res7", 1e-7, -3.0, 100, 1));

    {
        Experiment e;
        e.name = "f1-long";
        e.example = "f1";
        e.description = "long shear-composite run from (5,-11); y2 holds 70, gamma -> 35";
        e.driven_index = 1;
        e.step = 1e-7;
        e.max_steps = 21000000;
        e.record_stride = 100000;
        e.x0 = {CF(5.0, 0.0), CF(-11.0, 0.0)};
        e.initial_branch = CF(3.0, 0.0);
        xs.push_back(e);
    }

    {
        Experiment e;
        e.name = "g0-keller";
        e.example = "g0";
        e.description = "Keller shear; the driven rate must be exactly 1";
        e.driven_index = 1;
        e.step = 1e-5;
        e.max_steps = 100000;
        e.record_stride = 1000;
        e.use_rep = false;
        e.x0 = {CF(0.5, 0.0), CF(-0.25, 0.0)};
        xs.push_back(e);
    }

    {
        Experiment e;
        e.name = "n3-triangular";
        e.example = "n3-triangular";
        e.description = "three-variable triangular Keller map, driven third component";
        e.driven_index = 3;
        e.step = 1e-5;
        e.max_steps = 100000;
        e.record_stride = 1000;
        e.use_rep = false;
        e.x0 = {CF(1.0, 0.0), CF(0.5, 0.0), CF(0.25, 0.0)};
        xs.push_back(e);
    }

    return xs;
}

} // namespace

const std::vector<Example>& registry() {
    static const std::vector<Example> reg = build_registry();
    return reg;
}

const Example* find_example(const std::string& name) {
    for (const auto& e : registry())
        if (e.name == name) return &e;
    return nullptr;
}

const std::vector<Experiment>& experiments() {
    static const std::vector<Experiment> xs = build_experiments();
    return xs;
}

const Experiment* find_experiment(const std::string& name) {
    for (const auto& e : experiments())
        if (e.name == name) return &e;
    return nullptr;
}

FlowSpec experiment_spec(const Experiment& e) {
    const Example* ex = find_example(e.example);
    if (!ex) fail(ErrorKind::BadInput, "experiment references unknown example '" + e.example + "'");
    FlowSpec spec;
    spec.map = ex->map;
    spec.driven_index = e.driven_index;
    spec.integrator = e.integrator;
    spec.step = e.step;
    spec.max_steps = e.max_steps;
    spec.record_stride = e.record_stride;
    if (e.use_rep && ex->rep) spec.rep = ex->rep;
    spec.initial_branch = e.initial_branch;
    return spec;
}

} // namespace uvflow
