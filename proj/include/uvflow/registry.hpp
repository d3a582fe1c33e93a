#ifndef UVFLOW_REGISTRY_HPP
#define UVFLOW_REGISTRY_HPP

#include <optional>
#include <string>
#include <vector>

#include "uvflow/flow.hpp"
#include "uvflow/poly.hpp"
#include "uvflow/uvrep.hpp"

namespace uvflow {

// A named map, optionally paired with the u-gamma representation of one of
// its finiteness-variety branches.
struct Example {
    std::string name;
    std::string summary;
    PolyMap map;
    std::optional<UVRep> rep;
};

// Built-in examples: the planar quadratic pair and its composites used by
// every experiment, plus small Keller maps for the conservation checks.
const std::vector<Example>& registry();
const Example* find_example(const std::string& name);

// A fully pinned simulation setup: every parameter the experiments need
// (driven component, step, branch seed, initial state) lives here so a run
// is reproducible from its name alone.
struct Experiment {
    std::string name;
    std::string example;
    std::string description;
    int driven_index = 1;
    Integrator integrator = Integrator::Euler;
    double step = 1e-5;
    long max_steps = 0;
    long record_stride = 1;
    bool use_rep = true;
    std::vector<CF> x0;
    CF initial_branch{1.0, 0.0};
};

const std::vector<Experiment>& experiments();
const Experiment* find_experiment(const std::string& name);

FlowSpec experiment_spec(const Experiment& e);

} // namespace uvflow

#endif
