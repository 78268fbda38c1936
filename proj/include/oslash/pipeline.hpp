#pragma once

#include "oslash/graph.hpp"
#include "oslash/measure.hpp"
#include "oslash/serialize.hpp"

#include <optional>
#include <string>

namespace oslash {

// A base graph with its measure and normalized lengths, parsed from a spec
// string: "diamond:k,m", "laakso", "path:k", or a path to a graph JSON file.
struct Gadget {
    std::string spec;
    std::string family;  // diamond | laakso | path | file
    unsigned k = 0;
    unsigned m = 0;
    std::string measure;  // uniform | weighted | file
    GraphPtr graph;
    EdgeMeasure nu;
    std::vector<Rational> lengths;
};

Gadget make_gadget(const std::string& spec, const std::string& measure = "uniform", StCheck st_check = StCheck::Enforce);

Caps caps_from_json(const Json& options);

struct PipelineResult {
    Json report;
    int status = 0;  // 0 success / certified, 1 certification failed
};

// Graph of G^{⊘n} with measure and lengths.
Json build_graph_json(const Gadget& gadget, unsigned power, const Caps& caps);
std::string build_graph_dot(const Gadget& gadget, unsigned power, const Caps& caps);

// Options: power, delta, mode (auto|exhaustive|connected|frontier),
// alpha ("p/q" | grid | random | inf), samples, seed, caps.
PipelineResult run_iso(const Gadget& gadget, const Json& options);

// Options: power, delta, beta, include_functions, caps.
PipelineResult run_spectral(const Gadget& gadget, const Json& options);

// Instance: {"points", "dist"} or {"graph_ref" | "graph", "power"}, plus "mu", "nu".
// Options: method (coupling|flow|tree|all).
PipelineResult run_w1(const Json& instance, const Json& options);

// Options: power, constants (paper|certified), verify_power, caps.
PipelineResult run_bound(const Gadget& gadget, const Json& options);

// Quick end-to-end checks of known values.
PipelineResult run_selftest(const Json& options);

}  // namespace oslash
