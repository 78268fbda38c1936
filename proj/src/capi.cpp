#include "oslash/oslash.h"

#include "oslash/graph.hpp"
#include "oslash/pipeline.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct osl_gadget {
    oslash::Gadget gadget;
};

namespace {

thread_local std::string last_error;

char* duplicate(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

oslash::Json parse_options(const char* text) {
    if (!text || !*text) return oslash::Json::object();
    oslash::Json j;
    try {
        j = oslash::Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        oslash::fail_input(std::string("options are not valid JSON: ") + e.what());
    }
    if (!j.is_object()) oslash::fail_input("options must be a JSON object");
    return j;
}

template <class F>
osl_status guarded(F&& body) {
    last_error.clear();
    try {
        return body();
    } catch (const oslash::Error& e) {
        last_error = e.what();
        switch (e.kind()) {
            case oslash::ErrorKind::Input: return OSL_INPUT_ERROR;
            case oslash::ErrorKind::Resource: return OSL_RESOURCE_ERROR;
            case oslash::ErrorKind::Internal: return OSL_INTERNAL_ERROR;
        }
    } catch (const nlohmann::json::exception& e) {
        last_error = std::string("bad JSON value: ") + e.what();
        return OSL_INPUT_ERROR;
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return OSL_RESOURCE_ERROR;
    } catch (const std::exception& e) {
        last_error = e.what();
    } catch (...) {
        last_error = "unknown failure";
    }
    return OSL_INTERNAL_ERROR;
}

osl_status emit(const oslash::PipelineResult& r, char** out) {
    *out = duplicate(r.report.dump(2));
    return r.status == 0 ? OSL_OK : OSL_NOT_CERTIFIED;
}

osl_status need(const void* p, const char* what) {
    if (!p) {
        last_error = std::string(what) + " is NULL";
        return OSL_INPUT_ERROR;
    }
    return OSL_OK;
}

}  // namespace

extern "C" {

const char* osl_version(void) { return "1.0.0"; }

const char* osl_last_error(void) { return last_error.c_str(); }

void osl_string_free(char* s) { std::free(s); }

osl_status osl_gadget_create(const char* spec, const char* measure, int st_check, osl_gadget** out) {
    if (need(spec, "spec") || need(out, "out")) return OSL_INPUT_ERROR;
    *out = nullptr;
    return guarded([&] {
        auto* g = new osl_gadget{oslash::make_gadget(spec, measure ? measure : "uniform",
                                                     st_check ? oslash::StCheck::Enforce : oslash::StCheck::Warn)};
        *out = g;
        return OSL_OK;
    });
}

void osl_gadget_destroy(osl_gadget* g) { delete g; }

osl_status osl_gadget_counts(const osl_gadget* g, unsigned power, unsigned long long* vertices,
                             unsigned long long* edges) {
    if (need(g, "gadget") || need(vertices, "vertices") || need(edges, "edges")) return OSL_INPUT_ERROR;
    return guarded([&] {
        if (power == 0) oslash::fail_input("power must be at least 1");
        const auto& base = *g->gadget.graph;
        auto [v, e] = oslash::oslash_power_counts(base.vertex_count(), base.edge_count(), power);
        *vertices = v;
        *edges = e;
        return OSL_OK;
    });
}

osl_status osl_build(const osl_gadget* g, const char* format, const char* options_json, char** out) {
    if (need(g, "gadget") || need(out, "out")) return OSL_INPUT_ERROR;
    *out = nullptr;
    return guarded([&] {
        auto options = parse_options(options_json);
        const std::string fmt = format ? format : "json";
        const auto caps = oslash::caps_from_json(options);
        const unsigned n = options.value("power", 1u);
        if (n == 0) oslash::fail_input("power must be at least 1");
        if (fmt == "json") {
            *out = duplicate(oslash::build_graph_json(g->gadget, n, caps).dump(2));
        } else if (fmt == "dot") {
            *out = duplicate(oslash::build_graph_dot(g->gadget, n, caps));
        } else {
            oslash::fail_input("export format must be json or dot");
        }
        return OSL_OK;
    });
}

osl_status osl_iso(const osl_gadget* g, const char* options_json, char** out) {
    if (need(g, "gadget") || need(out, "out")) return OSL_INPUT_ERROR;
    *out = nullptr;
    return guarded([&] { return emit(oslash::run_iso(g->gadget, parse_options(options_json)), out); });
}

osl_status osl_spectral(const osl_gadget* g, const char* options_json, char** out) {
    if (need(g, "gadget") || need(out, "out")) return OSL_INPUT_ERROR;
    *out = nullptr;
    return guarded([&] { return emit(oslash::run_spectral(g->gadget, parse_options(options_json)), out); });
}

osl_status osl_w1(const char* instance_json, const char* options_json, char** out) {
    if (need(instance_json, "instance") || need(out, "out")) return OSL_INPUT_ERROR;
    *out = nullptr;
    return guarded([&] {
        oslash::Json inst;
        try {
            inst = oslash::Json::parse(instance_json);
        } catch (const nlohmann::json::exception& e) {
            oslash::fail_input(std::string("instance is not valid JSON: ") + e.what());
        }
        return emit(oslash::run_w1(inst, parse_options(options_json)), out);
    });
}

osl_status osl_bound(const osl_gadget* g, const char* options_json, char** out) {
    if (need(g, "gadget") || need(out, "out")) return OSL_INPUT_ERROR;
    *out = nullptr;
    return guarded([&] { return emit(oslash::run_bound(g->gadget, parse_options(options_json)), out); });
}

osl_status osl_selftest(const char* options_json, char** out) {
    if (need(out, "out")) return OSL_INPUT_ERROR;
    *out = nullptr;
    return guarded([&] { return emit(oslash::run_selftest(parse_options(options_json)), out); });
}

osl_status osl_report_csv(const char* report_json, char** out) {
    if (need(report_json, "report") || need(out, "out")) return OSL_INPUT_ERROR;
    *out = nullptr;
    return guarded([&] {
        oslash::Json r;
        try {
            r = oslash::Json::parse(report_json);
        } catch (const nlohmann::json::exception& e) {
            oslash::fail_input(std::string("report is not valid JSON: ") + e.what());
        }
        *out = duplicate(oslash::report_to_csv(r));
        return OSL_OK;
    });
}

}  // extern "C"
