#include "oslash/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace oslash {

namespace {

Json integer_to_json(const mpz_class& z) {
    if (z.fits_slong_p()) return Json(z.get_si());
    return Json(z.get_str());
}

mpz_class integer_from_json(const Json& j) {
    if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
    if (j.is_string()) return mpz_class(j.get<std::string>());
    fail_input("expected an integer, got " + j.dump());
}

}  // namespace

Json rational_to_json(const Rational& q) {
    return Json::array({integer_to_json(q.get_num()), integer_to_json(q.get_den())});
}

Rational rational_from_json(const Json& j) {
    try {
        if (j.is_array()) {
            if (j.size() != 2) fail_input("rational pair must have two entries: " + j.dump());
            mpz_class den = integer_from_json(j[1]);
            if (den == 0) fail_input("zero denominator in " + j.dump());
            Rational q(integer_from_json(j[0]), den);
            q.canonicalize();
            return q;
        }
        if (j.is_number_integer()) return Rational(mpz_class(std::to_string(j.get<long long>())));
        if (j.is_number_float()) {
            // Go through the shortest decimal text so that 0.125 stays exact.
            return parse_rational(j.dump());
        }
        if (j.is_string()) return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument&) {
        fail_input("malformed rational " + j.dump());
    }
    fail_input("expected a rational, got " + j.dump());
}

Json real_to_json(double x) {
    if (std::isinf(x)) return Json(x > 0 ? "inf" : "-inf");
    if (std::isnan(x)) return Json("nan");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return Json(std::string(buf));
}

Json rationals_to_json(const std::vector<Rational>& qs) {
    Json out = Json::array();
    for (const auto& q : qs) out.push_back(rational_to_json(q));
    return out;
}

std::vector<Rational> rationals_from_json(const Json& j) {
    if (!j.is_array()) fail_input("expected an array of rationals");
    std::vector<Rational> out;
    for (const auto& x : j) out.push_back(rational_from_json(x));
    return out;
}

Json graph_to_json(const StGraph& g, const EdgeMeasure& nu, const std::vector<Rational>& lengths) {
    Json j;
    j["vertex_count"] = g.vertex_count();
    j["edge_count"] = g.edge_count();
    Json vertices = Json::array();
    for (VertexId v = 0; v < g.vertex_count(); ++v) vertices.push_back(g.vertex_label(v));
    j["vertices"] = std::move(vertices);
    Json edges = Json::array();
    for (EdgeId e = 0; e < g.edge_count(); ++e) edges.push_back(Json::array({g.edge(e).src, g.edge(e).dst}));
    j["edges"] = std::move(edges);
    if (g.has_terminals()) {
        j["source"] = g.source();
        j["sink"] = g.sink();
    }
    j["measure"] = rationals_to_json(nu.mass);
    j["lengths"] = rationals_to_json(lengths);
    auto mu = induced_vertex_measure(g, nu);
    j["vertex_measure"] = rationals_to_json(mu.mass);
    if (!g.warnings().empty()) j["warnings"] = g.warnings();
    return j;
}

std::string graph_to_dot(const StGraph& g, const EdgeMeasure& nu, const std::vector<Rational>& lengths) {
    std::ostringstream out;
    out << "digraph G {\n  rankdir=LR;\n";
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        out << "  v" << v << " [label=\"" << g.vertex_label(v) << "\"";
        if (g.has_terminals() && v == g.source()) out << ", shape=doublecircle";
        if (g.has_terminals() && v == g.sink()) out << ", shape=doubleoctagon";
        out << "];\n";
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        out << "  v" << g.edge(e).src << " -> v" << g.edge(e).dst << " [label=\"nu=" << to_string(nu.mass[e])
            << " d=" << to_string(lengths[e]) << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

GraphFile graph_from_json(const Json& j, StCheck st_check) {
    if (!j.is_object()) fail_input("graph file must be a JSON object");
    if (!j.contains("edges") || !j["edges"].is_array()) fail_input("graph file needs an \"edges\" array");
    std::vector<std::string> labels;
    if (j.contains("vertices")) {
        for (const auto& v : j["vertices"]) labels.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    } else {
        std::size_t n = 0;
        for (const auto& e : j["edges"]) {
            n = std::max<std::size_t>(n, std::max(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>()) + 1);
        }
        for (std::size_t v = 0; v < n; ++v) labels.push_back(std::to_string(v));
    }
    std::vector<Edge> edges;
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned()) {
            fail_input("edges must be [src, dst] pairs of vertex indices; got " + e.dump());
        }
        edges.push_back({e[0].get<VertexId>(), e[1].get<VertexId>()});
    }
    std::optional<VertexId> s, t;
    if (j.contains("source")) s = j["source"].get<VertexId>();
    if (j.contains("sink")) t = j["sink"].get<VertexId>();
    GraphFile out;
    out.graph = std::make_shared<StGraph>(std::move(labels), std::move(edges), s, t, std::vector<std::string>{}, st_check);
    if (j.contains("measure")) {
        out.nu = EdgeMeasure{rationals_from_json(j["measure"])};
        if (out.nu->mass.size() != out.graph->edge_count()) fail_input("measure length does not match the edge count");
    }
    if (j.contains("lengths")) {
        out.lengths = rationals_from_json(j["lengths"]);
        if (out.lengths->size() != out.graph->edge_count()) fail_input("lengths do not match the edge count");
    }
    return out;
}

namespace {

std::string csv_cell(const Json& v) {
    std::string s;
    if (v.is_string()) {
        s = v.get<std::string>();
    } else if (v.is_array() && v.size() == 2 && (v[0].is_number_integer() || v[0].is_string()) &&
               (v[1].is_number_integer() || v[1].is_string())) {
        // A rational pair.
        auto part = [](const Json& x) { return x.is_string() ? x.get<std::string>() : x.dump(); };
        s = part(v[0]) + "/" + part(v[1]);
    } else {
        s = v.dump();
    }
    if (s.find_first_of(",\"\n") != std::string::npos) {
        std::string quoted = "\"";
        for (char c : s) {
            if (c == '"') quoted += '"';
            quoted += c;
        }
        return quoted + "\"";
    }
    return s;
}

bool is_scalar_like(const Json& v) {
    if (v.is_primitive()) return true;
    return v.is_array() && v.size() == 2 && v[0].is_primitive() && v[1].is_primitive() && !v[0].is_boolean();
}

}  // namespace

std::string report_to_csv(const Json& report) {
    std::string header, row;
    for (auto it = report.begin(); it != report.end(); ++it) {
        if (!is_scalar_like(it.value())) continue;
        if (!header.empty()) {
            header += ',';
            row += ',';
        }
        header += it.key();
        row += csv_cell(it.value());
    }
    return header + "\n" + row + "\n";
}

}  // namespace oslash
