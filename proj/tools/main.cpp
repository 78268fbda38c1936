// Command-line front end. Talks to the library only through oslash.h.
#include "oslash/oslash.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

using Json = nlohmann::ordered_json;

namespace {

constexpr int kInputExit = 2;

struct Common {
    std::string spec;
    unsigned power = 1;
    std::string measure = "uniform";
    std::string out;
    std::string csv;
    std::string config;
    unsigned jobs = 1;
    std::uint64_t seed = 0;
    bool allow_off_path = false;
};

struct GadgetDeleter {
    void operator()(osl_gadget* g) const { osl_gadget_destroy(g); }
};
using GadgetPtr = std::unique_ptr<osl_gadget, GadgetDeleter>;

int report_error(int status) {
    std::cerr << "error: " << osl_last_error() << "\n";
    return status;
}

bool write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return true;
    }
    std::ofstream f(path);
    if (!f) {
        std::cerr << "error: cannot write " << path << "\n";
        return false;
    }
    f << text;
    if (!text.empty() && text.back() != '\n') f << "\n";
    return true;
}

std::optional<Json> read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) {
        std::cerr << "error: cannot read " << path << "\n";
        return std::nullopt;
    }
    try {
        return Json::parse(f);
    } catch (const std::exception& e) {
        std::cerr << "error: " << path << " is not valid JSON: " << e.what() << "\n";
        return std::nullopt;
    }
}

// Options shared by every command; the config file supplies caps and may
// preset any option, command-line flags win.
std::optional<Json> base_options(const Common& c, CLI::App* sub) {
    Json o = Json::object();
    if (!c.config.empty()) {
        auto cfg = read_json_file(c.config);
        if (!cfg) return std::nullopt;
        if (!cfg->is_object()) {
            std::cerr << "error: config must be a JSON object\n";
            return std::nullopt;
        }
        o = *cfg;
    }
    if (!o.contains("power") || sub->count("--power")) o["power"] = c.power;
    if (!o.contains("jobs") || sub->count("--jobs")) o["jobs"] = c.jobs;
    if (!o.contains("seed") || sub->count("--seed")) o["seed"] = c.seed;
    return o;
}

// Writes the report (and CSV if asked) and maps the status to an exit code.
int finish(osl_status status, char*& report, const Common& c) {
    if (status != OSL_OK && status != OSL_NOT_CERTIFIED) return report_error(status);
    std::string text(report);
    osl_string_free(report);
    if (!write_text(c.out, text)) return kInputExit;
    if (!c.csv.empty()) {
        char* csv = nullptr;
        osl_status s = osl_report_csv(text.c_str(), &csv);
        if (s != OSL_OK) return report_error(s);
        bool ok = write_text(c.csv, csv);
        osl_string_free(csv);
        if (!ok) return kInputExit;
    }
    return status;
}

GadgetPtr open_gadget(const Common& c, int& status) {
    osl_gadget* g = nullptr;
    status = osl_gadget_create(c.spec.c_str(), c.measure.c_str(), c.allow_off_path ? 0 : 1, &g);
    if (status != OSL_OK) report_error(status);
    return GadgetPtr(g);
}

void add_common(CLI::App* sub, Common& c, bool with_spec) {
    if (with_spec) {
        sub->add_option("spec", c.spec, "diamond:k,m | laakso | path:k | graph.json")->required();
        sub->add_option("--power,-n", c.power, "Power n of G^(/)n")->check(CLI::PositiveNumber);
        sub->add_option("--measure", c.measure, "uniform | weighted | file");
        sub->add_flag("--allow-off-path", c.allow_off_path, "Warn instead of failing on vertices off every s-t path");
    }
    sub->add_option("--out,-o", c.out, "Report path (default stdout)");
    sub->add_option("--csv", c.csv, "Also write the scalar fields as CSV");
    sub->add_option("--config", c.config, "JSON file with caps and default options");
    sub->add_option("--jobs,-j", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--seed", c.seed, "Seed for randomized modes");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations on s-t graph powers: isoperimetry, spectral families, transport, bounds"};
    app.set_version_flag("--version", std::string(osl_version()));
    app.require_subcommand(1);

    Common c;
    std::string export_format = "json";
    std::optional<double> delta, beta;
    std::string mode = "auto", alpha = "1/2", method = "all", constants = "certified";
    unsigned samples = 16, verify_power = 4;
    bool include_functions = false;
    std::string instance_path;

    auto* build = app.add_subcommand("build", "Build G^(/)n with its measure and metric");
    add_common(build, c, true);
    build->add_option("--export", export_format, "json | dot")->check(CLI::IsMember({"json", "dot"}));

    auto* iso = app.add_subcommand("iso", "Minimum isoperimetric ratio and power conditions");
    add_common(iso, c, true);
    iso->add_option("--delta", delta, "Dimension delta (default: the iso dimension of the base)");
    iso->add_option("--mode", mode, "auto | exhaustive | connected | frontier");
    iso->add_option("--alpha", alpha, "p/q | grid | random | inf");
    iso->add_option("--samples", samples, "Number of random alpha draws");

    auto* spec = app.add_subcommand("spec", "Strongly orthogonal family and its growth profile");
    add_common(spec, c, true);
    spec->add_option("--delta", delta, "Spectral dimension (default log|E|/log k)");
    spec->add_option("--beta", beta, "Bandwidth (default k^n)");
    spec->add_flag("--functions", include_functions, "Include the function values");

    auto* w1 = app.add_subcommand("w1", "Exact 1-Wasserstein distance");
    add_common(w1, c, false);
    w1->add_option("instance", instance_path, "TransportInstance JSON file")->required();
    w1->add_option("--method", method, "coupling | flow | tree | all");

    auto* bound = app.add_subcommand("bound", "Distortion lower bound for diamond powers");
    add_common(bound, c, true);
    bound->add_option("--constants", constants, "paper | certified")->check(CLI::IsMember({"paper", "certified"}));
    bound->add_option("--verify-power", verify_power, "Highest power on which certified constants are rechecked");

    auto* selftest = app.add_subcommand("selftest", "Quick checks of known values");
    add_common(selftest, c, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kInputExit;
    }

    CLI::App* sub = app.get_subcommands().front();
    auto options = base_options(c, sub);
    if (!options) return kInputExit;
    Json& o = *options;
    char* report = nullptr;
    int status = 0;

    if (sub == w1) {
        auto inst = read_json_file(instance_path);
        if (!inst) return kInputExit;
        o["method"] = method;
        return finish(osl_w1(inst->dump().c_str(), o.dump().c_str(), &report), report, c);
    }
    if (sub == selftest) return finish(osl_selftest(o.dump().c_str(), &report), report, c);

    GadgetPtr g = open_gadget(c, status);
    if (!g) return status;

    if (sub == build) {
        osl_status s = osl_build(g.get(), export_format.c_str(), o.dump().c_str(), &report);
        if (s != OSL_OK) return report_error(s);
        bool ok = write_text(c.out, report);
        osl_string_free(report);
        return ok ? 0 : kInputExit;
    }
    if (sub == iso) {
        if (delta) o["delta"] = *delta;
        o["mode"] = mode;
        o["alpha"] = alpha;
        o["samples"] = samples;
        return finish(osl_iso(g.get(), o.dump().c_str(), &report), report, c);
    }
    if (sub == spec) {
        if (delta) o["delta"] = *delta;
        if (beta) o["beta"] = *beta;
        o["include_functions"] = include_functions;
        return finish(osl_spectral(g.get(), o.dump().c_str(), &report), report, c);
    }
    o["constants"] = constants;
    o["verify_power"] = verify_power;
    return finish(osl_bound(g.get(), o.dump().c_str(), &report), report, c);
}
