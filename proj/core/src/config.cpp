#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "gdnls/experiment.hpp"

namespace gdnls {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

[[noreturn]] void fail(const std::string& origin, std::size_t line, const std::string& what) {
    throw std::invalid_argument(origin + ":" + std::to_string(line) + ": " + what);
}

// Plain number, optionally with a "pi" suffix ("-64pi", "2pi", "pi").
double parse_number(const std::string& raw, const std::string& origin, std::size_t line) {
    std::string text = trim(raw);
    double factor = 1.0;
    if (text.size() >= 2 && text.substr(text.size() - 2) == "pi") {
        factor = std::numbers::pi;
        text = trim(text.substr(0, text.size() - 2));
        if (text.empty() || text == "-") text += "1";
    }
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) fail(origin, line, "malformed number '" + raw + "'");
        return v * factor;
    } catch (const std::invalid_argument&) {
        fail(origin, line, "malformed number '" + raw + "'");
    } catch (const std::out_of_range&) {
        fail(origin, line, "number out of range '" + raw + "'");
    }
}

void assign(ExperimentConfig& cfg, const std::string& section, const std::string& key,
            const std::string& value, const std::string& origin, std::size_t line) {
    auto num = [&] { return parse_number(value, origin, line); };
    auto count = [&]() -> std::size_t {
        const double v = num();
        if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
            fail(origin, line, "expected a nonnegative integer for " + section + "." + key);
        }
        return static_cast<std::size_t>(v);
    };

    if (section == "experiment") {
        if (key == "name") cfg.experiment = value;
        else if (key == "output_dir") cfg.output_dir = value;
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(count());
        else fail(origin, line, "unknown key '" + key + "' in [experiment]");
    } else if (section == "grid") {
        if (key == "x_min") cfg.grid.x_min = num();
        else if (key == "x_max") cfg.grid.x_max = num();
        else if (key == "m") cfg.grid.m = count();
        else fail(origin, line, "unknown key '" + key + "' in [grid]");
    } else if (section == "physics") {
        if (key == "k") cfg.physics.k = static_cast<int>(count());
        else if (key == "amplitude") cfg.physics.amplitude = num();
        else if (key == "profile") {
            if (value != "gaussian" && value != "modulated_gaussian") {
                fail(origin, line, "profile must be gaussian or modulated_gaussian");
            }
            cfg.physics.profile = value;
        } else if (key == "carrier") cfg.physics.carrier = num();
        else fail(origin, line, "unknown key '" + key + "' in [physics]");
    } else if (section == "solver") {
        if (key == "dt") cfg.solver.dt = num();
        else if (key == "store_every") cfg.solver.store_every = count();
        else fail(origin, line, "unknown key '" + key + "' in [solver]");
    } else if (section == "normal_form") {
        if (key == "n0") cfg.normal_form.n0 = num();
        else if (key == "m_star") cfg.normal_form.m_star = static_cast<int>(count());
        else if (key == "grid_cap") cfg.normal_form.grid_cap = count();
        else fail(origin, line, "unknown key '" + key + "' in [normal_form]");
    } else if (section == "waveop") {
        if (key == "delta_target") cfg.waveop.delta_target = num();
        else if (key == "tol_cauchy") cfg.waveop.tol_cauchy = num();
        else if (key == "schedule_step") cfg.waveop.schedule_step = num();
        else if (key == "n_max") cfg.waveop.n_max = static_cast<int>(count());
        else if (key == "horizon") cfg.waveop.horizon = num();
        else if (key == "probe_span") cfg.waveop.probe_span = num();
        else fail(origin, line, "unknown key '" + key + "' in [waveop]");
    } else {
        fail(origin, line, "unknown section [" + section + "]");
    }
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(origin, lineno, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(origin, lineno, "expected key = value");
        if (section.empty()) fail(origin, lineno, "key outside any [section]");
        assign(cfg, section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)),
               origin, lineno);
    }
    if (cfg.experiment.empty()) {
        throw std::invalid_argument(origin + ": missing experiment.name");
    }
    return cfg;
}

ExperimentConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path.string());
}

void apply_override(ExperimentConfig& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    const auto dot = assignment.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq) {
        throw std::invalid_argument("override must look like section.key=value: " + assignment);
    }
    assign(cfg, trim(assignment.substr(0, dot)), trim(assignment.substr(dot + 1, eq - dot - 1)),
           trim(assignment.substr(eq + 1)), "<override>", 0);
}

std::string canonical_config_text(const ExperimentConfig& cfg) {
    char buf[64];
    auto fmt = [&buf](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    std::ostringstream out;
    out << "[experiment]\nname = " << cfg.experiment << "\nseed = " << cfg.seed
        << "\noutput_dir = " << cfg.output_dir << "\n[grid]\nx_min = " << fmt(cfg.grid.x_min)
        << "\nx_max = " << fmt(cfg.grid.x_max) << "\nm = " << cfg.grid.m
        << "\n[physics]\nk = " << cfg.physics.k << "\namplitude = " << fmt(cfg.physics.amplitude)
        << "\nprofile = " << cfg.physics.profile << "\ncarrier = " << fmt(cfg.physics.carrier)
        << "\n[solver]\ndt = " << fmt(cfg.solver.dt) << "\nstore_every = " << cfg.solver.store_every
        << "\n[normal_form]\nn0 = " << fmt(cfg.normal_form.n0)
        << "\nm_star = " << cfg.normal_form.m_star << "\ngrid_cap = " << cfg.normal_form.grid_cap
        << "\n[waveop]\ndelta_target = " << fmt(cfg.waveop.delta_target)
        << "\ntol_cauchy = " << fmt(cfg.waveop.tol_cauchy)
        << "\nschedule_step = " << fmt(cfg.waveop.schedule_step) << "\nn_max = " << cfg.waveop.n_max
        << "\nhorizon = " << fmt(cfg.waveop.horizon)
        << "\nprobe_span = " << fmt(cfg.waveop.probe_span) << "\n";
    return out.str();
}

std::string config_hash(const ExperimentConfig& cfg) {
    const std::string text = canonical_config_text(cfg);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace gdnls
