// Command-line front end. Settings come from defaults, then an optional
// `key = value` config file, then flags; later sources win.

#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qfilter/experiments.hpp"
#include "qfilter/figures.hpp"
#include "qfilter/report.hpp"

namespace qfilter::cli {

enum class Command { Figure, Point, SweepK, SweepNoise, Esd };
enum class Format { Csv, Json };

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int io_error = 1;
inline constexpr int usage = 2;
inline constexpr int never_entangled = 3;
inline constexpr int no_death_found = 4;
inline constexpr int filter_annihilated = 5;
} // namespace exit_code

class usage_error : public std::invalid_argument {
public:
    explicit usage_error(const std::string& what) : std::invalid_argument(what) {}
};

struct RunConfig {
    Command command = Command::Point;
    int figure = 0;
    StateName state = StateName::W3;
    double k = 0.5;
    std::optional<std::vector<double>> k_list;
    double gamma_t = 0.0;
    double gamma_t_min = 0.0;
    double gamma_t_max = 4.0;
    std::optional<int> points;
    QubitPair pair = QubitPair::P23;
    double tol = 1e-6;
    double horizon = 20.0;
    std::string output_path;
    std::optional<Format> format;
};

// Ordered (key, value) pairs; keys are long flag names without dashes.
using Settings = std::vector<std::pair<std::string, std::string>>;

namespace detail {

inline std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

inline double parse_double(const std::string& key, const std::string& text) {
    const std::string s = trim(text);
    double value = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(value))
        throw usage_error("--" + key + ": '" + text + "' is not a finite number");
    return value;
}

inline int parse_int(const std::string& key, const std::string& text) {
    const std::string s = trim(text);
    int value = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw usage_error("--" + key + ": '" + text + "' is not an integer");
    return value;
}

inline void require_unit_interval(const std::string& key, double v) {
    if (v < 0.0 || v > 1.0) throw usage_error("--" + key + ": " + format_number(v) + " outside [0, 1]");
}

inline std::vector<double> parse_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        if (trim(item).empty()) continue;
        out.push_back(parse_double(key, item));
    }
    if (out.empty()) throw usage_error("--" + key + ": empty list");
    return out;
}

} // namespace detail

/// Plain `key = value` lines; '#' starts a comment. Keys may carry leading
/// dashes.
inline Settings parse_config(std::istream& in) {
    Settings out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string body = detail::trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw usage_error("config line " + std::to_string(line_no) + ": expected 'key = value'");
        std::string key = detail::trim(body.substr(0, eq));
        while (!key.empty() && key.front() == '-') key.erase(key.begin());
        if (key.empty()) throw usage_error("config line " + std::to_string(line_no) + ": missing key");
        out.emplace_back(std::move(key), detail::trim(body.substr(eq + 1)));
    }
    return out;
}

inline void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
    using namespace detail;
    if (key == "state") {
        const auto s = parse_state_name(trim(value));
        if (!s) throw usage_error("--state: '" + value + "' is not one of W3, GHZ3, WWbar3");
        cfg.state = *s;
    } else if (key == "k") {
        cfg.k = parse_double(key, value);
        require_unit_interval(key, cfg.k);
    } else if (key == "k-list") {
        auto list = parse_list(key, value);
        for (double k : list) require_unit_interval(key, k);
        cfg.k_list = std::move(list);
    } else if (key == "gamma-t") {
        cfg.gamma_t = parse_double(key, value);
        if (cfg.gamma_t < 0.0) throw usage_error("--gamma-t: must be >= 0");
    } else if (key == "gamma-t-min") {
        cfg.gamma_t_min = parse_double(key, value);
        if (cfg.gamma_t_min < 0.0) throw usage_error("--gamma-t-min: must be >= 0");
    } else if (key == "gamma-t-max") {
        cfg.gamma_t_max = parse_double(key, value);
        if (cfg.gamma_t_max < 0.0) throw usage_error("--gamma-t-max: must be >= 0");
    } else if (key == "points") {
        const int p = parse_int(key, value);
        if (p < 1) throw usage_error("--points: must be >= 1");
        cfg.points = p;
    } else if (key == "pair") {
        const auto p = parse_pair(trim(value));
        if (!p) throw usage_error("--pair: '" + value + "' is not one of 12, 13, 23");
        cfg.pair = *p;
    } else if (key == "tol") {
        cfg.tol = parse_double(key, value);
        if (cfg.tol <= 0.0) throw usage_error("--tol: must be > 0");
    } else if (key == "horizon") {
        cfg.horizon = parse_double(key, value);
        if (cfg.horizon <= 0.0) throw usage_error("--horizon: must be > 0");
    } else if (key == "out") {
        cfg.output_path = trim(value);
    } else if (key == "format") {
        const std::string f = qfilter::detail::lowered(trim(value));
        if (f == "csv") cfg.format = Format::Csv;
        else if (f == "json") cfg.format = Format::Json;
        else throw usage_error("--format: '" + value + "' is not csv or json");
    } else {
        throw usage_error("unknown setting '" + key + "'");
    }
}

inline void apply_settings(RunConfig& cfg, const Settings& settings) {
    for (const auto& [key, value] : settings) apply_setting(cfg, key, value);
}

inline void validate(const RunConfig& cfg) {
    if (cfg.command == Command::Figure && !valid_figure(cfg.figure))
        throw usage_error("figure: number must be in 1..8, got " + std::to_string(cfg.figure));
    if (cfg.gamma_t_max < cfg.gamma_t_min) throw usage_error("--gamma-t-max: must be >= --gamma-t-min");
}

inline Format default_format(Command c) {
    return (c == Command::Point || c == Command::Esd) ? Format::Json : Format::Csv;
}

inline nlohmann::ordered_json row_json(const Table& t, std::size_t row) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        const Cell& cell = t.rows[row][c];
        // same 12 significant digits as the CSV writer
        if (const auto* d = std::get_if<double>(&cell)) obj[t.columns[c]] = std::stod(format_number(*d));
        else obj[t.columns[c]] = std::get<std::string>(cell);
    }
    return obj;
}

// Single-row results of `point` and `esd` print as one object, everything
// else as an array of row objects.
inline void write_table(std::ostream& os, const Table& t, Format format, bool single_object) {
    if (format == Format::Csv) {
        write_csv(os, t);
        return;
    }
    nlohmann::ordered_json doc;
    if (single_object && t.rows.size() == 1) {
        doc = row_json(t, 0);
    } else {
        doc = nlohmann::ordered_json::array();
        for (std::size_t r = 0; r < t.rows.size(); ++r) doc.push_back(row_json(t, r));
    }
    os << doc.dump(2) << '\n';
}

inline Table build_table(const RunConfig& cfg) {
    switch (cfg.command) {
    case Command::Figure: {
        FigureOptions opt;
        if (cfg.figure <= 4) {
            if (cfg.points) opt.k_points = *cfg.points;
            opt.k_grid = cfg.k_list;
        } else {
            if (cfg.points) opt.gamma_t_points = *cfg.points;
            if (cfg.k_list) opt.k_family = *cfg.k_list;
            opt.gamma_t_min = cfg.gamma_t_min;
            opt.gamma_t_max = cfg.gamma_t_max;
        }
        return figure_table(cfg.figure, opt);
    }
    case Command::Point:
        return records_table({evaluate_point(cfg.state, cfg.k, cfg.gamma_t)});
    case Command::SweepK: {
        const auto grid = cfg.k_list ? *cfg.k_list : linspace(0.0, 1.0, cfg.points.value_or(201));
        return records_table(sweep_filter(cfg.state, grid));
    }
    case Command::SweepNoise: {
        const auto grid = linspace(cfg.gamma_t_min, cfg.gamma_t_max, cfg.points.value_or(401));
        const auto ks = cfg.k_list ? *cfg.k_list : std::vector<double>{cfg.k};
        std::vector<SweepRecord> all;
        for (double k : ks) {
            auto part = sweep_noise_filter(cfg.state, k, grid);
            all.insert(all.end(), part.begin(), part.end());
        }
        return records_table(all);
    }
    case Command::Esd: {
        EsdOptions opt;
        opt.tol = cfg.tol;
        opt.horizon = cfg.horizon;
        const auto r = esd_onset(cfg.state, cfg.k, cfg.pair, opt);
        return Table{{"state", "k", "pair", "gamma_t_star", "bracket_lo", "bracket_hi", "bracket_width"},
                     {{std::string(to_string(cfg.state)), cfg.k, std::string(to_string(cfg.pair)), r.gamma_t_star,
                       r.bracket_lo, r.bracket_hi, r.bracket_hi - r.bracket_lo}}};
    }
    }
    throw usage_error("unknown command");
}

/// Runs one command; returns the process exit code.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        validate(cfg);
        const Table table = build_table(cfg);
        const Format format = cfg.format.value_or(default_format(cfg.command));
        const bool single = (cfg.command == Command::Point || cfg.command == Command::Esd);
        if (cfg.output_path.empty()) {
            write_table(out, table, format, single);
            return exit_code::ok;
        }
        std::ofstream file(cfg.output_path, std::ios::binary);
        if (!file) {
            err << "error: cannot open '" << cfg.output_path << "' for writing\n";
            return exit_code::io_error;
        }
        write_table(file, table, format, single);
        if (!file.flush()) {
            err << "error: failed writing '" << cfg.output_path << "'\n";
            return exit_code::io_error;
        }
        return exit_code::ok;
    } catch (const usage_error& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const contract_error& e) {
        err << "invalid input: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const never_entangled& e) {
        err << "never entangled: " << e.what() << '\n';
        return exit_code::never_entangled;
    } catch (const no_death_found& e) {
        err << "no death found: " << e.what() << '\n';
        return exit_code::no_death_found;
    } catch (const filter_annihilates_state& e) {
        err << "filter failed: " << e.what() << '\n';
        return exit_code::filter_annihilated;
    }
}

inline int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Local filtering and depolarizing noise on 3-qubit states"};
    app.require_subcommand(1);
    app.fallthrough();

    static const char* const keys[] = {"state", "k", "k-list", "gamma-t", "gamma-t-min", "gamma-t-max",
                                       "points", "pair", "tol", "horizon", "out", "format"};
    static const char* const help[] = {"W3, GHZ3 or WWbar3",
                                       "filtering parameter in [0, 1]",
                                       "comma-separated k values",
                                       "noise time for `point`",
                                       "start of the gamma_t grid",
                                       "end of the gamma_t grid",
                                       "grid size",
                                       "qubit pair: 12, 13 or 23",
                                       "ESD bisection tolerance",
                                       "ESD search horizon in gamma_t",
                                       "output file (default stdout)",
                                       "csv or json"};
    std::map<std::string, std::string> flag_values;
    std::vector<std::pair<std::string, CLI::Option*>> flag_options;
    for (std::size_t i = 0; i < std::size(keys); ++i)
        flag_options.emplace_back(keys[i], app.add_option(std::string("--") + keys[i], flag_values[keys[i]], help[i]));
    std::string config_path;
    app.add_option("--config", config_path, "key = value settings file");

    std::string figure_number;
    auto* figure = app.add_subcommand("figure", "regenerate the series behind figure <n> (1..8)");
    figure->add_option("n", figure_number, "figure number")->required();
    auto* point = app.add_subcommand("point", "measure a single (state, k, gamma_t)");
    auto* sweep_k = app.add_subcommand("sweep-k", "filter sweep over k");
    auto* sweep_noise = app.add_subcommand("sweep-noise", "noise-then-filter sweep over gamma_t");
    auto* esd = app.add_subcommand("esd", "onset of entanglement sudden death");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_code::ok : exit_code::usage;
    }

    RunConfig cfg;
    try {
        if (figure->parsed()) {
            cfg.command = Command::Figure;
            cfg.figure = detail::parse_int("figure", figure_number);
        } else if (point->parsed()) {
            cfg.command = Command::Point;
        } else if (sweep_k->parsed()) {
            cfg.command = Command::SweepK;
        } else if (sweep_noise->parsed()) {
            cfg.command = Command::SweepNoise;
        } else if (esd->parsed()) {
            cfg.command = Command::Esd;
        }

        if (!config_path.empty()) {
            std::ifstream file(config_path);
            if (!file) {
                err << "error: cannot read config '" << config_path << "'\n";
                return exit_code::io_error;
            }
            apply_settings(cfg, parse_config(file));
        }
        for (const auto& [key, option] : flag_options)
            if (option->count() > 0) apply_setting(cfg, key, flag_values[key]);
    } catch (const usage_error& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_code::usage;
    }
    return run(cfg, out, err);
}

inline int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("qfilter");
    for (const auto& a : args) argv.push_back(a.c_str());
    return main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace qfilter::cli
