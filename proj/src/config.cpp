#include "qjump/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace qjump {

void RunConfig::validate() const {
    model.validate();
    if (!(horizon_t > 0)) throw ConfigError("run.horizon_t must be > 0");
    if (n_trajectories < 1) throw ConfigError("run.n_trajectories must be >= 1");
    if (threads < 0) throw ConfigError("run.threads must be >= 0");
    if (!(grid_dt > 0)) throw ConfigError("run.grid_dt must be > 0");
    for (double g : sweep_gamma_x)
        if (!(g >= 0 && g <= 1)) throw ConfigError("sweep.gamma_x values must be in [0,1]");
    for (double g : sweep_gamma_y)
        if (!(g >= 0 && g <= 1)) throw ConfigError("sweep.gamma_y values must be in [0,1]");
    if (!(hist_bin_width > 0)) throw ConfigError("histogram.bin_width must be > 0");
    if (!(hist_hi > hist_lo)) throw ConfigError("histogram range must be non-empty");
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("invalid number for key '" + key + "': '" + value + "'");
    }
}

long parse_long(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        const long v = std::stol(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("invalid integer for key '" + key + "': '" + value + "'");
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        const unsigned long long v = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("invalid integer for key '" + key + "': '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError("invalid boolean for key '" + key + "': '" + value + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(key, item));
    }
    return out;
}

} // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::string section = "run";
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(raw);
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = trim(line.substr(0, hash));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "model" && section != "run" && section != "sweep" &&
                section != "histogram")
                throw ConfigError("unknown section '" + section + "'");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string qual = section + "." + key;

        if (section == "model") {
            if (key == "omega0") cfg.model.omega0 = parse_double(qual, value);
            else if (key == "beta_x_hot") cfg.model.beta_x_hot = parse_double(qual, value);
            else if (key == "beta_x_cold") cfg.model.beta_x_cold = parse_double(qual, value);
            else if (key == "beta_y_hot") cfg.model.beta_y_hot = parse_double(qual, value);
            else if (key == "beta_y_cold") cfg.model.beta_y_cold = parse_double(qual, value);
            else if (key == "gamma_x") cfg.model.gamma_x = parse_double(qual, value);
            else if (key == "gamma_y") cfg.model.gamma_y = parse_double(qual, value);
            else if (key == "lambda") cfg.model.lambda = parse_double(qual, value);
            else if (key == "bath_rate_x_hot") cfg.model.bath_rates[0] = parse_double(qual, value);
            else if (key == "bath_rate_x_cold") cfg.model.bath_rates[1] = parse_double(qual, value);
            else if (key == "bath_rate_y_hot") cfg.model.bath_rates[2] = parse_double(qual, value);
            else if (key == "bath_rate_y_cold") cfg.model.bath_rates[3] = parse_double(qual, value);
            else if (key == "drive") cfg.model.drive = parse_bool(qual, value);
            else if (key == "drive_strength") cfg.model.drive_strength = parse_double(qual, value);
            else throw ConfigError("unknown key '" + qual + "'");
        } else if (section == "run") {
            if (key == "horizon_t") cfg.horizon_t = parse_double(qual, value);
            else if (key == "n_trajectories") cfg.n_trajectories = parse_long(qual, value);
            else if (key == "seed") cfg.seed = parse_u64(qual, value);
            else if (key == "threads") cfg.threads = static_cast<int>(parse_long(qual, value));
            else if (key == "grid_dt") cfg.grid_dt = parse_double(qual, value);
            else if (key == "output_dir") cfg.output_dir = value;
            else if (key == "all_visible") cfg.all_visible = parse_bool(qual, value);
            else throw ConfigError("unknown key '" + qual + "'");
        } else if (section == "sweep") {
            if (key == "gamma_x") cfg.sweep_gamma_x = parse_list(qual, value);
            else if (key == "gamma_y") cfg.sweep_gamma_y = parse_list(qual, value);
            else if (key == "diagonal") cfg.sweep_diagonal = parse_bool(qual, value);
            else throw ConfigError("unknown key '" + qual + "'");
        } else {  // histogram
            if (key == "lo") cfg.hist_lo = parse_double(qual, value);
            else if (key == "hi") cfg.hist_hi = parse_double(qual, value);
            else if (key == "bin_width") cfg.hist_bin_width = parse_double(qual, value);
            else throw ConfigError("unknown key '" + qual + "'");
        }
    }
    cfg.validate();
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::string fmt(const std::vector<double>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += fmt(v[i]);
    }
    return out;
}

} // namespace

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream os;
    os << "[model]\n"
       << "omega0 = " << fmt(cfg.model.omega0) << "\n"
       << "beta_x_hot = " << fmt(cfg.model.beta_x_hot) << "\n"
       << "beta_x_cold = " << fmt(cfg.model.beta_x_cold) << "\n"
       << "beta_y_hot = " << fmt(cfg.model.beta_y_hot) << "\n"
       << "beta_y_cold = " << fmt(cfg.model.beta_y_cold) << "\n"
       << "gamma_x = " << fmt(cfg.model.gamma_x) << "\n"
       << "gamma_y = " << fmt(cfg.model.gamma_y) << "\n"
       << "lambda = " << fmt(cfg.model.lambda) << "\n"
       << "bath_rate_x_hot = " << fmt(cfg.model.bath_rates[0]) << "\n"
       << "bath_rate_x_cold = " << fmt(cfg.model.bath_rates[1]) << "\n"
       << "bath_rate_y_hot = " << fmt(cfg.model.bath_rates[2]) << "\n"
       << "bath_rate_y_cold = " << fmt(cfg.model.bath_rates[3]) << "\n"
       << "drive = " << (cfg.model.drive ? "true" : "false") << "\n"
       << "drive_strength = " << fmt(cfg.model.drive_strength) << "\n"
       << "\n[run]\n"
       << "horizon_t = " << fmt(cfg.horizon_t) << "\n"
       << "n_trajectories = " << cfg.n_trajectories << "\n"
       << "seed = " << cfg.seed << "\n"
       << "threads = " << cfg.threads << "\n"
       << "grid_dt = " << fmt(cfg.grid_dt) << "\n"
       << "output_dir = " << cfg.output_dir << "\n"
       << "all_visible = " << (cfg.all_visible ? "true" : "false") << "\n";
    if (!cfg.sweep_gamma_x.empty() || !cfg.sweep_gamma_y.empty() || cfg.sweep_diagonal) {
        os << "\n[sweep]\n";
        if (!cfg.sweep_gamma_x.empty()) os << "gamma_x = " << fmt(cfg.sweep_gamma_x) << "\n";
        if (!cfg.sweep_gamma_y.empty()) os << "gamma_y = " << fmt(cfg.sweep_gamma_y) << "\n";
        os << "diagonal = " << (cfg.sweep_diagonal ? "true" : "false") << "\n";
    }
    os << "\n[histogram]\n"
       << "lo = " << fmt(cfg.hist_lo) << "\n"
       << "hi = " << fmt(cfg.hist_hi) << "\n"
       << "bin_width = " << fmt(cfg.hist_bin_width) << "\n";
    return os.str();
}

} // namespace qjump
