#include "kicklue/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kicklue {

std::string format_full(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

long long parse_int(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        const long long x = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return x;
    } catch (...) {
        throw std::invalid_argument("config: bad integer for '" + key + "': " + v);
    }
}

double parse_real(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return x;
    } catch (...) {
        throw std::invalid_argument("config: bad number for '" + key + "': " + v);
    }
}

std::uint64_t parse_u64(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        const unsigned long long x = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return x;
    } catch (...) {
        throw std::invalid_argument("config: bad seed for '" + key + "': " + v);
    }
}

}  // namespace

void write_spectra_file(const std::string& path, const SpectraEnsemble& ensemble) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    const EnsembleMetadata& m = ensemble.meta();
    out << "# format_version = 1\n";
    out << "# N = " << m.n << "\n";
    out << "# source = " << m.source << "\n";
    out << "# k1 = " << format_full(m.k1) << "\n";
    out << "# k2 = " << format_full(m.k2) << "\n";
    out << "# cpp = " << format_full(m.cpp) << "\n";
    out << "# sigma = " << format_full(m.sigma) << "\n";
    out << "# burn_in = " << m.burn_in << "\n";
    out << "# stride = " << m.stride << "\n";
    out << "# seed = " << m.seed << "\n";
    out << "# count = " << m.count << "\n";
    out << "# fixed_trace = " << (m.fixed_trace ? 1 : 0) << "\n";
    out << "# init = " << m.init << "\n";
    out << "# trajectories = " << m.trajectories << "\n";
    for (std::size_t s = 0; s < ensemble.count(); ++s) {
        const auto spec = ensemble.spectrum(s);
        for (std::size_t i = 0; i < spec.size(); ++i) {
            if (i) out << ' ';
            out << format_full(spec[i]);
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

SpectraEnsemble read_spectra_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);

    EnsembleMetadata meta;
    std::vector<double> levels;
    bool seen_version = false;
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            const auto eq = t.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = trim(t.substr(1, eq - 1));
            const std::string value = trim(t.substr(eq + 1));
            if (key == "format_version") {
                if (value != "1")
                    throw std::runtime_error("spectra file: unsupported format_version " + value);
                seen_version = true;
            } else if (key == "N")
                meta.n = static_cast<int>(parse_int(value, key));
            else if (key == "source")
                meta.source = value;
            else if (key == "k1")
                meta.k1 = parse_real(value, key);
            else if (key == "k2")
                meta.k2 = parse_real(value, key);
            else if (key == "cpp")
                meta.cpp = parse_real(value, key);
            else if (key == "sigma")
                meta.sigma = parse_real(value, key);
            else if (key == "burn_in")
                meta.burn_in = value;
            else if (key == "stride")
                meta.stride = static_cast<int>(parse_int(value, key));
            else if (key == "seed")
                meta.seed = parse_u64(value, key);
            else if (key == "count")
                meta.count = static_cast<int>(parse_int(value, key));
            else if (key == "fixed_trace")
                meta.fixed_trace = parse_int(value, key) != 0;
            else if (key == "init")
                meta.init = value;
            else if (key == "trajectories")
                meta.trajectories = static_cast<int>(parse_int(value, key));
            else
                throw std::runtime_error("spectra file: unknown header key '" + key + "'");
            continue;
        }
        if (meta.n < 1) throw std::runtime_error("spectra file: data before N header");
        std::istringstream row(t);
        double x = 0.0;
        int got = 0;
        while (row >> x) {
            levels.push_back(x);
            ++got;
        }
        if (got != meta.n)
            throw std::runtime_error("spectra file: row with " + std::to_string(got) +
                                     " values, expected " + std::to_string(meta.n));
    }
    if (!seen_version) throw std::runtime_error("spectra file: missing format_version header");
    SpectraEnsemble ens(std::move(meta), std::move(levels));
    if (ens.count() != static_cast<std::size_t>(ens.meta().count))
        throw std::runtime_error("spectra file: row count disagrees with count header");
    ens.validate();
    return ens;
}

void write_table(const std::string& path, const std::vector<std::string>& header_lines,
                 const std::vector<std::string>& column_names,
                 const std::vector<std::vector<double>>& columns) {
    if (columns.empty() || column_names.size() != columns.size())
        throw std::invalid_argument("write_table: column/name mismatch");
    const std::size_t rows = columns.front().size();
    for (const auto& c : columns)
        if (c.size() != rows) throw std::invalid_argument("write_table: ragged columns");

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    for (const auto& h : header_lines) out << "# " << h << "\n";
    out << "# columns:";
    for (const auto& name : column_names) out << ' ' << name;
    out << '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) out << ' ';
            out << format_full(columns[c][r]);
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_entropy_series(const std::string& path, const RunConfig& cfg,
                          const std::vector<EntropyRecord>& series) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "# N = " << cfg.n << "\n";
    out << "# k1 = " << format_full(cfg.params.k1) << "\n";
    out << "# k2 = " << format_full(cfg.params.k2) << "\n";
    out << "# cpp = " << format_full(cfg.params.cpp) << "\n";
    out << "# sigma = " << format_full(cfg.effective_sigma()) << "\n";
    out << "# seed = " << cfg.seed << "\n";
    out << "# columns: step S lambda1_sq lambda2_sq lambda3_sq\n";
    for (const auto& r : series) {
        out << r.step << ' ' << format_full(r.entropy) << ' ' << format_full(r.lambda1_sq)
            << ' ' << format_full(r.lambda2_sq) << ' ' << format_full(r.lambda3_sq) << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<std::pair<std::string, std::string>> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    std::vector<std::pair<std::string, std::string>> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: line " + std::to_string(lineno) +
                                     " is not 'key = value'");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error("config: empty key on line " + std::to_string(lineno));
        kv.emplace_back(key, value);
    }
    return kv;
}

void apply_run_config(RunConfig& cfg, const std::vector<std::pair<std::string, std::string>>& kv,
                      const std::vector<std::string>& extra_allowed,
                      std::map<std::string, std::string>& extras) {
    for (const auto& [key, value] : kv) {
        if (key == "n" || key == "N")
            cfg.n = static_cast<int>(parse_int(value, key));
        else if (key == "k1")
            cfg.params.k1 = parse_real(value, key);
        else if (key == "k2")
            cfg.params.k2 = parse_real(value, key);
        else if (key == "cpp")
            cfg.params.cpp = parse_real(value, key);
        else if (key == "init") {
            if (value == "fixed")
                cfg.init = InitProtocol::fixed;
            else if (value == "random")
                cfg.init = InitProtocol::random;
            else
                throw std::invalid_argument("config: init must be 'fixed' or 'random'");
        } else if (key == "x0")
            cfg.x0 = parse_real(value, key);
        else if (key == "p0")
            cfg.p0 = parse_real(value, key);
        else if (key == "sigma")
            cfg.sigma = value == "auto" ? 0.0 : parse_real(value, key);
        else if (key == "burn_in")
            cfg.burn_in = value == "auto" ? -1 : parse_int(value, key);
        else if (key == "stride")
            cfg.stride = static_cast<int>(parse_int(value, key));
        else if (key == "count")
            cfg.count = static_cast<int>(parse_int(value, key));
        else if (key == "trajectories")
            cfg.trajectories = static_cast<int>(parse_int(value, key));
        else if (key == "seed")
            cfg.seed = parse_u64(value, key);
        else if (std::find(extra_allowed.begin(), extra_allowed.end(), key) !=
                 extra_allowed.end())
            extras[key] = value;
        else
            throw std::invalid_argument("config: unknown key '" + key + "'");
    }
}

}  // namespace kicklue
