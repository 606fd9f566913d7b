#include "cvqkd/cli_runner.hpp"

#include <atomic>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "cvqkd/errors.hpp"

namespace cvqkd::cli {

const char* kToolVersion = "0.1.0";

namespace {

namespace fs = std::filesystem;

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fmt_hex(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%a", v);
    return buf;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& text, const std::string& key, int line) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0')
        throw ConfigError(line, "bad numeric value for '" + key + "': " + text);
    return v;
}

int parse_int(const std::string& text, const std::string& key, int line) {
    const double v = parse_double(text, key, line);
    if (v != std::floor(v)) throw ConfigError(line, "'" + key + "' must be an integer");
    return static_cast<int>(v);
}

bool parse_bool(const std::string& text, const std::string& key, int line) {
    if (text == "on" || text == "true" || text == "1") return true;
    if (text == "off" || text == "false" || text == "0") return false;
    throw ConfigError(line, "'" + key + "' must be on/off");
}

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hash_hex(const std::string& s) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, fnv1a(s));
    return buf;
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        double lo = 0, hi = 0, step = 0;
        if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0 ||
            hi < lo)
            throw ConfigError(0, "bad range '" + text + "', expected lo:hi:step");
        for (int i = 0;; ++i) {
            const double v = lo + step * i;
            if (v > hi + 1e-9 * step) break;
            out.push_back(v);
        }
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(parse_double(item, "grid", 0));
    }
    if (out.empty()) throw ConfigError(0, "empty grid '" + text + "'");
    return out;
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value, int line) {
    try {
        if (key == "scenario") {
            cfg.scenario = value;
        } else if (key == "modulation") {
            cfg.modulation = ModulationSpec::parse(value);
        } else if (key == "shaping") {
            cfg.shaping = value;
        } else if (key == "zeta") {
            cfg.zeta = parse_double(value, key, line);
        } else if (key == "epsilon") {
            cfg.epsilon = parse_double(value, key, line);
        } else if (key == "kappa") {
            cfg.kappa = parse_double(value, key, line);
        } else if (key == "d") {
            cfg.d_km = parse_grid(value);
        } else if (key == "nbar") {
            cfg.nbar = parse_grid(value);
        } else if (key == "simpson_points") {
            cfg.numerics.grid.points = parse_int(value, key, line);
        } else if (key == "holevo_points") {
            cfg.numerics.grid.holevo_points = parse_int(value, key, line);
        } else if (key == "tail_sigmas") {
            cfg.numerics.grid.tail_sigmas = parse_double(value, key, line);
        } else if (key == "cutoff_cap") {
            cfg.numerics.cutoff_cap = parse_int(value, key, line);
        } else if (key == "threads") {
            cfg.numerics.threads = parse_int(value, key, line);
        } else if (key == "nu_max") {
            cfg.search.nu_hi = parse_double(value, key, line);
        } else if (key == "workers") {
            cfg.workers = parse_int(value, key, line);
        } else if (key == "output") {
            cfg.output = value;
        } else if (key == "cache") {
            cfg.cache_enabled = parse_bool(value, key, line);
        } else if (key == "cache_dir") {
            cfg.cache_dir = value;
        } else if (key == "timings") {
            cfg.timings = parse_bool(value, key, line);
        } else {
            throw ConfigError(line, "unknown key '" + key + "'");
        }
    } catch (const std::domain_error& e) {
        throw ConfigError(line, e.what());
    }
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(0, "cannot open config file '" + path + "'");
    RunConfig cfg;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.resize(hash);
        const std::string s = trim(raw);
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError(line, "expected key = value");
        apply_key(cfg, trim(s.substr(0, eq)), trim(s.substr(eq + 1)), line);
    }
    return cfg;
}

ShapingObjective RunConfig::objective() const {
    if (shaping == "uniform") return ShapingObjective::Uniform;
    if (shaping == "mb-mutualinfo") return ShapingObjective::MutualInfo;
    if (shaping == "mb-kgr") return ShapingObjective::Kgr;
    throw ConfigError(0, "unknown shaping '" + shaping + "'");
}

void RunConfig::validate() const {
    static const std::vector<std::string> scenarios = {"sweep-energy", "sweep-distance",
                                                       "optimize",     "ratio",
                                                       "dmax",         "gg02"};
    bool ok = false;
    for (const auto& s : scenarios) ok = ok || s == scenario;
    if (!ok) throw ConfigError(0, "unknown scenario '" + scenario + "'");
    objective();  // validates shaping

    if (!(zeta > 0.0) || zeta > 1.0) throw ConfigError(0, "zeta must be in (0, 1]");
    if (epsilon < 0.0) throw ConfigError(0, "epsilon must be nonnegative");
    if (!(kappa > 0.0)) throw ConfigError(0, "kappa must be positive");
    if (numerics.grid.points < 3 || numerics.grid.points % 2 == 0)
        throw ConfigError(0, "simpson_points must be odd and >= 3");
    if (numerics.grid.holevo_points < 3 || numerics.grid.holevo_points % 2 == 0)
        throw ConfigError(0, "holevo_points must be odd and >= 3");
    if (!(numerics.grid.tail_sigmas > 0.0)) throw ConfigError(0, "tail_sigmas must be positive");
    if (numerics.cutoff_cap < 16) throw ConfigError(0, "cutoff_cap must be >= 16");
    if (numerics.threads < 0) throw ConfigError(0, "threads must be nonnegative");
    if (!(search.nu_hi > 0.0)) throw ConfigError(0, "nu_max must be positive");
    if (workers < 1) throw ConfigError(0, "workers must be >= 1");
    if (output.empty()) throw ConfigError(0, "output path must be set");

    const bool is_gg02 = modulation.family == ModulationSpec::Family::Gg02;
    const bool is_qam = modulation.family == ModulationSpec::Family::Qam;
    if (!is_qam && shaping != "uniform")
        throw ConfigError(0, "shaping applies to QAM only");
    if (is_gg02 && epsilon > 0.0)
        throw ConfigError(0, "the GG02 closed forms cover the pure-loss channel only");
    if (epsilon > 0.0)
        for (double d : d_km)
            if (d == 0.0) throw ConfigError(0, "d = 0 with epsilon > 0 is singular");

    if (scenario == "gg02" && !is_gg02)
        throw ConfigError(0, "scenario gg02 needs modulation = gg02");
    if (scenario == "ratio" && !is_qam) throw ConfigError(0, "scenario ratio needs QAM");
    if (scenario == "dmax") {
        if (!(epsilon > 0.0)) throw ConfigError(0, "scenario dmax needs epsilon > 0");
        if (is_gg02) throw ConfigError(0, "scenario dmax does not support gg02");
    }
    if (scenario == "optimize" && d_km.size() != 1)
        throw ConfigError(0, "scenario optimize needs exactly one distance");
    if (scenario != "dmax" && d_km.empty())
        throw ConfigError(0, "scenario '" + scenario + "' needs a distance grid");
    if ((scenario == "sweep-energy" || scenario == "gg02") && nbar.empty())
        throw ConfigError(0, "scenario '" + scenario + "' needs an energy grid");
    for (double d : d_km)
        if (d < 0.0) throw ConfigError(0, "distances must be nonnegative");
    for (double n : nbar)
        if (!(n > 0.0)) throw ConfigError(0, "energies must be positive");
}

std::string RunConfig::canonical() const {
    std::ostringstream os;
    os << "v=" << kToolVersion << ";scenario=" << scenario
       << ";modulation=" << modulation.to_string() << ";shaping=" << shaping
       << ";zeta=" << fmt_hex(zeta) << ";epsilon=" << fmt_hex(epsilon)
       << ";kappa=" << fmt_hex(kappa) << ";d=";
    for (double d : d_km) os << fmt_hex(d) << ",";
    os << ";nbar=";
    for (double n : nbar) os << fmt_hex(n) << ",";
    os << ";points=" << numerics.grid.points << ";hpoints=" << numerics.grid.holevo_points
       << ";tail=" << fmt_hex(numerics.grid.tail_sigmas) << ";cap=" << numerics.cutoff_cap
       << ";nu_hi=" << fmt_hex(search.nu_hi);
    return os.str();
}

std::string csv_header() {
    return "scenario,modulation,shaping,d_km,eta,epsilon,nbar,nu,beta,delta,i_ab_bits,"
           "chi_be_bits,k_bits,zeta,cutoff_used,grid_points,wall_ms";
}

std::string to_csv(const ResultRow& r) {
    std::ostringstream os;
    os << r.scenario << ',' << r.modulation << ',' << r.shaping << ',' << fmt_double(r.d_km)
       << ',' << fmt_double(r.eta) << ',' << fmt_double(r.epsilon) << ',' << fmt_double(r.nbar)
       << ',' << fmt_double(r.nu) << ',' << fmt_double(r.beta) << ',' << fmt_double(r.delta)
       << ',' << fmt_double(r.i_ab_bits) << ',' << fmt_double(r.chi_be_bits) << ','
       << fmt_double(r.k_bits) << ',' << fmt_double(r.zeta) << ',' << r.cutoff_used << ','
       << r.grid_points << ',' << r.wall_ms;
    return os.str();
}

namespace {

std::string point_canonical(const PointKey& k) {
    std::ostringstream os;
    os << "v=" << kToolVersion << ";task=" << k.task << ";mod=" << k.modulation
       << ";shaping=" << k.shaping << ";d=" << fmt_hex(k.d_km) << ";eps=" << fmt_hex(k.epsilon)
       << ";kappa=" << fmt_hex(k.kappa) << ";zeta=" << fmt_hex(k.zeta)
       << ";nbar=" << fmt_hex(k.nbar) << ";points=" << k.simpson_points
       << ";hpoints=" << k.holevo_points << ";cap=" << k.cutoff_cap
       << ";tail=" << fmt_hex(k.tail_sigmas) << ";nu_hi=" << fmt_hex(k.nu_hi);
    return os.str();
}

struct RowCache {
    fs::path dir;
    bool enabled = false;

    bool load(const std::string& key_hash, const std::string& canonical, ResultRow& row) const {
        if (!enabled) return false;
        std::ifstream in(dir / (key_hash + ".kv"));
        if (!in) return false;
        std::map<std::string, std::string> kv;
        std::string line;
        while (std::getline(in, line)) {
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
        }
        const auto want = [&](const char* name) -> const std::string* {
            const auto it = kv.find(name);
            return it == kv.end() ? nullptr : &it->second;
        };
        const std::string* stored = want("canonical");
        if (!stored || *stored != canonical) return false;
        const char* fields[] = {"d_km", "eta",      "epsilon",    "nbar",  "nu",
                                "beta", "delta",    "i_ab",       "chi_be", "k",
                                "zeta", "cutoff",   "grid_points", "wall_ms"};
        for (const char* f : fields)
            if (!want(f)) return false;
        try {
            row.d_km = std::strtod(kv["d_km"].c_str(), nullptr);
            row.eta = std::strtod(kv["eta"].c_str(), nullptr);
            row.epsilon = std::strtod(kv["epsilon"].c_str(), nullptr);
            row.nbar = std::strtod(kv["nbar"].c_str(), nullptr);
            row.nu = std::strtod(kv["nu"].c_str(), nullptr);
            row.beta = std::strtod(kv["beta"].c_str(), nullptr);
            row.delta = std::strtod(kv["delta"].c_str(), nullptr);
            row.i_ab_bits = std::strtod(kv["i_ab"].c_str(), nullptr);
            row.chi_be_bits = std::strtod(kv["chi_be"].c_str(), nullptr);
            row.k_bits = std::strtod(kv["k"].c_str(), nullptr);
            row.zeta = std::strtod(kv["zeta"].c_str(), nullptr);
            row.cutoff_used = std::stoi(kv["cutoff"]);
            row.grid_points = std::stoi(kv["grid_points"]);
            row.wall_ms = std::stol(kv["wall_ms"]);
        } catch (const std::exception&) {
            return false;
        }
        return true;
    }

    void store(const std::string& key_hash, const std::string& canonical,
               const ResultRow& row) const {
        if (!enabled) return;
        std::error_code ec;
        fs::create_directories(dir, ec);
        std::ofstream out(dir / (key_hash + ".kv"), std::ios::trunc);
        if (!out) return;
        out << "canonical = " << canonical << '\n';
        out << "d_km = " << fmt_hex(row.d_km) << '\n';
        out << "eta = " << fmt_hex(row.eta) << '\n';
        out << "epsilon = " << fmt_hex(row.epsilon) << '\n';
        out << "nbar = " << fmt_hex(row.nbar) << '\n';
        out << "nu = " << fmt_hex(row.nu) << '\n';
        out << "beta = " << fmt_hex(row.beta) << '\n';
        out << "delta = " << fmt_hex(row.delta) << '\n';
        out << "i_ab = " << fmt_hex(row.i_ab_bits) << '\n';
        out << "chi_be = " << fmt_hex(row.chi_be_bits) << '\n';
        out << "k = " << fmt_hex(row.k_bits) << '\n';
        out << "zeta = " << fmt_hex(row.zeta) << '\n';
        out << "cutoff = " << row.cutoff_used << '\n';
        out << "grid_points = " << row.grid_points << '\n';
        out << "wall_ms = " << row.wall_ms << '\n';
    }
};

struct Task {
    std::string description;
    PointKey key;
    std::function<ResultRow()> compute;
};

ResultRow row_from_point(const RunConfig& cfg, const std::string& task, const KgrPoint& p,
                         const std::string& shaping) {
    ResultRow row;
    row.scenario = cfg.scenario;
    row.modulation = cfg.modulation.to_string();
    row.shaping = shaping;
    row.d_km = p.channel.distance_km;
    row.eta = p.channel.eta;
    row.epsilon = p.channel.epsilon;
    row.nbar = p.nbar;
    row.nu = p.nu;
    row.beta = p.beta;
    row.delta = p.delta;
    row.i_ab_bits = p.i_ab;
    row.chi_be_bits = p.chi_be;
    row.k_bits = p.k;
    row.zeta = p.zeta;
    row.cutoff_used = p.cutoff_used;
    row.grid_points = p.grid_points;
    (void)task;
    return row;
}

KgrPoint evaluate_point(const RunConfig& cfg, const NumericsConfig& num, double d, double nbar) {
    const ChannelParams ch = ChannelParams::from_distance(d, cfg.kappa, cfg.epsilon);
    switch (cfg.modulation.family) {
        case ModulationSpec::Family::Gg02:
            return gg02_kgr(nbar, ch, cfg.zeta);
        case ModulationSpec::Family::Psk:
            return kgr_at(build_psk(cfg.modulation.order, nbar), ch, cfg.zeta, num);
        case ModulationSpec::Family::Qam: {
            double nu = 0.0;
            if (cfg.objective() == ShapingObjective::MutualInfo)
                nu = optimize_nu_mutual_info(cfg.modulation.order, nbar, ch, num.grid,
                                             cfg.search);
            else if (cfg.objective() == ShapingObjective::Kgr)
                nu = optimize_nu_kgr(cfg.modulation.order, nbar, ch, cfg.zeta, num, cfg.search);
            return kgr_at(build_qam(cfg.modulation.order, nbar, nu), ch, cfg.zeta, num);
        }
    }
    throw std::logic_error("unreachable");
}

KgrPoint evaluate_optimum(const RunConfig& cfg, const NumericsConfig& num, double d,
                          ShapingObjective objective) {
    const ChannelParams ch = ChannelParams::from_distance(d, cfg.kappa, cfg.epsilon);
    return optimize_energy(cfg.modulation, ch, cfg.zeta, objective, num).best;
}

PointKey base_key(const RunConfig& cfg, const std::string& task, double d, double nbar) {
    PointKey k;
    k.task = task;
    k.modulation = cfg.modulation.to_string();
    k.shaping = cfg.shaping;
    k.d_km = d;
    k.epsilon = cfg.epsilon;
    k.kappa = cfg.kappa;
    k.zeta = cfg.zeta;
    k.nbar = nbar;
    k.simpson_points = cfg.numerics.grid.points;
    k.holevo_points = cfg.numerics.grid.holevo_points;
    k.cutoff_cap = cfg.numerics.cutoff_cap;
    k.tail_sigmas = cfg.numerics.grid.tail_sigmas;
    k.nu_hi = cfg.search.nu_hi;
    return k;
}

}  // namespace

std::string cache_key(const PointKey& key) { return hash_hex(point_canonical(key)); }

int run(const RunConfig& cfg) {
    try {
        cfg.validate();
    } catch (const ConfigError& e) {
        if (e.line_number > 0)
            std::fprintf(stderr, "config:%d: %s\n", e.line_number, e.what());
        else
            std::fprintf(stderr, "config: %s\n", e.what());
        return 2;
    }

    // Inner chi evaluations use the process cores when the pool is serial;
    // a parallel pool gets single-threaded points instead.
    NumericsConfig num = cfg.numerics;
    if (cfg.workers > 1) num.threads = 1;

    std::vector<Task> tasks;
    const auto add_point_task = [&](const std::string& task_name, double d, double nbar,
                                    const std::string& shaping) {
        std::ostringstream desc;
        desc << task_name << " d=" << fmt_double(d);
        if (!std::isnan(nbar)) desc << " nbar=" << fmt_double(nbar);
        if (!shaping.empty()) desc << " shaping=" << shaping;
        PointKey key = base_key(cfg, task_name, d, nbar);
        if (!shaping.empty()) key.shaping = shaping;
        tasks.push_back(Task{desc.str(), key, {}});
    };

    const double nan = std::nan("");
    if (cfg.scenario == "sweep-energy" || cfg.scenario == "gg02") {
        for (double d : cfg.d_km)
            for (double n : cfg.nbar) {
                add_point_task(cfg.scenario, d, n, "");
                tasks.back().compute = [&cfg, &num, d, n] {
                    return row_from_point(cfg, cfg.scenario,
                                          evaluate_point(cfg, num, d, n), cfg.shaping);
                };
            }
    } else if (cfg.scenario == "sweep-distance" || cfg.scenario == "optimize") {
        for (double d : cfg.d_km) {
            add_point_task(cfg.scenario, d, nan, "");
            tasks.back().compute = [&cfg, &num, d] {
                return row_from_point(cfg, cfg.scenario,
                                      evaluate_optimum(cfg, num, d, cfg.objective()),
                                      cfg.shaping);
            };
        }
    } else if (cfg.scenario == "ratio") {
        for (double d : cfg.d_km) {
            for (const auto obj :
                 {ShapingObjective::Uniform, ShapingObjective::MutualInfo}) {
                const std::string shaping = to_string(obj);
                add_point_task("ratio", d, nan, shaping);
                tasks.back().compute = [&cfg, &num, d, obj, shaping] {
                    return row_from_point(cfg, "ratio", evaluate_optimum(cfg, num, d, obj),
                                          shaping);
                };
            }
        }
    } else if (cfg.scenario == "dmax") {
        add_point_task("dmax", 0.0, nan, "");
        tasks.back().compute = [&cfg, &num] {
            const DmaxResult r =
                find_d_max(cfg.modulation, cfg.epsilon, cfg.zeta, cfg.objective(), num,
                           cfg.kappa);
            ResultRow row;
            row.scenario = cfg.scenario;
            row.modulation = cfg.modulation.to_string();
            row.shaping = cfg.shaping;
            row.d_km = r.d_max_km;
            row.epsilon = cfg.epsilon;
            row.zeta = cfg.zeta;
            row.eta = r.bounded ? 1.0 : 0.0;  // bounded flag; see README
            return row;
        };
    }

    RowCache cache;
    cache.enabled = cfg.cache_enabled;
    if (cache.enabled) {
        if (!cfg.cache_dir.empty()) {
            cache.dir = cfg.cache_dir;
        } else if (const char* env = std::getenv("CVQKD_CACHE_DIR"); env && *env) {
            cache.dir = env;
        } else {
            cache.dir = ".cvqkd_cache";
        }
    }

    const int n_tasks = static_cast<int>(tasks.size());
    std::vector<ResultRow> rows(n_tasks);
    std::vector<char> hit(n_tasks, 0);
    std::vector<std::exception_ptr> errors(n_tasks);
    std::atomic<int> next{0};

    const auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n_tasks) return;
            try {
                const std::string canonical = point_canonical(tasks[i].key);
                const std::string key = hash_hex(canonical);
                ResultRow row;
                if (cache.load(key, canonical, row)) {
                    hit[i] = 1;
                    rows[i] = row;
                    continue;
                }
                const auto t0 = std::chrono::steady_clock::now();
                row = tasks[i].compute();
                const auto t1 = std::chrono::steady_clock::now();
                row.wall_ms =
                    cfg.timings
                        ? std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()
                        : 0;
                cache.store(key, canonical, row);
                rows[i] = row;
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    if (cfg.workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < cfg.workers; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    for (int i = 0; i < n_tasks; ++i) {
        if (!errors[i]) continue;
        try {
            std::rethrow_exception(errors[i]);
        } catch (const std::exception& e) {
            std::fprintf(stderr, "numerical failure at %s: %s\n", tasks[i].description.c_str(),
                         e.what());
        }
        return 3;
    }

    // Summary for the ratio scenario: mean R over d >= 80 km.
    double mean_ratio = 0.0;
    int averaged = 0;
    if (cfg.scenario == "ratio") {
        for (std::size_t i = 0; i + 1 < rows.size(); i += 2) {
            const ResultRow& uni = rows[i];
            const ResultRow& shaped = rows[i + 1];
            if (uni.d_km >= 80.0 && uni.k_bits > 0.0 && shaped.k_bits > 0.0) {
                mean_ratio += shaped.k_bits / uni.k_bits;
                ++averaged;
            }
        }
        if (averaged > 0) mean_ratio /= averaged;
    }

    {
        std::ofstream out(cfg.output, std::ios::trunc | std::ios::binary);
        if (!out) {
            std::fprintf(stderr, "cannot write output '%s'\n", cfg.output.c_str());
            return 2;
        }
        out << csv_header() << '\n';
        for (const auto& row : rows) out << to_csv(row) << '\n';
        if (cfg.scenario == "ratio") {
            ResultRow summary;
            summary.scenario = "ratio";
            summary.modulation = cfg.modulation.to_string();
            summary.shaping = "ratio-mean";
            summary.zeta = cfg.zeta;
            summary.epsilon = cfg.epsilon;
            summary.k_bits = mean_ratio;
            summary.grid_points = averaged;
            out << to_csv(summary) << '\n';
        }
    }

    {
        std::ofstream mf(cfg.output + ".manifest", std::ios::trunc | std::ios::binary);
        mf << "tool = cvqkd " << kToolVersion << '\n';
        mf << "config_hash = " << hash_hex(cfg.canonical()) << '\n';
        mf << "scenario = " << cfg.scenario << '\n';
        mf << "modulation = " << cfg.modulation.to_string() << '\n';
        mf << "shaping = " << cfg.shaping << '\n';
        mf << "zeta = " << fmt_double(cfg.zeta) << '\n';
        mf << "epsilon = " << fmt_double(cfg.epsilon) << '\n';
        mf << "kappa = " << fmt_double(cfg.kappa) << '\n';
        mf << "simpson_points = " << cfg.numerics.grid.points << '\n';
        mf << "holevo_points = " << cfg.numerics.grid.holevo_points << '\n';
        mf << "cutoff_cap = " << cfg.numerics.cutoff_cap << '\n';
        mf << "workers = " << cfg.workers << '\n';
        mf << "cache = " << (cfg.cache_enabled ? "on" : "off") << '\n';
        mf << "rows = " << n_tasks << '\n';
        int hits = 0;
        for (char h : hit) hits += h;
        mf << "cache_hits = " << hits << '\n';
        for (int i = 0; i < n_tasks; ++i)
            mf << "task " << i << " (" << tasks[i].description
               << ") = " << (hit[i] ? "hit" : "miss") << '\n';
        if (cfg.scenario == "ratio") {
            mf << "mean_ratio = " << fmt_double(mean_ratio) << '\n';
            mf << "mean_ratio_points = " << averaged << '\n';
        }
    }
    return 0;
}

}  // namespace cvqkd::cli
