// Copyright 2026 The tthpo Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tthpo/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <nlohmann/json.hpp>

#include "tthpo/benchmarks.hpp"
#include "tthpo/error.hpp"

namespace tthpo {

namespace {

std::atomic<bool> g_interrupt{false};

extern "C" void on_sigint(int) { g_interrupt.store(true); }

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::string fmt(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

template <class T> bool parse_number(std::string_view s, T &out) {
    const char *first = s.data();
    const char *last = s.data() + s.size();
    if constexpr (std::is_unsigned_v<T>) {
        if (!s.empty() && s.front() == '-') {
            return false;
        }
    }
    auto res = std::from_chars(first, last, out);
    return res.ec == std::errc{} && res.ptr == last;
}

[[noreturn]] void config_error(const std::string &section, const std::string &key,
                               const std::string &msg) {
    fail(ErrorKind::ConfigInvalid, "[" + section + "] " + key + ": " + msg);
}

class Section {
  public:
    Section(std::string name, const boost::property_tree::ptree *tree)
        : name_(std::move(name)), tree_(tree) {}

    std::optional<std::string> raw(const std::string &key) const {
        if (!tree_) {
            return std::nullopt;
        }
        auto v = tree_->get_optional<std::string>(boost::property_tree::ptree::path_type(key, '\0'));
        if (!v) {
            return std::nullopt;
        }
        return trim(*v);
    }

    template <class T> void get(const std::string &key, T &out) const {
        auto v = raw(key);
        if (!v) {
            return;
        }
        if constexpr (std::is_same_v<T, bool>) {
            if (*v == "true" || *v == "1" || *v == "yes") {
                out = true;
            } else if (*v == "false" || *v == "0" || *v == "no") {
                out = false;
            } else {
                config_error(name_, key, "expected true or false, got '" + *v + "'");
            }
        } else if constexpr (std::is_same_v<T, std::string>) {
            out = *v;
        } else {
            T parsed{};
            if (!parse_number(*v, parsed)) {
                config_error(name_, key,
                             std::string(std::is_floating_point_v<T> ? "expected a number"
                                                                      : "expected a non-negative integer") +
                                 ", got '" + *v + "'");
            }
            out = parsed;
        }
    }

    template <class T> void get(const std::string &key, std::optional<T> &out) const {
        if (raw(key)) {
            T v{};
            get(key, v);
            out = v;
        }
    }

    const std::string &name() const { return name_; }

  private:
    std::string name_;
    const boost::property_tree::ptree *tree_;
};

const std::map<std::string, std::set<std::string>> &known_keys() {
    static const std::map<std::string, std::set<std::string>> keys{
        {"experiment", {"method", "objective", "trials", "base_seed", "output", "record_wall_ms"}},
        {"space", {"dims", "points"}},
        {"tt",
         {"rank", "sweeps", "eval_budget", "maxvol_tol", "maxvol_max_iters", "transform",
          "transform_width"}},
        {"gs", {"eval_budget"}},
        {"model",
         {"train_size", "test_size", "raw_dim", "separation", "offset", "data_seed", "epochs",
          "batch_size", "weight_decay", "grad_clip", "quantum_gradient"}},
        {"axis:", {"lower", "upper", "points", "kind"}},
    };
    return keys;
}

std::optional<std::size_t> opt_r(const ExperimentConfig &cfg) {
    if (cfg.method == Method::Tt) {
        return cfg.tt.rank;
    }
    return std::nullopt;
}

std::vector<std::size_t> suite_dims(const ExperimentConfig &cfg) {
    if (cfg.objective == ObjectiveKind::ModelClassical ||
        cfg.objective == ObjectiveKind::ModelHybrid) {
        return {experiment_space(cfg, 0).dim()};
    }
    return cfg.dims;
}

bool is_model(ObjectiveKind k) {
    return k == ObjectiveKind::ModelClassical || k == ObjectiveKind::ModelHybrid;
}

ModelVariant model_variant(ObjectiveKind k) {
    return k == ObjectiveKind::ModelHybrid ? ModelVariant::Hybrid : ModelVariant::Classical;
}

// Score in the optimizer's maximizing convention.
Objective trial_objective(const ExperimentConfig &cfg, const SearchSpace &space,
                          std::uint64_t seed, const SplitDataset *data) {
    Objective base;
    switch (cfg.objective) {
    case ObjectiveKind::Schwefel:
        base = [](const GridPoint &p) { return -schwefel(p.values); };
        break;
    case ObjectiveKind::Vincent:
        base = [](const GridPoint &p) { return -vincent(p.values); };
        break;
    case ObjectiveKind::FletcherPowell: {
        auto table = std::make_shared<FletcherPowellTable>(
            FletcherPowellInstance::generate(space.dim(), seed), space);
        base = [table](const GridPoint &p) { return -(*table)(p.indices); };
        break;
    }
    case ObjectiveKind::ModelClassical:
    case ObjectiveKind::ModelHybrid: {
        ModelObjectiveSetup setup;
        setup.variant = model_variant(cfg.objective);
        setup.data = *data;
        setup.train = cfg.model.train;
        setup.train.seed = seed;
        setup.model_seed = seed;
        base = make_accuracy_objective(space, std::move(setup));
        break;
    }
    }
    return [base = std::move(base)](const GridPoint &p) {
        if (g_interrupt.load(std::memory_order_relaxed)) {
            fail(ErrorKind::Interrupted, "interrupted");
        }
        return base(p);
    };
}

std::vector<DimSummary> summarize_by_dim(const std::vector<TrialRow> &rows) {
    std::vector<DimSummary> out;
    std::size_t begin = 0;
    while (begin < rows.size()) {
        std::size_t end = begin;
        while (end < rows.size() && rows[end].d == rows[begin].d) {
            ++end;
        }
        out.push_back(summarize(std::span<const TrialRow>(rows.data() + begin, end - begin)));
        begin = end;
    }
    return out;
}

std::vector<std::string> split_csv(const std::string &line) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(line);
    while (std::getline(is, cur, ',')) {
        out.push_back(cur);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

} // namespace

std::string_view to_string(Method m) noexcept { return m == Method::Tt ? "tt" : "gs"; }

std::string_view to_string(ObjectiveKind k) noexcept {
    switch (k) {
    case ObjectiveKind::Schwefel:
        return "schwefel";
    case ObjectiveKind::FletcherPowell:
        return "fletcher_powell";
    case ObjectiveKind::Vincent:
        return "vincent";
    case ObjectiveKind::ModelClassical:
        return "model_classical";
    case ObjectiveKind::ModelHybrid:
        return "model_hybrid";
    }
    return "unknown";
}

Method parse_method(std::string_view s) {
    if (s == "tt") {
        return Method::Tt;
    }
    if (s == "gs") {
        return Method::Gs;
    }
    fail(ErrorKind::ConfigInvalid, "[experiment] method: expected tt or gs, got '" +
                                       std::string(s) + "'");
}

ObjectiveKind parse_objective(std::string_view s) {
    for (auto k : {ObjectiveKind::Schwefel, ObjectiveKind::FletcherPowell, ObjectiveKind::Vincent,
                   ObjectiveKind::ModelClassical, ObjectiveKind::ModelHybrid}) {
        if (s == to_string(k)) {
            return k;
        }
    }
    fail(ErrorKind::ConfigInvalid,
         "[experiment] objective: expected schwefel, fletcher_powell, vincent, "
         "model_classical or model_hybrid, got '" +
             std::string(s) + "'");
}

bool is_minimization(ObjectiveKind k) noexcept { return !is_model(k); }

SearchSpace experiment_space(const ExperimentConfig &cfg, std::size_t d) {
    if (is_model(cfg.objective)) {
        if (!cfg.axes.empty()) {
            return SearchSpace(cfg.axes);
        }
        return model_search_space(model_variant(cfg.objective), cfg.points);
    }
    BenchmarkKind kind = BenchmarkKind::Schwefel;
    if (cfg.objective == ObjectiveKind::FletcherPowell) {
        kind = BenchmarkKind::FletcherPowell;
    } else if (cfg.objective == ObjectiveKind::Vincent) {
        kind = BenchmarkKind::Vincent;
    }
    const Bounds b = benchmark_bounds(kind);
    return SearchSpace::uniform(d, b.lower, b.upper, cfg.points);
}

void validate(const ExperimentConfig &cfg) {
    if (cfg.trials < 1) {
        config_error("experiment", "trials", "must be >= 1");
    }
    if (!cfg.axes.empty() && !is_model(cfg.objective)) {
        config_error("axis", "*", "axis sections are only used by model objectives");
    }
    if (!is_model(cfg.objective)) {
        if (cfg.dims.empty()) {
            config_error("space", "dims", "needs at least one dimension");
        }
        for (auto d : cfg.dims) {
            if (d < 1) {
                config_error("space", "dims", "dimensions must be >= 1");
            }
        }
    }
    try {
        validate(cfg.tt);
    } catch (const Error &e) {
        config_error("tt", "*", e.what());
    }
    if (cfg.gs.eval_budget && *cfg.gs.eval_budget < 1) {
        config_error("gs", "eval_budget", "must be >= 1");
    }
    std::vector<std::size_t> dims = is_model(cfg.objective) ? std::vector<std::size_t>{0} : cfg.dims;
    for (auto d : dims) {
        SearchSpace space;
        try {
            space = experiment_space(cfg, d);
        } catch (const Error &e) {
            config_error(is_model(cfg.objective) && !cfg.axes.empty() ? "axis" : "space", "*",
                         e.what());
        }
        if (cfg.method == Method::Tt && space.dim() > 1 && cfg.tt.rank > space.min_points()) {
            config_error("tt", "rank",
                         "rank " + std::to_string(cfg.tt.rank) + " exceeds the smallest axis (" +
                             std::to_string(space.min_points()) + " points)");
        }
        if (is_model(cfg.objective)) {
            try {
                resolve_hyperparams(space, space.resolve(GridIndex(space.dim(), 0)),
                                    model_variant(cfg.objective));
            } catch (const Error &e) {
                config_error("axis", "*", e.what());
            }
        }
    }
    if (is_model(cfg.objective)) {
        try {
            validate(cfg.model.train);
        } catch (const Error &e) {
            config_error("model", "*", e.what());
        }
        const auto &ds = cfg.model.data;
        if (ds.train_size < 1 || ds.test_size < 1 || ds.raw_dim < 1) {
            config_error("model", "*", "train_size, test_size and raw_dim must be >= 1");
        }
    }
}

ExperimentConfig parse_config(std::istream &is, const std::string &source) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        pt::ini_parser::read_ini(is, tree);
    } catch (const pt::ini_parser_error &e) {
        fail(ErrorKind::ConfigInvalid, source + ": " + e.message() + " (line " +
                                           std::to_string(e.line()) + ")");
    }

    ExperimentConfig cfg;
    std::map<std::string, const pt::ptree *> sections;
    for (const auto &[name, child] : tree) {
        const bool is_axis = name.rfind("axis:", 0) == 0;
        const auto it = known_keys().find(is_axis ? "axis:" : name);
        if (it == known_keys().end() || child.data().size() > 0) {
            fail(ErrorKind::ConfigInvalid, source + ": unknown section [" + name + "]");
        }
        for (const auto &[key, value] : child) {
            if (!it->second.count(key)) {
                config_error(name, key, "unknown key");
            }
        }
        if (!is_axis) {
            sections[name] = &child;
        }
    }
    auto section = [&](const std::string &name) {
        auto it = sections.find(name);
        return Section(name, it == sections.end() ? nullptr : it->second);
    };

    const Section ex = section("experiment");
    if (auto m = ex.raw("method")) {
        cfg.method = parse_method(*m);
    } else {
        config_error("experiment", "method", "missing");
    }
    if (auto o = ex.raw("objective")) {
        cfg.objective = parse_objective(*o);
    } else {
        config_error("experiment", "objective", "missing");
    }
    ex.get("trials", cfg.trials);
    ex.get("base_seed", cfg.base_seed);
    std::string output;
    ex.get("output", output);
    cfg.output = output;
    ex.get("record_wall_ms", cfg.record_wall_ms);

    const Section sp = section("space");
    if (auto dims = sp.raw("dims")) {
        cfg.dims.clear();
        std::istringstream ds(*dims);
        std::string item;
        while (std::getline(ds, item, ',')) {
            std::size_t d = 0;
            if (!parse_number(trim(item), d)) {
                config_error("space", "dims", "expected a comma-separated integer list, got '" +
                                                  *dims + "'");
            }
            cfg.dims.push_back(d);
        }
    }
    sp.get("points", cfg.points);

    for (const auto &[name, child] : tree) {
        if (name.rfind("axis:", 0) != 0) {
            continue;
        }
        const Section ax(name, &child);
        AxisSpec axis;
        axis.name = name.substr(5);
        axis.points = cfg.points;
        ax.get("lower", axis.lower);
        ax.get("upper", axis.upper);
        ax.get("points", axis.points);
        if (auto kind = ax.raw("kind")) {
            if (*kind == "integer") {
                axis.kind = AxisKind::Integer;
            } else if (*kind != "continuous") {
                config_error(name, "kind", "expected continuous or integer, got '" + *kind + "'");
            }
        }
        cfg.axes.push_back(axis);
    }

    const Section tt = section("tt");
    tt.get("rank", cfg.tt.rank);
    tt.get("sweeps", cfg.tt.sweeps);
    tt.get("eval_budget", cfg.tt.eval_budget);
    tt.get("maxvol_tol", cfg.tt.maxvol_tol);
    tt.get("maxvol_max_iters", cfg.tt.maxvol_max_iters);
    tt.get("transform_width", cfg.tt.transform_width);
    if (auto t = tt.raw("transform")) {
        if (*t == "none") {
            cfg.tt.transform = ScoreTransform::None;
        } else if (*t == "arctan") {
            cfg.tt.transform = ScoreTransform::Arctan;
        } else {
            config_error("tt", "transform", "expected arctan or none, got '" + *t + "'");
        }
    }

    section("gs").get("eval_budget", cfg.gs.eval_budget);

    const Section mo = section("model");
    mo.get("train_size", cfg.model.data.train_size);
    mo.get("test_size", cfg.model.data.test_size);
    mo.get("raw_dim", cfg.model.data.raw_dim);
    mo.get("separation", cfg.model.data.separation);
    mo.get("offset", cfg.model.data.offset);
    mo.get("data_seed", cfg.model.data.seed);
    mo.get("epochs", cfg.model.train.epochs);
    mo.get("batch_size", cfg.model.train.batch_size);
    mo.get("weight_decay", cfg.model.train.weight_decay);
    mo.get("grad_clip", cfg.model.train.grad_clip);
    if (auto g = mo.raw("quantum_gradient")) {
        if (*g == "parameter_shift") {
            cfg.model.train.quantum_gradient = QuantumGradient::ParameterShift;
        } else if (*g == "adjoint") {
            cfg.model.train.quantum_gradient = QuantumGradient::Adjoint;
        } else {
            config_error("model", "quantum_gradient",
                         "expected parameter_shift or adjoint, got '" + *g + "'");
        }
    }

    validate(cfg);
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path &path) {
    std::ifstream is(path);
    if (!is) {
        fail(ErrorKind::IoError, "cannot read config " + path.string());
    }
    return parse_config(is, path.string());
}

std::filesystem::path resolve_output(const std::filesystem::path &path) {
    const char *dir = std::getenv("TTHPO_OUTPUT_DIR");
    if (path.empty() || !dir || !*dir) {
        return path;
    }
    return std::filesystem::path(dir) / path.filename();
}

DimSummary summarize(std::span<const TrialRow> rows) {
    if (rows.empty()) {
        fail(ErrorKind::InvalidArgument, "summarize: no rows");
    }
    DimSummary s;
    s.d = rows.front().d;
    s.n = rows.front().n;
    s.r = rows.front().r;
    s.trials = rows.size();
    std::vector<double> best;
    double sum = 0.0;
    for (const auto &row : rows) {
        best.push_back(row.best_fitness);
        sum += row.best_fitness;
        s.er = std::max(s.er, row.distinct_evals);
        s.max_requests = std::max(s.max_requests, row.total_requests);
        s.wall_ms += row.wall_ms;
    }
    s.mean_best = sum / static_cast<double>(rows.size());
    std::sort(best.begin(), best.end());
    s.min_best = best.front();
    s.max_best = best.back();
    const std::size_t mid = best.size() / 2;
    s.median_best = best.size() % 2 ? best[mid] : 0.5 * (best[mid - 1] + best[mid]);
    return s;
}

std::string format_row(const TrialRow &row) {
    std::ostringstream os;
    os << row.trial << ',' << row.seed << ',' << to_string(row.method) << ','
       << to_string(row.objective) << ',' << row.d << ',' << row.n << ',';
    if (row.r) {
        os << *row.r;
    }
    os << ',' << fmt(row.best_fitness) << ',' << row.distinct_evals << ','
       << row.total_requests << ',' << fmt(row.wall_ms);
    return os.str();
}

std::string format_summary(const DimSummary &s, Method method, ObjectiveKind objective) {
    std::ostringstream os;
    os << "summary,," << to_string(method) << ',' << to_string(objective) << ',' << s.d << ','
       << s.n << ',';
    if (s.r) {
        os << *s.r;
    }
    os << ',' << fmt(s.mean_best) << ',' << s.er << ',' << s.max_requests << ','
       << fmt(s.wall_ms);
    return os.str();
}

void write_report_csv(const SuiteReport &report, const std::filesystem::path &path) {
    std::ofstream os(path);
    if (!os) {
        fail(ErrorKind::IoError, "cannot write " + path.string());
    }
    os << kCsvHeader << '\n';
    for (const auto &s : report.summaries) {
        for (const auto &row : report.rows) {
            if (row.d == s.d) {
                os << format_row(row) << '\n';
            }
        }
        os << format_summary(s, report.method, report.objective) << '\n';
    }
}

void write_summary_json(const SuiteReport &report, const std::filesystem::path &path) {
    nlohmann::json j;
    j["method"] = std::string(to_string(report.method));
    j["objective"] = std::string(to_string(report.objective));
    j["interrupted"] = report.interrupted;
    auto dims = nlohmann::json::array();
    for (const auto &s : report.summaries) {
        nlohmann::json e{{"d", s.d},
                         {"n", s.n},
                         {"trials", s.trials},
                         {"mean_best", s.mean_best},
                         {"min_best", s.min_best},
                         {"median_best", s.median_best},
                         {"max_best", s.max_best},
                         {"er", s.er},
                         {"max_requests", s.max_requests},
                         {"wall_ms", s.wall_ms}};
        e["r"] = s.r ? nlohmann::json(*s.r) : nlohmann::json(nullptr);
        dims.push_back(e);
    }
    j["dims"] = dims;
    std::ofstream os(path);
    if (!os) {
        fail(ErrorKind::IoError, "cannot write " + path.string());
    }
    os << j.dump(2) << '\n';
}

SuiteReport run_suite(const ExperimentConfig &cfg) {
    validate(cfg);
    SuiteReport report;
    report.method = cfg.method;
    report.objective = cfg.objective;

    std::ofstream csv;
    std::filesystem::path out = resolve_output(cfg.output);
    if (!out.empty()) {
        if (out.has_parent_path()) {
            std::filesystem::create_directories(out.parent_path());
        }
        csv.open(out);
        if (!csv) {
            fail(ErrorKind::IoError, "cannot write " + out.string());
        }
        csv << kCsvHeader << '\n' << std::flush;
    }

    std::optional<SplitDataset> data;
    if (is_model(cfg.objective)) {
        data = make_synthetic_dataset(cfg.model.data);
    }

    for (auto d : suite_dims(cfg)) {
        const SearchSpace space = experiment_space(cfg, d);
        const std::size_t first_row = report.rows.size();
        for (std::size_t t = 0; t < cfg.trials && !report.interrupted; ++t) {
            const std::uint64_t seed = cfg.base_seed + t;
            TrialRow row;
            row.trial = t;
            row.seed = seed;
            row.method = cfg.method;
            row.objective = cfg.objective;
            row.d = space.dim();
            row.n = space.min_points();
            row.r = opt_r(cfg);

            const auto start = std::chrono::steady_clock::now();
            TrialReport trial;
            try {
                const Objective objective =
                    trial_objective(cfg, space, seed, data ? &*data : nullptr);
                if (cfg.method == Method::Tt) {
                    TtConfig tt = cfg.tt;
                    tt.seed = seed;
                    tt.record_history = false;
                    trial = tt_optimize(objective, space, tt);
                } else {
                    GsConfig gs = cfg.gs;
                    gs.seed = seed;
                    gs.record_history = false;
                    trial = grid_optimize(objective, space, gs);
                }
            } catch (const Error &e) {
                if (e.kind() != ErrorKind::Interrupted) {
                    throw;
                }
                report.interrupted = true;
                break;
            }
            const auto stop = std::chrono::steady_clock::now();

            row.best_fitness = is_minimization(cfg.objective) ? -trial.best_score
                                                              : trial.best_score;
            row.distinct_evals = trial.distinct_evals;
            row.total_requests = trial.total_requests;
            if (cfg.record_wall_ms) {
                row.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
            }
            report.rows.push_back(row);
            if (csv.is_open()) {
                csv << format_row(row) << '\n' << std::flush;
            }
        }
        if (report.rows.size() > first_row) {
            report.summaries.push_back(summarize(std::span<const TrialRow>(
                report.rows.data() + first_row, report.rows.size() - first_row)));
            if (csv.is_open()) {
                csv << format_summary(report.summaries.back(), cfg.method, cfg.objective) << '\n'
                    << std::flush;
            }
        }
        if (report.interrupted) {
            break;
        }
    }

    if (!out.empty()) {
        auto json_path = out;
        json_path.replace_extension(".summary.json");
        write_summary_json(report, json_path);
    }
    return report;
}

void install_interrupt_handler() { std::signal(SIGINT, on_sigint); }
void request_interrupt() noexcept { g_interrupt.store(true); }
void clear_interrupt() noexcept { g_interrupt.store(false); }
bool interrupt_requested() noexcept { return g_interrupt.load(); }

SuiteReport read_report_csv(const std::filesystem::path &path) {
    std::ifstream is(path);
    if (!is) {
        fail(ErrorKind::IoError, "cannot read report " + path.string());
    }
    std::string line;
    if (!std::getline(is, line) || line != kCsvHeader) {
        fail(ErrorKind::IoError, path.string() + ": unexpected header");
    }
    SuiteReport report;
    std::vector<std::pair<std::size_t, std::vector<std::string>>> summary_lines;
    std::size_t line_no = 1;
    auto bad = [&](const std::string &what) {
        fail(ErrorKind::IoError, path.string() + ":" + std::to_string(line_no) + ": " + what);
    };
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto f = split_csv(line);
        if (f.size() != 11) {
            bad("expected 11 columns");
        }
        const Method method = parse_method(f[2]);
        const ObjectiveKind objective = parse_objective(f[3]);
        if (report.rows.empty() && summary_lines.empty()) {
            report.method = method;
            report.objective = objective;
        } else if (method != report.method || objective != report.objective) {
            bad("mixed methods or objectives");
        }
        if (f[0] == "summary") {
            summary_lines.emplace_back(line_no, f);
            continue;
        }
        TrialRow row;
        row.method = method;
        row.objective = objective;
        std::size_t r = 0;
        if (!parse_number(f[0], row.trial) || !parse_number(f[1], row.seed) ||
            !parse_number(f[4], row.d) || !parse_number(f[5], row.n) ||
            !parse_number(f[7], row.best_fitness) || !parse_number(f[8], row.distinct_evals) ||
            !parse_number(f[9], row.total_requests) || !parse_number(f[10], row.wall_ms)) {
            bad("malformed field");
        }
        if (!f[6].empty()) {
            if (!parse_number(f[6], r)) {
                bad("malformed r");
            }
            row.r = r;
        }
        report.rows.push_back(row);
    }
    report.summaries = summarize_by_dim(report.rows);
    for (const auto &[ln, f] : summary_lines) {
        line_no = ln;
        std::size_t d = 0;
        double mean = 0.0;
        std::size_t er = 0;
        if (!parse_number(f[4], d) || !parse_number(f[7], mean) || !parse_number(f[8], er)) {
            bad("malformed summary row");
        }
        auto it = std::find_if(report.summaries.begin(), report.summaries.end(),
                               [&](const DimSummary &s) { return s.d == d; });
        if (it == report.summaries.end()) {
            bad("summary row without detail rows");
        }
        if (std::abs(it->mean_best - mean) > 1e-12 * std::max(1.0, std::abs(mean)) ||
            it->er != er) {
            bad("summary row disagrees with detail rows");
        }
    }
    return report;
}

Comparison compare(const SuiteReport &a, const SuiteReport &b) {
    if (a.objective != b.objective) {
        fail(ErrorKind::MismatchedExperiments,
             "objectives differ: " + std::string(to_string(a.objective)) + " vs " +
                 std::string(to_string(b.objective)));
    }
    auto keyed = [](const SuiteReport &r) {
        std::map<std::size_t, const DimSummary *> m;
        for (const auto &s : r.summaries) {
            m[s.d] = &s;
        }
        return m;
    };
    const auto ma = keyed(a);
    const auto mb = keyed(b);
    if (ma.size() != mb.size()) {
        fail(ErrorKind::MismatchedExperiments, "reports cover different dimensions");
    }
    Comparison c;
    c.method_a = a.method;
    c.method_b = b.method;
    c.objective = a.objective;
    std::optional<ComparisonRow> prev;
    for (const auto &[d, sa] : ma) {
        auto it = mb.find(d);
        if (it == mb.end()) {
            fail(ErrorKind::MismatchedExperiments,
                 "dimension " + std::to_string(d) + " missing from the second report");
        }
        const DimSummary *sb = it->second;
        if (sa->n != sb->n) {
            fail(ErrorKind::MismatchedExperiments,
                 "grid sizes differ at d=" + std::to_string(d));
        }
        ComparisonRow row;
        row.d = d;
        row.n = sa->n;
        row.mean_a = sa->mean_best;
        row.mean_b = sb->mean_best;
        row.delta_mean = sb->mean_best - sa->mean_best;
        row.er_a = sa->er;
        row.er_b = sb->er;
        row.er_ratio = sa->er ? static_cast<double>(sb->er) / static_cast<double>(sa->er) : 0.0;
        if (prev) {
            row.growth_a = prev->er_a ? static_cast<double>(row.er_a) / prev->er_a : 0.0;
            row.growth_b = prev->er_b ? static_cast<double>(row.er_b) / prev->er_b : 0.0;
        }
        c.rows.push_back(row);
        prev = row;
    }
    return c;
}

void write_comparison(const Comparison &c, std::ostream &os) {
    const std::string a(to_string(c.method_a));
    const std::string b(to_string(c.method_b));
    os << "# objective=" << to_string(c.objective) << " a=" << a << " b=" << b << '\n';
    os << "d,n,mean_a,mean_b,delta_mean,er_a,er_b,er_ratio,er_growth_a,er_growth_b\n";
    for (const auto &r : c.rows) {
        os << r.d << ',' << r.n << ',' << fmt(r.mean_a) << ',' << fmt(r.mean_b) << ','
           << fmt(r.delta_mean) << ',' << r.er_a << ',' << r.er_b << ',' << fmt(r.er_ratio)
           << ',' << fmt(r.growth_a) << ',' << fmt(r.growth_b) << '\n';
    }
}

} // namespace tthpo
