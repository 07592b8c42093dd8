#include "friable_cli/cli.hpp"

#include "friable/bounds.hpp"
#include "friable/errors.hpp"
#include "friable/optimizer.hpp"
#include "friable/parallel.hpp"
#include "friable/random.hpp"
#include "friable/sieve.hpp"
#include "friable/sums.hpp"
#include "friable/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <variant>

namespace friable::cli {

using json = nlohmann::ordered_json;

std::string format_number(double v) {
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Value = std::variant<std::monostate, double, i64, u64, bool, std::string>;

struct Field {
    std::string name;
    Value value;
};

using Row = std::vector<Field>;

std::string csv_cell(const Value& v) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::monostate>)
                return "";
            else if constexpr (std::is_same_v<T, double>)
                return format_number(x);
            else if constexpr (std::is_same_v<T, bool>)
                return x ? "1" : "0";
            else if constexpr (std::is_same_v<T, std::string>)
                return x;
            else
                return std::to_string(x);
        },
        v);
}

json json_value(const Value& v) {
    return std::visit(
        [](const auto& x) -> json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::monostate>)
                return nullptr;
            else if constexpr (std::is_same_v<T, double>)
                return std::isfinite(x) ? json(x) : json(format_number(x));
            else
                return json(x);
        },
        v);
}

json json_row(const Row& row) {
    json o = json::object();
    for (const auto& f : row)
        o[f.name] = json_value(f.value);
    return o;
}

void write_csv_header(std::ostream& os, const Row& row) {
    for (std::size_t i = 0; i < row.size(); ++i)
        os << (i ? "," : "") << row[i].name;
    os << '\n';
}

void write_csv_row(std::ostream& os, const Row& row) {
    for (std::size_t i = 0; i < row.size(); ++i)
        os << (i ? "," : "") << csv_cell(row[i].value);
    os << '\n';
}

struct Common {
    std::string format = "csv";
    std::string output;
    unsigned threads = 0;
};

void add_common(CLI::App* sub, Common& c, bool csv_allowed = true) {
    if (csv_allowed)
        sub->add_option("--format", c.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
    else
        c.format = "json";
    sub->add_option("--output", c.output, "write to this file instead of stdout");
    sub->add_option("--threads", c.threads, "worker threads, 0 = all cores")->capture_default_str();
}

// Writes to the --output file when given, else to the default stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_)
                throw UsageError("cannot open output file " + path);
            os_ = &file_;
        }
    }
    std::ostream& get() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_;
};

u64 integral(double v, const char* what) {
    if (!(v >= 0) || v != std::floor(v) || v > 1.8e19)
        throw UsageError(std::string(what) + " must be a nonnegative integer");
    return static_cast<u64>(v);
}

Row report_row(const BoundReport& r) {
    const auto& p = r.params;
    Row row{
        {"x", p.x()},
        {"y", p.y()},
        {"q", p.q()},
        {"a", p.a()},
        {"nu", p.nu()},
        {"theta", p.theta() ? Value(*p.theta()) : Value(std::monostate{})},
        {"re", r.exact.real()},
        {"im", r.exact.imag()},
        {"abs", r.exact_abs},
        {"psi", r.psi},
        {"terms", r.terms},
        {"l_factor", r.l_factor},
    };
    for (auto e : all_envelopes)
        row.push_back({"envelope_" + std::string(envelope_name(e)), r.envelope(e)});
    for (auto e : all_envelopes)
        row.push_back({"ratio_" + std::string(envelope_name(e)), r.ratio(e)});
    for (auto e : all_envelopes)
        row.push_back({"trivial_" + std::string(envelope_name(e)), r.is_trivial(e)});
    return row;
}

// ---- sieve ----

struct SieveArgs {
    Common common;
    double x = 0;
    double y = 0;
    bool list = false;
};

int cmd_sieve(const SieveArgs& a, std::ostream& out) {
    Sink sink(a.common.output, out);
    auto& os = sink.get();
    const SieveConfig cfg{.threads = a.common.threads};
    if (a.list) {
        const auto s = smooth_members(a.x, a.y, cfg);
        if (a.common.format == "json") {
            os << json{{"x", a.x}, {"y", a.y}, {"psi", s.size()}, {"members", s.members}}.dump()
               << '\n';
        } else {
            os << csv_header_tag << "\nn\n";
            for (u64 n : s.members)
                os << n << '\n';
        }
        return exit_ok;
    }
    const Row row{{"x", a.x}, {"y", a.y}, {"psi", psi(a.x, a.y, cfg)}};
    if (a.common.format == "json") {
        os << json_row(row).dump() << '\n';
    } else {
        os << csv_header_tag << '\n';
        write_csv_header(os, row);
        write_csv_row(os, row);
    }
    return exit_ok;
}

// ---- sum ----

struct SumArgs {
    Common common;
    double x = 0;
    double y = 0;
    double q = 1;
    i64 a = 0;
    i64 nu = 1;
    std::optional<double> theta;
    double eps = default_eps;
    double delta = default_delta;
};

int cmd_sum(const SumArgs& a, std::ostream& out) {
    const SumParams p(a.x, a.y, integral(a.q, "q"), a.a, a.nu, a.theta);
    const auto r = report(p, a.eps, a.delta, SieveConfig{.threads = a.common.threads});
    const auto row = report_row(r);
    Sink sink(a.common.output, out);
    auto& os = sink.get();
    if (a.common.format == "json") {
        os << json_row(row).dump() << '\n';
    } else {
        os << csv_header_tag << '\n';
        write_csv_header(os, row);
        write_csv_row(os, row);
    }
    return exit_ok;
}

// ---- scan ----

struct ScanArgs {
    Common common;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> y_exp;
    std::vector<double> q;
    std::vector<double> q_exp;
    std::optional<i64> a;
    unsigned random_a = 1;
    i64 nu = 1;
    u64 seed = 1;
    double budget = 1e10;
    double eps = default_eps;
    double delta = default_delta;
};

struct ScanRow {
    SumParams params;
    std::string y_key;
    std::string q_key;
    unsigned a_index;
};

u64 random_unit(SplitMix64& rng, u64 q) {
    if (q == 1)
        return 0;
    for (;;) {
        const u64 a = rng.below(q);
        if (a != 0 && std::gcd(a, q) == 1)
            return a;
    }
}

std::vector<ScanRow> scan_rows(const ScanArgs& s) {
    if (s.y.empty() == s.y_exp.empty())
        throw UsageError("give exactly one of --y and --y-exp");
    if (s.q.empty() == s.q_exp.empty())
        throw UsageError("give exactly one of --q and --q-exp");
    if (!s.a && s.random_a == 0)
        throw UsageError("--random-a must be positive");

    SplitMix64 rng(s.seed);
    std::vector<ScanRow> rows;
    for (double x : s.x) {
        std::vector<std::pair<double, std::string>> ys;
        for (double v : s.y)
            ys.emplace_back(v, format_number(v));
        for (double e : s.y_exp)
            ys.emplace_back(std::pow(x, e), "x^" + format_number(e));
        std::vector<std::pair<u64, std::string>> qs;
        for (double v : s.q)
            qs.emplace_back(integral(v, "q"), format_number(v));
        for (double e : s.q_exp)
            qs.emplace_back(next_prime(static_cast<u64>(std::llround(std::pow(x, e)))),
                            "x^" + format_number(e));
        for (const auto& [y, y_key] : ys)
            for (const auto& [q, q_key] : qs) {
                if (q == 0)
                    throw UsageError("q must be positive");
                if (s.a) {
                    if (std::gcd(reduce_mod(*s.a, q), q) != 1)
                        continue;
                    rows.push_back({SumParams(x, y, q, *s.a, s.nu), y_key, q_key, 0});
                } else {
                    for (unsigned i = 0; i < s.random_a; ++i)
                        rows.push_back({SumParams(x, y, q, static_cast<i64>(random_unit(rng, q)), s.nu),
                                        y_key, q_key, i});
                }
            }
    }
    return rows;
}

struct Series {
    std::string y_key, q_key;
    unsigned a_index;
    std::vector<double> x, ratio;
};

std::string trend_of(const std::vector<double>& v) {
    if (v.size() < 2)
        return "single";
    bool up = true, down = true;
    for (std::size_t i = 1; i < v.size(); ++i) {
        up = up && v[i] >= v[i - 1];
        down = down && v[i] <= v[i - 1];
    }
    if (down)
        return "nonincreasing";
    if (up)
        return "nondecreasing";
    return "mixed";
}

int cmd_scan(const ScanArgs& s, std::ostream& out, std::ostream& err) {
    const auto rows = scan_rows(s);
    double work = 0;
    for (const auto& r : rows)
        work += r.params.x();
    if (work > s.budget) {
        err << "scan needs about " << format_number(work) << " terms, over the budget of "
            << format_number(s.budget) << " (raise --budget)\n";
        throw BudgetError("budget exceeded");
    }

    std::vector<std::optional<BoundReport>> reports(rows.size());
    const unsigned threads = resolve_threads(s.common.threads);
    if (rows.size() >= threads) {
        parallel_for(rows.size(), threads, [&](std::size_t i) {
            reports[i] = report(rows[i].params, s.eps, s.delta, SieveConfig{.threads = 1});
        });
    } else {
        for (std::size_t i = 0; i < rows.size(); ++i)
            reports[i] = report(rows[i].params, s.eps, s.delta, SieveConfig{.threads = threads});
    }

    std::vector<Series> series;
    std::map<std::tuple<std::string, std::string, unsigned>, std::size_t> index;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto key = std::make_tuple(rows[i].y_key, rows[i].q_key, rows[i].a_index);
        auto it = index.find(key);
        if (it == index.end()) {
            it = index.emplace(key, series.size()).first;
            series.push_back({rows[i].y_key, rows[i].q_key, rows[i].a_index, {}, {}});
        }
        series[it->second].x.push_back(rows[i].params.x());
        series[it->second].ratio.push_back(reports[i]->ratio(Envelope::THM1));
    }

    Sink sink(s.common.output, out);
    auto& os = sink.get();
    if (s.common.format == "json") {
        json doc{{"format", "friable-sums v1"}, {"rows", json::array()}, {"diagnostics", json::array()}};
        for (const auto& r : reports)
            doc["rows"].push_back(json_row(report_row(*r)));
        for (const auto& se : series)
            doc["diagnostics"].push_back({{"metric", "ratio_THM1"},
                                          {"y_key", se.y_key},
                                          {"q_key", se.q_key},
                                          {"a_index", se.a_index},
                                          {"x", se.x},
                                          {"ratios", se.ratio},
                                          {"trend", trend_of(se.ratio)}});
        os << doc.dump(1) << '\n';
        return exit_ok;
    }
    os << csv_header_tag << '\n';
    bool header = false;
    for (const auto& r : reports) {
        const auto row = report_row(*r);
        if (!header) {
            write_csv_header(os, row);
            header = true;
        }
        write_csv_row(os, row);
    }
    os << "# monotonicity ratio_THM1\n# y_key,q_key,a_index,points,trend,x,ratios\n";
    for (const auto& se : series) {
        os << "# " << se.y_key << ',' << se.q_key << ',' << se.a_index << ',' << se.x.size() << ','
           << trend_of(se.ratio) << ',';
        for (std::size_t i = 0; i < se.x.size(); ++i)
            os << (i ? ";" : "") << format_number(se.x[i]);
        os << ',';
        for (std::size_t i = 0; i < se.ratio.size(); ++i)
            os << (i ? ";" : "") << format_number(se.ratio[i]);
        os << '\n';
    }
    return exit_ok;
}

// ---- verify ----

struct VerifyArgs {
    Common common;
    std::string suite = "all";
    VerifyOptions opts;
};

int cmd_verify(VerifyArgs v, std::ostream& out, std::ostream& err) {
    v.opts.threads = v.common.threads;
    std::vector<SuiteResult> results;
    if (v.suite == "all")
        results = run_all(v.opts);
    else
        results.push_back(run_suite(v.suite, v.opts));

    Sink sink(v.common.output, out);
    auto& os = sink.get();
    bool ok = true;
    if (v.common.format == "json") {
        json doc = json::array();
        for (const auto& r : results)
            doc.push_back({{"suite", r.name},
                           {"status", r.passed ? "pass" : "fail"},
                           {"cases", r.cases},
                           {"seconds", r.seconds},
                           {"detail", r.detail},
                           {"counterexample", r.counterexample ? json(*r.counterexample) : json(nullptr)}});
        os << doc.dump(1) << '\n';
    } else {
        os << csv_header_tag << "\nsuite,status,cases,seconds,detail,counterexample\n";
        for (const auto& r : results)
            os << r.name << ',' << (r.passed ? "pass" : "fail") << ',' << r.cases << ','
               << format_number(r.seconds) << ",\"" << r.detail << "\",\""
               << r.counterexample.value_or("") << "\"\n";
    }
    for (const auto& r : results)
        if (!r.passed) {
            ok = false;
            err << r.name << ": counterexample " << r.counterexample.value_or("?") << '\n';
        }
    return ok ? exit_ok : exit_verify_failed;
}

// ---- regions ----

struct RegionsArgs {
    Common common;
    double eps_grid = 0.005;
};

int cmd_regions(const RegionsArgs& a, std::ostream& out) {
    const auto set = figure1_regions(a.eps_grid);
    json doc{{"grid", {{"spacing", a.eps_grid}, {"cells", set.grid_cells},
                       {"mismatches", set.grid_mismatches}, {"max_vertex_gap", set.max_vertex_gap}}},
             {"polygons", json::object()}};
    for (const auto& poly : set.polygons) {
        json verts = json::array();
        for (const auto& v : poly.vertices)
            verts.push_back({{"alpha", v.alpha.str()},
                             {"beta", v.beta.str()},
                             {"alpha_value", v.alpha.to_double()},
                             {"beta_value", v.beta.to_double()}});
        doc["polygons"][poly.name] = verts;
    }
    Sink sink(a.common.output, out);
    sink.get() << doc.dump(1) << '\n';
    return exit_ok;
}

// ---- optimize ----

struct OptimizeArgs {
    Common common;
    double alpha = 0;
    double beta = 0;
};

int cmd_optimize(const OptimizeArgs& a, std::ostream& out) {
    if (!(a.alpha >= 0 && a.alpha <= 1) || !(a.beta >= 0 && a.beta <= 2))
        throw UsageError("need 0 <= alpha <= 1 and 0 <= beta <= 2");
    Row row{{"alpha", a.alpha}, {"beta", a.beta}};
    try {
        const auto c = optimal_omega(a.alpha, a.beta);
        row.push_back({"omega", c.omega});
        row.push_back({"kappa", c.kappa});
        row.push_back({"regime", a.beta <= 1 ? std::string(regime_name(two_peaks_regime(a.alpha, a.beta)))
                                             : std::string("single")});
        row.push_back({"exponent", assembly_exponent(a.alpha, a.beta)});
    } catch (const TrivialRegimeError&) {
        row.push_back({"omega", std::monostate{}});
        row.push_back({"kappa", std::monostate{}});
        row.push_back({"regime", std::string("trivial")});
        row.push_back({"exponent", std::monostate{}});
    }
    Sink sink(a.common.output, out);
    auto& os = sink.get();
    if (a.common.format == "json") {
        os << json_row(row).dump() << '\n';
    } else {
        os << csv_header_tag << '\n';
        write_csv_header(os, row);
        write_csv_row(os, row);
    }
    return exit_ok;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exponential sums over smooth numbers", "friable"};
    app.require_subcommand(1);

    SieveArgs sieve_args;
    auto* sieve_cmd = app.add_subcommand("sieve", "count or list y-smooth n <= x");
    sieve_cmd->add_option("--x", sieve_args.x)->required();
    sieve_cmd->add_option("--y", sieve_args.y)->required();
    sieve_cmd->add_flag("--list", sieve_args.list, "print every member");
    add_common(sieve_cmd, sieve_args.common);

    SumArgs sum_args;
    auto* sum_cmd = app.add_subcommand("sum", "evaluate one sum with all bound envelopes");
    sum_cmd->add_option("--x", sum_args.x)->required();
    sum_cmd->add_option("--y", sum_args.y)->required();
    sum_cmd->add_option("--q", sum_args.q)->capture_default_str();
    sum_cmd->add_option("--a", sum_args.a)->capture_default_str();
    sum_cmd->add_option("--nu", sum_args.nu)->capture_default_str();
    sum_cmd->add_option("--theta", sum_args.theta, "real frequency; selects T_theta");
    sum_cmd->add_option("--eps", sum_args.eps)->capture_default_str();
    sum_cmd->add_option("--delta", sum_args.delta)->capture_default_str();
    add_common(sum_cmd, sum_args.common);

    ScanArgs scan_args;
    auto* scan_cmd = app.add_subcommand("scan", "grid of sums with envelope ratios");
    scan_cmd->add_option("--x", scan_args.x)->required()->expected(1, -1);
    scan_cmd->add_option("--y", scan_args.y, "explicit y values")->expected(1, -1);
    scan_cmd->add_option("--y-exp", scan_args.y_exp, "y = x^e")->expected(1, -1);
    scan_cmd->add_option("--q", scan_args.q, "explicit moduli")->expected(1, -1);
    scan_cmd->add_option("--q-exp", scan_args.q_exp, "q = first prime above x^e")->expected(1, -1);
    scan_cmd->add_option("--a", scan_args.a, "fixed a; rows with gcd(a, q) > 1 are skipped");
    scan_cmd->add_option("--random-a", scan_args.random_a, "units a drawn per q")->capture_default_str();
    scan_cmd->add_option("--nu", scan_args.nu)->capture_default_str();
    scan_cmd->add_option("--seed", scan_args.seed)->capture_default_str();
    scan_cmd->add_option("--budget", scan_args.budget, "refuse scans above this many terms")
        ->capture_default_str();
    scan_cmd->add_option("--eps", scan_args.eps)->capture_default_str();
    scan_cmd->add_option("--delta", scan_args.delta)->capture_default_str();
    add_common(scan_cmd, scan_args.common);

    VerifyArgs verify_args;
    auto* verify_cmd = app.add_subcommand("verify", "run identity suites");
    std::vector<std::string> suite_choices = suite_names();
    suite_choices.insert(suite_choices.begin(), "all");
    verify_cmd->add_option("--suite", verify_args.suite)
        ->check(CLI::IsMember(suite_choices))
        ->capture_default_str();
    verify_cmd->add_option("--x", verify_args.opts.x)->capture_default_str();
    verify_cmd->add_option("--y", verify_args.opts.y);
    verify_cmd->add_option("--r", verify_args.opts.r);
    verify_cmd->add_option("--seed", verify_args.opts.seed)->capture_default_str();
    verify_cmd->add_flag("--sabotage", verify_args.opts.sabotage, "corrupt one term per suite");
    add_common(verify_cmd, verify_args.common);

    RegionsArgs regions_args;
    auto* regions_cmd = app.add_subcommand("regions", "polygons where each bound is best");
    regions_cmd->add_option("--eps-grid", regions_args.eps_grid)->capture_default_str();
    add_common(regions_cmd, regions_args.common, false);

    OptimizeArgs opt_args;
    auto* opt_cmd = app.add_subcommand("optimize", "optimal omega and kappa");
    opt_cmd->add_option("--alpha", opt_args.alpha)->required();
    opt_cmd->add_option("--beta", opt_args.beta)->required();
    add_common(opt_cmd, opt_args.common);

    std::vector<const char*> argv;
    argv.push_back(args.empty() ? "friable" : args[0].c_str());
    for (std::size_t i = 1; i < args.size(); ++i)
        argv.push_back(args[i].c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_bad_args;
    }

    try {
        if (*sieve_cmd)
            return cmd_sieve(sieve_args, out);
        if (*sum_cmd)
            return cmd_sum(sum_args, out);
        if (*scan_cmd)
            return cmd_scan(scan_args, out, err);
        if (*verify_cmd)
            return cmd_verify(verify_args, out, err);
        if (*regions_cmd)
            return cmd_regions(regions_args, out);
        if (*opt_cmd)
            return cmd_optimize(opt_args, out);
    } catch (const BudgetError& e) {
        err << "error: " << e.what() << '\n';
        return exit_budget;
    } catch (const ResourceError& e) {
        err << "error: " << e.what() << '\n';
        return exit_budget;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_bad_args;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_bad_args;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return exit_bad_args;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_verify_failed;
    }
    return exit_bad_args;
}

} // namespace friable::cli
