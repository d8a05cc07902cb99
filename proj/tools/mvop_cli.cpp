// mvop: command-line front end.
//
//   mvop build        --N 5 --q 1/2 [--backend rational|real]
//   mvop spectrum     --N 11 --q 1/3
//   mvop multiplicity --N 11 [--q 1/3]
//   mvop check        --N 7 --q 2/5 --backend rational
//   mvop simulate     --N 11 --q 0.3 --steps 5 --trials 1000000 --seed 1
//   mvop fig1         --N 11 [--q-grid 0:1:0.005]
//   mvop fig2         --N 100 --q 0.3 --k 1..40
//
// Output is CSV on stdout (or --out), or JSON with --json.
// Exit codes: 0 ok, 1 usage, 2 identity check failed, 3 ill-conditioned.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "mvop/checks.hpp"
#include "mvop/ehrenfest.hpp"
#include "mvop/errors.hpp"
#include "mvop/figures.hpp"
#include "mvop/simulate.hpp"

using json = nlohmann::ordered_json;
using namespace mvop;

namespace {

constexpr int kUsage = 1;
constexpr int kCheckFailed = 2;
constexpr int kIllConditioned = 3;

struct Options {
    int N = 0;
    std::string q;
    std::string k;
    std::string qvec;
    std::string kvec;
    std::string backend = "rational";
    std::string q_grid = "0:1:0.005";
    std::uint64_t seed = 0;
    long long trials = 1000;
    int steps = 1;
    int start = 0;
    bool json = false;
    std::string out;
};

// A table whose cells are strings (exact values), numbers or booleans.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<json>> rows;
    json meta = json::object();
};

std::string csv_cell(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number_float()) return format_number(v.get<double>());
    return v.dump();
}

void emit(const Table& t, const Options& opt) {
    std::ostringstream os;
    if (opt.json) {
        json doc = t.meta;
        json rows = json::array();
        for (const auto& r : t.rows) {
            json obj = json::object();
            for (std::size_t c = 0; c < t.header.size(); ++c) obj[t.header[c]] = r[c];
            rows.push_back(std::move(obj));
        }
        doc["rows"] = std::move(rows);
        os << doc.dump(2) << '\n';
    } else {
        for (std::size_t c = 0; c < t.header.size(); ++c) os << (c ? "," : "") << t.header[c];
        os << '\n';
        for (const auto& r : t.rows) {
            for (std::size_t c = 0; c < r.size(); ++c) os << (c ? "," : "") << csv_cell(r[c]);
            os << '\n';
        }
    }
    if (opt.out.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream f(opt.out);
        if (!f) throw DomainError("cannot open '" + opt.out + "' for writing");
        f << os.str();
    }
}

bool exact(const Options& opt) { return opt.backend == "rational"; }

json value(const Rational& v, bool exact_output) {
    if (exact_output) return v.get_str();
    return v.get_d();
}

json value(double v, bool) { return v; }

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, sep)) out.push_back(item);
    return out;
}

int parse_int(const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) throw DomainError("not an integer: '" + s + "'");
    return v;
}

/// "7", "1,2,5" or "1..40".
std::vector<int> parse_k_list(const std::string& text) {
    std::vector<int> out;
    if (auto dots = text.find(".."); dots != std::string::npos) {
        const int lo = parse_int(text.substr(0, dots));
        const int hi = parse_int(text.substr(dots + 2));
        if (hi < lo) throw DomainError("empty k range '" + text + "'");
        for (int k = lo; k <= hi; ++k) out.push_back(k);
        return out;
    }
    for (const auto& part : split(text, ',')) out.push_back(parse_int(part));
    if (out.empty()) throw DomainError("empty k list");
    return out;
}

ModelSpec model_from(const Options& opt) {
    const bool multi = !opt.qvec.empty() || !opt.kvec.empty();
    if (int(multi) + int(!opt.q.empty()) + int(!opt.k.empty()) > 1)
        throw DomainError("--q, --k and --qvec/--kvec select different models; give one");
    if (multi) {
        if (opt.qvec.empty() || opt.kvec.empty()) throw DomainError("--qvec and --kvec go together");
        std::vector<Rational> qs;
        for (const auto& s : split(opt.qvec, ',')) qs.push_back(parse_rational(s));
        return ModelSpec::multi_ball(opt.N, qs, parse_k_list(opt.kvec));
    }
    if (!opt.q.empty()) return ModelSpec::q_deformed(opt.N, parse_rational(opt.q));
    if (!opt.k.empty()) {
        const auto ks = parse_k_list(opt.k);
        if (ks.size() != 1) throw DomainError("--k must be a single integer here");
        return ModelSpec::k_ball(opt.N, ks.front());
    }
    return ModelSpec::classical(opt.N);
}

json model_meta(const ModelSpec& spec) {
    return json{{"model", spec.describe()}, {"N", spec.N}};
}

template <class T>
Table build_table(const ModelSpec& spec, bool exact_output) {
    const auto m = build<T>(spec);
    Table t;
    t.header = {"i", "j", "value"};
    t.meta = model_meta(spec);
    for (int i = 0; i < m.size(); ++i)
        for (int j = m.row_begin(i); j < m.row_end(i); ++j) t.rows.push_back({i, j, value(m(i, j), exact_output)});
    return t;
}

template <class T>
Table spectrum_table(const ModelSpec& spec, bool exact_output) {
    const auto r = spectrum<T>(spec);
    const auto gap = spectral_gap(r);
    Table t;
    t.header = {"j", "lambda_j", "theta_lambda_j", "multiplicity_class"};
    t.meta = model_meta(spec);
    t.meta["gap_excluding_one"] = value(gap.gap_excluding_one, exact_output);
    t.meta["gap_excluding_unimodular"] = value(gap.gap_excluding_unimodular, exact_output);
    t.meta["repeated_classes"] = r.count_repeated();
    for (std::size_t j = 0; j < r.eigenvalues.size(); ++j)
        t.rows.push_back({static_cast<int>(j), value(r.lambdas[j], exact_output), value(r.eigenvalues[j], exact_output),
                          r.class_of[j]});
    return t;
}

int run_build(const Options& opt) {
    const auto spec = model_from(opt);
    emit(exact(opt) ? build_table<Rational>(spec, true) : build_table<double>(spec, false), opt);
    return 0;
}

int run_spectrum(const Options& opt) {
    const auto spec = model_from(opt);
    emit(exact(opt) ? spectrum_table<Rational>(spec, true) : spectrum_table<double>(spec, false), opt);
    return 0;
}

int run_multiplicity(const Options& opt) {
    std::vector<Rational> qs;
    if (!opt.q.empty()) {
        qs.push_back(parse_rational(opt.q));
    } else {
        qs = omega_set(opt.N);
    }
    Table t;
    t.header = {"q", "in_omega", "i", "predicted_doubles", "observed_doubles", "max_multiplicity"};
    t.meta = json{{"N", opt.N}};
    bool consistent = true;
    for (const auto& q : qs) {
        const auto r = multiplicity_report(opt.N, q);
        consistent = consistent && r.predicted_doubles == r.observed_doubles;
        t.rows.push_back({value(q, exact(opt)), r.in_omega, r.i ? json(*r.i) : json(nullptr), r.predicted_doubles,
                          r.observed_doubles, r.max_multiplicity});
    }
    t.meta["consistent"] = consistent;
    emit(t, opt);
    return consistent ? 0 : kCheckFailed;
}

int run_check(const Options& opt) {
    if (opt.q.empty()) throw DomainError("check needs --q");
    const Rational q = parse_rational(opt.q);
    const auto results = exact(opt) ? run_identity_checks<Rational>(opt.N, q) : run_identity_checks<double>(opt.N, q);
    Table t;
    t.header = {"suite", "deviation", "tolerance", "passed"};
    t.meta = json{{"N", opt.N}, {"q", q.get_str()}, {"backend", opt.backend}};
    bool ok = true;
    for (const auto& r : results) {
        ok = ok && r.passed;
        t.rows.push_back({r.name, r.deviation, r.tolerance, r.passed});
    }
    t.meta["passed"] = ok;
    emit(t, opt);
    return ok ? 0 : kCheckFailed;
}

int run_simulate(const Options& opt) {
    SimConfig cfg{model_from(opt), opt.start, opt.steps, opt.trials, opt.seed};
    const auto r = empirical_vs_analytic(cfg, opt.steps);
    Table t;
    t.header = {"state", "count", "empirical", "analytic"};
    t.meta = model_meta(cfg.spec);
    t.meta["start"] = cfg.start;
    t.meta["n"] = r.n;
    t.meta["trials"] = r.trials;
    t.meta["seed"] = cfg.seed;
    t.meta["tv"] = r.tv;
    t.meta["z_max"] = r.z_max;
    for (std::size_t s = 0; s < r.counts.size(); ++s)
        t.rows.push_back({static_cast<int>(s), r.counts[s], r.empirical[s], r.analytic[s]});
    emit(t, opt);
    if (!opt.json) std::cerr << "tv=" << format_number(r.tv) << " z_max=" << format_number(r.z_max) << '\n';
    return 0;
}

int run_fig1(const Options& opt) {
    Table t;
    t.header = {"q", "j", "eigenvalue"};
    t.meta = json{{"N", opt.N}};
    for (const auto& r : fig1_rows(opt.N, parse_grid(opt.q_grid)))
        t.rows.push_back({value(r.q, exact(opt)), r.j, value(r.eigenvalue, exact(opt))});
    emit(t, opt);
    return 0;
}

int run_fig2(const Options& opt) {
    if (opt.q.empty()) throw DomainError("fig2 needs --q");
    std::vector<int> ks;
    if (opt.k.empty()) {
        for (int k = 1; k <= opt.N; ++k) ks.push_back(k);
    } else {
        ks = parse_k_list(opt.k);
    }
    const Rational q = parse_rational(opt.q);
    Table t;
    t.header = {"k", "j", "eigenvalue", "is_subdominant"};
    t.meta = json{{"N", opt.N}, {"q", value(q, exact(opt))}};
    for (const auto& r : fig2_rows(opt.N, q, ks))
        t.rows.push_back({r.k, r.j, value(r.eigenvalue, exact(opt)), r.is_subdominant});
    emit(t, opt);
    return 0;
}

void model_flags(CLI::App* sub, Options& opt) {
    sub->add_option("--q", opt.q, "q-deformed model parameter (rational or decimal)");
    sub->add_option("--k", opt.k, "k-ball size (int); for fig2 an int, list or a..b range");
    sub->add_option("--qvec", opt.qvec, "multi-ball weights, comma separated");
    sub->add_option("--kvec", opt.kvec, "multi-ball sizes, comma separated");
}

void common_flags(CLI::App* sub, Options& opt) {
    sub->add_option("--N", opt.N, "number of balls")->required()->check(CLI::PositiveNumber);
    sub->add_option("--backend", opt.backend, "number backend")->check(CLI::IsMember({"rational", "real"}));
    sub->add_flag("--json", opt.json, "emit JSON instead of CSV");
    sub->add_option("--out", opt.out, "write to a file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ehrenfest urn models, their spectra and matrix-valued orthogonal polynomials"};
    app.require_subcommand(1);
    Options opt;

    struct Command {
        const char* name;
        const char* help;
        int (*run)(const Options&);
        bool model;
    };
    const Command commands[] = {
        {"build", "emit the transition matrix (banded entries, row-major)", run_build, true},
        {"spectrum", "analytic spectrum with multiplicity classes", run_spectrum, true},
        {"multiplicity", "double eigenvalues of the q-deformed model over Omega(N) or one q", run_multiplicity, true},
        {"check", "identity suites for (N, q)", run_check, true},
        {"simulate", "Monte Carlo distribution at time --steps against the spectral row", run_simulate, true},
        {"fig1", "eigenvalue curves q -> Theta_q(lambda_j)", run_fig1, false},
        {"fig2", "eigenvalues of the (1,k) multi-ball model over k", run_fig2, true},
    };
    std::vector<std::pair<CLI::App*, const Command*>> subs;
    for (const auto& c : commands) {
        auto* sub = app.add_subcommand(c.name, c.help);
        common_flags(sub, opt);
        if (c.model) model_flags(sub, opt);
        subs.emplace_back(sub, &c);
    }
    for (auto& [sub, c] : subs) {
        const std::string name = c->name;
        if (name == "simulate") {
            sub->add_option("--seed", opt.seed, "generator seed");
            sub->add_option("--trials", opt.trials, "number of trajectories")->check(CLI::PositiveNumber);
            sub->add_option("--steps", opt.steps, "time at which the distribution is compared")
                ->check(CLI::NonNegativeNumber);
            sub->add_option("--start", opt.start, "initial state")->check(CLI::NonNegativeNumber);
        }
        if (name == "fig1") sub->add_option("--q-grid", opt.q_grid, "lo:hi:step grid of q values");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        for (auto& [sub, c] : subs)
            if (sub->parsed()) return c->run(opt);
    } catch (const IllConditionedBlock& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIllConditioned;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
