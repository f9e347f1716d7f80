// gpur: graph-state purification experiments as CSV.
//
// Exit codes: 0 success, 1 protocol failure (state cannot be purified), 2 usage error.

#include <CLI11.hpp>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "cli_support.hpp"
#include "gpur/analytic.hpp"
#include "gpur/flags.hpp"
#include "gpur/lattice.hpp"
#include "gpur/parallel.hpp"
#include "gpur/threshold.hpp"

using namespace gpur;
using cli::num;
using cli::Sink;

namespace {

// Set by a command when the run itself worked but the state could not be purified.
bool g_protocol_failure = false;

std::string joined(const std::vector<std::string> &v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); i++)
        s += (i ? " " : "") + v[i];
    return s;
}

// Every option of the chosen subcommand, defaults included, as comment lines.
void write_config(Sink &out, const CLI::App *leaf, const std::string &command) {
    out.os() << "# gpur " << command << "\n";
    for (const CLI::Option *o : leaf->get_options()) {
        if (o->get_lnames().empty() || o->get_lnames()[0] == "help")
            continue;
        std::string v = o->count() ? joined(o->results()) : o->get_default_str();
        if (o->get_items_expected_max() == 0)  // flag
            v = o->count() ? "true" : "false";
        out.os() << "# " << o->get_lnames()[0] << "=" << v << "\n";
    }
}

std::vector<std::string> expand_all(const std::vector<std::string> &specs) {
    std::vector<std::string> out;
    for (auto &s : specs)
        for (auto &e : cli::expand_spec(s))
            out.push_back(e);
    return out;
}

Subprotocol parse_sub(const std::string &s) {
    if (s == "P1")
        return Subprotocol::P1;
    if (s == "P2")
        return Subprotocol::P2;
    throw std::invalid_argument("expected P1 or P2, got '" + s + "'");
}

struct Common {
    std::string out;
    int jobs = default_jobs();
};

void add_out(CLI::App *c, Common &o) {
    c->add_option("--out", o.out, "CSV destination ('-' for stdout; default $GPUR_OUT_DIR/<command>.csv or stdout)");
}
void add_jobs(CLI::App *c, Common &o) {
    c->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
}

// ---- commands ----

struct GraphShow {
    Common c;
    std::string graph = "chain:4";
    bool edges = false;

    void run(const CLI::App *leaf) {
        auto g = build_named_graph(graph);
        Sink out(c.out, "graph.csv");
        write_config(out, leaf, "graph show");
        for (auto &w : g.warnings())
            out.os() << "# warning: " << w << "\n";
        if (edges) {
            out.os() << format_edge_list(g);
            return;
        }
        out.row({"vertex", "side", "degree", "neighbors"});
        for (int j = 0; j < g.size(); j++) {
            std::string nb;
            for (int k = 0; k < g.size(); k++)
                if ((g.neighbors(j) >> k) & 1)
                    nb += (nb.empty() ? "" : " ") + std::to_string(k + 1);
            out.row({std::to_string(j + 1), g.is_a(j) ? "A" : "B", std::to_string(g.degree(j)), nb});
        }
    }
};

struct PurifyRun {
    Common c;
    std::string graph = "chain:4", state = "werner:0.9", strategy = "alternate:P1", dump_state;
    double p = 1, tol = 1e-10;
    int steps = 500;

    void run(const CLI::App *leaf) {
        auto g = share(build_named_graph(graph));
        auto start = cli::parse_state(g, state);
        auto tr = run_sequence(start, parse_strategy(strategy), p, SequenceOptions{steps, tol});
        Sink out(c.out, "purify.csv");
        write_config(out, leaf, "purify run");
        out.os() << "# outcome=" << to_string(tr.outcome) << "\n";
        out.row({"step", "subprotocol", "fidelity", "success_prob", "cumulative_cost"});
        out.row({"0", "", num(tr.initial_fidelity), "", "1"});
        for (auto &r : tr.rows)
            out.row({std::to_string(r.step), to_string(r.which), num(r.fidelity), num(r.success_prob),
                     num(r.cumulative_cost)});
        if (!dump_state.empty()) {
            std::ofstream f(dump_state);
            if (!f)
                throw std::runtime_error("cannot write '" + dump_state + "'");
            write_state_csv(f, tr.final_state);
        }
        if (tr.outcome == Outcome::unpurifiable) {
            std::cerr << "gpur: the target label lost dominance; state is not purifiable at p=" << p << "\n";
            g_protocol_failure = true;
        }
    }
};

struct ScanCommon {
    Common c;
    std::vector<std::string> graphs{"chain:4"};
    int steps = 500;
    double tol = 1e-10, bisect_tol = 1e-5;
    int coarse = 21;

    void add(CLI::App *s) {
        add_out(s, c);
        add_jobs(s, c);
        s->add_option("--graph", graphs, "graph specs; one {a..b} group is expanded, e.g. chain:{2..7}");
        s->add_option("--steps", steps, "step budget per run")->check(CLI::PositiveNumber);
        s->add_option("--tol", tol, "fixed-point tolerance");
        s->add_option("--bisect-tol", bisect_tol, "bisection width");
        s->add_option("--coarse", coarse, "coarse scan points before bisection")->check(CLI::Range(2, 10000));
    }
    ScanOptions options() const { return {steps, tol, bisect_tol, coarse}; }
};

std::vector<std::string> threshold_fields(const std::string &graph, const std::string &what,
                                          const ThresholdResult &t, double f_min, double f_max) {
    return {graph,      what,       num(t.value), num(t.lo), num(t.hi), num(f_min), num(f_max),
            t.monotone ? "1" : "0", t.found ? "1" : "0", t.note};
}

struct ScanMin {
    ScanCommon s;
    ScanKind kind;
    double p = 1;

    void run(const CLI::App *leaf, const std::string &name) {
        auto specs = expand_all(s.graphs);
        auto opt = s.options();
        auto recs = parallel_map<ScanRecord>(specs.size(), s.c.jobs, [&](std::size_t i) {
            return find_threshold(share(build_named_graph(specs[i])), kind, p, opt);
        });
        Sink out(s.c.out, "scan_" + name + ".csv");
        write_config(out, leaf, "scan " + name);
        out.row({"graph", "parameter", "threshold", "lo", "hi", "f_min", "f_max", "monotone", "found", "note"});
        for (std::size_t i = 0; i < specs.size(); i++)
            out.row(threshold_fields(specs[i], recs[i].parameter, recs[i].threshold, recs[i].f_min, recs[i].f_max));
    }
};

struct ScanFmax {
    ScanCommon s;
    std::string p = "0.95..1:0.005", start = "werner:0.99";

    void run(const CLI::App *leaf) {
        auto specs = expand_all(s.graphs);
        auto ps = cli::parse_double_range(p);
        for (double v : ps)
            check_unit(v, "gate noise");
        std::vector<std::pair<std::string, double>> jobs;
        for (auto &g : specs)
            for (double v : ps)
                jobs.push_back({g, v});
        auto res = parallel_map<FmaxResult>(jobs.size(), s.c.jobs, [&](std::size_t i) {
            auto g = share(build_named_graph(jobs[i].first));
            return find_fmax(cli::parse_state(g, start), jobs[i].second, std::max(s.steps, 5000));
        });
        Sink out(s.c.out, "scan_fmax.csv");
        write_config(out, leaf, "scan fmax");
        out.row({"graph", "p", "f_max", "p1_first", "p2_first", "adaptive", "steps", "converged"});
        for (std::size_t i = 0; i < jobs.size(); i++) {
            auto &r = res[i];
            out.row({jobs[i].first, num(jobs[i].second), r.f_max ? num(*r.f_max) : "", num(r.p1_first),
                     num(r.p2_first), num(r.adaptive), std::to_string(r.steps), r.converged ? "1" : "0"});
        }
    }
};

struct ScanPmin {
    ScanCommon s;
    std::string model = "white";

    void run(const CLI::App *leaf) {
        auto specs = expand_all(s.graphs);
        auto opt = s.options();
        auto res = parallel_map<std::vector<std::string>>(specs.size(), s.c.jobs, [&](std::size_t i) {
            auto g = build_named_graph(specs[i]);
            if (model == "white") {
                auto r = find_threshold(share(std::move(g)), ScanKind::p_min, 1, opt);
                return threshold_fields(specs[i], model, r.threshold, NAN, r.f_max);
            }
            auto m = model == "binaryAB" ? BinaryModel::bitflip_b_phaseflip_a : BinaryModel::bitflip_b;
            return threshold_fields(specs[i], model, binary_error_pmin(g, m, opt), NAN, NAN);
        });
        Sink out(s.c.out, "scan_pmin.csv");
        write_config(out, leaf, "scan pmin");
        out.row({"graph", "model", "p_min", "lo", "hi", "f_min", "f_max", "monotone", "found", "note"});
        for (auto &r : res)
            out.row(r);
    }
};

struct AnalyticGhz {
    Common c;
    std::string n = "2..14";
    bool pcrit_only = false;
    double x = NAN, p = NAN;

    void run(const CLI::App *leaf) {
        auto ns = cli::parse_int_range(n);
        bool step = !pcrit_only && !std::isnan(x);
        if (step && std::isnan(p))
            p = 1;
        Sink out(c.out, "analytic_ghz.csv");
        write_config(out, leaf, "analytic ghz");
        if (step)
            out.row({"N", "p_crit", "x", "p", "x_next_fidelity", "x_max"});
        else
            out.row({"N", "p_crit"});
        for (int k : ns) {
            if (!step) {
                out.row({std::to_string(k), num(ghz_p_crit(k))});
                continue;
            }
            auto r = ghz_binary(x, p, k);
            out.row({std::to_string(k), num(r.p_crit), num(x), num(p), num(r.x_next_fidelity),
                     r.x_max ? num(*r.x_max) : ""});
        }
    }
};

struct AnalyticCluster {
    Common c;
    std::string m = "3..49:2", q;

    void run(const CLI::App *leaf) {
        auto ms = cli::parse_int_range(m);
        Sink out(c.out, "analytic_cluster.csv");
        write_config(out, leaf, "analytic cluster");
        if (q.empty()) {
            out.row({"M", "N", "q_crit"});
            for (int k : ms)
                out.row({std::to_string(k), std::to_string(2 * k), num(closed_cluster_qcrit(k))});
            return;
        }
        auto qs = cli::parse_double_range(q);
        out.row({"M", "N", "q", "A", "B", "C", "delta", "x_minus", "x_plus", "purifiable"});
        for (int k : ms)
            for (double v : qs) {
                auto r = closed_cluster(v, k);
                out.row({std::to_string(k), std::to_string(2 * k), num(v), num(r.a), num(r.b), num(r.c), num(r.delta),
                         num(r.x_minus), num(r.x_plus), r.purifiable ? "1" : "0"});
            }
    }
};

struct HashingYield {
    Common c;
    std::string graph = "chain:4";
    std::vector<std::string> states{"werner:0.78"};

    void run(const CLI::App *leaf) {
        auto g = share(build_named_graph(graph));
        Sink out(c.out, "hashing.csv");
        write_config(out, leaf, "hashing yield");
        out.row({"graph", "state", "fidelity", "entropy_a", "entropy_b", "yield_raw", "yield"});
        for (auto &spec : expand_all(states)) {
            auto s = cli::parse_state(g, spec);
            auto d = diagnostics(s);
            double sa = 0, sb = 0;
            for (int j = 0; j < g->size(); j++)
                (g->is_a(j) ? sa : sb) = std::max(g->is_a(j) ? sa : sb, d.bit_entropies[j]);
            out.row({graph, spec, num(s.fidelity()), num(sa), num(sb), num(hashing_yield_raw(s)),
                     num(hashing_yield(s))});
        }
    }
};

struct HashingReadout {
    Common c;
    std::string graph = "chain:4";
    int copies = 3, trials = 1000;
    std::uint64_t seed = 1;

    void run(const CLI::App *leaf) {
        auto g = build_named_graph(graph);
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<Label> lab(0, g.dim() - 1);
        int fail[2] = {0, 0};
        for (int t = 0; t < trials; t++) {
            std::vector<Label> ls(copies);
            Label direct = 0;
            for (auto &l : ls) {
                l = lab(rng);
                direct ^= l;
            }
            for (int s = 0; s < 2; s++) {
                Side side = s ? Side::b : Side::a;
                Label mask = s ? g.b_mask() : g.a_mask();
                if (parity_readout(g, ls, side, rng) != (direct & mask))
                    fail[s]++;
            }
        }
        Sink out(c.out, "hashing_readout.csv");
        write_config(out, leaf, "hashing readout");
        out.row({"graph", "side", "copies", "trials", "failures"});
        for (int s = 0; s < 2; s++)
            out.row({graph, s ? "B" : "A", std::to_string(copies), std::to_string(trials), std::to_string(fail[s])});
        if (fail[0] || fail[1])
            g_protocol_failure = true;
    }
};

struct FlagsRun {
    Common c;
    int n = 4, steps = 30;
    double p = 0.97;
    std::string start = "werner:0.8", first = "P1";

    void run(const CLI::App *leaf) {
        FlagMatrix m(n);
        auto s = cli::parse_state(m.graph_ptr(), start);
        for (Label k = 0; k < m.dim(); k++)
            m.at(k, 0) = s[k];
        auto rows = run_flags(std::move(m), p, steps, parse_sub(first));
        Sink out(c.out, "flags.csv");
        write_config(out, leaf, "flags run");
        out.row({"step", "subprotocol", "F", "F_cond", "success_prob"});
        out.row({"0", "", num(s.fidelity()), num(s.fidelity()), ""});
        for (auto &r : rows)
            out.row({std::to_string(r.step), to_string(r.which), num(r.f), num(r.f_cond), num(r.success_prob)});
    }
};

CreationNoise parse_schedule(const std::string &s) {
    if (s == "table_fit")
        return CreationNoise::table_fit;
    if (s == "before_each_gate")
        return CreationNoise::before_each_gate;
    throw std::invalid_argument("unknown schedule '" + s + "' (table_fit, before_each_gate)");
}

struct LatticeTable {
    Common c;
    double p = 0.99;
    std::string n = "2..6", schedule = "table_fit";

    void run(const CLI::App *leaf) {
        auto ns = cli::parse_int_range(n);
        auto sched = parse_schedule(schedule);
        check_unit(p, "gate noise");
        struct Row {
            double f;
            LatticeFmax m;
        };
        auto rows = parallel_map<Row>(ns.size(), c.jobs, [&](std::size_t i) {
            return Row{create_chain(ns[i], p, sched).fidelity, lattice_fmax(ns[i], p, sched)};
        });
        Sink out(c.out, "lattice_table.csv");
        write_config(out, leaf, "lattice table");
        out.row({"N", "p", "F", "F_max", "p1_first", "p2_first", "adaptive"});
        for (std::size_t i = 0; i < ns.size(); i++)
            out.row({std::to_string(ns[i]), num(p), num(rows[i].f), num(rows[i].m.f_max), num(rows[i].m.p1_first),
                     num(rows[i].m.p2_first), num(rows[i].m.adaptive)});
    }
};

struct LatticePump {
    Common c;
    int n = 4, rounds = 20;
    double p = 0.99;
    std::string schedule = "table_fit", start;

    void run(const CLI::App *leaf) {
        auto sched = parse_schedule(schedule);
        LabelDistribution rho0 = start.empty() ? create_chain(n, p, sched).state
                                               : cli::parse_state(share(make_chain(n)), start);
        auto rows = pumping_run(rho0, p, rounds);
        Sink out(c.out, "lattice_pump.csv");
        write_config(out, leaf, "lattice pump");
        out.row({"round", "subprotocol", "fidelity", "success_prob", "failed"});
        out.row({"0", "", num(rho0.fidelity()), "", "0"});
        for (auto &r : rows)
            out.row({std::to_string(r.round), to_string(r.which), num(r.fidelity), num(r.success_prob),
                     r.failed ? "1" : "0"});
        if (!rows.empty() && rows.back().failed)
            g_protocol_failure = true;
    }
};

struct CompareBipartite {
    Common c;
    std::string graph = "chain:4", p = "0.97,0.98,0.99";
    int hub = 1;

    void run(const CLI::App *leaf) {
        auto g = share(build_named_graph(graph));
        if (hub < 1 || hub > g->size())
            throw std::invalid_argument("--hub must name a vertex 1.." + std::to_string(g->size()));
        auto ps = cli::parse_double_range(p);
        struct Row {
            std::optional<double> multi, bi;
        };
        auto rows = parallel_map<Row>(ps.size(), c.jobs, [&](std::size_t i) {
            check_unit(ps[i], "gate noise");
            return Row{find_fmax(g, ps[i]).f_max, bipartite_bound(ps[i], g, hub - 1)};
        });
        Sink out(c.out, "compare_bipartite.csv");
        write_config(out, leaf, "compare bipartite");
        out.row({"graph", "p", "f_max_multiparty", "f_bipartite", "multiparty_better"});
        for (std::size_t i = 0; i < ps.size(); i++) {
            auto &r = rows[i];
            std::string better = r.multi && (!r.bi || *r.multi > *r.bi) ? "1" : (r.multi || r.bi ? "0" : "");
            out.row({graph, num(ps[i]), r.multi ? num(*r.multi) : "", r.bi ? num(*r.bi) : "", better});
        }
    }
};

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Recurrence purification of two-colorable graph states"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();
    std::function<void()> action;

    auto leaf = [&](CLI::App *parent, const std::string &name, const std::string &help) {
        auto *s = parent->add_subcommand(name, help);
        s->option_defaults()->always_capture_default();
        return s;
    };

    auto *graph = app.add_subcommand("graph", "inspect graphs")->require_subcommand(1);
    GraphShow gs;
    {
        auto *s = leaf(graph, "show", "list vertices, colour classes and neighbours");
        add_out(s, gs.c);
        s->add_option("--graph", gs.graph, "ghz:N, chain:N[:closed], grid:XxY[:wrapx][:wrapy], gnk:N,k, steane7, file:PATH");
        s->add_flag("--edges", gs.edges, "emit the edge-list file format instead");
        s->callback([&, s] { action = [&, s] { gs.run(s); }; });
    }

    auto *purify = app.add_subcommand("purify", "run the recurrence protocol")->require_subcommand(1);
    PurifyRun pr;
    {
        auto *s = leaf(purify, "run", "fidelity trace of one sequence");
        add_out(s, pr.c);
        s->add_option("--graph", pr.graph, "graph spec");
        s->add_option("--state", pr.state, "pure, werner:X, channel:Q, binary:F, file:PATH");
        s->add_option("--p", pr.p, "gate noise (1 = perfect)")->check(CLI::Range(0.0, 1.0));
        s->add_option("--strategy", pr.strategy, "alternate:P1, alternate:P2, adaptive, fixed:P1P1P2...");
        s->add_option("--steps", pr.steps, "step budget")->check(CLI::PositiveNumber);
        s->add_option("--tol", pr.tol, "fixed-point tolerance");
        s->add_option("--dump-state", pr.dump_state, "also write the final label distribution here");
        s->callback([&, s] { action = [&, s] { pr.run(s); }; });
    }

    auto *scan = app.add_subcommand("scan", "threshold and fixed-point scans")->require_subcommand(1);
    ScanMin fmin{{}, ScanKind::x_min}, qmin{{}, ScanKind::q_min};
    for (auto [name, sm, help] : {std::tuple{"fmin", &fmin, "minimal Werner parameter and fidelity"},
                                  std::tuple{"qmin", &qmin, "minimal channel-noise parameter and fidelity"}}) {
        auto *s = leaf(scan, name, help);
        sm->s.add(s);
        s->add_option("--p", sm->p, "gate noise during purification")->check(CLI::Range(0.0, 1.0));
        std::string n = name;
        s->callback([&, s, sm, n] { action = [&, s, sm, n] { sm->run(s, n); }; });
    }
    ScanFmax fmax;
    {
        auto *s = leaf(scan, "fmax", "reachable fidelity versus gate noise");
        fmax.s.add(s);
        s->add_option("--p", fmax.p, "gate noise values: list or lo..hi:step");
        s->add_option("--start", fmax.start, "initial state");
        s->callback([&, s] { action = [&, s] { fmax.run(s); }; });
    }
    ScanPmin pmin;
    {
        auto *s = leaf(scan, "pmin", "minimal gate reliability");
        pmin.s.add(s);
        s->add_option("--model", pmin.model, "white (depolarizing), binaryAB, bitflipB")
            ->check(CLI::IsMember({"white", "binaryAB", "bitflipB"}));
        s->callback([&, s] { action = [&, s] { pmin.run(s); }; });
    }

    auto *analytic = app.add_subcommand("analytic", "closed-form models")->require_subcommand(1);
    AnalyticGhz ag;
    {
        auto *s = leaf(analytic, "ghz", "GHZ states with bit-flip noise");
        add_out(s, ag.c);
        s->add_option("--n", ag.n, "sizes, e.g. 2..14");
        s->add_flag("--pcrit", ag.pcrit_only, "critical reliability only");
        s->add_option("--x", ag.x, "mixture parameter for a single step");
        s->add_option("--p", ag.p, "bit-flip reliability for the step");
        s->callback([&, s] { action = [&, s] { ag.run(s); }; });
    }
    AnalyticCluster ac;
    {
        auto *s = leaf(analytic, "cluster", "closed chains N=2M with bit flips on one side");
        add_out(s, ac.c);
        s->add_option("--m", ac.m, "odd M values, e.g. 3..49:2");
        s->add_option("--q", ac.q, "flip reliabilities; without it the critical q is listed");
        s->callback([&, s] { action = [&, s] { ac.run(s); }; });
    }

    auto *hashing = app.add_subcommand("hashing", "hashing protocol")->require_subcommand(1);
    HashingYield hy;
    {
        auto *s = leaf(hashing, "yield", "asymptotic yield lower bound");
        add_out(s, hy.c);
        s->add_option("--graph", hy.graph, "graph spec");
        s->add_option("--state", hy.states, "states; one {a..b} group is expanded");
        s->callback([&, s] { action = [&, s] { hy.run(s); }; });
    }
    HashingReadout hr;
    {
        auto *s = leaf(hashing, "readout", "randomized check of the multi-copy parity readout");
        add_out(s, hr.c);
        s->add_option("--graph", hr.graph, "graph spec");
        s->add_option("--copies", hr.copies, "copies per block")->check(CLI::Range(2, 64));
        s->add_option("--trials", hr.trials, "random trials")->check(CLI::PositiveNumber);
        s->add_option("--seed", hr.seed, "random seed");
        s->callback([&, s] { action = [&, s] { hr.run(s); }; });
    }

    auto *flags = app.add_subcommand("flags", "error-flag tracking on open chains")->require_subcommand(1);
    FlagsRun fr;
    {
        auto *s = leaf(flags, "run", "plain and conditional fidelity trace");
        add_out(s, fr.c);
        s->add_option("--n", fr.n, "chain length")->check(CLI::Range(1, max_flag_qubits));
        s->add_option("--p", fr.p, "gate noise")->check(CLI::Range(0.0, 1.0));
        s->add_option("--steps", fr.steps, "alternating steps")->check(CLI::PositiveNumber);
        s->add_option("--start", fr.start, "initial state, carried with a clean flag");
        s->add_option("--first", fr.first, "first subprotocol")->check(CLI::IsMember({"P1", "P2"}));
        s->callback([&, s] { action = [&, s] { fr.run(s); }; });
    }

    auto *lattice = app.add_subcommand("lattice", "noisy chain creation in a lattice")->require_subcommand(1);
    LatticeTable lt;
    {
        auto *s = leaf(lattice, "table", "creation fidelity and purified fixed point");
        add_out(s, lt.c);
        add_jobs(s, lt.c);
        s->add_option("--p", lt.p, "gate noise")->check(CLI::Range(0.0, 1.0));
        s->add_option("--n", lt.n, "chain lengths, e.g. 2..6");
        s->add_option("--schedule", lt.schedule, "table_fit or before_each_gate");
        s->callback([&, s] { action = [&, s] { lt.run(s); }; });
    }
    LatticePump lp;
    {
        auto *s = leaf(lattice, "pump", "entanglement pumping trace");
        add_out(s, lp.c);
        s->add_option("--n", lp.n, "chain length")->check(CLI::Range(2, max_vertices));
        s->add_option("--p", lp.p, "gate noise")->check(CLI::Range(0.0, 1.0));
        s->add_option("--rounds", lp.rounds, "pumping rounds")->check(CLI::PositiveNumber);
        s->add_option("--schedule", lp.schedule, "creation schedule for the fresh copies");
        s->add_option("--start", lp.start, "fresh state instead of the created chain");
        s->callback([&, s] { action = [&, s] { lp.run(s); }; });
    }

    auto *compare = app.add_subcommand("compare", "comparisons")->require_subcommand(1);
    CompareBipartite cb;
    {
        auto *s = leaf(compare, "bipartite", "multiparty fixed point versus distributed purified pairs");
        add_out(s, cb.c);
        add_jobs(s, cb.c);
        s->add_option("--graph", cb.graph, "graph spec");
        s->add_option("--p", cb.p, "gate noise values");
        s->add_option("--hub", cb.hub, "vertex holding one end of every pair");
        s->callback([&, s] { action = [&, s] { cb.run(s); }; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }
    try {
        action();
    } catch (const ProtocolFailure &e) {
        std::cerr << "gpur: " << e.what() << "\n";
        return 1;
    } catch (const std::exception &e) {
        // bad graph specs, out-of-range parameters, unreadable files
        std::cerr << "gpur: " << e.what() << "\n";
        return 2;
    }
    return g_protocol_failure ? 1 : 0;
}
