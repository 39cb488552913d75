#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>

#include "tiling/generators.hpp"
#include "tiling/json_io.hpp"
#include "tiling/oracles.hpp"

using namespace tiling;

namespace {

// Exit codes: 0 pass/found, 1 refuted/not-found, 2 input error, 3 budget.
constexpr int exit_pass = 0;
constexpr int exit_fail = 1;
constexpr int exit_input = 2;
constexpr int exit_budget = 3;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error(errc::parse, "cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Rational parse_rat_flag(const std::string& s, const std::string& flag) {
    auto r = parse_rational(s);
    if (!r) throw error(errc::parse, "flag " + flag + ": bad rational '" + s + "'");
    return *r;
}

struct ReportSink {
    json report;
    std::string out_path;
    std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

    ReportSink(const std::string& command, unsigned long long seed) {
        report["schema"] = 1;
        report["command"] = command;
        report["seed"] = seed;
        report["inputs"] = json::object();
        report["parameters"] = json::object();
        report["results"] = json::object();
    }

    void input(const std::string& name, const std::string& content) {
        report["inputs"][name] = {{"bytes", content.size()}, {"fnv1a", fnv1a(content)}};
    }

    int finish(int code) {
        auto us = std::chrono::duration_cast<std::chrono::microseconds>(
                      std::chrono::steady_clock::now() - started)
                      .count();
        report["timing_us"] = us;
        report["exit"] = code;
        std::string text = report.dump(2);
        if (!out_path.empty()) {
            std::ofstream out(out_path);
            out << text << "\n";
        }
        std::cout << text << "\n";
        return code;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"perfect mixed graph tilings: invariants, frameworks, wildcards, allocations"};
    app.require_subcommand(1);

    unsigned long long seed = 0;
    long long budget = 10'000'000;
    int jobs = 1;
    std::string json_out;
    app.add_option("--seed", seed, "seed for all randomised steps");
    app.add_option("--budget", budget, "search budget (elementary evaluations)");
    app.add_option("--jobs", jobs, "parallelism across independent sub-tasks");
    app.add_option("--json", json_out, "write the report to this file too");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "clique hypergraph structure of a host graph");
    analyze->fallthrough();
    std::string an_file;
    int an_k = 3;
    analyze->add_option("graph", an_file, "graph file")->required();
    analyze->add_option("--k", an_k, "clique uniformity")->required();

    // crit
    auto* crit = app.add_subcommand("crit", "chromatic profile of a guest tiling");
    crit->fallthrough();
    std::string cr_file;
    crit->add_option("guest", cr_file, "guest file")->required();

    // certify
    auto* certify = app.add_subcommand("certify", "tiling-framework conditions of a host graph");
    certify->fallthrough();
    std::string ce_file, ce_chi = "3", ce_rho = "0", ce_mu, ce_degseq_mu, ce_density;
    std::string ce_mu_flag = "1/4";
    int ce_t = 1, ce_l = 1;
    bool ce_degree = false;
    certify->add_option("graph", ce_file, "graph file")->required();
    certify->add_option("--chi", ce_chi, "chi as p/q");
    certify->add_option("--rho", ce_rho, "rho as p/q");
    certify->add_option("--t", ce_t, "tight component budget");
    certify->add_option("--l", ce_l, "loose component budget");
    certify->add_option("--robust", ce_mu, "also check mu-robustness (mu as p/q)");
    certify->add_flag("--degree", ce_degree, "check the minimum-degree sufficient condition");
    certify->add_option("--mu", ce_mu_flag, "mu as p/q for the degree condition");
    certify->add_option("--degseq", ce_degseq_mu, "check the strong degree sequence at this mu");
    certify->add_option("--density", ce_density, "check (rho,d)-density as 'rho,d,mu'");

    // embed
    auto* embed = app.add_subcommand("embed", "allocate a guest into a blow-up host");
    embed->fallthrough();
    std::string em_guest, em_reduced, em_chi = "3", em_rho = "1/10";
    int em_m = 2;
    embed->add_option("guest", em_guest, "guest file")->required();
    embed->add_option("reduced", em_reduced, "reduced graph file (a bottle tiling)")->required();
    embed->add_option("--m", em_m, "cluster size")->required();
    embed->add_option("--chi", em_chi, "chi as p/q");
    embed->add_option("--rho", em_rho, "rho as p/q");

    // flexi
    auto* flexi = app.add_subcommand("flexi", "certify or refute flexi-chromatic structure");
    flexi->fallthrough();
    std::string fl_file, fl_kind = "proper";
    int fl_k = 2, fl_s = 1, fl_p = 0;
    bool fl_elide = false;
    flexi->add_option("guest", fl_file, "guest file")->required();
    flexi->add_option("--kind", fl_kind, "proper|topological");
    flexi->add_option("--k", fl_k, "colour count")->required();
    flexi->add_option("--s", fl_s, "demand radius")->required();
    flexi->add_option("--p", fl_p, "approximation slack");
    flexi->add_flag("--elide-witnesses", fl_elide, "summarise the witness table");

    // suite
    auto* suite = app.add_subcommand("suite", "property-test suites");
    suite->fallthrough();
    auto* suite_run = suite->add_subcommand("run", "run a suite (or 'all')");
    suite_run->fallthrough();
    auto* suite_list = suite->add_subcommand("list", "list suites");
    std::string su_name = "all";
    suite_run->add_option("name", su_name, "suite name or 'all'");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze) {
            ReportSink sink("analyze", seed);
            sink.out_path = json_out;
            std::string text = slurp(an_file);
            sink.input("graph", text);
            Graph g = parse_graph(text);
            sink.report["parameters"] = {{"k", an_k}};
            auto j = clique_hypergraph(g, an_k);
            auto d = decompose(j);
            json res;
            res["n"] = g.n();
            res["edges"] = g.edge_count();
            res["clique_edges"] = j.edges.size();
            res["decomposition"] = to_json(d);
            json linkage = json::array();
            for (Vertex v = 0; v < g.n(); ++v) {
                auto l = is_linked(j, v);
                json one;
                one["vertex"] = v;
                one["linked"] = l.has_value();
                if (l) one["witness"] = {{"e", l->e}, {"f", l->f}};
                linkage.push_back(one);
            }
            res["linkage"] = linkage;
            sink.report["results"] = res;
            return sink.finish(exit_pass);
        }

        if (*crit) {
            ReportSink sink("crit", seed);
            sink.out_path = json_out;
            std::string text = slurp(cr_file);
            sink.input("guest", text);
            TiledGuest h = parse_guest(text);
            Budget bud{budget, 0};
            auto prof = guest_profile(h, bud);
            json res;
            res["profile"] = to_json(prof);
            res["fcr"] = is_fcr(prof);
            sink.report["results"] = res;
            return sink.finish(exit_pass);
        }

        if (*certify) {
            ReportSink sink("certify", seed);
            sink.out_path = json_out;
            std::string text = slurp(ce_file);
            sink.input("graph", text);
            Graph g = parse_graph(text);
            Rational chi = parse_rat_flag(ce_chi, "--chi");
            Rational rho = parse_rat_flag(ce_rho, "--rho");
            sink.report["parameters"] = {{"chi", ce_chi}, {"rho", ce_rho}, {"t", ce_t}, {"l", ce_l}};
            json res;
            bool pass;
            try {
                auto rep = check_framework(g, chi, rho, ce_t, ce_l);
                res["framework"] = to_json(rep);
                pass = rep.pass;
            } catch (const error& e) {
                if (e.code() == errc::capped) {
                    sink.report["results"] = {{"error", e.what()}};
                    return sink.finish(exit_budget);
                }
                throw;
            }
            if (!ce_mu.empty()) {
                Rational mu = parse_rat_flag(ce_mu, "--robust");
                auto rr = check_robust(g, mu, chi, rho, ce_t, ce_l, seed);
                json rj;
                rj["verdict"] = rr.verdict == RobustVerdict::pass_exhaustive ? "PASS(exhaustive)"
                                : rr.verdict == RobustVerdict::pass_sampled
                                    ? "PASS(sampled," + std::to_string(rr.candidates_checked) + ")"
                                    : "FAIL";
                rj["candidates_checked"] = rr.candidates_checked;
                if (rr.verdict == RobustVerdict::fail) {
                    rj["counterexample"] = {{"removed_vertices", rr.removed_vertices}};
                    json edges = json::array();
                    for (auto [u, v] : rr.removed_edges) edges.push_back({u, v});
                    rj["counterexample"]["removed_edges"] = edges;
                }
                res["robust"] = rj;
                pass = pass && rr.verdict != RobustVerdict::fail;
            }
            if (ce_degree) {
                auto dr = check_degree_framework(g, chi, parse_rat_flag(ce_mu_flag, "--mu"));
                json dj;
                dj["hypothesis"] = dr.hypothesis;
                dj["t_formula"] = to_json(dr.t_formula);
                dj["t"] = dr.t;
                dj["l"] = dr.l;
                if (dr.conclusion) dj["conclusion"] = to_json(*dr.conclusion);
                if (!dr.hypothesis) dj["verdict"] = "HYPOTHESIS_FAIL";
                res["degree"] = dj;
            }
            if (!ce_degseq_mu.empty()) {
                Rational mu = parse_rat_flag(ce_degseq_mu, "--degseq");
                res["degseq_strong"] = check_strong_degree_sequence(g, chi, mu);
            }
            if (!ce_density.empty()) {
                auto c1 = ce_density.find(',');
                auto c2 = ce_density.find(',', c1 + 1);
                if (c1 == std::string::npos || c2 == std::string::npos)
                    throw error(errc::parse, "--density wants 'rho,d,mu'");
                auto drho = parse_rat_flag(ce_density.substr(0, c1), "--density");
                auto dd = parse_rat_flag(ce_density.substr(c1 + 1, c2 - c1 - 1), "--density");
                auto dmu = parse_rat_flag(ce_density.substr(c2 + 1), "--density");
                auto den = check_uniform_density(g, drho, dd, dmu, seed);
                json dj;
                dj["pass"] = den.pass;
                dj["exhaustive"] = den.exhaustive;
                dj["degree_ok"] = den.degree_ok;
                if (!den.pass) dj["witness"] = den.witness;
                res["density"] = dj;
            }
            sink.report["results"] = res;
            return sink.finish(pass ? exit_pass : exit_fail);
        }

        if (*embed) {
            ReportSink sink("embed", seed);
            sink.out_path = json_out;
            std::string gtext = slurp(em_guest), rtext = slurp(em_reduced);
            sink.input("guest", gtext);
            sink.input("reduced", rtext);
            TiledGuest h = parse_guest(gtext);
            Graph reduced = parse_graph(rtext);
            Rational chi = parse_rat_flag(em_chi, "--chi");
            Rational rho = parse_rat_flag(em_rho, "--rho");
            sink.report["parameters"] = {{"m", em_m}, {"chi", em_chi}, {"rho", em_rho}};
            BlowupHost host{reduced, em_m};
            json res;
            try {
                auto alloc = allocate_to_blowup(h, host, chi, rho, seed, budget);
                Graph expanded = host.expand();
                if (!validate_embedding(h, expanded, alloc.embedding))
                    throw error(errc::allocation_failed,
                                "internal: embedding failed independent validation");
                AllocationContext ctx(h, reduced);
                res["allocation"] = to_json(ctx, alloc.u);
                res["cluster_loads"] = alloc.loads;
                res["embedding"] = to_json(alloc.embedding);
                res["validated"] = true;
                sink.report["results"] = res;
                return sink.finish(exit_pass);
            } catch (const error& e) {
                if (e.code() == errc::allocation_failed || e.code() == errc::precondition) {
                    sink.report["results"] = {{"error", e.what()}};
                    return sink.finish(exit_fail);
                }
                throw;
            }
        }

        if (*flexi) {
            ReportSink sink("flexi", seed);
            sink.out_path = json_out;
            std::string text = slurp(fl_file);
            sink.input("guest", text);
            TiledGuest h = parse_guest(text);
            ColourKind kind = fl_kind == "topological" ? ColourKind::topological : ColourKind::proper;
            sink.report["parameters"] = {{"kind", fl_kind}, {"k", fl_k}, {"s", fl_s}, {"p", fl_p}};
            auto out = certify_flexi(h, kind, fl_k, fl_s, fl_p, budget);
            json res;
            res["budget_used"] = out.budget_used;
            if (out.status == SearchStatus::found) {
                res["status"] = "certified";
                res["certificate"] = to_json(*out.certificate, fl_elide);
                auto chk = verify_certificate(h.flatten(), *out.certificate);
                res["reverified"] = chk.ok;
                sink.report["results"] = res;
                return sink.finish(chk.ok ? exit_pass : exit_fail);
            }
            if (out.status == SearchStatus::none) {
                res["status"] = "refuted";
                json cex = json::array();
                for (const auto& [central, demand] : out.refutation)
                    cex.push_back({{"central_ord", central}, {"unmatched_demand", demand}});
                res["counterexamples"] = cex;
                sink.report["results"] = res;
                return sink.finish(exit_fail);
            }
            res["status"] = "UNDECIDED";
            sink.report["results"] = res;
            return sink.finish(exit_budget);
        }

        if (*suite) {
            if (*suite_list) {
                for (const auto& n : suite_names()) std::cout << n << "\n";
                return exit_pass;
            }
            ReportSink sink("suite run", seed);
            sink.out_path = json_out;
            sink.report["parameters"] = {{"name", su_name}, {"budget", budget}, {"jobs", jobs}};
            std::vector<std::string> names =
                su_name == "all" ? suite_names() : std::vector<std::string>{su_name};
            std::vector<SuiteResult> results(names.size());
            if (jobs > 1 && names.size() > 1) {
                std::vector<std::future<SuiteResult>> futs;
                for (const auto& n : names)
                    futs.push_back(std::async(std::launch::async,
                                              [&, n] { return run_suite(n, seed, budget); }));
                for (size_t i = 0; i < futs.size(); ++i) results[i] = futs[i].get();
            } else {
                for (size_t i = 0; i < names.size(); ++i) results[i] = run_suite(names[i], seed, budget);
            }
            bool pass = true;
            json arr = json::array();
            for (const auto& r : results) {
                pass = pass && r.pass;
                arr.push_back(to_json(r));
            }
            sink.report["results"]["suites"] = arr;
            sink.report["results"]["pass"] = pass;
            return sink.finish(pass ? exit_pass : exit_fail);
        }
    } catch (const error& e) {
        std::cerr << e.what() << "\n";
        switch (e.code()) {
            case errc::parse:
            case errc::precondition:
                return exit_input;
            case errc::budget:
            case errc::capped:
                return exit_budget;
            default:
                return exit_fail;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    }
    return exit_input;
}
