#include "lcmod/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lcmod/instance.hpp"
#include "lcmod/kernel_pce.hpp"
#include "lcmod/kernel_rlc.hpp"
#include "lcmod/kernel_save.hpp"
#include "lcmod/oracle.hpp"
#include "lcmod/solver_partition.hpp"
#include "lcmod/solver_sieve.hpp"

namespace lcmod {

namespace {

constexpr int EXIT_YES = 0;
constexpr int EXIT_NO = 1;
constexpr int EXIT_USAGE = 2;
constexpr int EXIT_INTERNAL = 3;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write file: " + path);
    out << text;
}

std::vector<std::vector<int>> parse_sets(const std::string& text) {
    std::vector<std::vector<int>> family;
    std::istringstream groups(text);
    std::string group;
    while (std::getline(groups, group, ';')) {
        std::vector<int> f;
        std::istringstream gs(group);
        int x;
        while (gs >> x) f.push_back(x);
        if (!f.empty()) family.push_back(f);
    }
    return family;
}

int cmd_solve(const std::string& file, const std::string& alg, uint64_t seed, int reps, int jobs,
              int cap, std::ostream& out) {
    Instance inst = parse_instance(slurp(file));
    bool yes;
    SolveOptions opt{seed, reps, jobs};
    OracleLimits lim;
    lim.max_vertices = cap;
    if (alg == "sieve") {
        yes = decide_sieve(inst, opt);
    } else if (alg == "partition") {
        yes = decide_partition(inst, opt);
    } else if (alg == "brute") {
        yes = inst.budget ? brute_budget(inst, lim).has_value()
                          : brute_backtrack(inst, lim).has_value();
    } else if (alg == "brute-mod") {
        yes = brute_modulator_enum(inst, lim).has_value();
    } else {
        throw std::invalid_argument("unknown algorithm: " + alg);
    }
    out << (yes ? "YES" : "NO") << '\n';
    return yes ? EXIT_YES : EXIT_NO;
}

int cmd_kernel(const std::string& file, const std::string& problem, std::string trace_path,
               std::ostream& out) {
    Instance inst = parse_instance(slurp(file));
    if (trace_path.empty()) trace_path = file + ".trace";
    if (problem == "pce") {
        PceResult res = kernelize_pce(inst);
        spill(trace_path, res.trace.serialize(inst));
        if (res.no) out << "# answer NO\n";
        out << write_instance(res.reduced);
        return res.no ? EXIT_NO : EXIT_YES;
    }
    if (problem == "rlc") {
        RlcKernel res = kernelize_rlc(inst);
        if (res.yes) out << "# answer YES\n";
        out << write_instance(res.output);
        return EXIT_YES;
    }
    if (problem == "rlc-compress") {
        RlcCompression res = compress_rlc(inst);
        if (res.yes) out << "# answer YES\n";
        out << write_instance(res.output);
        return EXIT_YES;
    }
    if (problem == "save") {
        SaveResult res = kernelize_save(inst);
        if (res.yes) {
            out << "# answer YES\n";
            spill(trace_path, write_coloring(res.certificate, inst));
            return EXIT_YES;
        }
        if (res.no) {
            out << "# answer NO\n";
            out << write_instance(res.pce.reduced);
            return EXIT_NO;
        }
        spill(trace_path, res.pce.trace.serialize(res.pce_input));
        out << write_instance(res.pce.reduced);
        return EXIT_YES;
    }
    throw std::invalid_argument("unknown kernel problem: " + problem);
}

int cmd_gen(const std::string& model, const GenParams& gp, uint64_t seed, int universe,
            const std::string& sets, std::ostream& out) {
    Instance inst;
    if (model == "random" || model == "planted") {
        GenParams p = gp;
        if (model == "planted") p.model = ListModel::PlantedYes;
        else if (p.tag == Tag::RLC) p.model = ListModel::RegularNMinusK;
        inst = gen_random(p, seed);
    } else if (model == "hitting-set") {
        inst = gen_from_hitting_set(universe, parse_sets(sets), gp.k);
    } else if (model == "independent-set") {
        GenParams p = gp;
        p.tag = Tag::LCCM;
        p.k = 0;
        p.list_size = 1;
        Instance base = gen_random(p, seed);   // only the graph is used
        inst = gen_from_independent_set(base.g, gp.k);
    } else {
        throw std::invalid_argument("unknown generator model: " + model);
    }
    out << write_instance(inst);
    return EXIT_YES;
}

int cmd_check(const std::string& file, const std::string& coloring_file, std::ostream& out) {
    Instance inst = parse_instance(slurp(file));
    Coloring col = parse_coloring(slurp(coloring_file), inst);
    const bool ok = verify_coloring(inst, col);
    out << (ok ? "VALID" : "INVALID") << '\n';
    return ok ? EXIT_YES : EXIT_NO;
}

int cmd_bench(const std::string& algs, int n, int kmin, int kmax, int trials, double density,
              int list_size, int colors, uint64_t seed, int reps, int jobs, std::ostream& out) {
    std::vector<std::string> alg_list;
    std::istringstream as(algs);
    std::string a;
    while (std::getline(as, a, ',')) alg_list.push_back(a);

    out << "# bench-csv v1: k,n,alg,median_ms,seed\n";
    for (const std::string& alg : alg_list) {
        for (int k = kmin; k <= kmax; ++k) {
            std::vector<double> times;
            for (int trial = 0; trial < trials; ++trial) {
                GenParams p;
                p.n = n;
                p.k = k;
                p.density = density;
                p.model = ListModel::PlantedYes;
                p.list_size = list_size > 0 ? list_size : std::max(n / 2, 2);
                p.num_colors = colors;
                p.tag = Tag::LCCM;
                Instance inst = gen_random(p, seed + uint64_t(trial) * 1000003ULL + uint64_t(k));
                SolveOptions opt{seed + uint64_t(trial), reps, jobs};
                auto t0 = std::chrono::steady_clock::now();
                bool yes = alg == "partition" ? decide_partition(inst, opt)
                                              : decide_sieve(inst, opt);
                auto t1 = std::chrono::steady_clock::now();
                if (!yes) throw InternalError("bench: planted instance reported NO");
                times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
            }
            std::sort(times.begin(), times.end());
            double median = times[times.size() / 2];
            out << k << ',' << n << ',' << alg << ',' << median << ',' << seed << '\n';
        }
    }
    return EXIT_YES;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"list-coloring solvers and kernels parameterized by clique-modulator size"};
    app.require_subcommand(1);

    std::string file, coloring_file, alg = "sieve", problem = "pce", trace_path;
    std::string model = "random", sets, algs = "sieve";
    uint64_t seed = 1;
    int reps = 2, jobs = 1, cap = 14;
    GenParams gp;
    std::string gen_tag = "LCCM";
    int universe = 0;
    int bn = 60, kmin = 10, kmax = 12, trials = 5, bcolors = 0, blist = 0;
    double bdensity = 0.5;

    auto* solve = app.add_subcommand("solve", "decide a list-coloring instance");
    solve->add_option("file", file)->required();
    solve->add_option("--alg", alg)->check(CLI::IsMember({"sieve", "partition", "brute", "brute-mod"}));
    solve->add_option("--seed", seed);
    solve->add_option("--reps", reps);
    solve->add_option("--jobs", jobs);
    solve->add_option("--cap", cap, "vertex cap for the brute-force oracles");

    auto* kernel = app.add_subcommand("kernel", "kernelize or compress an instance");
    kernel->add_option("file", file)->required();
    kernel->add_option("--problem", problem)
        ->check(CLI::IsMember({"pce", "rlc", "rlc-compress", "save"}));
    kernel->add_option("--trace", trace_path, "side file for the trace (default: <file>.trace)");

    auto* gen = app.add_subcommand("gen", "generate an instance");
    gen->add_option("--model", model)
        ->check(CLI::IsMember({"random", "planted", "hitting-set", "independent-set"}));
    gen->add_option("--n", gp.n);
    gen->add_option("--density", gp.density);
    gen->add_option("--list-size", gp.list_size);
    gen->add_option("--k", gp.k);
    gen->add_option("--colors", gp.num_colors);
    gen->add_option("--pre-frac", gp.precolor_frac);
    gen->add_option("--tag", gen_tag)
        ->check(CLI::IsMember({"LCCM", "PCECM", "RLC", "SAVE"}));
    gen->add_option("--seed", seed);
    gen->add_option("--universe", universe, "hitting-set universe size");
    gen->add_option("--sets", sets, "hitting-set family, e.g. \"1 2;2 3\"");

    auto* check = app.add_subcommand("check", "verify a coloring file against an instance");
    check->add_option("file", file)->required();
    check->add_option("coloring", coloring_file)->required();

    auto* bench = app.add_subcommand("bench", "time the solvers on planted instances");
    bench->add_option("--algs", algs, "comma-separated: sieve,partition");
    bench->add_option("--n", bn);
    bench->add_option("--k-min", kmin);
    bench->add_option("--k-max", kmax);
    bench->add_option("--trials", trials);
    bench->add_option("--density", bdensity);
    bench->add_option("--list-size", blist);
    bench->add_option("--colors", bcolors);
    bench->add_option("--seed", seed);
    bench->add_option("--reps", reps);
    bench->add_option("--jobs", jobs);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return e.get_exit_code() == 0 ? EXIT_YES : EXIT_USAGE;
    }

    try {
        if (solve->parsed()) return cmd_solve(file, alg, seed, reps, jobs, cap, out);
        if (kernel->parsed()) return cmd_kernel(file, problem, trace_path, out);
        if (gen->parsed()) {
            if (auto t = tag_from_name(gen_tag)) gp.tag = *t;
            return cmd_gen(model, gp, seed, universe, sets, out);
        }
        if (check->parsed()) return cmd_check(file, coloring_file, out);
        if (bench->parsed())
            return cmd_bench(algs, bn, kmin, kmax, trials, bdensity, blist, bcolors, seed, reps,
                             jobs, out);
        err << "no subcommand given\n";
        return EXIT_USAGE;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << '\n';
        return EXIT_INTERNAL;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return EXIT_USAGE;
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << '\n';
        return EXIT_USAGE;
    } catch (const CapacityError& e) {
        err << "capacity error: " << e.what() << '\n';
        return EXIT_USAGE;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return EXIT_USAGE;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return EXIT_INTERNAL;
    }
}

} // namespace lcmod
