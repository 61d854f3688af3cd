#include "rcr/acyclic.hpp"
#include "rcr/bench.hpp"
#include "rcr/cr.hpp"
#include "rcr/game.hpp"
#include "rcr/homcount.hpp"
#include "rcr/io.hpp"
#include "rcr/logic.hpp"
#include "rcr/random.hpp"
#include "rcr/rcr.hpp"
#include "rcr/representations.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

using namespace rcr;
using json = nlohmann::json;

namespace {

constexpr const char *kIdNote = "color ids are local to this run; Tup counts distinct element vectors";

struct Common {
    bool json = false;
    bool pad = false;
};

void emit(const Common &c, const json &j, const std::string &text)
{
    if (c.json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

std::vector<std::pair<std::string, std::size_t>> named_histogram(const RefinementTrace &t, std::size_t i)
{
    std::vector<std::pair<std::string, std::size_t>> out;
    for (auto [c, n] : t.histogram(i))
        out.emplace_back("c" + std::to_string(c), n);
    return out;
}

Signature parse_signature_arg(const std::string &s)
{
    std::vector<Symbol> syms;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto slash = item.find('/');
        if (slash == std::string::npos)
            throw Error("signature entries look like NAME/ARITY, got " + item);
        std::string name = item.substr(0, slash);
        name.erase(0, name.find_first_not_of(' '));
        syms.push_back({name, std::stoi(item.substr(slash + 1))});
    }
    return Signature(syms);
}

JoinTree join_tree_for(const Structure &C, const std::string &path)
{
    if (!path.empty())
        return parse_join_tree(read_file(path), C);
    auto J = gyo_join_tree(C);
    if (!J)
        throw Error("structure is not acyclic: no join tree");
    return *J;
}

// "R,3" -> Tup member of the tuple R^A[3]
std::uint32_t tuple_arg(const Structure &A, const std::string &s)
{
    auto comma = s.find(',');
    if (comma == std::string::npos)
        throw Error("tuple reference looks like R,index");
    auto r = A.signature().find(s.substr(0, comma));
    if (!r)
        throw Error("unknown symbol " + s.substr(0, comma));
    std::size_t idx = std::stoul(s.substr(comma + 1));
    if (idx >= A.relation(*r).size())
        throw Error("tuple index out of range");
    return A.tup_index(TupleRef{*r, static_cast<std::uint32_t>(idx)});
}

std::vector<std::size_t> parse_sizes(const std::string &s)
{
    auto dots = s.find("..");
    if (dots == std::string::npos)
        throw Error("--sizes looks like 1e3..1e5");
    auto lo = static_cast<std::size_t>(std::stod(s.substr(0, dots)));
    auto hi = static_cast<std::size_t>(std::stod(s.substr(dots + 2)));
    if (lo == 0 || hi < lo)
        throw Error("bad size range " + s);
    return bench_ladder(lo, hi);
}

// ---------------------------------------------------------------- check

struct CheckReport {
    std::string dir;
    json rows = json::array();
    int failures = 0;

    void record(const std::string &property, std::uint64_t seed, std::size_t cases,
                std::vector<std::pair<std::string, std::string>> bad)
    {
        json row{{"property", property}, {"seed", seed}, {"cases", cases}, {"failures", bad.size()}};
        json files = json::array();
        for (std::size_t i = 0; i < bad.size() && i < 5; ++i) {
            std::filesystem::create_directories(dir);
            std::string path = dir + "/" + property + "-" + std::to_string(i) + ".struct";
            std::ofstream(path) << bad[i].second;
            files.push_back(path);
            row["detail"] = bad[i].first;
        }
        row["counterexamples"] = files;
        failures += !bad.empty();
        rows.push_back(row);
    }
};

void run_check(std::uint64_t seed, std::size_t cases, CheckReport &rep)
{
    Rng root(seed);
    {
        Rng rng = root.split();
        std::vector<std::pair<std::string, std::string>> bad;
        for (std::size_t it = 0; it < cases; ++it) {
            Signature sig = random_signature(rng, 3, 3);
            Structure A = random_structure(sig, {6, 10, SIZE_MAX, 0.2}, rng);
            RefinementTrace t = rcr_run(A);
            CrOptions opt;
            opt.trace = true;
            NodeColoring g = cr_run(grep(A), opt);
            SliceGraph sg = vgrep(A, false);
            NodeColoring v = cr_run(sg.graph, opt);
            for (std::size_t i = 0; i <= t.stable_round; ++i) {
                auto w = v.at(2 * i + 1);
                w.resize(sg.w_count);
                if (canonical_partition(g.at(i)) != canonical_partition(t.at(i)) ||
                    canonical_partition(w) != canonical_partition(t.at(i))) {
                    bad.emplace_back("round " + std::to_string(i), serialize(A));
                    break;
                }
            }
        }
        rep.record("rcr-matches-cr-representations", seed, cases, bad);
    }
    {
        Rng rng = root.split();
        std::vector<std::pair<std::string, std::string>> bad;
        for (std::size_t it = 0; it < cases; ++it) {
            Signature sig = random_signature(rng, 3, 3);
            AcyclicSample s = random_acyclic(sig, rng.range(1, 4), rng);
            Structure A = random_structure(sig, {5, static_cast<std::size_t>(rng.range(1, 8)), SIZE_MAX, 0.2}, rng);
            Count b = hom_bruteforce(s.C, A);
            if (b != hom_acyclic(s.C, s.J, A) || b != hom_multigraph(jtrep(s.C, s.J), grep(A)))
                bad.emplace_back("count mismatch", serialize(s.C) + "# target\n# " + serialize(A));
        }
        rep.record("hom-join-tree-representation", seed, cases, bad);
    }
    {
        Rng rng = root.split();
        std::vector<std::pair<std::string, std::string>> bad;
        for (std::size_t it = 0; it < cases; ++it) {
            Signature sig = random_signature(rng, 2, 3);
            Structure A = random_structure(sig, {4, 5, 5, 0.2}, rng);
            Structure B = random_same_size(A, 4, rng);
            if (A.tup().size() > 6 || B.tup().size() > 6)
                continue;
            bool r = rcr_distinguishes(A, B).has_value();
            GuardedGame g(A, B);
            bool s = g.spoiler_wins(default_round_bound(A, B));
            auto phi = distinguishing_sentence(A, B);
            bool verified = !phi || (evaluate(phi->formula, A) == phi->true_on_a &&
                                     evaluate(phi->formula, B) != phi->true_on_a);
            if (r != s || r != phi.has_value() || !verified)
                bad.emplace_back("three-way disagreement", serialize(A) + "# second structure\n# " + serialize(B));
        }
        rep.record("refinement-game-logic-agree", seed, cases, bad);
    }
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Relational color refinement toolkit"};
    app.require_subcommand(1);
    Common common;
    app.add_flag("--json", common.json, "JSON report instead of text");
    app.add_flag("--pad-universe", common.pad, "cover unused elements with a fresh unary relation");

    std::string f1, f2, f3;
    std::optional<std::size_t> rounds;
    std::string csv_out, rep = "grep", jt_path, tuple_ref;
    bool brute = false, log = false, dot = false;
    std::size_t max_rel = 6, budget = 1000000, cases = 50;
    std::uint64_t seed = 1;

    auto *validate = app.add_subcommand("validate", "parse and validate a structure");
    validate->add_option("structure", f1)->required();

    auto *refine = app.add_subcommand("refine", "run relational color refinement");
    refine->add_option("structure", f1)->required();
    refine->add_option("--rounds", rounds, "round cap");
    refine->add_option("--csv", csv_out, "write the trace CSV to this file ('-' for stdout)");
    refine->add_flag("--log", log, "print the interner log");

    auto *distinguish = app.add_subcommand("distinguish", "compare two structures");
    distinguish->add_option("A", f1)->required();
    distinguish->add_option("B", f2)->required();

    auto *exportc = app.add_subcommand("export", "write a multigraph representation as DOT");
    exportc->add_option("structure", f1)->required();
    exportc->add_option("--rep", rep)
        ->check(CLI::IsMember({"grep", "vgrep", "incidence", "enriched-gaifman", "enriched-incidence", "jtrep"}));
    exportc->add_option("--join-tree", jt_path, "join tree file for jtrep (default: GYO)");

    auto *gyo = app.add_subcommand("gyo", "test acyclicity and print a join tree");
    gyo->add_option("structure", f1)->required();
    gyo->add_flag("--dot", dot, "DOT output");

    auto *homcount = app.add_subcommand("homcount", "count homomorphisms C -> A");
    homcount->add_option("C", f1)->required();
    homcount->add_option("A", f2)->required();
    auto *jt_opt = homcount->add_option("--join-tree", jt_path, "join tree of C");
    homcount->add_flag("--brute", brute, "enumerate all maps")->excludes(jt_opt);

    auto *game = app.add_subcommand("game", "solve the guarded game");
    game->add_option("A", f1)->required();
    game->add_option("B", f2)->required();
    game->add_option("--rounds", rounds, "round budget (default |Tup A| + |Tup B| + 2)");
    game->add_option("--max-relation-size", max_rel, "refuse larger relations");

    auto *synth = app.add_subcommand("synthesize", "color formula or distinguishing sentence");
    synth->add_option("A", f1)->required();
    synth->add_option("B", f2, "second structure; without --tuple a separating sentence is built");
    synth->add_option("--round", rounds, "refinement round i");
    synth->add_option("--tuple", tuple_ref, "R,index of a tuple of A whose round-i color is described");
    synth->add_option("--budget", budget, "maximum number of formula nodes");

    auto *evalc = app.add_subcommand("eval", "evaluate a formula on a structure");
    evalc->add_option("formula", f1)->required();
    evalc->add_option("structure", f2)->required();
    std::vector<std::string> assign;
    evalc->add_option("--assign", assign, "v<n>=element pairs");

    auto *gen = app.add_subcommand("gen", "generate a random structure");
    std::string sig_arg = "E/2,T/3";
    std::size_t elements = 6, tuples = 8, acyclic_nodes = 0;
    double repeat = 0.0;
    gen->add_option("--seed", seed);
    gen->add_option("--signature", sig_arg);
    gen->add_option("--elements", elements);
    gen->add_option("--tuples", tuples);
    gen->add_option("--repeat-bias", repeat);
    gen->add_option("--acyclic", acyclic_nodes, "generate an acyclic structure with this many tuples");
    gen->add_option("--join-tree-out", f3, "write the join tree of an acyclic sample here");

    auto *bench = app.add_subcommand("bench", "time vgrep + cr_run over a size ladder");
    std::string sizes = "1e3..1e5";
    int repeats = 3;
    bench->add_option("--sizes", sizes);
    bench->add_option("--seed", seed);
    bench->add_option("--repeats", repeats);

    auto *check = app.add_subcommand("check", "cross-oracle property suite on generated instances");
    std::string out_dir = "check-failures";
    check->add_option("--seed", seed);
    check->add_option("--cases", cases);
    check->add_option("--out", out_dir, "directory for counterexample files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*validate) {
            Structure A = load_structure(f1, common.pad);
            Metrics m = metrics(A);
            emit(common,
                 {{"ok", true}, {"elements", A.universe_size()}, {"tup", m.size}, {"cohesion", m.cohesion},
                  {"max_arity", A.signature().max_arity()}},
                 "ok: " + std::to_string(A.universe_size()) + " elements, " + std::to_string(m.size) +
                     " tuples (distinct vectors), cohesion " + std::to_string(m.cohesion) + "\n");
        } else if (*refine) {
            Structure A = load_structure(f1, common.pad);
            RefinementTrace t = rcr_run(A, rounds);
            if (!csv_out.empty()) {
                if (csv_out == "-")
                    std::cout << trace_csv(A, t);
                else
                    std::ofstream(csv_out) << trace_csv(A, t);
            }
            json j{{"stable_round", t.stable_round}, {"stable", t.stable}, {"note", kIdNote}};
            std::ostringstream out;
            out << (t.stable ? "stable at round " : "stopped at round ") << t.stable_round << "\n";
            for (std::size_t i = 0; i < t.rounds(); ++i) {
                auto h = named_histogram(t, i);
                j["rounds"].push_back({{"round", i}, {"classes", t.class_count(i)}, {"histogram", h}});
                out << "round " << i << ": " << t.class_count(i) << " classes";
                for (auto &[c, n] : h)
                    out << " " << c << ":" << n;
                out << "\n";
            }
            out << "(" << kIdNote << ")\n";
            if (csv_out != "-")
                emit(common, j, out.str());
            if (log)
                std::cout << interner_log(A, t);
        } else if (*distinguish) {
            Structure A = load_structure(f1, common.pad), B = load_structure(f2, common.pad);
            JointRun jr = rcr_joint(A, B);
            json j{{"distinguished", jr.verdict.has_value()}, {"note", kIdNote}};
            std::string text;
            if (jr.verdict) {
                const Verdict &v = *jr.verdict;
                j["round"] = v.round;
                j["color"] = "c" + std::to_string(v.color);
                j["count_a"] = v.count_a;
                j["count_b"] = v.count_b;
                text = "distinguished: round " + std::to_string(v.round) + " (color c" + std::to_string(v.color) +
                       " occurs " + std::to_string(v.count_a) + " times in A and " + std::to_string(v.count_b) +
                       " times in B)\n";
            } else {
                text = "indistinguishable\n";
            }
            emit(common, j, text + "(" + kIdNote + ")\n");
        } else if (*exportc) {
            Structure A = load_structure(f1, common.pad);
            ColoredMultigraph g;
            if (rep == "grep")
                g = grep(A);
            else if (rep == "vgrep")
                g = vgrep(A).graph;
            else if (rep == "incidence")
                g = incidence(A);
            else if (rep == "enriched-gaifman")
                g = enriched_gaifman(A);
            else if (rep == "enriched-incidence")
                g = enriched_incidence(A);
            else
                g = jtrep(A, join_tree_for(A, jt_path));
            std::cout << to_dot(g, rep == "jtrep" ? "jtrep" : rep);
        } else if (*gyo) {
            Structure A = load_structure(f1, common.pad);
            auto J = gyo_join_tree(A);
            if (!J) {
                emit(common, {{"acyclic", false}}, "not acyclic\n");
            } else if (dot) {
                std::cout << join_tree_dot(*J, A);
            } else {
                emit(common, {{"acyclic", true}, {"join_tree", serialize_join_tree(*J, A)}},
                     serialize_join_tree(*J, A));
            }
        } else if (*homcount) {
            Structure C = load_structure(f1, common.pad), A = load_structure(f2, common.pad);
            Count n = brute ? hom_bruteforce(C, A) : hom_acyclic(C, join_tree_for(C, jt_path), A);
            emit(common, {{"count", n.str()}}, n.str() + "\n");
        } else if (*game) {
            Structure A = load_structure(f1, common.pad), B = load_structure(f2, common.pad);
            GameOptions o;
            o.max_relation_size = max_rel;
            GuardedGame g(A, B, o);
            std::size_t r = rounds.value_or(default_round_bound(A, B));
            GameResult res = g.solve(r);
            std::string text = std::string(res.spoiler_wins ? "spoiler" : "duplicator") + " wins the " +
                               std::to_string(r) + "-round game\n";
            for (const auto &line : res.trace)
                text += line + "\n";
            emit(common, {{"rounds", r}, {"winner", res.spoiler_wins ? "spoiler" : "duplicator"}, {"trace", res.trace}},
                 text);
        } else if (*synth) {
            Structure A = load_structure(f1, common.pad);
            if (tuple_ref.empty()) {
                if (f2.empty())
                    throw CLI::ValidationError("synthesize", "give a second structure or --tuple");
                Structure B = load_structure(f2, common.pad);
                auto s = distinguishing_sentence(A, B, budget);
                if (!s) {
                    emit(common, {{"distinguished", false}}, "indistinguishable: no sentence\n");
                } else {
                    WfInfo w = check_wf(s->formula, A.signature());
                    std::string sx = to_sexp(s->formula, A.signature());
                    emit(common,
                         {{"distinguished", true}, {"true_on", s->true_on_a ? "A" : "B"}, {"guard_depth", w.gd},
                          {"formula", sx}},
                         "; true on " + std::string(s->true_on_a ? "A" : "B") + ", guard depth " +
                             std::to_string(w.gd) + "\n" + sx + "\n");
                }
            } else {
                std::uint32_t a = tuple_arg(A, tuple_ref);
                std::size_t i = rounds.value_or(0);
                std::optional<Structure> B;
                if (!f2.empty())
                    B = load_structure(f2, common.pad);
                // colors over the joint run when a second structure is given
                JointRun jr = rcr_joint(A, B ? *B : A);
                if (i >= jr.trace.rounds())
                    i = jr.trace.rounds() - 1;
                Tuple jt;
                for (Element e : A.tup()[a].vec)
                    jt.push_back(e);
                std::uint32_t ja = *jr.u.joint.tup_index(jt);
                ColorId c = jr.trace.at(i)[ja];
                Synthesizer syn(jr.u.joint, jr.trace, budget);
                FormulaPtr f = syn.color_formula(i, c);
                WfInfo w = check_wf(f, A.signature());
                std::string sx = to_sexp(f, A.signature());
                emit(common, {{"round", i}, {"guard_depth", w.gd}, {"dag_nodes", dag_size(f)}, {"formula", sx}},
                     "; round " + std::to_string(i) + ", guard depth " + std::to_string(w.gd) + ", " +
                         std::to_string(dag_size(f)) + " shared nodes\n" + sx + "\n");
            }
        } else if (*evalc) {
            Structure A = load_structure(f2, common.pad);
            FormulaPtr f = parse_sexp(read_file(f1), A.signature());
            WfInfo w = check_wf(f, A.signature());
            std::vector<Element> asg;
            for (const auto &kv : assign) {
                auto eq = kv.find('=');
                if (eq == std::string::npos || kv[0] != 'v')
                    throw Error("--assign takes v<n>=element");
                Var v = static_cast<Var>(std::stoul(kv.substr(1, eq - 1)));
                auto e = A.find_element(kv.substr(eq + 1));
                if (!e)
                    throw Error("unknown element " + kv.substr(eq + 1));
                if (asg.size() <= v)
                    asg.resize(v + 1, Evaluator::UNSET);
                asg[v] = *e;
            }
            for (Var v : w.free)
                if (v >= asg.size() || asg[v] == Evaluator::UNSET)
                    throw Error("free variable v" + std::to_string(v) + " needs --assign");
            Evaluator ev(A);
            bool r = ev.eval(f, asg);
            emit(common, {{"value", r}, {"guard_depth", w.gd}}, r ? "true\n" : "false\n");
        } else if (*gen) {
            Signature sig = parse_signature_arg(sig_arg);
            Rng rng(seed);
            if (acyclic_nodes > 0) {
                AcyclicSample s = random_acyclic(sig, acyclic_nodes, rng);
                std::cout << serialize(s.C);
                if (!f3.empty())
                    std::ofstream(f3) << serialize_join_tree(s.J, s.C);
            } else {
                RandomStructureParams p;
                p.elements = elements;
                p.tuples = tuples;
                p.repeat_bias = repeat;
                std::cout << serialize(random_structure(sig, p, rng));
            }
        } else if (*bench) {
            std::cout << "N,seconds\n";
            for (std::size_t n : parse_sizes(sizes)) {
                BenchRow row = bench_once(bench_structure(n, seed), repeats);
                std::cout << row.n << "," << row.seconds << "\n" << std::flush;
            }
        } else if (*check) {
            CheckReport report{out_dir};
            run_check(seed, cases, report);
            if (common.json) {
                std::cout << report.rows.dump(2) << "\n";
            } else {
                for (const auto &row : report.rows) {
                    std::cout << (row["failures"] == 0 ? "ok   " : "FAIL ") << row["property"].get<std::string>()
                              << " seed=" << seed << " cases=" << row["cases"];
                    for (const auto &f : row["counterexamples"])
                        std::cout << " " << f.get<std::string>();
                    std::cout << "\n";
                }
            }
            return report.failures == 0 ? 0 : 1;
        }
    } catch (const CLI::ParseError &e) {
        std::cerr << "usage: " << e.what() << "\n";
        return 2;
    } catch (const ParseError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
