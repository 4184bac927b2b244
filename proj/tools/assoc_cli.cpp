// Command-line front end: eval, census, profile, case-table, probe, bound,
// keyagree.
//
// Exit status: 0 PASS, 1 FAIL, 2 budget exhausted or search did not
// terminate, 3 bad usage or domain error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "assoc/aowf.hpp"
#include "assoc/catalog.hpp"
#include "assoc/errors.hpp"
#include "assoc/keyagree.hpp"
#include "assoc/prober.hpp"

namespace {

using namespace assoc;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kBudget = 2;
constexpr int kUsage = 3;

struct Config {
    std::string op = "concat";
    std::uint64_t max_rank = 30;
    std::size_t len_cap = 6;
    std::size_t k = 5;
    std::size_t k_max = 16;
    std::uint64_t probe_rank = 0;
    std::size_t secret_len = 4;
    std::string g;
    std::string relation = "parity-up";
    std::uint64_t seed = 0;
    std::string out;
    std::string dump_table;
    std::uint64_t budget = kDefaultCensusBudget;
    std::uint64_t pair_budget = GMachineOptions{}.pair_budget;
    std::size_t m = 1;
    unsigned i = 2;
    std::size_t samples = 10000;
    long long n = -1;
    std::size_t sessions = 1;
    bool plain = false;
    std::vector<std::string> args;
};

GMachineOptions machine_options(const Config& cfg) {
    GMachineOptions o;
    o.pair_budget = cfg.pair_budget;
    o.growth_listener = [](std::size_t factors, std::size_t length) {
        std::cerr << "warning: products of " << factors << " factors need length " << length << '\n';
    };
    return o;
}

std::vector<BitString> literals(const std::vector<std::string>& args, std::size_t count) {
    if (args.size() != count) {
        throw std::invalid_argument("expected " + std::to_string(count) + " bitstring arguments, got " +
                                    std::to_string(args.size()));
    }
    std::vector<BitString> out;
    for (const auto& a : args) out.push_back(BitString::parse_literal(a));
    return out;
}

void emit(const Config& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write " + cfg.out);
    file << text;
}

std::string verdict_line(bool pass, const std::string& detail) {
    return std::string(pass ? "PASS" : "FAIL") + " " + detail + "\n";
}

int cmd_eval(const Config& cfg) {
    const auto in = literals(cfg.args, 2);
    OperationHandle h = make_operation(cfg.op, machine_options(cfg));
    const BitString out = h.op(in[0], in[1]);
    if (!cfg.dump_table.empty()) {
        if (!h.machine) throw std::invalid_argument("--dump-table applies to gfun operations only");
        std::ofstream file(cfg.dump_table, std::ios::binary);
        if (!file) throw std::runtime_error("cannot write " + cfg.dump_table);
        h.machine->table().dump(file);
    }
    emit(cfg, out.literal() + "\n");
    return kPass;
}

int census_gfun(const Config& cfg, OperationHandle& h) {
    GMachine& machine = *h.machine;
    BitString x;
    for (std::uint64_t a = 0; a <= cfg.max_rank; ++a, x.advance()) {
        BitString y;
        for (std::uint64_t b = 0; b <= cfg.max_rank; ++b, y.advance()) machine.eval(x, y);
    }
    const AmbiguityBound h_bound = cfg.g.empty() ? machine.g() : bounds::by_name(cfg.g);
    std::ostringstream csv;
    csv << "output,length,count,complete\n";
    std::string failure;
    std::size_t checked = 0;
    for (const ImageCount& ic : machine.evaluated_census()) {
        csv << ic.image.literal() << ',' << ic.image.size() << ',' << ic.count << ",0\n";
        ++checked;
        const std::uint64_t limit = h_bound(ic.image.size());
        const std::uint64_t split_limit =
            ic.factors >= 64 ? UINT64_MAX : (std::uint64_t{1} << ic.factors) - 2;
        if (failure.empty() && (ic.count > limit || ic.count > split_limit)) {
            failure = ic.image.literal() + " has " + std::to_string(ic.count) + " preimages (bound " +
                      std::to_string(std::min(limit, split_limit)) + ")";
        }
    }
    std::ostringstream summary;
    summary << (failure.empty() ? verdict_line(true, std::to_string(checked) + " images within " +
                                                         h_bound.name + " after " +
                                                         std::to_string(machine.cursor()) +
                                                         " replayed pairs")
                                : verdict_line(false, failure));
    emit(cfg, csv.str());
    std::cerr << summary.str();
    return failure.empty() ? kPass : kFail;
}

int cmd_census(const Config& cfg) {
    OperationHandle h = make_operation(cfg.op, machine_options(cfg));
    if (h.machine) return census_gfun(cfg, h);
    const CensusTable census = preimage_census(h.op, cfg.max_rank, cfg.budget);
    std::ostringstream csv;
    write_census_csv(csv, census);
    std::optional<AmbiguityBound> bound;
    if (!cfg.g.empty()) bound = bounds::by_name(cfg.g);
    else bound = h.op.declared_ambiguity;
    std::string line;
    bool pass = true;
    if (bound) {
        const HVerdict v = check_h_to_one(census, *bound);
        pass = v.pass;
        line = v.pass ? verdict_line(true, std::to_string(v.checked) + " complete images within " +
                                               bound->name)
                      : verdict_line(false, v.counterexample->literal() + " has " +
                                                std::to_string(v.count) + " preimages, bound " +
                                                std::to_string(v.bound));
    } else {
        line = verdict_line(true, "no ambiguity bound declared");
    }
    emit(cfg, csv.str());
    std::cerr << line;
    return pass ? kPass : kFail;
}

int cmd_profile(const Config& cfg) {
    OperationHandle h = make_operation(cfg.op, machine_options(cfg));
    std::ostringstream csv;
    write_profile_csv(csv, ambiguity_profile(h.op, cfg.max_rank, cfg.budget));
    emit(cfg, csv.str());
    return kPass;
}

int cmd_case_table(const Config& cfg) {
    const auto in = literals(cfg.args, 1);
    const SigmaAowf machine(relations::by_name(cfg.relation));
    const CaseTableReport report = case_table_check(machine, in[0], cfg.len_cap);
    std::ostringstream csv;
    csv << "output,s,t,case\n";
    for (const CaseEntry& e : report.classified) {
        csv << report.y.literal() << ',' << e.s.literal() << ',' << e.t.literal() << ',' << e.row
            << '\n';
    }
    for (const auto& [s, t] : report.unclassified) {
        csv << report.y.literal() << ',' << s.literal() << ',' << t.literal() << ",none\n";
    }
    emit(cfg, csv.str());
    std::cerr << verdict_line(report.pass(), std::to_string(report.classified.size()) +
                                                 " classified, " +
                                                 std::to_string(report.unclassified.size()) +
                                                 " unclassified");
    return report.pass() ? kPass : kFail;
}

int cmd_probe(const Config& cfg) {
    OperationHandle h = make_operation(cfg.op, machine_options(cfg));
    ProberOptions opts;
    opts.seed = cfg.seed;
    const AmbiguityWitness w =
        cfg.plain ? find_witness(h.op, cfg.k, opts) : find_short_witness(h.op, cfg.k, opts);
    std::uint64_t rank = cfg.probe_rank;
    if (rank == 0) {
        const auto cap = h.op.length_cap_for(w.t);
        rank = cap && *cap < 24 ? (std::uint64_t{1} << (*cap + 1)) - 2 : 0;
    }
    const WitnessVerdict v = verify_witness(h.op, w, rank, cfg.budget);
    std::ostringstream out;
    out << witness_record(w) << '\n';
    out << to_string(v.verdict) << " census_count=" << v.census_count
        << " complete=" << (v.census_complete ? 1 : 0) << " factors=" << w.factors.size() << '\n';
    for (const auto& f : v.failures) out << "  " << f << '\n';
    emit(cfg, out.str());
    return v.verdict == Verdict::Fail ? kFail : kPass;
}

int cmd_bound(const Config& cfg) {
    OperationHandle h = make_operation(cfg.op, machine_options(cfg));
    const LengthBoundParams params{cfg.m, cfg.i};
    const BoundReport report = measure_output_bound(h.op, params, cfg.k_max, cfg.samples, cfg.seed);
    std::ostringstream out;
    out << "j=" << report.j << " samples=" << report.samples
        << " violations=" << report.violations.size() << '\n';
    for (const auto& v : report.violations) {
        out << "  violation length=" << v.length << " " << v.parenthesization << '\n';
    }
    if (cfg.n >= 0) {
        ProberOptions opts;
        opts.seed = cfg.seed;
        const LowerBoundDemo d =
            lower_bound_demo(h.op, params, static_cast<std::size_t>(cfg.n), cfg.budget, opts);
        out << "demo N=" << d.N << " census_max=" << d.census_max << " n=" << d.n << " l=" << d.l
            << " k=" << d.n - 1 << " m=" << d.m << " verified=" << d.verified_count
            << " complete=" << (d.count_complete ? 1 : 0) << " g(m)=" << d.g_of_m
            << " ratio=" << d.ratio << '\n';
        out << witness_record(d.witness) << '\n';
    }
    emit(cfg, out.str());
    return report.violations.empty() ? kPass : kFail;
}

int cmd_keyagree(const Config& cfg) {
    OperationHandle h = make_operation(cfg.op, machine_options(cfg));
    std::vector<SessionResult> results;
    if (!cfg.args.empty()) {
        const auto in = literals(cfg.args, 3);
        results.push_back(run_session(h.op, in[0], in[1], in[2]));
    } else {
        std::mt19937_64 rng(cfg.seed);
        for (std::size_t s = 0; s < cfg.sessions; ++s) {
            results.push_back(random_session(h.op, rng, cfg.secret_len));
        }
    }
    std::ostringstream out;
    std::size_t agreed = 0;
    for (const SessionResult& r : results) {
        out << "y=" << r.transcript.y.literal() << " xy=" << r.transcript.xy.literal()
            << " yz=" << r.transcript.yz.literal() << " alice=" << r.alice_key.literal()
            << " bob=" << r.bob_key.literal() << '\n';
        if (r.agreed()) ++agreed;
    }
    const bool pass = agreed == results.size();
    out << verdict_line(pass, std::to_string(agreed) + "/" + std::to_string(results.size()) +
                                  " sessions agreed");
    emit(cfg, out.str());
    return pass ? kPass : kFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Associative string operations: evaluation, preimage census, witness search"};
    app.require_subcommand(1);
    Config cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--op", cfg.op, "concat | max | proj | gfun:<linear|log|sqrt> | aowf:<parity-up|mod3-few>");
        sub->add_option("--seed", cfg.seed, "random seed");
        sub->add_option("--out", cfg.out, "write output here instead of stdout");
        sub->add_option("--budget", cfg.budget, "census evaluation budget")->check(CLI::PositiveNumber);
        sub->add_option("--pair-budget", cfg.pair_budget, "gfun replay budget in pairs")
            ->check(CLI::PositiveNumber);
    };

    auto* eval = app.add_subcommand("eval", "print op(a, b)");
    add_common(eval);
    eval->add_option("--dump-table", cfg.dump_table, "write the gfun factor table here");
    eval->add_option("operands", cfg.args, "a b (@e for the empty string)")->expected(2);

    auto* census = app.add_subcommand("census", "preimage counts for all inputs up to --max-rank");
    add_common(census);
    census->add_option("--max-rank", cfg.max_rank, "largest input rank");
    census->add_option("--g", cfg.g, "check counts against linear | log | sqrt");

    auto* profile = app.add_subcommand("profile", "max preimage count per output length");
    add_common(profile);
    profile->add_option("--max-rank", cfg.max_rank, "largest input rank");

    auto* cases = app.add_subcommand("case-table", "classify every sigma preimage of y");
    add_common(cases);
    cases->add_option("--relation", cfg.relation, "parity-up | mod3-few");
    cases->add_option("--len-cap", cfg.len_cap, "longest component searched");
    cases->add_option("image", cfg.args, "y")->expected(1);

    auto* probe = app.add_subcommand("probe", "search for and verify an ambiguity witness");
    add_common(probe);
    probe->add_option("--k", cfg.k, "required number of factors");
    probe->add_option("--max-rank", cfg.probe_rank, "census rank for verification (0: derive)");
    probe->add_flag("--plain", cfg.plain, "start from (0, 1) without the short-factor rule");

    auto* bound = app.add_subcommand("bound", "sample the k-fold output length bound");
    add_common(bound);
    bound->add_option("--m", cfg.m, "length threshold");
    bound->add_option("--i", cfg.i, "exponent above the threshold");
    bound->add_option("--k", cfg.k_max, "largest k sampled");
    bound->add_option("--samples", cfg.samples, "number of sampled products");
    bound->add_option("--n", cfg.n, "also run the lower-bound demo with census length N");

    auto* keys = app.add_subcommand("keyagree", "run key-agreement sessions");
    add_common(keys);
    keys->add_option("--sessions", cfg.sessions, "number of random sessions");
    keys->add_option("--len-cap", cfg.secret_len, "longest random secret");
    keys->add_option("secrets", cfg.args, "x y z")->expected(3);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*eval) return cmd_eval(cfg);
        if (*census) return cmd_census(cfg);
        if (*profile) return cmd_profile(cfg);
        if (*cases) return cmd_case_table(cfg);
        if (*probe) return cmd_probe(cfg);
        if (*bound) return cmd_bound(cfg);
        if (*keys) return cmd_keyagree(cfg);
    } catch (const BudgetError& e) {
        std::cerr << "budget: " << e.what() << '\n';
        return kBudget;
    } catch (const NonTerminationError& e) {
        std::cerr << "nontermination: " << e.what() << '\n';
        return kBudget;
    } catch (const RefusalError& e) {
        std::cerr << "refused: " << e.what() << '\n';
        return kFail;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
