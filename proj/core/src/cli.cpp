#include "twc/cli.hpp"

#include <fstream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "twc/plan.hpp"
#include "twc/simulator.hpp"

namespace twc {

namespace {

struct SweepOptions {
    std::string gamma = "1";
    std::string step = "1/6";
    std::string max = "3";
    long long n_scale = 1;
    std::string format = "text";
};

struct GridPoint {
    Rat alpha, alpha_t;
    bool realizable = false;
    ChannelConfig cfg;
};

GridPoint realize_point(const Rat& alpha, const Rat& alpha_t, const Rat& gamma,
                        long long n_scale) {
    GridPoint g{alpha, alpha_t, false, {}};
    if (gamma.num() == 0) return g; // no backward direct levels to scale
    long long L = std::lcm(alpha.den(), std::lcm(gamma.den(), alpha_t.den() * gamma.den()));
    long long n = n_scale * L;
    long long m = alpha.num() * (n / alpha.den());
    long long nt = gamma.num() * (n / gamma.den());
    long long mt = alpha_t.num() * (nt / alpha_t.den());
    if (m == 0 && n == 0) return g;
    if (mt == 0 && nt == 0) return g;
    g.realizable = true;
    g.cfg = ChannelConfig{(int)m, (int)n, (int)mt, (int)nt};
    return g;
}

int cmd_region(const std::string& cfg_text, std::ostream& out) {
    ChannelConfig cfg = ChannelConfig::parse(cfg_text);
    CapacityRegion region = two_way_region(cfg);
    for (const Ineq& q : region.inequalities) out << q.str() << "\n";
    out << "corners\n";
    for (const RatePair& p : corner_points(region)) out << p.str() << "\n";
    return 0;
}

int cmd_sweep(const SweepOptions& opt, std::ostream& out) {
    Rat gamma = Rat::parse(opt.gamma), step = Rat::parse(opt.step), maxr = Rat::parse(opt.max);
    if (!(step > Rat(0))) throw DomainError("sweep: step must be positive");
    if (opt.n_scale < 1) throw DomainError("sweep: n-scale must be at least 1");
    bool csv = opt.format == "csv";
    if (csv) out << "alpha,alphat,gamma,class,cor1\n";
    std::vector<Rat> grid;
    for (Rat v(0); v <= maxr; v += step) grid.push_back(v);
    for (const Rat& a : grid) {
        for (const Rat& at : grid) {
            GridPoint g = realize_point(a, at, gamma, opt.n_scale);
            std::string cls, cor;
            if (!g.realizable) {
                cls = "SKIPPED";
                cor = "-";
            } else {
                cls = gain_class_name(interaction_gain(g.cfg));
                cor = corollary1_holds(g.cfg) ? "1" : "0";
            }
            if (csv)
                out << a.str() << "," << at.str() << "," << gamma.str() << "," << cls << ","
                    << cor << "\n";
            else
                out << "alpha=" << a.str() << " alphat=" << at.str() << " gamma=" << gamma.str()
                    << " class=" << cls << " cor1=" << cor << "\n";
        }
    }
    return 0;
}

SchemePlan plan_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open plan file '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty plan file '" + path + "'");
    // header: PLAN cfg=<cfg> target=<target> ...
    std::istringstream is(line);
    std::string tok, cfg_text, target_text;
    while (is >> tok) {
        if (tok.rfind("cfg=", 0) == 0) cfg_text = tok.substr(4);
        if (tok.rfind("target=", 0) == 0) target_text = tok.substr(7);
    }
    if (cfg_text.empty() || target_text.empty())
        throw ParseError("plan file '" + path + "' lacks a PLAN header");
    return plan(ChannelConfig::parse(cfg_text), parse_plan_target(target_text));
}

Scheme scheme_from_id(const std::string& id) {
    if (id.rfind("compose:", 0) == 0) return compose(plan_from_file(id.substr(8)));
    return make_scheme(id);
}

int cmd_simulate(const std::string& id, const std::string& dump_path, uint64_t seed,
                 std::ostream& out, std::ostream& err) {
    Scheme s;
    try {
        s = scheme_from_id(id);
    } catch (const ParseError& e) {
        err << e.what() << "\ncatalog:\n";
        for (const std::string& known : default_catalog()) err << "  " << known << "\n";
        err << "  compose:<plan-file>\n";
        return 2;
    }
    VerificationReport rep = verify(s, seed);
    out << "scheme " << s.id << " N=" << s.slots << " K=" << s.fwd_functions
        << " K~=" << s.bwd_functions << "\n";
    out << rep.summary() << "\n";
    if (!dump_path.empty()) {
        std::mt19937_64 rng(seed);
        SourceAssignment src = SourceAssignment::zeros(s.sources);
        for (auto& b : src.bits) b = rng() & 1;
        Transcript t = run(s, src);
        std::ofstream f(dump_path);
        if (!f) throw ParseError("cannot open dump path '" + dump_path + "'");
        dump_transcript(f, t);
    }
    return rep.passed ? 0 : 1;
}

int cmd_decompose(int m, int n, std::ostream& out) {
    out << decompose(m, n).str() << "\n";
    return 0;
}

int cmd_plan(const std::string& cfg_text, const std::string& target, std::ostream& out) {
    SchemePlan p = plan(ChannelConfig::parse(cfg_text), parse_plan_target(target));
    out << p.str();
    return 0;
}

int cmd_verify_all(uint64_t seed, std::ostream& out) {
    bool all_ok = true;
    for (const std::string& id : default_catalog()) {
        Scheme s = make_scheme(id);
        VerificationReport rep = verify(s, seed);
        out << id << ": " << rep.summary() << "\n";
        all_ok = all_ok && rep.passed;
    }
    // one composite end to end
    SchemePlan p = plan(ChannelConfig::parse("2,4/3,1"), PlanTarget::PerfectBoth);
    Scheme comp = compose(p);
    VerificationReport rep = verify(comp, seed);
    out << comp.id << ": " << rep.summary() << "\n";
    all_ok = all_ok && rep.passed;
    out << (all_ok ? "ALL PASS" : "FAILURES PRESENT") << "\n";
    return all_ok ? 0 : 1;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"deterministic two-way function-computation laboratory"};
    app.require_subcommand(1);

    auto* region = app.add_subcommand("region", "print the capacity region of a configuration");
    std::string region_cfg;
    region->add_option("config", region_cfg, "channel as m,n/mt,nt")->required();

    auto* sweep = app.add_subcommand("sweep", "classify a ratio grid");
    SweepOptions sopt;
    sweep->add_option("--gamma", sopt.gamma, "backward/forward direct ratio p/q");
    sweep->add_option("--step", sopt.step, "grid step p/q");
    sweep->add_option("--max", sopt.max, "grid maximum p/q");
    sweep->add_option("--n-scale", sopt.n_scale, "level-count scale factor");
    sweep->add_option("--format", sopt.format, "text or csv")
        ->check(CLI::IsMember({"text", "csv"}));

    auto* simulate = app.add_subcommand("simulate", "verify a cataloged scheme");
    std::string sim_id, dump_path;
    uint64_t seed = 0x5eed;
    simulate->add_option("scheme", sim_id, "scheme identifier")->required();
    simulate->add_option("--dump-transcript", dump_path, "write a transcript to this path");
    simulate->add_option("--seed", seed, "seed for the randomized checks");

    auto* dec = app.add_subcommand("decompose", "print the elementary decomposition");
    int dm = 0, dn = 0;
    dec->add_option("m", dm, "cross levels")->required();
    dec->add_option("n", dn, "direct levels")->required();

    auto* planc = app.add_subcommand("plan", "print the regime plan for a configuration");
    std::string plan_cfg, plan_target;
    planc->add_option("config", plan_cfg, "channel as m,n/mt,nt")->required();
    planc->add_option("target", plan_target, "favor-forward|favor-backward|perfect-both")
        ->required();

    auto* vall = app.add_subcommand("verify-all", "run the whole scheme catalog");
    uint64_t vseed = 0x5eed;
    vall->add_option("--seed", vseed, "seed for the randomized checks");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        std::stringstream dummy;
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*region) return cmd_region(region_cfg, out);
        if (*sweep) return cmd_sweep(sopt, out);
        if (*simulate) return cmd_simulate(sim_id, dump_path, seed, out, err);
        if (*dec) return cmd_decompose(dm, dn, out);
        if (*planc) return cmd_plan(plan_cfg, plan_target, out);
        if (*vall) return cmd_verify_all(vseed, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace twc
