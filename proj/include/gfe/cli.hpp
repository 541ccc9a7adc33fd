#pragma once

// Command-line front end. Exit codes: 0 success, 1 a contradiction or
// failed verification, 2 invalid input.

#include <charconv>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gfe/arith.hpp"
#include "gfe/bounds.hpp"
#include "gfe/io.hpp"
#include "gfe/search.hpp"
#include "gfe/verify.hpp"

namespace gfe::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitInvalid = 2;

/// Shortest decimal that round-trips to the same double.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace detail {

using io::Json;
using io::OutputRecord;
using io::RecordStatus;

struct Session {
    bool json = false;
    bool verbose = false;
    std::ostream& out;
    std::ostream& err;

    void emit(const OutputRecord& rec, const std::string& human) const {
        if (json) {
            out << io::dump(rec) << '\n';
        } else {
            out << human;
        }
    }
};

inline Solution parse_solution_arg(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    if (parts.size() != 6) throw ParseError("--solution expects X,P,Y,Q,Z,R");
    auto exp = [](const std::string& s) {
        const BigInt v = parse_bigint(s);
        if (v > std::numeric_limits<Exponent>::max()) throw ParseError("exponent too large: " + s);
        return v.convert_to<Exponent>();
    };
    return {parse_bigint(parts[0]), exp(parts[1]), parse_bigint(parts[2]),
            exp(parts[3]),          parse_bigint(parts[4]), exp(parts[5])};
}

inline std::string human_chain(const ChainReport& c, bool verbose) {
    std::ostringstream os;
    os << c.solution.str() << "  G=" << c.radical.radical.str() << "  chi=" << c.exponents.chi_num().str() << '/'
       << c.exponents.chi_den().str() << "  L=" << format_double(c.bound.lower_bound_L) << "  "
       << (c.all_pass() ? "all steps pass" : "STEP FAILURE") << '\n';
    if (verbose) {
        os << "    x_bound " << to_string(c.step_x.verdict) << " margin " << format_double(c.step_x.margin) << '\n'
           << "    y_bound " << to_string(c.step_y.verdict) << " margin " << format_double(c.step_y.margin) << '\n'
           << "    radical_chain " << to_string(c.step_G.verdict) << " margins "
           << format_double(c.step_G.radical_margin_log) << ", " << format_double(c.step_G.product_margin_log)
           << '\n'
           << "    wong " << to_string(c.step_wong.verdict) << " margin " << format_double(c.step_wong.margin)
           << '\n'
           << "    final " << to_string(c.step_final.verdict) << " margin " << format_double(c.step_final.margin)
           << '\n';
    }
    return os.str();
}

inline std::string human_table_row(const Table1Row& row) {
    std::ostringstream os;
    os << row.z.str() << '^' << row.r << "  phi=" << format_double(row.phi_computed) << "  reference "
       << format_double(row.phi_paper) << "  " << (row.pass ? "pass" : "FAIL") << '\n';
    return os.str();
}

inline int cmd_phi(const Session& s, const std::optional<std::string>& n, const std::optional<std::string>& base,
                   const std::optional<Exponent>& exp) {
    OutputRecord rec{"phi"};
    double value = 0.0, ln_x = 0.0;
    if (n) {
        if (base || exp) throw ParseError("phi: give either N or --base/--exp, not both");
        const BigInt v = parse_bigint(*n);
        rec.inputs["n"] = v.str();
        value = phi(v);
        ln_x = ln_big(v);
    } else {
        if (!base || !exp) throw ParseError("phi: expected N or both --base and --exp");
        const BigInt z = parse_bigint(*base);
        rec.inputs["base"] = z.str();
        rec.inputs["exp"] = std::to_string(*exp);
        value = phi_power(z, *exp);
        ln_x = static_cast<double>(*exp) * ln_big(z);
    }
    rec.outputs["ln_x"] = ln_x;
    rec.outputs["phi"] = value;
    s.emit(rec, "phi = " + format_double(value) + '\n');
    return kExitOk;
}

inline int cmd_chi(const Session& s, Exponent p, Exponent q, Exponent r) {
    const auto t = chi(p, q, r);
    const auto cond = conditional_comparison(t.chi);
    OutputRecord rec{"chi"};
    rec.inputs["p"] = std::to_string(p);
    rec.inputs["q"] = std::to_string(q);
    rec.inputs["r"] = std::to_string(r);
    rec.outputs = io::exponent_outputs(t);
    rec.outputs["exceeds_ls_4_7"] = cond.exceeds_ls;
    rec.outputs["exceeds_css_1_1_72"] = cond.exceeds_css;
    std::string human = t.chi_num().str() + "/" + t.chi_den().str() + " = " + format_double(t.chi_value()) + " " +
                        std::string(to_string(t.signature_class)) + '\n';
    if (s.verbose) {
        human += std::string("  chi > 4/7 (conditional on explicit abc): ") + (cond.exceeds_ls ? "yes" : "no") + '\n';
        human += std::string("  chi > 1/1.72 (conditional on explicit abc): ") + (cond.exceeds_css ? "yes" : "no") +
                 '\n';
    }
    s.emit(rec, human);
    return kExitOk;
}

struct BoundArgs {
    std::optional<std::string> z, G, solution;
    std::optional<Exponent> r, p, q;
};

inline int cmd_bound(const Session& s, const BoundArgs& a) {
    OutputRecord rec{"bound"};
    BoundReport rep;
    bool verified = false;
    if (a.solution) {
        if (a.z || a.r || a.G || a.p || a.q) throw ParseError("bound: --solution excludes --z/--r/--G/--p/--q");
        const Solution sol = parse_solution_arg(*a.solution);
        rec.inputs = io::solution_to_json(sol);
        verified = verify_solution(sol);
        const auto G = radical_of_triple(sol.x, sol.y, sol.z).radical;
        rep = bound_report(sol.z, sol.r, G, chi(sol.p, sol.q, sol.r));
    } else {
        if (!a.z || !a.r || !a.G) throw ParseError("bound: expected --solution or all of --z, --r, --G");
        if (a.p.has_value() != a.q.has_value()) throw ParseError("bound: --p and --q go together");
        const BigInt z = parse_bigint(*a.z), G = parse_bigint(*a.G);
        rec.inputs["z"] = z.str();
        rec.inputs["r"] = std::to_string(*a.r);
        rec.inputs["G"] = G.str();
        std::optional<ExponentTriple> t;
        if (a.p) {
            rec.inputs["p"] = std::to_string(*a.p);
            rec.inputs["q"] = std::to_string(*a.q);
            t = chi(*a.p, *a.q, *a.r);
        }
        rep = bound_report(z, *a.r, G, t);
    }
    rec.outputs = io::bound_outputs(rep);
    if (a.solution) rec.outputs["verified"] = verified;
    const bool contradiction = verified && rep.chi_check && !rep.chi_check->theorem_satisfied;
    if (contradiction) rec.status = RecordStatus::contradiction;

    std::ostringstream h;
    h << "phi(z^r) = " << format_double(rep.phi_zr) << "\nG = " << rep.G.str() << "\nL = "
      << format_double(rep.lower_bound_L) << "\nwong inequality: " << (rep.wong_ok ? "holds" : "FAILS")
      << " (log margin " << format_double(rep.wong_margin_log) << ")\n";
    if (rep.chi_check) {
        h << "chi = " << format_double(rep.chi_check->chi) << "\nL < chi: "
          << (rep.chi_check->theorem_satisfied ? "yes" : "NO") << " (margin " << format_double(rep.chi_check->margin)
          << ")\n";
    }
    if (a.solution) h << "solution verified: " << (verified ? "yes" : "no") << '\n';
    s.emit(rec, h.str());
    return contradiction ? kExitViolation : kExitOk;
}

inline int cmd_gcap(const Session& s, Exponent p, Exponent q, Exponent r, const std::string& base,
                    const std::optional<Exponent>& exp) {
    const BigInt z = parse_bigint(base);
    const Exponent zr_exp = exp.value_or(r);
    OutputRecord rec{"gcap"};
    rec.inputs["p"] = std::to_string(p);
    rec.inputs["q"] = std::to_string(q);
    rec.inputs["r"] = std::to_string(r);
    rec.inputs["base"] = z.str();
    rec.inputs["exp"] = std::to_string(zr_exp);
    // the factored form needs the same r in chi and in z^r
    if (zr_exp != r) gfe::detail::require_power_at_least_8(z, zr_exp, "gcap");
    const double ratio = zr_exp == r ? phi_chi_ratio(p, q, r, z) : phi_power(z, zr_exp) / chi(p, q, r).chi_value();
    const auto cap = g_cap_from_ratio(ratio);
    rec.outputs["ratio"] = ratio;
    rec.outputs["case"] = to_string(cap.kind);
    if (cap.kind == CapKind::cap) rec.outputs["loglog_G_cap"] = cap.loglog_cap;
    std::string human = "phi(z^r)/chi = " + format_double(ratio) + "\n";
    switch (cap.kind) {
        case CapKind::cap: human += "ln ln G < " + format_double(cap.loglog_cap) + "\n"; break;
        case CapKind::unbounded: human += "G is unbounded\n"; break;
        case CapKind::contradiction: human += "contradiction: no G >= 30 is compatible\n"; break;
    }
    s.emit(rec, human);
    return kExitOk;
}

inline int cmd_negbound(const Session& s, const std::string& base, Exponent exp, double ln_c) {
    const BigInt z = parse_bigint(base);
    const double value = negative_bound(z, exp, ln_c);
    const double thr = r_threshold_log(z, ln_c);
    OutputRecord rec{"negbound"};
    rec.inputs["base"] = z.str();
    rec.inputs["exp"] = std::to_string(exp);
    rec.inputs["ln_c"] = ln_c;
    rec.outputs["bound"] = value;
    rec.outputs["negative"] = value < 0.0;
    rec.outputs["r_threshold_log"] = thr;
    rec.outputs["ln_r"] = std::log(static_cast<double>(exp));
    rec.outputs["threshold_below_3"] = thr < std::log(3.0);
    std::string human = "bound on chi = " + format_double(value) + (value < 0.0 ? " (negative: no exponent triple excluded)" : "") +
                        "\nln threshold on r = " + format_double(thr) + "\n";
    s.emit(rec, human);
    return kExitOk;
}

struct SearchArgs {
    std::uint64_t max_base = 0;
    Exponent min_exp = 2;
    Exponent max_exp = 0;
    std::string max_mag;
    unsigned jobs = 1;
    std::optional<std::string> out;
    bool all_signatures = false;
    bool allow_common_factors = false;
    bool both_orders = false;
};

inline std::vector<OutputRecord> search_records(const SearchConfig& cfg, const std::vector<Solution>& sols) {
    Json inputs;
    inputs["max_base"] = std::to_string(cfg.max_base);
    inputs["min_exp"] = std::to_string(cfg.min_exp);
    inputs["max_exp"] = std::to_string(cfg.max_exp);
    inputs["max_mag"] = cfg.max_magnitude.str();
    inputs["require_coprime"] = cfg.require_coprime;
    inputs["canonical_only"] = cfg.canonical_only;
    inputs["hyperbolic_only"] = cfg.hyperbolic_only;
    const auto groups = magnitude_groups(sols);
    std::vector<OutputRecord> out;
    for (std::size_t i = 0; i < sols.size(); ++i) {
        Json o = io::solution_to_json(sols[i]);
        o["group"] = groups[i];
        out.push_back({"search", inputs, o, RecordStatus::ok});
    }
    return out;
}

inline int cmd_search(const Session& s, const SearchArgs& a) {
    SearchConfig cfg;
    cfg.max_base = a.max_base;
    cfg.min_exp = a.min_exp;
    cfg.max_exp = a.max_exp;
    cfg.max_magnitude = parse_bigint(a.max_mag);
    cfg.jobs = a.jobs;
    cfg.hyperbolic_only = !a.all_signatures;
    cfg.require_coprime = !a.allow_common_factors;
    cfg.canonical_only = !a.both_orders;
    const auto sols = enumerate_solutions(cfg);
    const auto records = search_records(cfg, sols);
    if (a.out) {
        std::ofstream file(*a.out);
        if (!file) throw ParseError("cannot open output file '" + *a.out + "'");
        for (const auto& rec : records) file << io::dump(rec) << '\n';
        if (!s.json) s.out << sols.size() << " solutions written to " << *a.out << '\n';
        return kExitOk;
    }
    for (std::size_t i = 0; i < records.size(); ++i) s.emit(records[i], sols[i].str() + '\n');
    if (!s.json) s.out << sols.size() << " solutions\n";
    return kExitOk;
}

/// Caps of the fresh search run by `verify`.
inline SearchConfig desk_search_config() {
    SearchConfig cfg;
    cfg.max_base = 125;
    cfg.min_exp = 2;
    cfg.max_exp = 10;
    cfg.max_magnitude = 20000;
    return cfg;
}

inline int cmd_verify(const Session& s, const std::optional<std::string>& catalog_path) {
    std::vector<Solution> entries;
    std::vector<std::string> sources;
    std::vector<Solution> catalog;
    try {
        catalog = catalog_path ? io::load_catalog(*catalog_path) : known_catalog();
    } catch (const CatalogCorrupt& e) {
        s.err << "error: " << e.what() << '\n';
        if (s.json) {
            OutputRecord rec{"verify"};
            rec.outputs["error"] = e.what();
            rec.status = RecordStatus::contradiction;
            s.out << io::dump(rec) << '\n';
        }
        return kExitViolation;
    }
    for (auto& c : catalog) {
        entries.push_back(c);
        sources.emplace_back("catalog");
    }
    for (auto& f : enumerate_solutions(desk_search_config())) {
        entries.push_back(f);
        sources.emplace_back("search");
    }

    const auto sweep = consistency_sweep(entries);
    for (std::size_t i = 0; i < sweep.reports.size(); ++i) {
        const auto& rep = sweep.reports[i];
        OutputRecord rec{"verify", io::solution_to_json(rep.solution), io::chain_outputs(rep)};
        rec.inputs["source"] = sources[i];
        if (rep.step_final.verdict == Verdict::fail) rec.status = RecordStatus::contradiction;
        s.emit(rec, "[" + sources[i] + "] " + human_chain(rep, s.verbose));
    }

    bool table_ok = true;
    for (const auto& row : table1()) {
        table_ok = table_ok && row.pass;
        OutputRecord rec{"table1", Json::object(), io::table1_outputs(row)};
        s.emit(rec, "table1 " + human_table_row(row));
    }

    const auto summary = io::sweep_record(sweep);
    std::ostringstream h;
    h << sweep.solutions << " solutions checked, " << sweep.contradictions.size() << " contradictions";
    for (std::size_t i = 0; i < kChainSteps; ++i) {
        h << "\n  " << kStepNames[i] << ": " << sweep.steps[i].pass << " pass, " << sweep.steps[i].fail << " fail, "
          << sweep.steps[i].inconclusive << " inconclusive";
    }
    h << "\ntable1: " << (table_ok ? "all rows pass" : "ROW FAILURE") << '\n';
    s.emit(summary, h.str());
    return sweep.clean() && table_ok ? kExitOk : kExitViolation;
}

inline int cmd_table1(const Session& s, double tolerance) {
    bool ok = true;
    for (const auto& row : table1(tolerance)) {
        ok = ok && row.pass;
        OutputRecord rec{"table1", Json::object(), io::table1_outputs(row)};
        rec.inputs["tolerance"] = tolerance;
        s.emit(rec, human_table_row(row));
    }
    return ok ? kExitOk : kExitViolation;
}

}  // namespace detail

/// Parses args (args[0] is the program name) and dispatches a subcommand.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Bounds and exhaustive search for x^p + y^q = z^r", "gfe"};
    app.require_subcommand(1);
    app.fallthrough();
    bool json = false, verbose = false;
    app.add_flag("--json", json, "Emit newline-delimited JSON records");
    app.add_flag("--verbose", verbose, "Print step margins and extra detail");

    std::function<int(const detail::Session&)> action;

    auto* phi_cmd = app.add_subcommand("phi", "phi(x) = 3 ln ln x / ln x");
    std::optional<std::string> phi_n, phi_base;
    std::optional<Exponent> phi_exp;
    phi_cmd->add_option("N", phi_n, "Decimal integer argument");
    phi_cmd->add_option("--base", phi_base, "Base z of z^r");
    phi_cmd->add_option("--exp", phi_exp, "Exponent r of z^r");
    phi_cmd->callback([&] { action = [&](const detail::Session& s) { return detail::cmd_phi(s, phi_n, phi_base, phi_exp); }; });

    auto* chi_cmd = app.add_subcommand("chi", "Exact 1/p + 1/q + 1/r and signature class");
    Exponent cp = 0, cq = 0, cr = 0;
    chi_cmd->add_option("P", cp)->required();
    chi_cmd->add_option("Q", cq)->required();
    chi_cmd->add_option("R", cr)->required();
    chi_cmd->callback([&] { action = [&](const detail::Session& s) { return detail::cmd_chi(s, cp, cq, cr); }; });

    auto* bound_cmd = app.add_subcommand("bound", "Lower bound on chi for one (z, r, G) or one solution");
    detail::BoundArgs bargs;
    bound_cmd->add_option("--z", bargs.z);
    bound_cmd->add_option("--r", bargs.r);
    bound_cmd->add_option("--G", bargs.G);
    bound_cmd->add_option("--p", bargs.p, "Optional: compare L against chi(p, q, r)");
    bound_cmd->add_option("--q", bargs.q);
    bound_cmd->add_option("--solution", bargs.solution, "X,P,Y,Q,Z,R");
    bound_cmd->callback([&] { action = [&](const detail::Session& s) { return detail::cmd_bound(s, bargs); }; });

    auto* gcap_cmd = app.add_subcommand("gcap", "Cap on ln ln G");
    Exponent gp = 0, gq = 0, gr = 0;
    std::string gbase;
    std::optional<Exponent> gexp;
    gcap_cmd->add_option("--p", gp)->required();
    gcap_cmd->add_option("--q", gq)->required();
    gcap_cmd->add_option("--r", gr)->required();
    gcap_cmd->add_option("--base", gbase)->required();
    gcap_cmd->add_option("--exp", gexp, "Exponent of z in phi(z^exp); defaults to --r");
    gcap_cmd->callback([&] { action = [&](const detail::Session& s) { return detail::cmd_gcap(s, gp, gq, gr, gbase, gexp); }; });

    auto* neg_cmd = app.add_subcommand("negbound", "Negative lower bound from the exponential Stewart-Yu inequality");
    std::string nbase;
    Exponent nexp = 0;
    double ln_c = Constants::chim_ln_c;
    neg_cmd->add_option("--base", nbase)->required();
    neg_cmd->add_option("--exp", nexp)->required();
    neg_cmd->add_option("--ln-c", ln_c, "Natural log of the constant c")->capture_default_str();
    neg_cmd->callback([&] { action = [&](const detail::Session& s) { return detail::cmd_negbound(s, nbase, nexp, ln_c); }; });

    auto* search_cmd = app.add_subcommand("search", "Exhaustive search inside caps");
    detail::SearchArgs sargs;
    search_cmd->add_option("--max-base", sargs.max_base)->required();
    search_cmd->add_option("--min-exp", sargs.min_exp)->capture_default_str();
    search_cmd->add_option("--max-exp", sargs.max_exp)->required();
    search_cmd->add_option("--max-mag", sargs.max_mag)->required();
    search_cmd->add_option("--jobs", sargs.jobs)->capture_default_str();
    search_cmd->add_option("--out", sargs.out, "Write newline-delimited records to FILE");
    search_cmd->add_flag("--all-signatures", sargs.all_signatures, "Keep spherical and parabolic signatures");
    search_cmd->add_flag("--allow-common-factors", sargs.allow_common_factors, "Drop the gcd(x, y, z) = 1 filter");
    search_cmd->add_flag("--both-orders", sargs.both_orders, "Emit both orderings of the summands");
    search_cmd->callback([&] { action = [&](const detail::Session& s) { return detail::cmd_search(s, sargs); }; });

    auto* verify_cmd = app.add_subcommand("verify", "Proof-chain sweep over a catalog and a fresh search, plus table1");
    std::optional<std::string> catalog_path;
    verify_cmd->add_option("--catalog", catalog_path, "JSON array of {x,p,y,q,z,r}");
    verify_cmd->callback([&] { action = [&](const detail::Session& s) { return detail::cmd_verify(s, catalog_path); }; });

    auto* table_cmd = app.add_subcommand("table1", "Recompute the reference phi table");
    double tolerance = 1e-4;
    table_cmd->add_option("--tolerance", tolerance)->capture_default_str();
    table_cmd->callback([&] { action = [&](const detail::Session& s) { return detail::cmd_table1(s, tolerance); }; });

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    if (args.empty()) argv.push_back("gfe");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    const detail::Session session{json, verbose, out, err};
    std::string command;
    for (const auto* sub : app.get_subcommands()) command = sub->get_name();
    try {
        return action(session);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        if (json) {
            io::OutputRecord rec{command};
            rec.outputs["error"] = e.what();
            rec.status = io::RecordStatus::error;
            out << io::dump(rec) << '\n';
        }
        return kExitInvalid;
    }
}

inline int run(int argc, char** argv) {
    return run(std::vector<std::string>(argv, argv + argc));
}

}  // namespace gfe::cli
