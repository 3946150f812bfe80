#pragma once

/**
 * @file cli.hpp
 * @brief The `minmax` command-line front end.
 *
 * run() parses argv, dispatches one subcommand and writes a report. JSON
 * reports have the shape {"meta": {...}, "result": ...}; CSV and text
 * reports start with a "# " line carrying the same metadata. Exit status is
 * 0 on success, 1 on a domain error, 2 on a usage error.
 */

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "maxmin/maxmin.hpp"

namespace maxmin::cli {

using nlohmann::json;

struct Report {
    json result;
    std::string text;
    /// Header line plus rows; empty when the subcommand has no tabular form.
    std::string csv;
};

namespace detail {

inline std::string big(const BigInt& x) { return x.str(); }

inline std::string rational(const Rational& q) {
    return numerator(q).str() + "/" + denominator(q).str();
}

inline json witness_json(const FactorWitness& w) { return json::array({format_poly(w.g), format_poly(w.h)}); }

inline std::string witness_text(const FactorWitness& w) { return format_poly(w.g) + " * " + format_poly(w.h); }

inline std::vector<Digit> parse_digits(const std::string& text, unsigned b) {
    std::vector<Digit> out;
    for (auto v : maxmin::detail::parse_list(text, "digit")) {
        if (v >= b) fail(ErrorCode::DigitOutOfRange, "pattern digit exceeds base");
        out.push_back(static_cast<Digit>(v));
    }
    return out;
}

inline DigitStream load_stream(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::InvalidArgument, "cannot open stream file '" + path + "'");
    return read_stream(in);
}

inline std::string census_text(const CensusRecord& r) {
    std::ostringstream os;
    os << "b=" << r.b << " n=" << r.n << " space=" << to_string(r.space) << '\n'
       << "total " << r.total << "\nmonomials " << r.monomials << "\nirreducible " << r.irreducible
       << "\nreducible " << r.reducible << "\nprime_candidates " << r.prime_candidates << "\nprimes " << r.primes << '\n';
    return os.str();
}

/// Every option of `app` that was given or has a default, by long name.
inline void collect_flags(const CLI::App& app, json& flags) {
    for (const CLI::Option* opt : app.get_options()) {
        if (opt->get_name() == "--help" || opt->get_name() == "-h") continue;
        std::string name = opt->get_single_name();
        if (opt->count() > 0) {
            auto res = opt->results();
            flags[name] = res.size() == 1 ? json(res.front()) : json(res);
        } else if (!opt->get_default_str().empty()) {
            flags[name] = opt->get_default_str();
        }
    }
}

}  // namespace detail

/// Parses and runs one command line. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Polynomial arithmetic, factorization and experiments over the max-min semiring B_b", "minmax"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", std::string(kVersion));

    std::string format = "json";
    unsigned threads = 1;
    bool force = false;
    bool lenient = false;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}))->capture_default_str();
    app.add_option("--threads", threads, "Worker threads")->check(CLI::Range(1u, 1024u))->capture_default_str();
    app.add_flag("--force", force, "Run enumerations above the work budget (MINMAX_BUDGET)");
    app.add_flag("--lenient", lenient, "Accept polynomials with trailing zero digits");

    std::optional<std::uint64_t> seed;
    std::function<Report()> action;

    auto poly = [&](const std::string& s) { return parse_poly(s, lenient); };
    auto census_opts = [&] {
        CensusOptions o;
        o.threads = threads;
        o.force = force;
        o.budget = budget_from_env();
        return o;
    };

    // classify POLY
    std::string p1, p2;
    auto* classify = app.add_subcommand("classify", "Irreducibility and primality of a polynomial");
    classify->add_option("poly", p1, "Polynomial 'b:c0,c1,...'")->required();
    classify->callback([&] {
        action = [&] {
            auto f = poly(p1);
            auto c = classify_irreducible(f);
            auto p = classify_prime(f);
            Report r;
            std::string prime(to_string(p.kind));
            if (p.kind == PrimeKind::NotCandidate) prime += "(" + std::string(to_string(p.reason)) + ")";
            r.result = {{"input", format_poly(f)}, {"class", std::string(to_string(c.kind))}, {"prime", prime}};
            if (c.witness) r.result["witness"] = detail::witness_json(*c.witness);
            r.text = std::string(to_string(c.kind)) + "\nprime " + prime + "\n";
            if (c.witness) r.text += "witness " + detail::witness_text(*c.witness) + "\n";
            return r;
        };
    });

    // factor POLY [--all]
    bool all = false;
    std::size_t max_results = 1000;
    auto* factor = app.add_subcommand("factor", "Factorizations into two non-monomials");
    factor->add_option("poly", p1, "Polynomial")->required();
    factor->add_flag("--all", all, "List every factorization instead of the minimal witness");
    factor->add_option("--max", max_results, "Cap on listed factorizations")->capture_default_str();
    factor->callback([&] {
        action = [&] {
            auto f = poly(p1);
            std::vector<FactorWitness> ws;
            if (all) {
                ws = all_factorizations(f, max_results);
            } else if (auto w = classify_irreducible(f).witness) {
                ws.push_back(*w);
            }
            Report r;
            r.result = {{"input", format_poly(f)}, {"factorizations", json::array()}};
            for (const auto& w : ws) {
                r.result["factorizations"].push_back(detail::witness_json(w));
                r.text += detail::witness_text(w) + "\n";
            }
            if (ws.empty()) r.text = "none\n";
            r.csv = "g,h\n";
            for (const auto& w : ws) r.csv += "\"" + format_poly(w.g) + "\",\"" + format_poly(w.h) + "\"\n";
            return r;
        };
    });

    // divide H G
    auto* divide = app.add_subcommand("divide", "Exact division by residuation");
    divide->add_option("dividend", p1, "Dividend H")->required();
    divide->add_option("divisor", p2, "Divisor G")->required();
    divide->callback([&] {
        action = [&] {
            auto h = poly(p1);
            auto g = poly(p2);
            auto q = residual_divide(h, g);
            Report r;
            r.result = {{"h", format_poly(h)}, {"g", format_poly(g)}, {"divides", q.has_value()},
                        {"quotient", q ? json(format_poly(*q)) : json(nullptr)}};
            r.text = q ? format_poly(*q) + "\n" : "not divisible\n";
            return r;
        };
    });

    // census --b --n [--space] [--resume FILE]
    unsigned b = 2, n = 1, from = 0, shards = 64;
    std::string space_name = "all-vectors";
    std::string resume;
    bool oeis = false;
    auto* census_cmd = app.add_subcommand("census", "Exhaustive classification counts");
    census_cmd->add_option("--b", b, "Base")->required();
    census_cmd->add_option("--n", n, "Coefficient-vector length (last n when sweeping)")->required();
    census_cmd->add_option("--from", from, "Sweep lengths from..n");
    census_cmd->add_option("--space", space_name, "all-vectors | exact-degree")->capture_default_str();
    census_cmd->add_option("--resume", resume, "Checkpoint file for shard results");
    census_cmd->add_option("--shards", shards, "Work shards")->capture_default_str();
    census_cmd->add_flag("--oeis", oeis, "Emit prime counts as an OEIS b-file");
    census_cmd->callback([&] {
        action = [&] {
            const Space space = parse_space(space_name);
            const unsigned lo = from ? from : n;
            if (lo > n) fail(ErrorCode::InvalidArgument, "--from exceeds --n");
            if (!resume.empty() && lo != n) fail(ErrorCode::InvalidArgument, "--resume needs a single length");
            std::vector<CensusRecord> recs;
            for (unsigned m = lo; m <= n; ++m) {
                auto o = census_opts();
                o.shards = shards;
                if (!resume.empty()) o.checkpoint = resume;
                recs.push_back(census(Base(b), m, space, o));
            }
            Report r;
            r.result = json::array();
            r.csv = census_csv_header() + "\n";
            for (const auto& rec : recs) {
                r.result.push_back(to_json(rec));
                r.csv += to_csv(rec) + "\n";
                r.text += detail::census_text(rec);
            }
            if (recs.size() == 1) r.result = r.result.front();
            if (oeis) r.text = oeis_export(recs);
            return r;
        };
    });

    // partition --b --n --d --v
    double d = 0, v = 0;
    auto* partition = app.add_subcommand("partition", "Sizes of the seven exceptional sets against their bounds");
    partition->add_option("--b", b, "Base")->required();
    partition->add_option("--n", n, "Length")->required();
    partition->add_option("--d", d, "Deviation parameter d")->required();
    partition->add_option("--v", v, "Degree parameter v")->required();
    partition->callback([&] {
        action = [&] {
            auto pc = partition_census(Base(b), n, BoundParams(d, v), budget_from_env(), force);
            Report r;
            json sets = json::array();
            r.csv = "set,size,log_bound,within\n";
            std::ostringstream text;
            text << "reducible " << pc.sigma << "\ncovered " << pc.covered() << "\n";
            for (unsigned i = 0; i < 7; ++i) {
                const double lb = static_cast<double>(pc.log_bounds[i]);
                sets.push_back({{"set", "E" + std::to_string(i + 1)},
                                {"size", pc.sizes[i]},
                                {"log_bound", std::isinf(lb) ? json(nullptr) : json(lb)},
                                {"within", pc.within_bound(i)}});
                r.csv += "E" + std::to_string(i + 1) + "," + std::to_string(pc.sizes[i]) + "," +
                         (std::isinf(lb) ? std::string("-inf") : std::to_string(lb)) + "," + (pc.within_bound(i) ? "1" : "0") + "\n";
                text << "E" << i + 1 << ' ' << pc.sizes[i] << (pc.within_bound(i) ? "" : "  (exceeds bound)") << '\n';
            }
            r.result = {{"b", pc.b}, {"n", pc.n}, {"d", pc.d}, {"v", pc.v}, {"a", pc.a},
                        {"reducible", pc.sigma}, {"covered", pc.covered()}, {"sets", sets}};
            r.text = text.str();
            return r;
        };
    });

    // close-pairs --n --k --d
    unsigned k = 1, dd = 1;
    auto* close = app.add_subcommand("close-pairs", "Boolean factor pairs whose product barely grows");
    close->add_option("--n", n, "Total degree")->required();
    close->add_option("--k", k, "Degree of the first factor")->required();
    close->add_option("--d", dd, "Allowed support excess")->required();
    close->callback([&] {
        action = [&] {
            auto c = close_pair_count(n, k, dd, budget_from_env());
            Report r;
            r.result = {{"n", n}, {"k", k}, {"d", dd}, {"count", c.count}, {"bound", detail::big(c.bound)}, {"within", c.within}};
            r.text = std::to_string(c.count) + " <= " + detail::big(c.bound) + (c.within ? "" : "  VIOLATED") + "\n";
            r.csv = "n,k,d,count,bound,within\n" + std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(dd) +
                    "," + std::to_string(c.count) + "," + detail::big(c.bound) + "," + (c.within ? "1" : "0") + "\n";
            return r;
        };
    });

    // density --b --n --trials --seed
    std::uint64_t trials = 0;
    auto* density = app.add_subcommand("density", "Sampled fraction of irreducible polynomials");
    density->add_option("--b", b, "Base")->required();
    density->add_option("--n", n, "Length")->required();
    density->add_option("--trials", trials, "Number of samples")->required();
    density->add_option("--seed", seed, "Generator seed")->required();
    density->add_option("--space", space_name, "all-vectors | exact-degree")->capture_default_str();
    density->callback([&] {
        action = [&] {
            ExperimentConfig c{*seed, trials, Base(b), n, parse_space(space_name)};
            auto rep = density_experiment(c, threads);
            Report r;
            r.result = to_json(rep);
            std::ostringstream os;
            os << "estimate " << rep.estimate << "\nci95 [" << rep.ci_low << ", " << rep.ci_high << "]\n";
            r.text = os.str();
            os.str("");
            os << "b,n,trials,irreducible,estimate,ci_low,ci_high\n"
               << b << ',' << n << ',' << rep.trials << ',' << rep.irreducible << ',' << rep.estimate << ',' << rep.ci_low << ','
               << rep.ci_high << '\n';
            r.csv = os.str();
            return r;
        };
    });

    // hoeffding --b --n --i --eps --trials --seed
    unsigned level = 1;
    double eps = 0;
    auto* hoeffding = app.add_subcommand("hoeffding", "Tail frequency of level-support sizes against Hoeffding");
    hoeffding->add_option("--b", b, "Base")->required();
    hoeffding->add_option("--n", n, "Length")->required();
    hoeffding->add_option("--i", level, "Support level")->required();
    hoeffding->add_option("--eps", eps, "Relative deviation")->required();
    hoeffding->add_option("--trials", trials, "Number of samples")->required();
    hoeffding->add_option("--seed", seed, "Generator seed")->required();
    hoeffding->callback([&] {
        action = [&] {
            ExperimentConfig c{*seed, trials, Base(b), n, Space::AllVectors};
            auto rep = hoeffding_experiment(c, level, eps, threads);
            Report r;
            r.result = {{"config", to_json(c)}, {"report", to_json(rep)}};
            std::ostringstream os;
            os << "estimate " << rep.empirical_tail << "\nbound " << rep.hoeffding_bound << "\nsigma " << rep.sigma
               << "\nwithin_3sigma " << (rep.within_bound() ? "yes" : "no") << '\n';
            r.text = os.str();
            os.str("");
            os << "b,n,i,eps,trials,exceedances,estimate,bound,sigma\n"
               << b << ',' << n << ',' << level << ',' << eps << ',' << trials << ',' << rep.exceedances << ','
               << rep.empirical_tail << ',' << rep.hoeffding_bound << ',' << rep.sigma << '\n';
            r.csv = os.str();
            return r;
        };
    });

    // bounds --b --n [--schedule-default]
    std::vector<unsigned> ns;
    bool schedule = false;
    auto* bounds = app.add_subcommand("bounds", "The four normalized terms of the reducible-count bound");
    bounds->add_option("--b", b, "Base")->required();
    bounds->add_option("--n", ns, "One or more lengths")->required();
    bounds->add_flag("--schedule-default", schedule, "Use d = 2 sqrt(n+1) ln n, v = 3 log2 n");
    bounds->add_option("--d", d, "Deviation parameter d");
    bounds->add_option("--v", v, "Degree parameter v");
    bounds->callback([&] {
        action = [&] {
            if (!schedule && (d <= 0 || v <= 0)) fail(ErrorCode::InvalidArgument, "give --d and --v or --schedule-default");
            Report r;
            r.result = json::array();
            r.csv = "b,n,d,v,t1,t2,t3,t4,log_t1,log_t2,log_t3,log_t4\n";
            for (unsigned m : ns) {
                auto rep = bound_terms(Base(b), m, schedule ? default_params(m) : BoundParams(d, v));
                r.result.push_back(to_json(rep));
                std::ostringstream row;
                row.precision(12);
                row << rep.b << ',' << rep.n << ',' << rep.d << ',' << rep.v;
                for (int t = 0; t < 4; ++t) row << ',' << static_cast<double>(rep.term(t));
                for (int t = 0; t < 4; ++t) row << ',' << static_cast<double>(rep.log_terms[t]);
                r.csv += row.str() + "\n";
                r.text += "n=" + std::to_string(m);
                for (int t = 0; t < 4; ++t) {
                    std::ostringstream term;
                    // Overflowing terms read better as logs than as inf.
                    const double value = static_cast<double>(rep.term(t));
                    term << " t" << t + 1 << "=";
                    if (std::isfinite(value)) term << value;
                    else term << "e^" << static_cast<double>(rep.log_terms[t]);
                    r.text += term.str();
                }
                r.text += "\n";
            }
            if (ns.size() == 1) r.result = r.result.front();
            return r;
        };
    });

    // t2 --b --nmax
    unsigned nmax = 0;
    auto* t2 = app.add_subcommand("t2", "Exact interval-count sums against n (1.94 (b-1)^{1/5} / b)^n");
    t2->add_option("--b", b, "Base")->required();
    t2->add_option("--nmax", nmax, "Largest n")->required()->check(CLI::PositiveNumber);
    t2->callback([&] {
        action = [&] {
            Report r;
            json rows = json::array();
            r.csv = "n,lhs,lhs_value,rhs,holds\n";
            for (unsigned m = 1; m <= nmax; ++m) {
                auto tb = t2_measure_bound(Base(b), m);
                const bool ok = t2_chain_check(Base(b), m);
                const double lv = tb.lhs.convert_to<double>();
                const double rv = tb.rhs.convert_to<double>();
                rows.push_back({{"n", m}, {"lhs", detail::rational(tb.lhs)}, {"lhs_value", lv}, {"rhs", rv}, {"holds", ok}});
                std::ostringstream row;
                row.precision(12);
                row << m << ',' << detail::rational(tb.lhs) << ',' << lv << ',' << rv << ',' << (ok ? 1 : 0) << '\n';
                r.csv += row.str();
                r.text += row.str();
            }
            const auto sums = t2_partial_sums(Base(b), nmax);
            r.result = {{"b", b}, {"ratio", t2_ratio(Base(b))}, {"partial_sum", static_cast<double>(sums.back())}, {"rows", rows}};
            return r;
        };
    });

    // series-scan --file F (--pattern S | --t1 m | --z-from G)
    std::string file, pattern, zfrom;
    std::optional<std::size_t> t1m;
    std::optional<std::size_t> kk;
    auto* scan = app.add_subcommand("series-scan", "Window statistics of a digit stream file");
    scan->add_option("--file", file, "Stream file: 'b N' then N digits")->required();
    auto* o_pat = scan->add_option("--pattern", pattern, "Count a digit string 'd0,d1,...'");
    auto* o_t1 = scan->add_option("--t1", t1m, "Forbidden 0^{m+1} 1 0^{m+1} scan with m");
    auto* o_z = scan->add_option("--z-from", zfrom, "Window family from a factor polynomial");
    scan->add_option("--k", kk, "Support count for --z-from (default: smallest with ((b-1)/b)^k < 1/10)");
    o_pat->excludes(o_t1)->excludes(o_z);
    o_t1->excludes(o_z);
    scan->callback([&] {
        if (o_pat->count() + o_t1->count() + o_z->count() != 1)
            throw CLI::RequiredError("series-scan needs exactly one of --pattern, --t1, --z-from");
        action = [&] {
            auto s = detail::load_stream(file);
            Report r;
            std::ostringstream os;
            if (!pattern.empty()) {
                auto pat = detail::parse_digits(pattern, s.base().value());
                auto c = count_occurrences(s, pat);
                r.result = {{"pattern", pattern}, {"count", c}, {"windows", s.valid_to() - pat.size() + 1}};
                os << c << '\n';
            } else if (t1m) {
                auto c = t1_forbidden_scan(s, *t1m);
                bool iso = t1_isolation_check(s, *t1m);
                r.result = {{"m", *t1m}, {"forbidden_count", c}, {"isolation_ok", iso}};
                os << "forbidden " << c << "\nisolation_ok " << (iso ? "yes" : "no") << '\n';
            } else {
                auto g = poly(zfrom);
                const std::size_t kval = kk.value_or(choose_k(s.base()));
                const std::size_t r_len = choose_r(g, kval);
                auto z = z_set(g, r_len);
                auto fr = z_frequency_report(s, z);
                r.result = {{"k", kval},         {"r", r_len},           {"z_size", detail::big(z.size())},
                            {"windows", fr.windows}, {"count", fr.count}, {"empirical", static_cast<double>(fr.empirical)},
                            {"normal_expectation", static_cast<double>(fr.normal_expectation)}};
                os << "k=" << kval << " r=" << r_len << "\nempirical " << static_cast<double>(fr.empirical)
                   << "\nnormal_expectation " << static_cast<double>(fr.normal_expectation) << '\n';
            }
            r.text = os.str();
            return r;
        };
    });

    // sumset A B
    auto* sumset_cmd = app.add_subcommand("sumset", "A + B for finite sets of naturals");
    sumset_cmd->add_option("A", p1, "Set 'a0,a1,...'")->required();
    sumset_cmd->add_option("B", p2, "Set 'b0,b1,...'")->required();
    sumset_cmd->callback([&] {
        action = [&] {
            auto s = sumset(parse_set(p1), parse_set(p2));
            Report r;
            r.result = {{"sumset", format_set(s)}};
            r.text = format_set(s) + "\n";
            return r;
        };
    });

    // decompose-set S
    auto* decompose = app.add_subcommand("decompose-set", "Write S = A + B with |A|, |B| >= 2 if possible");
    decompose->add_option("set", p1, "Set 's0,s1,...'")->required();
    decompose->callback([&] {
        action = [&] {
            auto s = parse_set(p1);
            auto c = classify_irreducible(from_set(s));
            Report r;
            r.result = {{"set", format_set(s)}, {"decomposable", c.kind == ClassKind::Reducible}};
            if (c.witness) {
                auto a = format_set(to_set(c.witness->g));
                auto bset = format_set(to_set(c.witness->h));
                r.result["a"] = a;
                r.result["b"] = bset;
                r.text = "{" + a + "} + {" + bset + "}\n";
            } else {
                r.text = "indecomposable\n";
            }
            return r;
        };
    });

    std::vector<std::string> argv_store{"minmax"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    Report report;
    try {
        report = action();
    } catch (const Error& e) {
        err << e.what() << '\n';
        return e.code() == ErrorCode::ParseError ? 2 : 1;
    }

    json meta = {{"version", std::string(kVersion)}, {"generator", std::string(Rng::kGeneratorId)}};
    meta["seed"] = seed ? json(*seed) : json(nullptr);
    json flags = json::object();
    detail::collect_flags(app, flags);
    const CLI::App* sub = app.get_subcommands().front();
    flags["subcommand"] = sub->get_name();
    detail::collect_flags(*sub, flags);
    meta["flags"] = flags;

    if (format == "json") {
        out << json{{"meta", meta}, {"result", report.result}}.dump(2) << '\n';
    } else {
        const std::string& body = format == "csv" ? report.csv : report.text;
        if (body.empty()) {
            err << "usage error: --format " << format << " is not available for " << sub->get_name() << '\n';
            return 2;
        }
        out << "# " << meta.dump() << '\n' << body;
    }
    return 0;
}

}  // namespace maxmin::cli
