// Command line front end: build, chi, sample, mc, bounds, lemma1, upper.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kneser/blowup.hpp"
#include "kneser/bounds.hpp"
#include "kneser/harness.hpp"
#include "kneser/interchange.hpp"
#include "kneser/rng.hpp"

namespace {

using namespace kneser;

constexpr int kExitOk = 0;
constexpr int kExitNoWitness = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitCensored = 3;

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, sep);)
        if (!item.empty()) parts.push_back(item);
    return parts;
}

// "5", "3,5,8" or "4:9" (inclusive)
std::vector<int> parse_int_range(const std::string& text) {
    std::vector<int> out;
    for (const auto& piece : split(text, ',')) {
        auto bounds = split(piece, ':');
        if (bounds.size() == 1) {
            out.push_back(std::stoi(bounds[0]));
        } else if (bounds.size() == 2) {
            for (int v = std::stoi(bounds[0]); v <= std::stoi(bounds[1]); ++v) out.push_back(v);
        } else {
            throw std::invalid_argument("bad integer range: " + piece);
        }
    }
    if (out.empty()) throw std::invalid_argument("empty integer range");
    return out;
}

// "0.5", "0.1,0.5" or "0:1:0.1" (start:stop:step, inclusive)
std::vector<double> parse_real_grid(const std::string& text) {
    std::vector<double> out;
    for (const auto& piece : split(text, ',')) {
        auto fields = split(piece, ':');
        if (fields.size() == 1) {
            out.push_back(std::stod(fields[0]));
        } else if (fields.size() == 3) {
            double start = std::stod(fields[0]), stop = std::stod(fields[1]), step = std::stod(fields[2]);
            if (!(step > 0)) throw std::invalid_argument("grid step must be positive");
            for (long i = 0;; ++i) {
                double v = std::round((start + i * step) * 1e12) / 1e12;
                if (v > stop + 1e-12) break;
                out.push_back(v);
            }
        } else {
            throw std::invalid_argument("bad grid: " + piece);
        }
    }
    if (out.empty()) throw std::invalid_argument("empty grid");
    return out;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text << '\n';
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text << '\n';
}

FamilySpec::Kind parse_kind(const std::string& name) {
    if (name == "full") return FamilySpec::Kind::full;
    if (name == "stable") return FamilySpec::Kind::stable;
    if (name == "shadow") return FamilySpec::Kind::shadow;
    throw std::invalid_argument("unknown family kind: " + name);
}

std::string kind_name(FamilySpec::Kind kind) {
    switch (kind) {
        case FamilySpec::Kind::full: return "full";
        case FamilySpec::Kind::stable: return "stable";
        case FamilySpec::Kind::shadow: return "shadow";
    }
    return "full";
}

SolverLimits deadline_from(int ms) {
    SolverLimits lim;
    if (ms > 0) lim.deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(ms);
    return lim;
}

struct Options {
    int n = 0, k = 0, r = 2, l = 1, s = 2;
    double p = 0.5;
    std::string p_grid;
    int trials = 1;
    std::uint64_t seed = 0;
    int deadline_ms = 0;
    std::string out;
    std::string family = "full";
    std::string in;
};

std::string bool_field(bool b) { return b ? "1" : "0"; }

std::string real_field(double v) {
    if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string bounds_csv(const std::vector<int>& ns, const std::vector<int>& ks, const std::vector<int>& ls, const std::vector<int>& rs,
                       const std::vector<double>& ps, double constant) {
    std::ostringstream os;
    os << "n,k,l,r,p,chi,d,thm1_ln,thm1_vacuous,lemma31_lhs,case_i_max_ln,case_i_vacuous,case_ii_max_ln,case_ii_vacuous,"
          "lemma42_first_max,lemma42_second_max,shadow_ln,shadow_vacuous,upper_cond,predicates\n";
    for (int n : ns)
        for (int k : ks)
            for (int l : ls)
                for (int r : rs)
                    for (double p : ps) {
                        if (n < r * (k + l) || p <= 0.0 || p >= 1.0) continue;
                        const int d = chromatic_formula(n, k + l, r) - 1;
                        if (d < 1) continue;
                        const int m = static_cast<int>(binom_u64(k + l, k));
                        auto thm1 = thm1_bound(kneser_edge_count(n, k + l, r), m, d, r, p);
                        auto shadow = shadow_bound(binom_exact(n, k), k, l, d, r, p);
                        double ci = -INFINITY, cii = -INFINITY, f1 = -INFINITY, f2 = -INFINITY;
                        bool ci_vac = false, cii_vac = false;
                        std::string sched_note;
                        try {
                            Schedule sched = schedule(n, k, l, r);
                            for (int i = 0; i <= sched.u; ++i) {
                                auto b = case_i_bound(sched, i, p);
                                if (!b.ln_bound.zero) ci = std::max(ci, b.ln_bound.ln);
                                ci_vac |= b.vacuous;
                                auto [a, b2] = lemma42_lhs(sched, i, p);
                                f1 = std::max(f1, a);
                                if (b2) f2 = std::max(f2, *b2);
                                if (i < sched.u) {
                                    auto c2 = case_ii_bound(sched, i, p);
                                    if (!c2.ln_bound.zero) cii = std::max(cii, c2.ln_bound.ln);
                                    cii_vac |= c2.vacuous;
                                }
                            }
                        } catch (const std::invalid_argument&) {
                            // schedule unavailable (u < 0); level columns stay -inf
                        }
                        std::string preds;
                        for (const auto& pr : threshold_check(n, k, l, r, constant)) {
                            if (!preds.empty()) preds += ';';
                            preds += pr.name + "=" + bool_field(pr.holds);
                        }
                        os << n << ',' << k << ',' << l << ',' << r << ',' << real_field(p) << ',' << chromatic_formula(n, k, r) << ','
                           << d << ',' << real_field(thm1.ln_bound.ln) << ',' << bool_field(thm1.vacuous) << ','
                           << real_field(lemma31_lhs(n, k, l, r, p)) << ',' << real_field(ci) << ',' << bool_field(ci_vac) << ','
                           << real_field(cii) << ',' << bool_field(cii_vac) << ',' << real_field(f1) << ',' << real_field(f2) << ','
                           << real_field(shadow.ln_bound.ln) << ',' << bool_field(shadow.vacuous) << ','
                           << real_field(upper_cond(n, k, l, r, p)) << ',' << preds << '\n';
                    }
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kneser hypergraphs: construction, sampling, exact chromatic numbers and bound evaluation"};
    app.require_subcommand(1);
    Options o;

    auto add_shape = [&](CLI::App* cmd) {
        cmd->add_option("--n", o.n, "ground set size");
        cmd->add_option("--k", o.k, "set size");
        cmd->add_option("--r", o.r, "uniformity");
        cmd->add_option("--family", o.family, "full | stable | shadow");
        cmd->add_option("--s", o.s, "stability gap");
        cmd->add_option("--l", o.l, "extra elements (shadow base, windows, schedules)");
    };

    auto* build = app.add_subcommand("build", "emit a hypergraph as JSON");
    add_shape(build);
    bool explicit_edges = false;
    build->add_flag("--explicit", explicit_edges, "write the edge list instead of the generator flag");
    build->add_option("--out", o.out);

    auto* chi = app.add_subcommand("chi", "exact chromatic number of a JSON instance");
    chi->add_option("--in", o.in)->required();
    chi->add_option("--deadline-ms", o.deadline_ms);
    chi->add_option("--out", o.out);

    auto* samp = app.add_subcommand("sample", "binomial random subhypergraph");
    add_shape(samp);
    samp->add_option("--in", o.in, "instance JSON (otherwise built from --n --k --r)");
    samp->add_option("--p", o.p);
    samp->add_option("--seed", o.seed);
    std::string mode = "coupled";
    samp->add_option("--mode", mode, "coupled | independent");
    samp->add_option("--out", o.out);

    auto* mc = app.add_subcommand("mc", "Monte Carlo chromatic numbers of random subhypergraphs");
    add_shape(mc);
    std::string config_path;
    int threads = 0;
    bool timing = false;
    mc->add_option("--config", config_path, "JSON experiment config; flags override its fields");
    auto* mc_grid = mc->add_option("--p-grid", o.p_grid, "e.g. 0:1:0.1 or 0.2,0.5");
    auto* mc_trials = mc->add_option("--trials", o.trials);
    auto* mc_seed = mc->add_option("--seed", o.seed);
    auto* mc_deadline = mc->add_option("--deadline-ms", o.deadline_ms);
    auto* mc_out = mc->add_option("--out", o.out);
    mc->add_option("--threads", threads);
    mc->add_flag("--timing", timing, "fill runtime_ms (output then depends on the machine)");

    auto* bnd = app.add_subcommand("bounds", "grid sweep of the probability bounds as CSV");
    std::string n_range, k_range, l_range = "1", r_range = "2", p_list = "0.5";
    double constant = 1.0;
    bnd->add_option("--n", n_range)->required();
    bnd->add_option("--k", k_range)->required();
    bnd->add_option("--l", l_range);
    bnd->add_option("--r", r_range);
    bnd->add_option("--p", p_list);
    bnd->add_option("--C", constant, "constant in the asymptotic conditions");
    bnd->add_option("--out", o.out);

    auto* lem = app.add_subcommand("lemma1", "witness search for a coloring of the k-subsets");
    lem->add_option("--n", o.n)->required();
    lem->add_option("--k", o.k)->required();
    lem->add_option("--l", o.l)->required();
    lem->add_option("--r", o.r);
    std::string coloring_path;
    std::uint64_t budget = 0;
    lem->add_option("--coloring", coloring_path, "JSON with a coloring array over the colex-ordered k-subsets")->required();
    lem->add_option("--budget", budget, "cap on examined candidates (0 = none)");
    lem->add_option("--out", o.out);

    auto* up = app.add_subcommand("upper", "empty-window recoloring of sampled Kneser hypergraphs");
    add_shape(up);
    up->add_option("--p", o.p);
    up->add_option("--seed", o.seed);
    up->add_option("--trials", o.trials);
    up->add_option("--out", o.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        if (*build) {
            FamilySpec spec{parse_kind(o.family), o.s, o.l};
            auto h = Hypergraph::kneser(std::make_shared<const Family>(build_family(spec, o.n, o.k)), o.r);
            write_text(o.out, emit(explicit_edges ? h.materialized() : h));
            return kExitOk;
        }
        if (*chi) {
            auto inst = instance_from_json(read_json_file(o.in));
            auto cert = exact_chi(inst.hypergraph, deadline_from(o.deadline_ms));
            write_text(o.out, to_json(cert).dump());
            return cert.exact ? kExitOk : kExitCensored;
        }
        if (*samp) {
            Hypergraph h = o.in.empty()
                               ? Hypergraph::kneser(std::make_shared<const Family>(build_family({parse_kind(o.family), o.s, o.l}, o.n, o.k)), o.r)
                               : instance_from_json(read_json_file(o.in)).hypergraph;
            if (mode != "coupled" && mode != "independent") throw std::invalid_argument("unknown mode " + mode);
            SampleConfig cfg{o.p, o.seed, mode == "coupled" ? SampleMode::coupled : SampleMode::independent};
            write_text(o.out, emit(sample(h, cfg)));
            return kExitOk;
        }
        if (*mc) {
            ExperimentConfig cfg;
            if (!config_path.empty()) {
                json j = read_json_file(config_path);
                if (j.contains("family")) {
                    const auto& f = j["family"];
                    cfg.family.kind = parse_kind(f.value("kind", std::string("full")));
                    cfg.family.s = f.value("s", 2);
                    cfg.family.l = f.value("l", 1);
                }
                cfg.n = j.value("n", 0);
                cfg.k = j.value("k", 0);
                cfg.r = j.value("r", 2);
                cfg.p_grid = j.value("p_grid", std::vector<double>{});
                cfg.trials = j.value("trials", 1);
                cfg.seed = j.value("seed", std::uint64_t{0});
                cfg.deadline_ms = j.value("deadline_ms", 0);
                cfg.out = j.value("out", std::string{});
                cfg.threads = j.value("threads", 0);
            }
            if (mc->get_option("--n")->count()) cfg.n = o.n;
            if (mc->get_option("--k")->count()) cfg.k = o.k;
            if (mc->get_option("--r")->count() || config_path.empty()) cfg.r = o.r;
            if (mc->get_option("--family")->count() || config_path.empty()) {
                cfg.family.kind = parse_kind(o.family);
                cfg.family.s = o.s;
                cfg.family.l = o.l;
            }
            if (mc_grid->count()) cfg.p_grid = parse_real_grid(o.p_grid);
            if (mc_trials->count()) cfg.trials = o.trials;
            if (mc_seed->count()) cfg.seed = o.seed;
            if (mc_deadline->count()) cfg.deadline_ms = o.deadline_ms;
            if (mc_out->count()) cfg.out = o.out;
            if (threads) cfg.threads = threads;
            cfg.record_timing = timing;
            auto result = mc_run(cfg);
            if (cfg.out.empty()) {
                write_trials_csv(std::cout, result.records, timing);
                write_summary_csv(std::cerr, result.summary);
            }
            std::cerr << "family=" << kind_name(cfg.family.kind) << " full_chi=" << result.full_chi << " records=" << result.records.size()
                      << (result.censored ? " (censored results present)" : "") << '\n';
            return result.censored ? kExitCensored : kExitOk;
        }
        if (*bnd) {
            auto text = bounds_csv(parse_int_range(n_range), parse_int_range(k_range), parse_int_range(l_range), parse_int_range(r_range),
                                   parse_real_grid(p_list), constant);
            if (!text.empty() && text.back() == '\n') text.pop_back();
            write_text(o.out, text);
            return kExitOk;
        }
        if (*lem) {
            json j = read_json_file(coloring_path);
            auto colors = (j.is_array() ? j : j.at("coloring")).get<std::vector<Color>>();
            const Schedule sched = schedule(o.n, o.k, o.l, o.r);
            Coloring kappa = Coloring::from_colors(std::move(colors));
            kappa.palette_size = sched.d;
            auto found = lemma1_witness(o.n, o.k, o.l, o.r, kappa, budget);
            json report;
            switch (found.status) {
                case WitnessStatus::found:
                    report = to_json(*found.report);
                    report["status"] = "found";
                    break;
                case WitnessStatus::no_witness:
                    report = {{"status", "no_witness"}, {"n", o.n}, {"k", o.k}, {"l", o.l}, {"r", o.r}, {"coloring", kappa.colors}};
                    break;
                case WitnessStatus::budget_exhausted:
                    report = {{"status", "budget_exhausted"}, {"work", found.work}};
                    break;
            }
            write_text(o.out, report.dump());
            if (found.status == WitnessStatus::no_witness) return kExitNoWitness;
            return found.status == WitnessStatus::budget_exhausted ? kExitCensored : kExitOk;
        }
        if (*up) {
            auto rep = run_upper_pipeline(o.n, o.k, o.r, o.l, o.p, o.trials, o.seed);
            json trials = json::array();
            for (const auto& t : rep.trials) {
                json row = {{"seed", t.seed}, {"edges", t.edges}, {"found", t.window.has_value()}};
                if (t.window) {
                    row["window"] = t.window->window.elements();
                    row["from_family"] = t.window->from_family;
                    row["colors_used"] = t.coloring->colors_used();
                    row["proper"] = t.proper;
                }
                trials.push_back(row);
            }
            json out = {{"n", rep.n},           {"k", rep.k},
                        {"r", rep.r},           {"l", rep.l},
                        {"p", rep.p},           {"palette", rep.palette},
                        {"successes", rep.successes},
                        {"success_frequency", static_cast<double>(rep.successes) / std::max<std::size_t>(1, rep.trials.size())},
                        {"upper_cond", rep.upper_cond},
                        {"product_count", rep.product_count.str()},
                        {"window_potential_edges", rep.window_edges.str()},
                        {"trials", trials}};
            write_text(o.out, out.dump(2));
            return kExitOk;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
    return kExitOk;
}
