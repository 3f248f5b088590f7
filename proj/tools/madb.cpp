// Command-line front end for the mean-MAD bounds library.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "madbounds/ambiguity.hpp"
#include "madbounds/chance.hpp"
#include "madbounds/curve.hpp"
#include "madbounds/lp_oracle.hpp"
#include "madbounds/newsvendor.hpp"
#include "madbounds/pricing.hpp"
#include "madbounds/stoploss.hpp"
#include "madbounds/sums.hpp"
#include "madbounds/tail_bounds.hpp"

using json = nlohmann::json;
using namespace madb;

namespace {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(double v, int digits = 17) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

// Half-up at two decimals (0.125 -> 0.13, not banker's 0.12).
std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", std::floor(v * 100.0 + 0.5) / 100.0);
    return buf;
}

// Streams either to stdout or to --output; file-open failures are I/O errors.
class Sink {
  public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw IoError("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

// Shared support/moment flags.  --shift-a is the support lower bound (the
// math shifts to a = 0 internally, hence the name).
struct SetArgs {
    double a = 0.0;
    double b = 1.0;
    double mu = 0.5;
    double d = 0.0;
    double beta = -1.0;  // <0 means absent

    AmbiguitySet build() const {
        AmbiguitySet s{a, b, mu, d};
        if (beta >= 0.0) s.beta = beta;
        require_valid(s);
        return s;
    }
};

void add_set_flags(CLI::App* cmd, SetArgs& args, bool need_d = true) {
    cmd->add_option("--shift-a", args.a, "support lower bound a")
        ->capture_default_str();
    cmd->add_option("--b", args.b, "support upper bound b (inf allowed)")
        ->required();
    cmd->add_option("--mu", args.mu, "mean")->required();
    auto* d = cmd->add_option("--d", args.d, "mean absolute deviation");
    if (need_d) d->required();
    cmd->add_option("--beta", args.beta, "P(X >= mu), optional");
}

int run_bound(const SetArgs& sa, bool sup, double t) {
    AmbiguitySet s = sa.build();
    BoundValue v;
    if (s.has_beta())
        v = sup ? sup_tail_beta(s, t) : inf_tail_beta(s, t);
    else
        v = sup ? sup_tail(s, t) : inf_tail(s, t);
    std::cout << fmt(v.value) << "\n";
    return 0;
}

BoundKind parse_kind(const std::string& name) {
    for (BoundKind k : {BoundKind::SupTail, BoundKind::InfTail,
                        BoundKind::SupTailBeta, BoundKind::InfTailBeta,
                        BoundKind::Cantelli, BoundKind::DeSchepperSup,
                        BoundKind::DeSchepperInf, BoundKind::IneqMadSup}) {
        if (name == bound_kind_name(k)) return k;
    }
    throw CLI::ValidationError("--kind", "unknown bound kind: " + name);
}

int run_curve(const SetArgs& sa, const std::string& kind_name, double sigma,
              std::size_t n, double t_min, double t_max,
              const std::string& format, const std::string& output) {
    AmbiguitySet s = sa.build();
    BoundKind kind = parse_kind(kind_name);
    if (std::isnan(t_min)) t_min = s.a;
    if (std::isnan(t_max)) t_max = s.b;
    BoundCurve c = make_curve(kind, s, linspace(t_min, t_max, n), sigma);
    Sink sink(output);
    if (format == "dat")
        write_dat(sink.stream(), c);
    else if (format == "csv")
        write_csv(sink.stream(), c);
    else
        write_json(sink.stream(), c);
    return 0;
}

int run_worstcase(const SetArgs& sa, bool sup, double t,
                  const std::string& format, const std::string& output) {
    AmbiguitySet s = sa.build();
    DiscreteDistribution w =
        worst_case_distribution(s, t, sup ? TailSide::Sup : TailSide::Inf);
    Sink sink(output);
    std::ostream& out = sink.stream();
    if (format == "json") {
        json j;
        j["side"] = sup ? "sup" : "inf";
        j["t"] = t;
        for (const auto& at : w.atoms)
            j["atoms"].push_back({{"x", at.x}, {"p", at.p}});
        out << j.dump(2) << "\n";
    } else if (format == "csv") {
        out << "x,p\n";
        for (const auto& at : w.atoms)
            out << fmt(at.x) << "," << fmt(at.p) << "\n";
    } else {
        for (const auto& at : w.atoms)
            out << fmt(at.x, 6) << " " << fmt(at.p, 6) << "\n";
    }
    return 0;
}

int run_newsvendor(const SetArgs& sa, const std::vector<double>& etas,
                   const std::vector<double>& bs, bool scarf, double sigma) {
    for (double eta : etas) {
        if (scarf) {
            std::cout << fmt2(scarf_quantity(sa.mu, sigma, eta)) << "\n";
            continue;
        }
        std::string line;
        for (double b : bs) {
            AmbiguitySet s{sa.a, b, sa.mu, sa.d};
            if (sa.beta >= 0.0) s.beta = sa.beta;
            require_valid(s);
            Interval q = s.has_beta() ? order_interval_beta(s, eta)
                                      : order_interval_mad(s, eta);
            if (!line.empty()) line += "  ";
            line += "[" + fmt2(q.lo) + ", " + fmt2(q.hi) + "]";
        }
        std::cout << line << "\n";
    }
    return 0;
}

int run_price(const SetArgs& sa, bool emit_rstar, bool emit_profit,
              std::size_t n, const std::string& output) {
    if (emit_rstar) {
        // (d, r_star) curve over the feasible dispersion range
        AmbiguitySet base{sa.a, sa.b, sa.mu, 0.0};
        require_valid(base);
        Sink sink(output);
        double dmax = base.d_max();
        for (std::size_t i = 0; i < n; ++i) {
            double d = dmax * double(i + 1) / double(n + 1);
            AmbiguitySet s = base;
            s.d = d;
            PricingSolution sol = optimal_price(s);
            sink.stream() << fmt(d, 6) << " " << fmt(sol.r_star, 6) << "\n";
        }
        return 0;
    }
    AmbiguitySet s = sa.build();
    if (emit_profit) {
        Sink sink(output);
        for (std::size_t i = 0; i < n; ++i) {
            double r = s.b * double(i + 1) / double(n + 1);
            sink.stream() << fmt(r, 6) << " "
                          << fmt(worst_case_profit(s, r), 6) << "\n";
        }
        return 0;
    }
    PricingSolution sol = optimal_price(s);
    const char* names[] = {"r1", "mu", "r2", "numeric-tie"};
    json j;
    j["r_star"] = sol.r_star;
    j["profit"] = sol.profit;
    j["regime"] = names[int(sol.regime)];
    j["d1"] = sol.d1;
    j["d2"] = sol.d2;
    j["d_max"] = sol.d_max;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_stoploss(const SetArgs& sa, double z, double m, bool curve,
                 std::size_t n, const std::string& sample,
                 const std::string& output) {
    AmbiguitySet s = sa.build();
    bool benefit = m > 0.0;
    if (!curve) {
        double v = benefit ? reinsurer_benefit_bound(s, {z, m})
                           : retention_bound(s, z);
        std::cout << fmt(v) << "\n";
        return 0;
    }
    std::vector<double> claims;
    if (!sample.empty()) {
        std::ifstream in(sample);
        if (!in) throw IoError("cannot open sample file: " + sample);
        claims = read_csv_column(in);
    }
    Sink sink(output);
    for (std::size_t i = 0; i < n; ++i) {
        double zi = s.a + (s.b - s.a) * double(i) / double(n - 1);
        double v = benefit ? reinsurer_benefit_bound(s, {zi, m})
                           : retention_bound(s, zi);
        sink.stream() << fmt(zi, 6) << " " << fmt(v, 6);
        if (!claims.empty()) {
            double emp = 0.0;
            for (double x : claims)
                emp += benefit ? std::min(std::max(x - zi, 0.0), m)
                               : std::min(x, zi);
            sink.stream() << " " << fmt(emp / double(claims.size()), 6);
        }
        sink.stream() << "\n";
    }
    return 0;
}

MarginalSet parse_marginals(const std::vector<double>& bs,
                            const std::vector<double>& mus,
                            const std::vector<double>& ds, double d_hat) {
    if (bs.size() != mus.size() || bs.size() != ds.size())
        throw CLI::ValidationError("--b/--mu/--d",
                                   "marginal lists must have equal length");
    MarginalSet ms;
    for (std::size_t i = 0; i < bs.size(); ++i)
        ms.parts.push_back({bs[i], mus[i], ds[i]});
    if (d_hat >= 0.0) ms.d_hat_override = d_hat;
    return ms;
}

int run_sum(const MarginalSet& ms, double t, double alpha, double z, double m,
            const std::vector<std::string>& lognormals, std::size_t draws,
            std::uint64_t seed, const std::string& copula_name) {
    if (!std::isnan(alpha)) {
        VarBound v = var_bound(ms, alpha);
        std::cout << fmt(v.value)
                  << (v.capped_at_support ? " (capped at support)" : "")
                  << "\n";
        return 0;
    }
    if (z > 0.0 || m > 0.0) {
        std::cout << fmt(sum_stoploss_bound(ms, {z, m})) << "\n";
        return 0;
    }
    std::cout << fmt(sum_tail_bound(ms, t)) << "\n";
    if (!lognormals.empty()) {
        std::vector<std::function<double(double)>> qs;
        for (const std::string& spec : lognormals) {
            auto colon = spec.find(':');
            if (colon == std::string::npos)
                throw CLI::ValidationError("--lognormal", "expected m:v");
            LognormalMarginal ln{std::stod(spec.substr(0, colon)),
                                 std::stod(spec.substr(colon + 1))};
            qs.push_back([ln](double u) { return ln.quantile(u); });
        }
        Copula cop = (copula_name == "comonotonic") ? Copula::Comonotonic
                                                    : Copula::Independent;
        auto sums = simulate_sums(qs, cop, draws, seed);
        SimEstimate e = empirical_tail(sums, t);
        std::cout << "empirical " << fmt(e.estimate) << " se "
                  << fmt(e.std_error) << "\n";
    }
    return 0;
}

int run_chance(double d, double eps, double u, const std::vector<double>& g,
               bool indep, const std::vector<double>& gd) {
    if (!g.empty()) {
        bool ok = indep ? reform_joint_indep(g, gd.empty() ? std::vector<double>(g.size(), d) : gd, eps)
                        : reform_joint_shared(g, d, eps);
        std::cout << (ok ? "feasible" : "infeasible") << "\n";
        return ok ? 0 : 1;
    }
    double kappa = (u > 0.0) ? reform_rhs_asym(u, d, eps) : reform_rhs(d, eps);
    std::cout << fmt(kappa) << "\n";
    return 0;
}

int run_radiotherapy(RadiotherapyProblem p, bool nominal, double rho2,
                     const std::string& boundary_out, std::size_t n_points) {
    RadiotherapySolution sol = nominal ? radiotherapy_solve_nominal(p, rho2)
                                       : radiotherapy_solve(p);
    if (!boundary_out.empty()) {
        Sink sink(boundary_out);
        for (const auto& [x1, x2] : radiotherapy_boundary(p, n_points))
            sink.stream() << fmt(x1, 6) << " " << fmt(x2, 6) << "\n";
    }
    json j;
    j["x1"] = sol.x1;
    j["x2"] = sol.x2;
    j["objective"] = sol.objective;
    j["constraint_slack"] = sol.constraint_slack;
    if (!nominal) j["margin_exceeds_support"] = sol.margin_exceeds_support;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_estimate(const std::string& input, double lo, double hi) {
    std::vector<double> xs;
    if (input.empty() || input == "-") {
        xs = read_csv_column(std::cin);
    } else {
        std::ifstream in(input);
        if (!in) throw IoError("cannot open input file: " + input);
        xs = read_csv_column(in);
    }
    std::optional<std::pair<double, double>> support;
    if (!std::isnan(lo) && !std::isnan(hi)) support = {{lo, hi}};
    auto [set, mom] = estimate_from_samples(xs, support);
    json j;
    j["shift_a"] = set.a;
    j["b"] = set.b;
    j["mu"] = set.mu;
    j["d"] = set.d;
    j["beta"] = *set.beta;
    j["n"] = mom.n;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_verify(const std::string& suite, std::size_t draws, std::size_t grid,
               std::uint64_t seed, double tol) {
    struct Entry {
        TheoremId id;
        bool beta;
    };
    std::vector<Entry> entries;
    for (Entry e : {Entry{TheoremId::SupTail, false},
                    Entry{TheoremId::InfTail, false},
                    Entry{TheoremId::SupTailBeta, true},
                    Entry{TheoremId::InfTailBeta, true},
                    Entry{TheoremId::Retention, false},
                    Entry{TheoremId::ReinsurerBenefit, false}}) {
        if (suite == "all" || suite == theorem_name(e.id)) entries.push_back(e);
    }
    if (entries.empty())
        throw CLI::ValidationError("--suite", "unknown suite: " + suite);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    bool ok = true;
    for (const Entry& e : entries) {
        double worst = 0.0;
        for (std::size_t i = 0; i < draws; ++i) {
            double a = -2.0 + 4.0 * unif(rng);
            double w = 0.5 + 3.5 * unif(rng);
            AmbiguitySet s{a, a + w, a + w * (0.1 + 0.8 * unif(rng)), 0.0};
            s.d = s.d_max() * (0.05 + 0.9 * unif(rng));
            if (e.beta) {
                double blo = s.d / (2.0 * (s.b - s.mu));
                double bhi = 1.0 - s.d / (2.0 * (s.mu - s.a));
                s.beta = blo + (bhi - blo) * unif(rng);
            }
            VerifyParams vp;
            vp.t = s.a + w * (0.02 + 0.96 * unif(rng));
            if (e.id == TheoremId::ReinsurerBenefit)
                vp.m = (s.b - vp.t) * (0.05 + 0.9 * unif(rng)) + 1e-3;
            VerifyReport rep = verify_bound(s, e.id, vp, grid);
            if (rep.status != LpStatus::Optimal) {
                worst = std::numeric_limits<double>::infinity();
                break;
            }
            worst = std::max(worst, rep.gap);
        }
        bool pass = worst <= tol;
        ok = ok && pass;
        std::cout << theorem_name(e.id) << " max gap " << fmt(worst, 6)
                  << (pass ? " ok" : " FAIL") << "\n";
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tight tail-probability bounds under mean-MAD ambiguity"};
    app.require_subcommand(1);

    SetArgs sa;
    bool sup = false, inf = false;
    double t = 0.0;

    auto* bound = app.add_subcommand("bound", "tight tail bound at one point");
    add_set_flags(bound, sa);
    bound->add_flag("--sup", sup, "upper bound on P(X >= t)");
    bound->add_flag("--inf", inf, "lower bound on P(X > t)");
    bound->add_option("--t", t, "threshold")->required();

    std::string kind = "sup", format = "dat", output;
    double sigma = 0.0, t_min = NAN, t_max = NAN;
    std::size_t n = 201;
    auto* curve = app.add_subcommand("curve", "bound evaluated on a t-grid");
    add_set_flags(curve, sa);
    curve->add_option("--kind", kind,
                      "sup|inf|sup-beta|inf-beta|cantelli|deschepper-sup|"
                      "deschepper-inf|ineq-mad");
    curve->add_option("--sigma", sigma, "std dev for the variance-based kinds");
    curve->add_option("--n", n, "grid points")->capture_default_str();
    curve->add_option("--t-min", t_min, "grid start (default a)");
    curve->add_option("--t-max", t_max, "grid end (default b)");
    curve->add_option("--format", format, "dat|csv|json")->capture_default_str();
    curve->add_option("--output", output, "output path (default stdout)");

    auto* worst = app.add_subcommand("worstcase", "extremal distribution atoms");
    add_set_flags(worst, sa);
    worst->add_flag("--sup", sup, "attain the upper bound");
    worst->add_flag("--inf", inf, "attain the lower bound");
    worst->add_option("--t", t, "threshold")->required();
    worst->add_option("--format", format, "dat|csv|json")->capture_default_str();
    worst->add_option("--output", output, "output path (default stdout)");

    std::vector<double> etas, bs;
    bool scarf = false;
    auto* news = app.add_subcommand("newsvendor", "robust order intervals");
    news->add_option("--shift-a", sa.a, "support lower bound")->capture_default_str();
    news->add_option("--mu", sa.mu, "mean demand")->required();
    news->add_option("--d", sa.d, "demand MAD")->required();
    news->add_option("--beta", sa.beta, "P(D >= mu), optional");
    news->add_option("--eta", etas, "critical ratio(s)")->required();
    news->add_option("--b", bs, "support upper bound(s); inf allowed")->required();
    news->add_flag("--scarf", scarf, "Scarf mean-variance quantity instead");
    news->add_option("--sigma", sigma, "std dev for --scarf");

    bool rstar_curve = false, profit_curve = false;
    auto* price = app.add_subcommand("price", "robust monopoly pricing");
    add_set_flags(price, sa);
    price->add_flag("--rstar-curve", rstar_curve, "emit (d, r_star) pairs");
    price->add_flag("--profit-curve", profit_curve, "emit (r, profit) pairs");
    price->add_option("--n", n, "curve points")->capture_default_str();
    price->add_option("--output", output, "output path (default stdout)");

    double z = 0.0, m = 0.0;
    bool do_curve = false;
    std::string sample;
    auto* stop = app.add_subcommand("stoploss", "retention / layer bounds");
    add_set_flags(stop, sa);
    stop->add_option("--z", z, "retention (attachment) level");
    stop->add_option("--m", m, "layer width; omit for the retention bound");
    stop->add_flag("--curve", do_curve, "emit bound vs z");
    stop->add_option("--n", n, "curve points")->capture_default_str();
    stop->add_option("--sample", sample, "claims CSV for an empirical overlay");
    stop->add_option("--output", output, "output path (default stdout)");

    std::vector<double> sum_b, sum_mu, sum_d, gs, gds;
    std::vector<std::string> lognormals;
    double alpha = NAN, d_hat = -1.0, eps = 0.1, u = 0.0;
    std::size_t draws = 100000;
    std::uint64_t seed = 1;
    std::string copula = "independent";
    auto* sum = app.add_subcommand("sum", "bounds for sums of ambiguous risks");
    sum->add_option("--b", sum_b, "marginal upper bounds")->required();
    sum->add_option("--mu", sum_mu, "marginal means")->required();
    sum->add_option("--d", sum_d, "marginal MADs")->required();
    sum->add_option("--d-hat", d_hat, "override for the aggregate MAD bound");
    sum->add_option("--t", t, "tail threshold");
    sum->add_option("--alpha", alpha, "VaR level instead of a tail bound");
    sum->add_option("--z", z, "layer attachment");
    sum->add_option("--m", m, "layer width");
    sum->add_option("--lognormal", lognormals,
                    "simulate marginals m:v and report the empirical tail");
    sum->add_option("--draws", draws, "simulation draws")->capture_default_str();
    sum->add_option("--seed", seed, "simulation seed")->capture_default_str();
    sum->add_option("--copula", copula, "independent|comonotonic")
        ->capture_default_str();

    bool indep = false;
    auto* chance = app.add_subcommand("chance", "chance-constraint margins");
    chance->add_option("--d", sa.d, "MAD of the noise")->required();
    chance->add_option("--eps", eps, "violation probability")->required();
    chance->add_option("--u", u, "upper support for [-1, u] noise");
    chance->add_option("--g", gs, "joint constraint values g_i to validate");
    chance->add_option("--gd", gds, "per-row MADs for --indep");
    chance->add_flag("--indep", indep, "independent noise per row");

    RadiotherapyProblem rp;
    bool nominal = false;
    double rho2 = rp.rho2.mu;
    std::string boundary_out;
    auto* radio = app.add_subcommand("radiotherapy", "two-fraction dose plan");
    radio->add_option("--eps", rp.eps, "violation probability")
        ->capture_default_str();
    radio->add_option("--rho1", rp.rho1, "tumor sensitivity")
        ->capture_default_str();
    radio->add_option("--sigma", rp.sigma, "dose-sparing factor")
        ->capture_default_str();
    radio->add_option("--phi", rp.phi, "dose shape factor")->capture_default_str();
    radio->add_option("--D", rp.D, "tolerated dose")->capture_default_str();
    radio->add_option("--T", rp.T, "tolerated fraction count")
        ->capture_default_str();
    radio->add_option("--x-min", rp.x_min, "minimum fraction dose")
        ->capture_default_str();
    radio->add_flag("--nominal", nominal, "treat rho2 as known");
    radio->add_option("--rho2", rho2, "known rho2 for --nominal");
    radio->add_option("--boundary", boundary_out,
                      "write the feasible-region boundary polyline here");
    radio->add_option("--n", n, "boundary points")->capture_default_str();

    std::string input;
    double sup_lo = NAN, sup_hi = NAN;
    auto* est = app.add_subcommand("estimate", "ambiguity set from a sample");
    est->add_option("--input", input, "CSV path; '-' or empty reads stdin");
    est->add_option("--support-lo", sup_lo, "known support lower bound");
    est->add_option("--support-hi", sup_hi, "known support upper bound");

    std::string suite = "all";
    std::size_t grid = 501;
    double tol = 1e-6;
    auto* verify = app.add_subcommand("verify", "closed forms vs the LP oracle");
    verify->add_option("--suite", suite, "all or one theorem name")
        ->capture_default_str();
    verify->add_option("--draws", draws, "instances per theorem")
        ->capture_default_str();
    verify->add_option("--grid", grid, "uniform grid size")->capture_default_str();
    verify->add_option("--seed", seed, "RNG seed")->capture_default_str();
    verify->add_option("--tol", tol, "max allowed gap")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (bound->parsed() || worst->parsed()) {
            if (sup == inf) {
                std::cerr << "error: pass exactly one of --sup / --inf\n";
                return 1;
            }
        }
        if (bound->parsed()) return run_bound(sa, sup, t);
        if (curve->parsed())
            return run_curve(sa, kind, sigma, n, t_min, t_max, format, output);
        if (worst->parsed()) return run_worstcase(sa, sup, t, format, output);
        if (news->parsed()) return run_newsvendor(sa, etas, bs, scarf, sigma);
        if (price->parsed())
            return run_price(sa, rstar_curve, profit_curve, n, output);
        if (stop->parsed())
            return run_stoploss(sa, z, m, do_curve, n, sample, output);
        if (sum->parsed())
            return run_sum(parse_marginals(sum_b, sum_mu, sum_d, d_hat), t,
                           alpha, z, m, lognormals, draws, seed, copula);
        if (chance->parsed()) return run_chance(sa.d, eps, u, gs, indep, gds);
        if (radio->parsed())
            return run_radiotherapy(rp, nominal, rho2, boundary_out, n);
        if (est->parsed()) return run_estimate(input, sup_lo, sup_hi);
        if (verify->parsed()) return run_verify(suite, draws, grid, seed, tol);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
