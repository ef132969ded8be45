// hadfam: order-by-order analysis of Hadamard-matrix families through the
// Fourier matrix. Subcommands: defect, scan, expand, n12, families, toy.
//
// Exit codes: 0 success, 1 domain/runtime error, 2 inconclusive scan,
// 64 usage error.

#include <cinttypes>
#include <cstdio>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/rational.hpp>
#include <json.hpp>

#include "hadfam/defect.hpp"
#include "hadfam/expansion.hpp"
#include "hadfam/families.hpp"
#include "hadfam/genpert.hpp"
#include "hadfam/json_io.hpp"
#include "hadfam/n12.hpp"

using namespace hadfam;
using nlohmann::json;

namespace {

constexpr const char* kRngName = "mt19937_64";

std::string iso_now()
{
    char buf[32];
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void emit(const json& report, const std::string& out_path)
{
    if (!out_path.empty()) save_json_file(out_path, report);
}

// --- precision selection ---------------------------------------------------

struct Precision {
    int bits = 53;  // resolved significand bits: 53, 113, 166 or 332
    std::string spec = "double";
};

Precision parse_precision(const std::string& s)
{
    Precision p;
    p.spec = s;
    if (s == "double") return p;
    if (s.rfind("big:", 0) == 0) {
        int requested = std::stoi(s.substr(4));
        if (requested <= 53) p.bits = 53;
        else if (requested <= 113) p.bits = 113;
        else if (requested <= 166) p.bits = 166;
        else if (requested <= 332) p.bits = 332;
        else throw std::domain_error("precision: at most big:332 is supported");
        return p;
    }
    throw std::domain_error("precision must be 'double' or 'big:<bits>'");
}

template <typename F>
auto with_precision(const Precision& p, F&& f)
{
    using boost::multiprecision::cpp_complex_100;
    using boost::multiprecision::cpp_complex_50;
    using boost::multiprecision::cpp_complex_quad;
    switch (p.bits) {
        case 113: return f(cpp_complex_quad{});
        case 166: return f(cpp_complex_50{});
        case 332: return f(cpp_complex_100{});
        default: return f(cdouble{});
    }
}

// --- patterns ----------------------------------------------------------------

ConstraintPattern resolve_pattern(long n, const std::string& spec)
{
    if (spec == "none") return ConstraintPattern{};
    if (spec == "typeI") return apply_pattern(n, PatternLabel::type_one);
    if (spec == "typeII") return apply_pattern(n, PatternLabel::type_two);
    if (spec.rfind("custom:", 0) == 0)
        return pattern_from_json(n, load_json_file(spec.substr(7)));
    throw std::domain_error("pattern must be none, typeI, typeII or custom:<file>");
}

// --- defect ------------------------------------------------------------------

int run_defect(long n_lo, long n_hi, const std::string& csv_path,
               const std::string& out_path)
{
    json rows = json::array();
    std::FILE* csv = nullptr;
    if (!csv_path.empty()) {
        csv = std::fopen(csv_path.c_str(), "w");
        if (!csv) throw std::runtime_error("cannot open " + csv_path);
        std::fputs("N,D1,d1,dA,d_conj\n", csv);
    }
    std::printf("%4s %6s %6s %6s %7s\n", "N", "D1", "d1", "dA", "d_conj");
    for (long n = n_lo; n <= n_hi; ++n) {
        auto s = defect_summary(n);
        std::string conj = s.d_conj ? std::to_string(*s.d_conj) : "-";
        std::printf("%4ld %6ld %6ld %6ld %7s\n", n, s.big_d1, s.d1, s.d_affine,
                    conj.c_str());
        if (csv)
            std::fprintf(csv, "%ld,%ld,%ld,%ld,%s\n", n, s.big_d1, s.d1,
                         s.d_affine, s.d_conj ? conj.c_str() : "");
        json row = {{"N", n}, {"D1", s.big_d1}, {"d1", s.d1}, {"dA", s.d_affine}};
        row["d_conj"] = s.d_conj ? json(*s.d_conj) : json(nullptr);
        rows.push_back(std::move(row));
    }
    if (csv) std::fclose(csv);

    json report = {
        {"tool", "hadfam"},
        {"command", "defect"},
        {"config", {{"range", {n_lo, n_hi}}}},
        {"results", std::move(rows)},
        {"metadata", {{"generated_at", iso_now()}}},
    };
    emit(report, out_path);
    return 0;
}

// --- scan --------------------------------------------------------------------

json scan_to_json(const ScanResult& res)
{
    json trials = json::array();
    for (const auto& tr : res.trials) {
        json t;
        t["first_break"] = tr.first_break ? json(*tr.first_break) : json(nullptr);
        t["per_order_relative"] = tr.per_order_relative;
        trials.push_back(std::move(t));
    }
    return {
        {"first_break", res.first_break ? json(*res.first_break) : json(nullptr)},
        {"inconclusive", res.inconclusive},
        {"per_order_max_relative", res.per_order_max_relative},
        {"trials", std::move(trials)},
    };
}

int run_scan(long n, int max_order, int trials, std::uint64_t seed, double tol,
             const std::string& pattern_spec, const Precision& prec,
             const std::string& out_path)
{
    ConstraintPattern pat = resolve_pattern(n, pattern_spec);
    auto sampler = pattern_sampler(n, pat);
    ScanProgress progress = [](int trial, int order, double rel) {
        std::fprintf(stderr, "trial %d order %d relative %.3e\n", trial + 1,
                     order, rel);
    };
    ScanResult res = with_precision(prec, [&](auto scalar) {
        using C = decltype(scalar);
        return breakdown_scan<C>(n, max_order, sampler, trials, seed, tol,
                                 progress);
    });

    std::printf("N=%ld  pattern=%s  trials=%d  tol=%g\n", n,
                pattern_spec.c_str(), trials, tol);
    std::printf("%6s %14s\n", "order", "max relative");
    for (size_t i = 0; i < res.per_order_max_relative.size(); ++i) {
        if (res.per_order_max_relative[i] == 0.0 && i + 2 > 2 &&
            res.first_break && static_cast<int>(i) + 2 > *res.first_break)
            break;
        std::printf("%6zu %14.3e\n", i + 2, res.per_order_max_relative[i]);
    }
    if (res.inconclusive)
        std::printf("result: inconclusive (trials disagree)\n");
    else if (res.first_break)
        std::printf("result: first break at order %d\n", *res.first_break);
    else
        std::printf("result: no breakdown through order %d\n", max_order);

    json report = {
        {"tool", "hadfam"},
        {"command", "scan"},
        {"config",
         {{"N", n},
          {"max_order", max_order},
          {"trials", trials},
          {"seed", seed},
          {"tol", tol},
          {"pattern", pattern_spec},
          {"precision", prec.spec},
          {"precision_bits", prec.bits},
          {"rng", kRngName}}},
        {"results", scan_to_json(res)},
        {"metadata", {{"generated_at", iso_now()}}},
    };
    emit(report, out_path);
    return res.inconclusive ? 2 : 0;
}

// --- expand ------------------------------------------------------------------

int run_expand(long n, int max_order, std::uint64_t seed, double tol,
               const std::string& pattern_spec, const Precision& prec,
               const std::string& out_path)
{
    ConstraintPattern pat = resolve_pattern(n, pattern_spec);
    auto sampler = pattern_sampler(n, pat);
    std::mt19937_64 rng(seed);
    std::vector<cdouble> drawn = sampler(rng);

    TrialResult tr = with_precision(prec, [&](auto scalar) {
        using C = decltype(scalar);
        using R = real_t<C>;
        std::vector<C> vals(drawn.size());
        for (size_t i = 0; i < drawn.size(); ++i)
            vals[i] = C(R(drawn[i].real()), R(drawn[i].imag()));
        SeriesState<C> state(n, std::move(vals));
        return continue_series(state, max_order, tol);
    });

    std::printf("N=%ld  pattern=%s  single series, tol=%g\n", n,
                pattern_spec.c_str(), tol);
    std::printf("%6s %14s\n", "order", "relative");
    for (size_t i = 0; i < tr.per_order_relative.size(); ++i)
        std::printf("%6zu %14.3e\n", i + 2, tr.per_order_relative[i]);
    if (tr.first_break)
        std::printf("result: first break at order %d\n", *tr.first_break);
    else
        std::printf("result: no breakdown through order %d\n", max_order);

    json assignment = json::array();
    for (const auto& z : drawn)
        assignment.push_back({{"re", z.real()}, {"im", z.imag()}});
    json results = {
        {"first_break", tr.first_break ? json(*tr.first_break) : json(nullptr)},
        {"per_order_relative", tr.per_order_relative},
        {"first_order_assignment", std::move(assignment)},
    };
    json report = {
        {"tool", "hadfam"},
        {"command", "expand"},
        {"config",
         {{"N", n},
          {"max_order", max_order},
          {"seed", seed},
          {"tol", tol},
          {"pattern", pattern_spec},
          {"precision", prec.spec},
          {"precision_bits", prec.bits},
          {"rng", kRngName}}},
        {"results", std::move(results)},
        {"metadata", {{"generated_at", iso_now()}}},
    };
    emit(report, out_path);
    return 0;
}

// --- n12 ---------------------------------------------------------------------

int run_n12(const std::string& branch, int trials, std::uint64_t seed, double tol,
            const std::string& out_path)
{
    std::mt19937_64 rng(seed);
    json rows = json::array();
    std::printf("%6s %10s %14s %14s %6s\n", "trial", "class", "system", "order4",
                "agree");
    bool all_agree = true;
    for (int t = 0; t < trials; ++t) {
        n12::N12Vars v;
        if (branch == "generic") v = n12::random_vars(rng);
        else if (branch == "type1") v = n12::type1_vars(rng);
        else if (branch == "type3") v = n12::type3_vars(rng);
        else throw std::domain_error("n12 branch must be generic, type1 or type3");

        double sys = 0.0;
        for (const auto& z : n12::evaluate_system(v))
            sys = std::max(sys, std::abs(z));
        auto a = n12::assignment_from_vars(v, rng);
        SeriesState<cdouble> st(12, a);
        st.advance();
        st.advance();
        double eng = st.consistency(4).relative();
        std::string cls = n12::to_string(n12::classify(v, tol));
        bool agree = (sys <= tol) == (eng <= tol);
        all_agree = all_agree && agree;
        std::printf("%6d %10s %14.3e %14.3e %6s\n", t + 1, cls.c_str(), sys, eng,
                    agree ? "yes" : "NO");
        rows.push_back({{"trial", t + 1},
                        {"class", cls},
                        {"system_residual", sys},
                        {"order4_relative", eng},
                        {"agree", agree}});
    }
    json report = {
        {"tool", "hadfam"},
        {"command", "n12"},
        {"config",
         {{"branch", branch},
          {"trials", trials},
          {"seed", seed},
          {"tol", tol},
          {"rng", kRngName}}},
        {"results", {{"all_agree", all_agree}, {"trials", std::move(rows)}}},
        {"metadata", {{"generated_at", iso_now()}}},
    };
    emit(report, out_path);
    return all_agree ? 0 : 1;
}

// --- families ----------------------------------------------------------------

int run_families(const std::string& family, long p, long k, long p1, long p2,
                 int samples, std::uint64_t seed, bool check_defect,
                 const std::string& export_path, const std::string& out_path)
{
    std::mt19937_64 rng(seed);
    long n = 0, dim = -1;
    std::function<CMat()> draw;

    if (family == "n6") {
        auto fam = haagerup_family();
        n = 6;
        dim = fam.dim();
        draw = [fam, &rng]() {
            return fam.member({2.0 * M_PI * uniform01(rng), 2.0 * M_PI * uniform01(rng)});
        };
    } else if (family == "prime-power") {
        auto fam = prime_power_family(p, k);
        n = fam.base.n();
        dim = fam.dim();
        draw = [fam, &rng]() {
            std::vector<double> params(fam.dim());
            for (auto& x : params) x = 2.0 * M_PI * uniform01(rng);
            return fam.member(params);
        };
    } else if (family == "self-cognate") {
        SelfCognateFamily fam(p1, p2);
        n = fam.n();
        dim = fam.dim();
        draw = [fam, &rng]() {
            auto [x, y] = fam.random_phases(rng);
            return fam.member(x, y);
        };
    } else if (family == "block-a") {
        n = p1 * p2 * p2;
        draw = [p1, p2, &rng]() { return dita_variant_a_member(p1, p2, rng); };
    } else if (family == "block-b") {
        n = p1 * p2 * p2;
        draw = [p1, p2, &rng]() { return dita_variant_b_member(p1, p2, rng); };
    } else {
        throw std::domain_error(
            "family must be n6, prime-power, self-cognate, block-a or block-b");
    }

    json rows = json::array();
    std::printf("family=%s  N=%ld%s\n", family.c_str(), n,
                dim >= 0 ? ("  free phases=" + std::to_string(dim)).c_str() : "");
    std::printf("%6s %14s %14s %8s\n", "sample", "unitarity", "modulus",
                check_defect ? "defect" : "");
    CMat first(1);
    bool all_pass = true;
    for (int t = 0; t < samples; ++t) {
        CMat h = draw();
        if (t == 0) first = h;
        auto rep = is_hadamard(h, 1e-10);
        all_pass = all_pass && rep.passes;
        json row = {{"sample", t + 1},
                    {"unitarity_residual", rep.unitarity_residual},
                    {"modulus_residual", rep.modulus_residual},
                    {"hadamard", rep.passes}};
        if (check_defect) {
            auto nd = numeric_defect(h, 1e-8);
            row["numeric_defect"] = nd.defect;
            row["reliable_rank"] = nd.reliable_rank;
            std::printf("%6d %14.3e %14.3e %8ld\n", t + 1, rep.unitarity_residual,
                        rep.modulus_residual, nd.defect);
        } else {
            std::printf("%6d %14.3e %14.3e\n", t + 1, rep.unitarity_residual,
                        rep.modulus_residual);
        }
        rows.push_back(std::move(row));
    }
    if (!export_path.empty() && samples > 0)
        save_json_file(export_path, mat_to_json(first));

    json config = {{"family", family}, {"samples", samples}, {"seed", seed},
                   {"check_defect", check_defect}, {"rng", kRngName}};
    if (family == "prime-power") { config["p"] = p; config["k"] = k; }
    if (family == "self-cognate" || family == "block-a" || family == "block-b") {
        config["p1"] = p1;
        config["p2"] = p2;
    }
    json results = {{"N", n}, {"all_hadamard", all_pass}, {"samples", std::move(rows)}};
    if (dim >= 0) results["free_phases"] = dim;
    json report = {
        {"tool", "hadfam"},
        {"command", "families"},
        {"config", std::move(config)},
        {"results", std::move(results)},
        {"metadata", {{"generated_at", iso_now()}}},
    };
    emit(report, out_path);
    return all_pass ? 0 : 1;
}

// --- toy ---------------------------------------------------------------------

int run_toy(const std::string& branch, const std::string& out_path)
{
    struct Entry {
        const char* name;
        ToyBranch id;
        const char* parameter;  // which variable carries the free parameter t
    };
    const std::vector<Entry> all = {
        {"origin", ToyBranch::origin, "Y = t"},
        {"branch-i", ToyBranch::shifted_I, "X - 1 = t"},
        {"branch-ii", ToyBranch::shifted_II, "X - 1 = t"},
        {"origin-alt", ToyBranch::origin_alt, "X = t^2"},
        {"branch-ii-alt", ToyBranch::shifted_II_alt, "Y = t"},
    };

    auto frac_str = [](const Fraction& f) {
        std::string s = std::to_string(f.numerator());
        if (f.denominator() != 1) s += "/" + std::to_string(f.denominator());
        return s;
    };
    auto series_json = [&](const std::array<Fraction, 4>& c) {
        json arr = json::array();
        for (const auto& f : c)
            arr.push_back({{"num", f.numerator()},
                           {"den", f.denominator()},
                           {"decimal", boost::rational_cast<double>(f)}});
        return arr;
    };

    json rows = json::array();
    bool any = false;
    for (const auto& e : all) {
        if (branch != "all" && branch != e.name) continue;
        any = true;
        ToySeries s = toy_series(e.id);
        std::printf("%-14s (%s)\n", e.name, e.parameter);
        for (const char* var : {"x", "y"}) {
            const auto& c = var[0] == 'x' ? s.x : s.y;
            std::printf("  %s:", var);
            for (int i = 0; i < 4; ++i)
                std::printf(" %s*t^%d%s", frac_str(c[i]).c_str(), i + 1,
                            i < 3 ? " +" : "");
            std::printf("  =");
            for (int i = 0; i < 4; ++i)
                std::printf(" %+.6f*t^%d", boost::rational_cast<double>(c[i]), i + 1);
            std::printf("\n");
        }
        rows.push_back({{"branch", e.name},
                        {"parameter", e.parameter},
                        {"x", series_json(s.x)},
                        {"y", series_json(s.y)}});
    }
    if (!any)
        throw std::domain_error("toy branch must be all, origin, branch-i, "
                                "branch-ii, origin-alt or branch-ii-alt");

    json report = {
        {"tool", "hadfam"},
        {"command", "toy"},
        {"config", {{"branch", branch}}},
        {"results", std::move(rows)},
        {"metadata", {{"generated_at", iso_now()}}},
    };
    emit(report, out_path);
    return 0;
}

std::pair<long, long> parse_range(const std::string& s)
{
    auto pos = s.find("..");
    if (pos == std::string::npos)
        throw std::domain_error("range must look like a..b");
    long lo = std::stol(s.substr(0, pos));
    long hi = std::stol(s.substr(pos + 2));
    if (lo < 2 || hi < lo)
        throw std::domain_error("range must satisfy 2 <= a <= b");
    return {lo, hi};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Order-by-order dimension analysis of complex Hadamard "
                 "matrix families through the Fourier matrix"};
    app.require_subcommand(1);

    // defect
    auto* cmd_defect = app.add_subcommand(
        "defect", "Linear and affine dimension counts per matrix size");
    long defect_n = 0;
    std::string defect_range, defect_csv, defect_out;
    auto* opt_n = cmd_defect->add_option("--n", defect_n, "single size N");
    cmd_defect->add_option("--range", defect_range, "size range a..b")
        ->excludes(opt_n);
    cmd_defect->add_option("--csv", defect_csv, "write CSV table");
    cmd_defect->add_option("--out", defect_out, "write JSON report");

    // scan
    auto* cmd_scan = app.add_subcommand(
        "scan", "Find the first order where consistency breaks down");
    long scan_n = 0;
    int scan_max_order = 8, scan_trials = 3;
    std::uint64_t scan_seed = 0;
    double scan_tol = 1e-6;
    std::string scan_pattern = "none", scan_precision = "double", scan_out;
    cmd_scan->add_option("--n", scan_n, "matrix size N")->required();
    cmd_scan->add_option("--max-order", scan_max_order, "highest order checked");
    cmd_scan->add_option("--trials", scan_trials, "independent random trials");
    cmd_scan->add_option("--seed", scan_seed, "RNG seed")->required();
    cmd_scan->add_option("--tol", scan_tol, "relative breakdown tolerance");
    cmd_scan->add_option("--pattern", scan_pattern,
                         "none, typeI, typeII or custom:<file>");
    cmd_scan->add_option("--precision", scan_precision, "double or big:<bits>");
    cmd_scan->add_option("--out", scan_out, "write JSON report");

    // expand
    auto* cmd_expand = app.add_subcommand(
        "expand", "Continue a single random series order by order");
    long exp_n = 0;
    int exp_max_order = 8;
    std::uint64_t exp_seed = 0;
    double exp_tol = 1e-6;
    std::string exp_pattern = "none", exp_precision = "double", exp_out;
    cmd_expand->add_option("--n", exp_n, "matrix size N")->required();
    cmd_expand->add_option("--max-order", exp_max_order, "highest order checked");
    cmd_expand->add_option("--seed", exp_seed, "RNG seed")->required();
    cmd_expand->add_option("--tol", exp_tol, "relative breakdown tolerance");
    cmd_expand->add_option("--pattern", exp_pattern,
                           "none, typeI, typeII or custom:<file>");
    cmd_expand->add_option("--precision", exp_precision, "double or big:<bits>");
    cmd_expand->add_option("--out", exp_out, "write JSON report");

    // n12
    auto* cmd_n12 = app.add_subcommand(
        "n12", "Reduced 13-equation system at N=12 vs the series engine");
    std::string n12_branch = "generic", n12_out;
    int n12_trials = 5;
    std::uint64_t n12_seed = 0;
    double n12_tol = 1e-8;
    cmd_n12->add_option("--branch", n12_branch, "generic, type1 or type3");
    cmd_n12->add_option("--trials", n12_trials, "sample count");
    cmd_n12->add_option("--seed", n12_seed, "RNG seed")->required();
    cmd_n12->add_option("--tol", n12_tol, "vanishing tolerance");
    cmd_n12->add_option("--out", n12_out, "write JSON report");

    // families
    auto* cmd_fam = app.add_subcommand(
        "families", "Construct family members and verify them");
    std::string fam_name, fam_export, fam_out;
    long fam_p = 2, fam_k = 2, fam_p1 = 3, fam_p2 = 2;
    int fam_samples = 5;
    std::uint64_t fam_seed = 0;
    bool fam_defect = false;
    cmd_fam->add_option("--family", fam_name,
                        "n6, prime-power, self-cognate, block-a or block-b")
        ->required();
    cmd_fam->add_option("--p", fam_p, "prime base (prime-power)");
    cmd_fam->add_option("--k", fam_k, "prime exponent (prime-power)");
    cmd_fam->add_option("--p1", fam_p1, "first prime (N = p1*p2^2)");
    cmd_fam->add_option("--p2", fam_p2, "second prime (N = p1*p2^2)");
    cmd_fam->add_option("--samples", fam_samples, "members to draw");
    cmd_fam->add_option("--seed", fam_seed, "RNG seed")->required();
    cmd_fam->add_flag("--check-defect", fam_defect,
                      "also compute the numeric defect of each member");
    cmd_fam->add_option("--export", fam_export, "write the first member as JSON");
    cmd_fam->add_option("--out", fam_out, "write JSON report");

    // toy
    auto* cmd_toy = app.add_subcommand(
        "toy", "Exact series for the two-variable model system");
    std::string toy_branch = "all", toy_out;
    cmd_toy->add_option("--branch", toy_branch,
                        "all, origin, branch-i, branch-ii, origin-alt or "
                        "branch-ii-alt");
    cmd_toy->add_option("--out", toy_out, "write JSON report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    try {
        if (app.got_subcommand(cmd_defect)) {
            long lo, hi;
            if (!defect_range.empty()) std::tie(lo, hi) = parse_range(defect_range);
            else if (defect_n >= 2) lo = hi = defect_n;
            else throw std::domain_error("defect: give --n N (>= 2) or --range a..b");
            return run_defect(lo, hi, defect_csv, defect_out);
        }
        if (app.got_subcommand(cmd_scan))
            return run_scan(scan_n, scan_max_order, scan_trials, scan_seed,
                            scan_tol, scan_pattern,
                            parse_precision(scan_precision), scan_out);
        if (app.got_subcommand(cmd_expand))
            return run_expand(exp_n, exp_max_order, exp_seed, exp_tol, exp_pattern,
                              parse_precision(exp_precision), exp_out);
        if (app.got_subcommand(cmd_n12))
            return run_n12(n12_branch, n12_trials, n12_seed, n12_tol, n12_out);
        if (app.got_subcommand(cmd_fam))
            return run_families(fam_name, fam_p, fam_k, fam_p1, fam_p2,
                                fam_samples, fam_seed, fam_defect, fam_export,
                                fam_out);
        if (app.got_subcommand(cmd_toy))
            return run_toy(toy_branch, toy_out);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 64;
}
