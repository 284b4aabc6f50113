// unistoch: decide unistochasticity of bistochastic matrices, reconstruct
// witnesses, build complex Hadamard matrices and entangled bases, and run the
// Birkhoff-polytope volume experiment.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "unistoch/birkhoff.hpp"
#include "unistoch/entangle.hpp"
#include "unistoch/hadamard.hpp"
#include "unistoch/json_io.hpp"
#include "unistoch/unicheck.hpp"

namespace {

using namespace unistoch;

constexpr int kExitParse = 64;
constexpr int kExitValidation = 65;

int thread_budget() {
    int budget = static_cast<int>(std::thread::hardware_concurrency());
    if (budget < 1) budget = 1;
    if (const char* env = std::getenv("UNISTOCH_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) budget = std::min(budget, cap);
    }
    return budget;
}

// Runs work(stratum) for each stratum on a small pool; results must be
// written to per-stratum slots so the aggregate is scheduling-independent.
void run_strata(int strata, const std::function<void(int)>& work) {
    const int workers = std::min(thread_budget(), strata);
    if (workers <= 1) {
        for (int s = 0; s < strata; ++s) work(s);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int s = next.fetch_add(1); s < strata; s = next.fetch_add(1)) work(s);
        });
    for (auto& t : pool) t.join();
}

int exit_code_for(const Error& e) {
    return e.code() == ErrorCode::ParseError ? kExitParse : kExitValidation;
}

// Knobs shared by the experiment-style commands; validated up front so no
// output file is ever created from a bad configuration.
struct ExperimentConfig {
    int n = 3;
    long long samples = 1000000;
    std::uint64_t seed = 0;
    int restarts = 20;
    double atol = 1e-10;
    double tol = 1e-14;
    std::string out;
    std::string format = "json";

    void validate() const {
        if (samples < 1) throw Error(ErrorCode::InvalidArgument, "samples must be positive");
        if (restarts < 1) throw Error(ErrorCode::InvalidArgument, "restarts must be positive");
        if (atol <= 0.0 || tol <= 0.0)
            throw Error(ErrorCode::InvalidArgument, "tolerances must be positive");
        if (format != "json" && format != "csv")
            throw Error(ErrorCode::InvalidArgument, "format must be json or csv");
    }
};

// ---------------------------------------------------------------------------
// check

int cmd_check(const std::string& input, int restarts, std::uint64_t seed, double tol, double atol) {
    const Json j = load_json_file(input);
    const BistochasticMatrix b = read_bistochastic(j, atol);

    UnistochasticityVerdict verdict;
    if (b.dim() == 2)
        verdict = check_exact_n2(b);
    else if (b.dim() == 3)
        verdict = check_exact_n3(b);
    else
        verdict = check_numerical(b, restarts, seed, tol);

    std::cout << to_json(verdict).dump(2) << "\n";
    switch (verdict.status) {
        case VerdictStatus::Unistochastic: return 0;
        case VerdictStatus::NotUnistochastic: return 1;
        case VerdictStatus::Undecided: return 2;
    }
    return 2;
}

// ---------------------------------------------------------------------------
// volume

struct StratumCount {
    long long unistochastic = 0;
    long long orthostochastic = 0;
};

int cmd_volume(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.n != 3)
        throw Error(ErrorCode::Unsupported,
                    "the volume experiment runs only at n = 3, where sampler and test are exact");
    const long long samples = cfg.samples;
    const std::uint64_t seed = cfg.seed;

    const auto start = std::chrono::steady_clock::now();
    // Fixed stratum count, independent of the worker pool, so the reported
    // fraction depends only on (seed, samples).
    const int strata = 64;
    std::vector<StratumCount> counts(strata);
    run_strata(strata, [&](int s) {
        UniformSampler sampler(3, seed, static_cast<std::uint64_t>(s));
        const long long quota = samples / strata + (s < samples % strata ? 1 : 0);
        StratumCount local;
        for (long long i = 0; i < quota; ++i) {
            const BistochasticMatrix b = sampler.next();
            const ChainLinks links = chain_links(b, 0, 1);
            if (links.closable()) {
                ++local.unistochastic;
                if (links.degenerate()) ++local.orthostochastic;
            }
        }
        counts[s] = local;
    });

    long long uni = 0, ortho = 0;
    for (const auto& c : counts) {
        uni += c.unistochastic;
        ortho += c.orthostochastic;
    }
    const double fraction = static_cast<double>(uni) / samples;
    const double ortho_fraction = static_cast<double>(ortho) / samples;

    // Wilson 95% interval.
    const double z = 1.959963984540054;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / samples;
    const double center = (fraction + z2 / (2.0 * samples)) / denom;
    const double half =
        z * std::sqrt(fraction * (1.0 - fraction) / samples + z2 / (4.0 * samples * samples)) /
        denom;
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::string rendered;
    if (cfg.format == "csv") {
        std::ostringstream os;
        os << "n,samples,seed,unistochastic_fraction,orthostochastic_fraction,"
              "wilson95_low,wilson95_high,elapsed_seconds\n"
           << cfg.n << "," << samples << "," << seed << "," << fraction << "," << ortho_fraction
           << "," << center - half << "," << center + half << "," << elapsed << "\n";
        rendered = os.str();
    } else {
        const Json summary{{"n", cfg.n},
                           {"samples", samples},
                           {"seed", seed},
                           {"unistochastic_fraction", fraction},
                           {"orthostochastic_fraction", ortho_fraction},
                           {"wilson95_low", center - half},
                           {"wilson95_high", center + half},
                           {"strata", strata},
                           {"elapsed_seconds", elapsed}};
        rendered = summary.dump(2) + "\n";
    }
    std::cout << rendered;
    if (!cfg.out.empty()) {
        std::ofstream f(cfg.out);
        if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write '" + cfg.out + "'");
        f << rendered;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// scan-triangle

int cmd_scan_triangle(int grid, const std::string& which, const std::string& out,
                      const std::string& format) {
    if (grid < 2) throw Error(ErrorCode::InvalidArgument, "grid must be at least 2");
    if (format != "csv" && format != "json")
        throw Error(ErrorCode::InvalidArgument, "format must be json or csv");
    std::vector<PermutationMatrix> corners;
    if (which == "even") {
        corners = {PermutationMatrix({0, 1, 2}), PermutationMatrix({1, 2, 0}),
                   PermutationMatrix({2, 0, 1})};
    } else if (which == "odd") {
        corners = {PermutationMatrix({1, 0, 2}), PermutationMatrix({2, 1, 0}),
                   PermutationMatrix({0, 2, 1})};
    } else {
        throw Error(ErrorCode::InvalidArgument, "triangle must be 'even' or 'odd'");
    }
    const Matrix p0 = corners[0].to_matrix(), p1 = corners[1].to_matrix(),
                 p2 = corners[2].to_matrix();

    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out.empty()) {
        file.open(out);
        if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write '" + out + "'");
        os = &file;
    }
    Json rows = Json::array();
    if (format == "csv") *os << "a,b,c,status,defect\n";
    for (int i = 0; i <= grid; ++i)
        for (int j = 0; j <= grid - i; ++j) {
            const int k = grid - i - j;
            const double a = static_cast<double>(i) / grid;
            const double b = static_cast<double>(j) / grid;
            const double c = static_cast<double>(k) / grid;
            const BistochasticMatrix m(a * p0 + b * p1 + c * p2);
            const UnistochasticityVerdict v = check_exact_n3(m);
            if (format == "csv")
                *os << a << "," << b << "," << c << "," << to_string(v.status) << "," << v.defect
                    << "\n";
            else
                rows.push_back(Json{{"a", a},
                                    {"b", b},
                                    {"c", c},
                                    {"status", to_string(v.status)},
                                    {"defect", v.defect}});
        }
    if (format == "json") *os << rows.dump(2) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// make

int cmd_make(const std::string& what, int n, int k, double phi, bool phi_given,
             const std::string& out) {
    Json payload;
    std::string summary;

    if (what == "fourier") {
        const UnitaryMatrix u = fourier(n);
        payload = to_json(u);
        summary = "fourier n=" + std::to_string(n) +
                  " unitarity_defect=" + std::to_string(u.unitarity_defect()) +
                  " hadamard=" + (is_complex_hadamard(u) ? "yes" : "no");
    } else if (what == "family4") {
        const UnitaryMatrix u = hadamard_family_n4(phi);
        payload = to_json(u);
        summary = "family4 phi=" + std::to_string(phi) +
                  " unitarity_defect=" + std::to_string(u.unitarity_defect()) +
                  " hadamard=" + (is_complex_hadamard(u) ? "yes" : "no");
    } else if (what == "sylvester") {
        const UnitaryMatrix u = sylvester(k);
        payload = to_json(u);
        summary = "sylvester k=" + std::to_string(k) + " dim=" + std::to_string(u.dim()) +
                  " unitarity_defect=" + std::to_string(u.unitarity_defect()) +
                  " hadamard=" + (is_complex_hadamard(u) ? "yes" : "no");
    } else if (what == "circulant") {
        const UnitaryMatrix u = circulant_hadamard(gauss_sequence(n));
        payload = to_json(u);
        summary = "circulant(gauss) n=" + std::to_string(n) +
                  " unitarity_defect=" + std::to_string(u.unitarity_defect()) +
                  " hadamard=" + (is_complex_hadamard(u) ? "yes" : "no");
    } else if (what == "basis") {
        const UnitaryMatrix h = (n == 4 && phi_given) ? hadamard_family_n4(phi) : fourier(n);
        const EntangledBasis basis = build_basis(cyclic_latin(n), h);
        const BasisReport report = verify_basis(basis);
        payload = to_json(basis);
        summary = "basis n=" + std::to_string(n) +
                  " gram_deviation=" + std::to_string(report.max_gram_deviation) +
                  " reduced_deviation=" + std::to_string(report.max_reduced_deviation);
    } else {
        throw Error(ErrorCode::InvalidArgument,
                    "unknown constructor '" + what +
                        "' (expected fourier|family4|sylvester|circulant|basis)");
    }

    if (!out.empty()) {
        std::ofstream f(out);
        if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write '" + out + "'");
        f << payload.dump(2) << "\n";
    } else {
        std::cout << payload.dump(2) << "\n";
    }
    std::cerr << summary << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// sample

int cmd_sample(int n, long long count, std::uint64_t seed, const std::string& out) {
    if (count < 1) throw Error(ErrorCode::InvalidArgument, "samples must be positive");
    UniformSampler sampler(n, seed); // validates n before any file is touched
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out.empty()) {
        file.open(out);
        if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write '" + out + "'");
        os = &file;
    }
    for (long long i = 0; i < count; ++i) {
        const BistochasticMatrix b = sampler.next();
        const Json line{{"n", n}, {"kind", "bistochastic"}, {"entries", matrix_to_json(b.entries())}};
        *os << line.dump() << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"unistochasticity toolkit for bistochastic matrices"};
    app.require_subcommand(1);

    // check
    std::string check_input;
    int check_restarts = 20;
    std::uint64_t check_seed = 0;
    double check_tol = 1e-14, check_atol = 1e-10;
    auto* check = app.add_subcommand("check", "decide unistochasticity of a matrix file");
    check->add_option("input", check_input, "JSON matrix file")->required();
    check->add_option("--restarts", check_restarts, "optimizer restarts (n >= 4)");
    check->add_option("--seed", check_seed, "optimizer seed (n >= 4)");
    check->add_option("--tol", check_tol, "optimizer acceptance tolerance");
    check->add_option("--atol", check_atol, "structural validation tolerance");

    // volume
    ExperimentConfig vol_cfg;
    auto* volume = app.add_subcommand("volume", "estimate the unistochastic fraction of the polytope");
    volume->add_option("--n", vol_cfg.n, "dimension (only 3 is supported)");
    volume->add_option("--samples", vol_cfg.samples, "number of uniform samples");
    volume->add_option("--seed", vol_cfg.seed, "sampling seed");
    volume->add_option("--out", vol_cfg.out, "also write the summary here");
    volume->add_option("--format", vol_cfg.format, "json or csv");
    volume->add_option("--atol", vol_cfg.atol, "structural validation tolerance");

    // scan-triangle
    int scan_grid = 50;
    std::string scan_which = "even", scan_out, scan_format = "csv";
    auto* scan = app.add_subcommand("scan-triangle", "scan a corner triangle, one row per grid point");
    scan->add_option("--grid", scan_grid, "barycentric subdivisions")->check(CLI::Range(2, 100000));
    scan->add_option("--which", scan_which, "even (I and the 3-cycles) or odd (the transpositions)");
    scan->add_option("--out", scan_out, "output path (stdout if omitted)");
    scan->add_option("--format", scan_format, "csv or json");

    // make
    std::string make_what, make_out;
    int make_n = 3, make_k = 2;
    double make_phi = 0.0;
    auto* make = app.add_subcommand("make", "construct Hadamard matrices and entangled bases");
    make->add_option("what", make_what, "fourier|family4|sylvester|circulant|basis")->required();
    make->add_option("--n", make_n, "dimension / sequence length / local dimension");
    make->add_option("--k", make_k, "Sylvester doubling exponent");
    auto* phi_opt = make->add_option("--phi", make_phi,
                                     "family parameter in radians (with 'basis --n 4' selects the "
                                     "family matrix instead of Fourier)");
    make->add_option("--out", make_out, "output file (stdout if omitted)");

    // sample
    int sample_n = 3;
    long long sample_count = 10;
    std::uint64_t sample_seed = 0;
    std::string sample_out;
    auto* sample = app.add_subcommand("sample", "stream uniform samples as JSON lines");
    sample->add_option("--n", sample_n, "dimension");
    sample->add_option("--samples", sample_count, "number of samples");
    sample->add_option("--seed", sample_seed, "sampling seed");
    sample->add_option("--out", sample_out, "output path (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitParse;
    }

    try {
        if (*check) return cmd_check(check_input, check_restarts, check_seed, check_tol, check_atol);
        if (*volume) return cmd_volume(vol_cfg);
        if (*scan) return cmd_scan_triangle(scan_grid, scan_which, scan_out, scan_format);
        if (*make)
            return cmd_make(make_what, make_n, make_k, make_phi, phi_opt->count() > 0, make_out);
        if (*sample) return cmd_sample(sample_n, sample_count, sample_seed, sample_out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitParse;
}
