// pqft: prepare pseudorandom-phase field states, run the transform analogy,
// and verify every output against the dense DFT reference.

#include <chrono>
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pqft/json_io.hpp"
#include "pqft/oracle.hpp"
#include "pqft/qft.hpp"
#include "pqft/random.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInvalidInput = 2;

std::string format_residual(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", value);
    return buf;
}

std::string format_complex(pqft::Complex z) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g%+.12gi", z.real(), z.imag());
    return buf;
}

struct SequencesOptions {
    std::string family_kind;
    int M = 0;
    int p = 0;
    int degree = 0;
    std::string poly;
    std::vector<int> ids;
    std::string out;
};

int run_sequences(const SequencesOptions& opt) {
    pqft::SequenceFamily family = [&] {
        if (opt.family_kind == "fourier") {
            if (opt.M <= 0) throw std::invalid_argument("fourier family needs --M");
            return pqft::make_fourier_family(opt.M, opt.ids);
        }
        if (opt.p <= 0 || opt.degree <= 0 || opt.poly.empty())
            throw std::invalid_argument("mseq family needs --p, --degree and --poly");
        std::vector<int> coeffs;
        coeffs.reserve(opt.poly.size());
        for (char ch : opt.poly) {
            if (ch < '0' || ch > '9') throw std::invalid_argument("--poly must be a digit string");
            coeffs.push_back(ch - '0');
        }
        return pqft::make_mseq_family(opt.p, opt.degree, coeffs, opt.ids);
    }();

    const double M = family.slot_count();
    double balance = 0.0;
    double orthogonality = 0.0;
    for (int a : family.base_ids()) {
        balance = std::max(balance, std::abs(family.balance_sum(a, 0.0)) / M);
        for (int b : family.base_ids()) {
            const double target = a == b ? 1.0 : 0.0;
            orthogonality = std::max(orthogonality, std::abs(family.correlation(a, b) - target));
        }
    }
    const bool collision_ok = family.collision_free();

    pqft::write_json_file(opt.out, pqft::family_to_json(family));
    std::cout << "wrote " << opt.out << "\n"
              << "family " << pqft::to_string(family.kind()) << " M=" << family.slot_count()
              << " n=" << family.field_count() << "\n"
              << "balance max residual " << format_residual(balance) << "\n"
              << "orthogonality max residual " << format_residual(orthogonality) << "\n"
              << "collision check " << (collision_ok ? "passed" : "failed") << " for degree "
              << family.field_count() << "\n";
    return kExitOk;
}

struct PrepareOptions {
    std::string kind;
    int n = 0;
    std::string family_path;
    std::string gates_path;
    std::optional<std::uint64_t> seed;
    std::string out;
};

pqft::Mat2 gate_from_json(const pqft::Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 || !j[1].is_array() ||
        j[1].size() != 2)
        throw std::invalid_argument("each gate must be a 2x2 array of [re, im] entries");
    return pqft::Mat2{j[0][0].get<pqft::Complex>(), j[0][1].get<pqft::Complex>(),
                      j[1][0].get<pqft::Complex>(), j[1][1].get<pqft::Complex>()};
}

int run_prepare(const PrepareOptions& opt) {
    if (opt.n < 1 || opt.n > 16) throw std::invalid_argument("--n must lie in [1, 16]");
    pqft::SequenceFamily family = pqft::family_from_json(pqft::read_json_file(opt.family_path));
    if (family.field_count() != opt.n)
        throw std::invalid_argument("family has " + std::to_string(family.field_count()) +
                                    " base ids but --n is " + std::to_string(opt.n));

    std::vector<pqft::FieldState> fields;
    std::optional<std::uint64_t> recorded_seed;
    if (opt.kind == "product") {
        for (int i = 1; i <= opt.n; ++i) fields.push_back(pqft::prepare_uniform(opt.n, i));
    } else if (opt.kind == "ghz" || opt.kind == "w") {
        if (opt.n != 3) throw std::invalid_argument("--kind " + opt.kind + " is a three-field preparation");
        auto fixed = opt.kind == "ghz" ? pqft::prepare_ghz_fields() : pqft::prepare_w_fields();
        fields.assign(fixed.begin(), fixed.end());
    } else if (opt.kind == "custom") {
        if (!opt.gates_path.empty()) {
            const auto gates = pqft::read_json_file(opt.gates_path);
            if (!gates.is_array() || static_cast<int>(gates.size()) != opt.n)
                throw std::invalid_argument("--gates must hold one 2x2 gate per field");
            for (int i = 1; i <= opt.n; ++i)
                fields.push_back(pqft::apply_gate(pqft::prepare_uniform(opt.n, i),
                                                  gate_from_json(gates[static_cast<std::size_t>(i - 1)])));
        } else if (opt.seed) {
            pqft::SeededRng rng(*opt.seed);
            fields = pqft::random_gate_fields(opt.n, rng);
            recorded_seed = opt.seed;
        } else {
            throw std::invalid_argument("--kind custom needs --gates or --seed");
        }
    } else {
        throw std::invalid_argument("unknown --kind '" + opt.kind + "'");
    }

    pqft::StateFile state(opt.n, std::move(family), std::move(fields), opt.kind, recorded_seed);
    pqft::write_json_file(opt.out, pqft::state_to_json(state));
    std::cout << "wrote " << opt.out << " (" << opt.kind << ", n=" << opt.n << ")\n";
    return kExitOk;
}

struct TransformOptions {
    std::string state_path;
    std::string engine;
    std::string out;
};

int run_transform(const TransformOptions& opt) {
    const pqft::StateFile state = pqft::state_from_json(pqft::read_json_file(opt.state_path));
    const pqft::Engine engine = opt.engine == "sampled" ? pqft::Engine::sampled : pqft::Engine::symbolic;
    pqft::TransformReport report =
        pqft::transform(state.fields, engine, engine == pqft::Engine::sampled ? &state.family : nullptr);

    // The dense reference costs O(4^n); skip it for large states.
    if (state.n <= 8) {
        const auto reduced = pqft::reduce(pqft::tensor_product(state.fields));
        report.oracle_residual = pqft::max_abs_diff(report.coefficients, pqft::reference_dft(reduced.amps)).value;
    }

    pqft::write_json_file(opt.out, pqft::Json(report));
    std::cout << "wrote " << opt.out << "\n"
              << "engine " << pqft::to_string(report.engine) << " n=" << report.n << "\n"
              << "gate totals: controlled_phase=" << report.gate_counts.controlled_phase
              << " hadamard=" << report.gate_counts.hadamard << " mode_select=" << report.gate_counts.mode_select
              << " correlation=" << report.gate_counts.correlation << "\n";
    if (report.oracle_residual)
        std::cout << "oracle residual " << format_residual(*report.oracle_residual) << "\n";
    return kExitOk;
}

struct VerifyOptions {
    std::string state_path;
    double tol = 1e-8;
    int random_states = 0;
    std::uint64_t seed = 0;
};

int run_verify(const VerifyOptions& opt) {
    const pqft::StateFile state = pqft::state_from_json(pqft::read_json_file(opt.state_path));

    double worst = -1.0;
    std::size_t worst_index = 0;
    pqft::Complex worst_engine, worst_oracle;
    std::string worst_label;

    auto check = [&](const std::vector<pqft::FieldState>& fields, const std::string& label) {
        const auto analog = pqft::reduced_transform(fields);
        const auto expected = pqft::reference_dft(pqft::reduce(pqft::tensor_product(fields)).amps);
        const auto diff = pqft::max_abs_diff(analog.amps, expected);
        if (diff.value > worst) {
            worst = diff.value;
            worst_index = diff.index;
            worst_engine = analog.amps[diff.index];
            worst_oracle = expected[diff.index];
            worst_label = label;
        }
    };

    check(state.fields, "state file");
    if (opt.random_states > 0) {
        pqft::SeededRng rng(opt.seed);
        for (int i = 0; i < opt.random_states; ++i) {
            auto fields = pqft::random_gate_fields(state.n, rng);
            check(fields, "random state " + std::to_string(i));
        }
    }

    std::cout << "max residual " << format_residual(worst) << " at index " << worst_index << " (" << worst_label
              << ": " << format_complex(worst_engine) << " vs oracle " << format_complex(worst_oracle) << ")\n";
    if (worst <= opt.tol) {
        std::cout << "verify passed (tol " << format_residual(opt.tol) << ")\n";
        return kExitOk;
    }
    std::cout << "verify FAILED (tol " << format_residual(opt.tol) << ")\n";
    return kExitVerifyFailed;
}

struct BenchOptions {
    int n_max = 0;
    std::string csv_path;
};

int run_bench(const BenchOptions& opt) {
    if (opt.n_max < 1 || opt.n_max > 16) throw std::invalid_argument("--n-max must lie in [1, 16]");
    std::ofstream csv(opt.csv_path);
    if (!csv) throw std::runtime_error("cannot open '" + opt.csv_path + "' for writing");

    csv << "n,per_coeff_cphase,per_coeff_h,per_coeff_select,per_coeff_corr,per_coeff_total,full_total,"
           "fft_reference,symbolic_ms\n";
    for (int n = 1; n <= opt.n_max; ++n) {
        const auto per = pqft::per_coefficient_gate_count(n);
        const std::int64_t per_total = per.controlled_phase + per.hadamard + per.mode_select + per.correlation;
        const std::int64_t full_total = per_total << n;
        const std::int64_t fft_reference = static_cast<std::int64_t>(n) << n;
        csv << n << ',' << per.controlled_phase << ',' << per.hadamard << ',' << per.mode_select << ','
            << per.correlation << ',' << per_total << ',' << full_total << ',' << fft_reference << ',';
        if (n <= 10) {
            std::vector<pqft::FieldState> fields;
            for (int i = 1; i <= n; ++i) fields.push_back(pqft::prepare_uniform(n, i));
            const auto start = std::chrono::steady_clock::now();
            const auto report = pqft::transform(fields, pqft::Engine::symbolic);
            const auto stop = std::chrono::steady_clock::now();
            (void)report;
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.3f",
                          std::chrono::duration<double, std::milli>(stop - start).count());
            csv << buf;
        }
        csv << '\n';
    }
    std::cout << "wrote " << opt.csv_path << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"classical-field analogy to the quantum Fourier transform over pseudorandom phase ensembles"};
    app.require_subcommand(1);

    SequencesOptions seq;
    auto* seq_cmd = app.add_subcommand("sequences", "generate a phase sequence family");
    seq_cmd->add_option("--family", seq.family_kind, "family kind")
        ->required()
        ->check(CLI::IsMember({"fourier", "mseq"}));
    seq_cmd->add_option("--M", seq.M, "slot count (fourier)");
    seq_cmd->add_option("--p", seq.p, "alphabet prime (mseq)");
    seq_cmd->add_option("--degree", seq.degree, "recurrence degree (mseq)");
    seq_cmd->add_option("--poly", seq.poly, "monic polynomial digits, high to low (mseq)");
    seq_cmd->add_option("--ids", seq.ids, "base sequence ids")->required()->delimiter(',');
    seq_cmd->add_option("--out", seq.out, "output family JSON")->required();

    PrepareOptions prep;
    auto* prep_cmd = app.add_subcommand("prepare", "prepare a field state file");
    prep_cmd->add_option("--kind", prep.kind, "state kind")
        ->required()
        ->check(CLI::IsMember({"product", "ghz", "w", "custom"}));
    prep_cmd->add_option("--n", prep.n, "field count")->required();
    prep_cmd->add_option("--family", prep.family_path, "family JSON")->required();
    prep_cmd->add_option("--gates", prep.gates_path, "gate list JSON (custom)");
    std::uint64_t prep_seed = 0;
    auto* seed_opt = prep_cmd->add_option("--seed", prep_seed, "random gate seed (custom)");
    prep_cmd->add_option("--out", prep.out, "output state JSON")->required();

    TransformOptions trans;
    auto* trans_cmd = app.add_subcommand("transform", "run the transform on a state file");
    trans_cmd->add_option("--state", trans.state_path, "state JSON")->required();
    trans_cmd->add_option("--engine", trans.engine, "engine")
        ->required()
        ->check(CLI::IsMember({"symbolic", "sampled"}));
    trans_cmd->add_option("--out", trans.out, "output report JSON")->required();

    VerifyOptions ver;
    auto* ver_cmd = app.add_subcommand("verify", "check the transform against the dense reference");
    ver_cmd->add_option("--state", ver.state_path, "state JSON")->required();
    ver_cmd->add_option("--tol", ver.tol, "residual tolerance");
    ver_cmd->add_option("--random", ver.random_states, "additional seeded random states");
    ver_cmd->add_option("--seed", ver.seed, "seed for --random");

    BenchOptions bench;
    auto* bench_cmd = app.add_subcommand("bench", "emit the operation-count table");
    bench_cmd->add_option("--n-max", bench.n_max, "largest field count")->required();
    bench_cmd->add_option("--csv", bench.csv_path, "output CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        app.exit(e);
        return kExitInvalidInput;
    }

    try {
        if (seq_cmd->parsed()) return run_sequences(seq);
        if (prep_cmd->parsed()) {
            if (seed_opt->count() > 0) prep.seed = prep_seed;
            return run_prepare(prep);
        }
        if (trans_cmd->parsed()) return run_transform(trans);
        if (ver_cmd->parsed()) return run_verify(ver);
        if (bench_cmd->parsed()) return run_bench(bench);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    }
    return kExitInvalidInput;
}
