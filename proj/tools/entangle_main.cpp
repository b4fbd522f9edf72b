// entangle: bipartite separability and distillability toolbox.
//
// Subcommands:
//   gen      emit a state from one of the built-in families as JSON
//   check    run separability/distillability criteria on a state file
//   witness  construct an entanglement witness from a state file
//   distill  minimize the K-copy objective for the Werner family
//   sweep    (beta, K) grid as CSV, region-map data
//
// All matrices use the JSON wire format {"rows", "cols", "data": [[re, im]..]}
// with states adding {"dim_a", "dim_b"}. Runs with identical flags and seed
// produce identical output. ENTANGLE_MAX_DIM raises the (M*N)^K cap.

#include "entangle/distill.hpp"
#include "entangle/json_io.hpp"
#include "entangle/product_opt.hpp"
#include "entangle/separability.hpp"
#include "entangle/states.hpp"
#include "entangle/tensor.hpp"
#include "entangle/witness.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace entangle;
using nlohmann::json;

namespace {

struct BetaRange {
    double lo = 0.0;
    double hi = 0.0;
    int steps = 1;
};

BetaRange parse_beta_range(const std::string& text) {
    BetaRange range;
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
        throw CLI::ValidationError("--beta-range", "expected lo:hi:steps");
    }
    range.lo = std::stod(text.substr(0, c1));
    range.hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    range.steps = std::stoi(text.substr(c2 + 1));
    if (range.steps < 1 || range.hi < range.lo) {
        throw CLI::ValidationError("--beta-range", "need steps >= 1 and hi >= lo");
    }
    return range;
}

double beta_at(const BetaRange& range, int i) {
    if (range.steps == 1) return range.lo;
    return range.lo + (range.hi - range.lo) * i / (range.steps - 1);
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        write_json_file(out_path, j);
    }
}

json provenance(std::uint64_t seed, int restarts, const ToleranceConfig& tol) {
    return json{{"seed", seed},
                {"restarts", restarts},
                {"tolerances", {{"psd", tol.psd}, {"rank", tol.rank}, {"zero", tol.zero}}}};
}

json vector_to_json(const Vector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v[i].real(), v[i].imag()});
    return out;
}

json scan_point_to_json(const DistillScanPoint& p, std::uint64_t seed,
                        const ToleranceConfig& tol) {
    json minimizer{{"a", {p.minimizer.a.real(), p.minimizer.a.imag()}},
                   {"b", {p.minimizer.b.real(), p.minimizer.b.imag()}},
                   {"e1", vector_to_json(p.minimizer.e1)},
                   {"e2", vector_to_json(p.minimizer.e2)},
                   {"f1", vector_to_json(p.minimizer.f1)},
                   {"f2", vector_to_json(p.minimizer.f2)}};
    return json{{"beta", p.beta},
                {"copies", p.copies},
                {"min_value", p.min_value},
                {"distillable", p.distillable},
                {"converged_fraction", p.converged_fraction},
                {"restarts", p.restarts},
                {"minimizer", std::move(minimizer)},
                {"provenance", provenance(seed, p.restarts, tol)}};
}

int run_gen(const std::string& family, int n, int m, std::optional<double> alpha,
            std::optional<double> beta, int rank, std::uint64_t seed,
            const std::string& out_path) {
    json j;
    if (family == "werner") {
        WernerParams params;
        if (beta.has_value()) {
            params = WernerParams::from_beta(n, *beta);
        } else {
            params = WernerParams{n, alpha.value_or(1.0)};
        }
        j = state_to_json(werner_state(params));
        j["metadata"] = {{"family", "werner"}, {"alpha", params.alpha}, {"beta", params.beta()}};
    } else if (family == "max-entangled") {
        const int dim = m > 0 ? m : n;
        const Vector psi = max_entangled(dim);
        j = state_to_json(BipartiteState(dim, dim, psi * psi.adjoint()));
        j["metadata"] = {{"family", "max-entangled"}};
    } else if (family == "tiles") {
        j = state_to_json(tiles_upb_state());
        j["metadata"] = {{"family", "tiles-upb"}};
    } else if (family == "random") {
        const int dim_a = m > 0 ? m : n;
        const int effective_rank = rank > 0 ? rank : dim_a * n;
        j = state_to_json(random_state(dim_a, n, effective_rank, seed));
        j["metadata"] = {{"family", "random"}, {"rank", effective_rank}, {"seed", seed}};
    } else if (family == "random-product") {
        const int dim_a = m > 0 ? m : n;
        const ProductVector pv = random_product_vector(dim_a, n, seed);
        j = state_to_json(BipartiteState(dim_a, n, product_projector(pv)));
        j["metadata"] = {{"family", "random-product"}, {"seed", seed}};
    } else {
        std::cerr << "unknown family: " << family << "\n";
        return 1;
    }
    emit(j, out_path);
    return 0;
}

int run_check(const std::string& in_path, const std::string& criterion, int restarts,
              std::uint64_t seed, const std::string& out_path) {
    const ToleranceConfig tol;
    const BipartiteState state = state_from_json(load_json_file(in_path), tol);

    ProductOptOptions opts;
    opts.restarts = restarts;
    opts.seed = seed;

    std::vector<json> verdicts;
    auto want = [&](const std::string& name) { return criterion == name || criterion == "all"; };
    if (want("ppt")) verdicts.push_back(verdict_to_json(ppt_check(state, tol)));
    if (want("reduction")) verdicts.push_back(verdict_to_json(reduction_check(state, tol)));
    if (want("rank")) verdicts.push_back(verdict_to_json(rank_criterion_check(state, tol)));
    if (want("lemma1")) verdicts.push_back(verdict_to_json(lemma1_check(state, opts, tol)));
    if (want("binary")) {
        const BinaryMixtureResult res = binary_mixture_check(state, tol);
        json jj = verdict_to_json(res.verdict);
        jj["solutions"] = json::array();
        for (const BinaryMixtureSolution& sol : res.solutions) {
            jj["solutions"].push_back({{"mu", matrix_to_json(sol.mu)},
                                       {"nu", matrix_to_json(sol.nu)},
                                       {"p", sol.p},
                                       {"branch", std::string(1, sol.branch)}});
        }
        verdicts.push_back(std::move(jj));
    }
    if (verdicts.empty()) {
        std::cerr << "unknown criterion: " << criterion << "\n";
        return 1;
    }

    json out;
    if (verdicts.size() == 1) {
        out = verdicts.front();
    } else {
        out = json{{"verdicts", verdicts}};
    }
    out["provenance"] = provenance(seed, restarts, tol);
    emit(out, out_path);
    return 0;
}

int run_witness(const std::string& in_path, const std::string& construction, int restarts,
                std::uint64_t seed, const std::string& out_path) {
    const ToleranceConfig tol;
    const BipartiteState state = state_from_json(load_json_file(in_path), tol);
    ProductOptOptions opts;
    opts.restarts = restarts;
    opts.seed = seed;

    WitnessOperator w;
    if (construction == "edge") {
        w = build_edge_witness(state, opts, tol);
    } else if (construction == "lemma1") {
        w = build_lemma1_witness(state, opts, tol);  // throws when refused
    } else {
        std::cerr << "unknown construction: " << construction << "\n";
        return 1;
    }
    json j = witness_to_json(w);
    j["value_on_input"] = evaluate_witness(w, state);
    j["provenance"] = provenance(seed, restarts, tol);
    emit(j, out_path);
    return 0;
}

void append_csv_row(std::ostream& out, double beta, const DistillScanPoint& p,
                    std::uint64_t seed, const ToleranceConfig& tol) {
    const bool ppt = beta <= 1.0 + tol.zero;
    const char* verdict = p.distillable ? "K-distillable" : "no-negative-found";
    char line[256];
    std::snprintf(line, sizeof(line), "%.10g,%d,%.12g,%s,%d,%d,%.6g,%llu\n", beta, p.copies,
                  p.min_value, verdict, ppt ? 1 : 0, p.restarts, p.converged_fraction,
                  static_cast<unsigned long long>(seed));
    out << line;
}

int run_distill(int n, std::optional<double> beta, const std::string& beta_range, int copies,
                int restarts, std::uint64_t seed, const std::string& out_path,
                const std::string& csv_path) {
    const ToleranceConfig tol;
    KDistillOptions opts;
    opts.restarts = restarts;
    opts.seed = seed;

    std::vector<DistillScanPoint> points;
    auto scan_one = [&](double b) {
        DistillScanPoint p = minimize_kdistill(werner_pt_numerator(n, b), copies, n, n, opts, tol);
        p.beta = b;
        points.push_back(p);
        return scan_point_to_json(p, seed, tol);
    };

    if (beta.has_value()) {
        emit(scan_one(*beta), out_path);
    } else if (!beta_range.empty()) {
        const BetaRange range = parse_beta_range(beta_range);
        json arr = json::array();
        for (int i = 0; i < range.steps; ++i) arr.push_back(scan_one(beta_at(range, i)));
        emit(arr, out_path);
    } else {
        std::cerr << "need --beta or --beta-range\n";
        return 1;
    }

    if (!csv_path.empty()) {
        std::ofstream file(csv_path);
        if (!file) {
            std::cerr << "cannot write " << csv_path << "\n";
            return 1;
        }
        file << "beta,copies,min_value,verdict,ppt,restarts,converged_fraction,seed\n";
        for (const DistillScanPoint& p : points) append_csv_row(file, p.beta, p, seed, tol);
    }
    return 0;
}

int run_sweep(int n, const std::string& beta_range, const std::vector<int>& copies_list,
              int restarts, std::uint64_t seed, const std::string& csv_path) {
    const ToleranceConfig tol;
    const BetaRange range = parse_beta_range(beta_range);

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!csv_path.empty()) {
        file.open(csv_path);
        if (!file) {
            std::cerr << "cannot write " << csv_path << "\n";
            return 1;
        }
        out = &file;
    }
    *out << "beta,copies,min_value,verdict,ppt,restarts,converged_fraction,seed\n";
    for (int i = 0; i < range.steps; ++i) {
        const double beta = beta_at(range, i);
        for (int copies : copies_list) {
            KDistillOptions opts;
            opts.restarts = restarts;
            opts.seed = seed;
            const DistillScanPoint p =
                minimize_kdistill(werner_pt_numerator(n, beta), copies, n, n, opts, tol);
            append_csv_row(*out, beta, p, seed, tol);
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bipartite separability and distillability toolbox"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "emit a state from a built-in family as JSON");
    std::string family = "werner";
    int gen_n = 3, gen_m = 0, gen_rank = 0;
    std::optional<double> gen_alpha, gen_beta;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    gen->add_option("--family", family, "werner | max-entangled | tiles | random | random-product");
    gen->add_option("--n", gen_n, "local dimension N (Bob)");
    gen->add_option("--m", gen_m, "local dimension M (Alice); defaults to N");
    gen->add_option("--alpha", gen_alpha, "Werner alpha >= 0");
    gen->add_option("--beta", gen_beta, "Werner beta in [-N, N); overrides --alpha");
    gen->add_option("--rank", gen_rank, "rank for the random family");
    gen->add_option("--seed", gen_seed, "random seed");
    gen->add_option("--out", gen_out, "output file (default stdout)");

    // check
    auto* check = app.add_subcommand("check", "run separability criteria on a state file");
    std::string check_in, check_criterion = "all", check_out;
    int check_restarts = 256;
    std::uint64_t check_seed = 0;
    check->add_option("--in", check_in, "state JSON file")->required();
    check->add_option("--criterion", check_criterion,
                      "ppt | reduction | rank | lemma1 | binary | all");
    check->add_option("--restarts", check_restarts, "optimizer restarts (lemma1)");
    check->add_option("--seed", check_seed, "optimizer seed");
    check->add_option("--out", check_out, "output file (default stdout)");

    // witness
    auto* witness = app.add_subcommand("witness", "construct an entanglement witness");
    std::string wit_in, wit_construction = "edge", wit_out;
    int wit_restarts = 512;
    std::uint64_t wit_seed = 0;
    witness->add_option("--in", wit_in, "state JSON file")->required();
    witness->add_option("--construction", wit_construction, "edge | lemma1");
    witness->add_option("--restarts", wit_restarts, "optimizer restarts");
    witness->add_option("--seed", wit_seed, "optimizer seed");
    witness->add_option("--out", wit_out, "output file (default stdout)");

    // distill
    auto* distill = app.add_subcommand("distill", "minimize the K-copy objective (Werner family)");
    int dis_n = 3, dis_copies = 1, dis_restarts = 256;
    std::optional<double> dis_beta;
    std::string dis_range, dis_out, dis_csv;
    std::uint64_t dis_seed = 0;
    distill->add_option("--n", dis_n, "local dimension N");
    distill->add_option("--beta", dis_beta, "single beta value");
    distill->add_option("--beta-range", dis_range, "lo:hi:steps");
    distill->add_option("--copies", dis_copies, "number of copies K");
    distill->add_option("--restarts", dis_restarts, "optimizer restarts");
    distill->add_option("--seed", dis_seed, "optimizer seed");
    distill->add_option("--out", dis_out, "output file (default stdout)");
    distill->add_option("--csv", dis_csv, "also write the scan as CSV");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "(beta, K) grid as CSV");
    int sw_n = 3, sw_restarts = 128;
    std::string sw_range, sw_csv;
    std::vector<int> sw_copies{1};
    std::uint64_t sw_seed = 0;
    sweep->add_option("--n", sw_n, "local dimension N");
    sweep->add_option("--beta-range", sw_range, "lo:hi:steps")->required();
    sweep->add_option("--copies", sw_copies, "list of K values")->delimiter(',');
    sweep->add_option("--restarts", sw_restarts, "optimizer restarts");
    sweep->add_option("--seed", sw_seed, "optimizer seed");
    sweep->add_option("--csv", sw_csv, "output CSV file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            return run_gen(family, gen_n, gen_m, gen_alpha, gen_beta, gen_rank, gen_seed, gen_out);
        }
        if (check->parsed()) {
            return run_check(check_in, check_criterion, check_restarts, check_seed, check_out);
        }
        if (witness->parsed()) {
            return run_witness(wit_in, wit_construction, wit_restarts, wit_seed, wit_out);
        }
        if (distill->parsed()) {
            return run_distill(dis_n, dis_beta, dis_range, dis_copies, dis_restarts, dis_seed,
                               dis_out, dis_csv);
        }
        if (sweep->parsed()) {
            return run_sweep(sw_n, sw_range, sw_copies, sw_restarts, sw_seed, sw_csv);
        }
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 0;
}
