// Python bindings for the core operations. Matrices cross the boundary as
// complex numpy arrays via pybind11's Eigen support; verdicts and reports
// come back as plain dicts.

#include "entangle/distill.hpp"
#include "entangle/json_io.hpp"
#include "entangle/operator_basis.hpp"
#include "entangle/product_opt.hpp"
#include "entangle/separability.hpp"
#include "entangle/states.hpp"
#include "entangle/tensor.hpp"
#include "entangle/witness.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace entangle;

namespace {

BipartiteState make_state(const Matrix& rho, int dim_a, int dim_b) {
    BipartiteState state(dim_a, dim_b, rho);
    state.validate();
    return state;
}

py::dict verdict_dict(const Verdict& v) {
    py::dict d;
    d["criterion"] = v.criterion;
    d["status"] = v.label.empty() ? to_string(v.status) : v.label;
    d["margin"] = v.margin;
    d["distillable"] = v.distillable;
    py::dict details;
    for (const auto& [key, value] : v.details) details[py::str(key)] = value;
    d["details"] = details;
    return d;
}

py::dict witness_dict(const WitnessOperator& w) {
    py::dict d;
    d["matrix"] = w.e_matrix;
    d["dim_a"] = w.dim_a;
    d["dim_b"] = w.dim_b;
    d["construction"] = w.construction == WitnessConstruction::Edge ? "edge" : "lemma1";
    d["epsilon"] = w.epsilon;
    d["max_product_overlap"] = w.r;
    d["confidence"] = w.confidence;
    d["degenerate"] = w.degenerate;
    return d;
}

ProductOptOptions opt_options(int restarts, std::uint64_t seed) {
    ProductOptOptions opts;
    opts.restarts = restarts;
    opts.seed = seed;
    return opts;
}

py::dict scan_point_dict(const DistillScanPoint& p) {
    py::dict d;
    d["copies"] = p.copies;
    d["min_value"] = p.min_value;
    d["distillable"] = p.distillable;
    d["converged_fraction"] = p.converged_fraction;
    d["restarts"] = p.restarts;
    py::dict minimizer;
    minimizer["a"] = p.minimizer.a;
    minimizer["b"] = p.minimizer.b;
    minimizer["e1"] = p.minimizer.e1;
    minimizer["e2"] = p.minimizer.e2;
    minimizer["f1"] = p.minimizer.f1;
    minimizer["f2"] = p.minimizer.f2;
    d["minimizer"] = minimizer;
    return d;
}

}  // namespace

PYBIND11_MODULE(_entangle, m) {
    m.doc() = "separability criteria, entanglement witnesses and K-copy distillability "
              "for bipartite density matrices";

    // states
    m.def(
        "werner_state",
        [](int n, double alpha) { return werner_state(WernerParams{n, alpha}).rho; },
        py::arg("n"), py::arg("alpha"), "Werner-family density matrix (P_S + alpha P_A)/m");
    m.def(
        "werner_beta", [](int n, double alpha) { return WernerParams{n, alpha}.beta(); },
        py::arg("n"), py::arg("alpha"));
    m.def(
        "werner_alpha", [](int n, double beta) { return WernerParams::from_beta(n, beta).alpha; },
        py::arg("n"), py::arg("beta"));
    m.def("werner_pt", &werner_pt, py::arg("n"), py::arg("beta"),
          "(1 - beta P)/(N^2 - beta), the Werner partial transpose");
    m.def("werner_pt_numerator", &werner_pt_numerator, py::arg("n"), py::arg("beta"),
          "unnormalized 1 - beta P");
    m.def("max_entangled", &max_entangled, py::arg("m"));
    m.def(
        "tiles_upb_state", [] { return tiles_upb_state().rho; },
        "3x3 bound entangled state from the tiles unextendible product basis");
    m.def(
        "random_state",
        [](int m_dim, int n_dim, int rank, std::uint64_t seed) {
            return random_state(m_dim, n_dim, rank, seed).rho;
        },
        py::arg("dim_a"), py::arg("dim_b"), py::arg("rank"), py::arg("seed"));

    // tensor operations
    m.def(
        "partial_transpose",
        [](const Matrix& rho, int dim_a, int dim_b, const std::string& subsystem) {
            return partial_transpose(rho, dim_a, dim_b,
                                     subsystem == "A" ? Subsystem::A : Subsystem::B);
        },
        py::arg("rho"), py::arg("dim_a"), py::arg("dim_b"), py::arg("subsystem") = "A");
    m.def(
        "partial_trace",
        [](const Matrix& rho, int dim_a, int dim_b, const std::string& traced) {
            return partial_trace(rho, dim_a, dim_b, traced == "A" ? Subsystem::A : Subsystem::B);
        },
        py::arg("rho"), py::arg("dim_a"), py::arg("dim_b"), py::arg("traced") = "B",
        "reduced density matrix of the subsystem that is kept");
    m.def("tensor_power", &tensor_power, py::arg("op"), py::arg("copies"), py::arg("dim_a"),
          py::arg("dim_b"), "regrouped K-copy operator, copy-major on each side");
    m.def(
        "kernel_info",
        [](const Matrix& m_in) {
            const KernelInfo info = numerical_kernel(m_in);
            py::dict d;
            d["rank"] = info.rank;
            d["kernel_basis"] = info.kernel_basis;
            d["kernel_projector"] = info.kernel_projector;
            return d;
        },
        py::arg("matrix"));
    m.def(
        "realign_to_correlation",
        [](const Matrix& rho, int dim_a, int dim_b) {
            return realign_to_correlation(rho, OperatorBasis::gell_mann(dim_a),
                                          OperatorBasis::gell_mann(dim_b));
        },
        py::arg("op"), py::arg("dim_a"), py::arg("dim_b"),
        "coefficients in the Gell-Mann product operator basis");

    // separability criteria
    m.def(
        "ppt_check",
        [](const Matrix& rho, int dim_a, int dim_b) {
            return verdict_dict(ppt_check(make_state(rho, dim_a, dim_b)));
        },
        py::arg("rho"), py::arg("dim_a"), py::arg("dim_b"));
    m.def(
        "reduction_check",
        [](const Matrix& rho, int dim_a, int dim_b) {
            return verdict_dict(reduction_check(make_state(rho, dim_a, dim_b)));
        },
        py::arg("rho"), py::arg("dim_a"), py::arg("dim_b"));
    m.def(
        "rank_criterion_check",
        [](const Matrix& rho, int dim_a, int dim_b) {
            return verdict_dict(rank_criterion_check(make_state(rho, dim_a, dim_b)));
        },
        py::arg("rho"), py::arg("dim_a"), py::arg("dim_b"));
    m.def(
        "lemma1_check",
        [](const Matrix& rho, int dim_a, int dim_b, int restarts, std::uint64_t seed) {
            return verdict_dict(
                lemma1_check(make_state(rho, dim_a, dim_b), opt_options(restarts, seed)));
        },
        py::arg("rho"), py::arg("dim_a"), py::arg("dim_b"), py::arg("restarts") = 256,
        py::arg("seed") = 0);
    m.def(
        "binary_mixture_check",
        [](const Matrix& rho, int dim_a, int dim_b) {
            const BinaryMixtureResult res = binary_mixture_check(make_state(rho, dim_a, dim_b));
            py::dict d = verdict_dict(res.verdict);
            py::list solutions;
            for (const BinaryMixtureSolution& sol : res.solutions) {
                py::dict s;
                s["mu"] = sol.mu;
                s["nu"] = sol.nu;
                s["p"] = sol.p;
                s["branch"] = std::string(1, sol.branch);
                solutions.append(s);
            }
            d["solutions"] = solutions;
            return d;
        },
        py::arg("rho"), py::arg("dim_a"), py::arg("dim_b"));
    m.def(
        "edge_decompose",
        [](const Matrix& rho, int dim_a, int dim_b, int budget, std::uint64_t seed) {
            const EdgeDecomposition dec =
                edge_decompose(make_state(rho, dim_a, dim_b), budget, seed);
            py::dict d;
            d["lambda_total"] = dec.lambda_total;
            d["residual"] = dec.residual;
            d["iterations"] = dec.iterations;
            py::list terms;
            for (const auto& [w, pv] : dec.separable_terms) {
                py::dict t;
                t["weight"] = w;
                t["e"] = pv.e;
                t["f"] = pv.f;
                terms.append(t);
            }
            d["terms"] = terms;
            return d;
        },
        py::arg("rho"), py::arg("dim_a"), py::arg("dim_b"), py::arg("budget") = 200,
        py::arg("seed") = 0);

    // product-vector optimization
    m.def(
        "extremize_product_overlap",
        [](const Matrix& h, int dim_a, int dim_b, const std::string& direction, int restarts,
           std::uint64_t seed) {
            const ProductOptResult res = extremize_product_overlap(
                h, dim_a, dim_b, direction == "min" ? Direction::Minimize : Direction::Maximize,
                opt_options(restarts, seed));
            py::dict d;
            d["value"] = res.value;
            d["e"] = res.argbest.e;
            d["f"] = res.argbest.f;
            d["restarts_used"] = res.restarts_used;
            d["converged_fraction"] = res.converged_fraction;
            d["certified_upper_bound"] = res.certified_upper_bound;
            d["certified_lower_bound"] = res.certified_lower_bound;
            return d;
        },
        py::arg("h"), py::arg("dim_a"), py::arg("dim_b"), py::arg("direction") = "max",
        py::arg("restarts") = 512, py::arg("seed") = 0);

    // witnesses
    m.def(
        "build_edge_witness",
        [](const Matrix& rho, int dim_a, int dim_b, int restarts, std::uint64_t seed) {
            return witness_dict(
                build_edge_witness(make_state(rho, dim_a, dim_b), opt_options(restarts, seed)));
        },
        py::arg("rho"), py::arg("dim_a"), py::arg("dim_b"), py::arg("restarts") = 512,
        py::arg("seed") = 0);
    m.def(
        "build_lemma1_witness",
        [](const Matrix& rho, int dim_a, int dim_b, int restarts, std::uint64_t seed) {
            return witness_dict(
                build_lemma1_witness(make_state(rho, dim_a, dim_b), opt_options(restarts, seed)));
        },
        py::arg("rho"), py::arg("dim_a"), py::arg("dim_b"), py::arg("restarts") = 512,
        py::arg("seed") = 0);
    m.def(
        "evaluate_witness",
        [](const Matrix& witness, const Matrix& rho) {
            WitnessOperator w;
            w.e_matrix = witness;
            return evaluate_witness(w, rho);
        },
        py::arg("witness"), py::arg("rho"));

    // distillability
    m.def(
        "minimize_kdistill",
        [](const Matrix& op, int copies, int dim_a, int dim_b, int restarts, std::uint64_t seed) {
            KDistillOptions opts;
            opts.restarts = restarts;
            opts.seed = seed;
            return scan_point_dict(minimize_kdistill(op, copies, dim_a, dim_b, opts));
        },
        py::arg("op"), py::arg("copies"), py::arg("dim_a"), py::arg("dim_b"),
        py::arg("restarts") = 256, py::arg("seed") = 0,
        "minimize <psi|op^(x)K|psi> over Schmidt-rank-2 psi");
    m.def("werner_1copy_min", &werner_1copy_min, py::arg("n"), py::arg("beta"));
    m.def("beta_k_bound", &beta_k_bound, py::arg("k"));
    m.def(
        "two_copy_certificate",
        [](double beta, int samples, std::uint64_t seed) {
            const TwoCopyCertificateReport rep = two_copy_certificate(beta, samples, seed);
            py::dict d;
            d["beta"] = rep.beta;
            d["samples"] = rep.samples;
            d["min_slack_q_qhalf"] = rep.min_slack_q_qhalf;
            d["min_slack_qhalf_q"] = rep.min_slack_qhalf_q;
            d["min_slack_final"] = rep.min_slack_final;
            d["min_pp_term"] = rep.min_pp_term;
            d["chain_holds"] = rep.chain_holds;
            d["certified"] = rep.certified;
            d["status"] = rep.status;
            return d;
        },
        py::arg("beta"), py::arg("samples") = 10000, py::arg("seed") = 0);
    m.def(
        "psi_star",
        [](int i, int j, int r, int s, double phi) { return psi_star(i, j, r, s, phi).to_vector(); },
        py::arg("i"), py::arg("j"), py::arg("r"), py::arg("s"), py::arg("phi") = 0.0,
        "zero-line family member on the two-copy 3x3 space");
    m.def(
        "appc_objective",
        [](double lam, const Vector& psi) { return appc_objective(lam, psi); }, py::arg("lam"),
        py::arg("psi"));
    m.def(
        "appc_expectations",
        [](const Vector& psi) {
            const AppcExpectations e = appc_expectations(psi);
            py::dict d;
            d["one_one"] = e.one_one;
            d["one_p"] = e.one_p;
            d["p_one"] = e.p_one;
            d["p_p"] = e.p_p;
            return d;
        },
        py::arg("psi"));
    m.def(
        "appc_hessian_check",
        [](double lam, double step) {
            const AppcHessianReport rep = appc_hessian_check(lam, step);
            py::dict d;
            d["lambda"] = rep.lambda;
            d["gradient"] = rep.gradient;
            d["diag_second"] = rep.diag_second;
            d["diag_expected"] = rep.diag_expected;
            d["diag4_ts"] = rep.diag4_ts;
            d["diag4_ts_expected"] = rep.diag4_ts_expected;
            d["offdiag_26"] = rep.offdiag_26;
            d["offdiag_26_expected"] = rep.offdiag_26_expected;
            d["offdiag_35"] = rep.offdiag_35;
            d["offdiag_35_expected"] = rep.offdiag_35_expected;
            d["max_other_offdiag"] = rep.max_other_offdiag;
            d["det26_formula"] = rep.det26_formula;
            d["det26_numeric"] = rep.det26_numeric;
            d["first_order_vanishes"] = rep.first_order_vanishes;
            d["second_order_matches"] = rep.second_order_matches;
            return d;
        },
        py::arg("lam"), py::arg("step") = 1e-4);
}
