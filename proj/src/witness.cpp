#include "entangle/witness.hpp"

#include "entangle/tensor.hpp"

#include <cmath>
#include <stdexcept>

namespace entangle {

WitnessOperator build_edge_witness(const BipartiteState& state, const ProductOptOptions& opts,
                                   const ToleranceConfig& tol) {
    tol.validate();
    if (min_eigenvalue(state.rho) < -tol.psd) {
        throw std::invalid_argument("build_edge_witness: input must be PSD");
    }
    const int m = state.dim_a;
    const int n = state.dim_b;
    const Matrix rho_pt = partial_transpose(state, Subsystem::A);

    const Matrix kernel_proj = numerical_kernel(state.rho, tol).kernel_projector;
    const Matrix kernel_proj_pt = numerical_kernel(rho_pt, tol).kernel_projector;
    const Matrix base = kernel_proj + partial_transpose(kernel_proj_pt, m, n, Subsystem::A);

    const ProductOptResult eps_opt =
        extremize_product_overlap(base, m, n, Direction::Minimize, opts, tol);

    WitnessOperator w;
    w.dim_a = m;
    w.dim_b = n;
    w.construction = WitnessConstruction::Edge;
    w.epsilon = eps_opt.value;
    w.confidence = eps_opt.converged_fraction;
    w.degenerate = w.epsilon <= tol.zero;
    w.e_matrix = base - w.epsilon * Matrix::Identity(base.rows(), base.cols());
    return w;
}

WitnessOperator build_lemma1_witness(const BipartiteState& state, const ProductOptOptions& opts,
                                     const ToleranceConfig& tol) {
    tol.validate();
    const Matrix pt_b = partial_transpose(state, Subsystem::B);
    const double lhs = std::max({(state.rho * state.rho).trace().real(),
                                 (pt_b * pt_b).trace().real(),
                                 (state.rho * pt_b).trace().real()});

    const ProductOptResult r_opt = extremize_product_overlap(
        state.rho, state.dim_a, state.dim_b, Direction::Maximize, opts, tol);

    if (lhs <= r_opt.value + tol.zero) {
        throw std::domain_error(
            "build_lemma1_witness: trace criterion not satisfied (max trace quantity <= best "
            "product overlap)");
    }

    WitnessOperator w;
    w.dim_a = state.dim_a;
    w.dim_b = state.dim_b;
    w.construction = WitnessConstruction::Lemma1;
    w.r = r_opt.value;
    w.confidence = r_opt.converged_fraction;
    w.e_matrix = Matrix::Identity(state.rho.rows(), state.rho.cols()) - state.rho / w.r;
    return w;
}

double evaluate_witness(const WitnessOperator& w, const Matrix& rho) {
    if (w.e_matrix.rows() != rho.rows() || w.e_matrix.cols() != rho.cols()) {
        throw std::invalid_argument("evaluate_witness: dimension mismatch");
    }
    return (w.e_matrix * rho).trace().real();
}

double evaluate_witness(const WitnessOperator& w, const BipartiteState& state) {
    if (w.dim_a != state.dim_a || w.dim_b != state.dim_b) {
        throw std::invalid_argument("evaluate_witness: subsystem dimensions mismatch");
    }
    return evaluate_witness(w, state.rho);
}

}  // namespace entangle
