#include "entangle/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace entangle {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
    json data = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            data.push_back({m(r, c).real(), m(r, c).imag()});
        }
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data")) {
        throw std::invalid_argument("matrix JSON needs \"rows\", \"cols\" and \"data\"");
    }
    const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
    const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
    if (rows < 1 || cols < 1) throw std::invalid_argument("matrix JSON: nonpositive dimensions");
    const json& data = j.at("data");
    if (!data.is_array() || data.size() != static_cast<size_t>(rows * cols)) {
        throw std::invalid_argument("matrix JSON: \"data\" must hold rows*cols entries");
    }
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            const json& cell = data[static_cast<size_t>(r * cols + c)];
            if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() ||
                !cell[1].is_number()) {
                throw std::invalid_argument("matrix JSON: bad entry at row " + std::to_string(r) +
                                            ", col " + std::to_string(c) +
                                            " (expected [re, im])");
            }
            m(r, c) = cxd(cell[0].get<double>(), cell[1].get<double>());
        }
    }
    return m;
}

json state_to_json(const BipartiteState& state) {
    json j = matrix_to_json(state.rho);
    j["dim_a"] = state.dim_a;
    j["dim_b"] = state.dim_b;
    return j;
}

BipartiteState state_from_json(const json& j, const ToleranceConfig& tol) {
    if (!j.contains("dim_a") || !j.contains("dim_b")) {
        throw std::invalid_argument("state JSON needs \"dim_a\" and \"dim_b\"");
    }
    BipartiteState state(j.at("dim_a").get<int>(), j.at("dim_b").get<int>(), matrix_from_json(j));
    state.validate(tol);
    return state;
}

json verdict_to_json(const Verdict& v) {
    json details(v.details);
    json j{{"criterion", v.criterion},
           {"status", v.label.empty() ? to_string(v.status) : v.label},
           {"margin", v.margin},
           {"details", std::move(details)}};
    if (v.distillable) j["distillable"] = true;
    return j;
}

json witness_to_json(const WitnessOperator& w) {
    json j = matrix_to_json(w.e_matrix);
    j["dim_a"] = w.dim_a;
    j["dim_b"] = w.dim_b;
    j["construction"] = w.construction == WitnessConstruction::Edge ? "edge" : "lemma1";
    j["confidence"] = w.confidence;
    j["degenerate"] = w.degenerate;
    if (w.construction == WitnessConstruction::Edge) {
        j["epsilon"] = w.epsilon;
    } else {
        j["max_product_overlap"] = w.r;
    }
    return j;
}

WitnessOperator witness_from_json(const json& j) {
    WitnessOperator w;
    w.e_matrix = matrix_from_json(j);
    w.dim_a = j.at("dim_a").get<int>();
    w.dim_b = j.at("dim_b").get<int>();
    const std::string kind = j.at("construction").get<std::string>();
    w.construction = kind == "edge" ? WitnessConstruction::Edge : WitnessConstruction::Lemma1;
    w.confidence = j.value("confidence", 0.0);
    w.degenerate = j.value("degenerate", false);
    w.epsilon = j.value("epsilon", 0.0);
    w.r = j.value("max_product_overlap", 0.0);
    return w;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace entangle
