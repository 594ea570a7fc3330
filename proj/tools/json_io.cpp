#include "json_io.hpp"

#include <fstream>

namespace qsample::io {

SamplingStrategy strategy_from_json(const json& j) {
    StrategyParams params;
    params.n = j.at("n").get<int>();
    params.k = j.value("k", 0);
    params.p = j.value("p", 0.5);
    return make_strategy(parse_strategy_kind(j.at("kind").get<std::string>()), params);
}

json strategy_to_json(const json& config) {
    return {{"kind", config.at("kind")}, {"n", config.at("n")}, {"k", config.value("k", 0)}, {"p", config.value("p", 0.5)}};
}

json to_json(const ErrorEstimate& e) {
    json j{{"value", e.value},
           {"mode", e.mode == EstimateMode::Exact ? "exact" : "mc"},
           {"trials", e.trials},
           {"confidence_halfwidth", e.confidence_halfwidth}};
    j["worst_case_string"] = e.worst_case_string ? json(e.worst_case_string->to_string()) : json(nullptr);
    return j;
}

json to_json(const SecurityReport& r) {
    json terms = json::array();
    for (const auto& t : r.bound_terms) terms.push_back({{"label", t.label}, {"value", t.value}});
    json j{{"bound_terms", terms}, {"total_bound", r.total_bound}, {"delta_used", r.delta_used},
           {"transcript_digest", r.transcript_digest}};
    j["eps_used"] = r.eps_used ? json(*r.eps_used) : json(nullptr);
    j["exact_distance"] = r.exact_distance ? json(*r.exact_distance) : json(nullptr);
    return j;
}

json to_json(const Transcript& t) {
    json out = json::array();
    for (const auto& m : t.messages())
        out.push_back({{"phase", m.phase}, {"sender", m.sender}, {"message-type", m.type}, {"payload-digest", m.payload_digest}});
    return out;
}

json to_json(const PaReport& r) {
    return {{"n", r.n}, {"l", r.l}, {"hmin", r.hmin}, {"distance", r.distance}, {"bound", r.bound}, {"holds", r.holds}};
}

json to_json(const SqrtBoundReport& r) {
    return {{"ideal_distance", r.ideal_distance}, {"sqrt_eps_class", r.sqrt_eps_class}, {"gap", r.gap()}, {"holds", r.holds}};
}

json state_to_json(const PureState& state) {
    json amps = json::array();
    for (Eigen::Index i = 0; i < state.amplitudes().size(); ++i) {
        amps.push_back(state.amplitudes()[i].real());
        amps.push_back(state.amplitudes()[i].imag());
    }
    return {{"dims", state.dims()}, {"amplitudes", amps}};
}

PureState state_from_json(const json& j) {
    const auto dims = j.at("dims").get<Dims>();
    const auto& amps = j.at("amplitudes");
    require(amps.is_array() && amps.size() == 2 * total_dimension(dims), "state needs one (re, im) pair per basis vector");
    Vector v(static_cast<Eigen::Index>(amps.size() / 2));
    for (Eigen::Index i = 0; i < v.size(); ++i)
        v[i] = Complex(amps[static_cast<std::size_t>(2 * i)].get<double>(), amps[static_cast<std::size_t>(2 * i + 1)].get<double>());
    return PureState(v, dims);
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(row);
    }
    return rows;
}

Matrix matrix_from_json(const json& j) {
    require(j.is_array() && !j.empty(), "matrix must be a non-empty array of rows");
    const auto size = static_cast<Eigen::Index>(j.size());
    Matrix m(size, size);
    for (Eigen::Index r = 0; r < size; ++r) {
        const auto& row = j[static_cast<std::size_t>(r)];
        require(row.is_array() && static_cast<Eigen::Index>(row.size()) == size, "matrix must be square");
        for (Eigen::Index c = 0; c < size; ++c) {
            const auto& entry = row[static_cast<std::size_t>(c)];
            m(r, c) = entry.is_array() ? Complex(entry.at(0).get<double>(), entry.at(1).get<double>()) : Complex(entry.get<double>(), 0.0);
        }
    }
    return m;
}

json bits_json(const Bits& bits) { return bits_to_string(bits); }

json read_file(const std::string& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw PreconditionError("'" + path + "' is not valid JSON: " + e.what());
    }
}

}  // namespace qsample::io
