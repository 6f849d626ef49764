#include "pzg/json_io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>

namespace pzg {

using nlohmann::json;

json modulation_to_json(const Modulation& m) {
    switch (m.kind) {
        case ModKind::Constant: return {{"kind", "constant"}, {"value", m.value}};
        case ModKind::Sine:
            return {{"kind", "sine"}, {"amplitude", m.amplitude}, {"omega", m.omega}, {"phase", m.phase}};
        case ModKind::Linear: return {{"kind", "linear"}, {"slope", m.slope}, {"intercept", m.intercept}};
    }
    throw std::logic_error("modulation_to_json: bad kind");
}

Modulation modulation_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "constant") return Modulation::constant(j.at("value").get<double>());
    if (kind == "sine")
        return Modulation::sine(j.at("amplitude").get<double>(), j.at("omega").get<double>(),
                                j.value("phase", 0.0));
    if (kind == "linear")
        return Modulation::linear(j.at("slope").get<double>(), j.at("intercept").get<double>());
    throw std::invalid_argument("unknown modulation kind '" + kind + "'");
}

namespace {

Matrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix: expected non-empty array of rows");
    Matrix m(static_cast<int>(j.size()), static_cast<int>(j.at(0).size()));
    for (int r = 0; r < m.rows; ++r) {
        const json& row = j.at(r);
        if (static_cast<int>(row.size()) != m.cols) throw std::invalid_argument("matrix: ragged rows");
        for (int c = 0; c < m.cols; ++c) m(r, c) = row.at(c).get<double>();
    }
    return m;
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows; ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols; ++c) row.push_back(m(r, c));
        rows.push_back(row);
    }
    return rows;
}

std::vector<Segment> segments_from_json(const json& j, bool reverse, const Matrix& fwd_base) {
    std::vector<Segment> out;
    for (const json& js : j) {
        Segment s;
        s.t_start = js.at("start").get<double>();
        s.t_end = js.at("end").get<double>();
        s.mod = modulation_from_json(js.at("mod"));
        const char* key = reverse ? "base_ji" : "base";
        if (js.contains(key)) {
            s.base_override = matrix_from_json(js.at(key));
        } else if (reverse && js.contains("base")) {
            s.base_override = matrix_from_json(js.at("base")).negated_transpose();
        }
        out.push_back(std::move(s));
    }
    (void)fwd_base;
    return out;
}

json segments_to_json(const PayoffSchedule& fwd, const PayoffSchedule& rev) {
    json out = json::array();
    const auto& fs = fwd.segments();
    const auto& rs = rev.segments();
    if (fs.size() != rs.size())
        throw std::invalid_argument("game_to_json: edge schedules differ structurally");
    for (size_t k = 0; k < fs.size(); ++k) {
        json js = {{"start", fs[k].t_start}, {"end", fs[k].t_end}, {"mod", modulation_to_json(fs[k].mod)}};
        if (fs[k].base_override) js["base"] = matrix_to_json(*fs[k].base_override);
        if (rs[k].base_override) js["base_ji"] = matrix_to_json(*rs[k].base_override);
        out.push_back(std::move(js));
    }
    return out;
}

}  // namespace

GameSpec parse_game_spec(const json& j) {
    GameSpec spec;
    spec.type = j.at("type").get<std::string>();
    const double period = j.at("period").get<double>();
    const json& edges = j.at("edges");
    if (!edges.is_array() || edges.empty()) throw std::invalid_argument("game spec: no edges");

    if (spec.type == "bilinear") {
        const json& e = edges.at(0);
        PayoffSchedule sched(matrix_from_json(e.at("base")),
                             segments_from_json(e.at("segments"), false, Matrix()), period);
        spec.bilinear = BilinearGame{std::move(sched)};
        return spec;
    }
    if (spec.type != "polymatrix")
        throw std::invalid_argument("game spec: unknown type '" + spec.type + "'");

    const int players = j.at("players").get<int>();
    std::vector<int> actions(players, 0);
    std::vector<EdgeGame> egs;
    for (const json& e : edges) {
        const int i = e.at("i").get<int>();
        const int jj = e.at("j").get<int>();
        if (i < 0 || i >= players || jj < 0 || jj >= players)
            throw std::invalid_argument("game spec: edge endpoint out of range");
        Matrix base = matrix_from_json(e.at("base"));
        Matrix base_ji =
            e.contains("base_ji") ? matrix_from_json(e.at("base_ji")) : base.negated_transpose();
        PayoffSchedule a_ij(base, segments_from_json(e.at("segments"), false, base), period);
        PayoffSchedule a_ji(base_ji, segments_from_json(e.at("segments"), true, base), period);
        if (actions[i] == 0) actions[i] = base.rows;
        if (actions[jj] == 0) actions[jj] = base.cols;
        if (actions[i] != base.rows || actions[jj] != base.cols)
            throw std::invalid_argument("game spec: inconsistent action counts across edges");
        egs.push_back(EdgeGame{i, jj, std::move(a_ij), std::move(a_ji)});
    }
    for (int i = 0; i < players; ++i)
        if (actions[i] == 0)
            throw std::invalid_argument("game spec: player " + std::to_string(i) + " has no edges");

    std::optional<JointStrategy> eq;
    if (j.contains("equilibrium") && !j.at("equilibrium").is_null()) {
        JointStrategy xs;
        for (const json& row : j.at("equilibrium")) xs.push_back(row.get<Vec>());
        eq = std::move(xs);
    }
    spec.polymatrix = PolymatrixGame(players, std::move(actions), std::move(egs), std::move(eq));
    return spec;
}

GameSpec load_game_spec(const std::string& path) { return parse_game_spec(read_json_file(path)); }

json game_to_json(const BilinearGame& game) {
    json e = {{"i", 0},
              {"j", 1},
              {"base", matrix_to_json(game.schedule.base())},
              {"segments", segments_to_json(game.schedule, game.schedule)}};
    // segments_to_json writes overrides symmetrically; strip the reverse copies
    for (json& js : e["segments"]) js.erase("base_ji");
    return {{"type", "bilinear"}, {"period", game.period()}, {"players", 2}, {"edges", json::array({e})}};
}

json game_to_json(const PolymatrixGame& game) {
    json edges = json::array();
    for (const EdgeGame& eg : game.edges()) {
        json e = {{"i", eg.i},
                  {"j", eg.j},
                  {"base", matrix_to_json(eg.a_ij.base())},
                  {"base_ji", matrix_to_json(eg.a_ji.base())},
                  {"segments", segments_to_json(eg.a_ij, eg.a_ji)}};
        edges.push_back(std::move(e));
    }
    json out = {{"type", "polymatrix"},
                {"period", game.period()},
                {"players", game.num_players()},
                {"edges", std::move(edges)}};
    if (game.has_equilibrium()) {
        json eq = json::array();
        for (const Vec& xi : game.equilibrium()) eq.push_back(xi);
        out["equilibrium"] = std::move(eq);
    }
    return out;
}

void write_json_file(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << j.dump(2) << "\n";
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    return json::parse(in);
}

}  // namespace pzg
