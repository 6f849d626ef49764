#pragma once

#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>

#include "pzg/games.hpp"

namespace pzg {

// A parsed game-spec file; exactly one of the two members is set.
struct GameSpec {
    std::string type;
    std::optional<BilinearGame> bilinear;
    std::optional<PolymatrixGame> polymatrix;
};

GameSpec parse_game_spec(const nlohmann::json& j);
GameSpec load_game_spec(const std::string& path);

nlohmann::json game_to_json(const BilinearGame& game);
nlohmann::json game_to_json(const PolymatrixGame& game);

nlohmann::json modulation_to_json(const Modulation& m);
Modulation modulation_from_json(const nlohmann::json& j);

void write_json_file(const nlohmann::json& j, const std::string& path);
nlohmann::json read_json_file(const std::string& path);

}  // namespace pzg
