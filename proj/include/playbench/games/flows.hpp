#pragma once

#include "playbench/engine/game_master.hpp"

namespace playbench::games {

// Drives `episode` to a terminal state according to its game's flow.
void play_flow(Episode& episode);

// The reply parser the game master applies to `role` in `flow`.
ResponseParser parser_for(Flow flow, Role role, const LocalePack& pack);

// Roles a flow needs players for.
std::vector<Role> flow_roles(Flow flow);

// Checks the instance parameters against the flow's schema and returns the
// effective turn limit. Throws InvalidInstance.
int check_instance(Flow flow, const json& params, int spec_max_turns);

}  // namespace playbench::games
