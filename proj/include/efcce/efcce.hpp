#pragma once

#include "efcce/dynamics.hpp"
#include "efcce/game.hpp"
#include "efcce/games.hpp"
#include "efcce/regret.hpp"
#include "efcce/serialize.hpp"
#include "efcce/treeplex.hpp"
#include "efcce/trigger.hpp"
