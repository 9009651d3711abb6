#ifndef COOPGROW_COOPGROW_HPP
#define COOPGROW_COOPGROW_HPP

#include "coopgrow/errors.hpp"
#include "coopgrow/random.hpp"
#include "coopgrow/network.hpp"
#include "coopgrow/game.hpp"
#include "coopgrow/growth.hpp"
#include "coopgrow/simulation.hpp"
#include "coopgrow/stats.hpp"
#include "coopgrow/experiments.hpp"
#include "coopgrow/config.hpp"
#include "coopgrow/commands.hpp"

#endif  // COOPGROW_COOPGROW_HPP
