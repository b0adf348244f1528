// Umbrella header.
#pragma once

#include "chain_model.hpp"
#include "fidelity_metrics.hpp"
#include "propagator.hpp"
#include "revival_theory.hpp"
#include "wavepacket.hpp"
