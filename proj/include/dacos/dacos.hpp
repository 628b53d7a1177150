#pragma once

#include "bell.hpp"
#include "bits.hpp"
#include "compiler.hpp"
#include "decoder.hpp"
#include "frames.hpp"
#include "io.hpp"
#include "pauli_sim.hpp"
#include "presets.hpp"
#include "rates.hpp"
#include "scheduler.hpp"
#include "stabilizer.hpp"
