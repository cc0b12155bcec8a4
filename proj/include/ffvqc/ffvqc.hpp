#pragma once

#include "ansatz.hpp"
#include "circuit.hpp"
#include "cost.hpp"
#include "errors.hpp"
#include "experiment.hpp"
#include "gate.hpp"
#include "layout.hpp"
#include "minimize.hpp"
#include "problems.hpp"
#include "rng.hpp"
#include "sim.hpp"
#include "vqe.hpp"
