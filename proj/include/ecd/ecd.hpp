#pragma once

// Entropic chaos degree toolkit: qubit states and channels, the quantum
// and classical degree computations, and the sweep/report plumbing.

#include "ecd/channels.hpp"
#include "ecd/chaos_degree.hpp"
#include "ecd/classical.hpp"
#include "ecd/errors.hpp"
#include "ecd/matrix2.hpp"
#include "ecd/state.hpp"
#include "ecd/sweep.hpp"
