#pragma once

#include "waverom/block.hpp"
#include "waverom/diagnostics.hpp"
#include "waverom/errors.hpp"
#include "waverom/experiment.hpp"
#include "waverom/gramian.hpp"
#include "waverom/grid.hpp"
#include "waverom/io.hpp"
#include "waverom/lift.hpp"
#include "waverom/projection.hpp"
#include "waverom/pulse.hpp"
#include "waverom/sampling.hpp"
#include "waverom/snapshot.hpp"
#include "waverom/spectral_oracle.hpp"
#include "waverom/transfer.hpp"
#include "waverom/wave_solver.hpp"
