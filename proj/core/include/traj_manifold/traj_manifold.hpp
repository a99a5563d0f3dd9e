#pragma once

// Umbrella header.

#include "traj_manifold/dataset.hpp"
#include "traj_manifold/dataset_io.hpp"
#include "traj_manifold/embed.hpp"
#include "traj_manifold/errors.hpp"
#include "traj_manifold/graph.hpp"
#include "traj_manifold/metrics.hpp"
#include "traj_manifold/numeric_io.hpp"
#include "traj_manifold/parallel.hpp"
#include "traj_manifold/reports.hpp"
#include "traj_manifold/rng.hpp"
#include "traj_manifold/spectral.hpp"
#include "traj_manifold/synth.hpp"
#include "traj_manifold/types.hpp"
