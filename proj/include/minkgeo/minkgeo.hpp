#pragma once

// Umbrella header: the whole library except spec_io.hpp, which pulls in a
// JSON dependency and is included explicitly by the tools that need it.

#include "minkgeo/conics.hpp"
#include "minkgeo/core.hpp"
#include "minkgeo/errors.hpp"
#include "minkgeo/planar.hpp"
#include "minkgeo/render.hpp"
#include "minkgeo/rng.hpp"
#include "minkgeo/verify.hpp"
