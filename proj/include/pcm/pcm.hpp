// Umbrella header.
#pragma once

#include "pcm/errors.hpp"
#include "pcm/fatou.hpp"
#include "pcm/gallery.hpp"
#include "pcm/kleinian.hpp"
#include "pcm/parallel.hpp"
#include "pcm/piecewise.hpp"
#include "pcm/prediscontinuity.hpp"
#include "pcm/render.hpp"
#include "pcm/scene.hpp"
#include "pcm/spatial.hpp"
#include "pcm/sphere.hpp"
#include "pcm/stability.hpp"
