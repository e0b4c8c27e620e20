#ifndef LRIPCT_LRIPCT_HPP
#define LRIPCT_LRIPCT_HPP

#include "conditioning.hpp"
#include "config.hpp"
#include "core.hpp"
#include "dense.hpp"
#include "downsample.hpp"
#include "fbp.hpp"
#include "geometry.hpp"
#include "io.hpp"
#include "metrics.hpp"
#include "noise.hpp"
#include "phantom.hpp"
#include "projector.hpp"
#include "recon.hpp"
#include "variational.hpp"

#endif
