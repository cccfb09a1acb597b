#pragma once

// umbrella header

#include "gramspec/centering.hpp"
#include "gramspec/datasets.hpp"
#include "gramspec/eigen.hpp"
#include "gramspec/keca.hpp"
#include "gramspec/kernels.hpp"
#include "gramspec/kpca.hpp"
#include "gramspec/matrix.hpp"
#include "gramspec/mds.hpp"
#include "gramspec/rank_one.hpp"
#include "gramspec/rng.hpp"
#include "gramspec/spectral.hpp"
