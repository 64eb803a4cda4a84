#pragma once

#include "cdcomb/cd/conf_dist.hpp"
#include "cdcomb/cd/constructors.hpp"
#include "cdcomb/cd/inference.hpp"
#include "cdcomb/combine/combine.hpp"
#include "cdcomb/combine/weights.hpp"
#include "cdcomb/error.hpp"
#include "cdcomb/interval.hpp"
#include "cdcomb/io/csv.hpp"
#include "cdcomb/io/grid_io.hpp"
#include "cdcomb/numkernel/convolution.hpp"
#include "cdcomb/numkernel/de_l.hpp"
#include "cdcomb/numkernel/family.hpp"
#include "cdcomb/numkernel/grid_cdf.hpp"
#include "cdcomb/numkernel/special.hpp"
#include "cdcomb/numkernel/tail_poly.hpp"
#include "cdcomb/rng.hpp"
#include "cdcomb/slope/slope.hpp"
#include "cdcomb/stats/ks.hpp"
#include "cdcomb/studies/common_mean.hpp"
#include "cdcomb/studies/diagnostics.hpp"
#include "cdcomb/studies/odds.hpp"
#include "cdcomb/studies/oja.hpp"
