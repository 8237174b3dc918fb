#ifndef SUKP_SUKP_HPP
#define SUKP_SUKP_HPP

#include "sukp/bench.hpp"
#include "sukp/dtlbo.hpp"
#include "sukp/eval.hpp"
#include "sukp/instance.hpp"
#include "sukp/oracle.hpp"
#include "sukp/repair.hpp"
#include "sukp/rng.hpp"
#include "sukp/stats.hpp"

#endif  // SUKP_SUKP_HPP
