#pragma once

#include "adderstats/config.hpp"
#include "adderstats/distribution.hpp"
#include "adderstats/dyadic.hpp"
#include "adderstats/error_rate.hpp"
#include "adderstats/io.hpp"
#include "adderstats/metrics.hpp"
#include "adderstats/oracle.hpp"
#include "adderstats/prob.hpp"
#include "adderstats/signal_probs.hpp"
