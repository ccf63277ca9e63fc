#pragma once

// Dual-hop RF/FSO relay performance: fixed-gain AF relaying with partial
// relay selection under outdated CSI and transceiver impairments.

#include "rfso/analytics.hpp"
#include "rfso/channels.hpp"
#include "rfso/config.hpp"
#include "rfso/io.hpp"
#include "rfso/meijer.hpp"
#include "rfso/montecarlo.hpp"
#include "rfso/quadrature.hpp"
#include "rfso/rng.hpp"
#include "rfso/specfun.hpp"
#include "rfso/sweep.hpp"
#include "rfso/system.hpp"
