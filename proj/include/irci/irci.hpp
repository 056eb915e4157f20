#pragma once

// Umbrella header for the IRCI-free MIMO-OFDM range reconstruction library.

#include "irci/baselines.hpp"
#include "irci/errors.hpp"
#include "irci/metrics.hpp"
#include "irci/ofdm_waveform.hpp"
#include "irci/pipeline.hpp"
#include "irci/reconstruction.hpp"
#include "irci/scenario.hpp"
#include "irci/scene_channel.hpp"
#include "irci/spectral.hpp"
#include "irci/zc_sequences.hpp"
