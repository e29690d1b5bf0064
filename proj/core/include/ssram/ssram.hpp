#pragma once

#include "ssram/kernel.hpp"
#include "ssram/logic.hpp"
#include "ssram/signal.hpp"
#include "ssram/sram.hpp"
#include "ssram/stimulus.hpp"
#include "ssram/timing.hpp"
#include "ssram/vcd.hpp"
