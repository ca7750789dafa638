#pragma once

#include "parity/detection.hpp"
#include "parity/errors.hpp"
#include "parity/interferometer.hpp"
#include "parity/state.hpp"
#include "parity/states.hpp"
#include "parity/wigner.hpp"
