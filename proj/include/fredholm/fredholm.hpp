#pragma once

// Everything except the JSON layer (fredholm/json_io.hpp).

#include "fredholm/bases.hpp"
#include "fredholm/construct.hpp"
#include "fredholm/decision.hpp"
#include "fredholm/error.hpp"
#include "fredholm/extmath.hpp"
#include "fredholm/fredholm_data.hpp"
#include "fredholm/model_op.hpp"
#include "fredholm/parallel.hpp"
#include "fredholm/rational.hpp"
#include "fredholm/spectral.hpp"
#include "fredholm/truncation.hpp"
