#pragma once

#include "heatsg/complex_time.hpp"
#include "heatsg/config.hpp"
#include "heatsg/field.hpp"
#include "heatsg/field_io.hpp"
#include "heatsg/fields.hpp"
#include "heatsg/generator.hpp"
#include "heatsg/grid.hpp"
#include "heatsg/kernel.hpp"
#include "heatsg/semigroup.hpp"
#include "heatsg/verify.hpp"
#include "heatsg/weights.hpp"
