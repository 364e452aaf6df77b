#pragma once

#include "fundepth/band.hpp"
#include "fundepth/core.hpp"
#include "fundepth/csv.hpp"
#include "fundepth/error.hpp"
#include "fundepth/integrated.hpp"
#include "fundepth/parallel.hpp"
#include "fundepth/profile.hpp"
#include "fundepth/projection.hpp"
#include "fundepth/random.hpp"
#include "fundepth/report.hpp"
#include "fundepth/simulate.hpp"
#include "fundepth/spatial.hpp"
