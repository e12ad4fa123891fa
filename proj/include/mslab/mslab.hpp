#pragma once

#include "mslab/error.hpp"
#include "mslab/rational.hpp"
#include "mslab/metric_space.hpp"
#include "mslab/katetov.hpp"
#include "mslab/random.hpp"
#include "mslab/report.hpp"
#include "mslab/urysohn.hpp"
#include "mslab/weak_uniformity.hpp"
#include "mslab/hilbert.hpp"
#include "mslab/lp.hpp"
#include "mslab/radial.hpp"
#include "mslab/rado.hpp"
#include "mslab/json_io.hpp"
#include "mslab/suite.hpp"
