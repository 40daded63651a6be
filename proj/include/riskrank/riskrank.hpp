#pragma once

#include "riskrank/data_io.hpp"
#include "riskrank/decision.hpp"
#include "riskrank/edas_marcos.hpp"
#include "riskrank/entropy.hpp"
#include "riskrank/errors.hpp"
#include "riskrank/fixtures.hpp"
#include "riskrank/forecast.hpp"
#include "riskrank/graph.hpp"
#include "riskrank/ifn.hpp"
#include "riskrank/preprocess.hpp"
#include "riskrank/report.hpp"
#include "riskrank/scenario.hpp"
#include "riskrank/stats.hpp"
