#pragma once

#include "qfilter/channels.hpp"
#include "qfilter/errors.hpp"
#include "qfilter/experiments.hpp"
#include "qfilter/figures.hpp"
#include "qfilter/linalg.hpp"
#include "qfilter/measures.hpp"
#include "qfilter/report.hpp"
#include "qfilter/states.hpp"
