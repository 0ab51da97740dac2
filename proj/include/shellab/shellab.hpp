#pragma once

#include "analysis.hpp"
#include "experiment.hpp"
#include "increments.hpp"
#include "io.hpp"
#include "networks.hpp"
#include "permutation.hpp"
#include "shellsort.hpp"
#include "trial.hpp"
