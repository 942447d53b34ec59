#pragma once

#include "fastarma/acvf.hpp"
#include "fastarma/ar_fit.hpp"
#include "fastarma/ar_likelihood.hpp"
#include "fastarma/arma_approx.hpp"
#include "fastarma/champernowne.hpp"
#include "fastarma/estimators.hpp"
#include "fastarma/exact_mle.hpp"
#include "fastarma/flops.hpp"
#include "fastarma/mean_mle.hpp"
#include "fastarma/optimize.hpp"
#include "fastarma/param_transform.hpp"
#include "fastarma/types.hpp"
