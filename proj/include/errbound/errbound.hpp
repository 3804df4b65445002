#pragma once

#include "errbound/classic_bounds.hpp"
#include "errbound/common.hpp"
#include "errbound/distributions.hpp"
#include "errbound/expectation.hpp"
#include "errbound/holder_bounds.hpp"
#include "errbound/hyp2f1.hpp"
#include "errbound/model.hpp"
#include "errbound/problem_spec.hpp"
#include "errbound/quadrature.hpp"
#include "errbound/zzlb.hpp"
