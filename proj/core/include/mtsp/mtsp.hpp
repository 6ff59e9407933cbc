#pragma once

#include "mtsp/assignment.hpp"
#include "mtsp/decomposition.hpp"
#include "mtsp/document.hpp"
#include "mtsp/errors.hpp"
#include "mtsp/exact_matrix.hpp"
#include "mtsp/instance.hpp"
#include "mtsp/pipeline.hpp"
#include "mtsp/rational.hpp"
#include "mtsp/report.hpp"
#include "mtsp/router.hpp"
