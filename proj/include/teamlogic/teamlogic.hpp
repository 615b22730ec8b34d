#pragma once

#include "teamlogic/errors.hpp"
#include "teamlogic/evaluate.hpp"
#include "teamlogic/formula.hpp"
#include "teamlogic/fragment.hpp"
#include "teamlogic/parser.hpp"
#include "teamlogic/qbf.hpp"
#include "teamlogic/solvers.hpp"
#include "teamlogic/team.hpp"
#include "teamlogic/transforms.hpp"
