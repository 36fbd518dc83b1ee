#pragma once

#include "stefan/error.hpp"
#include "stefan/special_functions.hpp"
#include "stefan/kummer.hpp"
#include "stefan/problem.hpp"
#include "stefan/model.hpp"
#include "stefan/solver.hpp"
#include "stefan/solution.hpp"
#include "stefan/oracle/closed_forms.hpp"
#include "stefan/oracle/shooting.hpp"
#include "stefan/oracle/verify.hpp"
