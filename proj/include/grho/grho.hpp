#pragma once

#include "grho/arrangement.hpp"
#include "grho/csv.hpp"
#include "grho/dataset.hpp"
#include "grho/errors.hpp"
#include "grho/grho_test.hpp"
#include "grho/imprecise_bounds.hpp"
#include "grho/kaplan_meier.hpp"
#include "grho/oracle.hpp"
#include "grho/risk_table.hpp"
#include "grho/swap_chain.hpp"
#include "grho/verify.hpp"
