#pragma once

#include "polyclass/bench.hpp"
#include "polyclass/canon.hpp"
#include "polyclass/digest.hpp"
#include "polyclass/error.hpp"
#include "polyclass/generators.hpp"
#include "polyclass/graph.hpp"
#include "polyclass/oracle.hpp"
#include "polyclass/poly.hpp"
#include "polyclass/store.hpp"
#include "polyclass/version.hpp"
