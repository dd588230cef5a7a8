#pragma once

#include "nambu/cli.hpp"
#include "nambu/enumeration.hpp"
#include "nambu/filippov.hpp"
#include "nambu/multivector.hpp"
#include "nambu/parse.hpp"
#include "nambu/polynomial.hpp"
#include "nambu/rational.hpp"
#include "nambu/schouten.hpp"
#include "nambu/search.hpp"
#include "nambu/verdict.hpp"
#include "nambu/verify.hpp"
#include "nambu/version.hpp"
