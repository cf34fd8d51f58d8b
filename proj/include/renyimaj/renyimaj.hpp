#pragma once

#include "renyimaj/errors.hpp"
#include "renyimaj/numeric.hpp"
#include "renyimaj/pmf.hpp"
#include "renyimaj/renyi.hpp"
#include "renyimaj/extremal.hpp"
#include "renyimaj/aggregate.hpp"
#include "renyimaj/type_classes.hpp"
#include "renyimaj/guess.hpp"
#include "renyimaj/campbell.hpp"
#include "renyimaj/parallel.hpp"
#include "renyimaj/io.hpp"
#include "renyimaj/figures.hpp"
