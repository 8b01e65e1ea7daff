#pragma once

#include "nilcx/rational.hpp"
#include "nilcx/matrix.hpp"
#include "nilcx/poly.hpp"
#include "nilcx/liealg.hpp"
#include "nilcx/exterior.hpp"
#include "nilcx/structures.hpp"
#include "nilcx/spinor.hpp"
#include "nilcx/symbolic.hpp"
#include "nilcx/classify.hpp"
#include "nilcx/io.hpp"
