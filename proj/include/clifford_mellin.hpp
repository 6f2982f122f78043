#pragma once

#include "clifford_mellin/algebra.hpp"
#include "clifford_mellin/cfmt.hpp"
#include "clifford_mellin/config.hpp"
#include "clifford_mellin/errors.hpp"
#include "clifford_mellin/imaging.hpp"
#include "clifford_mellin/roots.hpp"
#include "clifford_mellin/signal.hpp"
#include "clifford_mellin/split.hpp"
#include "clifford_mellin/theorems.hpp"
#include "clifford_mellin/verify.hpp"
