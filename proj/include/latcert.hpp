#pragma once

#include "latcert/rational.hpp"
#include "latcert/polynomial.hpp"
#include "latcert/interval.hpp"
#include "latcert/sign.hpp"
#include "latcert/gegenbauer.hpp"
#include "latcert/gf2code.hpp"
#include "latcert/lattice32.hpp"
#include "latcert/pair_kernel.hpp"
#include "latcert/sphercode.hpp"
#include "latcert/verification.hpp"
#include "latcert/lpcert.hpp"
#include "latcert/potential.hpp"
#include "latcert/energycert.hpp"
#include "latcert/json_io.hpp"
#include "latcert/regression.hpp"
