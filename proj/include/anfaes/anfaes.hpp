#pragma once

#include "anfaes/aes_equations.hpp"
#include "anfaes/aes_reference.hpp"
#include "anfaes/anf.hpp"
#include "anfaes/boolfn.hpp"
#include "anfaes/errors.hpp"
#include "anfaes/monomial.hpp"
#include "anfaes/serial.hpp"
#include "anfaes/system.hpp"
#include "anfaes/truth_table.hpp"
