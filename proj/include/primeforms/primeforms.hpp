#pragma once

// Umbrella header.

#include "primeforms/arith.hpp"
#include "primeforms/errors.hpp"
#include "primeforms/forms.hpp"
#include "primeforms/harness.hpp"
#include "primeforms/report.hpp"
#include "primeforms/rules.hpp"
#include "primeforms/sieve.hpp"
#include "primeforms/trinity.hpp"
