#pragma once

// Umbrella header for the whole library.

#include "chrestenson/counterexample.hpp"
#include "chrestenson/errors.hpp"
#include "chrestenson/greedy.hpp"
#include "chrestenson/kernels.hpp"
#include "chrestenson/radix.hpp"
#include "chrestenson/serialize.hpp"
#include "chrestenson/summation.hpp"
#include "chrestenson/transform.hpp"
#include "chrestenson/walsh.hpp"
