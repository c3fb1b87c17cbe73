#pragma once

#include "bench.hpp"
#include "bounds.hpp"
#include "decoding.hpp"
#include "field.hpp"
#include "greedy.hpp"
#include "instance.hpp"
#include "io.hpp"
#include "matrix.hpp"
#include "oracle.hpp"
