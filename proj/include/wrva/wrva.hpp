// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "automaton.hpp"
#include "bench.hpp"
#include "compile.hpp"
#include "determinize.hpp"
#include "emptiness.hpp"
#include "encoding.hpp"
#include "errors.hpp"
#include "formula.hpp"
#include "io.hpp"
#include "minimize.hpp"
#include "operations.hpp"
#include "parser.hpp"
#include "rational.hpp"
#include "rva.hpp"
#include "scc.hpp"
#include "symbol.hpp"
