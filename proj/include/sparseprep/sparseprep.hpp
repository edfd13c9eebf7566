// Copyright 2026 The sparseprep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "sparseprep/bench.hpp"
#include "sparseprep/bitstring.hpp"
#include "sparseprep/core.hpp"
#include "sparseprep/dense_prep.hpp"
#include "sparseprep/gate_count.hpp"
#include "sparseprep/io.hpp"
#include "sparseprep/mcx.hpp"
#include "sparseprep/perm_synth.hpp"
#include "sparseprep/permutation.hpp"
#include "sparseprep/simulator.hpp"
#include "sparseprep/sqsp.hpp"
#include "sparseprep/sqsp_ancilla.hpp"
#include "sparseprep/unary_prep.hpp"
#include "sparseprep/unary_to_binary.hpp"
