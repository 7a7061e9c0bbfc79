// Copyright 2026 The dpcp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "dpcp/bitvec.hpp"
#include "dpcp/config.hpp"
#include "dpcp/errors.hpp"
#include "dpcp/exact.hpp"
#include "dpcp/generate.hpp"
#include "dpcp/gf2.hpp"
#include "dpcp/graph.hpp"
#include "dpcp/harness.hpp"
#include "dpcp/io.hpp"
#include "dpcp/lcp.hpp"
#include "dpcp/protocols.hpp"
#include "dpcp/prover.hpp"
#include "dpcp/random.hpp"
#include "dpcp/rational.hpp"
