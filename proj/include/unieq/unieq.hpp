// Copyright 2026 The unieq Authors
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

#include "unieq/brute.hpp"
#include "unieq/closure.hpp"
#include "unieq/dyn_matrix.hpp"
#include "unieq/engines.hpp"
#include "unieq/fastpath.hpp"
#include "unieq/gadgets.hpp"
#include "unieq/gaussian_rational.hpp"
#include "unieq/instances.hpp"
#include "unieq/matrix.hpp"
#include "unieq/span_basis.hpp"
#include "unieq/verdict.hpp"
#include "unieq/words.hpp"
