// Copyright 2026 The purity-bounds Authors.
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

#include "purity_bounds/bounds.hpp"
#include "purity_bounds/density.hpp"
#include "purity_bounds/eigen.hpp"
#include "purity_bounds/entropy.hpp"
#include "purity_bounds/error.hpp"
#include "purity_bounds/matrix.hpp"
#include "purity_bounds/measurement.hpp"
#include "purity_bounds/random.hpp"
#include "purity_bounds/sampling.hpp"
#include "purity_bounds/state_io.hpp"
