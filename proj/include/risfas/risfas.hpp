// SPDX-License-Identifier: Apache-2.0
//
// ris-fas: outage analysis for RIS-aided fluid antenna receivers
// Copyright (C) 2026 The ris-fas authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef RISFAS_RISFAS_HPP
#define RISFAS_RISFAS_HPP

#include "channel_model.hpp"
#include "error.hpp"
#include "fas_geometry.hpp"
#include "gaussian_copula.hpp"
#include "metrics.hpp"
#include "monte_carlo.hpp"
#include "special_functions.hpp"
#include "sweep.hpp"

#endif
