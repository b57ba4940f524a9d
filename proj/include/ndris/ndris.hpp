// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The ndris Authors
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


#ifndef NDRIS_NDRIS_HPP_
#define NDRIS_NDRIS_HPP_

#include "ndris/channel.hpp"
#include "ndris/config.hpp"
#include "ndris/design.hpp"
#include "ndris/estimation.hpp"
#include "ndris/experiment.hpp"
#include "ndris/metrics.hpp"
#include "ndris/random.hpp"
#include "ndris/report_io.hpp"
#include "ndris/ris.hpp"
#include "ndris/types.hpp"

#endif  // NDRIS_NDRIS_HPP_
