// SPDX-License-Identifier: Apache-2.0
//
// chanchart - channel charting toolkit for massive MIMO channels
// Copyright (C) 2026 the chanchart authors
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

#pragma once

#include "chanchart/array_geometry.hpp"
#include "chanchart/channel.hpp"
#include "chanchart/csv.hpp"
#include "chanchart/dataset_io.hpp"
#include "chanchart/distances.hpp"
#include "chanchart/eigensolve.hpp"
#include "chanchart/errors.hpp"
#include "chanchart/generator.hpp"
#include "chanchart/graph.hpp"
#include "chanchart/mds.hpp"
#include "chanchart/metrics.hpp"
#include "chanchart/parallel.hpp"
#include "chanchart/pca.hpp"
#include "chanchart/pipeline.hpp"
#include "chanchart/rng.hpp"
#include "chanchart/scenario.hpp"
#include "chanchart/svg.hpp"
#include "chanchart/text.hpp"
