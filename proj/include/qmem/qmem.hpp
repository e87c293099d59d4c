// Copyright 2026 The qmem Authors
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

#ifndef QMEM_QMEM_HPP
#define QMEM_QMEM_HPP

// Conventions used throughout: ħ = 1, [x, p] = i, a = (x + ip)/√2, vacuum
// variance 1/2 per quadrature; quadrature vectors are ordered
// (x₁, p₁, x₂, p₂, …); stage durations are in units of the pulse length.

#include "qmem/cascade.hpp"
#include "qmem/channel.hpp"
#include "qmem/design.hpp"
#include "qmem/dynamics.hpp"
#include "qmem/errors.hpp"
#include "qmem/fidelity.hpp"
#include "qmem/grid.hpp"
#include "qmem/lossmodel.hpp"
#include "qmem/optimize.hpp"
#include "qmem/oracle.hpp"
#include "qmem/parallel.hpp"
#include "qmem/profile.hpp"
#include "qmem/protocol.hpp"
#include "qmem/protocols.hpp"
#include "qmem/qubit.hpp"
#include "qmem/symplectic.hpp"

#endif  // QMEM_QMEM_HPP
