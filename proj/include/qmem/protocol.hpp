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

#ifndef QMEM_PROTOCOL_HPP
#define QMEM_PROTOCOL_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qmem/profile.hpp"

namespace qmem {

enum class StageKind { qnd_single_pass_feedback, two_pass, four_pass };
enum class Direction { storage, retrieval };

inline const char* to_string(StageKind k) {
  switch (k) {
    case StageKind::qnd_single_pass_feedback: return "qnd_single_pass_feedback";
    case StageKind::two_pass: return "two_pass";
    case StageKind::four_pass: return "four_pass";
  }
  return "?";
}

inline int pass_count(StageKind k) {
  switch (k) {
    case StageKind::qnd_single_pass_feedback: return 1;
    case StageKind::two_pass: return 2;
    case StageKind::four_pass: return 4;
  }
  return 0;
}

/// One light pulse interacting with the ensemble. `squeezing` is ε ≥ 1: on a
/// storage stage it squeezes the initial atomic x_A, on a retrieval stage the
/// x quadrature of the incoming light in the target output mode.
struct Stage {
  StageKind kind;
  Direction role;
  CouplingProfile profile;
  double squeezing = 1.0;
  std::optional<double> feedback_gain;  // qnd stage only; defaults to 1/κ

  int passes() const { return pass_count(kind); }
};

struct ProtocolSpec {
  std::string name;
  std::vector<Stage> stages;
};

/// A storage stage followed by a retrieval stage; ε ≥ 1; measurement+feedback
/// only on storage.
inline void validate(const ProtocolSpec& spec) {
  if (spec.stages.size() != 2 || spec.stages[0].role != Direction::storage ||
      spec.stages[1].role != Direction::retrieval) {
    throw std::invalid_argument("protocol '" + spec.name + "' must be one storage stage followed by one retrieval stage");
  }
  for (const Stage& s : spec.stages) {
    if (!(s.squeezing >= 1.0)) {
      throw std::invalid_argument("protocol '" + spec.name + "': squeezing factor must be >= 1");
    }
    if (s.kind == StageKind::qnd_single_pass_feedback && s.role != Direction::storage) {
      throw std::invalid_argument("protocol '" + spec.name + "': measurement+feedback stage must be a storage stage");
    }
    if (s.feedback_gain && s.kind != StageKind::qnd_single_pass_feedback) {
      throw std::invalid_argument("protocol '" + spec.name + "': feedback gain given for a stage without feedback");
    }
  }
}

}  // namespace qmem

#endif  // QMEM_PROTOCOL_HPP
