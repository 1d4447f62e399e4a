// Copyright 2026 The superlind Authors
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

#include "superlind/error.hpp"

namespace superlind {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ParameterDomain: return "parameter-domain";
        case ErrorKind::Degeneracy: return "degeneracy";
        case ErrorKind::GridTooCoarse: return "grid-too-coarse";
        case ErrorKind::OrderCap: return "order-cap";
        case ErrorKind::OutOfGrid: return "out-of-grid";
        case ErrorKind::StateIntegrity: return "state-integrity";
        case ErrorKind::Positivity: return "positivity-violation";
        case ErrorKind::Stiffness: return "stiffness";
        case ErrorKind::Dimension: return "dimension";
        case ErrorKind::Usage: return "usage";
        case ErrorKind::Validation: return "validation";
        case ErrorKind::Io: return "io";
    }
    return "unknown";
}

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Usage: return 2;
        case ErrorKind::Validation: return 3;
        case ErrorKind::ParameterDomain: return 4;
        case ErrorKind::Io: return 5;
        case ErrorKind::Degeneracy:
        case ErrorKind::GridTooCoarse:
        case ErrorKind::OrderCap:
        case ErrorKind::OutOfGrid:
        case ErrorKind::Dimension: return 6;
        case ErrorKind::StateIntegrity:
        case ErrorKind::Positivity:
        case ErrorKind::Stiffness: return 7;
    }
    return 1;
}

} // namespace superlind
