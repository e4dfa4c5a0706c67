// Copyright 2026 The tthpo Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tthpo/error.hpp"

namespace tthpo {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::InvalidArgument:
        return "InvalidArgument";
    case ErrorKind::DuplicateGridValue:
        return "DuplicateGridValue";
    case ErrorKind::IndexOutOfRange:
        return "IndexOutOfRange";
    case ErrorKind::RankDeficient:
        return "RankDeficient";
    case ErrorKind::RankExceedsAxis:
        return "RankExceedsAxis";
    case ErrorKind::ObjectiveFailure:
        return "ObjectiveFailure";
    case ErrorKind::DomainViolation:
        return "DomainViolation";
    case ErrorKind::WireOutOfRange:
        return "WireOutOfRange";
    case ErrorKind::ShapeMismatch:
        return "ShapeMismatch";
    case ErrorKind::SpecInvalid:
        return "SpecInvalid";
    case ErrorKind::NonFiniteLoss:
        return "NonFiniteLoss";
    case ErrorKind::ConfigInvalid:
        return "ConfigInvalid";
    case ErrorKind::MismatchedExperiments:
        return "MismatchedExperiments";
    case ErrorKind::IoError:
        return "IoError";
    case ErrorKind::Interrupted:
        return "Interrupted";
    }
    return "Unknown";
}

} // namespace tthpo
