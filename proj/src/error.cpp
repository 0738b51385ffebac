// SPDX-License-Identifier: Apache-2.0
//
// skypattern: combined UAV / ground-station radiation pattern toolkit
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


#include "skypattern/error.hpp"

namespace skypattern
{

std::string_view error_code_name(ErrorCode code) noexcept
{
    switch (code)
    {
    case ErrorCode::ZeroDistance: return "ZeroDistance";
    case ErrorCode::OrientationOutOfScope: return "OrientationOutOfScope";
    case ErrorCode::NonPositiveInput: return "NonPositiveInput";
    case ErrorCode::IncompleteGrid: return "IncompleteGrid";
    case ErrorCode::InvalidBinWidth: return "InvalidBinWidth";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::GridShapeMismatch: return "GridShapeMismatch";
    case ErrorCode::MissingHeader: return "MissingHeader";
    case ErrorCode::EmptyFile: return "EmptyFile";
    case ErrorCode::MissingField: return "MissingField";
    case ErrorCode::ValueOutOfRange: return "ValueOutOfRange";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::DegenerateTrajectory: return "DegenerateTrajectory";
    case ErrorCode::EmptySamples: return "EmptySamples";
    case ErrorCode::MismatchedTestSets: return "MismatchedTestSets";
    case ErrorCode::NoAcceptedSamples: return "NoAcceptedSamples";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

} // namespace skypattern
