/*
   Copyright 2026 The uq-adjoint Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef UQADJOINT_ERROR_HPP
#define UQADJOINT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace uqa {

// Values match uqa_status in the C header.
enum class ErrorCode {
    InvalidL = 1,
    InvalidArgument = 2,
    DivisionByZero = 3,
    ConstructionFailed = 4,
    UnidentifiedSummand = 5,
    Inconclusive = 6,
    SignInconclusive = 7,
    NegativeMultiplicity = 8,
    Internal = 9,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace uqa

#endif  // UQADJOINT_ERROR_HPP
