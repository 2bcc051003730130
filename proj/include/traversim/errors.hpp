// Copyright 2026 The traversim Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace traversim
{

/// Base class of every error thrown by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

#define TRAVERSIM_DEFINE_ERROR(Name) \
  class Name : public Error          \
  {                                  \
  public:                            \
    using Error::Error;              \
  }

TRAVERSIM_DEFINE_ERROR(InvalidParams);
TRAVERSIM_DEFINE_ERROR(NegativeBase);
TRAVERSIM_DEFINE_ERROR(OutOfBounds);
TRAVERSIM_DEFINE_ERROR(InvalidConfig);
TRAVERSIM_DEFINE_ERROR(InvalidRatios);
TRAVERSIM_DEFINE_ERROR(LengthMismatch);
TRAVERSIM_DEFINE_ERROR(ParseError);
TRAVERSIM_DEFINE_ERROR(NonSquareGrid);
TRAVERSIM_DEFINE_ERROR(FormatError);
TRAVERSIM_DEFINE_ERROR(IoError);

#undef TRAVERSIM_DEFINE_ERROR

}  // namespace traversim
