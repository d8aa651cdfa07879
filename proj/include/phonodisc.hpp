// Copyright 2026 The phonodisc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PHONODISC_PHONODISC_HPP
#define PHONODISC_PHONODISC_HPP

#include "phonodisc/align.hpp"
#include "phonodisc/builtin_features.hpp"
#include "phonodisc/channel.hpp"
#include "phonodisc/confusion.hpp"
#include "phonodisc/csv.hpp"
#include "phonodisc/discovery.hpp"
#include "phonodisc/error.hpp"
#include "phonodisc/io.hpp"
#include "phonodisc/ipa.hpp"
#include "phonodisc/unicode.hpp"

#endif  // PHONODISC_PHONODISC_HPP
