// Copyright 2026 The bellcompat Authors
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

#pragma once

#include "bellcompat/chsh.hpp"
#include "bellcompat/compat.hpp"
#include "bellcompat/entopt.hpp"
#include "bellcompat/error.hpp"
#include "bellcompat/measurement.hpp"
#include "bellcompat/nelder_mead.hpp"
#include "bellcompat/qmat.hpp"
#include "bellcompat/verify.hpp"
