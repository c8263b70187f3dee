/*
 * Copyright 2026 The wmp Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <gtest/gtest.h>

#include <initializer_list>
#include <string>

#include "wmp/wmp.hpp"

namespace wmp::test {

using testkit::fixture;

/// Set of the named states of g.
inline StateSet states(const GameStructure& g, std::initializer_list<const char*> ids) {
    StateSet s(g.num_states());
    for (const char* id : ids) s.insert(g.require(id));
    return s;
}

inline std::string show(const GameStructure& g, const StateSet& s) { return "{" + format_states(g, s) + "}"; }

}  // namespace wmp::test

#define EXPECT_STATES(g, actual, ...) \
    EXPECT_EQ(::wmp::test::show(g, actual), ::wmp::test::show(g, ::wmp::test::states(g, {__VA_ARGS__})))
