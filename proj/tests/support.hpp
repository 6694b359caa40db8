// Copyright 2026 The seqdep Authors. All Rights Reserved.
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

#include <string>

#include <gtest/gtest.h>

#include "seqdep/esd.hpp"

namespace seqdep::fixture {

inline std::string data_path(const std::string& rel) {
  return std::string(SEQDEP_DATA_DIR) + "/" + rel;
}

inline Document load(const std::string& rel) {
  const std::string path = data_path(rel);
  ParseResult r = parse_document(read_text_file(path), path);
  if (!r.ok()) {
    ADD_FAILURE() << rel << ": " << r.errors.front().message();
    return {};
  }
  return std::move(*r.document);
}

inline Document demo() { return load("demo.esd"); }

}  // namespace seqdep::fixture
