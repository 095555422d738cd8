// Copyright 2026 The bithash Authors. Licensed under the Apache License, Version 2.0.
#pragma once

namespace bithash {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace bithash
