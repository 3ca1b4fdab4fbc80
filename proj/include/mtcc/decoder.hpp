/*
 * Copyright 2026 the mtccsim authors
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

#include <span>
#include <vector>

#include "mtcc/channel.hpp"
#include "mtcc/content.hpp"
#include "mtcc/delivery.hpp"

namespace mtcc {

struct DecodeResult {
  std::vector<gf::Elem> file;  // reconstructed demanded file, F symbols
  int attempted_blocks = 0;
  int failed_blocks = 0;       // singular separation systems, counted not retried
  bool complete = false;       // every symbol either cached or recovered
};

// Reconstructs user k's demanded file from its received stream. The user
// knows: its own cached symbol values (read from the library strictly under
// its cache index set), the public cache index sets / piece structure, the
// schedule block layout, the coefficient seed and the network. Per block the
// zero-forced groups vanish from the stream, the cached chunks of the other
// served users are subtracted, and the remaining omega x omega system in the
// user's own chunks is solved; a singular system is counted as a failed block
// and its chunks stay missing.
DecodeResult decode_user(const gf::Field& f, int user, std::span<const gf::Elem> stream,
                         const CacheMap& cache, const FileLibrary& lib, const PieceTable& table,
                         const TransmissionSchedule& sched);

struct VerifyReport {
  std::vector<char> user_ok;
  std::vector<int> user_failed_blocks;
  long long failed_blocks = 0;
  long long attempted_blocks = 0;
  bool all_ok = false;

  // Correct up to counted failures: every user whose blocks all separated
  // cleanly reconstructed its file exactly.
  bool ok_modulo_failures() const {
    for (std::size_t k = 0; k < user_ok.size(); ++k) {
      if (!user_ok[k] && user_failed_blocks[k] == 0) return false;
    }
    return true;
  }
};

// Decodes every user of a schedule and compares against the library.
VerifyReport verify_all(const gf::Field& f, const CacheMap& cache, const FileLibrary& lib,
                        const PieceTable& table, const TransmissionSchedule& sched);

}  // namespace mtcc
