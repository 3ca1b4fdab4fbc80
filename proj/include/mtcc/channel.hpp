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

#include <cstdint>
#include <span>
#include <vector>

#include "mtcc/content.hpp"
#include "mtcc/gf.hpp"

namespace mtcc {

// Static linear network: user k receives h_k . s(t) where s(t) is the length-L
// transmit vector of slot t. h is users x transmitters with i.i.d. uniform
// entries. The matrix stays fixed for a whole delivery; degenerate draws are
// rejected by the scheduler (resampled and counted), mirroring the generic
// channel assumption.
struct LinearNetwork {
  gf::Matrix h;
  std::uint64_t seed = 0;

  int users() const { return h.rows; }
  int transmitters() const { return h.cols; }

  std::span<const gf::Elem> row(int user) const {
    return {h.a.data() + static_cast<std::size_t>(user) * h.cols, static_cast<std::size_t>(h.cols)};
  }
};

LinearNetwork sample_network(int users, int transmitters, const gf::Field& f, std::uint64_t seed);

// Received symbols of every user for one transmit vector.
gf::Vec transmit_slot(const gf::Field& f, const LinearNetwork& net, std::span<const gf::Elem> s);

// Full receive matrix: one stream (length = slot count) per user.
std::vector<gf::Vec> received_streams(const gf::Field& f, const LinearNetwork& net,
                                      const std::vector<gf::Vec>& slots);

// Row restriction for running a user group as its own subsystem.
LinearNetwork restrict_rows(const LinearNetwork& net, const std::vector<int>& user_ids);

}  // namespace mtcc
