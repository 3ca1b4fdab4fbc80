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
#include <iosfwd>
#include <vector>

#include "mtcc/channel.hpp"
#include "mtcc/content.hpp"
#include "mtcc/gf.hpp"
#include "mtcc/rng.hpp"
#include "mtcc/subsets.hpp"

namespace mtcc {

// Multicast delivery over the linear network, multicast levels alpha = K..1.
//
// At level alpha the scheduler visits every user set T with
// |T| = min(alpha + L - 1, K) in ascending mask order. Within one T, every
// size-alpha subset U of T contributes a random linear combination G(U) of one
// fresh chunk ("mini-file") per member r of U, taken from the piece of r's
// demanded file cached by exactly U \ {r}. G(U) rides on a beamforming vector
// psi that is zero-forced at the users T \ U, so each transmission serves all
// alpha-subsets of T simultaneously. The combination is repeated omega =
// C(|T|-1, alpha-1) times with fresh coefficients, which is exactly the number
// of equations each member of T needs to separate its own chunks.
//
// A piece at level alpha is consumed by C(K - alpha, |T| - alpha) different
// T's; it is split into that many chunks by ceiling division, consumed in
// schedule order. Chunks inside one (T, omega-repetition) are zero-padded to
// the longest contributing chunk, so a block occupies omega * block_len slots.

// One chunk reference: which piece, and which slice of it. piece < 0 marks an
// absent (empty) piece.
struct ChunkRef {
  int piece = -1;
  int offset = 0;
  int length = 0;
};

struct ScheduleBlock {
  int alpha = 0;
  UserMask t_mask = 0;
  int omega = 0;
  int block_len = 0;
  std::vector<UserMask> u_masks;               // ascending mask order
  std::vector<std::vector<ChunkRef>> chunks;   // per U, per member (ascending user)
};

struct TransmissionSchedule {
  std::vector<ScheduleBlock> blocks;
  std::vector<gf::Vec> slots;  // each of length L
  std::uint64_t coefficient_seed = 0;
  LinearNetwork net;           // effective network (after any resampling)
  int resample_events = 0;

  long long total_slots() const { return static_cast<long long>(slots.size()); }
};

struct BlockLength {
  int alpha = 0;
  UserMask t_mask = 0;
  int omega = 0;
  int block_len = 0;
};

struct DeliveryReport {
  long long coding_delay_slots = 0;
  std::vector<BlockLength> blocks;
  int resample_events = 0;
};

// Internal signal that a sampled network put some served user orthogonal to
// its beamforming vector; the scheduler reacts by resampling the network.
struct GenericPositionFailure : std::runtime_error {
  GenericPositionFailure() : std::runtime_error("network row orthogonal to beamforming vector") {}
};

// Beamforming vector for group U inside T: h_k . psi == 0 for k in T \ U and
// h_k . psi != 0 for k in U. Deterministic given the network. Throws
// GenericPositionFailure when the sampled network cannot satisfy the nonzero
// conditions for this pair.
gf::Vec design_zf_vector(const gf::Field& f, const LinearNetwork& net, UserMask t_mask, UserMask u_mask);

// Builds the complete schedule and the transmit slots. The passed network is
// the first candidate; non-generic draws are replaced via fresh seeds (count
// reported in the result) so callers always get a schedule that satisfies the
// zero-forcing conditions.
TransmissionSchedule schedule_delivery(const gf::Field& f, const PieceTable& table,
                                       const FileLibrary& lib, const LinearNetwork& net,
                                       std::uint64_t coefficient_seed);

DeliveryReport coding_delay_of_schedule(const TransmissionSchedule& sched);

// Time-shared delivery for a two-group system: group A (users 0..split-1) is
// served first as its own subsystem, then group B. Both parts reuse the same
// coefficient seed; their block keys never collide across parts.
struct TdmaSchedule {
  std::vector<int> group_a;
  std::vector<int> group_b;
  TransmissionSchedule part_a;
  TransmissionSchedule part_b;

  long long total_slots() const { return part_a.total_slots() + part_b.total_slots(); }
};

TdmaSchedule schedule_tdma(const gf::Field& f, const CacheMap& cache, const DemandVector& demands,
                           const FileLibrary& lib, const LinearNetwork& net, int split,
                           std::uint64_t coefficient_seed);

// Debug dump: one JSON object per block, {"alpha":..,"T":[..],"omega":..,
// "blocklen":..}, users 0-based.
void dump_schedule_jsonl(const TransmissionSchedule& sched, std::ostream& os);

// Coefficient stream shared by scheduler and receivers: the combination
// coefficients of repetition w for group U inside T at level alpha are drawn
// from this state, one per member of U in ascending user order.
inline std::uint64_t phi_state(std::uint64_t coefficient_seed, int alpha, UserMask t_mask, int w,
                               UserMask u_mask) {
  std::uint64_t s = mix_seed(coefficient_seed, static_cast<std::uint64_t>(alpha));
  s = mix_seed(s, t_mask, static_cast<std::uint64_t>(w));
  return mix_seed(s, u_mask);
}

inline gf::Elem phi_next(const gf::Field& f, std::uint64_t& state) {
  return static_cast<gf::Elem>(splitmix64(state) & (f.order() - 1));
}

}  // namespace mtcc
