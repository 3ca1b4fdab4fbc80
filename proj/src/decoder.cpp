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
#include "mtcc/decoder.hpp"

#include <cassert>
#include <stdexcept>
#include <unordered_map>

namespace mtcc {

DecodeResult decode_user(const gf::Field& f, int user, std::span<const gf::Elem> stream,
                         const CacheMap& cache, const FileLibrary& lib, const PieceTable& table,
                         const TransmissionSchedule& sched) {
  const int F = table.file_symbols();
  const DemandVector& demands = table.demands();
  const int demanded = demands[static_cast<std::size_t>(user)];

  DecodeResult res;
  res.file.assign(static_cast<std::size_t>(F), 0);
  std::vector<char> have(static_cast<std::size_t>(F), 0);

  // Locally cached part, read under the user's own cache index set.
  for (int j = 0; j < F; ++j) {
    if (cache.cached(user, demanded, j)) {
      res.file[static_cast<std::size_t>(j)] = lib.at(demanded, j);
      have[static_cast<std::size_t>(j)] = 1;
    }
  }

  // Beamforming vectors are recomputed from the public network; cache the
  // per-user gains by zero-forced set.
  std::unordered_map<UserMask, gf::Elem> gain_by_d;

  std::size_t off = 0;
  for (const ScheduleBlock& blk : sched.blocks) {
    const std::size_t blk_slots = static_cast<std::size_t>(blk.omega) * blk.block_len;
    if (((blk.t_mask >> user) & 1u) == 0 || blk.block_len == 0) {
      off += blk_slots;
      continue;
    }

    // Gains h_user . psi per group, zero for groups the user is forced out of.
    std::vector<gf::Elem> gains(blk.u_masks.size(), 0);
    std::vector<int> own_groups;
    for (std::size_t j = 0; j < blk.u_masks.size(); ++j) {
      const UserMask d_mask = blk.t_mask & ~blk.u_masks[j];
      if ((blk.u_masks[j] >> user & 1u) == 0) continue;  // zero-forced here
      auto it = gain_by_d.find(d_mask);
      if (it == gain_by_d.end()) {
        const gf::Vec psi = design_zf_vector(f, sched.net, blk.t_mask, blk.u_masks[j]);
        it = gain_by_d.emplace(d_mask, gf::dot(f, sched.net.row(user), psi)).first;
      }
      gains[j] = it->second;
      own_groups.push_back(static_cast<int>(j));
    }

    const int omega = blk.omega;
    if (static_cast<int>(own_groups.size()) != omega)
      throw std::logic_error("block repetition count does not match own-group count");
    ++res.attempted_blocks;

    // Residual stream after removing the contributions the user already holds.
    gf::Matrix rhs(omega, blk.block_len);
    gf::Matrix a(omega, omega);
    for (int w = 0; w < omega; ++w) {
      for (int pos = 0; pos < blk.block_len; ++pos) {
        rhs(w, pos) = stream[off + static_cast<std::size_t>(w) * blk.block_len + pos];
      }
      for (std::size_t j = 0; j < blk.u_masks.size(); ++j) {
        if ((blk.u_masks[j] >> user & 1u) == 0) continue;  // vanished via zero-forcing
        std::uint64_t state = phi_state(sched.coefficient_seed, blk.alpha, blk.t_mask, w, blk.u_masks[j]);
        const auto members = mask_members(blk.u_masks[j]);
        for (std::size_t mi = 0; mi < members.size(); ++mi) {
          const gf::Elem coef = phi_next(f, state);
          const ChunkRef& ref = blk.chunks[j][mi];
          if (members[mi] == user) {
            // Unknown column: coefficient times the user's gain.
            int col = 0;
            while (own_groups[static_cast<std::size_t>(col)] != static_cast<int>(j)) ++col;
            a(w, col) = f.mul(coef, gains[j]);
            continue;
          }
          if (ref.piece < 0 || ref.length == 0) continue;
          // Cached chunk of another served user: subtract its contribution.
          const Piece& piece = table.pieces()[static_cast<std::size_t>(ref.piece)];
          const int owner_file = demands[static_cast<std::size_t>(members[mi])];
          const gf::Elem scale = f.mul(coef, gains[j]);
          for (int pos = 0; pos < ref.length; ++pos) {
            const int sym = piece.symbols[static_cast<std::size_t>(ref.offset + pos)];
            assert(cache.cached(user, owner_file, sym));
            const gf::Elem v = lib.at(owner_file, sym);
            rhs(w, pos) = f.add(rhs(w, pos), f.mul(scale, v));
          }
        }
      }
    }

    const auto solved = gf::try_solve_many(f, a, rhs);
    if (!solved) {
      ++res.failed_blocks;
      off += blk_slots;
      continue;
    }

    for (int col = 0; col < omega; ++col) {
      const int j = own_groups[static_cast<std::size_t>(col)];
      const auto members = mask_members(blk.u_masks[static_cast<std::size_t>(j)]);
      int mi = 0;
      while (members[static_cast<std::size_t>(mi)] != user) ++mi;
      const ChunkRef& ref = blk.chunks[static_cast<std::size_t>(j)][static_cast<std::size_t>(mi)];
      if (ref.piece < 0) continue;
      const Piece& piece = table.pieces()[static_cast<std::size_t>(ref.piece)];
      for (int pos = 0; pos < ref.length; ++pos) {
        const int sym = piece.symbols[static_cast<std::size_t>(ref.offset + pos)];
        assert(!have[static_cast<std::size_t>(sym)]);
        res.file[static_cast<std::size_t>(sym)] = (*solved)(col, pos);
        have[static_cast<std::size_t>(sym)] = 1;
      }
    }
    off += blk_slots;
  }

  if (off != stream.size()) throw std::invalid_argument("stream length does not match schedule");

  res.complete = true;
  for (char h : have) {
    if (!h) {
      res.complete = false;
      break;
    }
  }
  return res;
}

VerifyReport verify_all(const gf::Field& f, const CacheMap& cache, const FileLibrary& lib,
                        const PieceTable& table, const TransmissionSchedule& sched) {
  VerifyReport rep;
  const auto streams = received_streams(f, sched.net, sched.slots);
  rep.user_ok.assign(static_cast<std::size_t>(table.users()), 0);
  rep.user_failed_blocks.assign(static_cast<std::size_t>(table.users()), 0);
  rep.all_ok = true;
  for (int k = 0; k < table.users(); ++k) {
    const DecodeResult r = decode_user(f, k, streams[static_cast<std::size_t>(k)], cache, lib, table, sched);
    rep.user_failed_blocks[static_cast<std::size_t>(k)] = r.failed_blocks;
    rep.failed_blocks += r.failed_blocks;
    rep.attempted_blocks += r.attempted_blocks;
    bool ok = r.complete;
    if (ok) {
      const auto truth = lib.file(table.demands()[static_cast<std::size_t>(k)]);
      for (int j = 0; j < table.file_symbols(); ++j) {
        if (r.file[static_cast<std::size_t>(j)] != truth[static_cast<std::size_t>(j)]) {
          ok = false;
          break;
        }
      }
    }
    rep.user_ok[static_cast<std::size_t>(k)] = ok ? 1 : 0;
    if (!ok) rep.all_ok = false;
  }
  return rep;
}

}  // namespace mtcc
