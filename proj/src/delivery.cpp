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
#include "mtcc/delivery.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <ostream>
#include <set>
#include <unordered_map>

namespace mtcc {

namespace {

struct ZfEntry {
  gf::Vec psi;
  gf::Vec products;  // products[k] = h_k . psi for every user k
};

ZfEntry make_zf_entry(const gf::Field& f, const LinearNetwork& net, UserMask d_mask) {
  ZfEntry e;
  const int L = net.transmitters();
  const auto members = mask_members(d_mask);
  if (members.empty()) {
    e.psi.assign(static_cast<std::size_t>(L), 0);
    e.psi[0] = 1;
  } else {
    gf::Matrix m(static_cast<int>(members.size()), L);
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (int c = 0; c < L; ++c) m(static_cast<int>(i), c) = net.h(members[i], c);
    }
    e.psi = gf::null_space_vector(f, std::move(m));
  }
  e.products.resize(static_cast<std::size_t>(net.users()));
  for (int k = 0; k < net.users(); ++k) {
    e.products[static_cast<std::size_t>(k)] = gf::dot(f, net.row(k), e.psi);
  }
  return e;
}

// Every zero-forced set D that a delivery for this piece table will use:
// all subsets of [K] of size |T| - alpha, per nonempty level alpha.
std::set<int> zero_forced_sizes(const PieceTable& table, int L) {
  std::set<int> sizes;
  const int K = table.users();
  for (int alpha = 1; alpha <= K; ++alpha) {
    if (!table.level_nonempty(alpha)) continue;
    sizes.insert(std::min(alpha + L - 1, K) - alpha);
  }
  return sizes;
}

}  // namespace

gf::Vec design_zf_vector(const gf::Field& f, const LinearNetwork& net, UserMask t_mask, UserMask u_mask) {
  if ((u_mask & ~t_mask) != 0) throw std::invalid_argument("group must be inside multicast set");
  const ZfEntry e = make_zf_entry(f, net, t_mask & ~u_mask);
  for (int k : mask_members(u_mask)) {
    if (e.products[static_cast<std::size_t>(k)] == 0) throw GenericPositionFailure{};
  }
  return e.psi;
}

TransmissionSchedule schedule_delivery(const gf::Field& f, const PieceTable& table,
                                       const FileLibrary& lib, const LinearNetwork& net0,
                                       std::uint64_t coefficient_seed) {
  const int K = table.users();
  const int L = net0.transmitters();
  if (net0.users() != K) throw std::invalid_argument("network size must match user count");

  TransmissionSchedule sched;
  sched.coefficient_seed = coefficient_seed;
  sched.net = net0;

  const std::set<int> d_sizes = zero_forced_sizes(table, L);
  if (d_sizes.empty()) return sched;  // nothing to send

  // Reject non-generic network draws: every beamforming vector must keep a
  // nonzero gain towards every user it could serve.
  std::unordered_map<UserMask, ZfEntry> zf;
  const UserMask all = full_mask(K);
  for (int attempt = 0;; ++attempt) {
    if (attempt > 64) throw std::runtime_error("could not sample a generic network");
    if (attempt > 0) {
      sched.net = sample_network(K, L, f, mix_seed(net0.seed, static_cast<std::uint64_t>(attempt)));
      ++sched.resample_events;
    }
    zf.clear();
    bool ok = true;
    for (int ds : d_sizes) {
      for_each_subset_of_size(all, ds, [&](UserMask d) {
        if (!ok) return;
        ZfEntry e = make_zf_entry(f, sched.net, d);
        for (int k = 0; k < K && ok; ++k) {
          if ((d >> k & 1u) == 0 && e.products[static_cast<std::size_t>(k)] == 0) ok = false;
        }
        if (ok) zf.emplace(d, std::move(e));
      });
      if (!ok) break;
    }
    if (ok) break;
  }

  const DemandVector& demands = table.demands();
  std::unordered_map<int, int> cursor;  // piece index -> chunks consumed

  for (int alpha = K; alpha >= 1; --alpha) {
    if (!table.level_nonempty(alpha)) continue;
    const int st = std::min(alpha + L - 1, K);
    const long long cu = binom_ll(K - alpha, st - alpha);
    const long long omega = binom_ll(st - 1, alpha - 1);

    for_each_subset_of_size(all, st, [&](UserMask t_mask) {
      ScheduleBlock blk;
      blk.alpha = alpha;
      blk.t_mask = t_mask;
      blk.omega = static_cast<int>(omega);
      blk.block_len = 0;

      for_each_subset_of_size(t_mask, alpha, [&](UserMask u_mask) {
        std::vector<ChunkRef> refs;
        for (int r : mask_members(u_mask)) {
          const UserMask s_mask = u_mask & ~(UserMask{1} << r);
          const int idx = table.index_of(r, s_mask);
          ChunkRef ref;
          if (idx >= 0) {
            const int used = cursor[idx]++;
            const ChunkSpan span = chunk_span(table.pieces()[static_cast<std::size_t>(idx)].length(), cu, used);
            ref = {idx, span.offset, span.length};
            blk.block_len = std::max(blk.block_len, span.length);
          }
          refs.push_back(ref);
        }
        blk.u_masks.push_back(u_mask);
        blk.chunks.push_back(std::move(refs));
      });

      if (blk.block_len > 0) {
        // Per-group beamforming vectors, fetched once per block.
        std::vector<const gf::Vec*> psis(blk.u_masks.size());
        for (std::size_t j = 0; j < blk.u_masks.size(); ++j) {
          psis[j] = &zf.at(t_mask & ~blk.u_masks[j]).psi;
        }
        for (int w = 0; w < blk.omega; ++w) {
          // Fresh combination coefficients per repetition and group.
          std::vector<std::vector<gf::Elem>> coefs(blk.u_masks.size());
          for (std::size_t j = 0; j < blk.u_masks.size(); ++j) {
            std::uint64_t state = phi_state(coefficient_seed, alpha, t_mask, w, blk.u_masks[j]);
            coefs[j].resize(blk.chunks[j].size());
            for (auto& cf : coefs[j]) cf = phi_next(f, state);
          }
          for (int pos = 0; pos < blk.block_len; ++pos) {
            gf::Vec y(static_cast<std::size_t>(L), 0);
            for (std::size_t j = 0; j < blk.u_masks.size(); ++j) {
              gf::Elem g = 0;
              const auto members = mask_members(blk.u_masks[j]);
              for (std::size_t mi = 0; mi < members.size(); ++mi) {
                const ChunkRef& ref = blk.chunks[j][mi];
                if (ref.piece < 0 || pos >= ref.length) continue;  // absent or zero padding
                const Piece& piece = table.pieces()[static_cast<std::size_t>(ref.piece)];
                const gf::Elem v = lib.at(demands[static_cast<std::size_t>(members[mi])],
                                          piece.symbols[static_cast<std::size_t>(ref.offset + pos)]);
                g = f.add(g, f.mul(coefs[j][mi], v));
              }
              if (g != 0) {
                const gf::Vec& psi = *psis[j];
                for (int l = 0; l < L; ++l) y[static_cast<std::size_t>(l)] =
                    f.add(y[static_cast<std::size_t>(l)], f.mul(g, psi[static_cast<std::size_t>(l)]));
              }
            }
            sched.slots.push_back(std::move(y));
          }
        }
      }
      sched.blocks.push_back(std::move(blk));
    });
  }

  // Every piece must be fully consumed: as many chunks as multicast sets
  // containing it, covering all its symbols.
  for (const auto& [idx, used] : cursor) {
    const Piece& p = table.pieces()[static_cast<std::size_t>(idx)];
    const int alpha = mask_size(p.cached_by) + 1;
    const int st = std::min(alpha + L - 1, K);
    assert(used == binom_ll(K - alpha, st - alpha));
    (void)p;
    (void)used;
    (void)st;
  }

  return sched;
}

DeliveryReport coding_delay_of_schedule(const TransmissionSchedule& sched) {
  DeliveryReport rep;
  rep.resample_events = sched.resample_events;
  long long expected = 0;
  for (const ScheduleBlock& blk : sched.blocks) {
    rep.blocks.push_back({blk.alpha, blk.t_mask, blk.omega, blk.block_len});
    expected += static_cast<long long>(blk.omega) * blk.block_len;
  }
  rep.coding_delay_slots = sched.total_slots();
  if (expected != rep.coding_delay_slots)
    throw std::logic_error("schedule slot count does not match its block lengths");
  return rep;
}

TdmaSchedule schedule_tdma(const gf::Field& f, const CacheMap& cache, const DemandVector& demands,
                           const FileLibrary& lib, const LinearNetwork& net, int split,
                           std::uint64_t coefficient_seed) {
  if (split < 0 || split > cache.users()) throw std::invalid_argument("group split out of range");
  TdmaSchedule out;
  for (int k = 0; k < split; ++k) out.group_a.push_back(k);
  for (int k = split; k < cache.users(); ++k) out.group_b.push_back(k);

  const auto run_part = [&](const std::vector<int>& group) {
    TransmissionSchedule part;
    if (group.empty()) return part;
    const CacheMap sub_cache = cache.restrict_users(group);
    DemandVector sub_demands;
    for (int u : group) sub_demands.push_back(demands[static_cast<std::size_t>(u)]);
    const PieceTable sub_table = PieceTable::build(sub_cache, sub_demands);
    const LinearNetwork sub_net = restrict_rows(net, group);
    return schedule_delivery(f, sub_table, lib, sub_net, coefficient_seed);
  };

  out.part_a = run_part(out.group_a);
  out.part_b = run_part(out.group_b);
  return out;
}

void dump_schedule_jsonl(const TransmissionSchedule& sched, std::ostream& os) {
  for (const ScheduleBlock& blk : sched.blocks) {
    os << "{\"alpha\":" << blk.alpha << ",\"T\":[";
    bool first = true;
    for (int u : mask_members(blk.t_mask)) {
      if (!first) os << ',';
      os << u;
      first = false;
    }
    os << "],\"omega\":" << blk.omega << ",\"blocklen\":" << blk.block_len << "}\n";
  }
}

}  // namespace mtcc
