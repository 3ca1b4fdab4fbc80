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
#include "mtcc/channel.hpp"

#include <stdexcept>

#include "mtcc/rng.hpp"

namespace mtcc {

LinearNetwork sample_network(int users, int transmitters, const gf::Field& f, std::uint64_t seed) {
  if (users < 1 || transmitters < 1) throw std::invalid_argument("network needs users and transmitters >= 1");
  LinearNetwork net;
  net.seed = seed;
  net.h = gf::Matrix(users, transmitters);
  std::mt19937_64 gen(seed);
  const std::uint64_t mask = f.order() - 1;
  for (int r = 0; r < users; ++r) {
    for (int c = 0; c < transmitters; ++c) net.h(r, c) = static_cast<gf::Elem>(gen() & mask);
  }
  return net;
}

gf::Vec transmit_slot(const gf::Field& f, const LinearNetwork& net, std::span<const gf::Elem> s) {
  if (static_cast<int>(s.size()) != net.transmitters())
    throw std::invalid_argument("transmit vector length must equal transmitter count");
  return gf::mat_vec(f, net.h, s);
}

std::vector<gf::Vec> received_streams(const gf::Field& f, const LinearNetwork& net,
                                      const std::vector<gf::Vec>& slots) {
  std::vector<gf::Vec> out(static_cast<std::size_t>(net.users()));
  for (auto& stream : out) stream.reserve(slots.size());
  for (const gf::Vec& s : slots) {
    const gf::Vec r = transmit_slot(f, net, s);
    for (int k = 0; k < net.users(); ++k) out[static_cast<std::size_t>(k)].push_back(r[k]);
  }
  return out;
}

LinearNetwork restrict_rows(const LinearNetwork& net, const std::vector<int>& user_ids) {
  LinearNetwork out;
  out.seed = net.seed;
  out.h = gf::Matrix(static_cast<int>(user_ids.size()), net.transmitters());
  for (std::size_t i = 0; i < user_ids.size(); ++i) {
    for (int c = 0; c < net.transmitters(); ++c) {
      out.h(static_cast<int>(i), c) = net.h(user_ids[i], c);
    }
  }
  return out;
}

}  // namespace mtcc
