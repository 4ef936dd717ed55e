#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "heraklit/module.hpp"
#include "heraklit/net.hpp"

namespace heraklit::gen {

/// Seed-reproducible generator of small modules and nets. Every module it
/// returns uses fresh instance tags, so any two results can be composed.
///
/// Modules: at most 12 nodes over two place labels (`p`, `q`) and two
/// transition labels (`t`, `u`); edges mostly respect the place/transition
/// partition; interfaces are random, possibly overlapping, subsets in random
/// order.
class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  static const Alphabet& alphabet();

  Module module(std::optional<std::string> name = std::nullopt);

  /// Random net without isolated elements.
  NetView net(std::size_t max_transitions = 15, std::size_t max_places = 20);

  std::uint64_t next_tag() { return next_tag_++; }
  std::mt19937_64& rng() { return rng_; }

 private:
  std::size_t uniform(std::size_t lo, std::size_t hi);  // inclusive
  bool chance(double p);

  std::mt19937_64 rng_;
  std::uint64_t next_tag_ = 1;
};

}  // namespace heraklit::gen
