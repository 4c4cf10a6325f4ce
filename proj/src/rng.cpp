#include "secnet/rng.hpp"

namespace secnet {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

long Rng::poisson(double mean) {
  // Inversion by multiplication, chunked so exp(-mean) never underflows.
  long count = 0;
  while (mean > 0.0) {
    const double block = mean > 500.0 ? 500.0 : mean;
    mean -= block;
    const double limit = std::exp(-block);
    double prod = uniform01();
    while (prod > limit) {
      ++count;
      prod *= uniform01();
    }
  }
  return count;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                          std::uint64_t substream) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ (stream + 0x632be59bd9b4e019ULL));
  h = splitmix64(h ^ (substream + 0x9e3779b97f4a7c15ULL));
  return h;
}

}  // namespace secnet
