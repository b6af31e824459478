// Writes a synthetic RGB corpus and RGB-D corpus for demos and smoke runs.
//   make_corpus <out_dir> [rgb_count] [rgbd_count] [seed]

#include <cstdlib>
#include <iostream>

#include "synthetic.hpp"

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: make_corpus <out_dir> [rgb_count] [rgbd_count] [seed]\n";
    return 2;
  }
  const std::filesystem::path out = argv[1];
  const int rgb = argc > 2 ? std::atoi(argv[2]) : 40;
  const int rgbd = argc > 3 ? std::atoi(argv[3]) : 20;
  const std::uint64_t seed = argc > 4 ? std::strtoull(argv[4], nullptr, 10) : 1;
  forge::testing::write_rgb_corpus(out / "rgb", rgb, seed);
  forge::testing::write_rgbd_corpus(out / "rgbd", rgbd, seed);
  std::cout << "wrote " << rgb << " rgb and " << rgbd << " rgbd images under " << out.string() << "\n";
  return 0;
}
