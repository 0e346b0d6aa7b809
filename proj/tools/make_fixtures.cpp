// Writes the synthetic test images shipped under tests/data.

#include <cstdio>
#include <exception>
#include <filesystem>

#include "admm/io.hpp"
#include "admm/pipeline.hpp"

int main(int argc, char** argv) {
  const std::filesystem::path dir = argc > 1 ? argv[1] : "tests/data";
  try {
    std::filesystem::create_directories(dir);
    admm::write_pgm(dir / "fixture64.pgm", admm::make_test_scene(64, 64, 11));
    admm::write_pgm(dir / "fixture128.pgm", admm::make_test_scene(128, 128, 5));
    admm::write_pgm(dir / "fixture256.pgm", admm::make_test_scene(256, 256, 3));
  } catch (const std::exception& e) {
    std::fprintf(stderr, "make-fixtures: %s\n", e.what());
    return 2;
  }
  return 0;
}
