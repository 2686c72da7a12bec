#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "test_support.hpp"
#include "vpscale/image_io.hpp"
#include "vpscale/resize.hpp"

using namespace vpscale;
using namespace vpscale::testing;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("vpscale_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path operator/(const std::string& name) const { return path / name; }
};

int run(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string("\"") + VPSCALE_CLI + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
#ifdef WEXITSTATUS
  return WEXITSTATUS(status);
#else
  return status;
#endif
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

int count_lines(const fs::path& p, const std::string& prefix) {
  std::ifstream in(p);
  int n = 0;
  for (std::string line; std::getline(in, line);) n += line.rfind(prefix, 0) == 0;
  return n;
}

}  // namespace

TEST_CASE("cli: down, up, size and supervised") {
  TempDir dir;
  std::mt19937 rng(1);
  const auto img = random_image(rng, 9, 9);
  save_image(img, dir / "in.png");
  const auto log = dir / "log.txt";

  REQUIRE(run("down " + q(dir / "in.png") + " " + q(dir / "small.png") + " --scale 3", log) == 0);
  CHECK(load_image(dir / "small.png") == gather_oracle(img, 3));

  REQUIRE(run("up " + q(dir / "in.png") + " " + q(dir / "big.ppm") + " --scale 2 --theta 0.25", log) == 0);
  CHECK(load_image(dir / "big.ppm") == resize_image(img, ResizeSpec{18, 18, 0.25}));

  REQUIRE(run("size " + q(dir / "in.png") + " " + q(dir / "s.png") + " --height 5 --width 7 --prefilter gaussian", log) == 0);
  CHECK(load_image(dir / "s.png").width() == 7);

  save_image(random_image(rng, 14, 14), dir / "target.png");
  REQUIRE(run("supervised " + q(dir / "in.png") + " " + q(dir / "best.png") + " --target " + q(dir / "target.png") +
                  " --csv " + q(dir / "sweep.csv"),
              log) == 0);
  CHECK(count_lines(dir / "sweep.csv", "candidate,") == 19);
  CHECK(count_lines(dir / "sweep.csv", "best,") == 1);
}

TEST_CASE("cli: basis dump and harness") {
  TempDir dir;
  const auto log = dir / "log.txt";
  REQUIRE(run("basis-dump --n 5 --m 4 --at-nodes --csv " + q(dir / "b.csv"), log) == 0);
  CHECK(count_lines(dir / "b.csv", "") == 6);

  std::mt19937 rng(2);
  fs::create_directories(dir / "data");
  save_image(random_image(rng, 8, 8), dir / "data" / "x.png");
  REQUIRE(run("harness " + q(dir / "data") + " --factors 3 --csv " + q(dir / "h.csv") + " --no-timing", log) == 0);
  CHECK(count_lines(dir / "h.csv", "down,3,x.png,24,24,8,8,0.5,inf,inf,1,0") == 1);
  CHECK(fs::exists(dir / "h.summary.csv"));
}

TEST_CASE("cli: exit codes") {
  TempDir dir;
  const auto log = dir / "log.txt";
  CHECK(run("down", log) == 1);
  CHECK(run("bogus-command", log) == 1);
  CHECK(run("down " + q(dir / "absent.png") + " " + q(dir / "o.png") + " --scale 2", log) == 2);
  std::mt19937 rng(3);
  save_image(random_image(rng, 6, 6), dir / "in.png");
  CHECK(run("down " + q(dir / "in.png") + " " + q(dir / "o.png") + " --scale 2 --theta 3", log) != 0);
  CHECK(run("harness " + q(dir / "nothing") + " --csv " + q(dir / "h.csv"), log) == 2);
}
