#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "test_support.hpp"
#include "vpscale/image_io.hpp"

using namespace vpscale;
using namespace vpscale::testing;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("vpscale_io_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path operator/(const std::string& name) const { return path / name; }
};

void write_bytes(const fs::path& p, const std::string& bytes) {
  std::ofstream(p, std::ios::binary) << bytes;
}

std::string read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("a hand-written 2x2 PPM loads as expected") {
  TempDir dir;
  const std::string header = "P6\n# comment\n2 2\n255\n";
  const std::string body("\x00\x10\x20\x30\x40\x50\x60\x70\x80\x90\xa0\xff", 12);
  write_bytes(dir / "a.ppm", header + body);
  const auto img = load_image(dir / "a.ppm");
  REQUIRE(img.channel_count() == 3);
  CHECK(img.height() == 2);
  CHECK(img.width() == 2);
  CHECK(img.max_f == 255);
  CHECK(img.channels[0](0, 0) == 0x00);
  CHECK(img.channels[1](0, 0) == 0x10);
  CHECK(img.channels[2](0, 1) == 0x50);
  CHECK(img.channels[0](1, 0) == 0x60);
  CHECK(img.channels[2](1, 1) == 0xff);

  save_image(img, dir / "b.ppm");
  CHECK(read_bytes(dir / "b.ppm") == "P6\n2 2\n255\n" + body);
}

TEST_CASE("round trips") {
  TempDir dir;
  std::mt19937 rng(1);
  SUBCASE("png rgb") {
    const auto img = random_image(rng, 7, 11);
    save_image(img, dir / "x.png");
    CHECK(load_image(dir / "x.png") == img);
  }
  SUBCASE("png rgba") {
    const auto img = random_image(rng, 5, 4, 4);
    save_image(img, dir / "x.png");
    CHECK(load_image(dir / "x.png") == img);
  }
  SUBCASE("png gray 16-bit") {
    const auto img = random_image(rng, 6, 9, 1, 65535);
    save_image(img, dir / "x.png");
    const auto back = load_image(dir / "x.png");
    CHECK(back.max_f == 65535);
    CHECK(back == img);
  }
  SUBCASE("ppm 16-bit") {
    const auto img = random_image(rng, 3, 8, 3, 65535);
    save_image(img, dir / "x.ppm");
    CHECK(load_image(dir / "x.ppm") == img);
  }
  SUBCASE("pgm odd maxval") {
    const auto img = random_image(rng, 4, 4, 1, 1000);
    save_image(img, dir / "x.pgm");
    const auto back = load_image(dir / "x.pgm");
    CHECK(back.max_f == 1000);
    CHECK(back == img);
  }
}

TEST_CASE("format is detected from content, not extension") {
  TempDir dir;
  std::mt19937 rng(2);
  const auto img = random_image(rng, 3, 3);
  save_image(img, dir / "x.png");
  fs::rename(dir / "x.png", dir / "x.ppm");
  CHECK(load_image(dir / "x.ppm") == img);
}

TEST_CASE("save rejections") {
  TempDir dir;
  std::mt19937 rng(3);
  const auto img = random_image(rng, 3, 3);
  CHECK_THROWS_AS(save_image(img, dir / "x.jpg"), IoError);
  CHECK_THROWS_AS(save_image(random_image(rng, 3, 3, 4), dir / "x.ppm"), IoError);
  CHECK_THROWS_AS(save_image(random_image(rng, 3, 3, 3, 1000), dir / "x.png"), std::invalid_argument);
  CHECK_THROWS_AS(save_image(img, dir / "missing" / "sub" / "x.png"), IoError);
  RasterImage fractional = img;
  fractional.channels[0](0, 0) = 0.5;
  CHECK_THROWS_AS(save_image(fractional, dir / "y.png"), std::invalid_argument);
}

TEST_CASE("load rejections") {
  TempDir dir;
  CHECK_THROWS_AS((void)load_image(dir / "absent.png"), IoError);
  write_bytes(dir / "a.jpg", std::string("\xff\xd8\xff\xe0", 4) + "JFIF");
  CHECK_THROWS_AS((void)load_image(dir / "a.jpg"), IoError);
  write_bytes(dir / "b.ppm", "P6\n4 4\n255\nabc");
  CHECK_THROWS_AS((void)load_image(dir / "b.ppm"), IoError);
  write_bytes(dir / "c.png", "\x89PNG\r\n\x1a\n");
  CHECK_THROWS_AS((void)load_image(dir / "c.png"), IoError);
  write_bytes(dir / "d.txt", "hello");
  CHECK_THROWS_AS((void)load_image(dir / "d.txt"), IoError);
}

TEST_CASE("is_supported_image_path") {
  CHECK(is_supported_image_path("a.png"));
  CHECK(is_supported_image_path("a.PPM"));
  CHECK(is_supported_image_path("a.pgm"));
  CHECK_FALSE(is_supported_image_path("a.jpeg"));
  CHECK_FALSE(is_supported_image_path("a"));
}
