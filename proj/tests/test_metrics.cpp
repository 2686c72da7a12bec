#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "test_support.hpp"
#include "vpscale/metrics.hpp"

using namespace vpscale;
using namespace vpscale::testing;

namespace {

const double inf = std::numeric_limits<double>::infinity();

RasterImage solid_rgb(int h, int w, double r, double g, double b) {
  return RasterImage({ImagePlane(h, w, r), ImagePlane(h, w, g), ImagePlane(h, w, b)}, 255);
}

RasterImage gradient_rgb(int h, int w) {
  ImagePlane p(h, w);
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < w; ++j) p(i, j) = std::round(255.0 * (i * w + j) / (h * w - 1));
  return RasterImage({p, p, p}, 255);
}

RasterImage inverted(const RasterImage& img) {
  RasterImage out = img;
  for (auto& p : out.channels) p.data() = (255.0 - p.data().array()).matrix();
  return out;
}

}  // namespace

TEST_CASE("mse examples") {
  std::mt19937 rng(1);
  const auto a = random_plane(rng, 6, 4);
  CHECK(mse(a, a) == 0.0);
  CHECK(mse(ImagePlane(3, 3, 0.0), ImagePlane(3, 3, 255.0)) == 65025.0);
  ImagePlane b(2, 2);
  b(0, 0) = 1;
  b(0, 1) = 2;
  b(1, 0) = 3;
  b(1, 1) = 4;
  CHECK(mse(ImagePlane(2, 2, 0.0), b) == 7.5);
  CHECK_THROWS_AS((void)mse(ImagePlane(2, 2), ImagePlane(2, 3)), std::invalid_argument);
}

TEST_CASE("mse_color is the mean of channel MSEs") {
  std::mt19937 rng(2);
  const auto a = random_image(rng, 4, 4);
  const auto b = random_image(rng, 4, 4);
  CHECK(mse_color(a, a) == 0.0);
  const double expected =
      (mse(a.channels[0], b.channels[0]) + mse(a.channels[1], b.channels[1]) + mse(a.channels[2], b.channels[2])) / 3;
  CHECK(mse_color(a, b) == doctest::Approx(expected).epsilon(1e-15));

  // per-channel MSEs 3, 6, 9 -> 6
  const auto zero = solid_rgb(2, 2, 0, 0, 0);
  const auto off = solid_rgb(2, 2, std::sqrt(3.0), std::sqrt(6.0), 3.0);
  CHECK(mse_color(zero, off) == doctest::Approx(6.0).epsilon(1e-14));

  CHECK_THROWS_AS((void)mse_color(a, random_image(rng, 4, 5)), std::invalid_argument);
  CHECK_THROWS_AS((void)mse_color(a, random_image(rng, 4, 4, 1)), std::invalid_argument);
}

TEST_CASE("psnr_mean_channel") {
  std::mt19937 rng(3);
  const auto a = random_image(rng, 5, 5);
  CHECK(psnr_mean_channel(a, a, 255) == inf);
  CHECK(psnr_mean_channel(solid_rgb(3, 3, 0, 0, 0), solid_rgb(3, 3, 255, 255, 255), 255) == 0.0);
  CHECK(psnr_from_mse(65.025, 255) == doctest::Approx(30.0).epsilon(1e-12));
}

TEST_CASE("rgb_to_luma") {
  CHECK(rgb_to_luma(solid_rgb(1, 1, 0, 0, 0))(0, 0) == 16.0);
  CHECK(std::abs(rgb_to_luma(solid_rgb(1, 1, 255, 255, 255))(0, 0) - 235.0) < 1e-3);
  CHECK(std::abs(rgb_to_luma(solid_rgb(1, 1, 255, 0, 0))(0, 0) - 81.48) < 0.05);
  CHECK_THROWS_AS((void)rgb_to_luma(RasterImage({ImagePlane(2, 2)}, 255)), std::invalid_argument);
  const auto c = LumaCoefficients::bt601_studio(65535);
  CHECK(c.a4 == 4096.0);
}

TEST_CASE("psnr_luma") {
  std::mt19937 rng(4);
  const auto a = random_image(rng, 6, 6);
  CHECK(psnr_luma(a, a, 255) == inf);

  // a chroma-only change: (d1, d2, d3) orthogonal to the luma weights
  const auto w = LumaCoefficients::bt601_studio();
  const double d1 = w.a2, d2 = -w.a1, d3 = 0.0;  // a1 d1 + a2 d2 = 0
  const auto base = solid_rgb(4, 4, 100, 100, 100);
  const auto shifted = solid_rgb(4, 4, 100 + 10 * d1, 100 + 10 * d2, 100 + 10 * d3);
  CHECK(mse_luma(base, shifted) < 1e-20);

  const auto b = random_image(rng, 6, 6);
  const double expected = 20 * std::log10(255.0 / std::sqrt(mse(rgb_to_luma(a), rgb_to_luma(b))));
  CHECK(psnr_luma(a, b, 255) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("ssim identities") {
  std::mt19937 rng(5);
  const auto a = random_image(rng, 24, 20);
  for (auto mode : {SsimMode::Global, SsimMode::Windowed}) {
    const auto p = SsimParams::for_range(255, mode);
    CHECK(ssim(a, a, p) == 1.0);
    CHECK(ssim(solid_rgb(12, 12, 40, 40, 40), solid_rgb(12, 12, 40, 40, 40), p) == 1.0);
  }
}

TEST_CASE("ssim of an inverted gradient is negative in global mode") {
  const auto a = gradient_rgb(8, 8);
  CHECK(ssim(a, inverted(a), SsimParams::for_range(255, SsimMode::Global)) < 0.0);
}

TEST_CASE("ssim constants") {
  const auto p = SsimParams::for_range(255);
  CHECK(p.c1 == doctest::Approx(6.5025));
  CHECK(p.c2 == doctest::Approx(58.5225));
  const auto lit = SsimParams::for_range(255, SsimMode::Global, true);
  CHECK(lit.c1 == doctest::Approx(2.55));
  CHECK(lit.c2 == doctest::Approx(7.65));
  SsimParams bad = p;
  bad.c1 = 0;
  CHECK_THROWS_AS((void)ssim_plane(ImagePlane(3, 3), ImagePlane(3, 3), bad), std::invalid_argument);
}

TEST_CASE("windowed ssim matches a direct per-window evaluation") {
  std::mt19937 rng(6);
  const auto a = random_real_plane(rng, 14, 12);
  const auto b = random_real_plane(rng, 14, 12);
  const auto p = SsimParams::for_range(255);
  double w[11];
  double wsum = 0.0;
  for (int i = 0; i < 11; ++i) wsum += (w[i] = std::exp(-((i - 5.0) * (i - 5.0)) / (2 * 1.5 * 1.5)));
  double total = 0.0;
  int count = 0;
  for (int i0 = 0; i0 + 11 <= 14; ++i0)
    for (int j0 = 0; j0 + 11 <= 12; ++j0) {
      double ma = 0, mb = 0;
      for (int i = 0; i < 11; ++i)
        for (int j = 0; j < 11; ++j) {
          const double g = w[i] * w[j] / (wsum * wsum);
          ma += g * a(i0 + i, j0 + j);
          mb += g * b(i0 + i, j0 + j);
        }
      double va = 0, vb = 0, cov = 0;
      for (int i = 0; i < 11; ++i)
        for (int j = 0; j < 11; ++j) {
          const double g = w[i] * w[j] / (wsum * wsum);
          const double da = a(i0 + i, j0 + j) - ma, db = b(i0 + i, j0 + j) - mb;
          va += g * da * da;
          vb += g * db * db;
          cov += g * da * db;
        }
      total += (2 * ma * mb + p.c1) * (2 * cov + p.c2) / ((ma * ma + mb * mb + p.c1) * (va + vb + p.c2));
      ++count;
    }
  CHECK(ssim_plane(a, b, p) == doctest::Approx(total / count).epsilon(1e-10));
}

TEST_CASE("windowed ssim falls back to global on small planes") {
  std::mt19937 rng(7);
  const auto a = random_real_plane(rng, 8, 30);
  const auto b = random_real_plane(rng, 8, 30);
  CHECK(ssim_plane(a, b, SsimParams::for_range(255, SsimMode::Windowed)) ==
        ssim_plane(a, b, SsimParams::for_range(255, SsimMode::Global)));
}

TEST_CASE("metric properties on random pairs") {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_image(rng, 16, 13);
    const auto b = random_image(rng, 16, 13);
    for (auto mode : {SsimMode::Global, SsimMode::Windowed}) {
      const auto p = SsimParams::for_range(255, mode);
      const double s_ab = ssim(a, b, p), s_ba = ssim(b, a, p);
      CHECK(s_ab == doctest::Approx(s_ba).epsilon(1e-12));
      CHECK(s_ab >= -1.0);
      CHECK(s_ab <= 1.0);
    }
    const double k = 1.0 + trial;
    const ImagePlane ka(Eigen::MatrixXd(k * a.channels[0].data())), kb(Eigen::MatrixXd(k * b.channels[0].data()));
    const double base = mse(a.channels[0], b.channels[0]);
    CHECK(std::abs(mse(ka, kb) - k * k * base) <= 1e-9 * k * k * base);
  }
  double previous = inf;
  for (double m : {1e-6, 0.1, 1.0, 10.0, 65025.0, 1e7}) {
    const double p = psnr_from_mse(m, 255);
    CHECK(p < previous);
    previous = p;
  }
}

TEST_CASE("evaluate_quality and CSV row") {
  std::mt19937 rng(9);
  const auto a = random_image(rng, 12, 12);
  auto r = evaluate_quality(a, a, SsimParams::for_range(255));
  CHECK(r.psnr_luma == inf);
  CHECK(r.psnr_mean_channel == inf);
  CHECK(r.ssim == 1.0);
  r.image_id = "a,b.png";
  r.source_h = 36;
  r.source_w = 36;
  r.theta_used = 0.5;
  r.elapsed = 0.25;
  CHECK(quality_csv_header() == "image_id,source_h,source_w,target_h,target_w,theta,psnr_luma,psnr_mean,ssim,elapsed_s");
  CHECK(quality_csv_row(r) == "\"a,b.png\",36,36,12,12,0.5,inf,inf,1,0.25");
  CHECK(quality_csv_row(r, false) == "\"a,b.png\",36,36,12,12,0.5,inf,inf,1,0");
}

TEST_CASE("gray images use the plane itself as luma") {
  std::mt19937 rng(10);
  const RasterImage g({random_plane(rng, 5, 5)}, 255);
  const RasterImage h({random_plane(rng, 5, 5)}, 255);
  CHECK(mse_luma(g, h) == mse(g.channels[0], h.channels[0]));
  CHECK(mse_color(g, h) == mse(g.channels[0], h.channels[0]));
}
