// Sphere path tracer: image determinism, PPM byte format, furnace images,
// and the qualitative side-light comparison between Lambert and EON.
#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "eon/render.hpp"

using namespace eon;

namespace {

Scene furnace_scene(Model model, double roughness, Strategy sampler) {
  Scene scene;
  scene.sphere = {{0.0, 0.0, 0.0}, 1.0};
  scene.material = {model, Spectrum(1.0), roughness, true};
  scene.sampler = sampler;
  scene.env.kind = EnvKind::uniform;
  scene.env.radiance = 1.0;
  return scene;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("ppm writer emits the documented byte layout") {
  Image img;
  img.width = 1;
  img.height = 1;
  img.pixels = {Vec3{1.0, 1.0, 1.0}};
  const std::string path = "/tmp/eon_test_white.ppm";
  write_ppm(img, path);
  const std::string bytes = read_file(path);
  REQUIRE(bytes.size() == 14);
  CHECK(bytes.substr(0, 11) == "P6\n1 1\n255\n");
  CHECK(static_cast<unsigned char>(bytes[11]) == 255);
  CHECK(static_cast<unsigned char>(bytes[12]) == 255);
  CHECK(static_cast<unsigned char>(bytes[13]) == 255);
  std::remove(path.c_str());

  Image black;
  black.width = 2;
  black.height = 3;
  black.pixels.assign(6, Vec3{});
  const std::string bpath = "/tmp/eon_test_black.ppm";
  write_ppm(black, bpath);
  const std::string bb = read_file(bpath);
  REQUIRE(bb.size() == 11 + 18);
  CHECK(bb.substr(0, 11) == "P6\n2 3\n255\n");
  for (std::size_t i = 11; i < bb.size(); ++i) CHECK(bb[i] == '\0');
  std::remove(bpath.c_str());
}

TEST_CASE("gamma encoding round-trips every 8-bit value") {
  for (int v = 0; v <= 255; ++v) {
    CHECK(encode_gamma(decode_gamma(static_cast<std::uint8_t>(v))) == v);
  }
  CHECK(encode_gamma(-0.5) == 0);
  CHECK(encode_gamma(2.0) == 255);
}

TEST_CASE("rendering is deterministic for any thread count") {
  const Scene scene = furnace_scene(Model::eon, 1.0, Strategy::cltc_mis);
  const Camera cam;
  const Image a = render(scene, cam, 24, 18, 4, 3, 77);
  const Image b = render(scene, cam, 24, 18, 4, 3, 77);
  REQUIRE(a.pixels.size() == b.pixels.size());
  bool same = true;
  for (std::size_t i = 0; i < a.pixels.size(); ++i) {
    same = same && a.pixels[i].x == b.pixels[i].x && a.pixels[i].y == b.pixels[i].y &&
           a.pixels[i].z == b.pixels[i].z;
  }
  CHECK(same);
  setenv("EON_THREADS", "4", 1);
  const Image c = render(scene, cam, 24, 18, 4, 3, 77);
  unsetenv("EON_THREADS");
  bool same_threads = true;
  for (std::size_t i = 0; i < a.pixels.size(); ++i) {
    same_threads = same_threads && a.pixels[i].x == c.pixels[i].x;
  }
  CHECK(same_threads);
  // A different seed produces a different image.
  const Image d = render(scene, cam, 24, 18, 4, 3, 78);
  bool any_diff = false;
  for (std::size_t i = 0; i < a.pixels.size(); ++i) {
    any_diff = any_diff || a.pixels[i].x != d.pixels[i].x;
  }
  CHECK(any_diff);
}

TEST_CASE("white eon sphere disappears in the furnace; lossy qon does not") {
  const Camera cam;
  const Scene eon_scene = furnace_scene(Model::eon, 1.0, Strategy::cltc_mis);
  const Image eon_img = render(eon_scene, cam, 64, 48, 128, 5, 2025);
  const FurnaceImageStats eon_stats = furnace_image_stats(eon_img, eon_scene, cam);
  CHECK(eon_stats.sphere_pixels > 200);
  CHECK(eon_stats.background_pixels > 200);
  CHECK(eon_stats.background_mean == Catch::Approx(1.0).margin(2e-3));
  CHECK(eon_stats.rel_deviation < 0.01);

  Scene qon_scene = furnace_scene(Model::qon, kPi / 2.0, Strategy::cosine);
  const Image qon_img = render(qon_scene, cam, 64, 48, 128, 5, 2025);
  const FurnaceImageStats qon_stats = furnace_image_stats(qon_img, qon_scene, cam);
  CHECK(qon_stats.sphere_mean / qon_stats.background_mean < 0.8);
  CHECK(qon_stats.rel_deviation > 0.2);
}

TEST_CASE("under a headlight the rough limb outshines lambert") {
  // Lighting straight down the camera axis makes light and view share the
  // grazing geometry at the limb, which drives the retroreflection term: at
  // equal reflectance the EON sphere's limb stays bright (the "flat" look)
  // where Lambert rolls off with the cosine.
  Scene lam;
  lam.sphere = {{0.0, 0.0, 0.0}, 1.0};
  lam.material = {Model::lambert, Spectrum(0.8), 0.0, false};
  lam.sampler = Strategy::cosine;
  lam.env.kind = EnvKind::directional;
  lam.env.light_dir = {0.0, 0.0, 1.0};
  lam.env.light_radiance = kPi;
  Scene eon = lam;
  eon.material = {Model::eon, Spectrum(0.8), 1.0, true};
  eon.sampler = Strategy::cltc_mis;

  const Camera cam;
  const Image lam_img = render(lam, cam, 96, 72, 32, 2, 9);
  const Image eon_img = render(eon, cam, 96, 72, 32, 2, 9);
  const double lam_limb = limb_band_mean(lam_img, lam, cam);
  const double eon_limb = limb_band_mean(eon_img, eon, cam);
  CHECK(lam_limb > 0.0);
  CHECK(eon_limb > 1.3 * lam_limb);
}

TEST_CASE("render argument validation") {
  const Scene scene = furnace_scene(Model::lambert, 0.0, Strategy::cosine);
  const Camera cam;
  CHECK_THROWS_AS(render(scene, cam, 0, 10, 1, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(render(scene, cam, 10, 10, 0, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(render(scene, cam, 10, 10, 1, 0, 1), std::invalid_argument);
}
