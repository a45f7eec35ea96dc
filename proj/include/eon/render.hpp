#pragma once
// Minimal deterministic path tracer: one analytic sphere, one material, and
// either a uniform environment (furnace setup) or a single directional light
// (delta light, handled by direct evaluation at each hit). Pixels are keyed
// to their own RNG streams, so images are byte-identical for any thread
// count. Output is binary PPM (P6), 8-bit, gamma 2.2.

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "eon/brdf.hpp"
#include "eon/core.hpp"
#include "eon/rng.hpp"
#include "eon/stats.hpp"
#include "eon/threading.hpp"

namespace eon {

struct Sphere {
  Vec3 center{0.0, 0.0, 0.0};
  double radius = 1.0;
};

enum class EnvKind { uniform, directional };

struct Environment {
  EnvKind kind = EnvKind::uniform;
  double radiance = 1.0;        // uniform: emitted from every miss direction
  Vec3 light_dir{0.0, 0.0, 1.0};  // directional: unit vector toward the light
  double light_radiance = kPi;
};

struct Camera {
  Vec3 position{0.0, 0.0, 3.2};
  Vec3 target{0.0, 0.0, 0.0};
  Vec3 up{0.0, 1.0, 0.0};
  double vfov_deg = 45.0;
};

struct Scene {
  Sphere sphere;
  Material material;
  Strategy sampler = Strategy::cosine;
  Environment env;
};

struct Image {
  int width = 0, height = 0;
  std::vector<Vec3> pixels;  // linear radiance, row-major from top-left

  Vec3& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
  const Vec3& at(int x, int y) const {
    return pixels[static_cast<std::size_t>(y) * width + x];
  }
};

namespace detail {

struct Ray {
  Vec3 origin, dir;  // dir unit length
};

// Nearest positive hit parameter, or a negative value on miss.
inline double intersect_sphere(const Ray& ray, const Sphere& s) {
  const Vec3 oc = ray.origin - s.center;
  const double b = dot(oc, ray.dir);
  const double c = dot(oc, oc) - s.radius * s.radius;
  const double disc = b * b - c;
  if (disc < 0.0) return -1.0;
  const double sq = std::sqrt(disc);
  const double t0 = -b - sq;
  if (t0 > 1e-9) return t0;
  const double t1 = -b + sq;
  return t1 > 1e-9 ? t1 : -1.0;
}

// Branchless orthonormal basis around n (n must be unit length).
inline void basis_around(Vec3 n, Vec3& t, Vec3& b) {
  const double sign = std::copysign(1.0, n.z);
  const double a = -1.0 / (sign + n.z);
  t = {1.0 + sign * n.x * n.x * a, sign * n.x * n.y * a, -sign * n.x};
  b = {n.x * n.y * a, sign + n.y * n.y * a, -n.y};
}

struct CameraFrame {
  Vec3 origin, forward, right, up;
  double tan_half;
};

inline CameraFrame camera_frame(const Camera& cam) {
  CameraFrame f;
  f.origin = cam.position;
  f.forward = normalize(cam.target - cam.position);
  f.right = normalize(cross(f.forward, cam.up));
  f.up = cross(f.right, f.forward);
  f.tan_half = std::tan(cam.vfov_deg * kPi / 360.0);
  return f;
}

inline Ray camera_ray(const CameraFrame& f, double px, double py, int w, int h) {
  const double aspect = static_cast<double>(w) / h;
  const double sx = (2.0 * px / w - 1.0) * f.tan_half * aspect;
  const double sy = (1.0 - 2.0 * py / h) * f.tan_half;
  return {f.origin, normalize(f.forward + sx * f.right + sy * f.up)};
}

}  // namespace detail

// Radiance of one camera path. Exposed for tests; render() averages spp of
// these per pixel.
inline Vec3 trace_path(const Scene& scene, detail::Ray ray, int bounces, CounterRng& rng) {
  Vec3 radiance{0.0, 0.0, 0.0};
  Spectrum throughput(1.0);
  const FonRoughness proxy_r(
      scene.material.model == Model::fon || scene.material.model == Model::eon
          ? scene.material.roughness
          : 0.0);
  for (int bounce = 0; bounce <= bounces; ++bounce) {
    const double t = detail::intersect_sphere(ray, scene.sphere);
    if (t < 0.0) {
      if (scene.env.kind == EnvKind::uniform) {
        radiance += scene.env.radiance * Vec3{throughput.r, throughput.g, throughput.b};
      }
      break;
    }
    if (bounce == bounces) break;  // cap reached with no escape
    const Vec3 hit = ray.origin + t * ray.dir;
    const Vec3 n = normalize(hit - scene.sphere.center);
    Vec3 tan, bit;
    detail::basis_around(n, tan, bit);
    const Vec3 wo_w = -ray.dir;
    const double mu_o = dot(wo_w, n);
    if (mu_o <= 1e-12) break;  // tangential graze; no meaningful shading frame
    const Direction wo =
        Direction::unchecked(dot(wo_w, tan), dot(wo_w, bit), mu_o);

    if (scene.env.kind == EnvKind::directional) {
      const Vec3 ld = normalize(scene.env.light_dir);
      const double cos_l = dot(ld, n);
      if (cos_l > 0.0) {  // convex scene: the light is unoccluded when above horizon
        const Direction wl = Direction::unchecked(dot(ld, tan), dot(ld, bit), cos_l);
        const Spectrum f = eval_brdf(scene.material, wl, wo);
        const Spectrum c = throughput * f * (cos_l * scene.env.light_radiance);
        radiance += Vec3{c.r, c.g, c.b};
      }
    }

    const DirectionalSample s = draw_sample(scene.sampler, wo, proxy_r, rng.pair());
    if (!(s.pdf > 0.0)) break;
    const Spectrum f = eval_brdf(scene.material, s.wi, wo);
    throughput = throughput * f * (s.wi.z / s.pdf);
    const Vec3 dir_w = s.wi.x * tan + s.wi.y * bit + s.wi.z * n;
    ray = {hit + 1e-9 * n, normalize(dir_w)};
  }
  if (!is_finite(radiance)) {
    throw std::runtime_error("trace_path: non-finite radiance");
  }
  return radiance;
}

// Renders width x height with spp jittered samples per pixel. Pixel (x, y)
// owns RNG stream y*width+x, making the image independent of scheduling.
inline Image render(const Scene& scene, const Camera& camera, int width, int height,
                    int spp, int bounces, std::uint64_t seed) {
  if (width <= 0 || height <= 0) throw std::invalid_argument("render: empty image");
  if (spp <= 0) throw std::invalid_argument("render: spp must be positive");
  if (bounces < 1) throw std::invalid_argument("render: bounces must be >= 1");
  Image img;
  img.width = width;
  img.height = height;
  img.pixels.assign(static_cast<std::size_t>(width) * height, Vec3{});
  const detail::CameraFrame frame =
      detail::camera_frame(camera);

  parallel_shards(height, [&](int y) {
    for (int x = 0; x < width; ++x) {
      CounterRng rng(seed, static_cast<std::uint64_t>(y) * width + x);
      Vec3 acc{};
      for (int s = 0; s < spp; ++s) {
        const RandomPair jitter = rng.pair();
        const detail::Ray ray =
            detail::camera_ray(frame, x + jitter.u1, y + jitter.u2, width, height);
        acc += trace_path(scene, ray, bounces, rng);
      }
      img.at(x, y) = acc / static_cast<double>(spp);
    }
  });
  return img;
}

// 8-bit gamma-2.2 encoding, the exact inverse of decode on every byte value.
inline std::uint8_t encode_gamma(double linear) {
  const double clamped = std::fmin(std::fmax(linear, 0.0), 1.0);
  const double enc = std::pow(clamped, 1.0 / 2.2);
  const int v = static_cast<int>(std::lround(enc * 255.0));
  return static_cast<std::uint8_t>(v < 0 ? 0 : (v > 255 ? 255 : v));
}

inline double decode_gamma(std::uint8_t value) {
  return std::pow(value / 255.0, 2.2);
}

// Binary PPM: header "P6\n<w> <h>\n255\n" then RGB bytes; a 1x1 white image
// is exactly 14 bytes.
inline void write_ppm(const Image& img, const std::string& path) {
  std::string bytes = "P6\n" + std::to_string(img.width) + " " +
                      std::to_string(img.height) + "\n255\n";
  bytes.reserve(bytes.size() + img.pixels.size() * 3);
  for (const Vec3& p : img.pixels) {
    bytes.push_back(static_cast<char>(encode_gamma(p.x)));
    bytes.push_back(static_cast<char>(encode_gamma(p.y)));
    bytes.push_back(static_cast<char>(encode_gamma(p.z)));
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("write_ppm: cannot open " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write_ppm: short write to " + path);
}

struct FurnaceImageStats {
  double sphere_mean = 0.0;      // mean luminance of pixels safely on the sphere
  double background_mean = 0.0;  // mean luminance of clear-miss pixels
  double rel_deviation = 0.0;    // |sphere - background| / background
  std::int64_t sphere_pixels = 0;
  std::int64_t background_pixels = 0;
};

// Classifies pixels by their center ray: impact parameter < 0.95 R counts as
// sphere (the margin keeps jittered limb pixels out of the statistic),
// > 1.0 R as background.
inline FurnaceImageStats furnace_image_stats(const Image& img, const Scene& scene,
                                             const Camera& camera) {
  const detail::CameraFrame frame =
      detail::camera_frame(camera);
  FurnaceImageStats stats;
  double sphere_sum = 0.0, bg_sum = 0.0;
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      const detail::Ray ray =
          detail::camera_ray(frame, x + 0.5, y + 0.5, img.width, img.height);
      const Vec3 oc = scene.sphere.center - ray.origin;
      const double along = dot(oc, ray.dir);
      const double impact_sq = dot(oc, oc) - along * along;
      const double lum = (img.at(x, y).x + img.at(x, y).y + img.at(x, y).z) / 3.0;
      const double r2 = scene.sphere.radius * scene.sphere.radius;
      if (along > 0.0 && impact_sq < 0.95 * 0.95 * r2) {
        sphere_sum += lum;
        ++stats.sphere_pixels;
      } else if (impact_sq > r2) {
        bg_sum += lum;
        ++stats.background_pixels;
      }
    }
  }
  if (stats.sphere_pixels > 0) sphere_sum /= static_cast<double>(stats.sphere_pixels);
  if (stats.background_pixels > 0) bg_sum /= static_cast<double>(stats.background_pixels);
  stats.sphere_mean = sphere_sum;
  stats.background_mean = bg_sum;
  stats.rel_deviation =
      bg_sum > 0.0 ? std::abs(sphere_sum - bg_sum) / bg_sum : 0.0;
  return stats;
}

// Mean luminance over the limb band (impact parameter in [0.80, 0.95] R) on
// the +x screen side; the region where a camera-side light shows the
// grazing-retroreflection brightening.
inline double limb_band_mean(const Image& img, const Scene& scene, const Camera& camera) {
  const detail::CameraFrame frame =
      detail::camera_frame(camera);
  double sum = 0.0;
  std::int64_t count = 0;
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      const detail::Ray ray =
          detail::camera_ray(frame, x + 0.5, y + 0.5, img.width, img.height);
      const Vec3 oc = scene.sphere.center - ray.origin;
      const double along = dot(oc, ray.dir);
      const double impact_sq = dot(oc, oc) - along * along;
      const double r2 = scene.sphere.radius * scene.sphere.radius;
      if (along <= 0.0 || impact_sq < 0.80 * 0.80 * r2 || impact_sq > 0.95 * 0.95 * r2) {
        continue;
      }
      if (dot(ray.dir, frame.right) <= 0.0) continue;  // keep the +x side only
      sum += (img.at(x, y).x + img.at(x, y).y + img.at(x, y).z) / 3.0;
      ++count;
    }
  }
  return count > 0 ? sum / static_cast<double>(count) : 0.0;
}

}  // namespace eon
