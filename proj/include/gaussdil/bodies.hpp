#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace gaussdil {

enum class NormTag { l1, l2, linf };

std::string norm_tag_name(NormTag tag);
NormTag norm_tag_from_name(const std::string& name);

// All bodies are open, origin-symmetric and convex; membership tests use
// strict inequalities so dilation by t < 1 nests cleanly.

struct Ball {
  Ball(int dim, double radius);
  int dim;
  double radius;
};

struct Slab {
  Slab(int dim, double halfwidth);
  int dim;
  double halfwidth;
};

// {x : x_1^2 + ... + x_k^2 < radius^2} in R^{k+l}; the l free coordinates
// are unconstrained, so the Gaussian measure only sees the radial factor.
struct Cylinder {
  Cylinder(int radial_dim, int free_dim, double radius);
  int radial_dim;
  int free_dim;
  double radius;
};

// Derived quantities of the rotational profile
//   f(r) = w                      for 0 <= r <= x,
//   f(r) = w (y - r) / (y - x)    for x <= r <= y,      y = x/2 + w^2/(2x),
// which is tangent to the sphere of radius w at r = s, guaranteeing that the
// body of revolution {(xi, h) : |xi| < y, |h| < f(|xi|)} has inradius w.
struct SaucerGeometry {
  double w;  // halfwidth of the flat part (also the inradius)
  double x;  // radius where the flat part ends
  double y;  // radius where the profile hits zero
  double s;  // tangency radius, x < s < y, with s^2 + f(s)^2 = w^2
};

// Flat-top body of revolution in R^dim described by SaucerGeometry applied
// to the first dim-1 coordinates, with the last coordinate as the height.
struct FlyingSaucer {
  FlyingSaucer(int dim, double w, double x);
  int dim;
  double w;
  double x;
};

struct SlabConstraint {
  std::vector<double> direction;  // unit vector after construction
  double halfwidth;
};

// Intersection of finitely many symmetric slabs {|<u_i, x>| < h_i}.
struct SlabPolytope {
  SlabPolytope(int dim, std::vector<SlabConstraint> constraints);
  int dim;
  std::vector<SlabConstraint> constraints;
};

// {x : ||A x||_norm < level} for an image_dim x dim matrix A (row-major).
// Covers the ellipsoid-like and l1 preimages that slabs cannot express.
struct NormPreimage {
  NormPreimage(int dim, int image_dim, NormTag norm, double level,
               std::vector<double> matrix);
  int dim;
  int image_dim;
  NormTag norm;
  double level;
  std::vector<double> matrix;
  double operator_norm;  // ||A||_{2 -> norm}, cached at construction
};

using Body = std::variant<Ball, Slab, Cylinder, FlyingSaucer, SlabPolytope,
                          NormPreimage>;

int ambient_dim(const Body& body);
bool contains(const Body& body, std::span<const double> point);

// Largest r with B(0, r) inside the body. Exact for every variant: the norm
// preimage uses level / ||A||_{2 -> norm}.
double inradius(const Body& body);

// Homothety t * K for t > 0. Scales every metric parameter and keeps the
// variant, e.g. FlyingSaucer(n, w, x) -> FlyingSaucer(n, t w, t x).
Body dilate(const Body& body, double t);

std::string describe(const Body& body);

Body body_from_json(const nlohmann::json& j);
nlohmann::json body_to_json(const Body& body);
Body body_from_json_text(const std::string& text);

// Saucer profile helpers, usable standalone in tests and fitting code.
SaucerGeometry saucer_geometry(double w, double x);
double saucer_profile(double w, double x, double r);
// Inverse of the slanted part: the radius where the profile equals h,
// for 0 < h < w. Returns x + (w/x - x/w) (w - h) / 2.
double saucer_level_radius(const SaucerGeometry& geom, double h);

}  // namespace gaussdil
