#include "gaussdil/bodies.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "gaussdil/linalg.hpp"

namespace gaussdil {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

double sq_norm(std::span<const double> v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return s;
}

void check_dim(const Body& body, std::span<const double> point) {
  if (static_cast<int>(point.size()) != ambient_dim(body)) {
    throw std::invalid_argument("contains: point has dimension " +
                                std::to_string(point.size()) + ", body lives in " +
                                std::to_string(ambient_dim(body)));
  }
}

}  // namespace

std::string norm_tag_name(NormTag tag) {
  switch (tag) {
    case NormTag::l1: return "l1";
    case NormTag::l2: return "l2";
    case NormTag::linf: return "linf";
  }
  throw std::logic_error("norm_tag_name: bad tag");
}

NormTag norm_tag_from_name(const std::string& name) {
  if (name == "l1") return NormTag::l1;
  if (name == "l2") return NormTag::l2;
  if (name == "linf") return NormTag::linf;
  throw std::invalid_argument("unknown norm '" + name + "' (want l1|l2|linf)");
}

Ball::Ball(int dim, double radius) : dim(dim), radius(radius) {
  require(dim >= 1, "Ball: dim must be >= 1");
  require(radius > 0.0 && std::isfinite(radius), "Ball: radius must be > 0");
}

Slab::Slab(int dim, double halfwidth) : dim(dim), halfwidth(halfwidth) {
  require(dim >= 1, "Slab: dim must be >= 1");
  require(halfwidth > 0.0 && std::isfinite(halfwidth),
          "Slab: halfwidth must be > 0");
}

Cylinder::Cylinder(int radial_dim, int free_dim, double radius)
    : radial_dim(radial_dim), free_dim(free_dim), radius(radius) {
  require(radial_dim >= 1, "Cylinder: radial_dim must be >= 1");
  require(free_dim >= 0, "Cylinder: free_dim must be >= 0");
  require(radius > 0.0 && std::isfinite(radius),
          "Cylinder: radius must be > 0");
}

FlyingSaucer::FlyingSaucer(int dim, double w, double x) : dim(dim), w(w), x(x) {
  require(dim >= 2, "FlyingSaucer: dim must be >= 2");
  require(w > 0.0 && std::isfinite(w), "FlyingSaucer: w must be > 0");
  require(x > 0.0 && x < w, "FlyingSaucer: need 0 < x < w");
}

SlabPolytope::SlabPolytope(int dim, std::vector<SlabConstraint> cs)
    : dim(dim), constraints(std::move(cs)) {
  require(dim >= 1, "SlabPolytope: dim must be >= 1");
  require(!constraints.empty(), "SlabPolytope: need at least one constraint");
  for (SlabConstraint& c : constraints) {
    require(static_cast<int>(c.direction.size()) == dim,
            "SlabPolytope: direction dimension mismatch");
    require(c.halfwidth > 0.0 && std::isfinite(c.halfwidth),
            "SlabPolytope: halfwidth must be > 0");
    const double len = std::sqrt(sq_norm(c.direction));
    require(len > 0.0, "SlabPolytope: zero direction vector");
    for (double& v : c.direction) v /= len;
  }
}

NormPreimage::NormPreimage(int dim, int image_dim, NormTag norm, double level,
                           std::vector<double> mat)
    : dim(dim),
      image_dim(image_dim),
      norm(norm),
      level(level),
      matrix(std::move(mat)),
      operator_norm(0.0) {
  require(dim >= 1, "NormPreimage: dim must be >= 1");
  require(image_dim >= 1, "NormPreimage: image_dim must be >= 1");
  require(level > 0.0 && std::isfinite(level),
          "NormPreimage: level must be > 0");
  require(matrix.size() == static_cast<std::size_t>(image_dim) *
                               static_cast<std::size_t>(dim),
          "NormPreimage: matrix size mismatch");
  // ||A||_{2->norm}. For l2 this is the top singular value; for linf the
  // largest row length; for l1 it needs the full Gram matrix G = A A^T,
  // since sup_{|x|_2=1} ||Ax||_1 = max over sign vectors e of |A^T e|_2.
  auto row = [&](int i) {
    return std::span<const double>(matrix.data() + static_cast<std::size_t>(i) * dim,
                                   static_cast<std::size_t>(dim));
  };
  switch (norm) {
    case NormTag::l2: {
      // Use whichever Gram matrix is smaller: A^T A (dim) or A A^T (image_dim).
      if (image_dim <= dim) {
        std::vector<double> gram(static_cast<std::size_t>(image_dim) * image_dim);
        for (int i = 0; i < image_dim; ++i) {
          for (int j = i; j < image_dim; ++j) {
            double s = 0.0;
            for (int k = 0; k < dim; ++k) s += row(i)[k] * row(j)[k];
            gram[i * image_dim + j] = gram[j * image_dim + i] = s;
          }
        }
        operator_norm = std::sqrt(std::max(0.0, sym_eig_max(gram, image_dim)));
      } else {
        std::vector<double> gram(static_cast<std::size_t>(dim) * dim, 0.0);
        for (int i = 0; i < image_dim; ++i) {
          for (int a = 0; a < dim; ++a) {
            for (int b = 0; b < dim; ++b) {
              gram[a * dim + b] += row(i)[a] * row(i)[b];
            }
          }
        }
        operator_norm = std::sqrt(std::max(0.0, sym_eig_max(gram, dim)));
      }
      break;
    }
    case NormTag::linf: {
      double best = 0.0;
      for (int i = 0; i < image_dim; ++i) best = std::max(best, sq_norm(row(i)));
      operator_norm = std::sqrt(best);
      break;
    }
    case NormTag::l1: {
      require(image_dim <= 20,
              "NormPreimage: l1 operator norm enumerates 2^(image_dim-1) sign "
              "patterns; image_dim capped at 20");
      std::vector<double> gram(static_cast<std::size_t>(image_dim) * image_dim);
      for (int i = 0; i < image_dim; ++i) {
        for (int j = i; j < image_dim; ++j) {
          double s = 0.0;
          for (int k = 0; k < dim; ++k) s += row(i)[k] * row(j)[k];
          gram[i * image_dim + j] = gram[j * image_dim + i] = s;
        }
      }
      double best = 0.0;
      const std::uint64_t count = 1ull << (image_dim - 1);
      std::vector<double> e(static_cast<std::size_t>(image_dim), 1.0);
      for (std::uint64_t mask = 0; mask < count; ++mask) {
        for (int i = 1; i < image_dim; ++i) {
          e[i] = (mask >> (i - 1)) & 1 ? -1.0 : 1.0;
        }
        double quad = 0.0;
        for (int i = 0; i < image_dim; ++i) {
          double gi = 0.0;
          for (int j = 0; j < image_dim; ++j) gi += gram[i * image_dim + j] * e[j];
          quad += e[i] * gi;
        }
        best = std::max(best, quad);
      }
      operator_norm = std::sqrt(best);
      break;
    }
  }
  require(operator_norm > 0.0, "NormPreimage: matrix must be nonzero");
}

int ambient_dim(const Body& body) {
  return std::visit(
      [](const auto& b) -> int {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Cylinder>) {
          return b.radial_dim + b.free_dim;
        } else {
          return b.dim;
        }
      },
      body);
}

bool contains(const Body& body, std::span<const double> point) {
  check_dim(body, point);
  return std::visit(
      [&](const auto& b) -> bool {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return sq_norm(point) < b.radius * b.radius;
        } else if constexpr (std::is_same_v<T, Slab>) {
          return std::abs(point.back()) < b.halfwidth;
        } else if constexpr (std::is_same_v<T, Cylinder>) {
          return sq_norm(point.first(static_cast<std::size_t>(b.radial_dim))) <
                 b.radius * b.radius;
        } else if constexpr (std::is_same_v<T, FlyingSaucer>) {
          const double r =
              std::sqrt(sq_norm(point.first(point.size() - 1)));
          const double h = std::abs(point.back());
          const SaucerGeometry g = saucer_geometry(b.w, b.x);
          return r < g.y && h < saucer_profile(b.w, b.x, r);
        } else if constexpr (std::is_same_v<T, SlabPolytope>) {
          for (const SlabConstraint& c : b.constraints) {
            double dot = 0.0;
            for (int k = 0; k < b.dim; ++k) dot += c.direction[k] * point[k];
            if (!(std::abs(dot) < c.halfwidth)) return false;
          }
          return true;
        } else {
          static_assert(std::is_same_v<T, NormPreimage>);
          double acc = 0.0;
          for (int i = 0; i < b.image_dim; ++i) {
            double dot = 0.0;
            const double* r = b.matrix.data() + static_cast<std::size_t>(i) * b.dim;
            for (int k = 0; k < b.dim; ++k) dot += r[k] * point[k];
            switch (b.norm) {
              case NormTag::l1: acc += std::abs(dot); break;
              case NormTag::l2: acc += dot * dot; break;
              case NormTag::linf: acc = std::max(acc, std::abs(dot)); break;
            }
          }
          const double norm = b.norm == NormTag::l2 ? std::sqrt(acc) : acc;
          return norm < b.level;
        }
      },
      body);
}

double inradius(const Body& body) {
  return std::visit(
      [](const auto& b) -> double {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return b.radius;
        } else if constexpr (std::is_same_v<T, Slab>) {
          return b.halfwidth;
        } else if constexpr (std::is_same_v<T, Cylinder>) {
          return b.radius;
        } else if constexpr (std::is_same_v<T, FlyingSaucer>) {
          return b.w;  // tangency construction makes this exact
        } else if constexpr (std::is_same_v<T, SlabPolytope>) {
          double r = b.constraints.front().halfwidth;
          for (const SlabConstraint& c : b.constraints) {
            r = std::min(r, c.halfwidth);
          }
          return r;
        } else {
          static_assert(std::is_same_v<T, NormPreimage>);
          // ||Ax||_norm <= ||A||_{2->norm} |x|_2, with equality attained,
          // so the preimage contains exactly B(0, level / opnorm).
          return b.level / b.operator_norm;
        }
      },
      body);
}

Body dilate(const Body& body, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("dilate: t must be a positive finite number");
  }
  return std::visit(
      [t](const auto& b) -> Body {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return Ball(b.dim, t * b.radius);
        } else if constexpr (std::is_same_v<T, Slab>) {
          return Slab(b.dim, t * b.halfwidth);
        } else if constexpr (std::is_same_v<T, Cylinder>) {
          return Cylinder(b.radial_dim, b.free_dim, t * b.radius);
        } else if constexpr (std::is_same_v<T, FlyingSaucer>) {
          return FlyingSaucer(b.dim, t * b.w, t * b.x);
        } else if constexpr (std::is_same_v<T, SlabPolytope>) {
          std::vector<SlabConstraint> cs = b.constraints;
          for (SlabConstraint& c : cs) c.halfwidth *= t;
          return SlabPolytope(b.dim, std::move(cs));
        } else {
          static_assert(std::is_same_v<T, NormPreimage>);
          return NormPreimage(b.dim, b.image_dim, b.norm, t * b.level,
                              b.matrix);
        }
      },
      body);
}

std::string describe(const Body& body) {
  std::ostringstream out;
  out.precision(12);
  std::visit(
      [&](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Ball>) {
          out << "Ball(n=" << b.dim << ",r=" << b.radius << ")";
        } else if constexpr (std::is_same_v<T, Slab>) {
          out << "Slab(n=" << b.dim << ",w=" << b.halfwidth << ")";
        } else if constexpr (std::is_same_v<T, Cylinder>) {
          out << "Cylinder(k=" << b.radial_dim << ",l=" << b.free_dim
              << ",r=" << b.radius << ")";
        } else if constexpr (std::is_same_v<T, FlyingSaucer>) {
          out << "FlyingSaucer(n=" << b.dim << ",w=" << b.w << ",x=" << b.x
              << ")";
        } else if constexpr (std::is_same_v<T, SlabPolytope>) {
          out << "SlabPolytope(n=" << b.dim << ",m=" << b.constraints.size()
              << ")";
        } else {
          static_assert(std::is_same_v<T, NormPreimage>);
          out << "NormPreimage(n=" << b.dim << ",m=" << b.image_dim
              << ",norm=" << norm_tag_name(b.norm) << ",level=" << b.level
              << ")";
        }
      },
      body);
  return out.str();
}

SaucerGeometry saucer_geometry(double w, double x) {
  if (!(w > 0.0) || !(x > 0.0) || !(x < w)) {
    throw std::invalid_argument("saucer_geometry: need 0 < x < w");
  }
  SaucerGeometry g;
  g.w = w;
  g.x = x;
  g.y = 0.5 * x + 0.5 * w * w / x;
  g.s = 2.0 * w * w * x / (w * w + x * x);
  return g;
}

double saucer_profile(double w, double x, double r) {
  const SaucerGeometry g = saucer_geometry(w, x);
  if (r < 0.0) throw std::domain_error("saucer_profile: r must be >= 0");
  if (r <= x) return w;
  if (r >= g.y) return 0.0;
  return w * (g.y - r) / (g.y - x);
}

double saucer_level_radius(const SaucerGeometry& geom, double h) {
  if (!(h > 0.0 && h < geom.w)) {
    throw std::domain_error("saucer_level_radius: need 0 < h < w");
  }
  return geom.x + 0.5 * (geom.w / geom.x - geom.x / geom.w) * (geom.w - h);
}

namespace {

double get_double(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) {
    throw std::invalid_argument(std::string("body config: missing '") + key +
                                "'");
  }
  return j.at(key).get<double>();
}

int get_int(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) {
    throw std::invalid_argument(std::string("body config: missing '") + key +
                                "'");
  }
  return j.at(key).get<int>();
}

}  // namespace

Body body_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("variant")) {
    throw std::invalid_argument("body config: expected object with 'variant'");
  }
  const std::string variant = j.at("variant").get<std::string>();
  if (variant == "Ball") {
    return Ball(get_int(j, "n"), get_double(j, "r"));
  }
  if (variant == "Slab") {
    return Slab(get_int(j, "n"), get_double(j, "w"));
  }
  if (variant == "Cylinder") {
    return Cylinder(get_int(j, "k"), get_int(j, "l"), get_double(j, "w"));
  }
  if (variant == "FlyingSaucer") {
    return FlyingSaucer(get_int(j, "n"), get_double(j, "w"),
                        get_double(j, "x"));
  }
  if (variant == "SlabPolytope") {
    std::vector<SlabConstraint> cs;
    for (const auto& c : j.at("constraints")) {
      SlabConstraint sc;
      sc.direction = c.at("direction").get<std::vector<double>>();
      sc.halfwidth = c.at("halfwidth").get<double>();
      cs.push_back(std::move(sc));
    }
    return SlabPolytope(get_int(j, "n"), std::move(cs));
  }
  if (variant == "NormPreimage") {
    const auto rows = j.at("matrix").get<std::vector<std::vector<double>>>();
    if (rows.empty()) {
      throw std::invalid_argument("body config: NormPreimage matrix is empty");
    }
    const int image_dim = static_cast<int>(rows.size());
    const int dim = static_cast<int>(rows.front().size());
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(image_dim) * dim);
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != dim) {
        throw std::invalid_argument("body config: ragged NormPreimage matrix");
      }
      flat.insert(flat.end(), r.begin(), r.end());
    }
    return NormPreimage(dim, image_dim,
                        norm_tag_from_name(j.at("norm").get<std::string>()),
                        get_double(j, "level"), std::move(flat));
  }
  throw std::invalid_argument("body config: unknown variant '" + variant +
                              "'");
}

nlohmann::json body_to_json(const Body& body) {
  nlohmann::json j;
  std::visit(
      [&](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Ball>) {
          j = {{"variant", "Ball"}, {"n", b.dim}, {"r", b.radius}};
        } else if constexpr (std::is_same_v<T, Slab>) {
          j = {{"variant", "Slab"}, {"n", b.dim}, {"w", b.halfwidth}};
        } else if constexpr (std::is_same_v<T, Cylinder>) {
          j = {{"variant", "Cylinder"},
               {"k", b.radial_dim},
               {"l", b.free_dim},
               {"w", b.radius}};
        } else if constexpr (std::is_same_v<T, FlyingSaucer>) {
          j = {{"variant", "FlyingSaucer"},
               {"n", b.dim},
               {"w", b.w},
               {"x", b.x}};
        } else if constexpr (std::is_same_v<T, SlabPolytope>) {
          nlohmann::json cs = nlohmann::json::array();
          for (const SlabConstraint& c : b.constraints) {
            cs.push_back(
                {{"direction", c.direction}, {"halfwidth", c.halfwidth}});
          }
          j = {{"variant", "SlabPolytope"},
               {"n", b.dim},
               {"constraints", std::move(cs)}};
        } else {
          static_assert(std::is_same_v<T, NormPreimage>);
          nlohmann::json rows = nlohmann::json::array();
          for (int i = 0; i < b.image_dim; ++i) {
            rows.push_back(std::vector<double>(
                b.matrix.begin() + static_cast<std::size_t>(i) * b.dim,
                b.matrix.begin() + static_cast<std::size_t>(i + 1) * b.dim));
          }
          j = {{"variant", "NormPreimage"},
               {"norm", norm_tag_name(b.norm)},
               {"level", b.level},
               {"matrix", std::move(rows)}};
        }
      },
      body);
  return j;
}

Body body_from_json_text(const std::string& text) {
  return body_from_json(nlohmann::json::parse(text));
}

}  // namespace gaussdil
