#include "hardy/domain_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hardy/error.hpp"

namespace hardy {
namespace {

using nlohmann::json;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidSpec, "domain spec: " + what); }

const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

double number(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number()) bad(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

Complex complex(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    bad(std::string("field '") + key + "' must be [re, im]");
  return {v[0].get<double>(), v[1].get<double>()};
}

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Obstacle obstacle_from_json(const json& j) {
  if (!j.is_object()) bad("obstacles must be objects");
  const json& type = field(j, "type");
  if (!type.is_string()) bad("obstacle type must be a string");
  const auto t = type.get<std::string>();
  if (t == "closed_disk") return ClosedDisk{complex(j, "center"), number(j, "radius")};
  if (t == "segment") return Segment{complex(j, "from"), complex(j, "to")};
  if (t == "point") return Point{complex(j, "at")};
  bad("unknown obstacle type '" + t + "'");
}

DomainKind kind_from_json(const json& j) {
  const json& kind = field(j, "kind");
  if (!kind.is_string()) bad("'kind' must be a string");
  const auto k = kind.get<std::string>();
  if (k == "disk") return Disk{complex(j, "center"), number(j, "radius")};
  if (k == "sector") return Sector{complex(j, "vertex"), number(j, "bisector_angle"), number(j, "half_angle")};
  if (k == "slit_plane") return SlitPlane{complex(j, "tip"), number(j, "ray_angle")};
  if (k == "strip") return Strip{complex(j, "anchor"), number(j, "direction"), number(j, "half_width")};
  if (k == "exterior_of_disk") return ExteriorOfDisk{complex(j, "center"), number(j, "radius")};
  if (k == "complement_of") {
    const json& obs = field(j, "obstacles");
    if (!obs.is_array()) bad("'obstacles' must be an array");
    ComplementOf c;
    for (const json& o : obs) c.obstacles.push_back(obstacle_from_json(o));
    return c;
  }
  bad("unknown kind '" + k + "'");
}

}  // namespace

DomainSpec parse_domain_spec(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object()) bad("top level must be an object");
  return DomainSpec(kind_from_json(j), complex(j, "base_point"));
}

std::string dump_domain_spec(const DomainSpec& spec, int indent) {
  json j = json::object();
  j["kind"] = spec.kind_name();
  std::visit(Overloaded{
                 [&](const Disk& d) {
                   j["center"] = to_json(d.center);
                   j["radius"] = d.radius;
                 },
                 [&](const Sector& s) {
                   j["vertex"] = to_json(s.vertex);
                   j["bisector_angle"] = s.bisector_angle;
                   j["half_angle"] = s.half_angle;
                 },
                 [&](const SlitPlane& s) {
                   j["tip"] = to_json(s.tip);
                   j["ray_angle"] = s.ray_angle;
                 },
                 [&](const Strip& s) {
                   j["anchor"] = to_json(s.anchor);
                   j["direction"] = s.direction;
                   j["half_width"] = s.half_width;
                 },
                 [&](const ExteriorOfDisk& d) {
                   j["center"] = to_json(d.center);
                   j["radius"] = d.radius;
                 },
                 [&](const ComplementOf& c) {
                   json obs = json::array();
                   for (const Obstacle& o : c.obstacles) {
                     obs.push_back(std::visit(
                         Overloaded{
                             [](const ClosedDisk& d) {
                               return json{{"type", "closed_disk"}, {"center", to_json(d.center)}, {"radius", d.radius}};
                             },
                             [](const Segment& s) {
                               return json{{"type", "segment"}, {"from", to_json(s.from)}, {"to", to_json(s.to)}};
                             },
                             [](const Point& p) { return json{{"type", "point"}, {"at", to_json(p.at)}}; },
                         },
                         o));
                   }
                   j["obstacles"] = std::move(obs);
                 },
             },
             spec.kind());
  j["base_point"] = to_json(spec.base_point());
  return j.dump(indent);
}

DomainSpec load_domain_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read domain spec '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_domain_spec(ss.str());
}

}  // namespace hardy
