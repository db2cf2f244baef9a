#include "vortexloop/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "vortexloop/errors.hpp"

namespace vortexloop::io {
namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw SchemaError(where + ": " + what);
}

void check_schema_tag(const Json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  if (auto it = j.find("schema"); it != j.end()) {
    if (!it->is_string() || it->get<std::string>() != kSchema)
      fail(where + ".schema", std::string("expected \"") + kSchema + "\"");
  }
}

const Json& member(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where + "." + key, "missing");
  return *it;
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(where, "not finite");
  return v;
}

std::vector<double> number_array(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of numbers");
  std::vector<double> v;
  v.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    v.push_back(number(j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

Point point(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) fail(where, "expected [x, y]");
  return {number(j[0], where + "[0]"), number(j[1], where + "[1]")};
}

Json point_json(Point p) { return Json::array({p.x, p.y}); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

Json parse(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

void write_file(const std::string& path, const Json& j) { write_text(path, dump(j)); }

Json to_json(const CircleForm& form) {
  if (form.kind() == CircleForm::Kind::Samples)
    return Json{{"kind", "samples"}, {"values", form.samples()}};
  const auto& s = form.series();
  return Json{{"kind", "trig"},
              {"coeffs", Json{{"a0", s.a0()}, {"cos", s.cos_coeffs()}, {"sin", s.sin_coeffs()}}}};
}

CircleForm form_from_json(const Json& j, const std::string& where) {
  check_schema_tag(j, where);
  const Json& kind = member(j, "kind", where);
  if (!kind.is_string()) fail(where + ".kind", "expected \"trig\" or \"samples\"");
  const auto k = kind.get<std::string>();
  if (k == "trig") {
    const std::string cw = where + ".coeffs";
    const Json& c = member(j, "coeffs", where);
    if (!c.is_object()) fail(cw, "expected an object");
    const double a0 = c.contains("a0") ? number(c["a0"], cw + ".a0") : 0.0;
    auto cs = c.contains("cos") ? number_array(c["cos"], cw + ".cos") : std::vector<double>{};
    auto ss = c.contains("sin") ? number_array(c["sin"], cw + ".sin") : std::vector<double>{};
    return CircleForm::trig(a0, std::move(cs), std::move(ss));
  }
  if (k == "samples") {
    auto v = number_array(member(j, "values", where), where + ".values");
    if (v.size() < 3) fail(where + ".values", "need at least 3 samples");
    return CircleForm::from_samples(std::move(v));
  }
  fail(where + ".kind", "unknown kind \"" + k + "\" (expected \"trig\" or \"samples\")");
}

Json to_json(const DecoratedLoop& loop) {
  Json samples = Json::array();
  for (const auto& p : loop.embedding().samples()) samples.push_back(point_json(p));
  return Json{{"schema", kSchema}, {"samples", std::move(samples)},
              {"beta", to_json(loop.decoration())}};
}

DecoratedLoop loop_from_json(const Json& j, const LoopLoadOptions& options) {
  check_schema_tag(j, "loop");
  const Json& s = member(j, "samples", "loop");
  if (!s.is_array()) fail("loop.samples", "expected an array of [x, y] pairs");
  std::vector<Point> pts;
  pts.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    pts.push_back(point(s[i], "loop.samples[" + std::to_string(i) + "]"));
  CircleForm beta = form_from_json(member(j, "beta", "loop"), "loop.beta");
  try {
    return DecoratedLoop(LoopEmbedding(pts), beta, options.zero_options);
  } catch (const OrientationError&) {
    if (!options.auto_orient) throw;
  }
  const std::size_t n = pts.size();
  std::vector<Point> rev(n);
  for (std::size_t i = 0; i < n; ++i) rev[i] = pts[(n - i) % n];
  return DecoratedLoop(LoopEmbedding(std::move(rev)), beta.reversed(), options.zero_options);
}

Json to_json(const PlanarHamiltonian& h) {
  Json bumps = Json::array();
  for (const auto& b : h.bumps())
    bumps.push_back(
        Json{{"center", point_json(b.center)}, {"sigma", b.sigma}, {"amplitude", b.amplitude}});
  return Json{{"schema", kSchema}, {"bumps", std::move(bumps)}};
}

PlanarHamiltonian hamiltonian_from_json(const Json& j) {
  check_schema_tag(j, "hamiltonian");
  const Json& b = member(j, "bumps", "hamiltonian");
  if (!b.is_array()) fail("hamiltonian.bumps", "expected an array");
  std::vector<Bump> bumps;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const std::string w = "hamiltonian.bumps[" + std::to_string(i) + "]";
    Bump bump;
    bump.center = point(member(b[i], "center", w), w + ".center");
    bump.sigma = number(member(b[i], "sigma", w), w + ".sigma");
    if (!(bump.sigma > 0.0)) fail(w + ".sigma", "must be positive");
    bump.amplitude = number(member(b[i], "amplitude", w), w + ".amplitude");
    bumps.push_back(bump);
  }
  return PlanarHamiltonian(std::move(bumps));
}

Json to_json(const CircleDiffeo& gamma) {
  return Json{{"schema", kSchema}, {"kind", "circle_diffeo"}, {"values", gamma.values()}};
}

CircleDiffeo diffeo_from_json(const Json& j) {
  check_schema_tag(j, "diffeo");
  auto v = number_array(member(j, "values", "diffeo"), "diffeo.values");
  if (v.size() < 4) fail("diffeo.values", "need at least 4 samples");
  return CircleDiffeo::from_samples(std::move(v));
}

Json to_json(const OrbitInvariants& inv) {
  return Json{{"schema", kSchema},
              {"area", inv.area},
              {"omegas", inv.profile.omegas},
              {"total", inv.profile.total},
              {"k", inv.profile.size()},
              {"ell", inv.step}};
}

Json to_json(const EquivalenceVerdict& v) {
  return Json{{"schema", kSchema},
              {"equivalent", v.equivalent},
              {"shifts", v.shifts},
              {"area_delta", v.area_delta}};
}

Json to_json(const FlowReport& r) {
  return Json{{"schema", kSchema},
              {"area_drift", r.area_drift},
              {"profile_drift", r.profile_drift},
              {"hamiltonian_drift", r.hamiltonian_drift},
              {"equivariance_residual", r.equivariance_residual},
              {"steps", r.steps},
              {"max_local_error", r.max_local_error}};
}

std::string series_csv(const FlowReport& report) {
  std::ostringstream os;
  os.precision(17);
  os << "step,t,area,hamiltonian,max_local_error\n";
  for (const auto& s : report.series)
    os << s.step << ',' << s.t << ',' << s.area << ',' << s.hamiltonian << ','
       << s.max_local_error << '\n';
  return os.str();
}

std::string overlay_svg(const DecoratedLoop& before, const DecoratedLoop& after) {
  double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x;
  double lo_y = lo_x, hi_y = -lo_x;
  for (const auto* l : {&before, &after})
    for (const auto& p : l->embedding().samples()) {
      lo_x = std::min(lo_x, p.x);
      hi_x = std::max(hi_x, p.x);
      lo_y = std::min(lo_y, p.y);
      hi_y = std::max(hi_y, p.y);
    }
  const double pad = 0.05 * std::max(hi_x - lo_x, hi_y - lo_y);
  const double size = 512.0;
  const double scale = size / (std::max(hi_x - lo_x, hi_y - lo_y) + 2 * pad);
  const auto sx = [&](Point p) { return fmt((p.x - lo_x + pad) * scale); };
  const auto sy = [&](Point p) { return fmt((hi_y - p.y + pad) * scale); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
     << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
  const auto curve = [&](const DecoratedLoop& l, const char* color) {
    os << "  <polygon fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& p : l.embedding().samples()) os << sx(p) << ',' << sy(p) << ' ';
    os << "\"/>\n";
    for (const auto& p : l.zero_images())
      os << "  <circle cx=\"" << sx(p) << "\" cy=\"" << sy(p) << "\" r=\"4\" fill=\"" << color
         << "\"/>\n";
  };
  curve(before, "#1f77b4");
  curve(after, "#d62728");
  os << "</svg>\n";
  return os.str();
}

}  // namespace vortexloop::io
