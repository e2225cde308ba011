#include "cqm/model.hpp"

#include <Eigen/Eigenvalues>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <boost/random/sobol.hpp>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace cqm {

namespace pt = boost::property_tree;

ValidationError::ValidationError(const std::string& what, std::vector<double> point)
    : std::runtime_error([&] {
        if (point.empty()) return what;
        std::ostringstream os;
        os.precision(10);
        os << what << " at (";
        for (std::size_t i = 0; i < point.size(); ++i) os << (i ? ", " : "") << point[i];
        os << ")";
        return os.str();
      }()),
      point_(std::move(point)) {}

std::string framework_name(Framework f) { return f == Framework::Galilei ? "galilei" : "einstein"; }

std::map<std::string, double> Model::constant_values() const {
  std::map<std::string, double> r;
  for (const auto& [k, v] : constants) r[k] = v.value;
  return r;
}

const ObserverSpec& Model::observer(const std::string& n) const {
  for (const auto& o : observers)
    if (o.name == n) return o;
  throw std::invalid_argument("model " + name + " has no observer '" + n + "'");
}

std::vector<std::vector<double>> Model::metric_at(std::span<const double> x) const {
  const std::size_t n = metric.size();
  std::vector<std::vector<double>> g(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g[i][j] = metric[i][j].value(x);
  return g;
}

std::vector<Point> Model::sample_points(int n) const {
  boost::random::sobol gen(4);
  const double span = double(gen.max() - gen.min()) + 1.0;
  gen.discard(4);  // the first point is the lower corner
  std::vector<Point> pts;
  for (int k = 0; k < n; ++k) {
    Point p(4);
    for (int d = 0; d < 4; ++d) {
      const double u = double(gen() - gen.min()) / span;
      p[d] = box.lo[d] + (box.hi[d] - box.lo[d]) * u;
    }
    pts.push_back(p);
  }
  return pts;
}

std::array<int, 3> inertia(const std::vector<std::vector<double>>& a, double tol) {
  const int n = static_cast<int>(a.size());
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = a[i][j];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  std::array<int, 3> r{0, 0, 0};
  for (int i = 0; i < n; ++i) {
    if (ev(i) < -tol * scale) ++r[0];
    else if (ev(i) > tol * scale) ++r[2];
    else ++r[1];
  }
  return r;
}

namespace {

std::string unquote(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

double parse_number(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParseError(what + ": expected a number, got '" + s + "'");
  }
  if (unquote(s.substr(used)).size()) throw ParseError(what + ": trailing text in '" + s + "'");
  return v;
}

const pt::ptree& section(const pt::ptree& root, const std::string& name, const std::string& origin) {
  const auto it = root.find(name);
  if (it == root.not_found()) throw ParseError(origin + ": missing section [" + name + "]");
  return it->second;
}

void reject_unknown(const pt::ptree& s, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [k, v] : s)
    if (!allowed.count(k)) throw ParseError(where + ": unknown key '" + k + "'");
}

}  // namespace

Model parse_model(const std::string& text, const std::string& origin) {
  pt::ptree root;
  try {
    std::istringstream is(text);
    pt::read_ini(is, root);
  } catch (const pt::ini_parser_error& e) {
    throw ParseError(origin + ": " + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  // the ini reader drops a trailing section without keys
  {
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
      const auto a = line.find_first_not_of(" \t\r");
      const auto b = line.find_last_not_of(" \t\r");
      if (a == std::string::npos || line[a] != '[' || line[b] != ']') continue;
      const std::string name = line.substr(a + 1, b - a - 1);
      if (root.find(name) == root.not_found()) root.push_back({name, pt::ptree()});
    }
  }

  Model m;
  const auto& ms = section(root, "model", origin);
  reject_unknown(ms, {"framework", "name"}, origin + " [model]");
  const std::string fw = unquote(ms.get<std::string>("framework", ""));
  if (fw == "galilei") m.framework = Framework::Galilei;
  else if (fw == "einstein") m.framework = Framework::Einstein;
  else throw ParseError(origin + ": framework must be galilei or einstein, got '" + fw + "'");
  m.name = unquote(ms.get<std::string>("name", ""));
  if (m.name.empty()) throw ParseError(origin + ": [model] needs a name");
  const bool einstein = m.framework == Framework::Einstein;

  const auto& bs = section(root, "box", origin);
  reject_unknown(bs, {"x0", "x1", "x2", "x3"}, origin + " [box]");
  m.box.lo.resize(4);
  m.box.hi.resize(4);
  for (int d = 0; d < 4; ++d) {
    const std::string key = "x" + std::to_string(d);
    const auto v = bs.get_optional<std::string>(key);
    if (!v) throw ParseError(origin + ": [box] missing " + key);
    const std::string s = unquote(*v);
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw ParseError(origin + ": [box] " + key + " must be \"min,max\"");
    m.box.lo[d] = parse_number(s.substr(0, comma), key);
    m.box.hi[d] = parse_number(s.substr(comma + 1), key);
    if (!(m.box.lo[d] < m.box.hi[d])) throw ParseError(origin + ": [box] " + key + " has min >= max");
  }

  const auto& cs = section(root, "constants", origin);
  for (const auto& [k, v] : cs) {
    const std::string s = unquote(v.data());
    const auto comma = s.find(',');
    Constant c;
    c.value = parse_number(s.substr(0, comma), k);
    try {
      c.dim = dims::Dimension::parse(comma == std::string::npos ? "" : unquote(s.substr(comma + 1)));
    } catch (const std::exception& e) {
      throw ParseError(origin + ": constant " + k + ": " + e.what());
    }
    if (k.size() >= 2 && k[0] == 'x' && k.find_first_not_of("0123456789", 1) == std::string::npos)
      throw ParseError(origin + ": constant name " + k + " collides with a coordinate");
    if (expr::functions().count(k)) throw ParseError(origin + ": constant name " + k + " collides with a function");
    m.constants[k] = c;
  }
  std::vector<std::pair<std::string, dims::Dimension>> required{
      {"m", dims::mass_dim()}, {"q", dims::charge_dim()}, {"hbar", dims::hbar_dim()}};
  if (einstein) required.push_back({"c", dims::light_dim()});
  for (const auto& [k, d] : required) {
    const auto it = m.constants.find(k);
    if (it == m.constants.end()) throw ParseError(origin + ": [constants] missing " + k);
    if (!(it->second.dim == d))
      throw ValidationError(origin + ": constant " + k + " has dimension '" + it->second.dim.str() + "', expected '" +
                            d.str() + "'");
  }
  m.m = m.constants["m"].value;
  m.q = m.constants["q"].value;
  m.hbar = m.constants["hbar"].value;
  if (einstein) m.c = m.constants["c"].value;
  if (m.m <= 0 || m.hbar <= 0 || (einstein && m.c <= 0))
    throw ValidationError(origin + ": m, hbar and c must be positive");

  std::set<std::string> names;
  for (const auto& [k, v] : m.constants) names.insert(k);
  const auto values = m.constant_values();
  auto field = [&](const std::string& where, const std::string& key, const std::string& src) {
    try {
      const auto e = expr::parse(src, names);
      m.sources[where + "." + key] = expr::print(e);
      return std::make_pair(e, expr::compile(e, values, 4, m.box));
    } catch (const expr::SyntaxError& err) {
      throw ParseError(origin + ": [" + where + "] " + key + ": " + err.what());
    } catch (const expr::UnknownIdentifier& err) {
      throw ParseError(origin + ": [" + where + "] " + key + ": " + err.what());
    } catch (const std::invalid_argument& err) {
      throw ParseError(origin + ": [" + where + "] " + key + ": " + err.what());
    }
  };

  const auto& gs = section(root, "metric", origin);
  const int lo = einstein ? 0 : 1, n = einstein ? 4 : 3;
  std::set<std::string> gkeys;
  for (int i = lo; i < lo + n; ++i)
    for (int j = i; j < lo + n; ++j) gkeys.insert("g" + std::to_string(i) + std::to_string(j));
  reject_unknown(gs, gkeys, origin + " [metric]");
  m.metric.assign(n, std::vector<ScalarField>(n));
  for (int i = lo; i < lo + n; ++i)
    for (int j = i; j < lo + n; ++j) {
      const std::string key = "g" + std::to_string(i) + std::to_string(j);
      const auto v = gs.get_optional<std::string>(key);
      if (!v && i == j) throw ParseError(origin + ": [metric] missing diagonal entry " + key);
      const ScalarField f = v ? field("metric", key, unquote(*v)).second : ScalarField::constant(4, 0.0);
      m.metric[i - lo][j - lo] = f;
      m.metric[j - lo][i - lo] = f;
    }

  const auto ait = root.find("empotential");
  for (int l = 0; l < 4; ++l) m.A[l] = ScalarField::constant(4, 0.0);
  if (ait != root.not_found()) {
    reject_unknown(ait->second, {"A0", "A1", "A2", "A3"}, origin + " [empotential]");
    for (int l = 0; l < 4; ++l) {
      const std::string key = "A" + std::to_string(l);
      if (const auto v = ait->second.get_optional<std::string>(key)) m.A[l] = field("empotential", key, unquote(*v)).second;
    }
  }

  const auto pit = root.find("gravPhi");
  if (pit != root.not_found()) {
    if (einstein) throw ParseError(origin + ": [gravPhi] is only meaningful for galilei models");
    std::set<std::string> keys;
    std::vector<ScalarField> comps;
    for (const auto& ij : combinations(4, 2)) {
      const std::string key = "Phi" + std::to_string(ij[0]) + std::to_string(ij[1]);
      keys.insert(key);
      const auto v = pit->second.get_optional<std::string>(key);
      comps.push_back(v ? field("gravPhi", key, unquote(*v)).second : ScalarField::constant(4, 0.0));
    }
    reject_unknown(pit->second, keys, origin + " [gravPhi]");
    m.phi_grav = PForm::from_components(4, 2, comps);
  } else {
    m.phi_grav = PForm::zero(4, 2);
  }

  for (const auto& [k, v] : root) {
    if (k.rfind("observer.", 0) == 0) {
      ObserverSpec o;
      o.name = k.substr(9);
      if (o.name.empty()) throw ParseError(origin + ": observer section without a name");
      reject_unknown(v, {"o1", "o2", "o3"}, origin + " [" + k + "]");
      for (int i = 0; i < 3; ++i) {
        const std::string key = "o" + std::to_string(i + 1);
        const std::string src = unquote(v.get<std::string>(key, "0"));
        auto [e, f] = field(k, key, src);
        o.source[i] = e;
        o.o[i] = f;
      }
      m.observers.push_back(std::move(o));
    } else if (k != "model" && k != "box" && k != "constants" && k != "metric" && k != "empotential" &&
               k != "gravPhi") {
      throw ParseError(origin + ": unknown section [" + k + "]");
    }
  }
  return m;
}

Model load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open model file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  Model m = parse_model(ss.str(), path);
  validate(m);
  return m;
}

void validate(const Model& m, int points) {
  const bool einstein = m.framework == Framework::Einstein;
  const PForm dphi = exterior_derivative(m.phi_grav);
  for (const Point& p : m.sample_points(points)) {
    const auto g = m.metric_at(p);
    const auto in = inertia(g);
    if (einstein) {
      if (in != std::array<int, 3>{1, 0, 3})
        throw ValidationError(m.name + ": metric does not have signature (-+++)", p);
    } else if (in != std::array<int, 3>{0, 0, 3}) {
      throw ValidationError(m.name + ": spatial metric is not positive definite", p);
    }
    double scale = 1.0;
    for (double v : m.phi_grav.values(p)) scale = std::max(scale, std::abs(v));
    for (double v : dphi.values(p))
      if (std::abs(v) > 1e-10 * scale) throw ValidationError(m.name + ": gravitational 2-form is not closed", p);
    for (const auto& o : m.observers) {
      double v[3];
      for (int i = 0; i < 3; ++i) {
        v[i] = o.o[i].value(p);
        if (!std::isfinite(v[i])) throw ValidationError(m.name + ": observer " + o.name + " is not finite", p);
      }
      if (einstein) {
        double r = g[0][0];
        for (int i = 0; i < 3; ++i) {
          r += 2 * g[0][i + 1] * v[i];
          for (int j = 0; j < 3; ++j) r += g[i + 1][j + 1] * v[i] * v[j];
        }
        if (!(r < 0)) throw ValidationError(m.name + ": observer " + o.name + " is not timelike", p);
      }
    }
  }
}

}  // namespace cqm
