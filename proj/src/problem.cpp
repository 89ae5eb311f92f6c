#include "bap/problem.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace bap {

namespace {

using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

Vec parse_vec(const json& j, const char* what) {
  if (!j.is_array()) throw problem_error(std::string(what) + ": expected array");
  Vec v;
  v.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_number())
      throw problem_error(std::string(what) + ": expected number");
    v.push_back(e.get<double>());
  }
  return v;
}

// Box bound arrays use null for an unbounded entry.
Vec parse_bound(const json& j, double unbounded, const char* what) {
  if (!j.is_array()) throw problem_error(std::string(what) + ": expected array");
  Vec v;
  v.reserve(j.size());
  for (const auto& e : j) {
    if (e.is_null())
      v.push_back(unbounded);
    else if (e.is_number())
      v.push_back(e.get<double>());
    else
      throw problem_error(std::string(what) + ": expected number or null");
  }
  return v;
}

Halfspace parse_halfspace(const json& j) {
  if (!j.contains("normal") || !j.contains("offset"))
    throw problem_error("halfspace: missing normal/offset");
  return Halfspace{parse_vec(j["normal"], "halfspace.normal"),
                   j["offset"].get<double>()};
}

SetSpec parse_set(const json& j) {
  if (!j.is_object() || !j.contains("type"))
    throw problem_error("set: missing type");
  std::string type = j["type"].get<std::string>();
  if (type == "halfspace") return parse_halfspace(j);
  if (type == "box") {
    if (!j.contains("lower") || !j.contains("upper"))
      throw problem_error("box: missing lower/upper");
    return Box{parse_bound(j["lower"], -kInf, "box.lower"),
               parse_bound(j["upper"], kInf, "box.upper")};
  }
  if (type == "ball") {
    if (!j.contains("center") || !j.contains("radius"))
      throw problem_error("ball: missing center/radius");
    return Ball{parse_vec(j["center"], "ball.center"),
                j["radius"].get<double>()};
  }
  if (type == "paired") {
    if (!j.contains("first") || !j.contains("second"))
      throw problem_error("paired: missing first/second");
    return PairedHalfspaces{parse_halfspace(j["first"]),
                            parse_halfspace(j["second"])};
  }
  throw problem_error("set: unknown type '" + type + "'");
}

json vec_to_json(const Vec& v) {
  json j = json::array();
  for (double x : v) j.push_back(x);
  return j;
}

json bound_to_json(const Vec& v, double unbounded) {
  json j = json::array();
  for (double x : v) {
    if (x == unbounded)
      j.push_back(nullptr);
    else
      j.push_back(x);
  }
  return j;
}

json halfspace_to_json(const Halfspace& h) {
  return json{{"type", "halfspace"},
              {"normal", vec_to_json(h.normal)},
              {"offset", h.offset}};
}

json set_to_json(const SetSpec& s) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Halfspace>) {
          return halfspace_to_json(v);
        } else if constexpr (std::is_same_v<T, Box>) {
          return json{{"type", "box"},
                      {"lower", bound_to_json(v.lower, -kInf)},
                      {"upper", bound_to_json(v.upper, kInf)}};
        } else if constexpr (std::is_same_v<T, Ball>) {
          return json{{"type", "ball"},
                      {"center", vec_to_json(v.center)},
                      {"radius", v.radius}};
        } else {
          json h1 = halfspace_to_json(v.first);
          json h2 = halfspace_to_json(v.second);
          h1.erase("type");
          h2.erase("type");
          return json{{"type", "paired"}, {"first", h1}, {"second", h2}};
        }
      },
      s);
}

}  // namespace

void validate_problem(const Problem& p) {
  if (p.dimension < 1) throw problem_error("problem: dimension must be >= 1");
  if (p.m() < 1) throw problem_error("problem: needs at least one constraint");
  for (std::size_t i = 0; i < p.m(); ++i) {
    for (const SetSpec* s : {&p.A(i), &p.B(i)}) {
      try {
        validate_set(*s);
      } catch (const std::invalid_argument& e) {
        throw problem_error("constraint " + std::to_string(i) + ": " +
                            e.what());
      }
      if (set_dim(*s) != p.dimension)
        throw problem_error("constraint " + std::to_string(i) +
                            ": dimension mismatch");
    }
  }
  if (p.known_solution) {
    const Pair& z = *p.known_solution;
    if (z.x.size() != p.dimension || z.y.size() != p.dimension)
      throw problem_error("known_solution: dimension mismatch");
    for (std::size_t i = 0; i < p.m(); ++i) {
      if (distance(p.A(i), z.x) > 1e-9 || distance(p.B(i), z.y) > 1e-9)
        throw problem_error("known_solution: infeasible for constraint " +
                            std::to_string(i));
    }
  }
}

Problem parse_problem(const std::string& json_text) {
  Problem p;
  try {
    json j = json::parse(json_text);
    if (!j.is_object() || !j.contains("dimension") ||
        !j["dimension"].is_number_integer())
      throw problem_error("problem: missing integer dimension");
    long long dim = j["dimension"].get<long long>();
    if (dim < 1) throw problem_error("problem: dimension must be >= 1");
    p.dimension = static_cast<std::size_t>(dim);

    std::vector<SetSpec> A, B;
    for (const char* side : {"A", "B"}) {
      auto& dst = (*side == 'A') ? A : B;
      if (!j.contains(side)) continue;
      if (!j[side].is_array())
        throw problem_error(std::string(side) + ": expected array");
      for (const auto& e : j[side]) dst.push_back(parse_set(e));
    }
    while (A.size() < B.size()) A.push_back(whole_space(p.dimension));
    while (B.size() < A.size()) B.push_back(whole_space(p.dimension));
    for (std::size_t i = 0; i < A.size(); ++i)
      p.constraints.push_back({std::move(A[i]), std::move(B[i])});

    if (j.contains("known_solution")) {
      const auto& ks = j["known_solution"];
      if (!ks.is_object() || !ks.contains("x") || !ks.contains("y"))
        throw problem_error("known_solution: expected {x, y}");
      p.known_solution = Pair{parse_vec(ks["x"], "known_solution.x"),
                              parse_vec(ks["y"], "known_solution.y")};
    }
  } catch (const json::exception& e) {
    throw problem_error(std::string("problem parse error: ") + e.what());
  }
  validate_problem(p);
  return p;
}

std::string serialize_problem(const Problem& p) {
  json j;
  j["dimension"] = p.dimension;
  json A = json::array(), B = json::array();
  for (const auto& c : p.constraints) {
    A.push_back(set_to_json(c.a_side));
    B.push_back(set_to_json(c.b_side));
  }
  j["A"] = A;
  j["B"] = B;
  if (p.known_solution) {
    j["known_solution"] = {{"x", vec_to_json(p.known_solution->x)},
                           {"y", vec_to_json(p.known_solution->y)}};
  }
  return j.dump(2) + "\n";
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw problem_error("cannot open problem file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

Problem builtin_toy() {
  Problem p;
  p.dimension = 2;
  auto hs = [](double a0, double a1, double b) {
    return SetSpec{Halfspace{{a0, a1}, b}};
  };
  SetSpec A[4] = {hs(4, 3, 17), hs(1, 0, -4), hs(1, 1, -11), hs(0, 1, -5)};
  SetSpec B[4] = {hs(5, -4, 30), hs(1, -2, 0), hs(-1, -4, -24), hs(-2, -1, -13)};
  for (int i = 0; i < 4; ++i) p.constraints.push_back({A[i], B[i]});
  p.known_solution = Pair{{-6.0, -5.0}, {4.0, 5.0}};
  validate_problem(p);
  return p;
}

Problem builtin_boxes(std::size_t n) {
  if (n < 1) throw std::invalid_argument("builtin_boxes: n must be >= 1");
  Problem p;
  p.dimension = n;
  for (std::size_t i = 0; i < n; ++i) {
    Vec ai(n, 0.0), bi(n, 0.0);
    ai[i] = -1.0;  // -x_i <= -5, i.e. x_i >= 5
    bi[i] = 1.0;   //  x_i <= -5
    p.constraints.push_back(
        {SetSpec{Halfspace{ai, -5.0}}, SetSpec{Halfspace{bi, -5.0}}});
  }
  p.known_solution = Pair{Vec(n, 5.0), Vec(n, -5.0)};
  validate_problem(p);
  return p;
}

Problem apply_pairing(
    const Problem& p,
    const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  std::vector<bool> used(p.m(), false);
  for (auto [i, j] : pairs) {
    if (i >= p.m() || j >= p.m() || i == j)
      throw std::invalid_argument("pairing: bad index pair");
    if (used[i] || used[j])
      throw std::invalid_argument("pairing: index used twice");
    used[i] = used[j] = true;
    for (const SetSpec* s : {&p.A(i), &p.A(j), &p.B(i), &p.B(j)})
      if (!std::holds_alternative<Halfspace>(*s))
        throw std::invalid_argument("pairing: constraints must be halfspaces");
  }
  Problem q;
  q.dimension = p.dimension;
  q.known_solution = p.known_solution;
  for (auto [i, j] : pairs) {
    q.constraints.push_back(
        {SetSpec{PairedHalfspaces{std::get<Halfspace>(p.A(i)),
                                  std::get<Halfspace>(p.A(j))}},
         SetSpec{PairedHalfspaces{std::get<Halfspace>(p.B(i)),
                                  std::get<Halfspace>(p.B(j))}}});
  }
  for (std::size_t k = 0; k < p.m(); ++k)
    if (!used[k]) q.constraints.push_back(p.constraints[k]);
  validate_problem(q);
  return q;
}

}  // namespace bap
