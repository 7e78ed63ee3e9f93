#include "jra/instance.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

namespace jra {

double distance(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

namespace {

void check_coords(const std::vector<Point>& pts, const char* field) {
  for (const Point& p : pts) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw SchemaError(std::string("non-finite coordinate in field '") + field + "'");
    }
  }
}

}  // namespace

Instance::Instance(std::vector<Point> items, std::vector<Point> placeholders,
                   bool fixed_pair, double area)
    : n_(static_cast<int>(items.size())),
      items_(std::move(items)),
      placeholders_(std::move(placeholders)),
      fixed_pair_(fixed_pair),
      area_(area) {
  if (n_ < 2) {
    throw InvalidInstanceError("instance requires n >= 2 pairs, got n=" + std::to_string(n_));
  }
  if (placeholders_.size() != items_.size()) {
    throw InvalidInstanceError("placeholder count != n");
  }
  if (!(area_ > 0.0) || !std::isfinite(area_)) {
    throw InvalidInstanceError("domain area must be positive");
  }
  check_coords(items_, "items");
  check_coords(placeholders_, "placeholders");
}

Instance Instance::generate(int n, std::uint64_t seed, double area) {
  if (n < 2) {
    throw InvalidInstanceError("generate requires n >= 2, got n=" + std::to_string(n));
  }
  if (!(area > 0.0)) {
    throw InvalidInstanceError("generate requires a positive area");
  }
  std::mt19937_64 rng(seed);
  // mt19937_64 output is fully specified, so drawing doubles this way is
  // reproducible across platforms, unlike uniform_real_distribution.
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  const double side = std::sqrt(area);
  std::vector<Point> items(n), placeholders(n);
  for (int i = 0; i < n; ++i) {
    items[i] = {unit() * side, unit() * side};
  }
  for (int i = 0; i < n; ++i) {
    placeholders[i] = {unit() * side, unit() * side};
  }
  return Instance(std::move(items), std::move(placeholders), true, area);
}

const Point& Instance::coord(NodeId v) const {
  if (is_item(v)) {
    return items_[v - 1];
  }
  if (is_placeholder(v)) {
    return placeholders_[v - n_ - 1];
  }
  throw ValidationError("node id " + std::to_string(v) + " out of range [1, " +
                        std::to_string(2 * n_) + "]");
}

double Instance::cost(NodeId item, NodeId placeholder) const {
  if (!is_item(item) || !is_placeholder(placeholder)) {
    throw NonConnectableError("cost requires an (item, placeholder) pair, got (" +
                              std::to_string(item) + ", " + std::to_string(placeholder) + ")");
  }
  if (!cache_.empty()) {
    return cache_[static_cast<std::size_t>(item - 1) * n_ + (placeholder - n_ - 1)];
  }
  return distance(items_[item - 1], placeholders_[placeholder - n_ - 1]);
}

void Instance::build_cost_cache() {
  if (n_ > 2000) {
    throw InvalidInstanceError("dense cost cache is limited to n <= 2000");
  }
  cache_.resize(static_cast<std::size_t>(n_) * n_);
  for (int i = 0; i < n_; ++i) {
    for (int p = 0; p < n_; ++p) {
      cache_[static_cast<std::size_t>(i) * n_ + p] = distance(items_[i], placeholders_[p]);
    }
  }
}

bool Instance::operator==(const Instance& other) const {
  auto same = [](const std::vector<Point>& a, const std::vector<Point>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].x != b[i].x || a[i].y != b[i].y) return false;
    }
    return true;
  };
  return n_ == other.n_ && fixed_pair_ == other.fixed_pair_ && area_ == other.area_ &&
         same(items_, other.items_) && same(placeholders_, other.placeholders_);
}

namespace {

std::vector<Point> parse_points(const nlohmann::json& j, const char* field, int expected,
                                const char* count_msg) {
  if (!j.contains(field) || !j[field].is_array()) {
    throw SchemaError(std::string("missing or non-array field '") + field + "'");
  }
  const auto& arr = j[field];
  if (expected >= 0 && static_cast<int>(arr.size()) != expected) {
    throw SchemaError(count_msg);
  }
  std::vector<Point> pts;
  pts.reserve(arr.size());
  for (const auto& e : arr) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw SchemaError(std::string("field '") + field + "' must contain [x, y] pairs");
    }
    pts.push_back({e[0].get<double>(), e[1].get<double>()});
  }
  check_coords(pts, field);
  return pts;
}

}  // namespace

Instance Instance::from_json_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.contains("n") || !j["n"].is_number_integer()) {
    throw SchemaError("missing or non-integer field 'n'");
  }
  const int n = j["n"].get<int>();
  auto items = parse_points(j, "items", n, "item count != n");
  auto placeholders = parse_points(j, "placeholders", n, "placeholder count != n");
  const bool fixed_pair = j.value("fixed_pair", true);
  const double area = j.value("area", 1.0);
  if (!j.value("fixed_pair", nlohmann::json(true)).is_boolean()) {
    throw SchemaError("field 'fixed_pair' must be a boolean");
  }
  try {
    return Instance(std::move(items), std::move(placeholders), fixed_pair, area);
  } catch (const InvalidInstanceError& e) {
    throw SchemaError(e.what());
  }
}

std::string Instance::to_json_string() const {
  nlohmann::json j;
  j["n"] = n_;
  auto dump_points = [](const std::vector<Point>& pts) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Point& p : pts) {
      arr.push_back({p.x, p.y});
    }
    return arr;
  };
  j["items"] = dump_points(items_);
  j["placeholders"] = dump_points(placeholders_);
  j["fixed_pair"] = fixed_pair_;
  j["area"] = area_;
  return j.dump(2) + "\n";
}

Instance Instance::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) {
    throw SchemaError("cannot open instance file: " + file.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_string(buf.str());
}

void Instance::save(const std::filesystem::path& file) const {
  std::ofstream out(file, std::ios::binary);
  if (!out) {
    throw Error("cannot write instance file: " + file.string());
  }
  out << to_json_string();
}

}  // namespace jra
