#include "mfo/tsplib.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <utility>

#include "mfo/errors.hpp"
#include "mfo/kernels.hpp"

namespace mfo::tsp {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

// Splits a header line "KEY : VALUE" / "KEY: VALUE" / "KEY" into parts.
std::pair<std::string, std::string_view> split_keyword(std::string_view line) {
  const auto colon = line.find(':');
  if (colon == std::string_view::npos) return {upper(trim(line)), {}};
  return {upper(trim(line.substr(0, colon))), trim(line.substr(colon + 1))};
}

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  std::optional<std::string_view> next() {
    if (pos_ >= text_.size()) return std::nullopt;
    auto end = text_.find('\n', pos_);
    if (end == std::string_view::npos) end = text_.size();
    auto line = text_.substr(pos_, end - pos_);
    pos_ = end + 1;
    ++line_no_;
    return line;
  }

  std::size_t line_no() const { return line_no_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 0;
};

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <typename T>
std::optional<T> parse_number(std::string_view s) {
  T value{};
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string at_line(const LineReader& r) { return " (line " + std::to_string(r.line_no()) + ")"; }

}  // namespace

bool is_permutation(std::span<const City> order) {
  std::vector<bool> seen(order.size() + 1, false);
  for (City c : order) {
    if (c < 1 || static_cast<std::size_t>(c) > order.size() || seen[static_cast<std::size_t>(c)]) {
      return false;
    }
    seen[static_cast<std::size_t>(c)] = true;
  }
  return true;
}

std::int32_t euc2d(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return static_cast<std::int32_t>(std::sqrt(dx * dx + dy * dy) + 0.5);
}

TspInstance::TspInstance(std::string name, std::vector<Point> coords)
    : name_(std::move(name)), coords_(std::move(coords)), stride_(coords_.size() + 1) {
  if (coords_.empty()) throw ParseError("instance '" + name_ + "' has no cities");
  const std::size_t n = coords_.size();
  matrix_.assign(stride_ * stride_, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::int32_t d = euc2d(coords_[i], coords_[j]);
      matrix_[(i + 1) * stride_ + (j + 1)] = d;
      matrix_[(j + 1) * stride_ + (i + 1)] = d;
    }
  }
}

TspInstance parse_tsplib(std::string_view text) {
  LineReader reader(text);
  std::string name = "unnamed";
  std::optional<std::size_t> dimension;
  std::optional<std::string> weight_type;
  bool in_coords = false;
  std::vector<std::optional<Point>> coords;
  std::size_t coord_count = 0;

  while (auto raw = reader.next()) {
    const auto line = trim(*raw);
    if (line.empty()) continue;

    if (in_coords) {
      const auto tok = tokens(line);
      if (upper(tok[0]) == "EOF") break;
      if (!std::isdigit(static_cast<unsigned char>(tok[0][0]))) {
        // Another section begins; coordinates are complete.
        in_coords = false;
      } else {
        if (tok.size() < 3) throw ParseError("malformed coordinate line" + at_line(reader));
        const auto id = parse_number<std::size_t>(tok[0]);
        const auto x = parse_number<double>(tok[1]);
        const auto y = parse_number<double>(tok[2]);
        if (!id || !x || !y) throw ParseError("malformed coordinate line" + at_line(reader));
        if (*id < 1 || *id > *dimension) {
          throw ParseError("node id " + std::to_string(*id) + " outside 1.." +
                           std::to_string(*dimension) + at_line(reader));
        }
        if (coords[*id - 1]) throw ParseError("duplicate node id" + at_line(reader));
        coords[*id - 1] = Point{*x, *y};
        ++coord_count;
        continue;
      }
    }

    auto [key, value] = split_keyword(line);
    if (key == "EOF") break;
    if (key == "NAME") {
      name = std::string(value);
    } else if (key == "TYPE") {
      const auto type = upper(value);
      if (type != "TSP") throw UnsupportedFormatError("unsupported problem TYPE '" + type + "'");
    } else if (key == "DIMENSION") {
      dimension = parse_number<std::size_t>(value);
      if (!dimension || *dimension == 0) throw ParseError("invalid DIMENSION" + at_line(reader));
    } else if (key == "EDGE_WEIGHT_TYPE") {
      weight_type = upper(value);
      if (*weight_type != "EUC_2D") {
        throw UnsupportedFormatError("unsupported EDGE_WEIGHT_TYPE '" + *weight_type +
                                     "'; only EUC_2D is supported");
      }
    } else if (key == "NODE_COORD_SECTION") {
      if (!dimension) throw ParseError("NODE_COORD_SECTION before DIMENSION");
      if (!weight_type) throw UnsupportedFormatError("missing EDGE_WEIGHT_TYPE; only EUC_2D is supported");
      coords.assign(*dimension, std::nullopt);
      in_coords = true;
    } else if (key.ends_with("_SECTION")) {
      throw UnsupportedFormatError("unsupported section " + key);
    }
    // Other keywords (COMMENT, NODE_COORD_TYPE, DISPLAY_DATA_TYPE, ...) are ignored.
  }

  if (!dimension) throw ParseError("missing DIMENSION");
  if (!weight_type) throw UnsupportedFormatError("missing EDGE_WEIGHT_TYPE; only EUC_2D is supported");
  if (coord_count != *dimension) {
    throw ParseError("DIMENSION is " + std::to_string(*dimension) + " but " +
                     std::to_string(coord_count) + " coordinates were listed");
  }

  std::vector<Point> points;
  points.reserve(coords.size());
  for (const auto& p : coords) points.push_back(*p);
  return TspInstance(std::move(name), std::move(points));
}

TspInstance load_tsplib(const std::filesystem::path& path) { return parse_tsplib(read_file(path)); }

Tour parse_tour(std::string_view text) {
  LineReader reader(text);
  std::optional<std::size_t> dimension;
  bool in_tour = false;
  Tour tour;
  while (auto raw = reader.next()) {
    const auto line = trim(*raw);
    if (line.empty()) continue;
    if (!in_tour) {
      auto [key, value] = split_keyword(line);
      if (key == "EOF") break;
      if (key == "DIMENSION") dimension = parse_number<std::size_t>(value);
      if (key == "TOUR_SECTION") in_tour = true;
      continue;
    }
    bool done = false;
    for (auto tok : tokens(line)) {
      if (upper(tok) == "EOF") { done = true; break; }
      const auto v = parse_number<long>(tok);
      if (!v) throw ParseError("malformed tour entry '" + std::string(tok) + "'" + at_line(reader));
      if (*v == -1) { done = true; break; }
      tour.order.push_back(static_cast<City>(*v));
    }
    if (done) break;
  }
  if (tour.order.empty()) throw ParseError("tour file has no TOUR_SECTION entries");
  if (dimension && *dimension != tour.order.size()) {
    throw ParseError("tour DIMENSION is " + std::to_string(*dimension) + " but lists " +
                     std::to_string(tour.order.size()) + " cities");
  }
  if (!is_permutation(tour.order)) throw ParseError("tour is not a permutation of 1..n");
  return tour;
}

Tour load_tour(const std::filesystem::path& path) { return parse_tour(read_file(path)); }

std::int64_t tour_length(const TspInstance& instance, std::span<const City> order) {
  if (order.size() != instance.dimension()) {
    throw DimensionMismatchError("tour has " + std::to_string(order.size()) +
                                 " cities but instance '" + instance.name() + "' has " +
                                 std::to_string(instance.dimension()));
  }
  return kernels::cycle_length(instance.matrix_data(), instance.matrix_stride(), order);
}

std::string_view overlap_metric_name(OverlapMetric metric) {
  switch (metric) {
    case OverlapMetric::kDice: return "dice";
    case OverlapMetric::kMinDimension: return "min-dimension";
  }
  return "unknown";
}

std::size_t shared_node_count(const TspInstance& a, const TspInstance& b) {
  auto key = [](const Point& p) { return std::pair{p.x, p.y}; };
  std::set<std::pair<double, double>> in_a;
  for (const auto& p : a.coords()) in_a.insert(key(p));
  std::set<std::pair<double, double>> counted;
  std::size_t shared = 0;
  for (const auto& p : b.coords()) {
    if (in_a.contains(key(p)) && counted.insert(key(p)).second) ++shared;
  }
  return shared;
}

double node_overlap(const TspInstance& a, const TspInstance& b, OverlapMetric metric) {
  const auto shared = static_cast<double>(shared_node_count(a, b));
  const auto da = static_cast<double>(a.dimension());
  const auto db = static_cast<double>(b.dimension());
  switch (metric) {
    case OverlapMetric::kDice: return 100.0 * 2.0 * shared / (da + db);
    case OverlapMetric::kMinDimension: return 100.0 * shared / std::min(da, db);
  }
  return 0.0;
}

}  // namespace mfo::tsp
