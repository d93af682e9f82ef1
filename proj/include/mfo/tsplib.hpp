#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mfo::tsp {

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

/// City label type. Labels are 1-based, as in TSPLIB files.
using City = std::int32_t;

/// A permutation of {1, ..., n}.
struct Tour {
  std::vector<City> order;
};

/// True iff `order` holds every label 1..order.size() exactly once.
bool is_permutation(std::span<const City> order);

/// TSPLIB EUC_2D distance: Euclidean distance rounded to the nearest integer,
/// halves rounded up (TSPLIB's nint).
std::int32_t euc2d(const Point& a, const Point& b);

/// Immutable EUC_2D instance with an eagerly built dense distance matrix.
///
/// The matrix has stride dimension()+1 so that 1-based labels index it
/// directly; row 0 and column 0 are unused padding.
class TspInstance {
 public:
  TspInstance(std::string name, std::vector<Point> coords);

  const std::string& name() const { return name_; }
  std::size_t dimension() const { return coords_.size(); }
  std::span<const Point> coords() const { return coords_; }
  const Point& coord(City c) const { return coords_[static_cast<std::size_t>(c) - 1]; }

  std::int32_t distance(City a, City b) const {
    return matrix_[static_cast<std::size_t>(a) * stride_ + static_cast<std::size_t>(b)];
  }

  const std::int32_t* matrix_data() const { return matrix_.data(); }
  std::size_t matrix_stride() const { return stride_; }

 private:
  std::string name_;
  std::vector<Point> coords_;
  std::size_t stride_;
  std::vector<std::int32_t> matrix_;
};

/// Parses TSPLIB text (keyword/value header plus NODE_COORD_SECTION).
/// Throws ParseError on malformed content and UnsupportedFormatError for
/// anything other than TYPE TSP with EDGE_WEIGHT_TYPE EUC_2D.
TspInstance parse_tsplib(std::string_view text);

TspInstance load_tsplib(const std::filesystem::path& path);

/// Parses a `.opt.tour` file: TOUR_SECTION labels terminated by -1 or EOF.
Tour parse_tour(std::string_view text);

Tour load_tour(const std::filesystem::path& path);

/// Closed tour length. Throws DimensionMismatchError when the tour does not
/// have exactly instance.dimension() entries.
std::int64_t tour_length(const TspInstance& instance, std::span<const City> order);

inline std::int64_t tour_length(const TspInstance& instance, const Tour& tour) {
  return tour_length(instance, tour.order);
}

enum class OverlapMetric {
  // 2|A∩B| / (|A| + |B|): the share of all nodes that sit in the intersection.
  kDice,
  // |A∩B| / min(|A|, |B|): the share of the smaller instance that is shared.
  kMinDimension,
};

std::string_view overlap_metric_name(OverlapMetric metric);

/// Number of coordinates present in both instances (exact comparison).
std::size_t shared_node_count(const TspInstance& a, const TspInstance& b);

/// Percentage in [0, 100] of nodes the two instances share by coordinate.
double node_overlap(const TspInstance& a, const TspInstance& b,
                    OverlapMetric metric = OverlapMetric::kDice);

}  // namespace mfo::tsp
