#pragma once

#include <cstdint>
#include <numbers>
#include <variant>
#include <vector>

namespace swan {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

// Boundary tolerance (meters) for feasibility predicates, so grid endpoints
// are never rejected by floating-point noise.
inline constexpr double kFeasibilityTol = 1e-12;

/// Radio and geometry parameters shared by every computation. All powers are
/// kept in watts internally; dBm appears only at config I/O.
struct SystemConfig {
  double carrier_frequency_hz = 28e9;
  double n_eff = 1.4;                 // effective refractive index of the guide
  double min_spacing_m = 0.0;         // minimum inter-antenna spacing
  double deploy_height_m = 3.0;       // waveguide height above the user plane
  double attenuation_db_per_m = 0.0;  // average in-guide attenuation
  double noise_power_w = 1e-12;

  double wavelength() const { return kSpeedOfLight / carrier_frequency_hz; }
  double guided_wavelength() const { return wavelength() / n_eff; }
  double wavenumber() const { return 2.0 * std::numbers::pi / wavelength(); }
  // Free-space aperture constant: lambda^2 / (16 pi^2), in m^2.
  double eta() const {
    const double lam = wavelength();
    return lam * lam / (16.0 * std::numbers::pi * std::numbers::pi);
  }

  // Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

/// M abutting segments of length L along the x-axis, each fed at its left end.
struct WaveguideLayout {
  int num_segments = 1;
  double segment_length_m = 1.0;
  double first_feed_m = 0.0;

  double feed(int segment) const {
    return first_feed_m + segment * segment_length_m;
  }
  double span() const { return num_segments * segment_length_m; }
  double left_edge() const { return first_feed_m; }
  double right_edge() const { return first_feed_m + span(); }

  // Segment owning abscissa x under the ceiling convention: an interior
  // boundary belongs to the segment on its left, the left edge to segment 0,
  // and out-of-span abscissas clamp to the nearest end segment. 0-based.
  int segment_of(double x) const;

  void validate() const;
};

struct User {
  double x_m = 0.0;
  double y_m = 0.0;
  double power_w = 0.0;
};

// Squared vertical/lateral offset between a user and the waveguide plane:
// d^2 + u_y^2. The horizontal term (u_x - psi)^2 completes the 3-D distance.
double lateral_distance_sq(const User& user, const SystemConfig& cfg);

/// One active antenna on one selected segment.
struct SsPlacement {
  int segment = 0;  // 0-based
  double position_m = 0.0;
};

/// One active antenna per segment, all feeds combined.
struct SaPlacement {
  std::vector<double> positions_m;
};

using Placement = std::variant<SsPlacement, SaPlacement>;

enum class Scheme { kPsTdma, kPmTdma, kNoma };
enum class Protocol { kSegmentSelection, kSegmentAggregation, kPassBaseline };

const char* to_string(Scheme scheme);
const char* to_string(Protocol protocol);

struct RateReport {
  Scheme scheme = Scheme::kPsTdma;
  Protocol protocol = Protocol::kSegmentSelection;
  std::vector<double> per_user_snr;
  double sum_rate_bps_hz = 0.0;
  std::vector<double> trace;  // optimizer objective per iteration; empty if n/a
};

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

// True iff every placement constraint holds: positions inside their segment
// interval and every antenna pair at least min_spacing apart, both up to
// kFeasibilityTol. Throws std::invalid_argument when the placement arity does
// not match the layout.
bool is_feasible(const SsPlacement& p, const WaveguideLayout& layout,
                 const SystemConfig& cfg);
bool is_feasible(const SaPlacement& p, const WaveguideLayout& layout,
                 const SystemConfig& cfg);
bool is_feasible(const Placement& p, const WaveguideLayout& layout,
                 const SystemConfig& cfg);

}  // namespace swan
