#include "pagecurve/types.hpp"

#include <cmath>
#include <stdexcept>

namespace pagecurve {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::geometric: return "geometric";
    case Variant::oneshot: return "oneshot";
    case Variant::refined: return "refined";
    case Variant::seeded: return "seeded";
    case Variant::longtime: return "longtime";
    case Variant::exact: return "exact";
    case Variant::coherent: return "coherent";
  }
  return "unknown";
}

std::optional<Variant> parse_run_variant(std::string_view name) {
  if (name == "oneshot") return Variant::oneshot;
  if (name == "refined") return Variant::refined;
  if (name == "exact") return Variant::exact;
  return std::nullopt;
}

std::string_view to_string(Schedule s) {
  return s == Schedule::ramp ? "ramp" : "constant";
}

std::optional<Schedule> parse_schedule(std::string_view name) {
  if (name == "ramp") return Schedule::ramp;
  if (name == "constant") return Schedule::constant;
  return std::nullopt;
}

std::string_view to_string(LogBaseKind b) {
  return b == LogBaseKind::pump ? "np0p1" : "nat";
}

std::optional<LogBaseKind> parse_log_base(std::string_view name) {
  if (name == "np0p1") return LogBaseKind::pump;
  if (name == "nat") return LogBaseKind::natural;
  return std::nullopt;
}

EntropyBase EntropyBase::pump(int n_p0) {
  if (n_p0 < 0) throw std::invalid_argument("EntropyBase::pump: n_p0 must be >= 0");
  if (n_p0 == 0) return natural();
  return EntropyBase(std::log(static_cast<double>(n_p0) + 1.0));
}

EntropyBase EntropyBase::from(LogBaseKind kind, int n_p0) {
  return kind == LogBaseKind::pump ? pump(n_p0) : natural();
}

void ModelParams::validate() const {
  if (n_p0 < 1) throw std::invalid_argument("n_p0 must be >= 1");
  if (!(z_max > 0.0 && z_max < 1.0)) throw std::invalid_argument("z_max must lie in (0, 1)");
  if (N_max < 1) throw std::invalid_argument("N_max must be >= 1");
  if (N_zmax < 1 || N_zmax > N_max) throw std::invalid_argument("N_zmax must satisfy 1 <= N_zmax <= N_max");
  if (i_max < 1) throw std::invalid_argument("i_max must be >= 1");
}

}  // namespace pagecurve
