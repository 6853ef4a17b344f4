#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pagecurve {

/// Which formula (or oracle) produced a distribution.
enum class Variant { geometric, oneshot, refined, seeded, longtime, exact, coherent };

std::string_view to_string(Variant v);
/// Parses the run-selectable variants: oneshot, refined, exact.
std::optional<Variant> parse_run_variant(std::string_view name);

enum class Schedule { ramp, constant };

std::string_view to_string(Schedule s);
std::optional<Schedule> parse_schedule(std::string_view name);

/// Logarithm base used for entropies. `pump` means log base n_p0 + 1.
enum class LogBaseKind { pump, natural };

std::string_view to_string(LogBaseKind b);
std::optional<LogBaseKind> parse_log_base(std::string_view name);

/// Concrete logarithm base. The natural base divides by 1.
class EntropyBase {
 public:
  static EntropyBase natural() { return EntropyBase(1.0); }
  /// log base n_p0 + 1; with n_p0 = 0 this degenerates to natural.
  static EntropyBase pump(int n_p0);
  static EntropyBase from(LogBaseKind kind, int n_p0);

  /// ln(base); entropies in nats are divided by this.
  double log_divisor() const { return log_divisor_; }

 private:
  explicit EntropyBase(double log_divisor) : log_divisor_(log_divisor) {}
  double log_divisor_;
};

/// A distribution over emitted-particle count k = 0..size()-1.
struct ProbabilityVector {
  std::vector<double> values;
  double z = 0.0;
  int N = 0;
  Variant variant = Variant::geometric;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t k) const { return values[k]; }
  /// Largest representable count (n_p0 for pump distributions).
  int max_count() const { return static_cast<int>(values.size()) - 1; }
};

/// All run parameters.
struct ModelParams {
  int n_p0 = 25;
  double z_max = 0.1;
  int N_max = 2000;
  int N_zmax = 200;
  int i_max = 50;
  LogBaseKind log_base = LogBaseKind::pump;
  Schedule schedule = Schedule::ramp;

  /// Throws std::invalid_argument describing the first violated invariant.
  void validate() const;
};

struct RapidityPoint {
  int N = 0;
  double z = 0.0;
};

}  // namespace pagecurve
