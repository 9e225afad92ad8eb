#include "builtin.hpp"

#include "holonomy/linalg.hpp"

namespace holonomy::cli::builtin {

ConnectionSpec ab_solenoid(double phi) {
  return ConnectionSpec(MultiSolenoid{PunctureSet({{0.0, 0.0}}), {phi}});
}

ConnectionSpec ab_three_solenoids() {
  return ConnectionSpec(MultiSolenoid{PunctureSet({{-1.0, 0.0}, {1.0, 0.0}, {0.0, 2.0}}), {0.4, 1.1, -0.7}});
}

ConnectionSpec aharonov_casher(double lambda) { return ConnectionSpec(AharonovCasher{lambda}); }

ConnectionSpec single_pole() {
  return ConnectionSpec(FuchsianLog{PunctureSet({{0.0, 0.0}}), {0.3 * pauli(3) + 0.2 * pauli(1)}, {}});
}

ConnectionSpec two_pole() {
  return ConnectionSpec(FuchsianLog{PunctureSet({{-0.5, 0.0}, {0.5, 0.0}}),
                                    {0.3 * pauli(3) + 0.1 * pauli(1), 0.25 * pauli(1) - 0.15 * pauli(2)},
                                    {}});
}

}  // namespace holonomy::cli::builtin
