#pragma once

// Thin wrapper over Boost.Odeint's dense-output Dormand-Prince stepper, shared
// by the mean-field and control integrators.

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>

#include <boost/numeric/odeint.hpp>

namespace swarm::detail {

inline constexpr double kAbsTol = 1e-12;
inline constexpr double kRelTol = 1e-10;

template <std::size_t N>
class DenseIntegrator {
 public:
  using State = std::array<double, N>;

  template <class System>
  DenseIntegrator(System system, const State& initial, double t0, double dt0)
      : system_(std::move(system)) {
    stepper_.initialize(initial, t0, dt0);
  }

  double time() const { return stepper_.current_time(); }
  const State& state() const { return stepper_.current_state(); }

  void step() { stepper_.do_step(system_); }

  /// State at t, which must not lie before the last step's start.
  State at(double t) {
    while (stepper_.current_time() < t) step();
    State out;
    stepper_.calc_state(t, out);
    return out;
  }

 private:
  using Stepper = decltype(boost::numeric::odeint::make_dense_output(
      kAbsTol, kRelTol, boost::numeric::odeint::runge_kutta_dopri5<State>()));

  std::function<void(const State&, State&, double)> system_;
  Stepper stepper_ = boost::numeric::odeint::make_dense_output(
      kAbsTol, kRelTol, boost::numeric::odeint::runge_kutta_dopri5<State>());
};

}  // namespace swarm::detail
