#include <memory>

#include <benchmark/benchmark.h>

#include "thermoflow/assembly.hpp"
#include "thermoflow/linear_solver.hpp"
#include "thermoflow/time_stepper.hpp"

using namespace thermoflow;

namespace {

struct Fixture {
  explicit Fixture(int level)
      : disc(make_discretization(std::make_shared<const Mesh>(unit_square_mesh(level)))),
        model(ConstitutiveModel::power_law(1.5, 1.0)),
        law(ConductivityLaw::constant(1.0)),
        u(interpolate(disc.velocity, decay_velocity())),
        theta(interpolate(disc.temperature, ScalarFunction([](const Vec2& p) { return 1.0 + p.x(); }))) {}

  MomentumInputs momentum() const {
    MomentumInputs in;
    in.u_prev = &u;
    in.u_lag = &u;
    in.theta_lag = &theta;
    in.pressure_space = disc.pressure;
    in.tau = 0.01;
    in.model = &model;
    return in;
  }

  Discretization disc;
  ConstitutiveModel model;
  ConductivityLaw law;
  DiscreteField u;
  DiscreteField theta;
};

void BM_AssembleMomentum(benchmark::State& state) {
  const Fixture f(static_cast<int>(state.range(0)));
  const MomentumInputs in = f.momentum();
  for (auto _ : state) benchmark::DoNotOptimize(assemble_momentum_system(in));
}
BENCHMARK(BM_AssembleMomentum)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

void BM_AssembleTemperature(benchmark::State& state) {
  const Fixture f(static_cast<int>(state.range(0)));
  TemperatureInputs in;
  in.theta_prev = &f.theta;
  in.u_new = &f.u;
  in.theta_lag = &f.theta;
  in.tau = 0.01;
  in.law = &f.law;
  in.model = &f.model;
  for (auto _ : state) benchmark::DoNotOptimize(assemble_temperature_system(in));
}
BENCHMARK(BM_AssembleTemperature)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

void BM_SolveMomentum(benchmark::State& state) {
  const Fixture f(static_cast<int>(state.range(0)));
  const AssembledSystem sys = assemble_momentum_system(f.momentum());
  for (auto _ : state) {
    SparseDirectSolver solver;
    solver.factorize(sys.matrix);
    benchmark::DoNotOptimize(solver.solve(sys.rhs));
  }
}
BENCHMARK(BM_SolveMomentum)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

void BM_TimeStep(benchmark::State& state) {
  RunConfig c;
  c.mesh_level = static_cast<int>(state.range(0));
  c.tau = 0.01;
  c.T = 0.01;
  const TimeStepper stepper(make_discretization(make_mesh(c)), c, make_scenario("decay"));
  const StepState s0 = stepper.initialize();
  for (auto _ : state) benchmark::DoNotOptimize(stepper.step(s0));
}
BENCHMARK(BM_TimeStep)->DenseRange(3, 4)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
