"""Throughput and what it costs: steps/second, kWh, and kg of CO2.

The harness times whole trials (default protocol: 100k steps averaged over
100 trials; trimmed here so the demo runs in seconds) and converts wall time
into energy and emissions with a simple constant-power model.  Running the
same workload on two engines shows why throughput is an efficiency story,
not just a speed story.
"""

from briskrl.bench import BenchConfig, compare_reports, run_bench

config = BenchConfig(
    "CartPole-v1",
    mode="console",
    steps_per_trial=20000,
    trials=10,
    power_watts=65.0,       # typical desktop CPU package draw
    carbon_intensity=0.4,   # kg CO2 per kWh, a rough grid average
)

# the interpreted engine steps real Env objects through the public API
api = run_bench(config, engine="api")
print(f"api engine:  {api.steps_per_second:>12,.0f} steps/s")

# the compiled engine runs the identical trajectory as machine code
fast = run_bench(config, engine="fast")
print(f"fast engine: {fast.steps_per_second:>12,.0f} steps/s")

cmp = compare_reports(api, fast)
print(f"\nspeedup: {cmp.speedup:,.1f}x")
print(f"energy:  {api.energy_kwh:.3e} kWh -> {fast.energy_kwh:.3e} kWh ({cmp.energy_ratio:.4f}x)")
print(f"co2:     {api.co2_kg:.3e} kg  -> {fast.co2_kg:.3e} kg")

# scale the measured rate up to a real experiment: 10M steps per seed, 5 seeds
steps_needed = 10_000_000 * 5
for name, rep in (("api", api), ("fast", fast)):
    seconds = steps_needed / rep.steps_per_second
    kwh = 65.0 * seconds / 3.6e6
    print(f"50M-step study on {name:4s} engine: {seconds:10.1f} s, {kwh:.3e} kWh")

# reports serialize to JSON for archiving and later comparison
print("\nreport fields:", ", ".join(sorted(vars(fast))))
