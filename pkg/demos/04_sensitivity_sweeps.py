"""Sensitivity of network performance to risk attitude, demand and degradation.

Two sweeps on the stand-in network, both over the full lambda grid:
one across demand levels (capacity degradation fixed at 0.8), one
across degradation levels (demand fixed at 4000 pcu/h).  The average
network travel time rises with demand, falls as capacity reliability
improves, and moves only mildly with the risk-attitude weight.

Writes plot-ready series under ./sweep_output/.
"""

from cmte import Scenario, emit_results, run_scenario, standin_network

net = standin_network()
lam_grid = tuple(round(0.1 * i, 1) for i in range(11))

print("sweep 1: demand levels (theta = 0.8) ...")
demand_sweep = run_scenario(net, Scenario(
    lambda_grid=lam_grid, demand_grid=(3000.0, 4000.0, 5000.0, 6000.0),
    theta_grid=(0.8,)))

print("sweep 2: degradation levels (Q = 4000) ...")
theta_sweep = run_scenario(net, Scenario(
    lambda_grid=lam_grid, demand_grid=(4000.0,),
    theta_grid=(0.6, 0.7, 0.8, 0.9)))

print("\nANTT (min) by demand level and lambda:")
header = "      " + "".join(f"  Q={q:<6g}" for q in (3000, 4000, 5000, 6000))
print(header)
for lam in lam_grid:
    row = [r.antt for r in demand_sweep.rows if r.lam == lam]
    print(f"  lam={lam:3.1f}" + "".join(f" {a:8.1f}" for a in row))

print("\nANTT (min) by degradation level and lambda:")
print("      " + "".join(f"  T={t:<7g}" for t in (0.6, 0.7, 0.8, 0.9)))
for lam in lam_grid:
    row = [r.antt for r in sorted((r for r in theta_sweep.rows if r.lam == lam),
                                  key=lambda r: r.theta)]
    print(f"  lam={lam:3.1f}" + "".join(f" {a:8.1f}" for a in row))

files = emit_results(demand_sweep, "sweep_output/demand")
files += emit_results(theta_sweep, "sweep_output/degradation")
print(f"\nwrote {len(files)} files under sweep_output/")
